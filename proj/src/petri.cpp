#include "dualminer/petri.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dualminer/errors.hpp"
#include "xml_sax.hpp"

namespace dualminer {

std::size_t Marking::total() const noexcept {
    std::size_t sum = 0;
    for (auto t : tokens_) sum += t;
    return sum;
}

std::size_t MarkingHash::operator()(const Marking& m) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto t : m.tokens()) {
        h ^= t + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

PetriNet::Index PetriNet::add_place(std::string id) {
    places_.push_back(std::move(id));
    // keep markings sized to the place set
    auto grow = [&](Marking& m) {
        Marking bigger(places_.size());
        for (std::size_t i = 0; i < m.size(); ++i) bigger[i] = m[i];
        m = std::move(bigger);
    };
    grow(initial_);
    grow(final_);
    return places_.size() - 1;
}

PetriNet::Index PetriNet::add_transition(std::string id, std::optional<Activity> label) {
    transitions_.push_back({std::move(id), std::move(label)});
    pre_.emplace_back();
    post_.emplace_back();
    return transitions_.size() - 1;
}

void PetriNet::add_arc_place_to_transition(Index place, Index transition) {
    if (place >= places_.size() || transition >= transitions_.size()) throw std::invalid_argument("arc endpoint out of range");
    pre_[transition].push_back(place);
}

void PetriNet::add_arc_transition_to_place(Index transition, Index place) {
    if (place >= places_.size() || transition >= transitions_.size()) throw std::invalid_argument("arc endpoint out of range");
    post_[transition].push_back(place);
}

std::size_t PetriNet::arc_count() const noexcept {
    std::size_t n = 0;
    for (const auto& p : pre_) n += p.size();
    for (const auto& p : post_) n += p.size();
    return n;
}

void PetriNet::set_initial_marking(Marking m) {
    if (m.size() != places_.size()) throw std::invalid_argument("initial marking does not match the place set");
    initial_ = std::move(m);
}

void PetriNet::set_final_marking(Marking m) {
    if (m.size() != places_.size()) throw std::invalid_argument("final marking does not match the place set");
    final_ = std::move(m);
}

std::optional<PetriNet::Index> PetriNet::find_place(std::string_view id) const {
    auto it = std::find(places_.begin(), places_.end(), id);
    if (it == places_.end()) return std::nullopt;
    return static_cast<Index>(it - places_.begin());
}

std::optional<PetriNet::Index> PetriNet::find_transition(std::string_view id) const {
    for (Index i = 0; i < transitions_.size(); ++i)
        if (transitions_[i].id == id) return i;
    return std::nullopt;
}

bool PetriNet::is_workflow_net() const {
    const auto np = places_.size();
    const auto nt = transitions_.size();
    std::vector<std::size_t> place_in(np, 0);
    std::vector<std::size_t> place_out(np, 0);
    for (Index t = 0; t < nt; ++t) {
        for (auto p : pre_[t]) ++place_out[p];
        for (auto p : post_[t]) ++place_in[p];
    }
    std::optional<Index> source;
    std::optional<Index> sink;
    for (Index p = 0; p < np; ++p) {
        if (place_in[p] == 0) {
            if (source) return false;
            source = p;
        }
        if (place_out[p] == 0) {
            if (sink) return false;
            sink = p;
        }
    }
    if (!source || !sink || *source == *sink) return false;
    for (Index p = 0; p < np; ++p) {
        if (initial_[p] != (p == *source ? 1u : 0u)) return false;
        if (final_[p] != (p == *sink ? 1u : 0u)) return false;
    }
    for (Index t = 0; t < nt; ++t)
        if (pre_[t].empty() || post_[t].empty()) return false;

    // nodes: places [0, np), transitions [np, np + nt)
    const auto total = np + nt;
    auto walk = [&](Index from, bool forward) {
        std::vector<std::uint8_t> seen(total, 0);
        std::vector<Index> stack{from};
        seen[from] = 1;
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            auto visit = [&](Index y) {
                if (!seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
            };
            if (x < np) {
                for (Index t = 0; t < nt; ++t) {
                    const auto& arcs = forward ? pre_[t] : post_[t];
                    if (std::find(arcs.begin(), arcs.end(), x) != arcs.end()) visit(np + t);
                }
            } else {
                for (auto p : forward ? post_[x - np] : pre_[x - np]) visit(p);
            }
        }
        return seen;
    };
    auto from_source = walk(*source, true);
    auto to_sink = walk(*sink, false);
    for (Index i = 0; i < total; ++i)
        if (!from_source[i] || !to_sink[i]) return false;
    return true;
}

namespace {

class NetBuilder {
public:
    PetriNet net;

    PetriNet::Index place() { return net.add_place("p" + std::to_string(next_place_++)); }

    PetriNet::Index transition(std::optional<Activity> label) {
        return net.add_transition("t" + std::to_string(next_transition_++), std::move(label));
    }

    void link(PetriNet::Index in, PetriNet::Index t, PetriNet::Index out) {
        net.add_arc_place_to_transition(in, t);
        net.add_arc_transition_to_place(t, out);
    }

    void build(const ProcessTree& node, PetriNet::Index in, PetriNet::Index out) {
        switch (node.kind()) {
            case ProcessTree::Kind::Leaf: link(in, transition(node.activity()), out); return;
            case ProcessTree::Kind::Tau: link(in, transition(std::nullopt), out); return;
            case ProcessTree::Kind::Node: break;
        }
        const auto& kids = node.children();
        switch (node.op()) {
            case Operator::Seq: {
                auto prev = in;
                for (std::size_t i = 0; i < kids.size(); ++i) {
                    auto next = i + 1 == kids.size() ? out : place();
                    build(kids[i], prev, next);
                    prev = next;
                }
                return;
            }
            case Operator::Xor:
                for (const auto& k : kids) build(k, in, out);
                return;
            case Operator::And: {
                auto split = transition(std::nullopt);
                auto join = transition(std::nullopt);
                net.add_arc_place_to_transition(in, split);
                for (const auto& k : kids) {
                    auto kin = place();
                    auto kout = place();
                    net.add_arc_transition_to_place(split, kin);
                    build(k, kin, kout);
                    net.add_arc_place_to_transition(kout, join);
                }
                net.add_arc_transition_to_place(join, out);
                return;
            }
            case Operator::Loop: {
                auto enter = transition(std::nullopt);
                auto exit = transition(std::nullopt);
                auto loop_in = place();
                auto loop_out = place();
                link(in, enter, loop_in);
                build(kids[0], loop_in, loop_out);
                build(kids[1], loop_out, loop_in);
                link(loop_out, exit, out);
                return;
            }
        }
    }

private:
    std::size_t next_place_ = 0;
    std::size_t next_transition_ = 0;
};

void check_marking(const PetriNet& net, const Marking& m) {
    if (m.size() != net.places().size()) throw std::invalid_argument("marking does not belong to this net");
}

}  // namespace

PetriNet tree_to_petri(const ProcessTree& tree) {
    NetBuilder b;
    auto source = b.place();
    auto sink = b.place();
    b.build(tree, source, sink);
    Marking initial(b.net.places().size());
    initial[source] = 1;
    Marking final(b.net.places().size());
    final[sink] = 1;
    b.net.set_initial_marking(std::move(initial));
    b.net.set_final_marking(std::move(final));
    return std::move(b.net);
}

std::vector<PetriNet::Index> enabled(const PetriNet& net, const Marking& m) {
    check_marking(net, m);
    std::vector<PetriNet::Index> out;
    for (PetriNet::Index t = 0; t < net.transitions().size(); ++t) {
        const auto& pre = net.preset(t);
        if (std::all_of(pre.begin(), pre.end(), [&](auto p) { return m[p] > 0; })) out.push_back(t);
    }
    return out;
}

Marking fire(const PetriNet& net, const Marking& m, PetriNet::Index transition) {
    check_marking(net, m);
    if (transition >= net.transitions().size()) throw std::invalid_argument("unknown transition");
    Marking next = m;
    for (auto p : net.preset(transition)) {
        if (next[p] == 0)
            throw std::logic_error("transition '" + net.transitions()[transition].id + "' is not enabled");
        --next[p];
    }
    for (auto p : net.postset(transition)) ++next[p];
    return next;
}

std::string export_pnml(const PetriNet& net) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<pnml>\n"
        << "  <net id=\"net1\" type=\"http://www.pnml.org/version-2009/grammar/pnmlcoremodel\">\n"
        << "    <page id=\"n0\">\n";
    for (std::size_t p = 0; p < net.places().size(); ++p) {
        const auto id = xml::escape(net.places()[p]);
        out << "      <place id=\"" << id << "\">\n        <name>\n          <text>" << id << "</text>\n        </name>\n";
        if (auto tokens = net.initial_marking()[p])
            out << "        <initialMarking>\n          <text>" << tokens << "</text>\n        </initialMarking>\n";
        out << "      </place>\n";
    }
    for (const auto& t : net.transitions()) {
        const auto id = xml::escape(t.id);
        out << "      <transition id=\"" << id << "\">\n";
        if (t.label) {
            out << "        <name>\n          <text>" << xml::escape(t.label->name()) << "</text>\n        </name>\n";
        } else {
            out << "        <toolspecific tool=\"ProM\" version=\"6.4\" activity=\"$invisible$\" localNodeID=\"" << id
                << "\"/>\n";
        }
        out << "      </transition>\n";
    }
    std::size_t arc = 0;
    for (std::size_t t = 0; t < net.transitions().size(); ++t) {
        const auto tid = xml::escape(net.transitions()[t].id);
        for (auto p : net.preset(t))
            out << "      <arc id=\"a" << arc++ << "\" source=\"" << xml::escape(net.places()[p]) << "\" target=\""
                << tid << "\"/>\n";
        for (auto p : net.postset(t))
            out << "      <arc id=\"a" << arc++ << "\" source=\"" << tid << "\" target=\""
                << xml::escape(net.places()[p]) << "\"/>\n";
    }
    out << "    </page>\n    <finalmarkings>\n      <marking>\n";
    for (std::size_t p = 0; p < net.places().size(); ++p)
        if (auto tokens = net.final_marking()[p])
            out << "        <place idref=\"" << xml::escape(net.places()[p]) << "\">\n          <text>" << tokens
                << "</text>\n        </place>\n";
    out << "      </marking>\n    </finalmarkings>\n  </net>\n</pnml>\n";
    return out.str();
}

namespace {

class PnmlHandler : public xml::SaxHandler {
public:
    struct PlaceDef {
        std::string id;
        std::uint32_t tokens = 0;
    };
    struct TransitionDef {
        std::string id;
        std::optional<std::string> name;
        bool invisible = false;
    };
    struct ArcDef {
        std::string source;
        std::string target;
    };

    std::vector<PlaceDef> places;
    std::vector<TransitionDef> transitions;
    std::vector<ArcDef> arcs;
    std::vector<std::pair<std::string, std::uint32_t>> final_tokens;
    bool saw_net = false;

    void start(std::string_view name, const xml::AttributeMap& atts) override {
        path_.emplace_back(name);
        text_.clear();
        auto attr = [&](std::string_view key) -> std::string {
            auto it = atts.find(key);
            return it == atts.end() ? std::string{} : it->second;
        };
        if (name == "net") saw_net = true;
        if (in_final_) {
            if (name == "place") final_ref_ = attr("idref");
            return;
        }
        if (name == "finalmarkings") {
            in_final_ = true;
        } else if (name == "place") {
            places.push_back({require(attr("id"), "place"), 0});
            current_ = Current::Place;
        } else if (name == "transition") {
            transitions.push_back({require(attr("id"), "transition"), std::nullopt, false});
            current_ = Current::Transition;
        } else if (name == "arc") {
            arcs.push_back({require(attr("source"), "arc source"), require(attr("target"), "arc target")});
        } else if (name == "toolspecific" && current_ == Current::Transition) {
            if (attr("activity") == "$invisible$") transitions.back().invisible = true;
        }
    }

    void text(std::string_view s) override { text_ += s; }

    void end(std::string_view name) override {
        if (name == "text") {
            auto value = trimmed(text_);
            auto parent = path_.size() >= 2 ? path_[path_.size() - 2] : std::string{};
            if (in_final_) {
                if (parent == "place" && final_ref_) final_tokens.emplace_back(*final_ref_, to_count(value));
            } else if (parent == "initialMarking" && current_ == Current::Place) {
                places.back().tokens = to_count(value);
            } else if (parent == "name" && current_ == Current::Transition && path_.size() >= 3 &&
                       path_[path_.size() - 3] == "transition") {
                transitions.back().name = value;
            }
        }
        if (name == "finalmarkings") in_final_ = false;
        if (in_final_ && name == "place") final_ref_.reset();
        if (!in_final_ && (name == "place" || name == "transition")) current_ = Current::None;
        path_.pop_back();
        text_.clear();
    }

private:
    enum class Current { None, Place, Transition };

    static std::string require(std::string value, const char* what) {
        if (value.empty()) throw SchemaError(std::string("PNML ") + what + " without id");
        return value;
    }

    static std::string trimmed(const std::string& s) {
        auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return {};
        auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }

    static std::uint32_t to_count(const std::string& s) {
        try {
            return static_cast<std::uint32_t>(std::stoul(s));
        } catch (...) {
            throw SchemaError("PNML token count '" + s + "' is not a number");
        }
    }

    std::vector<std::string> path_;
    std::string text_;
    Current current_ = Current::None;
    bool in_final_ = false;
    std::optional<std::string> final_ref_;
};

}  // namespace

PetriNet import_pnml(std::string_view xml_text) {
    PnmlHandler h;
    xml::parse(xml_text, h);
    if (!h.saw_net) throw SchemaError("PNML document has no <net>");

    PetriNet net;
    for (const auto& p : h.places) {
        if (net.find_place(p.id)) throw SchemaError("duplicate PNML place id '" + p.id + "'");
        net.add_place(p.id);
    }
    for (const auto& t : h.transitions) {
        std::optional<Activity> label;
        if (!t.invisible && t.name && !t.name->empty()) {
            try {
                label = Activity(*t.name);
            } catch (const std::invalid_argument& e) {
                throw SchemaError("PNML transition '" + t.id + "': " + e.what());
            }
        }
        net.add_transition(t.id, std::move(label));
    }
    for (const auto& a : h.arcs) {
        if (auto p = net.find_place(a.source)) {
            auto t = net.find_transition(a.target);
            if (!t) throw SchemaError("PNML arc target '" + a.target + "' is not a transition");
            net.add_arc_place_to_transition(*p, *t);
        } else if (auto t = net.find_transition(a.source)) {
            auto p2 = net.find_place(a.target);
            if (!p2) throw SchemaError("PNML arc target '" + a.target + "' is not a place");
            net.add_arc_transition_to_place(*t, *p2);
        } else {
            throw SchemaError("PNML arc source '" + a.source + "' is unknown");
        }
    }

    Marking initial(net.places().size());
    for (std::size_t i = 0; i < h.places.size(); ++i) initial[i] = h.places[i].tokens;
    net.set_initial_marking(std::move(initial));

    Marking final(net.places().size());
    if (!h.final_tokens.empty()) {
        for (const auto& [id, tokens] : h.final_tokens) {
            auto p = net.find_place(id);
            if (!p) throw SchemaError("PNML final marking names unknown place '" + id + "'");
            final[*p] = tokens;
        }
    } else {
        std::vector<std::uint8_t> has_out(net.places().size(), 0);
        for (std::size_t t = 0; t < net.transitions().size(); ++t)
            for (auto p : net.preset(t)) has_out[p] = 1;
        std::optional<std::size_t> sink;
        for (std::size_t p = 0; p < has_out.size(); ++p)
            if (!has_out[p]) {
                if (sink) throw SchemaError("PNML net has no final marking and no unique sink place");
                sink = p;
            }
        if (!sink) throw SchemaError("PNML net has no final marking and no sink place");
        final[*sink] = 1;
    }
    net.set_final_marking(std::move(final));
    return net;
}

}  // namespace dualminer
