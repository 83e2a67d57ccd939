#include "dualminer/process_tree.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <stdexcept>

#include "dualminer/errors.hpp"

namespace dualminer {

std::string_view operator_symbol(Operator op) noexcept {
    switch (op) {
        case Operator::Seq: return "->";
        case Operator::Xor: return "X";
        case Operator::And: return "+";
        case Operator::Loop: return "*";
    }
    return "?";
}

std::string_view operator_name(Operator op) noexcept {
    switch (op) {
        case Operator::Seq: return "seq";
        case Operator::Xor: return "xor";
        case Operator::And: return "and";
        case Operator::Loop: return "loop";
    }
    return "?";
}

ProcessTree ProcessTree::leaf(Activity a) { return ProcessTree(Kind::Leaf, a, Operator::Seq, {}); }

ProcessTree ProcessTree::tau() { return ProcessTree(Kind::Tau, std::nullopt, Operator::Seq, {}); }

ProcessTree ProcessTree::node(Operator op, std::vector<ProcessTree> children) {
    if (op == Operator::Loop && children.size() != 2)
        throw std::invalid_argument("loop node needs exactly 2 children, got " + std::to_string(children.size()));
    if (children.size() < 2)
        throw std::invalid_argument(std::string(operator_name(op)) + " node needs at least 2 children");
    return ProcessTree(Kind::Node, std::nullopt, op, std::move(children));
}

const Activity& ProcessTree::activity() const {
    if (!activity_) throw std::logic_error("not a leaf");
    return *activity_;
}

Operator ProcessTree::op() const {
    if (kind_ != Kind::Node) throw std::logic_error("not an operator node");
    return op_;
}

AlphabetSet ProcessTree::alphabet() const {
    AlphabetSet out;
    if (activity_) out.insert(*activity_);
    for (const auto& c : children_) out.merge(c.alphabet());
    return out;
}

std::size_t ProcessTree::depth() const noexcept {
    std::size_t d = 0;
    for (const auto& c : children_) d = std::max(d, c.depth());
    return d + 1;
}

std::size_t ProcessTree::size() const noexcept {
    std::size_t s = 1;
    for (const auto& c : children_) s += c.size();
    return s;
}

bool operator==(const ProcessTree& a, const ProcessTree& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
        case ProcessTree::Kind::Leaf: return a.activity_ == b.activity_;
        case ProcessTree::Kind::Tau: return true;
        case ProcessTree::Kind::Node: return a.op_ == b.op_ && a.children_ == b.children_;
    }
    return false;
}

namespace {

void write(const ProcessTree& t, std::string& out) {
    switch (t.kind()) {
        case ProcessTree::Kind::Tau: out += "tau"; return;
        case ProcessTree::Kind::Leaf:
            out += '\'';
            for (char c : t.activity().name()) {
                if (c == '\'' || c == '\\') out += '\\';
                out += c;
            }
            out += '\'';
            return;
        case ProcessTree::Kind::Node:
            out += operator_symbol(t.op());
            out += '(';
            for (std::size_t i = 0; i < t.children().size(); ++i) {
                if (i) out += ", ";
                write(t.children()[i], out);
            }
            out += ')';
            return;
    }
}

class TreeParser {
public:
    explicit TreeParser(std::string_view text) : text_(text) {}

    ProcessTree parse() {
        auto tree = parse_tree();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return tree;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, pos_ + 1); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(std::string_view token) {
        skip_space();
        if (text_.substr(pos_, token.size()) != token) return false;
        pos_ += token.size();
        return true;
    }

    void expect(char c) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    ProcessTree parse_tree() {
        skip_space();
        const auto start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '\'') return ProcessTree::leaf(parse_name());
        if (accept("tau")) return ProcessTree::tau();
        Operator op;
        if (accept("->")) op = Operator::Seq;
        else if (accept("X")) op = Operator::Xor;
        else if (accept("+")) op = Operator::And;
        else if (accept("*")) op = Operator::Loop;
        else fail("expected a leaf, 'tau' or an operator");
        expect('(');
        std::vector<ProcessTree> children;
        children.push_back(parse_tree());
        while (accept(",")) children.push_back(parse_tree());
        expect(')');
        if (op == Operator::Loop && children.size() != 2) {
            pos_ = start;
            fail("arity error: loop needs exactly 2 children, got " + std::to_string(children.size()));
        }
        if (children.size() < 2) {
            pos_ = start;
            fail("arity error: " + std::string(operator_name(op)) + " needs at least 2 children");
        }
        return ProcessTree::node(op, std::move(children));
    }

    Activity parse_name() {
        ++pos_;  // opening quote
        std::string name;
        while (true) {
            if (pos_ >= text_.size()) fail("unterminated activity name");
            char c = text_[pos_++];
            if (c == '\'') break;
            if (c == '\\') {
                if (pos_ >= text_.size()) fail("dangling escape");
                c = text_[pos_++];
            }
            name += c;
        }
        try {
            return Activity(name);
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

class Simulator {
public:
    Simulator(std::size_t max_unroll, std::uint64_t seed) : max_unroll_(max_unroll), rng_(seed) {}

    void run(const ProcessTree& t, Sequence& out) {
        switch (t.kind()) {
            case ProcessTree::Kind::Tau: return;
            case ProcessTree::Kind::Leaf: out.push_back(t.activity()); return;
            case ProcessTree::Kind::Node: break;
        }
        const auto& kids = t.children();
        switch (t.op()) {
            case Operator::Seq:
                for (const auto& c : kids) run(c, out);
                return;
            case Operator::Xor: {
                std::uniform_int_distribution<std::size_t> pick(0, kids.size() - 1);
                run(kids[pick(rng_)], out);
                return;
            }
            case Operator::Loop: {
                std::uniform_int_distribution<std::size_t> rounds(0, max_unroll_);
                auto k = rounds(rng_);
                run(kids[0], out);
                for (std::size_t i = 0; i < k; ++i) {
                    run(kids[1], out);
                    run(kids[0], out);
                }
                return;
            }
            case Operator::And: {
                std::vector<Sequence> parts(kids.size());
                std::size_t remaining = 0;
                for (std::size_t i = 0; i < kids.size(); ++i) {
                    run(kids[i], parts[i]);
                    remaining += parts[i].size();
                }
                // choosing the next part with probability proportional to its
                // remaining length samples merges uniformly
                std::vector<std::size_t> cursor(kids.size(), 0);
                while (remaining > 0) {
                    std::uniform_int_distribution<std::size_t> pick(0, remaining - 1);
                    auto r = pick(rng_);
                    for (std::size_t i = 0; i < parts.size(); ++i) {
                        auto left = parts[i].size() - cursor[i];
                        if (r < left) {
                            out.push_back(parts[i][cursor[i]++]);
                            break;
                        }
                        r -= left;
                    }
                    --remaining;
                }
                return;
            }
        }
    }

private:
    std::size_t max_unroll_;
    std::mt19937_64 rng_;
};

}  // namespace

std::string to_text(const ProcessTree& tree) {
    std::string out;
    write(tree, out);
    return out;
}

ProcessTree parse_tree_text(std::string_view text) { return TreeParser(text).parse(); }

EventLog simulate(const ProcessTree& tree, std::size_t n, std::size_t max_loop_unroll, std::uint64_t seed) {
    Simulator sim(max_loop_unroll, seed);
    EventLog log;
    for (std::size_t i = 0; i < n; ++i) {
        Sequence trace;
        sim.run(tree, trace);
        log.add(std::move(trace));
    }
    return log;
}

}  // namespace dualminer
