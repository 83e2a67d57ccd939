#include "dualminer/cuts.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dualminer/parallel.hpp"

namespace dualminer {

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::string to_string(const Cut& cut) {
    auto side = [](const AlphabetSet& s) {
        std::string out = "{";
        bool first = true;
        for (const auto& a : s) {
            if (!first) out += ',';
            out += a.name();
            first = false;
        }
        return out + "}";
    };
    return std::string(operator_name(cut.op)) + "(" + side(cut.sigma1) + ", " + side(cut.sigma2) + ")";
}

CostTerms cost_terms(const Dfg& g, Operator op, std::span<const std::uint8_t> in_sigma1) {
    const auto n = g.activity_count();
    if (in_sigma1.size() != n) throw std::invalid_argument("side assignment does not match the graph");
    const auto start = g.start();
    const auto end = g.end();

    // small fixed buffers would be nicer, but alphabets are unbounded in principle
    std::vector<Dfg::Node> one;
    std::vector<Dfg::Node> two;
    one.reserve(n);
    two.reserve(n);
    for (Dfg::Node i = 0; i < n; ++i) (in_sigma1[i] ? one : two).push_back(i);

    CostTerms t;
    auto strength = [&](Dfg::Node x, Dfg::Node y) { return std::min(g.out_weight(x), g.in_weight(y)); };
    auto boundary = [&](const std::vector<Dfg::Node>& side) {
        bool has_start = false;
        bool has_end = false;
        for (auto a : side) {
            has_start = has_start || g.weight(start, a) > 0;
            has_end = has_end || g.weight(a, end) > 0;
        }
        if (!has_start) t.missing += g.trace_count();
        if (!has_end) t.missing += g.trace_count();
    };

    switch (op) {
        case Operator::Seq:
            for (auto a : one)
                for (auto b : two) {
                    t.deviating += g.weight(b, a);
                    if (!g.reachable(a, b)) t.missing += strength(a, b);
                }
            break;
        case Operator::Xor:
            for (auto a : one)
                for (auto b : two) t.deviating += g.weight(a, b) + g.weight(b, a);
            boundary(one);
            boundary(two);
            break;
        case Operator::And:
            for (auto a : one)
                for (auto b : two) {
                    if (g.weight(a, b) == 0) t.missing += strength(a, b);
                    if (g.weight(b, a) == 0) t.missing += strength(b, a);
                }
            boundary(one);
            boundary(two);
            break;
        case Operator::Loop: {
            std::vector<Dfg::Node> starts;
            std::vector<Dfg::Node> ends;
            for (auto a : one) {
                if (g.weight(start, a) > 0) starts.push_back(a);
                if (g.weight(a, end) > 0) ends.push_back(a);
            }
            for (auto b : two) t.deviating += g.weight(start, b) + g.weight(b, end);
            for (auto a : one) {
                const bool is_end = g.weight(a, end) > 0;
                const bool is_start = g.weight(start, a) > 0;
                for (auto b : two) {
                    if (!is_end) t.deviating += g.weight(a, b);
                    if (!is_start) t.deviating += g.weight(b, a);
                }
            }
            // the redo part is entered where Σ1 reaches it and left where it reaches Σ1;
            // a redo part that is never entered (or never left) owes every pair
            auto touches = [&](Dfg::Node b, bool into) {
                for (auto a : one)
                    if ((into ? g.weight(a, b) : g.weight(b, a)) > 0) return true;
                return false;
            };
            bool any_entry = false;
            bool any_exit = false;
            for (auto b : two) {
                any_entry = any_entry || touches(b, true);
                any_exit = any_exit || touches(b, false);
            }
            for (auto b : two) {
                const bool entry = !any_entry || touches(b, true);
                const bool exit = !any_exit || touches(b, false);
                if (entry)
                    for (auto e : ends)
                        if (g.weight(e, b) == 0) t.missing += strength(e, b);
                if (exit)
                    for (auto s : starts)
                        if (g.weight(b, s) == 0) t.missing += strength(b, s);
            }
            break;
        }
    }
    return t;
}

SideAssignment side_assignment(const Dfg& g, const Cut& cut) {
    if (cut.sigma1.empty() || cut.sigma2.empty()) throw std::invalid_argument("cut sides must be non-empty");
    if (cut.sigma1.size() + cut.sigma2.size() != g.activity_count())
        throw std::invalid_argument("cut " + to_string(cut) + " does not cover the graph's activities");
    SideAssignment sides(g.activity_count(), 2);
    for (const auto& a : cut.sigma1) {
        if (!g.contains(a)) throw std::invalid_argument("cut activity '" + a.name() + "' is not in the graph");
        sides[g.node(a)] = 1;
    }
    for (const auto& a : cut.sigma2) {
        if (!g.contains(a)) throw std::invalid_argument("cut activity '" + a.name() + "' is not in the graph");
        auto& s = sides[g.node(a)];
        if (s == 1) throw std::invalid_argument("cut sides overlap on '" + a.name() + "'");
        s = 0;
    }
    return sides;
}

namespace {

void check_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

AlphabetSet cut_alphabet(const Cut& cut) {
    AlphabetSet all = cut.sigma1;
    all.insert(cut.sigma2.begin(), cut.sigma2.end());
    return all;
}

}  // namespace

double dev_cost(const Dfg& g, const Cut& cut) {
    return static_cast<double>(cost_terms(g, cut.op, side_assignment(g, cut)).deviating);
}

double mis_cost(const Dfg& g, const Cut& cut, double sup) {
    check_unit(sup, "sup");
    auto terms = cost_terms(g, cut.op, side_assignment(g, cut));
    return sup * static_cast<double>(terms.missing);
}

double cut_cost(const Dfg& g, const Cut& cut, double sup) {
    check_unit(sup, "sup");
    return cost_terms(g, cut.op, side_assignment(g, cut)).cost(sup);
}

double overall_cost(const Dfg& g_plus, const Dfg& g_minus, const Cut& cut, double sup, double ratio) {
    check_unit(sup, "sup");
    check_unit(ratio, "ratio");
    const double plus = cut_cost(g_plus, cut, sup);
    const auto minus_graph = g_minus.restricted_to(cut_alphabet(cut));
    const double minus = cut_cost(minus_graph, cut, sup);
    return plus - ratio * minus;
}

}  // namespace dualminer
