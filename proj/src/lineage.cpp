#include "caudex/lineage.hpp"

#include "caudex/errors.hpp"
#include "caudex/hypergraph.hpp"
#include "caudex/limits.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace caudex {

namespace {
const char* kModule = "score-engine";
}

LineageFormula LineageFormula::constant(bool value) {
    LineageFormula f;
    if (value) f.disjuncts_.push_back({});
    return f;
}

LineageFormula LineageFormula::of_witnesses(std::vector<Witness> ws) {
    LineageFormula f;
    f.disjuncts_ = std::move(ws);
    f.normalize();
    return f;
}

void LineageFormula::normalize() {
    for (Witness& w : disjuncts_) {
        std::sort(w.begin(), w.end());
        w.erase(std::unique(w.begin(), w.end()), w.end());
    }
    disjuncts_ = minimalize(std::move(disjuncts_));
    // An empty disjunct absorbs everything: the formula is true.
    if (!disjuncts_.empty() && disjuncts_.front().empty()) disjuncts_ = {{}};
}

bool LineageFormula::is_constant() const {
    return disjuncts_.empty() || (disjuncts_.size() == 1 && disjuncts_.front().empty());
}

bool LineageFormula::constant_value() const { return !disjuncts_.empty(); }

std::vector<TupleId> LineageFormula::free_vars() const {
    std::vector<TupleId> out;
    for (const Witness& w : disjuncts_) out.insert(out.end(), w.begin(), w.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string LineageFormula::to_string() const {
    if (disjuncts_.empty()) return "false";
    if (disjuncts_.front().empty()) return "true";
    std::string s;
    for (std::size_t i = 0; i < disjuncts_.size(); ++i) {
        if (i) s += " | ";
        const Witness& w = disjuncts_[i];
        if (w.size() > 1 && disjuncts_.size() > 1) s += "(";
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (j) s += " & ";
            s += "x" + std::to_string(w[j]);
        }
        if (w.size() > 1 && disjuncts_.size() > 1) s += ")";
    }
    return s;
}

LineageFormula lineage(const DatabaseInstance& db, const UCQ& q) {
    return LineageFormula::of_witnesses(witnesses(db, q));
}

LineageFormula intervene(const LineageFormula& f, TupleId tid, bool value) {
    LineageFormula out;
    out.pinned_ = f.pinned_;
    out.pinned_[tid] = value;
    if (f.is_constant()) {
        out.disjuncts_ = f.disjuncts_;
        return out;
    }
    for (const Witness& w : f.disjuncts_) {
        bool contains = std::binary_search(w.begin(), w.end(), tid);
        if (!contains) {
            out.disjuncts_.push_back(w);
        } else if (value) {
            Witness reduced;
            for (TupleId t : w)
                if (t != tid) reduced.push_back(t);
            out.disjuncts_.push_back(std::move(reduced));
        } // value == false: the conjunct is falsified and dropped
    }
    out.normalize();
    return out;
}

namespace {

struct MaskedFormula {
    std::vector<TupleId> vars;
    std::vector<std::uint32_t> disjuncts;
};

MaskedFormula to_masks(const LineageFormula& f, const char* who) {
    MaskedFormula m;
    m.vars = f.free_vars();
    if (static_cast<int>(m.vars.size()) > limits::kMaxLineageVars)
        throw Error(kModule, std::string(who) + ": formula has " +
                                 std::to_string(m.vars.size()) +
                                 " free variables, exceeding the cap of " +
                                 std::to_string(limits::kMaxLineageVars));
    for (const Witness& w : f.disjuncts()) {
        std::uint32_t d = 0;
        for (TupleId t : w) {
            auto it = std::lower_bound(m.vars.begin(), m.vars.end(), t);
            d |= 1u << (it - m.vars.begin());
        }
        m.disjuncts.push_back(d);
    }
    return m;
}

bool sat(const std::vector<std::uint32_t>& disjuncts, std::uint32_t assignment) {
    for (std::uint32_t d : disjuncts)
        if ((assignment & d) == d) return true;
    return false;
}

} // namespace

Rat prob_true(const LineageFormula& f, const Rat& p) {
    if (p < Rat(0) || p > Rat(1))
        throw Error(kModule, "tuple probability must lie in [0,1]");
    if (f.is_constant()) return f.constant_value() ? Rat(1) : Rat(0);
    MaskedFormula m = to_masks(f, "prob_true");
    const int n = static_cast<int>(m.vars.size());

    // Count satisfying assignments by how many variables are true; all
    // assignments with k true variables share the weight p^k (1-p)^(n-k).
    std::vector<Int> by_popcount(static_cast<std::size_t>(n) + 1, Int(0));
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t a = 0; a < total; ++a) {
        auto mask = static_cast<std::uint32_t>(a);
        if (sat(m.disjuncts, mask)) ++by_popcount[static_cast<std::size_t>(std::popcount(mask))];
    }
    std::vector<Rat> pow_p(static_cast<std::size_t>(n) + 1, Rat(1));
    std::vector<Rat> pow_q(static_cast<std::size_t>(n) + 1, Rat(1));
    for (int i = 1; i <= n; ++i) {
        pow_p[static_cast<std::size_t>(i)] = pow_p[static_cast<std::size_t>(i - 1)] * p;
        pow_q[static_cast<std::size_t>(i)] = pow_q[static_cast<std::size_t>(i - 1)] * (Rat(1) - p);
    }
    Rat sum(0);
    for (int k = 0; k <= n; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        if (by_popcount[ks] != 0)
            sum += Rat(by_popcount[ks]) * pow_p[ks] * pow_q[static_cast<std::size_t>(n - k)];
    }
    return sum;
}

Rat prob_true(const LineageFormula& f, const std::map<TupleId, Rat>& probs,
              const Rat& fallback) {
    if (f.is_constant()) return f.constant_value() ? Rat(1) : Rat(0);
    MaskedFormula m = to_masks(f, "prob_true");
    const int n = static_cast<int>(m.vars.size());
    std::vector<Rat> pv;
    pv.reserve(m.vars.size());
    for (TupleId t : m.vars) {
        auto it = probs.find(t);
        const Rat& p = it == probs.end() ? fallback : it->second;
        if (p < Rat(0) || p > Rat(1))
            throw Error(kModule, "tuple probability must lie in [0,1]");
        pv.push_back(p);
    }

    // Depth-first over variables, pruning once the formula is decided.
    std::vector<std::uint32_t> live = m.disjuncts;
    Rat total(0);
    struct Frame {
        std::uint32_t true_mask;
        std::uint32_t decided_mask;
        int depth;
        Rat weight;
    };
    std::vector<Frame> stack{{0u, 0u, 0, Rat(1)}};
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        bool decided_true = false;
        bool maybe_true = false;
        for (std::uint32_t d : m.disjuncts) {
            if ((fr.true_mask & d) == d) {
                decided_true = true;
                break;
            }
            // A disjunct still reachable: none of its vars decided false.
            if ((d & fr.decided_mask & ~fr.true_mask) == 0) maybe_true = true;
        }
        if (decided_true) {
            total += fr.weight;
            continue;
        }
        if (!maybe_true || fr.depth == n) continue;
        const auto bit = 1u << fr.depth;
        const Rat& p = pv[static_cast<std::size_t>(fr.depth)];
        if (p != Rat(0))
            stack.push_back({fr.true_mask | bit, fr.decided_mask | bit, fr.depth + 1,
                             fr.weight * p});
        if (p != Rat(1))
            stack.push_back({fr.true_mask, fr.decided_mask | bit, fr.depth + 1,
                             fr.weight * (Rat(1) - p)});
    }
    return total;
}

Rat causal_effect(const DatabaseInstance& db, const UCQ& q, TupleId tid, const Rat& p) {
    if (!db.has_tid(tid))
        throw Error(kModule, "unknown tuple id " + std::to_string(tid));
    LineageFormula f = lineage(db, q);
    return prob_true(intervene(f, tid, true), p) - prob_true(intervene(f, tid, false), p);
}

} // namespace caudex
