#include "caudex/cls_scores.hpp"

#include "caudex/errors.hpp"
#include "caudex/limits.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

namespace caudex {

namespace {

const char* kModule = "classifier-explain";

std::vector<int> value_indices(const FeatureSpace& fs, const Entity& e) {
    std::vector<int> out(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) out[i] = fs.value_index(i, e[i]);
    return out;
}

// Enumerate k-subsets of {0..n-1} lexicographically.
struct Combinations {
    std::size_t n, k;
    std::vector<std::size_t> pick;
    bool live = false;

    bool next() {
        if (!live) {
            pick.resize(k);
            for (std::size_t i = 0; i < k; ++i) pick[i] = i;
            live = true;
            return k <= n;
        }
        for (std::size_t i = k; i-- > 0;) {
            if (pick[i] < n - (k - i)) {
                ++pick[i];
                for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
                return true;
            }
        }
        return false;
    }
};

// Iterate assignments over the chosen coordinates; `alt[i]` lists the
// candidate value indices for coordinate pick[i].
struct Assignments {
    const std::vector<std::vector<int>>& alt;
    std::vector<std::size_t> at;
    bool live = false;

    explicit Assignments(const std::vector<std::vector<int>>& a) : alt(a) {}

    bool next() {
        if (!live) {
            at.assign(alt.size(), 0);
            live = true;
            for (const auto& v : alt)
                if (v.empty()) return false;
            return true;
        }
        for (std::size_t i = 0; i < alt.size(); ++i) {
            if (++at[i] < alt[i].size()) return true;
            at[i] = 0;
        }
        return false;
    }
};

} // namespace

std::vector<Cfv> counterfactual_versions(const Classifier& clf, const FeatureSpace& fs,
                                         const Entity& e, int max_distance) {
    fs.validate_entity(e);
    const int label = clf.classify(fs, e);
    const std::size_t n = fs.arity();
    const int maxd = std::min<int>(max_distance, static_cast<int>(n));
    if (maxd < 0) throw Error(kModule, "max distance must be non-negative");

    Int combos(1);
    for (const Feature& f : fs.features()) combos *= Int(f.domain.size());
    if (combos > Int(limits::kMaxEnumeratedEntities))
        throw Error(kModule, "product space has " + combos.str() +
                                 " entities, exceeding the cap of " +
                                 std::to_string(limits::kMaxEnumeratedEntities));

    std::vector<Cfv> out;
    Entity cur(n);
    std::vector<std::size_t> pick(n, 0);
    const std::vector<int> base = value_indices(fs, e);
    while (true) {
        int dist = 0;
        for (std::size_t i = 0; i < n; ++i) {
            cur[i] = fs.features()[i].domain[pick[i]];
            if (static_cast<int>(pick[i]) != base[i]) ++dist;
        }
        if (dist > 0 && dist <= maxd && clf.classify(fs, cur) != label) {
            Cfv c;
            c.entity = cur;
            c.distance = dist;
            for (std::size_t i = 0; i < n; ++i)
                if (static_cast<int>(pick[i]) != base[i]) c.changed.push_back(fs.features()[i].name);
            out.push_back(std::move(c));
        }
        std::size_t j = 0;
        for (; j < n; ++j) {
            if (++pick[j] < fs.features()[j].domain.size()) break;
            pick[j] = 0;
        }
        if (j == n) break;
    }
    std::sort(out.begin(), out.end(), [&](const Cfv& a, const Cfv& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return value_indices(fs, a.entity) < value_indices(fs, b.entity);
    });
    return out;
}

Rat x_resp(const Classifier& clf, const FeatureSpace& fs, const Entity& e,
           const std::string& feature, std::optional<int> max_contingency) {
    fs.validate_entity(e);
    const std::size_t fi = fs.index_of(feature);
    const int label = clf.classify(fs, e);

    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < fs.arity(); ++i)
        if (i != fi) others.push_back(i);
    const std::size_t limit = max_contingency
                                  ? std::min<std::size_t>(static_cast<std::size_t>(
                                                              std::max(0, *max_contingency)),
                                                          others.size())
                                  : others.size();

    const std::vector<int> base = value_indices(fs, e);
    for (std::size_t k = 0; k <= limit; ++k) {
        Combinations comb{others.size(), k, {}, false};
        while (comb.next()) {
            // Candidate new values per chosen coordinate: anything but
            // the current value.
            std::vector<std::vector<int>> alt(k);
            for (std::size_t j = 0; j < k; ++j) {
                const std::size_t i = others[comb.pick[j]];
                for (int v = 0; v < static_cast<int>(fs.features()[i].domain.size()); ++v)
                    if (v != base[i]) alt[j].push_back(v);
            }
            Assignments as(alt);
            while (as.next()) {
                Entity ep = e;
                for (std::size_t j = 0; j < k; ++j) {
                    const std::size_t i = others[comb.pick[j]];
                    ep[i] = fs.features()[i].domain[static_cast<std::size_t>(alt[j][as.at[j]])];
                }
                if (clf.classify(fs, ep) != label) continue;
                // The contingency keeps the label; look for a value of
                // the feature that flips it.
                for (const std::string& v : fs.features()[fi].domain) {
                    if (v == e[fi]) continue;
                    Entity eq = ep;
                    eq[fi] = v;
                    if (clf.classify(fs, eq) != label) return Rat(1, Int(1 + k));
                }
            }
        }
    }
    return Rat(0);
}

Rat counter_score(const Classifier& clf, const FeatureSpace& fs, const Entity& e,
                  const std::string& feature, const Distribution& dist) {
    fs.validate_entity(e);
    const std::size_t fi = fs.index_of(feature);
    std::vector<bool> fixed(fs.arity(), true);
    fixed[fi] = false;
    return Rat(clf.classify(fs, e)) - dist.cond_expectation(clf, fs, e, fixed);
}

RespResult resp_score(const Classifier& clf, const FeatureSpace& fs, const Entity& e,
                      const std::string& feature, const Distribution& dist,
                      const RespOptions& opts) {
    fs.validate_entity(e);
    const std::size_t fi = fs.index_of(feature);
    const int label = clf.classify(fs, e);

    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < fs.arity(); ++i)
        if (i != fi) others.push_back(i);
    const std::size_t limit = opts.max_contingency
                                  ? std::min<std::size_t>(static_cast<std::size_t>(std::max(
                                                              0, *opts.max_contingency)),
                                                          others.size())
                                  : others.size();

    const std::vector<int> base = value_indices(fs, e);
    for (std::size_t k = 0; k <= limit; ++k) {
        RespResult best;
        bool found = false;
        Combinations comb{others.size(), k, {}, false};
        while (comb.next()) {
            std::vector<std::vector<int>> alt(k);
            for (std::size_t j = 0; j < k; ++j) {
                const std::size_t i = others[comb.pick[j]];
                for (int v = 0; v < static_cast<int>(fs.features()[i].domain.size()); ++v)
                    if (v != base[i]) alt[j].push_back(v);
            }
            Assignments as(alt);
            while (as.next()) {
                Entity ep = e;
                for (std::size_t j = 0; j < k; ++j) {
                    const std::size_t i = others[comb.pick[j]];
                    ep[i] = fs.features()[i].domain[static_cast<std::size_t>(alt[j][as.at[j]])];
                }
                if (clf.classify(fs, ep) != label) continue;

                // Expected label when the feature of interest is
                // resampled and everything else stays at e'.
                Rat expectation;
                if (opts.exclude_original) {
                    expectation = dist.cond_expectation_excluding(clf, fs, ep, fi);
                } else {
                    std::vector<bool> fixed(fs.arity(), true);
                    fixed[fi] = false;
                    expectation = dist.cond_expectation(clf, fs, ep, fixed);
                }
                Rat numerator = Rat(label) - expectation;
                if (numerator <= Rat(0)) continue;
                Rat score = numerator / Rat(Int(1 + k));
                if (!found || score > best.score) {
                    found = true;
                    best.score = score;
                    best.contingency.clear();
                    for (std::size_t j = 0; j < k; ++j) {
                        const std::size_t i = others[comb.pick[j]];
                        best.contingency.emplace_back(fs.features()[i].name, ep[i]);
                    }
                }
            }
        }
        if (found) return best;
    }
    return RespResult{};
}

Rat shap_score(const Classifier& clf, const FeatureSpace& fs, const Entity& e,
               const std::string& feature, const Distribution& dist) {
    fs.validate_entity(e);
    const std::size_t fi = fs.index_of(feature);
    const int n = static_cast<int>(fs.arity());
    if (n > limits::kMaxShapFeatures)
        throw Error(kModule, "Shap over " + std::to_string(n) +
                                 " features exceeds the cap of " +
                                 std::to_string(limits::kMaxShapFeatures));

    // Game value of a coalition: expected label with those features
    // fixed at the entity's values. Memoized by coalition mask.
    std::map<std::uint32_t, Rat> memo;
    auto value = [&](std::uint32_t mask) -> const Rat& {
        auto it = memo.find(mask);
        if (it == memo.end()) {
            std::vector<bool> fixed(static_cast<std::size_t>(n), false);
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) fixed[static_cast<std::size_t>(i)] = true;
            it = memo.emplace(mask, dist.cond_expectation(clf, fs, e, fixed)).first;
        }
        return it->second;
    };

    std::vector<std::size_t> others;
    for (int i = 0; i < n; ++i)
        if (static_cast<std::size_t>(i) != fi) others.push_back(static_cast<std::size_t>(i));

    Rat sum(0);
    const Int n_fact = factorial(n);
    const std::uint64_t total = 1ull << others.size();
    for (std::uint64_t sub = 0; sub < total; ++sub) {
        std::uint32_t mask = 0;
        int size = 0;
        for (std::size_t j = 0; j < others.size(); ++j)
            if (sub & (1ull << j)) {
                mask |= 1u << others[j];
                ++size;
            }
        const Rat weight(factorial(size) * factorial(n - size - 1), n_fact);
        sum += weight * (value(mask | (1u << fi)) - value(mask));
    }
    return sum;
}

} // namespace caudex
