#include "caudex/classifier.hpp"

#include "caudex/errors.hpp"
#include "caudex/limits.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace caudex {

namespace {

const char* kModule = "classifier-explain";

using nlohmann::json;

json read_json(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error(kModule, "cannot open " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw Error(kModule, file.string() + ": " + ex.what());
    }
    return j;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cell += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    cells.push_back(std::move(cell));
    return cells;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error(kModule, "cannot open " + file.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        rows.push_back(split_csv_row(line));
    }
    if (rows.empty()) throw Error(kModule, file.string() + ": empty CSV");
    return rows;
}

FeatureSpace space_from_json(const json& j, const std::filesystem::path& file) {
    if (!j.contains("features") || !j["features"].is_array())
        throw Error(kModule, file.string() + ": missing \"features\" array");
    std::vector<Feature> fs;
    for (const json& f : j["features"]) {
        Feature feat;
        feat.name = f.at("name").get<std::string>();
        for (const json& v : f.at("domain")) feat.domain.push_back(v.get<std::string>());
        if (feat.domain.empty())
            throw Error(kModule, "feature " + feat.name + " has an empty domain");
        fs.push_back(std::move(feat));
    }
    return FeatureSpace(std::move(fs));
}

} // namespace

FeatureSpace::FeatureSpace(std::vector<Feature> features) : features_(std::move(features)) {
    for (std::size_t i = 0; i < features_.size(); ++i) {
        auto [it, fresh] = by_name_.emplace(features_[i].name, i);
        if (!fresh) throw Error(kModule, "duplicate feature name " + features_[i].name);
        std::vector<std::string> dom = features_[i].domain;
        std::sort(dom.begin(), dom.end());
        if (std::adjacent_find(dom.begin(), dom.end()) != dom.end())
            throw Error(kModule, "feature " + features_[i].name + " repeats a domain value");
    }
}

std::size_t FeatureSpace::index_of(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw Error(kModule, "unknown feature " + name);
    return it->second;
}

int FeatureSpace::value_index(std::size_t feature, const std::string& value) const {
    const auto& dom = features_.at(feature).domain;
    auto it = std::find(dom.begin(), dom.end(), value);
    return it == dom.end() ? -1 : static_cast<int>(it - dom.begin());
}

void FeatureSpace::validate_entity(const Entity& e) const {
    if (e.size() != features_.size())
        throw Error(kModule, "entity has " + std::to_string(e.size()) + " values, expected " +
                                 std::to_string(features_.size()));
    for (std::size_t i = 0; i < e.size(); ++i)
        if (value_index(i, e[i]) < 0)
            throw Error(kModule, "value " + e[i] + " is not in the domain of feature " +
                                     features_[i].name);
}

DecisionTree::DecisionTree(std::vector<Node> nodes, int root, std::string positive_label)
    : nodes_(std::move(nodes)), root_(root), positive_label_(std::move(positive_label)) {}

int DecisionTree::classify(const FeatureSpace& fs, const Entity& e) const {
    fs.validate_entity(e);
    int at = root_;
    while (true) {
        const Node& n = nodes_.at(static_cast<std::size_t>(at));
        if (n.feature < 0) return n.label == positive_label_ ? 1 : 0;
        const std::string& v = e[static_cast<std::size_t>(n.feature)];
        auto it = std::find_if(n.branches.begin(), n.branches.end(),
                               [&](const auto& b) { return b.first == v; });
        if (it == n.branches.end())
            throw Error(kModule, "tree node lacks a branch for value " + v);
        at = it->second;
    }
}

LabelTable::LabelTable(const FeatureSpace& fs, std::map<Entity, std::string> labels,
                       std::string positive_label)
    : labels_(std::move(labels)), positive_label_(std::move(positive_label)) {
    Int expected(1);
    for (const Feature& f : fs.features()) expected *= Int(f.domain.size());
    if (Int(labels_.size()) != expected)
        throw Error(kModule, "label table covers " + std::to_string(labels_.size()) +
                                 " entities, expected " + expected.str());
    for (const auto& [e, lbl] : labels_) fs.validate_entity(e);
}

int LabelTable::classify(const FeatureSpace& fs, const Entity& e) const {
    fs.validate_entity(e);
    auto it = labels_.find(e);
    if (it == labels_.end())
        throw Error(kModule, "label table has no row for the given entity");
    return it->second == positive_label_ ? 1 : 0;
}

int Classifier::classify(const FeatureSpace& fs, const Entity& e) const {
    if (tree_) return tree_->classify(fs, e);
    if (table_) return table_->classify(fs, e);
    throw Error(kModule, "classifier is empty");
}

namespace {

int build_tree(const json& node, const FeatureSpace& fs, std::vector<DecisionTree::Node>& out,
               const std::filesystem::path& file) {
    DecisionTree::Node n;
    if (node.contains("leaf")) {
        n.label = node["leaf"].get<std::string>();
        out.push_back(std::move(n));
        return static_cast<int>(out.size()) - 1;
    }
    if (!node.contains("feature") || !node.contains("branches"))
        throw Error(kModule, file.string() + ": tree node needs \"leaf\" or \"feature\"+\"branches\"");
    const std::string fname = node["feature"].get<std::string>();
    const std::size_t fidx = fs.index_of(fname);
    const auto& dom = fs.features()[fidx].domain;
    const json& branches = node["branches"];
    if (!branches.is_object())
        throw Error(kModule, file.string() + ": \"branches\" must map values to subtrees");
    for (const std::string& v : dom)
        if (!branches.contains(v))
            throw Error(kModule, "tree node on " + fname + " misses a branch for value " + v);
    if (branches.size() != dom.size())
        throw Error(kModule, "tree node on " + fname + " has a branch outside the domain");
    n.feature = static_cast<int>(fidx);
    // Children in domain order so traversal order is deterministic.
    std::vector<std::pair<std::string, const json*>> kids;
    for (const std::string& v : dom) kids.emplace_back(v, &branches.at(v));
    const auto self = out.size();
    out.push_back(std::move(n));
    for (auto& [v, sub] : kids) {
        int child = build_tree(*sub, fs, out, file);
        out[self].branches.emplace_back(v, child);
    }
    return static_cast<int>(self);
}

} // namespace

ClassifierBundle load_classifier(const std::filesystem::path& json_file) {
    json j = read_json(json_file);
    ClassifierBundle b;
    b.space = space_from_json(j, json_file);
    if (!j.contains("positive_label"))
        throw Error(kModule, json_file.string() + ": missing \"positive_label\"");
    std::string pos = j["positive_label"].get<std::string>();
    if (!j.contains("tree"))
        throw Error(kModule, json_file.string() + ": missing \"tree\" (use a label table instead)");
    std::vector<DecisionTree::Node> nodes;
    int root = build_tree(j["tree"], b.space, nodes, json_file);
    b.clf = Classifier(DecisionTree(std::move(nodes), root, std::move(pos)));
    return b;
}

ClassifierBundle load_table_classifier(const std::filesystem::path& json_file,
                                       const std::filesystem::path& csv_file) {
    json j = read_json(json_file);
    ClassifierBundle b;
    b.space = space_from_json(j, json_file);
    if (!j.contains("positive_label"))
        throw Error(kModule, json_file.string() + ": missing \"positive_label\"");
    std::string pos = j["positive_label"].get<std::string>();

    auto rows = read_csv(csv_file);
    const auto& header = rows.front();
    if (header.empty() || header.back() != "label")
        throw Error(kModule, csv_file.string() + ": last column must be \"label\"");
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c + 1 < header.size(); ++c) order.push_back(b.space.index_of(header[c]));
    if (order.size() != b.space.arity())
        throw Error(kModule, csv_file.string() + ": expected one column per feature plus label");
    std::map<Entity, std::string> labels;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != header.size())
            throw Error(kModule, csv_file.string() + ":" + std::to_string(r + 1) +
                                     ": expected " + std::to_string(header.size()) + " cells");
        Entity e(b.space.arity());
        for (std::size_t c = 0; c + 1 < row.size(); ++c) e[order[c]] = row[c];
        if (!labels.emplace(std::move(e), row.back()).second)
            throw Error(kModule, csv_file.string() + ":" + std::to_string(r + 1) +
                                     ": duplicate entity row");
    }
    b.clf = Classifier(LabelTable(b.space, std::move(labels), std::move(pos)));
    return b;
}

std::vector<Entity> load_entities(const FeatureSpace& fs, const std::filesystem::path& csv_file) {
    auto rows = read_csv(csv_file);
    const auto& header = rows.front();
    std::vector<std::size_t> order;
    for (const std::string& h : header) order.push_back(fs.index_of(h));
    if (order.size() != fs.arity())
        throw Error(kModule, csv_file.string() + ": expected one column per feature");
    std::vector<Entity> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != header.size())
            throw Error(kModule, csv_file.string() + ":" + std::to_string(r + 1) +
                                     ": expected " + std::to_string(header.size()) + " cells");
        Entity e(fs.arity());
        for (std::size_t c = 0; c < row.size(); ++c) e[order[c]] = row[c];
        fs.validate_entity(e);
        out.push_back(std::move(e));
    }
    return out;
}

DistKind dist_kind_from_string(const std::string& s) {
    if (s == "uniform") return DistKind::Uniform;
    if (s == "product") return DistKind::Product;
    if (s == "empirical") return DistKind::Empirical;
    throw Error(kModule, "unknown distribution " + s + " (want uniform, product, or empirical)");
}

Distribution Distribution::uniform() { return Distribution{}; }

Distribution Distribution::product(const FeatureSpace& fs, const std::vector<Entity>& sample) {
    if (sample.empty()) throw Error(kModule, "product distribution needs a non-empty sample");
    Distribution d;
    d.kind_ = DistKind::Product;
    d.marginals_.resize(fs.arity());
    for (const Entity& e : sample) {
        fs.validate_entity(e);
        for (std::size_t i = 0; i < e.size(); ++i) {
            auto [it, fresh] = d.marginals_[i].try_emplace(e[i], Rat(0));
            it->second += Rat(1, Int(sample.size()));
        }
    }
    return d;
}

Distribution Distribution::empirical(const FeatureSpace& fs, std::vector<Entity> sample) {
    if (sample.empty()) throw Error(kModule, "empirical distribution needs a non-empty sample");
    for (const Entity& e : sample) fs.validate_entity(e);
    Distribution d;
    d.kind_ = DistKind::Empirical;
    d.sample_ = std::move(sample);
    return d;
}

Rat Distribution::cond_expectation_excluding(const Classifier& clf, const FeatureSpace& fs,
                                             const Entity& e, std::size_t feature) const {
    fs.validate_entity(e);
    const auto& dom = fs.features().at(feature).domain;

    if (kind_ == DistKind::Empirical) {
        Int hits(0), positive(0);
        for (const Entity& s : sample_) {
            bool match = s[feature] != e[feature];
            for (std::size_t i = 0; i < s.size() && match; ++i)
                if (i != feature && s[i] != e[i]) match = false;
            if (!match) continue;
            ++hits;
            if (clf.classify(fs, s)) ++positive;
        }
        if (hits == 0)
            throw Error(kModule,
                        "conditioning event has probability 0 under the empirical sample");
        return Rat(positive, hits);
    }

    Rat mass(0), acc(0);
    Entity cur = e;
    for (const std::string& v : dom) {
        if (v == e[feature]) continue;
        Rat w(1);
        if (kind_ == DistKind::Product) {
            auto it = marginals_[feature].find(v);
            w = it == marginals_[feature].end() ? Rat(0) : it->second;
        }
        if (w == Rat(0)) continue;
        mass += w;
        cur[feature] = v;
        if (clf.classify(fs, cur)) acc += w;
    }
    if (mass == Rat(0))
        throw Error(kModule, "no alternative value of " + fs.features().at(feature).name +
                                 " has positive probability");
    return acc / mass;
}

Rat Distribution::cond_expectation(const Classifier& clf, const FeatureSpace& fs,
                                   const Entity& e, const std::vector<bool>& fixed) const {
    fs.validate_entity(e);
    if (fixed.size() != fs.arity())
        throw Error(kModule, "fixed-coordinate mask has the wrong length");

    if (kind_ == DistKind::Empirical) {
        Int hits(0), positive(0);
        for (const Entity& s : sample_) {
            bool match = true;
            for (std::size_t i = 0; i < fixed.size() && match; ++i)
                if (fixed[i] && s[i] != e[i]) match = false;
            if (!match) continue;
            ++hits;
            if (clf.classify(fs, s)) ++positive;
        }
        if (hits == 0)
            throw Error(kModule,
                        "conditioning event has probability 0 under the empirical sample");
        return Rat(positive, hits);
    }

    // UNIFORM and PRODUCT: enumerate completions of the free
    // coordinates; weights multiply across coordinates.
    std::vector<std::size_t> free;
    Int combos(1);
    for (std::size_t i = 0; i < fixed.size(); ++i)
        if (!fixed[i]) {
            free.push_back(i);
            combos *= Int(fs.features()[i].domain.size());
        }
    if (combos > Int(limits::kMaxEnumeratedEntities))
        throw Error(kModule, "expectation would enumerate " + combos.str() +
                                 " entities, exceeding the cap of " +
                                 std::to_string(limits::kMaxEnumeratedEntities));

    Rat total(0);
    Entity cur = e;
    std::vector<std::size_t> pick(free.size(), 0);
    while (true) {
        Rat w(1);
        for (std::size_t j = 0; j < free.size(); ++j) {
            const std::size_t i = free[j];
            const std::string& v = fs.features()[i].domain[pick[j]];
            cur[i] = v;
            if (kind_ == DistKind::Uniform) {
                w *= Rat(1, Int(fs.features()[i].domain.size()));
            } else {
                auto it = marginals_[i].find(v);
                if (it == marginals_[i].end()) {
                    w = Rat(0);
                    break;
                }
                w *= it->second;
            }
        }
        if (w != Rat(0) && clf.classify(fs, cur)) total += w;
        // next assignment
        std::size_t j = 0;
        for (; j < free.size(); ++j) {
            if (++pick[j] < fs.features()[free[j]].domain.size()) break;
            pick[j] = 0;
            cur[free[j]] = e[free[j]];
        }
        if (j == free.size()) break;
    }
    return total;
}

} // namespace caudex
