#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "caudex/rat.hpp"

namespace caudex {

// A categorical feature with a finite, ordered domain.
struct Feature {
    std::string name;
    std::vector<std::string> domain;
};

// An entity: one value per feature, in feature order.
using Entity = std::vector<std::string>;

class FeatureSpace {
public:
    FeatureSpace() = default;
    explicit FeatureSpace(std::vector<Feature> features);

    const std::vector<Feature>& features() const { return features_; }
    std::size_t arity() const { return features_.size(); }
    std::size_t index_of(const std::string& name) const; // throws if unknown
    int value_index(std::size_t feature, const std::string& value) const; // -1 if absent

    void validate_entity(const Entity& e) const; // throws on bad arity/value

private:
    std::vector<Feature> features_;
    std::map<std::string, std::size_t> by_name_;
};

// A decision tree over a feature space. Every internal node branches
// on a feature with exactly one child per domain value; leaves carry a
// label. classify() returns 1 on the positive label, 0 otherwise.
class DecisionTree {
public:
    struct Node {
        int feature = -1;                                  // -1 for leaves
        std::vector<std::pair<std::string, int>> branches; // value -> node id
        std::string label;                                 // leaves only
    };

    DecisionTree() = default;
    DecisionTree(std::vector<Node> nodes, int root, std::string positive_label);

    int classify(const FeatureSpace& fs, const Entity& e) const;
    const std::string& positive_label() const { return positive_label_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    int root() const { return root_; }

private:
    std::vector<Node> nodes_;
    int root_ = -1;
    std::string positive_label_;
};

// A classifier given extensionally: a label for every entity of the
// (small) product space.
class LabelTable {
public:
    LabelTable() = default;
    LabelTable(const FeatureSpace& fs, std::map<Entity, std::string> labels,
               std::string positive_label);

    int classify(const FeatureSpace& fs, const Entity& e) const;
    const std::string& positive_label() const { return positive_label_; }

private:
    std::map<Entity, std::string> labels_;
    std::string positive_label_;
};

// Either representation behind one call.
class Classifier {
public:
    Classifier() = default;
    explicit Classifier(DecisionTree t) : tree_(std::move(t)) {}
    explicit Classifier(LabelTable t) : table_(std::move(t)) {}

    int classify(const FeatureSpace& fs, const Entity& e) const;
    const DecisionTree* tree() const { return tree_ ? &*tree_ : nullptr; }

private:
    std::optional<DecisionTree> tree_;
    std::optional<LabelTable> table_;
};

struct ClassifierBundle {
    FeatureSpace space;
    Classifier clf;
};

// JSON file: {"features": [{"name":.., "domain":[..]}..],
// "positive_label": .., "tree": {"feature":.., "branches": {value:
// subtree..}} | {"leaf": label}}. Without "tree" the labels must come
// from a CSV table (load_label_table).
ClassifierBundle load_classifier(const std::filesystem::path& json_file);

// CSV with one column per feature (by name) plus a final "label"
// column, covering the whole product space exactly once.
ClassifierBundle load_table_classifier(const std::filesystem::path& json_file,
                                       const std::filesystem::path& csv_file);

// Load one entity per row from a CSV with feature-name columns.
std::vector<Entity> load_entities(const FeatureSpace& fs, const std::filesystem::path& csv_file);

enum class DistKind { Uniform, Product, Empirical };

DistKind dist_kind_from_string(const std::string& s);

// A distribution over the product space used for expectations.
// UNIFORM needs no data; PRODUCT uses per-feature marginal frequencies
// of a sample; EMPIRICAL uses the sample itself.
class Distribution {
public:
    static Distribution uniform();
    static Distribution product(const FeatureSpace& fs, const std::vector<Entity>& sample);
    static Distribution empirical(const FeatureSpace& fs, std::vector<Entity> sample);

    DistKind kind() const { return kind_; }

    // E[L(e') | e'_i = e_i for every fixed i], with L the classifier.
    Rat cond_expectation(const Classifier& clf, const FeatureSpace& fs, const Entity& e,
                         const std::vector<bool>& fixed) const;

    // E[L(e') | e'_i = e_i off `feature`, e'_feature != e_feature]:
    // everything fixed except one feature, resampled over the other
    // values of its domain (conditional weights renormalized).
    Rat cond_expectation_excluding(const Classifier& clf, const FeatureSpace& fs,
                                   const Entity& e, std::size_t feature) const;

private:
    DistKind kind_ = DistKind::Uniform;
    std::vector<std::map<std::string, Rat>> marginals_; // product
    std::vector<Entity> sample_;                        // empirical
};

} // namespace caudex
