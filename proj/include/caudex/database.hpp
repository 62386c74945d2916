#pragma once

#include "caudex/value.hpp"

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace caudex {

struct Tuple {
    TupleId tid = 0;
    std::vector<Value> values;
};

class Relation {
public:
    Relation() = default;
    Relation(std::string name, std::size_t arity) : name_(std::move(name)), arity_(arity) {}

    const std::string& name() const { return name_; }
    std::size_t arity() const { return arity_; }
    const std::vector<Tuple>& tuples() const { return tuples_; }

    void add(Tuple t);

private:
    std::string name_;
    std::size_t arity_ = 0;
    std::vector<Tuple> tuples_;
};

// A change of one attribute value to NULL, addressed by tid and
// 1-based position.
struct AttrPos {
    TupleId tid = 0;
    int pos = 0;
    friend auto operator<=>(const AttrPos&, const AttrPos&) = default;
};

using AttrInterventionSet = std::vector<AttrPos>; // kept sorted

// Immutable after load; safe to share across threads.
class DatabaseInstance {
public:
    DatabaseInstance() = default;

    void add_relation(Relation r);

    const Relation* find(const std::string& name) const;
    const std::map<std::string, Relation>& relations() const { return relations_; }

    // Location of a tuple: relation name plus the tuple itself.
    struct Located {
        const std::string* relation;
        const Tuple* tuple;
    };
    Located locate(TupleId tid) const; // throws if unknown

    bool has_tid(TupleId tid) const { return by_tid_.count(tid) > 0; }
    std::vector<TupleId> all_tids() const; // sorted
    std::size_t size() const { return by_tid_.size(); }
    TupleId max_tid() const;

    // Copy with the given positions replaced by NULL.
    DatabaseInstance with_nulls(const AttrInterventionSet& positions) const;

private:
    void index(const Relation& r);

    std::map<std::string, Relation> relations_;
    std::map<TupleId, std::pair<std::string, std::size_t>> by_tid_;
};

// Loads a directory of CSV files (one relation per file, named by the
// file stem). First row is the header; an optional leading column
// literally named "tid" carries explicit tuple ids. Cells equal to
// "NULL" load as NULL. When tids are absent they are assigned 1,2,...
// over files in sorted name order, rows in file order. An optional
// schema.txt manifest lists "name/arity" lines; declared relations
// missing a CSV load as empty.
DatabaseInstance load_database(const std::filesystem::path& dir);

} // namespace caudex
