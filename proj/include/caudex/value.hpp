#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>

namespace caudex {

using TupleId = std::int64_t;

// A database value: either a constant symbol or NULL. NULL compares
// unequal to everything under join semantics, including itself.
class Value {
public:
    Value() : null_(true) {}

    static Value null() { return Value(); }
    static Value symbol(std::string s) {
        Value v;
        v.null_ = false;
        v.sym_ = std::move(s);
        return v;
    }

    bool is_null() const { return null_; }
    const std::string& sym() const { return sym_; }

    // Structural equality/order, used for storage and sorting only.
    // NULL sorts before all symbols and equals itself structurally.
    friend bool operator==(const Value& a, const Value& b) {
        return a.null_ == b.null_ && a.sym_ == b.sym_;
    }
    friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
        if (a.null_ != b.null_)
            return a.null_ ? std::strong_ordering::less : std::strong_ordering::greater;
        return a.sym_ <=> b.sym_;
    }

    std::string to_string() const { return null_ ? "NULL" : sym_; }

private:
    bool null_;
    std::string sym_;
};

// Join/selection semantics: true only when both sides are non-NULL
// and carry the same symbol.
inline bool joins(const Value& a, const Value& b) {
    return !a.is_null() && !b.is_null() && a.sym() == b.sym();
}

} // namespace caudex
