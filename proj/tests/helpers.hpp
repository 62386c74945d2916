#pragma once

// Shared conveniences for the test binaries: fixture loading, rational
// literals, and canonical orderings for result comparison.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "caudex/database.hpp"
#include "caudex/parser.hpp"
#include "caudex/query.hpp"
#include "caudex/rat.hpp"

namespace helpers {

inline std::filesystem::path fixture(const std::string& rel) {
    return std::filesystem::path(CAUDEX_FIXTURE_DIR) / rel;
}

inline std::filesystem::path snapshot(const std::string& rel) {
    return std::filesystem::path(CAUDEX_SNAPSHOT_DIR) / rel;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline caudex::DatabaseInstance db(const std::string& dir) {
    return caudex::load_database(fixture(dir));
}

inline caudex::Program program(const std::string& file) {
    return caudex::parse(slurp(fixture(file)));
}

inline caudex::UCQ query(const std::string& file) {
    return program(file).single_query();
}

inline caudex::Rat rat(const std::string& text) { return caudex::rat_from_string(text); }

// Sort tid sets by size then lexicographically, the order the library
// promises for witness-like collections.
inline std::vector<std::vector<caudex::TupleId>> canon(
    std::vector<std::vector<caudex::TupleId>> sets) {
    for (auto& s : sets) std::sort(s.begin(), s.end());
    std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return sets;
}

// Whitespace normalization for program-text snapshots: trims trailing
// space per line and drops leading/trailing blank lines, so snapshots
// stay robust to incidental formatting.
inline std::string normalize_ws(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && lines.front().empty()) lines.erase(lines.begin());
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    std::string out;
    for (const auto& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

} // namespace helpers
