#include "caudex/database.hpp"

#include "caudex/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace caudex {

static const char* kModule = "relational-core";

void Relation::add(Tuple t) {
    if (t.values.size() != arity_)
        throw Error(kModule, "relation " + name_ + " expects arity " + std::to_string(arity_) +
                                 ", got a row of width " + std::to_string(t.values.size()));
    tuples_.push_back(std::move(t));
}

void DatabaseInstance::add_relation(Relation r) {
    if (relations_.count(r.name()))
        throw Error(kModule, "duplicate relation " + r.name());
    index(r);
    relations_.emplace(r.name(), std::move(r));
}

void DatabaseInstance::index(const Relation& r) {
    for (std::size_t i = 0; i < r.tuples().size(); ++i) {
        TupleId tid = r.tuples()[i].tid;
        if (tid <= 0)
            throw Error(kModule, "tuple ids must be positive, got " + std::to_string(tid) +
                                     " in relation " + r.name());
        if (!by_tid_.emplace(tid, std::make_pair(r.name(), i)).second)
            throw Error(kModule, "duplicate tuple id " + std::to_string(tid));
    }
}

const Relation* DatabaseInstance::find(const std::string& name) const {
    auto it = relations_.find(name);
    return it == relations_.end() ? nullptr : &it->second;
}

DatabaseInstance::Located DatabaseInstance::locate(TupleId tid) const {
    auto it = by_tid_.find(tid);
    if (it == by_tid_.end())
        throw Error(kModule, "unknown tuple id " + std::to_string(tid));
    const Relation& r = relations_.at(it->second.first);
    return {&r.name(), &r.tuples()[it->second.second]};
}

std::vector<TupleId> DatabaseInstance::all_tids() const {
    std::vector<TupleId> out;
    out.reserve(by_tid_.size());
    for (const auto& [tid, loc] : by_tid_) out.push_back(tid);
    return out;
}

TupleId DatabaseInstance::max_tid() const {
    return by_tid_.empty() ? 0 : by_tid_.rbegin()->first;
}

DatabaseInstance DatabaseInstance::with_nulls(const AttrInterventionSet& positions) const {
    DatabaseInstance out;
    std::map<TupleId, std::vector<int>> by_tuple;
    for (const AttrPos& p : positions) by_tuple[p.tid].push_back(p.pos);
    for (const auto& [name, rel] : relations_) {
        Relation copy(name, rel.arity());
        for (const Tuple& t : rel.tuples()) {
            Tuple nt = t;
            if (auto it = by_tuple.find(t.tid); it != by_tuple.end()) {
                for (int pos : it->second) {
                    if (pos < 1 || static_cast<std::size_t>(pos) > rel.arity())
                        throw Error(kModule, "position " + std::to_string(pos) +
                                                 " out of range for relation " + name);
                    nt.values[pos - 1] = Value::null();
                }
            }
            copy.add(std::move(nt));
        }
        out.add_relation(std::move(copy));
    }
    return out;
}

namespace {

// Minimal CSV row reader: comma separated, double quotes with ""
// escapes, no embedded newlines.
std::vector<std::string> split_csv_row(const std::string& line, const std::string& file, int lineno) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c == '\r') {
            // tolerate CRLF
        } else {
            cur += c;
        }
    }
    if (quoted)
        throw Error(kModule, file + ":" + std::to_string(lineno) + ": unterminated quote");
    cells.push_back(cur);
    return cells;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct PendingRelation {
    std::string name;
    std::vector<std::vector<std::string>> rows; // raw cells, tid column removed
    std::vector<TupleId> tids;                  // 0 = unassigned
    std::size_t arity = 0;
};

Value cell_to_value(const std::string& cell) {
    if (cell == "NULL") return Value::null();
    return Value::symbol(cell);
}

} // namespace

DatabaseInstance load_database(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw Error(kModule, "not a directory: " + dir.string());

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<PendingRelation> pending;
    for (const auto& file : files) {
        std::ifstream in(file);
        if (!in)
            throw Error(kModule, "cannot open " + file.string());
        PendingRelation rel;
        rel.name = file.stem().string();
        std::string line;
        int lineno = 0;
        bool has_tid_col = false;
        std::size_t width = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (lineno == 1) {
                auto header = split_csv_row(line, file.string(), lineno);
                if (header.empty() || (header.size() == 1 && trim(header[0]).empty()))
                    throw Error(kModule, file.string() + ": empty header");
                has_tid_col = trim(header[0]) == "tid";
                width = header.size();
                rel.arity = width - (has_tid_col ? 1 : 0);
                if (rel.arity == 0)
                    throw Error(kModule, file.string() + ": relation with zero attributes");
                continue;
            }
            if (trim(line).empty() && in.peek() == EOF)
                break; // trailing newline
            auto cells = split_csv_row(line, file.string(), lineno);
            if (cells.size() != width)
                throw Error(kModule, file.string() + ":" + std::to_string(lineno) +
                                         ": expected " + std::to_string(width) + " cells, got " +
                                         std::to_string(cells.size()));
            TupleId tid = 0;
            if (has_tid_col) {
                const std::string raw = trim(cells[0]);
                try {
                    std::size_t used = 0;
                    tid = std::stoll(raw, &used);
                    if (used != raw.size()) throw std::invalid_argument(raw);
                } catch (const std::exception&) {
                    throw Error(kModule, file.string() + ":" + std::to_string(lineno) +
                                             ": bad tid '" + raw + "'");
                }
                if (tid <= 0)
                    throw Error(kModule, file.string() + ":" + std::to_string(lineno) +
                                             ": tid must be positive");
                cells.erase(cells.begin());
            }
            rel.tids.push_back(tid);
            rel.rows.push_back(std::move(cells));
        }
        if (rel.arity == 0)
            throw Error(kModule, file.string() + ": missing header");
        pending.push_back(std::move(rel));
    }

    // schema.txt manifest: validate arities, declare missing relations.
    std::map<std::string, std::size_t> declared;
    auto manifest = dir / "schema.txt";
    if (std::filesystem::exists(manifest)) {
        std::ifstream in(manifest);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            auto slash = t.find('/');
            if (slash == std::string::npos)
                throw Error(kModule, "schema.txt:" + std::to_string(lineno) +
                                         ": expected name/arity, got '" + t + "'");
            std::string name = trim(t.substr(0, slash));
            std::string ar = trim(t.substr(slash + 1));
            std::size_t arity = 0;
            try {
                arity = std::stoul(ar);
            } catch (const std::exception&) {
                throw Error(kModule, "schema.txt:" + std::to_string(lineno) + ": bad arity '" + ar + "'");
            }
            if (!declared.emplace(name, arity).second)
                throw Error(kModule, "schema.txt: relation " + name + " declared twice");
        }
        for (const auto& rel : pending) {
            auto it = declared.find(rel.name);
            if (it != declared.end() && it->second != rel.arity)
                throw Error(kModule, "schema.txt declares " + rel.name + "/" +
                                         std::to_string(it->second) + " but " + rel.name +
                                         ".csv has arity " + std::to_string(rel.arity));
        }
    }

    // Assign tids to rows lacking them: 1,2,... skipping explicit ids.
    std::set<TupleId> used;
    for (const auto& rel : pending)
        for (TupleId t : rel.tids)
            if (t != 0 && !used.insert(t).second)
                throw Error(kModule, "duplicate tuple id " + std::to_string(t));
    TupleId next = 1;
    auto fresh = [&]() {
        while (used.count(next)) ++next;
        used.insert(next);
        return next;
    };

    DatabaseInstance db;
    for (auto& rel : pending) {
        Relation r(rel.name, rel.arity);
        for (std::size_t i = 0; i < rel.rows.size(); ++i) {
            Tuple t;
            t.tid = rel.tids[i] != 0 ? rel.tids[i] : fresh();
            t.values.reserve(rel.arity);
            for (const auto& cell : rel.rows[i]) t.values.push_back(cell_to_value(cell));
            r.add(std::move(t));
        }
        db.add_relation(std::move(r));
    }
    for (const auto& [name, arity] : declared)
        if (!db.find(name))
            db.add_relation(Relation(name, arity));
    return db;
}

} // namespace caudex
