#include "caudex/query.hpp"

#include "caudex/errors.hpp"

#include <map>
#include <sstream>

namespace caudex {

static const char* kModule = "query-lang";

std::vector<UCQ> Program::queries() const {
    std::vector<UCQ> out;
    std::map<std::string, std::size_t> index;
    for (const auto& st : statements) {
        const CQ* q = std::get_if<CQ>(&st);
        if (!q) continue;
        auto it = index.find(q->head_name);
        if (it == index.end()) {
            index.emplace(q->head_name, out.size());
            out.push_back(UCQ{q->head_name, q->head_vars.size(), {*q}});
        } else {
            UCQ& u = out[it->second];
            if (u.head_arity != q->head_vars.size())
                throw Error(kModule, "rules for " + q->head_name + " disagree on head arity");
            u.disjuncts.push_back(*q);
        }
    }
    return out;
}

std::vector<DenialConstraint> Program::dcs() const {
    std::vector<DenialConstraint> out;
    for (const auto& st : statements)
        if (const auto* dc = std::get_if<DenialConstraint>(&st)) out.push_back(*dc);
    return out;
}

std::vector<InclusionDependency> Program::inds() const {
    std::vector<InclusionDependency> out;
    for (const auto& st : statements)
        if (const auto* ind = std::get_if<InclusionDependency>(&st)) out.push_back(*ind);
    return out;
}

UCQ Program::single_query() const {
    auto qs = queries();
    if (qs.size() != 1)
        throw Error(kModule, "expected exactly one query, found " + std::to_string(qs.size()));
    return qs[0];
}

std::string print(const Term& t) { return t.text; }

std::string print(const Atom& a) {
    std::string out = a.pred + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ",";
        out += print(a.args[i]);
    }
    out += ")";
    return out;
}

static std::string print_body(const std::vector<Atom>& body) {
    std::string out;
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (i) out += ", ";
        out += print(body[i]);
    }
    return out;
}

std::string print(const CQ& q) {
    std::string head = q.head_name + "(";
    for (std::size_t i = 0; i < q.head_vars.size(); ++i) {
        if (i) head += ",";
        head += q.head_vars[i];
    }
    head += ")";
    return head + " :- " + print_body(q.body) + ".";
}

std::string print(const UCQ& q) {
    std::string out;
    for (std::size_t i = 0; i < q.disjuncts.size(); ++i) {
        if (i) out += "\n";
        out += print(q.disjuncts[i]);
    }
    return out;
}

std::string print(const DenialConstraint& dc) {
    return ":- " + print_body(dc.body) + ".";
}

std::string print(const InclusionDependency& ind) {
    std::string out = print(ind.source) + " -> ";
    if (!ind.exists_vars.empty()) {
        out += "exists ";
        for (std::size_t i = 0; i < ind.exists_vars.size(); ++i) {
            if (i) out += ",";
            out += ind.exists_vars[i];
        }
        out += ": ";
    }
    return out + print(ind.target) + ".";
}

std::string print(const Program& p) {
    std::string out;
    for (const auto& st : p.statements) {
        std::visit([&](const auto& s) { out += print(s); }, st);
        out += "\n";
    }
    return out;
}

} // namespace caudex
