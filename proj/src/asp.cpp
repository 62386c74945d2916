#include "caudex/asp.hpp"

#include "caudex/errors.hpp"
#include "caudex/repairs.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace caudex {

namespace {

const char* kModule = "asp-emitter";

// Argument variables of the first and second atom over a relation.
std::string letter1(std::size_t i) {
    static const char* base[] = {"X", "Y", "Z"};
    return i < 3 ? base[i] : "X" + std::to_string(i + 1);
}

std::string letter2(std::size_t i) {
    static const char* base[] = {"U", "V", "W"};
    return i < 3 ? base[i] : "U" + std::to_string(i + 1);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string atom_text(const std::string& pred, const std::vector<std::string>& args) {
    return pred + "(" + join(args, ",") + ")";
}

std::string value_text(const Value& v) { return v.is_null() ? "null" : v.to_string(); }

// All facts, ascending tid, space-separated on one line.
std::string facts_line(const DatabaseInstance& db) {
    std::vector<std::string> facts;
    for (TupleId tid : db.all_tids()) {
        auto loc = db.locate(tid);
        std::vector<std::string> args{std::to_string(tid)};
        for (const Value& v : loc.tuple->values) args.push_back(value_text(v));
        facts.push_back(atom_text(*loc.relation, args) + ".");
    }
    return join(facts, " ");
}

// Relations appearing in the constraints, in first-appearance order,
// with their arities validated against the instance when present.
std::vector<std::pair<std::string, std::size_t>> dc_relations(
    const DatabaseInstance& db, const std::vector<DenialConstraint>& dcs) {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::set<std::string> seen;
    for (const DenialConstraint& dc : dcs) {
        for (const Atom& a : dc.body) {
            if (!seen.insert(a.pred).second) continue;
            if (const Relation* r = db.find(a.pred); r && r->arity() != a.args.size())
                throw Error(kModule, "relation " + a.pred + " has arity " +
                                         std::to_string(r->arity()) + ", constraint uses " +
                                         std::to_string(a.args.size()));
            out.emplace_back(a.pred, a.args.size());
        }
    }
    return out;
}

int maxint_for(const DatabaseInstance& db) {
    long long m = db.size() == 0 ? 0 : static_cast<long long>(db.max_tid()) * 2;
    long long rounded = ((m + 99) / 100) * 100;
    return static_cast<int>(std::max(100ll, rounded));
}

// "P_a(T,X,Y,d)" style: tid var, generic or given args, annotation.
std::string annotated(const std::string& rel, const std::string& tid_var,
                      const std::vector<std::string>& args, const std::string& ann) {
    std::vector<std::string> all{tid_var};
    all.insert(all.end(), args.begin(), args.end());
    all.push_back(ann);
    return atom_text(rel + "_a", all);
}

std::vector<std::string> scheme1(std::size_t arity) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < arity; ++i) v.push_back(letter1(i));
    return v;
}

std::vector<std::string> scheme2(std::size_t arity) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < arity; ++i) v.push_back(letter2(i));
    return v;
}

std::vector<std::string> term_texts(const Atom& a) {
    std::vector<std::string> v;
    for (const Term& t : a.args) v.push_back(t.text);
    return v;
}

void append_block(std::string& out, const std::vector<std::string>& lines) {
    if (lines.empty()) return;
    if (!out.empty()) out += "\n";
    for (const std::string& l : lines) out += l + "\n";
}

std::string weak_line(const std::string& rel, std::size_t arity) {
    return ":~ " + annotated(rel, "T", scheme1(arity), "d") + ".";
}

} // namespace

std::string emit_repair_program(const DatabaseInstance& db,
                                const std::vector<DenialConstraint>& dcs,
                                const RepairProgramOptions& opts) {
    const bool causes = opts.causes || opts.responsibility;
    auto rels = dc_relations(db, dcs);

    std::string out;
    if (db.size() > 0) append_block(out, {facts_line(db)});

    // One disjunctive repair rule per constraint, then the collection
    // rules marking survivors.
    std::vector<std::string> rules;
    for (const DenialConstraint& dc : dcs) {
        std::vector<std::string> head, body;
        for (std::size_t i = 0; i < dc.body.size(); ++i) {
            const Atom& a = dc.body[i];
            const std::string tv = "T" + std::to_string(i + 1);
            head.push_back(annotated(a.pred, tv, term_texts(a), "d"));
            std::vector<std::string> args{tv};
            for (const std::string& t : term_texts(a)) args.push_back(t);
            body.push_back(atom_text(a.pred, args));
        }
        rules.push_back(join(head, " v ") + " :- " + join(body, ", ") + ".");
    }
    for (const auto& [rel, arity] : rels) {
        std::vector<std::string> args{"T"};
        for (const std::string& v : scheme1(arity)) args.push_back(v);
        rules.push_back(annotated(rel, "T", scheme1(arity), "s") + " :- " +
                        atom_text(rel, args) + ", not " +
                        annotated(rel, "T", scheme1(arity), "d") + ".");
    }
    append_block(out, rules);

    if (causes && !rels.empty()) {
        std::vector<std::string> lines;
        for (const auto& [rel, arity] : rels)
            lines.push_back("cause(T) :- " + annotated(rel, "T", scheme1(arity), "d") + ".");
        // Same-relation pairs first (tids can collide there), then the
        // cross-relation pairs in relation order.
        for (const auto& [rel, arity] : rels)
            lines.push_back("cauCont(T,TC) :- " + annotated(rel, "T", scheme1(arity), "d") +
                            ", " + annotated(rel, "TC", scheme2(arity), "d") + ", T != TC.");
        for (std::size_t i = 0; i < rels.size(); ++i)
            for (std::size_t j = 0; j < rels.size(); ++j) {
                if (i == j) continue;
                lines.push_back("cauCont(T,TC) :- " +
                                annotated(rels[i].first, "T", scheme1(rels[i].second), "d") +
                                ", " +
                                annotated(rels[j].first, "TC", scheme2(rels[j].second), "d") +
                                ".");
            }
        append_block(out, lines);
    }

    if (opts.responsibility && !rels.empty()) {
        append_block(out, {
            "preCont(T,{TC}) :- cauCont(T,TC).",
            "preCont(T,#union(C,{TC})) :- cauCont(T,TC), preCont(T,C), not #member(TC,C).",
            "cont(T,C) :- preCont(T,C), not HoleIn(T,C).",
            "HoleIn(T,C) :- preCont(T,C), cauCont(T,TC), not #member(TC,C).",
            "tmpCont(T) :- cont(T,C), not #card(C,0).",
            "cont(T,{}) :- cause(T), not tmpCont(T).",
        });
        append_block(out, {
            "#maxint = " + std::to_string(maxint_for(db)) + ".",
            "preRho(T,N + 1) :- cause(T), #int(N), #count{TC: cauCont(T,TC)} = N.",
        });
    }

    if (opts.weak && !rels.empty()) {
        std::vector<std::string> lines;
        for (const auto& [rel, arity] : rels) lines.push_back(weak_line(rel, arity));
        append_block(out, lines);
    }
    return out;
}

namespace {

// Occurrence count of each variable in a constraint body.
std::map<std::string, int> body_var_counts(const DenialConstraint& dc) {
    std::map<std::string, int> counts;
    for (const Atom& a : dc.body)
        for (const Term& t : a.args)
            if (t.is_var()) ++counts[t.text];
    return counts;
}

} // namespace

std::string emit_attr_repair_program(const DatabaseInstance& db,
                                     const std::vector<DenialConstraint>& dcs) {
    auto rels = dc_relations(db, dcs);
    bool has_nulls = false;
    for (const auto& [name, rel] : db.relations())
        for (const Tuple& t : rel.tuples())
            for (const Value& v : t.values)
                if (v.is_null()) has_nulls = true;

    std::string out;
    if (db.size() > 0) append_block(out, {facts_line(db)});

    // Transition rules: base tuples and updated tuples circulate.
    std::vector<std::string> trans;
    for (const auto& [rel, arity] : rels) {
        std::vector<std::string> args{"T"};
        for (const std::string& v : scheme1(arity)) args.push_back(v);
        trans.push_back(annotated(rel, "T", scheme1(arity), "tr") + " :- " +
                        atom_text(rel, args) + ".");
        trans.push_back(annotated(rel, "T", scheme1(arity), "tr") + " :- " +
                        annotated(rel, "T", scheme1(arity), "u") + ".");
    }
    append_block(out, trans);

    // Update rules: for every constraint atom and join-variable
    // position, null that position unless some co-occurring atom
    // already resolved the violation.
    std::vector<std::string> updates;
    for (const DenialConstraint& dc : dcs) {
        auto counts = body_var_counts(dc);
        for (std::size_t i = 0; i < dc.body.size(); ++i) {
            const Atom& self = dc.body[i];
            // Tid variables: the updated atom gets T, the others T2,
            // T3, ... in body order.
            std::vector<std::string> tid_of(dc.body.size());
            tid_of[i] = "T";
            int next = 2;
            for (std::size_t j = 0; j < dc.body.size(); ++j)
                if (j != i) tid_of[j] = "T" + std::to_string(next++);

            for (std::size_t p = 0; p < self.args.size(); ++p) {
                const Term& t = self.args[p];
                if (!t.is_var() || counts[t.text] < 2) continue;
                const std::string& v = t.text;

                std::vector<std::string> head_args = term_texts(self);
                head_args[p] = "null";

                std::vector<std::string> body;
                body.push_back(annotated(self.pred, "T", term_texts(self), "tr"));
                for (std::size_t j = 0; j < dc.body.size(); ++j)
                    if (j != i)
                        body.push_back(
                            annotated(dc.body[j].pred, tid_of[j], term_texts(dc.body[j]), "tr"));
                body.push_back(v + " != null");
                for (std::size_t j = 0; j < dc.body.size(); ++j) {
                    if (j == i) continue;
                    const Atom& other = dc.body[j];
                    bool shares = false;
                    std::vector<std::string> other_args = term_texts(other);
                    for (std::size_t q = 0; q < other.args.size(); ++q)
                        if (other.args[q].is_var() && other.args[q].text == v) {
                            other_args[q] = "null";
                            shares = true;
                        }
                    if (shares)
                        body.push_back("not " +
                                       annotated(other.pred, tid_of[j], other_args, "u"));
                }
                updates.push_back(annotated(self.pred, "T", head_args, "u") + " :- " +
                                  join(body, ", ") + ".");
            }
        }
    }
    append_block(out, updates);

    // Final-update rules: an updated tuple is final once every position
    // that was actually changed shows its null.
    std::vector<std::string> fin;
    for (const auto& [rel, arity] : rels) {
        std::vector<std::string> vars = scheme1(arity);
        std::vector<std::string> base_args{"T"};
        for (const std::string& v : vars) base_args.push_back(v);
        std::string fu = annotated(rel, "T", vars, "fu") + " :- " +
                         annotated(rel, "T", vars, "u");
        for (std::size_t p = 0; p < arity; ++p) {
            std::vector<std::string> aux_args{"T"};
            for (const std::string& v : vars) aux_args.push_back(v);
            fu += ", not " + atom_text("aux" + rel + std::to_string(p + 1), aux_args);
        }
        fin.push_back(fu + ".");
        for (std::size_t p = 0; p < arity; ++p) {
            std::vector<std::string> nulled = vars;
            nulled[p] = "null";
            std::vector<std::string> aux_args{"T"};
            for (const std::string& v : vars) aux_args.push_back(v);
            fin.push_back(atom_text("aux" + rel + std::to_string(p + 1), aux_args) + " :- " +
                          atom_text(rel, base_args) + ", " + annotated(rel, "T", nulled, "u") +
                          ", " + vars[p] + " != null.");
        }
    }
    append_block(out, fin);

    // Stays rules: final updates survive; untouched tuples survive.
    std::vector<std::string> stays;
    for (const auto& [rel, arity] : rels) {
        std::vector<std::string> vars = scheme1(arity);
        std::vector<std::string> base_args{"T"};
        for (const std::string& v : vars) base_args.push_back(v);
        stays.push_back(annotated(rel, "T", vars, "s") + " :- " +
                        annotated(rel, "T", vars, "fu") + ".");
        stays.push_back(annotated(rel, "T", vars, "s") + " :- " + atom_text(rel, base_args) +
                        ", not " + atom_text("aux" + rel, {"T"}) + ".");
        stays.push_back(atom_text("aux" + rel, {"T"}) + " :- " +
                        annotated(rel, "T", vars, "u") + ".");
    }
    append_block(out, stays);

    // Cause collection: a nulled position names its original value.
    std::vector<std::string> causes;
    for (const auto& [rel, arity] : rels) {
        std::vector<std::string> vars = scheme1(arity);
        std::vector<std::string> base_args{"T"};
        for (const std::string& v : vars) base_args.push_back(v);
        for (std::size_t p = 0; p < arity; ++p) {
            std::vector<std::string> nulled;
            std::size_t fresh = arity;
            for (std::size_t q = 0; q < arity; ++q)
                nulled.push_back(q == p ? "null" : letter1(fresh++));
            std::string rule = "cause(T," + std::to_string(p + 1) + "," + vars[p] + ") :- " +
                               atom_text(rel, base_args) + ", " +
                               annotated(rel, "T", nulled, "s");
            if (has_nulls) rule += ", " + vars[p] + " != null";
            causes.push_back(rule + ".");
        }
    }
    append_block(out, causes);
    return out;
}

std::string emit_inc_measure_program(const DatabaseInstance& db,
                                     const std::vector<DenialConstraint>& dcs) {
    auto rels = dc_relations(db, dcs);
    RepairProgramOptions opts;
    opts.weak = true;
    std::string out = emit_repair_program(db, dcs, opts);

    std::vector<std::string> lines;
    for (const auto& [rel, arity] : rels)
        lines.push_back("Del(T) :- " + annotated(rel, "T", scheme1(arity), "d") + ".");
    append_block(out, lines);
    append_block(out, {
        "#maxint = " + std::to_string(maxint_for(db)) + ".",
        "NumDel(N) :- #int(N), #count{T: Del(T)} = N.",
    });

    // The minimum number of deletions is known at emission time; leave
    // it as a comment so consumers can check the solver's answer.
    try {
        std::size_t best = 0;
        auto cs = c_repairs(db, dcs);
        if (!cs.empty()) best = cs.front().deleted.size();
        append_block(out, {"% intended: NumDel(" + std::to_string(best) + ")"});
    } catch (const Error&) {
        // Beyond desk scale; emit the program without the hint.
    }
    return out;
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Feature variables: X, Y, Z for up to three features, X1..Xn beyond.
std::vector<std::string> feature_vars(std::size_t n) {
    std::vector<std::string> v;
    if (n <= 3) {
        static const char* base[] = {"X", "Y", "Z"};
        for (std::size_t i = 0; i < n; ++i) v.push_back(base[i]);
    } else {
        for (std::size_t i = 0; i < n; ++i) v.push_back("X" + std::to_string(i + 1));
    }
    return v;
}

struct TreePath {
    std::vector<std::pair<std::size_t, std::string>> equalities; // root-to-leaf
};

void positive_paths(const DecisionTree& tree, int node, TreePath& cur,
                    std::vector<TreePath>& out) {
    const auto& n = tree.nodes().at(static_cast<std::size_t>(node));
    if (n.feature < 0) {
        if (n.label == tree.positive_label()) out.push_back(cur);
        return;
    }
    for (const auto& [value, child] : n.branches) {
        cur.equalities.emplace_back(static_cast<std::size_t>(n.feature), value);
        positive_paths(tree, child, cur, out);
        cur.equalities.pop_back();
    }
}

} // namespace

std::string emit_cip(const FeatureSpace& fs, const DecisionTree& tree, const Entity& e,
                     const CipOptions& opts) {
    fs.validate_entity(e);
    const std::size_t n = fs.arity();
    if (n == 0) throw Error(kModule, "cannot emit a program over zero features");
    if (static_cast<int>(n) > opts.max_features)
        throw Error(kModule, "classifier has " + std::to_string(n) +
                                 " features, exceeding the configured cap of " +
                                 std::to_string(opts.max_features));
    const std::vector<std::string> vars = feature_vars(n);
    auto dom = [](std::size_t i) { return "dom" + std::to_string(i + 1); };
    auto primed = [&](std::size_t i) { return vars[i] + "p"; };
    auto ent = [&](const std::string& id, const std::vector<std::string>& vals,
                   const std::string& ann) {
        std::vector<std::string> args{id};
        args.insert(args.end(), vals.begin(), vals.end());
        args.push_back(ann);
        return atom_text("ent", args);
    };

    std::string out;

    // Facts: feature domains, then the input entity.
    std::vector<std::string> dom_facts;
    for (std::size_t i = 0; i < n; ++i)
        for (const std::string& v : fs.features()[i].domain)
            dom_facts.push_back(dom(i) + "(" + v + ").");
    std::vector<std::string> evals(e.begin(), e.end());
    append_block(out, {join(dom_facts, " "), ent(opts.entity_id, evals, "o") + "."});

    // Classifier rules: one per positive leaf, equalities leaf-to-root,
    // then domain atoms for the unconstrained features; plus the
    // closed-world rule for label 0.
    std::vector<TreePath> paths;
    TreePath cur;
    positive_paths(tree, tree.root(), cur, paths);
    std::vector<std::string> cls;
    const std::string head_vars = join(vars, ",");
    for (const TreePath& p : paths) {
        std::vector<std::string> body;
        std::set<std::size_t> bound;
        for (auto it = p.equalities.rbegin(); it != p.equalities.rend(); ++it) {
            body.push_back(vars[it->first] + " = " + it->second);
            bound.insert(it->first);
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!bound.count(i)) body.push_back(dom(i) + "(" + vars[i] + ")");
        cls.push_back("cls(" + head_vars + ",1) :- " + join(body, ", ") + ".");
    }
    {
        std::vector<std::string> body;
        for (std::size_t i = 0; i < n; ++i) body.push_back(dom(i) + "(" + vars[i] + ")");
        body.push_back("not cls(" + head_vars + ",1)");
        cls.push_back("cls(" + head_vars + ",0) :- " + join(body, ", ") + ".");
    }
    append_block(out, cls);

    // Transition rules.
    append_block(out, {
        ent("E", vars, "tr") + " :- " + ent("E", vars, "o") + ".",
        ent("E", vars, "tr") + " :- " + ent("E", vars, "do") + ".",
    });

    // The disjunctive intervention rule.
    {
        std::vector<std::string> head;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::string> vals = vars;
            vals[i] = primed(i);
            head.push_back(ent("E", vals, "do"));
        }
        std::vector<std::string> body{ent("E", vars, "tr"), "cls(" + head_vars + ",1)"};
        for (std::size_t i = 0; i < n; ++i) body.push_back(dom(i) + "(" + primed(i) + ")");
        for (std::size_t i = 0; i < n; ++i) body.push_back(vars[i] + " != " + primed(i));
        for (std::size_t i = 0; i < n; ++i)
            body.push_back("chosen" + std::to_string(i + 1) + "(" + head_vars + "," +
                           primed(i) + ")");
        append_block(out, {join(head, " v ") + " :- " + join(body, ", ") + "."});
    }

    // One chosen/diffchoice pair per feature.
    std::vector<std::string> choice;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string k = std::to_string(i + 1);
        choice.push_back("chosen" + k + "(" + head_vars + ",U) :- " + ent("E", vars, "tr") +
                         ", cls(" + head_vars + ",1), " + dom(i) + "(U), U != " + vars[i] +
                         ", not diffchoice" + k + "(" + head_vars + ",U).");
        choice.push_back("diffchoice" + k + "(" + head_vars + ",U) :- chosen" + k + "(" +
                         head_vars + ",Up), U != Up, " + dom(i) + "(U).");
    }
    append_block(out, choice);

    // Never return to the original entity.
    append_block(out, {":- " + ent("E", vars, "do") + ", " + ent("E", vars, "o") + "."});

    // Stop when the label flips.
    append_block(out,
                 {ent("E", vars, "s") + " :- " + ent("E", vars, "do") + ", cls(" + head_vars +
                  ",0)."});

    // Explanations: original values of the changed features.
    std::vector<std::string> prim;
    for (std::size_t i = 0; i < n; ++i) prim.push_back(primed(i));
    std::vector<std::string> expl;
    for (std::size_t i = 0; i < n; ++i)
        expl.push_back("expl(E," + lower(fs.features()[i].name) + "," + vars[i] + ") :- " +
                       ent("E", vars, "o") + ", " + ent("E", prim, "s") + ", " + vars[i] +
                       " != " + primed(i) + ".");
    append_block(out, expl);

    append_block(out, {
        "entAux(E) :- " + ent("E", vars, "s") + ".",
        ":- " + ent("E", vars, "o") + ", not entAux(E).",
    });

    append_block(out, {"invResp(E,M) :- #count{I: expl(E,I,_)} = M, #int(M), E = " +
                       opts.entity_id + "."});

    if (!opts.forbid.empty()) {
        std::vector<std::string> lines;
        for (const auto& assignment : opts.forbid) {
            std::vector<std::string> vals(n);
            std::vector<bool> set(n, false);
            for (const auto& [fname, value] : assignment) {
                const std::size_t i = fs.index_of(fname);
                if (fs.value_index(i, value) < 0)
                    throw Error(kModule, "value " + value + " is not in the domain of feature " +
                                             fname);
                vals[i] = value;
                set[i] = true;
            }
            std::size_t fresh = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (!set[i]) vals[i] = feature_vars(n)[fresh++];
            lines.push_back(":- " + ent("E", vals, "tr") + ".");
        }
        append_block(out, lines);
    }

    if (opts.weak) {
        std::vector<std::string> lines;
        for (std::size_t i = 0; i < n; ++i)
            lines.push_back(":~ " + ent("E", vars, "o") + ", " + ent("E", prim, "s") + ", " +
                            vars[i] + " != " + primed(i) + ".");
        append_block(out, lines);
    }
    return out;
}

} // namespace caudex
