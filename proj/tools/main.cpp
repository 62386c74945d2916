// caudex: score-based explanations for query answers and classifier
// outcomes, plus answer-set-program emission. One subcommand per
// construct; JSON reports on stdout; deterministic for a fixed
// configuration (sampling included, via the mandatory seed).

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "caudex/analysis.hpp"
#include "caudex/asp.hpp"
#include "caudex/causality.hpp"
#include "caudex/classifier.hpp"
#include "caudex/cls_scores.hpp"
#include "caudex/database.hpp"
#include "caudex/errors.hpp"
#include "caudex/eval.hpp"
#include "caudex/games.hpp"
#include "caudex/lineage.hpp"
#include "caudex/parser.hpp"
#include "caudex/rat.hpp"
#include "caudex/repairs.hpp"

using json = nlohmann::ordered_json;
using caudex::Rat;

namespace {

struct Options {
    std::string data;       // database directory
    std::string query;      // query file
    std::string dcs;        // denial-constraint file
    std::string ics;        // combined constraint file (DCs + INDs)
    std::string tree;       // classifier JSON
    std::string table;      // label-table CSV
    std::string entity;     // inline values or CSV path
    std::string sample;     // sample CSV for product/empirical
    std::string feature;
    std::string dist = "uniform";
    std::string semantics = "subset";
    std::string family;     // emit-asp program family
    std::string entity_id = "e";
    std::string out;        // output file (default stdout)
    std::string p = "1/2";  // tuple probability
    std::vector<std::string> forbid;
    std::int64_t tuple = 0;
    bool have_tuple = false;
    int max_contingency = -1; // <0: unlimited
    int max_distance = 2;
    int max_features = 8;
    bool decimal = false;
    bool sampled = false;
    bool support_only = false;
    bool exclude_original = false;
    bool attr = false;
    bool weak = false;
    bool causes = false;
    bool responsibility = false;
    double eps = 0.05;
    double delta = 0.05;
    std::uint64_t seed = 0;
    bool have_seed = false;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw caudex::Error("cli", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

caudex::DatabaseInstance load_data(const Options& o) {
    std::string dir = o.data;
    if (dir.empty()) {
        if (const char* env = std::getenv("CAUDEX_DATA")) dir = env;
    }
    if (dir.empty())
        throw caudex::Error("cli", "no database directory: pass --data or set CAUDEX_DATA");
    return caudex::load_database(dir);
}

caudex::UCQ load_query(const Options& o) {
    if (o.query.empty()) throw caudex::Error("cli", "this command needs --query");
    return caudex::parse(slurp(o.query)).single_query();
}

std::vector<caudex::DenialConstraint> load_dcs(const Options& o) {
    if (o.dcs.empty()) throw caudex::Error("cli", "this command needs --dcs");
    auto prog = caudex::parse(slurp(o.dcs));
    if (!prog.inds().empty())
        throw caudex::Error("cli", "--dcs accepts denial constraints only; use --ics for "
                                   "inclusion dependencies");
    return prog.dcs();
}

caudex::Constraints load_ics(const Options& o) {
    if (o.ics.empty()) throw caudex::Error("cli", "this command needs --ics");
    auto prog = caudex::parse(slurp(o.ics));
    return caudex::Constraints{prog.dcs(), prog.inds()};
}

caudex::ClassifierBundle load_clf(const Options& o) {
    if (o.tree.empty()) throw caudex::Error("cli", "this command needs --tree");
    if (!o.table.empty()) return caudex::load_table_classifier(o.tree, o.table);
    return caudex::load_classifier(o.tree);
}

caudex::Entity load_entity(const Options& o, const caudex::FeatureSpace& fs) {
    if (o.entity.empty()) throw caudex::Error("cli", "this command needs --entity");
    if (std::filesystem::exists(o.entity)) {
        auto es = caudex::load_entities(fs, o.entity);
        if (es.empty()) throw caudex::Error("cli", o.entity + " lists no entities");
        return es.front();
    }
    caudex::Entity e;
    std::string cur;
    for (char c : o.entity) {
        if (c == ',') {
            e.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    e.push_back(cur);
    fs.validate_entity(e);
    return e;
}

std::vector<caudex::Entity> load_sample(const Options& o, const caudex::FeatureSpace& fs) {
    if (o.sample.empty())
        throw caudex::Error("cli", "distribution '" + o.dist + "' needs --sample");
    return caudex::load_entities(fs, o.sample);
}

caudex::Distribution load_dist(const Options& o, const caudex::FeatureSpace& fs) {
    switch (caudex::dist_kind_from_string(o.dist)) {
        case caudex::DistKind::Uniform: return caudex::Distribution::uniform();
        case caudex::DistKind::Product:
            return caudex::Distribution::product(fs, load_sample(o, fs));
        case caudex::DistKind::Empirical:
            return caudex::Distribution::empirical(fs, load_sample(o, fs));
    }
    throw caudex::Error("cli", "unknown distribution " + o.dist);
}

// Feature lookup tolerant of case differences, so --feature humidity
// finds "Humidity".
std::string resolve_feature(const caudex::FeatureSpace& fs, const std::string& name) {
    if (name.empty()) throw caudex::Error("cli", "this command needs --feature");
    for (const auto& f : fs.features())
        if (f.name == name) return name;
    auto lower = [](std::string s) {
        for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    };
    std::string want = lower(name);
    std::optional<std::string> hit;
    for (const auto& f : fs.features()) {
        if (lower(f.name) == want) {
            if (hit) throw caudex::Error("cli", "feature name " + name + " is ambiguous");
            hit = f.name;
        }
    }
    if (!hit) throw caudex::Error("cli", "unknown feature " + name);
    return *hit;
}

caudex::RepairSemantics semantics_of(const Options& o) {
    if (o.semantics == "subset") return caudex::RepairSemantics::Subset;
    if (o.semantics == "cardinality") return caudex::RepairSemantics::Cardinality;
    throw caudex::Error("cli", "unknown semantics " + o.semantics +
                                   " (want subset or cardinality)");
}

std::optional<int> cap_of(const Options& o) {
    if (o.max_contingency < 0) return std::nullopt;
    return o.max_contingency;
}

std::string fmt(const Options& o, const Rat& r) {
    return o.decimal ? caudex::to_decimal_string(r) : caudex::to_string(r);
}

json tuple_json(const caudex::DatabaseInstance& db, caudex::TupleId tid) {
    auto loc = db.locate(tid);
    json j;
    j["tid"] = tid;
    j["relation"] = *loc.relation;
    json vals = json::array();
    for (const auto& v : loc.tuple->values) vals.push_back(v.to_string());
    j["values"] = vals;
    return j;
}

json cause_json(const Options& o, const caudex::DatabaseInstance& db,
                const caudex::CauseReport& r) {
    json j = tuple_json(db, r.tid);
    j["kind"] = caudex::to_string(r.kind);
    j["responsibility"] = fmt(o, r.responsibility);
    json gs = json::array();
    for (const auto& g : r.min_contingencies) gs.push_back(g);
    j["min_contingencies"] = gs;
    return j;
}

json attr_pos_json(const caudex::AttrPos& p) {
    return json{{"tid", p.tid}, {"pos", p.pos}};
}

json attr_cause_json(const Options& o, const caudex::AttrCauseReport& r) {
    json j;
    j["tid"] = r.pos.tid;
    j["pos"] = r.pos.pos;
    j["value"] = r.value;
    j["kind"] = caudex::to_string(r.kind);
    j["responsibility"] = fmt(o, r.responsibility);
    json gs = json::array();
    for (const auto& g : r.min_contingencies) {
        json one = json::array();
        for (const auto& p : g) one.push_back(attr_pos_json(p));
        gs.push_back(one);
    }
    j["min_contingencies"] = gs;
    return j;
}

caudex::TupleId need_tuple(const Options& o) {
    if (!o.have_tuple) throw caudex::Error("cli", "this command needs --tuple");
    return o.tuple;
}

void write_out(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw caudex::Error("cli", "cannot write " + o.out);
    f << text;
}

void emit_report(const Options& o, const json& j) { write_out(o, j.dump(2)); }

// ----------------------------------------------------------------
// Subcommand bodies.

int cmd_ingest_check(const Options& o) {
    auto db = load_data(o);
    json rels;
    for (const auto& [name, rel] : db.relations())
        rels[name] = json{{"arity", rel.arity()}, {"tuples", rel.tuples().size()}};
    json j;
    j["relations"] = rels;
    j["tuples"] = db.size();
    if (db.size() > 0) j["max_tid"] = db.max_tid();
    if (!o.query.empty()) {
        auto prog = caudex::parse(slurp(o.query));
        j["queries"] = prog.queries().size();
    }
    if (!o.dcs.empty()) {
        auto dcs = load_dcs(o);
        j["dcs"] = dcs.size();
        bool ok = true;
        for (const auto& dc : dcs) ok = ok && caudex::satisfies_dc(db, dc);
        j["consistent"] = ok;
    }
    if (!o.ics.empty()) {
        auto ics = load_ics(o);
        j["dcs"] = ics.dcs.size();
        j["inds"] = ics.inds.size();
        j["consistent"] = caudex::satisfies_all(db, ics);
    }
    emit_report(o, j);
    return 0;
}

int cmd_query(const Options& o) {
    auto db = load_data(o);
    auto q = load_query(o);
    auto answers = caudex::eval_query(db, q);
    json j;
    j["query"] = caudex::print(q);
    if (q.is_boolean()) j["true"] = !answers.empty();
    json arr = json::array();
    for (const auto& row : answers) {
        json one = json::array();
        for (const auto& v : row) one.push_back(v.to_string());
        arr.push_back(one);
    }
    j["answers"] = arr;
    emit_report(o, j);
    return 0;
}

int cmd_causes(const Options& o) {
    auto db = load_data(o);
    auto q = load_query(o);
    json j;
    if (o.have_tuple) {
        j = cause_json(o, db, caudex::cause_report(db, q, o.tuple));
    } else {
        json arr = json::array();
        for (const auto& r : caudex::actual_causes(db, q)) arr.push_back(cause_json(o, db, r));
        j["causes"] = arr;
    }
    emit_report(o, j);
    return 0;
}

int cmd_resp(const Options& o) {
    auto db = load_data(o);
    auto q = load_query(o);
    auto r = caudex::cause_report(db, q, need_tuple(o));
    json j;
    j["tid"] = r.tid;
    j["kind"] = caudex::to_string(r.kind);
    j["responsibility"] = fmt(o, r.responsibility);
    emit_report(o, j);
    return 0;
}

int cmd_attr_causes(const Options& o) {
    auto db = load_data(o);
    auto q = load_query(o);
    json arr = json::array();
    for (const auto& r : caudex::attr_causes(db, q)) arr.push_back(attr_cause_json(o, r));
    emit_report(o, json{{"attr_causes", arr}});
    return 0;
}

int cmd_causes_ics(const Options& o) {
    auto db = load_data(o);
    auto q = load_query(o);
    auto ics = load_ics(o);
    json arr = json::array();
    for (const auto& r : caudex::causes_under_ics(db, q, ics)) arr.push_back(cause_json(o, db, r));
    emit_report(o, json{{"causes", arr}});
    return 0;
}

int cmd_causal_effect(const Options& o) {
    auto db = load_data(o);
    auto q = load_query(o);
    auto tid = need_tuple(o);
    Rat p = caudex::rat_from_string(o.p);
    json j;
    j["tid"] = tid;
    j["p"] = caudex::to_string(p);
    j["causal_effect"] = fmt(o, caudex::causal_effect(db, q, tid, p));
    emit_report(o, j);
    return 0;
}

int cmd_shapley(const Options& o) {
    auto db = load_data(o);
    auto q = load_query(o);
    auto tid = need_tuple(o);
    json j;
    j["tid"] = tid;
    if (o.sampled) {
        if (!o.have_seed) throw caudex::Error("cli", "sampled mode needs --seed");
        auto est = caudex::shapley_sampled(db, q, tid, o.eps, o.delta, o.seed);
        j["estimate"] = est.estimate;
        j["samples"] = est.samples;
        j["seed"] = est.seed;
        j["eps"] = o.eps;
        j["delta"] = o.delta;
    } else {
        j["shapley"] = fmt(o, caudex::shapley(db, q, tid, o.support_only));
    }
    emit_report(o, j);
    return 0;
}

int cmd_banzhaf(const Options& o) {
    auto db = load_data(o);
    auto q = load_query(o);
    auto tid = need_tuple(o);
    json j;
    j["tid"] = tid;
    j["banzhaf"] = fmt(o, caudex::banzhaf(db, q, tid, o.support_only));
    emit_report(o, j);
    return 0;
}

int cmd_inc_degree(const Options& o) {
    auto db = load_data(o);
    auto dcs = load_dcs(o);
    emit_report(o, json{{"inc_degree", fmt(o, caudex::inc_degree(db, dcs))}});
    return 0;
}

int cmd_repairs(const Options& o) {
    auto db = load_data(o);
    auto dcs = load_dcs(o);
    json j;
    j["semantics"] = o.semantics;
    if (o.attr) {
        json arr = json::array();
        for (const auto& iv : caudex::attr_repairs(db, dcs, semantics_of(o))) {
            json one = json::array();
            for (const auto& p : iv) one.push_back(attr_pos_json(p));
            arr.push_back(one);
        }
        j["interventions"] = arr;
    } else {
        json arr = json::array();
        for (const auto& r : caudex::repairs(db, dcs, semantics_of(o)))
            arr.push_back(json{{"kept", r.kept}, {"deleted", r.deleted}});
        j["repairs"] = arr;
    }
    emit_report(o, j);
    return 0;
}

int cmd_xresp(const Options& o) {
    auto b = load_clf(o);
    auto e = load_entity(o, b.space);
    auto feature = resolve_feature(b.space, o.feature);
    json j;
    j["feature"] = feature;
    j["label"] = b.clf.classify(b.space, e);
    j["x_resp"] = fmt(o, caudex::x_resp(b.clf, b.space, e, feature, cap_of(o)));
    emit_report(o, j);
    return 0;
}

int cmd_counter(const Options& o) {
    auto b = load_clf(o);
    auto e = load_entity(o, b.space);
    auto feature = resolve_feature(b.space, o.feature);
    auto dist = load_dist(o, b.space);
    json j;
    j["feature"] = feature;
    j["dist"] = o.dist;
    j["counter"] = fmt(o, caudex::counter_score(b.clf, b.space, e, feature, dist));
    emit_report(o, j);
    return 0;
}

int cmd_resp_score(const Options& o) {
    auto b = load_clf(o);
    auto e = load_entity(o, b.space);
    auto feature = resolve_feature(b.space, o.feature);
    auto dist = load_dist(o, b.space);
    caudex::RespOptions ro;
    ro.exclude_original = o.exclude_original;
    ro.max_contingency = cap_of(o);
    auto r = caudex::resp_score(b.clf, b.space, e, feature, dist, ro);
    json j;
    j["feature"] = feature;
    j["dist"] = o.dist;
    j["resp"] = fmt(o, r.score);
    json gs = json::array();
    for (const auto& [f, v] : r.contingency) gs.push_back(json{{"feature", f}, {"value", v}});
    j["contingency"] = gs;
    emit_report(o, j);
    return 0;
}

int cmd_shap(const Options& o) {
    auto b = load_clf(o);
    auto e = load_entity(o, b.space);
    auto feature = resolve_feature(b.space, o.feature);
    auto dist = load_dist(o, b.space);
    json j;
    j["feature"] = feature;
    j["dist"] = o.dist;
    j["shap"] = fmt(o, caudex::shap_score(b.clf, b.space, e, feature, dist));
    emit_report(o, j);
    return 0;
}

std::vector<std::vector<std::pair<std::string, std::string>>> parse_forbid(
    const Options& o, const caudex::FeatureSpace& fs) {
    std::vector<std::vector<std::pair<std::string, std::string>>> out;
    for (const std::string& spec : o.forbid) {
        std::vector<std::pair<std::string, std::string>> conj;
        std::string item;
        std::istringstream in(spec);
        while (std::getline(in, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw caudex::Error("cli", "--forbid entries look like Feature=value[,..], got '" +
                                               item + "'");
            std::string f = resolve_feature(fs, item.substr(0, eq));
            conj.emplace_back(f, item.substr(eq + 1));
        }
        if (conj.empty())
            throw caudex::Error("cli", "--forbid needs at least one Feature=value pair");
        out.push_back(std::move(conj));
    }
    return out;
}

int cmd_emit_asp(const Options& o) {
    std::string text;
    if (o.family == "repair") {
        auto db = load_data(o);
        auto dcs = load_dcs(o);
        caudex::RepairProgramOptions ro;
        ro.weak = o.weak;
        ro.causes = o.causes;
        ro.responsibility = o.responsibility;
        text = caudex::emit_repair_program(db, dcs, ro);
    } else if (o.family == "attr-repair") {
        auto db = load_data(o);
        auto dcs = load_dcs(o);
        text = caudex::emit_attr_repair_program(db, dcs);
    } else if (o.family == "inc-measure") {
        auto db = load_data(o);
        auto dcs = load_dcs(o);
        text = caudex::emit_inc_measure_program(db, dcs);
    } else if (o.family == "cip") {
        auto b = load_clf(o);
        if (!b.clf.tree())
            throw caudex::Error("cli", "cip emission needs a decision-tree classifier");
        auto e = load_entity(o, b.space);
        caudex::CipOptions co;
        co.weak = o.weak;
        co.entity_id = o.entity_id;
        co.max_features = o.max_features;
        co.forbid = parse_forbid(o, b.space);
        text = caudex::emit_cip(b.space, *b.clf.tree(), e, co);
    } else {
        throw caudex::Error("cli", "unknown family " + o.family +
                                       " (want repair, attr-repair, inc-measure, or cip)");
    }
    write_out(o, text);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"score-based explanations for query answers and classifier outcomes"};
    app.require_subcommand(1);

    Options o;
    int (*run)(const Options&) = nullptr;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--out", o.out, "write the report to this file instead of stdout");
        c->add_flag("--decimal", o.decimal, "render scores as decimals instead of p/q");
    };
    auto add_data = [&](CLI::App* c) {
        c->add_option("--data", o.data, "database directory (default: $CAUDEX_DATA)");
    };
    auto add_query = [&](CLI::App* c) {
        c->add_option("--query", o.query, "query file (single query)");
    };
    auto add_tuple = [&](CLI::App* c, bool required) {
        auto* opt = c->add_option("--tuple", o.tuple, "tuple id of interest");
        if (required) opt->required();
        opt->each([&](const std::string&) { o.have_tuple = true; });
    };
    auto add_clf = [&](CLI::App* c) {
        c->add_option("--tree", o.tree, "classifier JSON file")->required();
        c->add_option("--table", o.table, "label-table CSV (replaces the JSON's tree)");
        c->add_option("--entity", o.entity, "entity: CSV file or comma-separated values")
            ->required();
    };
    auto add_dist = [&](CLI::App* c) {
        c->add_option("--dist", o.dist, "distribution: uniform, product, or empirical");
        c->add_option("--sample", o.sample, "sample CSV for product/empirical");
    };

    {
        auto* c = app.add_subcommand("ingest-check", "load a database and report its shape");
        add_data(c);
        add_query(c);
        c->add_option("--dcs", o.dcs, "denial-constraint file");
        c->add_option("--ics", o.ics, "constraint file (DCs and inclusion dependencies)");
        add_common(c);
        c->callback([&] { run = cmd_ingest_check; });
    }
    {
        auto* c = app.add_subcommand("query", "evaluate a query");
        add_data(c);
        add_query(c);
        add_common(c);
        c->callback([&] { run = cmd_query; });
    }
    {
        auto* c = app.add_subcommand("causes", "actual causes of a true Boolean query");
        add_data(c);
        add_query(c);
        add_tuple(c, false);
        add_common(c);
        c->callback([&] { run = cmd_causes; });
    }
    {
        auto* c = app.add_subcommand("resp", "responsibility of one tuple");
        add_data(c);
        add_query(c);
        add_tuple(c, true);
        add_common(c);
        c->callback([&] { run = cmd_resp; });
    }
    {
        auto* c = app.add_subcommand("attr-causes", "attribute-level causes");
        add_data(c);
        add_query(c);
        add_common(c);
        c->callback([&] { run = cmd_attr_causes; });
    }
    {
        auto* c = app.add_subcommand("causes-ics", "causes under hard integrity constraints");
        add_data(c);
        add_query(c);
        c->add_option("--ics", o.ics, "constraint file (DCs and inclusion dependencies)")
            ->required();
        add_common(c);
        c->callback([&] { run = cmd_causes_ics; });
    }
    {
        auto* c = app.add_subcommand("causal-effect",
                                     "causal effect of a tuple under independent probability p");
        add_data(c);
        add_query(c);
        add_tuple(c, true);
        c->add_option("--p", o.p, "tuple probability (rational, default 1/2)");
        add_common(c);
        c->callback([&] { run = cmd_causal_effect; });
    }
    {
        auto* c = app.add_subcommand("shapley", "Shapley value of a tuple (exact or sampled)");
        add_data(c);
        add_query(c);
        add_tuple(c, true);
        c->add_flag("--sampled", o.sampled, "Monte-Carlo estimate instead of exact");
        c->add_flag("--support-only", o.support_only, "restrict players to witness tuples");
        c->add_option("--eps", o.eps, "additive error bound (sampled)");
        c->add_option("--delta", o.delta, "failure probability (sampled)");
        c->add_option("--seed", o.seed, "RNG seed (required with --sampled)")
            ->each([&](const std::string&) { o.have_seed = true; });
        add_common(c);
        c->callback([&] { run = cmd_shapley; });
    }
    {
        auto* c = app.add_subcommand("banzhaf", "Banzhaf power index of a tuple");
        add_data(c);
        add_query(c);
        add_tuple(c, true);
        c->add_flag("--support-only", o.support_only, "restrict players to witness tuples");
        add_common(c);
        c->callback([&] { run = cmd_banzhaf; });
    }
    {
        auto* c = app.add_subcommand("inc-degree", "inconsistency degree under denial constraints");
        add_data(c);
        c->add_option("--dcs", o.dcs, "denial-constraint file")->required();
        add_common(c);
        c->callback([&] { run = cmd_inc_degree; });
    }
    {
        auto* c = app.add_subcommand("repairs", "subset/cardinality repairs, tuple or attribute level");
        add_data(c);
        c->add_option("--dcs", o.dcs, "denial-constraint file")->required();
        c->add_option("--semantics", o.semantics, "subset (default) or cardinality");
        c->add_flag("--attr", o.attr, "attribute-level repairs (null interventions)");
        add_common(c);
        c->callback([&] { run = cmd_repairs; });
    }
    {
        auto* c = app.add_subcommand("xresp", "x-Resp score of a feature");
        add_clf(c);
        c->add_option("--feature", o.feature, "feature of interest")->required();
        c->add_option("--max-contingency", o.max_contingency, "cap on contingency size");
        add_common(c);
        c->callback([&] { run = cmd_xresp; });
    }
    {
        auto* c = app.add_subcommand("counter", "Counter score of a feature");
        add_clf(c);
        c->add_option("--feature", o.feature, "feature of interest")->required();
        add_dist(c);
        add_common(c);
        c->callback([&] { run = cmd_counter; });
    }
    {
        auto* c = app.add_subcommand("resp-score", "generalized Resp score of a feature");
        add_clf(c);
        c->add_option("--feature", o.feature, "feature of interest")->required();
        add_dist(c);
        c->add_flag("--exclude-original", o.exclude_original,
                    "resample without the entity's own value");
        c->add_option("--max-contingency", o.max_contingency, "cap on contingency size");
        add_common(c);
        c->callback([&] { run = cmd_resp_score; });
    }
    {
        auto* c = app.add_subcommand("shap", "Shap score of a feature");
        add_clf(c);
        c->add_option("--feature", o.feature, "feature of interest")->required();
        add_dist(c);
        add_common(c);
        c->callback([&] { run = cmd_shap; });
    }
    {
        auto* c = app.add_subcommand("emit-asp", "emit an answer-set program as text");
        c->add_option("--family", o.family,
                      "program family: repair, attr-repair, inc-measure, or cip")
            ->required();
        add_data(c);
        c->add_option("--dcs", o.dcs, "denial-constraint file (repair families)");
        c->add_option("--tree", o.tree, "classifier JSON (cip)");
        c->add_option("--entity", o.entity, "entity under explanation (cip)");
        c->add_flag("--weak", o.weak, "add weak constraints (minimum-change models)");
        c->add_flag("--causes", o.causes, "add cause-collection rules (repair family)");
        c->add_flag("--responsibility", o.responsibility,
                    "add contingency/pre-responsibility rules (repair family)");
        c->add_option("--forbid", o.forbid,
                      "cip only: forbidden partial assignment Feature=value[,Feature=value..]; "
                      "repeatable");
        c->add_option("--entity-id", o.entity_id, "cip entity constant (default e)");
        c->add_option("--max-features", o.max_features, "cip feature cap (default 8)");
        add_common(c);
        c->callback([&] { run = cmd_emit_asp; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return run ? run(o) : 2;
    } catch (const caudex::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
