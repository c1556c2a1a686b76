#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "polarsrg/construct.hpp"
#include "polarsrg/setfile.hpp"
#include "polarsrg/verify.hpp"

using nlohmann::json;
using namespace polarsrg;

namespace {

struct CommonArgs {
    std::string family;
    int q = 0;
    int r = 0;
    int eps = +1;
    bool split = false;
    int q3_class = 1;
    bool no_caps = false;
    long long max_vertices = 10000;
};

void add_graph_flags(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--family", a.family, "no-perp | no-even3 | no-even2 | no-odd | nu")->required();
    cmd->add_option("--q", a.q, "field size")->required();
    cmd->add_option("--r", a.r, "rank parameter")->required();
    cmd->add_option("--eps", a.eps, "+1 or -1 (ignored for nu)");
    cmd->add_flag("--model-split", a.split, "use the split coordinate model");
    cmd->add_option("--q3-class", a.q3_class, "vertex class (Q value) for no-even3");
    cmd->add_flag("--no-caps", a.no_caps, "ignore the parameter caps");
    cmd->add_option("--max-vertices", a.max_vertices, "vertex count guard");
}

GraphSpec to_spec(const CommonArgs& a) {
    auto fam = family_from_name(a.family);
    if (!fam) throw UnsupportedParameters("unknown family: " + a.family);
    GraphSpec spec;
    spec.family = *fam;
    spec.q = a.q;
    spec.r = a.r;
    spec.eps = a.eps;
    spec.model = a.split ? Model::split : Model::canonical;
    spec.q3_class = a.q3_class;
    return spec;
}

BuildOptions to_opts(const CommonArgs& a) {
    BuildOptions opts;
    opts.ignore_caps = a.no_caps || std::getenv("POLARSRG_NO_CAPS") != nullptr;
    opts.max_vertices = a.max_vertices;
    return opts;
}

json spec_json(const GraphSpec& s) {
    json j;
    j["family"] = family_name(s.family);
    j["q"] = s.q;
    j["r"] = s.r;
    if (s.family != Family::NU) j["eps"] = s.eps;
    j["model"] = s.model == Model::split ? "split" : "canonical";
    if (s.family == Family::NO_even3) j["q3_class"] = s.q3_class;
    return j;
}

json report_json(const Graph& g, const VertexSet& y, const IntriguingReport& rep, bool eig_ok) {
    json j;
    j["graph"] = spec_json(g.spec);
    j["set"] = {{"size", y.size()}, {"provenance", y.provenance}};
    json measured;
    if (rep.h1) measured["h1"] = *rep.h1;
    if (rep.h2) measured["h2"] = *rep.h2;
    j["measured"] = measured;
    j["type"] = report_type_name(rep.type);
    if (rep.matches_expected) j["matches_expected"] = *rep.matches_expected;
    j["eigenvector_ok"] = eig_ok;
    j["counting_identity_ok"] = rep.counting_identity_ok;
    if (rep.witness)
        j["witness"] = {{"vertex", rep.witness->vertex},
                        {"count", rep.witness->count},
                        {"expected_count", rep.witness->expected_count}};
    return j;
}

void emit(const json& j, const std::string& format) {
    if (format == "text") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << j.dump() << "\n";
    }
}

// Verification of one produced set: constant counts, table match when an
// expectation is attached, eigenvector identity, counting identity.
bool run_set_check(const Graph& g, const VertexSet& y, IntriguingReport& rep, bool& eig_ok) {
    rep = check_intriguing(g, y);
    eig_ok = rep.is_intriguing ? eigenvector_check(g, y, rep) : false;
    bool ok = rep.is_intriguing && eig_ok && rep.counting_identity_ok;
    if (rep.matches_expected) ok = ok && *rep.matches_expected;
    return ok;
}

int cmd_build(const CommonArgs& a, const std::string& format, const std::string& out_path) {
    Graph g = build_graph(to_spec(a), to_opts(a));
    SrgParams expected = expected_params(g.spec);
    SrgParams measured = measure_params(g);
    bool ok = measured == expected;
    if (format == "dot") {
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            f << to_dot(g);
        } else {
            std::cout << to_dot(g);
        }
        return ok ? 0 : 1;
    }
    json j = spec_json(g.spec);
    j["v"] = measured.v;
    j["k"] = measured.k;
    j["lambda"] = measured.lambda;
    j["mu"] = measured.mu;
    j["e_plus"] = measured.e_plus;
    j["e_minus"] = measured.e_minus;
    j["matches_expected"] = ok;
    emit(j, format);
    return ok ? 0 : 1;
}

int cmd_construct(const CommonArgs& a, const std::string& method, int t, int index, const std::string& y_text,
                  int y_index, const std::string& out_path, const std::string& format) {
    GraphSpec spec = to_spec(a);
    if (method == "II" && spec.family != Family::NU) spec.model = Model::split;
    Graph g = build_graph(spec, to_opts(a));

    VertexSet y{};
    if (method == "I") {
        y = construction_I(g, t);
    } else if (method == "II") {
        auto sets = orbit_union_sets(g);
        if (index < 0 || index >= static_cast<int>(sets.size()))
            throw UnsupportedParameters("--index out of range; " + std::to_string(sets.size()) + " sets exist");
        y = sets[index];
    } else if (method == "III") {
        Vec point;
        if (!y_text.empty()) {
            std::istringstream fake("# graph: x\n" + y_text + "\n");
            std::string drop;
            std::getline(fake, drop);
            std::string line;
            std::getline(fake, line);
            SetFile sf;
            std::istringstream body("# graph: " + family_name(spec.family) + " q=" + std::to_string(spec.q) +
                                    " r=" + std::to_string(spec.r) + " eps=" + (spec.eps > 0 ? "+1" : "-1") + "\n" +
                                    line + "\n");
            sf = load_set_file(body);
            const Field& F = *g.field;
            for (const auto& coeffs : sf.points.at(0)) point.push_back(F.from_coeffs(coeffs));
            point = normalize_point(F, point);
        } else {
            auto cands = construction_III_candidates(g);
            if (y_index < 0 || y_index >= static_cast<int>(cands.size()))
                throw UnsupportedParameters("--y-index out of range; " + std::to_string(cands.size()) +
                                            " candidates exist");
            point = cands[y_index];
        }
        y = construction_III(g, point);
    } else {
        throw UnsupportedParameters("--method must be I, II, or III");
    }

    if (!out_path.empty()) {
        std::ofstream f(out_path);
        save_set_file(f, g, y);
    }
    IntriguingReport rep;
    bool eig_ok = false;
    bool ok = run_set_check(g, y, rep, eig_ok);
    emit(report_json(g, y, rep, eig_ok), format);
    return ok ? 0 : 1;
}

int cmd_verify(const std::string& set_path, const CommonArgs& a, const std::string& format) {
    std::ifstream f(set_path);
    if (!f) throw SetFileError("cannot open " + set_path);
    SetFile sf = load_set_file(f);
    BuildOptions opts = to_opts(a);
    Graph g = build_graph(sf.spec, opts);
    VertexSet y = resolve_set(sf, g);
    IntriguingReport rep;
    bool eig_ok = false;
    bool ok = run_set_check(g, y, rep, eig_ok);
    emit(report_json(g, y, rep, eig_ok), format);
    return ok ? 0 : 1;
}

struct GraphCache {
    std::vector<std::pair<GraphSpec, Graph>> built;
    BuildOptions opts;

    const Graph& get(const GraphSpec& spec) {
        for (auto& [s, g] : built)
            if (s == spec) return g;
        built.emplace_back(spec, build_graph(spec, opts));
        return built.back().second;
    }
};

std::vector<GraphSpec> default_grid(Family f) {
    std::vector<GraphSpec> out;
    auto push = [&](int q, int r) {
        for (int eps : {+1, -1}) out.push_back({f, q, r, eps});
    };
    switch (f) {
        case Family::NO_perp:
            for (int q : {3, 5})
                for (int r : {2, 3}) push(q, r);
            break;
        case Family::NO_even3:
            for (int r : {2, 3}) push(3, r);
            break;
        case Family::NO_even2:
            for (int r : {2, 3, 4}) push(2, r);
            break;
        case Family::NO_odd:
            for (int q : {3, 5, 7}) push(q, 2);
            for (int q : {3, 5}) push(q, 3);
            break;
        case Family::NU:
            out.push_back({Family::NU, 2, 3});
            break;
    }
    return out;
}

int cmd_tables(const std::string& format) {
    GraphCache cache;
    int failures = 0;
    json rows = json::array();

    auto record = [&](const Graph& g, const char* table, const std::string& what, const VertexSet& y) {
        IntriguingReport rep;
        bool eig_ok = false;
        bool ok = run_set_check(g, y, rep, eig_ok);
        bool vacuous = y.expected && y.expected->size == 0 && y.size() == 0;
        if (!ok) ++failures;
        std::ostringstream line;
        line << (ok ? "PASS" : "FAIL") << " " << table << " " << g.spec.name() << " " << what;
        if (vacuous) {
            line << " (vacuous: empty as the counting identity predicts)";
        } else if (rep.h1) {
            line << " h1=" << *rep.h1 << " h2=" << *rep.h2 << " type=" << report_type_name(rep.type);
        }
        if (format == "json") {
            json j;
            j["ok"] = ok;
            j["table"] = table;
            j["graph"] = spec_json(g.spec);
            j["what"] = what;
            if (rep.h1) j["h1"] = *rep.h1;
            if (rep.h2) j["h2"] = *rep.h2;
            j["type"] = report_type_name(rep.type);
            rows.push_back(j);
        } else {
            std::cout << line.str() << "\n";
        }
    };

    // Perp sections, complements, chain differences.
    for (Family f : {Family::NO_perp, Family::NO_even3, Family::NO_even2, Family::NO_odd}) {
        for (GraphSpec spec : default_grid(f)) {
            const Graph& g = cache.get(spec);
            auto chain = singular_chain(g);
            std::vector<VertexSet> sections;
            for (int t = 1; t <= static_cast<int>(chain.size()); ++t) {
                VertexSet y = construction_I(g, t);
                record(g, "perp-section", "t=" + std::to_string(t), y);
                record(g, "complement", "t=" + std::to_string(t), complement_set(g, y));
                sections.push_back(std::move(y));
            }
            for (int t = 1; t + 1 <= static_cast<int>(sections.size()); ++t)
                record(g, "chain-difference", "t=" + std::to_string(t),
                       difference_set(g, sections[t - 1], sections[t]));
        }
    }

    // Group-orbit sets on the split models (canonical for NU).
    for (Family f : {Family::NO_perp, Family::NO_even3, Family::NO_even2, Family::NO_odd, Family::NU}) {
        for (GraphSpec spec : default_grid(f)) {
            if ((f == Family::NO_even3 || f == Family::NO_even2) && spec.eps != 1) continue;
            if (f != Family::NU) spec.model = Model::split;
            const Graph& g = cache.get(spec);
            auto sets = orbit_union_sets(g);
            for (size_t i = 0; i < sets.size(); ++i)
                record(g, "group-orbit", sets[i].provenance, sets[i]);
        }
    }

    // Nonsingular-point sets.
    for (Family f : {Family::NO_perp, Family::NO_even3}) {
        for (GraphSpec spec : default_grid(f)) {
            if (f == Family::NO_even3 && spec.eps != 1) continue;
            const Graph& g = cache.get(spec);
            auto cands = construction_III_candidates(g);
            record(g, "point-class", "y-index=0", construction_III(g, cands.front()));
        }
    }

    if (format == "json") {
        json j;
        j["rows"] = rows;
        j["failures"] = failures;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILURES") << "\n";
    }
    return failures == 0 ? 0 : 1;
}

int cmd_lemmas(std::uint64_t seed, const std::string& format) {
    struct Row {
        std::string name;
        LemmaReport rep;
    };
    std::vector<Row> rows;
    rows.push_back({"A-eq-B q=2 r=3", lemma_A_eq_B(2, 3, 5, seed)});
    rows.push_back({"nonvanishing q=2", lemma_nonvanishing(2)});
    rows.push_back({"nonvanishing q=4", lemma_nonvanishing(4)});
    rows.push_back({"K-closure q=3 r=2", lemma_K_closure(3, 2)});
    rows.push_back({"K-closure q=5 r=2", lemma_K_closure(5, 2)});
    rows.push_back({"K-closure q=7 r=2", lemma_K_closure(7, 2)});
    rows.push_back({"L-closure q=2 r=2", lemma_L_closure(2, 2)});
    rows.push_back({"L-closure q=2 r=3", lemma_L_closure(2, 3)});
    rows.push_back({"L-closure q=3 r=2", lemma_L_closure(3, 2)});
    rows.push_back({"L-closure q=3 r=3", lemma_L_closure(3, 3)});
    rows.push_back({"G-closure q=2 r=3", lemma_G_closure(2, 3)});
    rows.push_back({"T-translation q=5 r=2", t_translation_check(5, 2)});

    int failures = 0;
    json out = json::array();
    for (const Row& row : rows) {
        if (!row.rep.ok) ++failures;
        if (format == "json") {
            out.push_back({{"name", row.name}, {"ok", row.rep.ok}, {"detail", row.rep.detail}});
        } else {
            std::cout << (row.rep.ok ? "PASS " : "FAIL ") << row.name << ": " << row.rep.detail << "\n";
        }
    }
    if (format == "json") {
        json j;
        j["seed"] = seed;
        j["lemmas"] = out;
        j["failures"] = failures;
        std::cout << j.dump() << "\n";
    }
    return failures == 0 ? 0 : 1;
}

int cmd_scan(const CommonArgs& a, long long max_masks, const std::string& format) {
    GraphSpec spec = to_spec(a);
    if (spec.family != Family::NU) spec.model = Model::split;
    Graph g = build_graph(spec, to_opts(a));
    auto orbits = group_orbits(g, group_for(spec));
    auto hits = orbit_union_scan(g, orbits, max_masks);
    json out = json::array();
    for (const auto& h : hits) {
        if (format == "json") {
            out.push_back({{"mask", h.mask},
                           {"orbits", h.orbit_ids},
                           {"size", h.report.set_size},
                           {"h1", *h.report.h1},
                           {"h2", *h.report.h2},
                           {"type", report_type_name(h.report.type)}});
        } else {
            std::cout << "mask=" << h.mask << " orbits=" << h.orbit_ids.size() << " size=" << h.report.set_size
                      << " h1=" << *h.report.h1 << " h2=" << *h.report.h2 << " "
                      << report_type_name(h.report.type) << "\n";
        }
    }
    if (format == "json") {
        json j;
        j["graph"] = spec_json(spec);
        j["orbit_count"] = orbits.size();
        j["intriguing_unions"] = out;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << hits.size() << " intriguing unions among the scanned masks\n";
    }
    return 0;
}

int cmd_fields_list(const std::string& format) {
    json out = json::array();
    for (const auto& e : Field::default_moduli()) {
        const Field& F = Field::get(e.p, e.n);
        json j;
        j["p"] = e.p;
        j["n"] = e.n;
        j["order"] = F.order();
        j["modulus"] = e.modulus;
        j["primitive"] = F.coeffs(F.primitive());
        if (format == "json") {
            out.push_back(j);
        } else {
            std::cout << "GF(" << F.order() << ") = GF(" << e.p << "^" << e.n << ")  modulus=[";
            for (size_t i = 0; i < e.modulus.size(); ++i)
                std::cout << (i ? "," : "") << e.modulus[i];
            std::cout << "]  primitive=" << F.to_string(F.primitive()) << "\n";
        }
    }
    if (format == "json") std::cout << out.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"strongly regular graphs on nonisotropic points and their intriguing sets"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "json | text | dot (dot: build only)")->capture_default_str();

    CommonArgs build_args, cons_args, scan_args, verify_args;
    std::string out_path, set_path, method = "I", y_text;
    int t = 1, index = 0, y_index = 0;
    long long max_masks = -1;
    std::uint64_t seed = 20240808;

    CLI::App* build = app.add_subcommand("build", "build a graph and check its parameters");
    add_graph_flags(build, build_args);
    build->add_option("--out", out_path, "write DOT here instead of stdout");

    CLI::App* cons = app.add_subcommand("construct", "construct an intriguing set and verify it");
    add_graph_flags(cons, cons_args);
    cons->add_option("--method", method, "I | II | III")->required();
    cons->add_option("--t", t, "chain depth for method I");
    cons->add_option("--index", index, "which designated set for method II");
    cons->add_option("--y", y_text, "explicit point for method III, e.g. ([1],[0],[2],[0],[0])");
    cons->add_option("--y-index", y_index, "candidate index for method III");
    cons->add_option("--out", out_path, "write the vertex-set file here");

    CLI::App* verify = app.add_subcommand("verify", "re-check a vertex-set file");
    verify->add_option("--set", set_path, "vertex-set file")->required();
    verify->add_flag("--no-caps", verify_args.no_caps, "ignore the parameter caps");
    verify->add_option("--max-vertices", verify_args.max_vertices, "vertex count guard");

    CLI::App* tables = app.add_subcommand("tables", "check every tabulated intriguing set on the default grid");

    CLI::App* lemmas = app.add_subcommand("lemmas", "run the enumeration lemma checks");
    lemmas->add_option("--seed", seed, "seed for sampled checks")->capture_default_str();

    CLI::App* scan = app.add_subcommand("scan", "search orbit unions for intriguing sets");
    add_graph_flags(scan, scan_args);
    scan->add_option("--max-masks", max_masks, "cap on scanned subset masks");

    CLI::App* fields = app.add_subcommand("fields", "field utilities");
    CLI::App* fields_list = fields->add_subcommand("list", "print the built-in moduli");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(build_args, format, out_path);
        if (cons->parsed()) return cmd_construct(cons_args, method, t, index, y_text, y_index, out_path, format);
        if (verify->parsed()) return cmd_verify(set_path, verify_args, format);
        if (tables->parsed()) return cmd_tables(format);
        if (lemmas->parsed()) return cmd_lemmas(seed, format);
        if (scan->parsed()) return cmd_scan(scan_args, max_masks, format);
        if (fields->parsed() && fields_list->parsed()) return cmd_fields_list(format);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const std::exception& ex) {
        json err;
        err["error"] = ex.what();
        std::cerr << err.dump() << "\n";
        return 2;
    }
}
