#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "scallop/scallop.hpp"

namespace fs = std::filesystem;
using namespace scallop;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCertificateFail = 2;

struct Run {
    fs::path out_dir;
    Json manifest_params = Json::object();
    Json artifacts = Json::array();
    std::vector<std::string> argv;

    void write_text(const std::string& name, const std::string& content) {
        fs::create_directories(out_dir);
        fs::path p = out_dir / name;
        std::ofstream f(p);
        if (!f) throw invalid_input("cannot write " + p.string());
        f << content;
        f.close();
        artifacts.push_back(Json{{"path", name}, {"fnv64", fnv1a64_hex(content)}});
    }

    void write_json(const std::string& name, const Json& j) { write_text(name, dump_canonical(j)); }

    void finish(const std::string& subcommand) {
        Json m{{"schema", "v1"},
               {"subcommand", subcommand},
               {"parameters", manifest_params},
               {"argv", argv},
               {"artifacts", artifacts}};
        write_text("manifest.json", dump_canonical(m));
    }
};

Json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw invalid_input("cannot read " + path);
    Json j;
    f >> j;
    return j;
}

GridIndexSet parse_partition_bits(const std::string& bits, const PointGrid& g, bool part1) {
    if (static_cast<long>(bits.size()) != g.s * g.cols)
        throw invalid_input("partition string must have s*cols characters over {1,2}");
    GridIndexSet out;
    for (long i = 0; i < g.s; ++i)
        for (long j = 0; j < g.cols; ++j) {
            char c = bits[static_cast<std::size_t>(i * g.cols + j)];
            if (c != '1' && c != '2') throw invalid_input("partition characters must be 1 or 2");
            if ((c == '1') == part1) out.insert({i, j});
        }
    return out;
}

int cmd_generate(Run& run, long s, long r, bool refined, long bits) {
    if (r == 2) {
        auto grid = generate_scalloped(choose_params(s, bits, refined ? 2 * s : s));
        run.write_json("grid.json", grid.to_json());
        run.write_text("grid.svg", render_grid_svg(grid));
        std::cout << "grid: s=" << s << " cols=" << grid.cols << " points=" << s * grid.cols
                  << " hash=" << grid.hash() << "\n";
    } else {
        if (refined) throw invalid_input("--refined applies to the planar construction only");
        auto w = generate_torus(s, r, bits);
        run.write_json("torus.json", w.to_json());
        run.write_text("torus-base.svg", render_grid_svg(w.base));
        std::cout << "torus: s=" << s << " r=" << r << " dim=" << w.dim
                  << " points=" << w.tuple_count() << " hash=" << w.hash() << "\n";
    }
    return kExitOk;
}

void print_report(const CertificateReport& rep) {
    std::cout << rep.claim_id << ": " << (rep.pass ? "pass" : "FAIL")
              << " (checked " << rep.checked_count << ")\n";
}

int cmd_certify(Run& run, const std::string& grid_path, const std::string& torus_path, long s,
                long r, bool refined, const std::string& mode, long bits, long max_bits) {
    std::vector<CertificateReport> reports;
    Json retries = Json::array();
    if (!grid_path.empty() || !torus_path.empty()) {
        if (!grid_path.empty()) {
            auto grid = PointGrid::from_json(read_json_file(grid_path));
            if (mode == "negative") reports.push_back(check_claim_negative(grid));
            else reports.push_back(certify_planar_witness(grid));
        } else {
            auto w = TorusWitness::from_json(read_json_file(torus_path));
            reports.push_back(certify_torus_witness(w));
        }
    } else {
        // generate-and-certify with automatic precision doubling
        for (long b = bits;; b *= 2) {
            reports.clear();
            if (r == 2) {
                auto grid = generate_scalloped(choose_params(s, b, refined ? 2 * s : s));
                if (mode == "negative" || mode == "all") reports.push_back(check_claim_negative(grid));
                if (mode == "maximal" || mode == "all") reports.push_back(certify_planar_witness(grid));
            } else {
                reports.push_back(certify_torus_witness(generate_torus(s, r, b)));
            }
            bool all_pass = true;
            for (const auto& rep : reports) all_pass = all_pass && rep.pass;
            if (all_pass || 2 * b > max_bits) break;
            retries.push_back(Json{{"precision_bits", b}, {"result", "fail, doubling"}});
        }
    }
    bool all_pass = true;
    for (auto& rep : reports) {
        if (!retries.empty()) rep.params_echo["retries"] = retries;
        run.write_json("report-" + rep.claim_id + ".json", rep.to_json());
        print_report(rep);
        all_pass = all_pass && rep.pass;
    }
    return all_pass ? kExitOk : kExitCertificateFail;
}

int cmd_exhaust(Run& run, const std::string& grid_path, const std::string& torus_path, long s,
                long r, bool refined, long bits, long cap, long long rcap) {
    CertificateReport rep;
    if (!torus_path.empty()) {
        rep = exhaustive_rpartitions(TorusWitness::from_json(read_json_file(torus_path)), rcap);
    } else if (!grid_path.empty()) {
        rep = exhaustive_bipartitions(PointGrid::from_json(read_json_file(grid_path)), cap);
    } else if (r > 2) {
        rep = exhaustive_rpartitions(generate_torus(s, r, bits), rcap);
    } else {
        rep = exhaustive_bipartitions(generate_scalloped(choose_params(s, bits, refined ? 2 * s : s)),
                                      cap);
    }
    run.write_json("report-" + rep.claim_id + ".json", rep.to_json());
    print_report(rep);
    return rep.pass ? kExitOk : kExitCertificateFail;
}

int cmd_separate(Run& run, long a, long count, std::uint64_t seed, int max_rounds, bool svg) {
    Json instances = Json::array();
    long attained = 0;
    long supported_count = 0;
    bool all_ok = true;
    for (long idx = 0; idx < count; ++idx) {
        auto fam = random_disjoint_family(a, seed + static_cast<std::uint64_t>(idx));
        auto naive = naive_separating_system(fam);
        auto improved = improve_separating_system(naive, fam, max_rounds);
        bool valid = system_valid(improved.system, fam);
        auto inc = extract_incidences(improved.system);
        bool planar_ok = true;
        std::optional<AuxiliaryGraph> graph;
        try {
            graph = build_auxiliary_graph(improved.system, inc);
        } catch (const drawing_conflict&) {
            planar_ok = false;
        }
        auto bound = check_fac_bound(improved.system, inc);
        bool edges_ok = !graph || static_cast<long>(graph->edges.size()) <= 3 * a - 6;
        all_ok = all_ok && valid && planar_ok && edges_ok;
        if (bound.fac_le_bound) ++attained;
        if (bound.supported) ++supported_count;
        instances.push_back(Json{{"seed", seed + static_cast<std::uint64_t>(idx)},
                                 {"valid", valid},
                                 {"planar", planar_ok},
                                 {"naive_fac", naive.fac()},
                                 {"report", bound.to_json()}});
        if (idx == 0) {
            Json inc_j = Json::array();
            for (const auto& rcd : inc) inc_j.push_back(rcd.to_json());
            Json sys{{"schema", "v1"},
                     {"family", fam.to_json()},
                     {"system", improved.system.to_json()},
                     {"incidences", inc_j},
                     {"graph", graph ? graph->to_json() : Json()}};
            run.write_json("system.json", sys);
            if (svg && graph)
                run.write_text("system.svg", render_system_svg(improved.system, fam, inc, &*graph));
        }
    }
    Json summary{{"schema", "v1"},
                 {"a", a},
                 {"count", count},
                 {"seed", seed},
                 {"all_valid_and_planar", all_ok},
                 {"fac_bound_attained", attained},
                 {"supported_systems", supported_count},
                 {"instances", instances}};
    run.write_json("separate-summary.json", summary);
    std::cout << "separate: a=" << a << " instances=" << count << " valid+planar="
              << (all_ok ? "yes" : "NO") << " fac<=6a-12 attained " << attained << "/" << count
              << "\n";
    return all_ok ? kExitOk : kExitCertificateFail;
}

int cmd_turan(Run& run, int fk, int fm, int fsz, long fcap, int box_n, int box_d) {
    bool fail = false;
    if (fk > 0) {
        auto res = max_hypercube_free(fk, fm, fsz, fcap);
        Json j{{"schema", "v1"},
               {"k", fk},
               {"m", fm},
               {"s", fsz},
               {"value", res.value},
               {"nodes", res.nodes},
               {"witness", res.witness.to_json()}};
        run.write_json("f-value.json", j);
        std::cout << "F(" << fk << "," << fm << "," << fsz << ") = " << res.value << "\n";
    } else if (box_n > 0) {
        auto res = box_turan(box_n, box_d);
        Json edges = Json::array();
        for (const auto& e : res.witness.edges) {
            Json ej = Json::array();
            for (int v : e) ej.push_back(v + 1);
            edges.push_back(ej);
        }
        Json j{{"schema", "v1"}, {"n", box_n},       {"d", box_d},
               {"value", res.value}, {"nodes", res.nodes}, {"witness_edges", edges}};
        run.write_json("box-value.json", j);
        std::cout << "ex_" << box_d << "(" << box_n << ", K_{2..2}) = " << res.value << "\n";
    } else {
        // standard table with the recursion checks
        std::map<std::tuple<int, int, int>, long> table;
        Json entries = Json::array();
        for (int s : {2, 3, 4}) {
            for (auto [k, m, cap] : std::vector<std::tuple<int, int, long>>{
                     {1, 2, 100}, {1, 3, 100}, {2, 2, 30}, {2, 3, 30}}) {
                if (std::pow(static_cast<double>(s), m) > static_cast<double>(cap)) continue;
                auto res = max_hypercube_free(k, m, s, cap);
                table[{k, m, s}] = res.value;
                entries.push_back(Json{{"k", k}, {"m", m}, {"s", s}, {"value", res.value},
                                       {"nodes", res.nodes}});
            }
        }
        Json checks = Json::array();
        for (int s : {2, 3}) {
            auto rep = verify_recursion_bound(2, 3, s, table);
            checks.push_back(rep.to_json());
            fail = fail || !rep.pass;
        }
        run.write_json("f-table.json",
                       Json{{"schema", "v1"}, {"entries", entries}, {"recursion_checks", checks}});
        std::cout << "turan table: " << entries.size() << " entries, recursion checks "
                  << (fail ? "FAIL" : "pass") << "\n";
    }
    return fail ? kExitCertificateFail : kExitOk;
}

int cmd_render(Run& run, const std::string& grid_path, const std::string& system_path,
               const std::string& partition, const std::string& svg_name) {
    if (!grid_path.empty()) {
        auto grid = PointGrid::from_json(read_json_file(grid_path));
        std::string svg;
        if (partition.empty()) {
            svg = render_grid_svg(grid);
        } else {
            auto p1 = parse_partition_bits(partition, grid, true);
            auto p2 = parse_partition_bits(partition, grid, false);
            svg = render_grid_svg(grid, &p1, &p2);
        }
        run.write_text(svg_name, svg);
    } else if (!system_path.empty()) {
        Json j = read_json_file(system_path);
        DisjointFamily fam;
        for (const auto& sj : j.at("family").at("sets")) fam.sets.push_back(vpolytope_from_json(sj));
        SeparatingSystem sys;
        for (const auto& pj : j.at("system").at("polyhedra"))
            sys.polys.push_back(hpolyhedron_from_json(pj));
        auto inc = extract_incidences(sys);
        auto graph = build_auxiliary_graph(sys, inc);
        run.write_text(svg_name, render_system_svg(sys, fam, inc, &graph));
    } else {
        throw invalid_input("render needs --grid or --system");
    }
    std::cout << "wrote " << (run.out_dir / svg_name).string() << "\n";
    return kExitOk;
}

int dispatch(std::vector<std::string> args);

int replay_manifest(const std::string& path) {
    Json m = read_json_file(path);
    std::vector<std::string> args;
    for (const auto& a : m.at("argv")) args.push_back(a.get<std::string>());
    return dispatch(std::move(args));
}

int dispatch(std::vector<std::string> args) {
    CLI::App app{"workbench for Tverberg-type intersections of unions of convex sets"};
    app.require_subcommand(0, 1);

    std::string out_dir = "scallop-out";
    app.add_option("--out", out_dir, "output directory")->envname("SCALLOP_OUT_DIR");
    std::string manifest_path;
    app.add_option("--from-manifest", manifest_path, "re-run a recorded invocation");

    long s = 0, r = 2, bits = 128, max_bits = 1024, cap = 20;
    long long rcap = 10000000;
    bool refined = false;
    std::string grid_path, torus_path, mode = "maximal", partition, svg_name = "render.svg";
    std::string system_path;
    long a = 3, count = 1;
    std::uint64_t seed = 1;
    int max_rounds = 200;
    bool svg = false;
    int fk = 0, fm = 0, fsz = 0, box_n = 0, box_d = 2;
    long fcap = 25;

    auto* g = app.add_subcommand("generate", "generate witness configurations");
    g->add_option("--s", s, "points per side / sides")->required();
    g->add_option("--r", r, "number of parts (r > 2 lifts to the torus product)");
    g->add_flag("--refined", refined, "use the 2s^2 refined planar grid");
    g->add_option("--precision-bits", bits, "center approximation budget");

    auto* c = app.add_subcommand("certify", "certify witness properties exactly");
    c->add_option("--grid", grid_path, "grid JSON to certify");
    c->add_option("--torus", torus_path, "torus witness JSON to certify");
    c->add_option("--s", s, "generate and certify at this size");
    c->add_option("--r", r, "number of parts");
    c->add_flag("--refined", refined, "use the 2s^2 refined planar grid");
    c->add_option("--mode", mode, "negative | maximal | all")
        ->check(CLI::IsMember({"negative", "maximal", "all"}));
    c->add_option("--precision-bits", bits, "starting precision");
    c->add_option("--max-precision-bits", max_bits, "retry ceiling for precision doubling");

    auto* e = app.add_subcommand("exhaust", "brute-force all partitions at tiny scale");
    e->add_option("--grid", grid_path, "grid JSON");
    e->add_option("--torus", torus_path, "torus witness JSON");
    e->add_option("--s", s, "generate and exhaust at this size");
    e->add_option("--r", r, "number of parts");
    e->add_flag("--refined", refined, "use the 2s^2 refined planar grid");
    e->add_option("--precision-bits", bits, "generation precision");
    e->add_option("--cap", cap, "max grid points for bipartition enumeration");
    e->add_option("--rcap", rcap, "max r^(s^r) for r-partition enumeration");

    auto* sp = app.add_subcommand("separate", "separating systems on random disjoint families");
    sp->add_option("--a", a, "family size")->required();
    sp->add_option("--count", count, "number of seeded instances");
    sp->add_option("--seed", seed, "base seed");
    sp->add_option("--max-rounds", max_rounds, "improvement round cap");
    sp->add_flag("--svg", svg, "emit an SVG of the first instance");

    auto* t = app.add_subcommand("turan", "hypercube-free and box Turan searches");
    t->add_option("--f-k", fk, "hypercube dimension k");
    t->add_option("--f-m", fm, "tuple length m");
    t->add_option("--f-s", fsz, "alphabet size s");
    t->add_option("--f-cap", fcap, "position cap for the F search");
    t->add_option("--box-n", box_n, "vertices for the box Turan search");
    t->add_option("--box-d", box_d, "uniformity for the box Turan search");

    auto* rd = app.add_subcommand("render", "render grids and separating systems as SVG");
    rd->add_option("--grid", grid_path, "grid JSON");
    rd->add_option("--system", system_path, "system JSON from `separate`");
    rd->add_option("--partition", partition, "bipartition as a row-major string over {1,2}");
    rd->add_option("--svg-out", svg_name, "output SVG file name");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (!manifest_path.empty()) return replay_manifest(manifest_path);
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return kExitUsage;
    }

    Run run;
    run.out_dir = out_dir;
    run.argv = args;

    try {
        int code = kExitOk;
        if (g->parsed()) {
            run.manifest_params = Json{{"s", s}, {"r", r}, {"refined", refined}, {"precision_bits", bits}};
            code = cmd_generate(run, s, r, refined, bits);
            run.finish("generate");
        } else if (c->parsed()) {
            if (grid_path.empty() && torus_path.empty() && s == 0)
                throw invalid_input("certify needs --grid, --torus, or --s");
            run.manifest_params = Json{{"grid", grid_path}, {"torus", torus_path}, {"s", s},
                                       {"r", r},           {"refined", refined},  {"mode", mode},
                                       {"precision_bits", bits}};
            code = cmd_certify(run, grid_path, torus_path, s, r, refined, mode, bits, max_bits);
            run.finish("certify");
        } else if (e->parsed()) {
            if (grid_path.empty() && torus_path.empty() && s == 0)
                throw invalid_input("exhaust needs --grid, --torus, or --s");
            run.manifest_params = Json{{"grid", grid_path}, {"torus", torus_path}, {"s", s},
                                       {"r", r},           {"refined", refined},  {"cap", cap},
                                       {"rcap", rcap}};
            code = cmd_exhaust(run, grid_path, torus_path, s, r, refined, bits, cap, rcap);
            run.finish("exhaust");
        } else if (sp->parsed()) {
            run.manifest_params = Json{{"a", a}, {"count", count}, {"seed", seed},
                                       {"max_rounds", max_rounds}};
            code = cmd_separate(run, a, count, seed, max_rounds, svg);
            run.finish("separate");
        } else if (t->parsed()) {
            run.manifest_params = Json{{"f_k", fk}, {"f_m", fm}, {"f_s", fsz},
                                       {"box_n", box_n}, {"box_d", box_d}};
            code = cmd_turan(run, fk, fm, fsz, fcap, box_n, box_d);
            run.finish("turan");
        } else if (rd->parsed()) {
            run.manifest_params = Json{{"grid", grid_path}, {"system", system_path},
                                       {"partition", partition}, {"svg_out", svg_name}};
            code = cmd_render(run, grid_path, system_path, partition, svg_name);
            run.finish("render");
        }
        return code;
    } catch (const cap_exceeded& ex) {
        std::cerr << "cap exceeded: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
    return dispatch(std::move(args));
}
