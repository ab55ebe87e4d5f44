#include "planwidth/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "planwidth/experiment.hpp"
#include "planwidth/json_io.hpp"

namespace planwidth {

namespace {

// input or usage problem: exit code 2
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_all(const std::string& path, std::istream& in) {
    std::ostringstream buf;
    if (path == "-") {
        buf << in.rdbuf();
    } else {
        std::ifstream f(path);
        if (!f) throw usage_error("cannot open " + path);
        buf << f.rdbuf();
    }
    return buf.str();
}

json read_json(const std::string& path, std::istream& in) {
    try {
        return json::parse(read_all(path, in));
    } catch (const json::parse_error& e) {
        throw usage_error(path + ": " + e.what());
    }
}

bool looks_like_json(const std::string& text) {
    auto p = text.find_first_not_of(" \t\r\n");
    return p != std::string::npos && text[p] == '{';
}

Graph read_graph(const std::string& path, std::istream& in) {
    auto text = read_all(path, in);
    if (!looks_like_json(text)) return parse_graph(text);
    auto j = json::parse(text);
    if (j.contains("graph")) return graph_from_json(j.at("graph"));
    return graph_from_json(j);
}

std::size_t to_size(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        auto v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return static_cast<std::size_t>(v);
    } catch (const std::logic_error&) {
        throw usage_error(std::string("expected a non-negative integer for ") + what + ", got '" + s + "'");
    }
}

Graph generate(const std::vector<std::string>& args, std::uint64_t seed) {
    if (args.empty()) throw usage_error("gen needs a family: k3n complete_bipartite circulant path cycle complete star "
                                        "disjoint_cliques random_connected random_bounded_degree random_binary_tree");
    const auto& fam = args[0];
    auto need = [&](std::size_t k, const char* shape) {
        if (args.size() != k + 1) throw usage_error("usage: gen " + fam + " " + shape);
    };
    auto at = [&](std::size_t i, const char* what) { return to_size(args[i], what); };
    if (fam == "k3n") return need(1, "N"), gen_complete_bipartite(3, at(1, "N"));
    if (fam == "complete_bipartite") return need(2, "A B"), gen_complete_bipartite(at(1, "A"), at(2, "B"));
    if (fam == "circulant") {
        need(2, "N OFFSETS (comma separated)");
        std::vector<std::size_t> offsets;
        std::stringstream ss(args[2]);
        for (std::string part; std::getline(ss, part, ',');) offsets.push_back(to_size(part, "offset"));
        return gen_circulant(at(1, "N"), offsets);
    }
    if (fam == "path") return need(1, "N"), gen_path(at(1, "N"));
    if (fam == "cycle") return need(1, "N"), gen_cycle(at(1, "N"));
    if (fam == "complete") return need(1, "N"), gen_complete(at(1, "N"));
    if (fam == "star") return need(1, "LEAVES"), gen_star(at(1, "LEAVES"));
    if (fam == "disjoint_cliques") return need(2, "K S"), gen_disjoint_cliques(at(1, "K"), at(2, "S"));
    if (fam == "random_connected") {
        need(3, "N P_NUM P_DEN");
        return gen_random_connected(at(1, "N"), static_cast<unsigned>(at(2, "P_NUM")),
                                    static_cast<unsigned>(at(3, "P_DEN")), seed);
    }
    if (fam == "random_bounded_degree") {
        need(3, "N MAX_DEGREE EDGES");
        return gen_random_bounded_degree(at(1, "N"), at(2, "MAX_DEGREE"), at(3, "EDGES"), seed);
    }
    if (fam == "random_binary_tree") {
        need(1, "LEAVES");
        auto t = gen_random_binary_tree(at(1, "LEAVES"), seed);
        std::vector<Edge> edges;
        for (auto [a, b] : t.edges()) edges.push_back({std::min(a, b), std::max(a, b)});
        return Graph(t.size(), std::move(edges));
    }
    throw usage_error("unknown family '" + fam + "'");
}

LinearArrangement pick_arrangement(const Graph& g, const std::string& name, const std::string& file, std::istream& in,
                                   const SolverLimits& limits) {
    if (!file.empty()) {
        auto a = arrangement_from_json(read_json(file, in));
        if (a.size() != g.num_vertices()) throw usage_error("arrangement size differs from the graph");
        return a;
    }
    if (name == "identity") return LinearArrangement::identity(g.num_vertices());
    if (name == "fold") return fold_arrangement(g.num_vertices());
    if (name == "exact_cutwidth") return exact_cutwidth(g, limits).witness;
    if (name == "exact_pathwidth") return exact_pathwidth(g, limits).witness;
    if (name == "exact_bandwidth") return exact_bandwidth(g, limits).witness;
    throw usage_error("unknown arrangement '" + name + "'");
}

CarvingDecomposition pick_carving(const Graph& g, const std::string& name, const std::string& file,
                                  const LinearArrangement& a, std::istream& in, const SolverLimits& limits) {
    if (!file.empty()) return carving_from_json(read_json(file, in));
    if (name == "exact") return exact_carving_width(g, limits).decomposition;
    if (name == "exact_components") {
        std::vector<CarvingDecomposition> parts;
        auto comps = components(g);
        for (const auto& c : comps) parts.push_back(exact_carving_width(induced_subgraph(g, c), limits).decomposition);
        return combine_carvings(g.num_vertices(), parts, comps);
    }
    if (name == "caterpillar") return caterpillar_carving_from_arrangement(g, a);
    throw usage_error("unknown carving input '" + name + "'");
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw usage_error("cannot write " + path);
    f << text;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err,
             void (*extra)(MetricRegistry&)) {
    CLI::App app{"planwidth: planarizations and width parameters"};
    app.require_subcommand(1);
    std::uint64_t seed = 1;
    std::string limit_overrides;
    app.add_option("--seed", seed, "seed for random families");
    app.add_option("--limits", limit_overrides, "solver limits, e.g. treewidth=26,carving=9");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph family");
    std::vector<std::string> gen_args;
    bool gen_text = false;
    gen->add_option("family", gen_args, "family followed by its parameters")->required();
    gen->add_flag("--text", gen_text, "edge-list text instead of JSON");

    // planarize
    auto* plan = app.add_subcommand("planarize", "planarize a graph");
    std::string strategy, input = "-", arrangement = "identity", arrangement_file, carving = "exact", carving_file,
                                  svg_path;
    std::size_t zn = 0, z = 0;
    plan->add_option("--strategy", strategy, "zarankiewicz | convex | carving | clustered")
        ->required()
        ->check(CLI::IsMember({"zarankiewicz", "convex", "carving", "clustered"}));
    plan->add_option("--n", zn, "n of K(3,n) for the zarankiewicz strategy");
    plan->add_option("--input", input, "graph file (edge list or JSON), - for stdin");
    plan->add_option("--arrangement", arrangement, "identity | fold | exact_cutwidth | exact_pathwidth | exact_bandwidth");
    plan->add_option("--arrangement-file", arrangement_file, "arrangement JSON {order: [...]}");
    plan->add_option("--carving", carving, "exact | exact_components | caterpillar");
    plan->add_option("--carving-file", carving_file, "carving decomposition JSON");
    plan->add_option("--z", z, "cluster order for the clustered strategy (default max(2, ceil(sqrt(w))))");
    plan->add_option("--svg", svg_path, "also write an SVG drawing to this file");

    // width
    auto* width = app.add_subcommand("width", "compute a width parameter");
    std::string param, width_input = "-";
    bool exact = false;
    width
        ->add_option("--param", param,
                     "cutwidth | pathwidth | bandwidth | treewidth | treedepth | carvingwidth | crossings")
        ->required()
        ->check(CLI::IsMember(
            {"cutwidth", "pathwidth", "bandwidth", "treewidth", "treedepth", "carvingwidth", "crossings"}));
    width->add_flag("--exact", exact, "run the exact solver");
    width->add_option("--input", width_input, "graph, drawing, planarization or report; - for stdin");

    // validate
    auto* val = app.add_subcommand("validate", "check a decomposition against a graph");
    std::string kind, graph_path, decomposition_path = "-";
    val->add_option("--kind", kind, "tree | branch | carving")
        ->required()
        ->check(CLI::IsMember({"tree", "branch", "carving"}));
    val->add_option("--graph", graph_path, "graph file")->required();
    val->add_option("--decomposition", decomposition_path, "decomposition JSON, - for stdin");

    // svg
    auto* svg = app.add_subcommand("svg", "render a drawing, report or carving tree");
    std::string svg_input = "-";
    bool labels = false;
    svg->add_option("--input", svg_input, "drawing, report or carving JSON; - for stdin");
    svg->add_flag("--labels", labels, "label vertices");

    // experiment
    auto* exp = app.add_subcommand("experiment", "run experiment specs");
    exp->require_subcommand(1);
    auto* run = exp->add_subcommand("run", "run one spec");
    std::string spec_path;
    run->add_option("spec", spec_path, "spec file")->required();
    auto* run_all = exp->add_subcommand("run-all", "run every spec of a directory");
    std::string spec_dir = "experiments";
    run_all->add_option("directory", spec_dir, "spec directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        SolverLimits limits = SolverLimits::from_env();
        if (!limit_overrides.empty()) limits.apply(limit_overrides);

        if (gen->parsed()) {
            auto g = generate(gen_args, seed);
            if (gen_text) out << serialize_graph(g);
            else out << to_json(g).dump() << '\n';
            return 0;
        }

        if (plan->parsed()) {
            PlanarizationReport rep;
            std::optional<Drawing> drawing;
            std::string svg_text;
            if (strategy == "zarankiewicz") {
                if (zn == 0) throw usage_error("--strategy zarankiewicz needs --n N (N >= 1)");
                drawing = zarankiewicz_k3n(zn);
                rep = report_from_drawing("zarankiewicz", *drawing);
            } else {
                auto g = read_graph(input, in);
                auto a = pick_arrangement(g, arrangement, arrangement_file, in, limits);
                if (strategy == "convex") {
                    auto lift = convex_lift(g, a);
                    drawing = std::move(lift.drawing);
                    rep = std::move(lift.report);
                } else {
                    auto cd = pick_carving(g, carving, carving_file, a, in, limits);
                    rep = strategy == "carving" ? carving_guided(g, cd) : clustered_carving(g, cd, z);
                    if (!svg_path.empty()) svg_text = export_tree_svg(cd);
                }
            }
            auto j = to_json(rep);
            if (drawing) {
                j["drawing"] = to_json(*drawing);
                if (!svg_path.empty()) svg_text = export_svg(*drawing);
            }
            if (!svg_path.empty()) write_file(svg_path, svg_text);
            out << j.dump() << '\n';
            return 0;
        }

        if (width->parsed()) {
            if (param == "crossings") {
                auto j = read_json(width_input, in);
                std::size_t value;
                if (j.contains("crossings_added")) value = j.at("crossings_added").get<std::size_t>();
                else if (j.contains("planar") && j.contains("chains")) value = planarization_from_json(j).planar.dummy_count();
                else if (j.contains("positions")) value = crossings(drawing_from_json(j)).size();
                else throw usage_error("crossings needs a report, planarization or drawing");
                out << json{{"param", param}, {"value", value}}.dump() << '\n';
                return 0;
            }
            if (!exact) throw usage_error("width --param " + param + " is only available with --exact");
            auto text = read_all(width_input, in);
            Graph g;
            if (looks_like_json(text)) {
                auto j = json::parse(text);
                if (j.contains("planarization")) g = planarization_from_json(j.at("planarization")).planar;
                else if (j.contains("planar")) g = planarization_from_json(j).planar;
                else if (j.contains("graph")) g = graph_from_json(j.at("graph"));
                else g = graph_from_json(j);
            } else {
                g = parse_graph(text);
            }
            json res{{"param", param}};
            if (param == "cutwidth" || param == "pathwidth" || param == "bandwidth") {
                auto r = param == "cutwidth"    ? exact_cutwidth(g, limits)
                         : param == "pathwidth" ? exact_pathwidth(g, limits)
                                                : exact_bandwidth(g, limits);
                res["value"] = r.value;
                res["witness"] = to_json(r.witness);
            } else if (param == "treewidth") {
                auto r = exact_treewidth(g, limits);
                res["value"] = r.width;
                res["witness"] = to_json(r.decomposition);
                res["elimination_order"] = r.elimination_order;
            } else if (param == "treedepth") {
                auto r = exact_treedepth(g, limits);
                res["value"] = r.depth;
                res["witness"] = to_json(r.forest);
            } else {
                auto r = exact_carving_width(g, limits);
                res["value"] = r.width;
                res["witness"] = to_json(r.decomposition);
            }
            out << res.dump() << '\n';
            return 0;
        }

        if (val->parsed()) {
            auto g = read_graph(graph_path, in);
            auto j = read_json(decomposition_path, in);
            json res{{"kind", kind}};
            try {
                if (kind == "tree") res["width"] = validate_tree_decomposition(g, tree_decomposition_from_json(j));
                else if (kind == "branch") res["width"] = validate_branch(g, branch_from_json(j));
                else res["width"] = validate_carving(g, carving_from_json(j));
                res["valid"] = true;
            } catch (const decomposition_error& e) {
                res["valid"] = false;
                res["fault"] = fault_tag(e.fault());
                res["detail"] = e.what();
                res["witness"] = e.witness();
                out << res.dump() << '\n';
                return 1;
            } catch (const graph_error& e) {
                // malformed tree structure
                res["valid"] = false;
                res["fault"] = fault_tag(DecompositionFault::malformed_tree);
                res["detail"] = e.what();
                out << res.dump() << '\n';
                return 1;
            }
            out << res.dump() << '\n';
            return 0;
        }

        if (svg->parsed()) {
            auto j = read_json(svg_input, in);
            SvgOptions opts;
            opts.label_vertices = labels;
            if (j.contains("positions")) out << export_svg(drawing_from_json(j), opts);
            else if (j.contains("drawing")) out << export_svg(drawing_from_json(j.at("drawing")), opts);
            else if (j.contains("witness") && j.at("witness").contains("leaf_vertex"))
                out << export_tree_svg(carving_from_json(j.at("witness")));
            else if (j.contains("leaf_vertex")) out << export_tree_svg(carving_from_json(j));
            else throw usage_error("svg needs a drawing, a report or a carving decomposition");
            return 0;
        }

        if (exp->parsed()) {
            auto registry = builtin_metrics();
            if (extra) extra(registry);
            std::vector<std::string> specs;
            if (run->parsed()) specs.push_back(spec_path);
            else specs = list_specs(spec_dir);
            bool all = true;
            for (const auto& path : specs) {
                auto report = run_experiment(load_spec(path), registry);
                write_report(out, report);
                all &= report.pass;
            }
            return all ? 0 : 1;
        }
    } catch (const usage_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const parse_error& e) {
        err << "input error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        err << "input error: " << e.what() << '\n';
        return 2;
    } catch (const experiment_error& e) {
        err << "experiment error: " << e.what() << '\n';
        return 2;
    } catch (const degeneracy_error& e) {
        err << "degenerate drawing: " << e.what() << '\n';
        out << json{{"error", "degenerate"}, {"report", to_json(e.report())}}.dump() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace planwidth
