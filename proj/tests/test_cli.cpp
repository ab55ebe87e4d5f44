#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "../oracle/oracle.hpp"
#include "planwidth/cli.hpp"
#include "planwidth/experiment.hpp"
#include "planwidth/planarizers.hpp"

using namespace planwidth;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
    args.insert(args.begin(), "planwidth");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = cli_main(static_cast<int>(argv.size()), argv.data(), in, out, err, &oracle::register_metrics);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
    auto path = "/tmp/planwidth_test_" + name;
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST_CASE("json round trips") {
    auto g = gen_complete_bipartite(3, 4);
    CHECK(graph_from_json(json::parse(to_json(g).dump())) == g);

    auto d = zarankiewicz_k3n(5);
    auto d2 = drawing_from_json(json::parse(to_json(d).dump()));
    CHECK(d2.graph == d.graph);
    CHECK(d2.pos == d.pos);
    CHECK(rational_from_json(to_json(make_rational(-7, 3))) == make_rational(-7, 3));

    auto rep = report_from_drawing("zarankiewicz", d);
    auto p = planarization_from_json(json::parse(to_json(rep.planarization).dump()));
    CHECK(p.planar == rep.planarization.planar);
    CHECK(p.chains == rep.planarization.chains);

    auto cd = exact_carving_width(gen_cycle(5)).decomposition;
    auto cd2 = carving_from_json(to_json(cd));
    CHECK(cd2.leaf_vertex == cd.leaf_vertex);
    CHECK(validate_carving(gen_cycle(5), cd2) == 2);

    auto td = exact_treewidth(g).decomposition;
    CHECK(validate_tree_decomposition(g, tree_decomposition_from_json(to_json(td))) == 3);

    auto a = exact_cutwidth(g).witness;
    CHECK(arrangement_from_json(to_json(a)) == a);
}

TEST_CASE("cli gen and width") {
    auto r = run({"gen", "k3n", "5"});
    CHECK(r.code == 0);
    CHECK(graph_from_json(json::parse(r.out)) == gen_complete_bipartite(3, 5));

    auto text = run({"gen", "k3n", "8", "--text"});
    CHECK(text.code == 0);
    auto td = run({"width", "--param", "treedepth", "--exact", "--input", "-"}, text.out);
    CHECK(td.code == 0);
    CHECK(json::parse(td.out).at("value") == 3);

    auto plan = run({"planarize", "--strategy", "zarankiewicz", "--n", "11"});
    CHECK(plan.code == 0);
    auto cr = run({"width", "--param", "crossings", "--input", "-"}, plan.out);
    CHECK(cr.code == 0);
    CHECK(json::parse(cr.out).at("value") == 25);

    auto cw = run({"width", "--param", "carvingwidth", "--exact", "--input", "-"}, run({"gen", "k3n", "3"}).out);
    CHECK(json::parse(cw.out).at("value") == 4);
}

TEST_CASE("cli planarize strategies") {
    auto g = run({"gen", "k3n", "4"}).out;
    auto convex = run({"planarize", "--strategy", "convex", "--arrangement", "exact_cutwidth", "--input", "-"}, g);
    CHECK(convex.code == 0);
    CHECK(json::parse(convex.out).at("validated_width") == 6);

    auto carving = run({"planarize", "--strategy", "carving", "--carving", "exact", "--input", "-"}, run({"gen", "k3n", "3"}).out);
    CHECK(carving.code == 0);
    CHECK(json::parse(carving.out).at("validated_width") <= 4);

    auto clustered = run({"planarize", "--strategy", "clustered", "--carving", "exact", "--z", "2", "--input", "-"}, g);
    CHECK(clustered.code == 0);
}

TEST_CASE("cli validate") {
    auto gpath = temp_file("k35.txt", serialize_graph(gen_complete_bipartite(3, 5)));
    json good{{"kind", "tree"},
              {"tree", {{"size", 2}, {"edges", {{0, 1}}}}},
              {"bags", {{0, 1, 2, 3, 4, 5}, {0, 1, 2, 6, 7}}}};
    auto ok = run({"validate", "--kind", "tree", "--graph", gpath, "--decomposition", "-"}, good.dump());
    CHECK(ok.code == 0);
    CHECK(json::parse(ok.out).at("width") == 5);

    json bad = good;
    bad["bags"][1] = {0, 1, 6, 7};
    auto no = run({"validate", "--kind", "tree", "--graph", gpath, "--decomposition", "-"}, bad.dump());
    CHECK(no.code == 1);
    CHECK(json::parse(no.out).at("valid") == false);
    std::remove(gpath.c_str());
}

TEST_CASE("cli errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"gen", "nosuchfamily", "3"}).code == 2);
    CHECK(run({"width", "--param", "treewidth", "--exact", "--input", "-"}, "2 1\n0 0").code == 2);
    CHECK(run({"planarize", "--strategy", "zarankiewicz"}).code == 2);
    CHECK(run({"width", "--param", "crossings", "--input", "-"}, "{not json").code == 2);
    auto lim = run({"--limits", "treewidth=5", "width", "--param", "treewidth", "--exact", "--input", "-"},
                   run({"gen", "k3n", "4", "--text"}).out);
    CHECK(lim.code == 1);
    CHECK(run({"svg", "--input", "-"}, run({"planarize", "--strategy", "zarankiewicz", "--n", "3"}).out).code == 0);
}

TEST_CASE("experiment runner") {
    auto registry = builtin_metrics();
    oracle::register_metrics(registry);

    json empty{{"name", "empty"}, {"criterion", 0}, {"family", {{{"generator", "k3n"}, {"n", {{"range", {5, 4}}}}}}},
               {"metrics", {"crossings"}}, {"checks", json::array()}};
    auto rep = run_experiment(parse_spec(empty), registry);
    CHECK(rep.rows.empty());
    CHECK(rep.pass);

    json spec{{"name", "z"},
              {"criterion", 1},
              {"strategy", "zarankiewicz"},
              {"family", {{{"generator", "k3n"}, {"n", {{"range", {2, 12}}}}}}},
              {"metrics", {"crossings"}},
              {"checks", {{{"id", "f"}, {"type", "equal"}, {"left", "crossings"}, {"right", "cr_formula"}}}}};
    auto r2 = run_experiment(parse_spec(spec), registry);
    CHECK(r2.rows.size() == 11);
    CHECK(r2.pass);

    json pres{{"name", "p"},
              {"criterion", 3},
              {"strategy", "convex"},
              {"arrangement", "exact_cutwidth"},
              {"family", {{{"generator", "k3n"}, {"n", {{"range", {2, 5}}}}}}},
              {"checks", {{{"id", "eq"}, {"type", "equal"}, {"left", "xorder_separation"}, {"right", "input_separation"}}}}};
    CHECK(run_experiment(parse_spec(pres), registry).pass);

    json failing = spec;
    failing["checks"][0]["right"] = 1;
    auto r3 = run_experiment(parse_spec(failing), registry);
    CHECK_FALSE(r3.pass);
    CHECK(r3.summary().at("pass") == false);

    CHECK_THROWS_AS(parse_spec(json{{"name", "x"}}), experiment_error);
    CHECK(list_specs(PLANWIDTH_EXPERIMENT_DIR).size() == 15);
}
