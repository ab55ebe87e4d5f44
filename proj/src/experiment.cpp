#include "planwidth/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>

#include "planwidth/planarity.hpp"

namespace planwidth {

// ---------------------------------------------------------------------------
// row context

struct RowContext::Cache {
    std::optional<Graph> graph;
    std::optional<Tree> tree;
    std::optional<LinearArrangement> arrangement;
    std::optional<CarvingDecomposition> carving;
    std::optional<std::size_t> z;
    std::optional<Drawing> drawing;
    std::optional<PlanarizationReport> report;
    std::optional<RestrictedPartition> partition;
    std::map<std::string, Rational> metrics;
    std::set<std::string> in_progress;
};

RowContext::RowContext(json params, std::string strategy, std::string arrangement, std::string carving,
                       std::optional<std::size_t> z, SolverLimits limits)
    : params_(std::move(params)),
      strategy_(std::move(strategy)),
      arrangement_(std::move(arrangement)),
      carving_(std::move(carving)),
      z_(z),
      limits_(limits),
      cache_(std::make_unique<Cache>()) {}

RowContext::~RowContext() = default;

bool RowContext::has_param(const std::string& name) const {
    return params_.contains(name) && params_.at(name).is_number_integer();
}

long RowContext::param(const std::string& name) const {
    if (!has_param(name)) throw experiment_error("row has no integer parameter '" + name + "'");
    return params_.at(name).get<long>();
}

namespace {

std::size_t uparam(const RowContext& ctx, const std::string& name) {
    auto v = ctx.param(name);
    if (v < 0) throw experiment_error("parameter '" + name + "' is negative");
    return static_cast<std::size_t>(v);
}

}  // namespace

const Graph& RowContext::graph() {
    auto& c = *cache_;
    if (c.graph) return *c.graph;
    const auto gen = params_.at("generator").get<std::string>();
    if (gen == "k3n") c.graph = gen_complete_bipartite(3, uparam(*this, "n"));
    else if (gen == "complete_bipartite") c.graph = gen_complete_bipartite(uparam(*this, "a"), uparam(*this, "b"));
    else if (gen == "circulant")
        c.graph = gen_circulant(uparam(*this, "n"), params_.at("offsets").get<std::vector<std::size_t>>());
    else if (gen == "random_connected")
        c.graph = gen_random_connected(uparam(*this, "n"), static_cast<unsigned>(uparam(*this, "p_num")),
                                       static_cast<unsigned>(uparam(*this, "p_den")), uparam(*this, "seed"));
    else if (gen == "random_bounded_degree")
        c.graph = gen_random_bounded_degree(uparam(*this, "n"), uparam(*this, "max_degree"), uparam(*this, "edges"),
                                            uparam(*this, "seed"));
    else if (gen == "disjoint_cliques") c.graph = gen_disjoint_cliques(uparam(*this, "k"), uparam(*this, "s"));
    else if (gen == "path") c.graph = gen_path(uparam(*this, "n"));
    else if (gen == "cycle") c.graph = gen_cycle(uparam(*this, "n"));
    else if (gen == "complete") c.graph = gen_complete(uparam(*this, "n"));
    else if (gen == "star") c.graph = gen_star(uparam(*this, "leaves"));
    else if (gen == "random_binary_tree") {
        const auto& t = tree();
        std::vector<Edge> edges;
        for (auto [a, b] : t.edges()) edges.push_back({std::min(a, b), std::max(a, b)});
        c.graph = Graph(t.size(), std::move(edges));
    } else
        throw experiment_error("unknown generator '" + gen + "'");
    return *c.graph;
}

const Tree& RowContext::tree() {
    auto& c = *cache_;
    if (c.tree) return *c.tree;
    if (params_.at("generator") != "random_binary_tree") throw experiment_error("row has no tree");
    c.tree = gen_random_binary_tree(uparam(*this, "leaves"), uparam(*this, "seed"));
    return *c.tree;
}

const LinearArrangement& RowContext::arrangement() {
    auto& c = *cache_;
    if (c.arrangement) return *c.arrangement;
    const auto& g = graph();
    if (arrangement_ == "identity") c.arrangement = LinearArrangement::identity(g.num_vertices());
    else if (arrangement_ == "fold") c.arrangement = fold_arrangement(g.num_vertices());
    else if (arrangement_ == "exact_cutwidth") c.arrangement = exact_cutwidth(g, limits_).witness;
    else if (arrangement_ == "exact_pathwidth") c.arrangement = exact_pathwidth(g, limits_).witness;
    else if (arrangement_ == "exact_bandwidth") c.arrangement = exact_bandwidth(g, limits_).witness;
    else throw experiment_error("unknown arrangement '" + arrangement_ + "'");
    return *c.arrangement;
}

const CarvingDecomposition& RowContext::carving_input() {
    auto& c = *cache_;
    if (c.carving) return *c.carving;
    const auto& g = graph();
    if (carving_ == "exact") {
        c.carving = exact_carving_width(g, limits_).decomposition;
    } else if (carving_ == "exact_components") {
        std::vector<CarvingDecomposition> parts;
        auto comps = components(g);
        for (const auto& comp : comps) parts.push_back(exact_carving_width(induced_subgraph(g, comp), limits_).decomposition);
        c.carving = combine_carvings(g.num_vertices(), parts, comps);
    } else if (carving_ == "caterpillar") {
        c.carving = caterpillar_carving_from_arrangement(g, arrangement());
    } else {
        throw experiment_error("unknown carving input '" + carving_ + "'");
    }
    return *c.carving;
}

std::size_t RowContext::z() {
    auto& c = *cache_;
    if (c.z) return *c.z;
    if (z_) c.z = *z_;
    else if (strategy_ == "clustered") c.z = default_cluster_order(validate_carving(graph(), carving_input()));
    else throw experiment_error("row has no cluster order z");
    return *c.z;
}

const Drawing& RowContext::drawing() {
    auto& c = *cache_;
    if (c.drawing) return *c.drawing;
    if (strategy_ == "zarankiewicz") {
        c.drawing = zarankiewicz_k3n(uparam(*this, "n"));
        if (!(c.drawing->graph == graph())) throw experiment_error("zarankiewicz rows need the k3n generator");
    } else if (strategy_ == "convex") {
        auto lift = convex_lift(graph(), arrangement());
        c.drawing = std::move(lift.drawing);
        c.report = std::move(lift.report);
    } else {
        throw experiment_error("strategy '" + strategy_ + "' has no drawing");
    }
    return *c.drawing;
}

const PlanarizationReport& RowContext::report() {
    auto& c = *cache_;
    if (c.report) return *c.report;
    if (strategy_ == "zarankiewicz") c.report = report_from_drawing("zarankiewicz", drawing());
    else if (strategy_ == "convex") drawing();
    else if (strategy_ == "carving") c.report = carving_guided(graph(), carving_input());
    else if (strategy_ == "clustered") c.report = clustered_carving(graph(), carving_input(), z());
    else throw experiment_error("strategy '" + strategy_ + "' produces no planarization");
    return *c.report;
}

const RestrictedPartition& RowContext::partition() {
    auto& c = *cache_;
    if (!c.partition) c.partition = restricted_partition(tree(), z());
    return *c.partition;
}

Rational RowContext::metric(const std::string& name) {
    auto& c = *cache_;
    if (auto it = c.metrics.find(name); it != c.metrics.end()) return it->second;
    if (!registry_) throw experiment_error("row evaluated without a metric registry");
    const auto* fn = registry_->find(name);
    if (!fn) throw experiment_error("unknown metric '" + name + "'");
    if (!c.in_progress.insert(name).second) throw experiment_error("metric '" + name + "' depends on itself");
    Rational v;
    try {
        v = (*fn)(*this);
    } catch (...) {
        c.in_progress.erase(name);
        throw;
    }
    c.in_progress.erase(name);
    c.metrics[name] = v;
    return v;
}

// ---------------------------------------------------------------------------
// metrics

void MetricRegistry::add(const std::string& name, MetricFn fn) { metrics_[name] = std::move(fn); }

const MetricFn* MetricRegistry::find(const std::string& name) const {
    auto it = metrics_.find(name);
    return it == metrics_.end() ? nullptr : &it->second;
}

std::vector<std::string> MetricRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : metrics_) out.push_back(k);
    return out;
}

namespace {

Rational num(std::size_t v) { return Rational(static_cast<unsigned long>(v)); }
Rational num(long v) { return Rational(v); }
Rational flag(bool b) { return Rational(b ? 1 : 0); }

const LinearArrangement& xorder_witness(RowContext& ctx) {
    const auto* a = std::get_if<LinearArrangement>(&ctx.report().witness);
    if (!a) throw experiment_error("planarization has no x-order witness");
    return *a;
}

std::size_t choose2(std::size_t k) { return k * (k - 1) / 2; }

}  // namespace

MetricRegistry builtin_metrics() {
    MetricRegistry r;
    // input graph
    r.add("vertices", [](RowContext& c) { return num(c.graph().num_vertices()); });
    r.add("edges", [](RowContext& c) { return num(c.graph().num_edges()); });
    r.add("max_degree", [](RowContext& c) { return num(max_degree(c.graph())); });
    r.add("density", [](RowContext& c) { return density(c.graph()); });
    r.add("cr_formula", [](RowContext& c) { return num(cr_pair_k3n(uparam(c, "n"))); });

    // exact solvers on the input
    r.add("cutwidth", [](RowContext& c) { return num(exact_cutwidth(c.graph(), c.limits()).value); });
    r.add("pathwidth", [](RowContext& c) { return num(exact_pathwidth(c.graph(), c.limits()).value); });
    r.add("bandwidth", [](RowContext& c) { return num(exact_bandwidth(c.graph(), c.limits()).value); });
    r.add("treewidth", [](RowContext& c) { return num(exact_treewidth(c.graph(), c.limits()).width); });
    r.add("treedepth", [](RowContext& c) { return num(exact_treedepth(c.graph(), c.limits()).depth); });
    r.add("carving_width", [](RowContext& c) { return num(exact_carving_width(c.graph(), c.limits()).width); });
    r.add("pathwidth_witness_separation", [](RowContext& c) {
        return num(edge_separation(c.graph(), exact_pathwidth(c.graph(), c.limits()).witness));
    });

    // input arrangement
    r.add("input_separation", [](RowContext& c) { return num(edge_separation(c.graph(), c.arrangement())); });
    r.add("input_vertex_separation", [](RowContext& c) { return num(vertex_separation(c.graph(), c.arrangement())); });
    r.add("input_span", [](RowContext& c) { return num(span(c.graph(), c.arrangement())); });

    // drawings
    r.add("crossings", [](RowContext& c) { return num(crossings(c.drawing()).size()); });
    r.add("crossing_graph_density", [](RowContext& c) { return density(crossing_graph(c.drawing())); });

    // planarization reports
    r.add("crossings_added", [](RowContext& c) { return num(c.report().crossings_added); });
    r.add("claimed_width", [](RowContext& c) { return num(c.report().claimed_width); });
    r.add("validated_width", [](RowContext& c) { return num(c.report().validated_width); });
    r.add("planar_vertices", [](RowContext& c) { return num(c.report().planarization.planar.num_vertices()); });
    r.add("planar_max_degree", [](RowContext& c) { return num(max_degree(c.report().planarization.planar)); });
    r.add("planar_is_planar", [](RowContext& c) { return flag(is_planar(c.report().planarization.planar)); });
    r.add("chains_recover_graph",
          [](RowContext& c) { return flag(contract_dummies(c.report().planarization) == c.graph()); });
    r.add("xorder_separation",
          [](RowContext& c) { return num(edge_separation(c.report().planarization.planar, xorder_witness(c))); });
    r.add("xorder_vertex_separation",
          [](RowContext& c) { return num(vertex_separation(c.report().planarization.planar, xorder_witness(c))); });
    r.add("planar_span", [](RowContext& c) { return num(span(c.report().planarization.planar, xorder_witness(c))); });
    r.add("planar_pathwidth",
          [](RowContext& c) { return num(exact_pathwidth(c.report().planarization.planar, c.limits()).value); });
    r.add("planar_pathwidth_witness_separation", [](RowContext& c) {
        const auto& p = c.report().planarization.planar;
        return num(edge_separation(p, exact_pathwidth(p, c.limits()).witness));
    });
    r.add("planar_treewidth",
          [](RowContext& c) { return num(exact_treewidth(c.report().planarization.planar, c.limits()).width); });
    r.add("output_carving_width", [](RowContext& c) {
        const auto* cd = std::get_if<CarvingDecomposition>(&c.report().witness);
        if (!cd) throw experiment_error("planarization has no carving witness");
        return num(validate_carving(c.report().planarization.planar, *cd));
    });
    r.add("transpositions_total", [](RowContext& c) {
        std::size_t t = 0;
        for (const auto& rr : c.report().routings) t += rr.transpositions.size();
        return num(t);
    });
    r.add("inversions_total", [](RowContext& c) {
        std::size_t t = 0;
        for (const auto& rr : c.report().routings) t += inversion_count(rr.entry_order, rr.exit_order);
        return num(t);
    });
    r.add("cluster_count", [](RowContext& c) { return num(c.report().clusters.size()); });
    r.add("cluster_bounds_hold", [](RowContext& c) {
        const auto w = validate_carving(c.graph(), c.carving_input());
        for (const auto& cl : c.report().clusters)
            if (cl.crossings > choose2(cl.wires) || cl.wires > 2 * w + cl.internal_edges) return flag(false);
        return flag(true);
    });

    // carving decompositions and conversions
    r.add("carving_input_width", [](RowContext& c) { return num(validate_carving(c.graph(), c.carving_input())); });
    r.add("caterpillar_width", [](RowContext& c) {
        return num(validate_carving(c.graph(), caterpillar_carving_from_arrangement(c.graph(), c.arrangement())));
    });
    r.add("branch_from_carving_width",
          [](RowContext& c) { return num(validate_branch(c.graph(), carving_to_branch(c.graph(), c.carving_input()))); });
    r.add("carving_from_branch_width", [](RowContext& c) {
        auto bd = carving_to_branch(c.graph(), c.carving_input());
        return num(validate_carving(c.graph(), branch_to_carving(c.graph(), bd)));
    });

    // restricted partitions
    r.add("tree_size", [](RowContext& c) { return num(c.tree().size()); });
    r.add("cluster_order", [](RowContext& c) { return num(c.z()); });
    r.add("block_count", [](RowContext& c) { return num(c.partition().blocks.size()); });
    r.add("partition_valid",
          [](RowContext& c) { return flag(!check_restricted_partition(c.tree(), c.partition()).has_value()); });
    r.add("max_block_size", [](RowContext& c) {
        std::size_t m = 0;
        for (const auto& b : c.partition().blocks) m = std::max(m, b.size());
        return num(m);
    });
    return r;
}

// ---------------------------------------------------------------------------
// specs

ExperimentSpec parse_spec(const json& j) {
    ExperimentSpec s;
    if (!j.is_object()) throw experiment_error("spec must be a JSON object");
    s.name = j.at("name").get<std::string>();
    s.criterion = j.value("criterion", 0);
    s.description = j.value("description", "");
    if (!j.contains("family") || !j.at("family").is_array()) throw experiment_error(s.name + ": family list missing");
    if (!j.contains("checks") || !j.at("checks").is_array()) throw experiment_error(s.name + ": checks list missing");
    static const std::set<std::string> strategies{"none",   "zarankiewicz", "convex",
                                                  "carving", "clustered",   "restricted_partition"};
    auto strategy_ok = [&](const json& x) {
        if (x.contains("strategy") && !strategies.count(x.at("strategy").get<std::string>()))
            throw experiment_error(s.name + ": unknown strategy '" + x.at("strategy").get<std::string>() + "'");
    };
    strategy_ok(j);
    for (const auto& f : j.at("family")) {
        if (!f.contains("generator")) throw experiment_error(s.name + ": family entry without generator");
        strategy_ok(f);
    }
    s.raw = j;
    return s;
}

ExperimentSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw experiment_error("cannot open spec " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw experiment_error(path + ": " + e.what());
    }
    return parse_spec(j);
}

std::vector<std::string> list_specs(const std::string& directory) {
    std::vector<std::string> out;
    for (const auto& entry : std::filesystem::directory_iterator(directory))
        if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// running

namespace {

const std::set<std::string> entry_keys{"generator", "strategy", "arrangement", "carving", "z"};

std::vector<json> expand_values(const json& v) {
    if (v.is_object() && v.contains("range")) {
        auto lo = v.at("range").at(0).get<long>(), hi = v.at("range").at(1).get<long>();
        long step = v.value("step", 1L);
        if (step <= 0) throw experiment_error("range step must be positive");
        std::vector<json> out;
        for (long x = lo; x <= hi; x += step) out.push_back(x);
        return out;
    }
    if (v.is_object() && v.contains("values")) return v.at("values").get<std::vector<json>>();
    return {v};
}

// cartesian product of the expanded parameters, first key outermost
std::vector<json> expand_entry(const json& entry) {
    std::vector<json> rows{json::object()};
    rows[0]["generator"] = entry.at("generator");
    for (const auto& [key, value] : entry.items()) {
        if (entry_keys.count(key)) continue;
        std::vector<json> next;
        for (const auto& row : rows)
            for (const auto& x : expand_values(value)) {
                json r = row;
                r[key] = x;
                next.push_back(std::move(r));
            }
        rows = std::move(next);
    }
    return rows;
}

std::string label_of(const json& params) {
    std::string s = params.at("generator").get<std::string>() + "(";
    bool first = true;
    for (const auto& [k, v] : params.items()) {
        if (k == "generator") continue;
        if (!first) s += ",";
        first = false;
        s += k + "=" + v.dump();
    }
    return s + ")";
}

json value_json(const Rational& r) {
    if (is_integer(r) && r.get_num().fits_slong_p()) return r.get_num().get_si();
    return to_string(r);
}

bool matches(const json& where, const json& params) {
    if (where.is_null()) return true;
    for (const auto& [k, v] : where.items()) {
        if (!params.contains(k)) return false;
        if (v.is_array()) {
            if (std::find(v.begin(), v.end(), params.at(k)) == v.end()) return false;
        } else if (params.at(k) != v) {
            return false;
        }
    }
    return true;
}

// number | "name" (parameter or metric) | {"rational": "p/q"} | {"op": ..., "args": [...]}
Rational evaluate(const json& x, RowContext& ctx) {
    if (x.is_number_integer()) return Rational(x.get<long>());
    if (x.is_string()) {
        auto name = x.get<std::string>();
        if (ctx.has_param(name)) return Rational(ctx.param(name));
        return ctx.metric(name);
    }
    if (x.is_object() && x.contains("rational")) return parse_rational(x.at("rational").get<std::string>());
    if (!x.is_object() || !x.contains("op")) throw experiment_error("bad operand " + x.dump());
    const auto op = x.at("op").get<std::string>();
    std::vector<Rational> a;
    for (const auto& arg : x.at("args")) a.push_back(evaluate(arg, ctx));
    auto need = [&](std::size_t k) {
        if (a.size() != k) throw experiment_error("operator " + op + " takes " + std::to_string(k) + " arguments");
    };
    if (op == "add" || op == "mul" || op == "max" || op == "min") {
        if (a.empty()) throw experiment_error("operator " + op + " needs arguments");
        Rational acc = a[0];
        for (std::size_t i = 1; i < a.size(); ++i) {
            if (op == "add") acc += a[i];
            else if (op == "mul") acc *= a[i];
            else if (op == "max") acc = std::max(acc, a[i]);
            else acc = std::min(acc, a[i]);
        }
        return acc;
    }
    if (op == "sub") {
        need(2);
        return a[0] - a[1];
    }
    if (op == "div") {
        need(2);
        if (a[1] == 0) throw experiment_error("division by zero");
        return a[0] / a[1];
    }
    if (op == "floor" || op == "ceil") {
        need(1);
        Integer q;
        if (op == "floor") mpz_fdiv_q(q.get_mpz_t(), a[0].get_num_mpz_t(), a[0].get_den_mpz_t());
        else mpz_cdiv_q(q.get_mpz_t(), a[0].get_num_mpz_t(), a[0].get_den_mpz_t());
        return Rational(q);
    }
    if (op == "pow") {
        need(2);
        if (!is_integer(a[1]) || a[1] < 0) throw experiment_error("pow needs a non-negative integer exponent");
        Rational acc = 1;
        for (long i = 0; i < a[1].get_num().get_si(); ++i) acc *= a[0];
        return acc;
    }
    if (op == "binom") {
        need(2);
        Integer out;
        mpz_bin_ui(out.get_mpz_t(), a[0].get_num_mpz_t(), a[1].get_num().get_ui());
        return Rational(out);
    }
    throw experiment_error("unknown operator '" + op + "'");
}

void collect_names(const json& x, std::vector<std::string>& out) {
    if (x.is_string()) {
        out.push_back(x.get<std::string>());
    } else if (x.is_object() && x.contains("args")) {
        for (const auto& a : x.at("args")) collect_names(a, out);
    }
}

struct Row {
    json params;
    std::map<std::string, std::optional<Rational>> values;  // operand dump -> value
};

const std::set<std::string> row_checks{"equal", "le", "ge", "lt", "gt"};

bool compare(const std::string& type, const Rational& l, const Rational& r) {
    if (type == "equal") return l == r;
    if (type == "le") return l <= r;
    if (type == "ge") return l >= r;
    if (type == "lt") return l < r;
    return l > r;
}

std::string check_id(const json& c, std::size_t k) {
    return c.value("id", c.at("type").get<std::string>() + "#" + std::to_string(k));
}

}  // namespace

json ExperimentReport::summary() const {
    json agg = json::array();
    for (const auto& a : aggregate) agg.push_back({{"check", a.id}, {"pass", a.pass}, {"detail", a.detail}});
    return {{"spec", name},         {"criterion", criterion},     {"summary", true}, {"rows", rows.size()},
            {"failed_rows", failed_rows}, {"aggregate", agg}, {"pass", pass}};
}

ExperimentReport run_experiment(const ExperimentSpec& spec, const MetricRegistry& registry) {
    const auto& j = spec.raw;
    ExperimentReport rep;
    rep.name = spec.name;
    rep.criterion = spec.criterion;

    SolverLimits limits = default_limits();
    if (j.contains("limits")) limits.apply(j.at("limits").get<std::string>());

    const auto& checks = j.at("checks");
    for (const auto& c : checks) {
        auto t = c.at("type").get<std::string>();
        static const std::set<std::string> known{"equal",    "le",           "ge",           "lt",
                                                 "gt",       "nondecreasing", "constant",    "eventually_gt",
                                                 "within_factor"};
        if (!known.count(t)) throw experiment_error(spec.name + ": unknown check type '" + t + "'");
    }

    // operands every row must evaluate: listed metrics and the aggregate operands
    std::vector<json> row_operands;
    for (const auto& m : j.value("metrics", json::array())) row_operands.push_back(m);
    for (const auto& c : checks) {
        auto t = c.at("type").get<std::string>();
        if (t == "nondecreasing" || t == "constant" || t == "eventually_gt") row_operands.push_back(c.at("metric"));
        if (t == "eventually_gt") row_operands.push_back(c.at("threshold"));
        if (t == "within_factor") row_operands.push_back(c.at("value"));
    }

    std::vector<Row> table;
    std::size_t index = 0;
    for (const auto& entry : j.at("family")) {
        const auto strategy = entry.value("strategy", j.value("strategy", std::string("none")));
        const auto arrangement = entry.value("arrangement", j.value("arrangement", std::string("identity")));
        const auto carving = entry.value("carving", j.value("carving", std::string("exact")));
        std::vector<std::optional<std::size_t>> zs{std::nullopt};
        const json zspec = entry.contains("z") ? entry.at("z") : j.value("z", json(nullptr));
        if (!zspec.is_null()) {
            zs.clear();
            for (const auto& z : expand_values(zspec.is_array() ? json{{"values", zspec}} : zspec))
                zs.push_back(z.get<std::size_t>());
        }
        for (const auto& base : expand_entry(entry))
            for (auto z : zs) {
                json params = base;
                if (z) params["z"] = *z;
                RowContext ctx(params, strategy, arrangement, carving, z, limits);
                ctx.use_registry(registry);
                json row{{"spec", spec.name}, {"row", index++}, {"instance", label_of(params)}, {"params", params}};
                row["strategy"] = strategy;
                Row stored{params, {}};
                json metrics = json::object(), outcomes = json::array();
                json errors = json::array();
                bool row_pass = true;

                auto eval = [&](const json& operand) -> std::optional<Rational> {
                    auto key = operand.is_string() ? operand.get<std::string>() : operand.dump();
                    if (auto it = stored.values.find(key); it != stored.values.end()) return it->second;
                    std::optional<Rational> v;
                    try {
                        v = evaluate(operand, ctx);
                        if (!operand.is_number()) metrics[key] = value_json(*v);
                    } catch (const std::exception& e) {
                        errors.push_back({{"operand", key}, {"error", e.what()}});
                        row_pass = false;
                    }
                    stored.values[key] = v;
                    return v;
                };

                for (const auto& op : row_operands) eval(op);
                for (std::size_t k = 0; k < checks.size(); ++k) {
                    const auto& c = checks[k];
                    auto t = c.at("type").get<std::string>();
                    if (!row_checks.count(t) || !matches(c.value("where", json(nullptr)), params)) continue;
                    auto l = eval(c.at("left")), r = eval(c.at("right"));
                    bool ok = l && r && compare(t, *l, *r);
                    row_pass &= ok;
                    json o{{"check", check_id(c, k)}, {"pass", ok}};
                    if (l) o["left"] = value_json(*l);
                    if (r) o["right"] = value_json(*r);
                    outcomes.push_back(o);
                }
                row["metrics"] = metrics;
                row["checks"] = outcomes;
                if (!errors.empty()) row["errors"] = errors;
                row["pass"] = row_pass;
                if (!row_pass) ++rep.failed_rows;
                rep.rows.push_back(std::move(row));
                table.push_back(std::move(stored));
            }
    }

    // aggregate checks over the rows selected by "where"
    for (std::size_t k = 0; k < checks.size(); ++k) {
        const auto& c = checks[k];
        auto t = c.at("type").get<std::string>();
        if (row_checks.count(t)) continue;
        CheckOutcome out{check_id(c, k), true, ""};
        auto where = c.value("where", json(nullptr));
        auto key_of = [](const json& op) { return op.is_string() ? op.get<std::string>() : op.dump(); };
        std::vector<const Row*> sel;
        for (const auto& row : table)
            if (matches(where, row.params)) sel.push_back(&row);
        auto value = [&](const Row* row, const json& op) { return row->values.at(key_of(op)); };
        auto by_value = [&](const Row* row, const std::string& by) { return row->params.at(by).get<long>(); };

        if (t == "nondecreasing" || t == "eventually_gt") {
            const auto by = c.at("by").get<std::string>();
            std::stable_sort(sel.begin(), sel.end(), [&](auto a, auto b) { return by_value(a, by) < by_value(b, by); });
        }
        bool missing = false;
        for (auto row : sel) {
            if (t == "nondecreasing" || t == "constant" || t == "eventually_gt") missing |= !value(row, c.at("metric"));
            if (t == "eventually_gt") missing |= !value(row, c.at("threshold"));
            if (t == "within_factor") missing |= !value(row, c.at("value"));
        }
        if (missing) {
            out.pass = false;
            out.detail = "a selected row has no value";
        } else if (t == "nondecreasing") {
            for (std::size_t i = 1; i < sel.size(); ++i)
                if (*value(sel[i], c.at("metric")) < *value(sel[i - 1], c.at("metric"))) {
                    out.pass = false;
                    out.detail = "decreases at " + sel[i]->params.dump();
                    break;
                }
        } else if (t == "constant") {
            for (std::size_t i = 1; i < sel.size(); ++i)
                if (*value(sel[i], c.at("metric")) != *value(sel[0], c.at("metric"))) {
                    out.pass = false;
                    out.detail = "differs at " + sel[i]->params.dump();
                    break;
                }
            if (out.pass && !sel.empty()) out.detail = "value " + to_string(*value(sel[0], c.at("metric")));
        } else if (t == "eventually_gt") {
            // smallest start from which every later row exceeds the threshold
            const auto by = c.at("by").get<std::string>();
            std::optional<long> start;
            for (std::size_t i = sel.size(); i-- > 0;) {
                if (!(*value(sel[i], c.at("metric")) > *value(sel[i], c.at("threshold")))) break;
                start = by_value(sel[i], by);
            }
            const long at_most = c.at("at_most").get<long>();
            out.pass = start && *start <= at_most;
            out.detail = start ? "exceeds from " + by + "=" + std::to_string(*start) : "never exceeds at the last row";
        } else if (t == "within_factor") {
            const auto ref_where = c.at("reference");
            const Row* ref = nullptr;
            for (const auto& row : table)
                if (matches(ref_where, row.params)) {
                    ref = &row;
                    break;
                }
            Rational factor = c.at("factor").is_number_integer() ? Rational(c.at("factor").get<long>())
                                                    : parse_rational(c.at("factor").get<std::string>());
            if (!ref || !value(ref, c.at("value"))) {
                out.pass = false;
                out.detail = "reference row missing";
            } else {
                const Rational rv = *value(ref, c.at("value"));
                out.detail = "reference " + to_string(rv);
                for (auto row : sel) {
                    const Rational v = *value(row, c.at("value"));
                    if (v > factor * rv || rv > factor * v) {
                        out.pass = false;
                        out.detail += "; " + to_string(v) + " at " + row->params.dump() + " is outside the factor";
                    }
                }
            }
        }
        rep.aggregate.push_back(out);
    }

    rep.pass = rep.failed_rows == 0;
    for (const auto& a : rep.aggregate) rep.pass &= a.pass;
    return rep;
}

void write_report(std::ostream& out, const ExperimentReport& report) {
    for (const auto& row : report.rows) out << row.dump() << '\n';
    out << report.summary().dump() << '\n';
}

}  // namespace planwidth
