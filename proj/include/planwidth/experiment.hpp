#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "planwidth/json_io.hpp"
#include "planwidth/limits.hpp"

namespace planwidth {

class experiment_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MetricRegistry;

/// Lazily built objects of one experiment row. Everything is computed on first use and cached.
class RowContext {
public:
    RowContext(json params, std::string strategy, std::string arrangement, std::string carving,
               std::optional<std::size_t> z, SolverLimits limits);
    ~RowContext();

    const json& params() const { return params_; }
    /// Integer parameter of the generator entry (n, s, k, z, ...).
    long param(const std::string& name) const;
    bool has_param(const std::string& name) const;
    const SolverLimits& limits() const { return limits_; }
    const std::string& strategy() const { return strategy_; }

    const Graph& graph();
    const Tree& tree();  // random_binary_tree rows only
    const LinearArrangement& arrangement();
    const CarvingDecomposition& carving_input();
    std::size_t z();
    /// Drawing of the geometric strategies (zarankiewicz, convex).
    const Drawing& drawing();
    const PlanarizationReport& report();
    const RestrictedPartition& partition();

    /// Cached metric value through the registry the row is evaluated with.
    Rational metric(const std::string& name);
    void use_registry(const MetricRegistry& registry) { registry_ = &registry; }

private:
    struct Cache;
    const MetricRegistry* registry_ = nullptr;
    json params_;
    std::string strategy_, arrangement_, carving_;
    std::optional<std::size_t> z_;
    SolverLimits limits_;
    std::unique_ptr<Cache> cache_;
};

using MetricFn = std::function<Rational(RowContext&)>;

class MetricRegistry {
public:
    void add(const std::string& name, MetricFn fn);
    const MetricFn* find(const std::string& name) const;
    std::vector<std::string> names() const;

private:
    std::map<std::string, MetricFn> metrics_;
};

/// Registry holding the built-in metrics (validators and exact solvers). Callers add their own
/// (the oracle library does) before running experiments.
MetricRegistry builtin_metrics();

struct ExperimentSpec {
    std::string name;
    int criterion = 0;
    std::string description;
    json raw;
};

ExperimentSpec parse_spec(const json& j);
ExperimentSpec load_spec(const std::string& path);

struct CheckOutcome {
    std::string id;
    bool pass = false;
    std::string detail;
};

struct ExperimentReport {
    std::string name;
    int criterion = 0;
    std::vector<json> rows;
    std::vector<CheckOutcome> aggregate;
    std::size_t failed_rows = 0;
    bool pass = true;

    json summary() const;
};

ExperimentReport run_experiment(const ExperimentSpec& spec, const MetricRegistry& registry);

/// JSON lines: one per row, then the summary line.
void write_report(std::ostream& out, const ExperimentReport& report);

/// Spec files of a directory in name order.
std::vector<std::string> list_specs(const std::string& directory);

}  // namespace planwidth
