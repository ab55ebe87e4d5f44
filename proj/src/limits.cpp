#include "planwidth/limits.hpp"

#include <cstdlib>
#include <sstream>

namespace planwidth {

void SolverLimits::apply(const std::string& overrides) {
    std::istringstream in(overrides);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("limit override needs key=value: " + item);
        auto key = item.substr(0, eq);
        std::size_t value = std::stoul(item.substr(eq + 1));
        if (key == "cutwidth") cutwidth = value;
        else if (key == "pathwidth") pathwidth = value;
        else if (key == "bandwidth") bandwidth = value;
        else if (key == "treewidth") treewidth = value;
        else if (key == "treedepth") treedepth = value;
        else if (key == "carving") carving = value;
        else throw std::invalid_argument("unknown solver limit: " + key);
    }
}

SolverLimits SolverLimits::from_env() {
    SolverLimits l;
    if (const char* env = std::getenv("PLANWIDTH_LIMITS")) l.apply(env);
    return l;
}

const SolverLimits& default_limits() {
    static const SolverLimits limits = SolverLimits::from_env();
    return limits;
}

}  // namespace planwidth
