#pragma once

#include <iosfwd>

namespace planwidth {

class MetricRegistry;

/// Entry point of the planwidth command. Exit codes: 0 ok, 1 failed check or failed
/// computation, 2 usage or input error. `extra` adds metrics to experiment runs.
int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err,
             void (*extra)(MetricRegistry&) = nullptr);

}  // namespace planwidth
