#pragma once

#include <string>

#include "dsm/solvers.hpp"

namespace dsm {

/// CSV with header `n,t,a,residual,error,bound`; absent optionals are
/// empty fields. Formatting is fixed (%.17g) so identical runs produce
/// byte-identical files.
std::string trace_to_csv(const Trace& trace);

void write_trace_csv(const Trace& trace, const std::string& path);

} // namespace dsm
