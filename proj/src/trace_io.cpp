#include "dsm/trace_io.hpp"

#include <cstdio>
#include <fstream>

#include "dsm/errors.hpp"

namespace dsm {
namespace {

std::string fmt(Real x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

std::string trace_to_csv(const Trace& trace) {
    std::string out = "n,t,a,residual,error,bound\n";
    for (const auto& row : trace.rows) {
        out += std::to_string(row.n);
        out += ',';
        out += fmt(row.t);
        out += ',';
        out += fmt(row.a);
        out += ',';
        out += fmt(row.residual);
        out += ',';
        if (row.error) out += fmt(*row.error);
        out += ',';
        if (row.bound) out += fmt(*row.bound);
        out += '\n';
    }
    return out;
}

void write_trace_csv(const Trace& trace, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + path);
    f << trace_to_csv(trace);
    if (!f) throw ConfigError("failed writing output file: " + path);
}

} // namespace dsm
