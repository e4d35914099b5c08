#ifndef POLYCONF_IO_REPORT_FILE_HPP
#define POLYCONF_IO_REPORT_FILE_HPP

#include <cstdint>
#include <string>

#include "polyconf/metrics/metrics.hpp"

namespace polyconf::io {

struct ReportContext {
    std::uint64_t seed = 0;
    std::string tool_version;
};

std::string serialize_report(const metrics::MetricReport& report, const ReportContext& ctx);
void write_report(const metrics::MetricReport& report, const ReportContext& ctx,
                  const std::string& path);

// Parses a report document (round-trip used by tests and tooling).
metrics::MetricReport parse_report(const std::string& text, const std::string& filename,
                                   ReportContext* ctx = nullptr);
metrics::MetricReport read_report(const std::string& path, ReportContext* ctx = nullptr);

// Table rendering shared by the CLI.
std::string render_report_table(const metrics::MetricReport& report);

} // namespace polyconf::io

#endif
