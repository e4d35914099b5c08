#include "polyconf/io/report_file.hpp"

#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "polyconf/error.hpp"
#include "polyconf/io/text_format.hpp"

namespace polyconf::io {

using nlohmann::json;

namespace {

json metrics_to_json(const metrics::PolymerMetrics& m, bool coverage, bool with_identity) {
    json j;
    if (with_identity) {
        j["name"] = m.name;
        j["spec_hash"] = m.spec_hash;
    }
    j["s_mat_r"] = round_real(m.s_mat_r);
    j["s_mat_p"] = round_real(m.s_mat_p);
    j["e_mat_r"] = round_real(m.e_mat_r);
    j["e_mat_p"] = round_real(m.e_mat_p);
    if (coverage) {
        j["s_cov_r"] = round_real(m.s_cov_r);
        j["s_cov_p"] = round_real(m.s_cov_p);
    }
    return j;
}

void metrics_from_json(const json& j, metrics::PolymerMetrics& m) {
    m.name = j.value("name", "");
    m.spec_hash = j.value("spec_hash", "");
    m.s_mat_r = j.value("s_mat_r", 0.0);
    m.s_mat_p = j.value("s_mat_p", 0.0);
    m.e_mat_r = j.value("e_mat_r", 0.0);
    m.e_mat_p = j.value("e_mat_p", 0.0);
    m.s_cov_r = j.value("s_cov_r", 0.0);
    m.s_cov_p = j.value("s_cov_p", 0.0);
}

} // namespace

std::string serialize_report(const metrics::MetricReport& report, const ReportContext& ctx) {
    json j;
    j["format"] = "polyconf-report";
    j["version"] = 1;
    j["tool_version"] = ctx.tool_version;
    j["seed"] = ctx.seed;
    j["delta_angstrom"] = round_real(report.delta);
    j["energy_oracle"] = report.energy_oracle_id;
    j["include_coverage"] = report.include_coverage;
    json rows = json::array();
    for (const metrics::PolymerMetrics& m : report.polymers)
        rows.push_back(metrics_to_json(m, report.include_coverage, true));
    j["polymers"] = rows;
    j["aggregate"] = {{"mean", metrics_to_json(report.mean, report.include_coverage, false)},
                      {"median", metrics_to_json(report.median, report.include_coverage, false)}};
    return j.dump(1) + "\n";
}

void write_report(const metrics::MetricReport& report, const ReportContext& ctx,
                  const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write report file '" + path + "'");
    out << serialize_report(report, ctx);
}

metrics::MetricReport parse_report(const std::string& text, const std::string& filename,
                                   ReportContext* ctx) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw polyconf::ParseError(filename + ": " + e.what());
    }
    if (j.value("format", "") != "polyconf-report" || j.value("version", 0) != 1)
        throw polyconf::ParseError(filename + ": expected a polyconf-report v1 document");
    if (ctx) {
        ctx->seed = j.value("seed", std::uint64_t{0});
        ctx->tool_version = j.value("tool_version", "");
    }
    metrics::MetricReport report;
    report.delta = j.value("delta_angstrom", 25.0);
    report.energy_oracle_id = j.value("energy_oracle", "");
    report.include_coverage = j.value("include_coverage", false);
    for (const json& row : j.at("polymers")) {
        metrics::PolymerMetrics m;
        metrics_from_json(row, m);
        report.polymers.push_back(m);
    }
    metrics_from_json(j.at("aggregate").at("mean"), report.mean);
    metrics_from_json(j.at("aggregate").at("median"), report.median);
    return report;
}

metrics::MetricReport read_report(const std::string& path, ReportContext* ctx) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open report file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_report(buf.str(), path, ctx);
}

std::string render_report_table(const metrics::MetricReport& report) {
    std::ostringstream out;
    out << std::left;
    auto row = [&](const std::string& name, const metrics::PolymerMetrics& m) {
        out << "  " << std::setw(18) << name << std::right;
        out << std::setw(14) << format_real(m.s_mat_r) << std::setw(14) << format_real(m.s_mat_p)
            << std::setw(14) << format_real(m.e_mat_r) << std::setw(14) << format_real(m.e_mat_p);
        if (report.include_coverage)
            out << std::setw(14) << format_real(m.s_cov_r) << std::setw(14)
                << format_real(m.s_cov_p);
        out << std::left << "\n";
    };
    out << "  " << std::setw(18) << "polymer" << std::right << std::setw(14) << "S-MAT-R"
        << std::setw(14) << "S-MAT-P" << std::setw(14) << "E-MAT-R" << std::setw(14) << "E-MAT-P";
    if (report.include_coverage)
        out << std::setw(14) << "S-COV-R" << std::setw(14) << "S-COV-P";
    out << std::left << "\n";
    for (const metrics::PolymerMetrics& m : report.polymers)
        row(m.name, m);
    row("mean", report.mean);
    row("median", report.median);
    return out.str();
}

} // namespace polyconf::io
