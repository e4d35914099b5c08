#include "polyconf/io/external_oracles.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "polyconf/error.hpp"
#include "polyconf/io/conformation_file.hpp"
#include "polyconf/io/text_format.hpp"

namespace polyconf::io {

using nlohmann::json;

namespace {

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'')
            out += "'\\''";
        else
            out += c;
    }
    out += "'";
    return out;
}

class TempFile {
public:
    explicit TempFile(const char* suffix) {
        std::string tmpl =
            (std::filesystem::temp_directory_path() / ("polyconf-XXXXXX" + std::string(suffix)))
                .string();
        std::vector<char> buf(tmpl.begin(), tmpl.end());
        buf.push_back('\0');
        int fd = ::mkstemps(buf.data(), static_cast<int>(std::string(suffix).size()));
        if (fd < 0)
            throw IoError("cannot create temporary file");
        ::close(fd);
        path_ = buf.data();
    }
    ~TempFile() {
        std::error_code ec;
        std::filesystem::remove(path_, ec);
    }
    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

std::string run_and_capture(const std::string& command) {
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe)
        throw OracleFailureError("cannot launch external command: " + command);
    std::string out;
    char buf[512];
    std::size_t n;
    while ((n = ::fread(buf, 1, sizeof(buf), pipe)) > 0)
        out.append(buf, n);
    int rc = ::pclose(pipe);
    if (rc != 0)
        throw OracleFailureError("external command failed (exit " + std::to_string(rc) +
                                 "): " + command);
    return out;
}

void run_checked(const std::string& command) {
    int rc = std::system(command.c_str());
    if (rc != 0)
        throw OracleFailureError("external command failed (exit " + std::to_string(rc) +
                                 "): " + command);
}

json run_exchange(const std::string& command, const json& request) {
    TempFile req(".json");
    TempFile resp(".json");
    {
        std::ofstream out(req.path());
        out << request.dump();
    }
    run_checked(command + " " + shell_quote(req.path()) + " " + shell_quote(resp.path()));
    std::ifstream in(resp.path());
    if (!in)
        throw OracleFailureError("external command produced no response file");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw OracleFailureError(std::string("malformed response from external command: ") + e.what());
    }
}

} // namespace

double ExternalEnergyOracle::energy(const repr::PolymerConformation& conf,
                                    const repr::PolymerGraph& graph) const {
    TempFile file(".pcc");
    write_conformations({conf}, graph, file.path());
    std::string out = run_and_capture(command_ + " " + shell_quote(file.path()));
    std::istringstream in(out);
    double value = 0.0;
    if (!(in >> value))
        throw OracleFailureError("external energy command printed no number: '" + out + "'");
    return value;
}

std::vector<double> SubprocessTorsionDenoiser::predict(std::span<const double> noisy_torsions,
                                                       int timestep,
                                                       std::span<const double> condition,
                                                       int unit_index) const {
    json request;
    request["kind"] = "torsion_denoise";
    request["timestep"] = timestep;
    request["unit_index"] = unit_index + 1;
    request["noisy_torsions"] = std::vector<double>(noisy_torsions.begin(), noisy_torsions.end());
    request["condition"] = std::vector<double>(condition.begin(), condition.end());
    json response = run_exchange(command_, request);
    if (!response.contains("noise") || !response["noise"].is_array())
        throw OracleFailureError("torsion denoiser response is missing 'noise'");
    std::vector<double> out = response["noise"].get<std::vector<double>>();
    if (out.size() != noisy_torsions.size())
        throw OracleFailureError("torsion denoiser response has a wrong dimension");
    return out;
}

std::vector<geom::Mat3> SubprocessRotationDenoiser::predict(
    const std::vector<geom::RigidTransform>& noisy_orientations, int timestep,
    const gen::EmbeddingMatrix& condition) const {
    json request;
    request["kind"] = "rotation_denoise";
    request["timestep"] = timestep;
    json orientations = json::array();
    for (const geom::RigidTransform& o : noisy_orientations) {
        json rot = json::array();
        for (int r = 0; r < 3; ++r)
            rot.push_back({o.rotation.matrix()(r, 0), o.rotation.matrix()(r, 1),
                           o.rotation.matrix()(r, 2)});
        orientations.push_back(
            {{"rotation", rot},
             {"translation", {o.translation.x, o.translation.y, o.translation.z}}});
    }
    request["orientations"] = orientations;
    json cond = json::array();
    for (int r = 0; r < condition.rows(); ++r) {
        auto row = condition.row(r);
        cond.push_back(std::vector<double>(row.begin(), row.end()));
    }
    request["condition"] = cond;

    json response = run_exchange(command_, request);
    if (!response.contains("rotations") || !response["rotations"].is_array() ||
        response["rotations"].size() != noisy_orientations.size())
        throw OracleFailureError("rotation denoiser response has a wrong shape");
    std::vector<geom::Mat3> out;
    for (const json& jm : response["rotations"]) {
        geom::Mat3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                m(r, c) = jm.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c)).get<double>();
        out.push_back(m);
    }
    return out;
}

gen::EmbeddingMatrix SubprocessEncoderOracle::encode(
    const repr::PolymerGraph& graph,
    const std::vector<std::optional<repr::UnitConformation>>& units) const {
    if (static_cast<int>(units.size()) != graph.n_units())
        throw OracleFailureError("encoder input length does not match the graph");
    json request;
    request["kind"] = "encode";
    request["spec_hash"] = graph.spec_hash_hex();
    request["n_units"] = graph.n_units();
    json junits = json::array();
    for (int i = 0; i < graph.n_units(); ++i) {
        const auto& u = units[static_cast<std::size_t>(i)];
        if (!u) {
            junits.push_back(nullptr);
            continue;
        }
        json coords = json::array();
        for (const geom::Vec3& c : u->coords)
            coords.push_back({c.x, c.y, c.z});
        junits.push_back({{"unit", i + 1}, {"coords", coords}});
    }
    request["units"] = junits;

    json response = run_exchange(command_, request);
    if (!response.contains("embedding") || !response["embedding"].is_array() ||
        static_cast<int>(response["embedding"].size()) != graph.n_units())
        throw OracleFailureError("encoder response has a wrong shape");
    const auto& rows = response["embedding"];
    int dim = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    if (dim < 1)
        throw OracleFailureError("encoder response rows are empty");
    gen::EmbeddingMatrix out(graph.n_units(), dim);
    for (int r = 0; r < graph.n_units(); ++r) {
        const json& row = rows[static_cast<std::size_t>(r)];
        if (static_cast<int>(row.size()) != dim)
            throw OracleFailureError("encoder response rows have uneven widths");
        for (int c = 0; c < dim; ++c) {
            double v = row[static_cast<std::size_t>(c)].get<double>();
            if (!std::isfinite(v))
                throw OracleFailureError("encoder response contains a non-finite value");
            out.at(r, c) = v;
        }
    }
    return out;
}

} // namespace polyconf::io
