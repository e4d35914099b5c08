#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "helpers/test_helpers.hpp"
#include "polyconf/error.hpp"
#include "polyconf/gen/pipeline.hpp"
#include "polyconf/io/conformation_file.hpp"
#include "polyconf/io/decomposition_file.hpp"
#include "polyconf/io/external_oracles.hpp"
#include "polyconf/io/report_file.hpp"
#include "polyconf/io/spec_file.hpp"
#include "polyconf/io/text_format.hpp"
#include "polyconf/metrics/metrics.hpp"

using namespace polyconf;
using testing::branched_unit;
using testing::pe_unit;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        std::string tmpl = (std::filesystem::temp_directory_path() / "polyconf-test-XXXXXX").string();
        std::vector<char> buf(tmpl.begin(), tmpl.end());
        buf.push_back('\0');
        REQUIRE(::mkdtemp(buf.data()) != nullptr);
        path = buf.data();
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

io::PolymerSpec demo_spec(int n_units = 3) {
    io::PolymerSpec spec;
    spec.name = "demo";
    spec.n_units = n_units;
    spec.unit = branched_unit();
    return spec;
}

} // namespace

TEST_CASE("spec file: serialize then reparse gives a structurally identical graph") {
    TempDir dir;
    io::PolymerSpec spec = demo_spec();
    io::write_polymer_spec(spec, dir.file("demo.json"));
    io::PolymerSpec back = io::parse_polymer_spec(dir.file("demo.json"));

    CHECK(back.name == spec.name);
    CHECK(back.n_units == spec.n_units);
    CHECK(back.unit == spec.unit);
    CHECK_FALSE(back.head.has_value());
    CHECK(back.build_graph().spec_hash() == spec.build_graph().spec_hash());
}

TEST_CASE("spec file: minimal document parses with the right atom count") {
    const char* text = R"({
        "format": "polyconf-spec", "version": 1, "name": "mini", "n_units": 2,
        "unit": {
            "elements": ["C", "C", "C", "C"],
            "bonds": [[0, 1], [1, 2], [2, 3]],
            "key_atoms": {"atom1": 0, "atom2": 1, "atom3": 2, "atom4": 3}
        }
    })";
    io::PolymerSpec spec = io::parse_polymer_spec_text(text, "mini.json");
    repr::PolymerGraph g = spec.build_graph();
    CHECK(g.total_atoms() == 2 * 2 + 2);
}

TEST_CASE("spec file: diagnostics name the file and the violated rule") {
    const char* missing_role = R"({
        "format": "polyconf-spec", "version": 1, "n_units": 2,
        "unit": {
            "elements": ["C", "C", "C", "C"],
            "bonds": [[0, 1], [1, 2], [2, 3]],
            "key_atoms": {"atom1": 0, "atom2": 1, "atom4": 3}
        }
    })";
    try {
        (void)io::parse_polymer_spec_text(missing_role, "broken.json");
        FAIL("expected ParseError");
    } catch (const polyconf::ParseError& e) {
        std::string msg = e.what();
        CHECK(msg.find("broken.json") != std::string::npos);
        CHECK(msg.find("atom3") != std::string::npos);
    }

    CHECK_THROWS_AS((void)io::parse_polymer_spec_text("{not json", "syntax.json"),
                    polyconf::ParseError);
    try {
        (void)io::parse_polymer_spec_text("{\n\n  \"oops\"", "syntax.json");
    } catch (const polyconf::ParseError& e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }

    const char* bad_units = R"({
        "format": "polyconf-spec", "version": 1, "n_units": 1,
        "unit": {
            "elements": ["C", "C", "C", "C"],
            "bonds": [[0, 1], [1, 2], [2, 3]],
            "key_atoms": {"atom1": 0, "atom2": 1, "atom3": 2, "atom4": 3}
        }
    })";
    CHECK_THROWS_AS((void)io::parse_polymer_spec_text(bad_units, "bad.json"), InvalidUnitSpecError);
}

TEST_CASE("spec file: head/tail overrides round-trip") {
    io::PolymerSpec spec = demo_spec(4);
    spec.head = spec.unit;
    spec.head->elements[5] = "F"; // decorate a non-key atom
    spec.tail = spec.unit;
    spec.tail->elements[6] = "Cl";
    TempDir dir;
    io::write_polymer_spec(spec, dir.file("ht.json"));
    io::PolymerSpec back = io::parse_polymer_spec(dir.file("ht.json"));
    REQUIRE(back.head.has_value());
    REQUIRE(back.tail.has_value());
    CHECK(back.head->elements[5] == "F");
    CHECK(back.tail->elements[6] == "Cl");
    CHECK(back.build_graph().spec_hash() == spec.build_graph().spec_hash());
    CHECK(back.build_graph().spec_hash() != demo_spec(4).build_graph().spec_hash());
}

TEST_CASE("conformation file: round trip preserves coordinates and order") {
    TempDir dir;
    Rng rng(301);
    testing::RandomChain chain = testing::random_chain_from(branched_unit(), 3, rng);

    std::vector<repr::PolymerConformation> confs;
    for (int i = 0; i < 5; ++i)
        confs.push_back(testing::random_chain_from_graph(chain, rng));

    io::write_conformations(confs, chain.graph, dir.file("c.pcc"));
    std::vector<repr::PolymerConformation> back =
        io::read_conformations(dir.file("c.pcc"), chain.graph);

    REQUIRE(back.size() == confs.size());
    for (std::size_t c = 0; c < confs.size(); ++c)
        for (int a = 0; a < chain.graph.total_atoms(); ++a)
            CHECK((back[c].coords[static_cast<std::size_t>(a)] -
                   confs[c].coords[static_cast<std::size_t>(a)])
                      .norm() < 1e-9);
}

TEST_CASE("conformation file: empty list round-trips") {
    TempDir dir;
    Rng rng(303);
    testing::RandomChain chain = testing::random_chain_from(pe_unit(), 2, rng);
    io::write_conformations({}, chain.graph, dir.file("empty.pcc"));
    CHECK(io::read_conformations(dir.file("empty.pcc"), chain.graph).empty());
}

TEST_CASE("conformation file: hash mismatch and malformed records") {
    TempDir dir;
    Rng rng(305);
    testing::RandomChain chain = testing::random_chain_from(pe_unit(), 2, rng);
    io::write_conformations({chain.conf}, chain.graph, dir.file("c.pcc"));

    repr::PolymerGraph other = repr::PolymerGraph::build(branched_unit(), 2);
    CHECK_THROWS_AS((void)io::read_conformations(dir.file("c.pcc"), other), HashMismatchError);

    std::string text = io::serialize_conformations({chain.conf}, chain.graph);
    std::string truncated = text.substr(0, text.size() / 2);
    CHECK_THROWS_AS((void)io::parse_conformations(truncated, chain.graph, "trunc.pcc"),
                    MalformedRecordError);

    std::string wrong_elem = text;
    std::size_t pos = wrong_elem.find(" C ");
    REQUIRE(pos != std::string::npos);
    wrong_elem.replace(pos, 3, " N ");
    CHECK_THROWS_AS((void)io::parse_conformations(wrong_elem, chain.graph, "elem.pcc"),
                    MalformedRecordError);
}

TEST_CASE("decomposition file: round trip") {
    TempDir dir;
    Rng rng(307);
    testing::RandomChain chain = testing::random_chain_from(branched_unit(), 4, rng);
    repr::DecompositionResult dec = repr::decompose(chain.conf, chain.graph);

    io::write_decompositions({dec}, chain.graph, dir.file("d.json"));
    std::vector<repr::DecompositionResult> back =
        io::read_decompositions(dir.file("d.json"), chain.graph);
    REQUIRE(back.size() == 1);
    for (int i = 0; i < chain.graph.n_units(); ++i) {
        CHECK(back[0].frames[static_cast<std::size_t>(i)].rotation.matrix().max_abs_diff(
                  dec.frames[static_cast<std::size_t>(i)].rotation.matrix()) < 1e-9);
        for (std::size_t a = 0; a < dec.units[static_cast<std::size_t>(i)].coords.size(); ++a)
            CHECK((back[0].units[static_cast<std::size_t>(i)].coords[a] -
                   dec.units[static_cast<std::size_t>(i)].coords[a])
                      .norm() < 1e-9);
    }

    repr::PolymerGraph other = repr::PolymerGraph::build(pe_unit(), 4);
    CHECK_THROWS_AS((void)io::read_decompositions(dir.file("d.json"), other), HashMismatchError);
}

TEST_CASE("report file: round trip preserves rows and aggregates") {
    TempDir dir;
    Rng rng(309);
    testing::RandomChain chain = testing::random_chain_from(branched_unit(), 3, rng);
    metrics::ConformationSet gen{&chain.graph, {chain.conf, testing::random_chain_from_graph(chain, rng)}};
    metrics::ConformationSet ref{&chain.graph, {testing::random_chain_from_graph(chain, rng)}};

    metrics::ToyEnergyOracle oracle;
    metrics::MetricReport report = metrics::evaluate_corpus({{gen, ref}}, oracle, {}, {"demo"});
    report.include_coverage = true;

    io::ReportContext ctx{77, "0.1.0-test"};
    io::write_report(report, ctx, dir.file("r.json"));
    io::ReportContext back_ctx;
    metrics::MetricReport back = io::read_report(dir.file("r.json"), &back_ctx);

    CHECK(back_ctx.seed == 77);
    CHECK(back_ctx.tool_version == "0.1.0-test");
    REQUIRE(back.polymers.size() == 1);
    CHECK(back.polymers[0].name == "demo");
    CHECK(back.polymers[0].spec_hash == chain.graph.spec_hash_hex());
    CHECK(back.energy_oracle_id == "toy");
    // 12-significant-digit serialization: round-trip after value rounding.
    CHECK(back.polymers[0].s_mat_r == io::round_real(report.polymers[0].s_mat_r));
    CHECK(back.mean.e_mat_p == io::round_real(report.mean.e_mat_p));
    CHECK(back.polymers[0].s_cov_r == io::round_real(report.polymers[0].s_cov_r));
}

#ifdef POLYCONF_SUM_ENERGY_HELPER
TEST_CASE("external energy oracle: command output drives e_mat") {
    Rng rng(311);
    testing::RandomChain chain = testing::random_chain_from(pe_unit(), 3, rng);
    io::ExternalEnergyOracle oracle(POLYCONF_SUM_ENERGY_HELPER);

    double got = oracle.energy(chain.conf, chain.graph);
    double expected = 0.0;
    for (const geom::Vec3& c : chain.conf.coords)
        expected += std::fabs(c.x) + std::fabs(c.y) + std::fabs(c.z);
    // The subprocess sees 12-significant-digit coordinates.
    CHECK(got == doctest::Approx(expected).epsilon(1e-9));
    CHECK(oracle.id().rfind("external:", 0) == 0);

    io::ExternalEnergyOracle broken("false");
    CHECK_THROWS_AS((void)broken.energy(chain.conf, chain.graph), OracleFailureError);
}
#endif

#ifdef POLYCONF_ECHO_DENOISER_HELPER
TEST_CASE("subprocess denoisers: echo helper reproduces the builtin priors bitwise") {
    repr::PolymerGraph graph = repr::PolymerGraph::build(branched_unit(), 3);
    gen::ToyEncoderOracle encoder;
    gen::GenerationConfig config;
    config.seed = 31;
    config.timesteps = 6;

    gen::PriorTorsionDenoiser builtin_t;
    gen::PriorRotationDenoiser builtin_r;
    repr::PolymerConformation builtin =
        gen::generate_conformation(graph, encoder, builtin_t, builtin_r, config);

    io::SubprocessTorsionDenoiser sub_t(POLYCONF_ECHO_DENOISER_HELPER);
    io::SubprocessRotationDenoiser sub_r(POLYCONF_ECHO_DENOISER_HELPER);
    repr::PolymerConformation via_subprocess =
        gen::generate_conformation(graph, encoder, sub_t, sub_r, config);

    REQUIRE(builtin.atom_count() == via_subprocess.atom_count());
    for (int a = 0; a < builtin.atom_count(); ++a) {
        CHECK(builtin.coords[static_cast<std::size_t>(a)].x ==
              via_subprocess.coords[static_cast<std::size_t>(a)].x);
        CHECK(builtin.coords[static_cast<std::size_t>(a)].y ==
              via_subprocess.coords[static_cast<std::size_t>(a)].y);
        CHECK(builtin.coords[static_cast<std::size_t>(a)].z ==
              via_subprocess.coords[static_cast<std::size_t>(a)].z);
    }

    io::SubprocessTorsionDenoiser broken("false");
    gen::DiffusionSchedule sched = gen::make_schedule(gen::ScheduleKind::Cosine, 4);
    Rng rng(1);
    CHECK_THROWS_AS((void)gen::torsion_reverse_sample(branched_unit(), broken,
                                                      std::vector<double>(4, 0.0), 0, sched, rng),
                    OracleFailureError);
}

TEST_CASE("subprocess encoder: shape, masking, and pipeline compatibility") {
    repr::PolymerGraph graph = repr::PolymerGraph::build(branched_unit(), 3);
    io::SubprocessEncoderOracle encoder(POLYCONF_ECHO_DENOISER_HELPER);

    std::vector<std::optional<repr::UnitConformation>> units(3);
    units[2] = repr::make_template_unit(branched_unit(), 2);
    gen::EmbeddingMatrix e = encoder.encode(graph, units);
    REQUIRE(e.rows() == 3);
    REQUIRE(e.dim() == 3);
    // Helper rows: [1-based index, known flag, atom count].
    CHECK(e.at(0, 0) == 1.0);
    CHECK(e.at(0, 1) == 0.0);
    CHECK(e.at(2, 1) == 1.0);
    CHECK(e.at(2, 2) == 8.0);

    gen::GenerationConfig config;
    config.seed = 5;
    config.timesteps = 4;
    gen::PriorTorsionDenoiser tden;
    gen::PriorRotationDenoiser rden;
    repr::PolymerConformation conf = gen::generate_conformation(graph, encoder, tden, rden, config);
    CHECK_NOTHROW(repr::validate_conformation(conf, graph));
}
#endif
