#include <doctest.h>

#include <cmath>

#include "helpers/test_helpers.hpp"
#include "polyconf/error.hpp"

using namespace polyconf;
using geom::Rotation;
using geom::Vec3;
using testing::branched_unit;
using testing::pe_unit;
using testing::random_vec;

TEST_CASE("apply_rotation: identity leaves a standard unit unchanged") {
    repr::UnitTopology topo = pe_unit();
    repr::UnitConformation unit = repr::make_template_unit(topo);
    repr::UnitConformation out = assembly::apply_rotation(unit, Rotation::identity(), topo);
    for (std::size_t i = 0; i < unit.coords.size(); ++i)
        CHECK((out.coords[i] - unit.coords[i]).norm() == 0.0);
}

TEST_CASE("apply_rotation: atom-3 stays at the origin") {
    repr::UnitTopology topo = branched_unit();
    repr::UnitConformation unit = repr::make_template_unit(topo);
    Rotation quarter = geom::so3_exp({0, 0, geom::kPi / 2});
    repr::UnitConformation out = assembly::apply_rotation(unit, quarter, topo);
    CHECK(out.coords[static_cast<std::size_t>(topo.key(repr::kAtom3))].norm() < 1e-12);
    for (std::size_t i = 0; i < unit.coords.size(); ++i)
        CHECK((out.coords[i] - quarter.apply(unit.coords[i])).norm() < 1e-12);
}

TEST_CASE("apply_rotation: re-extracted frame rotation equals the applied rotation") {
    Rng rng(101);
    repr::UnitTopology topo = branched_unit();
    repr::UnitConformation unit = repr::make_template_unit(topo);
    for (int trial = 0; trial < 100; ++trial) {
        Rotation r = geom::uniform_rotation(rng);
        repr::UnitConformation out = assembly::apply_rotation(unit, r, topo);
        geom::RigidTransform f = repr::extract_frame(out, topo);
        CHECK(f.rotation.matrix().max_abs_diff(r.matrix()) < 1e-9);
        CHECK(f.translation.norm() < 1e-9);
    }
}

TEST_CASE("apply_rotation: non-standard input is rejected") {
    repr::UnitTopology topo = pe_unit();
    repr::UnitConformation unit = repr::make_template_unit(topo);
    for (Vec3& c : unit.coords)
        c += Vec3{0.5, 0, 0};
    CHECK_THROWS_AS((void)assembly::apply_rotation(unit, Rotation::identity(), topo),
                    NotStandardizedError);
}

TEST_CASE("derive_translations: first unit pinned at zero") {
    Rng rng(103);
    testing::RandomChain chain = testing::random_chain_from(pe_unit(), 3, rng);
    std::vector<repr::UnitConformation> rotated;
    for (int i = 0; i < 3; ++i)
        rotated.push_back(assembly::apply_rotation(chain.std_units[static_cast<std::size_t>(i)],
                                                   chain.rotations[static_cast<std::size_t>(i)],
                                                   chain.graph.unit(i)));
    std::vector<Vec3> ts = assembly::derive_translations(rotated, chain.graph);
    REQUIRE(ts.size() == 3);
    CHECK(ts[0].norm() == 0.0);

    // After translation, atom-1 of unit i+1 sits exactly on atom-3 of unit i.
    for (int i = 0; i + 1 < 3; ++i) {
        Vec3 a3 = rotated[static_cast<std::size_t>(i)]
                      .coords[static_cast<std::size_t>(chain.graph.unit(i).key(repr::kAtom3))] +
                  ts[static_cast<std::size_t>(i)];
        Vec3 a1 = rotated[static_cast<std::size_t>(i + 1)]
                      .coords[static_cast<std::size_t>(chain.graph.unit(i + 1).key(repr::kAtom1))] +
                  ts[static_cast<std::size_t>(i + 1)];
        CHECK((a3 - a1).norm() < 1e-12);
    }
}

TEST_CASE("derive_translations: offset formula on two units") {
    repr::UnitTopology topo = pe_unit();
    repr::PolymerGraph g = repr::PolymerGraph::build(topo, 2);
    repr::UnitConformation tmpl = repr::make_template_unit(topo);

    // Pre-shift unit 2 so its atom-1 already coincides with unit 1's atom-3:
    // the derived translation must be zero.
    std::vector<repr::UnitConformation> rotated{tmpl, tmpl};
    rotated[1].coords.clear();
    Vec3 shift = tmpl.coords[static_cast<std::size_t>(topo.key(repr::kAtom3))] -
                 tmpl.coords[static_cast<std::size_t>(topo.key(repr::kAtom1))];
    for (const Vec3& c : tmpl.coords)
        rotated[1].coords.push_back(c + shift);
    std::vector<Vec3> ts = assembly::derive_translations(rotated, g);
    CHECK(ts[1].norm() < 1e-12);

    // Back the unit off by a known offset: the derived translation equals it.
    Vec3 offset{1, 2, 3};
    for (Vec3& c : rotated[1].coords)
        c -= offset;
    ts = assembly::derive_translations(rotated, g);
    CHECK((ts[1] - offset).norm() < 1e-12);
}

TEST_CASE("assemble: round trip from a decomposed reference") {
    Rng rng(107);
    for (int trial = 0; trial < 10; ++trial) {
        testing::RandomChain chain = testing::random_chain(rng, 2 + static_cast<int>(rng.bounded(8)));
        CHECK(assembly::roundtrip_residual(chain.conf, chain.graph) < 1e-9);
    }
}

TEST_CASE("assemble: straight chain keeps backbone key atoms collinear") {
    // Identity rotations on identical straight units: the junction anchors
    // continue along one line by construction.
    repr::UnitTopology topo = pe_unit();
    const int n_units = 6;
    repr::PolymerGraph g = repr::PolymerGraph::build(topo, n_units);

    repr::UnitConformation unit;
    unit.unit_index = 0;
    // Collinear backbone would degenerate the frame, so bend only atom-4 off
    // the axis... instead build the unit with all four atoms on a line for x
    // and flatten later. Use a planar L-shape that tiles into a straight run
    // of atom-3 anchors: atom-1 (-1,1,0), atom-2 (0,1,0)... that tiling is a
    // zig-zag. Simplest honest straight test: unit with atom-1..atom-4 at
    // x = 0,1,2,3 and a y-kink on atom-2 to keep the frame alive.
    unit.coords = {{0, 0, 0}, {1, 0.8, 0}, {2, 0, 0}, {3, 0.8, 0}};
    repr::UnitConformation std_unit =
        repr::to_standard(unit, repr::extract_frame(unit, topo));

    assembly::AssemblyInput input;
    input.graph = &g;
    for (int i = 0; i < n_units; ++i) {
        repr::UnitConformation u = std_unit;
        u.unit_index = i;
        input.std_units.push_back(u);
        input.rotations.push_back(Rotation::identity());
    }
    repr::PolymerConformation conf = assembly::assemble(input);

    // atom-3 anchors of consecutive units advance by a constant vector.
    std::vector<Vec3> anchors;
    for (int i = 0; i < n_units; ++i)
        anchors.push_back(conf.coords[static_cast<std::size_t>(g.global_index(i, topo.key(repr::kAtom3)))]);
    Vec3 step = anchors[1] - anchors[0];
    for (int i = 2; i < n_units; ++i)
        CHECK((anchors[static_cast<std::size_t>(i)] - anchors[static_cast<std::size_t>(i - 1)] - step)
                  .norm() < 1e-9);
    // Collinearity of all anchors.
    for (int i = 0; i < n_units; ++i) {
        Vec3 diff = anchors[static_cast<std::size_t>(i)] - anchors[0] - step * static_cast<double>(i);
        CHECK(diff.norm() < 1e-9);
    }
}

TEST_CASE("assemble: doubling the chain reproduces every junction bond length") {
    Rng rng(109);
    repr::UnitTopology topo = branched_unit();
    const int n = 5;
    testing::RandomChain chain = testing::random_chain_from(topo, n, rng);

    repr::PolymerGraph doubled_graph = repr::PolymerGraph::build(topo, 2 * n);
    assembly::AssemblyInput input;
    input.graph = &doubled_graph;
    for (int rep = 0; rep < 2; ++rep)
        for (int i = 0; i < n; ++i) {
            repr::UnitConformation u = chain.std_units[static_cast<std::size_t>(i)];
            u.unit_index = rep * n + i;
            input.std_units.push_back(u);
            input.rotations.push_back(chain.rotations[static_cast<std::size_t>(i)]);
        }
    repr::PolymerConformation doubled = assembly::assemble(input);

    // Atom count follows the overlap rule at double scale.
    int unit_atoms = topo.atom_count();
    CHECK(doubled.atom_count() == 2 * n * (unit_atoms - 2) + 2);
    CHECK(doubled.atom_count() == 2 * (chain.conf.atom_count() - 2) + 2);

    auto junction_length = [&](const repr::PolymerGraph& g, const repr::PolymerConformation& c,
                               std::size_t j) {
        return geom::distance(c.coords[static_cast<std::size_t>(g.junctions()[j].atom_a)],
                              c.coords[static_cast<std::size_t>(g.junctions()[j].atom_b)]);
    };
    double single_value = junction_length(chain.graph, chain.conf, 0);
    for (std::size_t j = 0; j < doubled_graph.junctions().size(); ++j)
        CHECK(std::fabs(junction_length(doubled_graph, doubled, j) - single_value) < 1e-9);
    // Valid conformation (junction threshold satisfied).
    CHECK_NOTHROW(repr::validate_conformation(doubled, doubled_graph));
}

TEST_CASE("assemble: equivariance under a global rotation of all unit rotations") {
    Rng rng(113);
    testing::RandomChain chain = testing::random_chain_from(branched_unit(), 4, rng);
    Rotation global = geom::uniform_rotation(rng);

    assembly::AssemblyInput input;
    input.graph = &chain.graph;
    input.std_units = chain.std_units;
    for (const Rotation& r : chain.rotations)
        input.rotations.push_back(global * r);
    repr::PolymerConformation rotated_chain = assembly::assemble(input);

    CHECK(geom::aligned_rmsd(rotated_chain.coords, chain.conf.coords) < 1e-9);
}

TEST_CASE("assemble: output atom count always equals graph.total_atoms") {
    Rng rng(127);
    for (int trial = 0; trial < 10; ++trial) {
        testing::RandomChain chain = testing::random_chain(rng, 2 + static_cast<int>(rng.bounded(12)));
        CHECK(chain.conf.atom_count() == chain.graph.total_atoms());
    }
}

TEST_CASE("roundtrip_residual: perturbations survive the round trip intact") {
    Rng rng(131);
    testing::RandomChain chain = testing::random_chain_from(branched_unit(), 5, rng);
    CHECK(assembly::roundtrip_residual(chain.conf, chain.graph) < 1e-9);

    // Perturb one non-key atom: the round trip is lossless, not a projection.
    repr::PolymerConformation perturbed = chain.conf;
    perturbed.coords[5] += Vec3{0.1, 0, 0};
    CHECK(assembly::roundtrip_residual(perturbed, chain.graph) < 1e-9);
}

TEST_CASE("roundtrip_residual: randomized batch stays exact") {
    Rng rng(137);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        int n_units = 2 + static_cast<int>(rng.bounded(20));
        testing::RandomChain chain = testing::random_chain(rng, n_units);
        worst = std::max(worst, assembly::roundtrip_residual(chain.conf, chain.graph));
    }
    CHECK(worst < 1e-9);
}
