#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "qtor/e_invariant.hpp"
#include "qtor/error.hpp"
#include "qtor/serialization.hpp"

using namespace qtor;

namespace {

ConeData cone(const std::string& name) {
    return io::cone_from_json(io::read_file(std::string(QTOR_DATA_DIR) + "/cones/" + name + ".json"));
}

GradedRing ring(const std::string& name) {
    return cohomology(
        validate(io::manifold_from_json(io::read_file(std::string(QTOR_DATA_DIR) + "/manifolds/" + name + ".json"))));
}

std::string code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.qualified_code();
    }
    return "ok";
}

}  // namespace

TEST_CASE("classical e") {
    CHECK(classical_e(4, 1, Rational(1, 2)) == Rational(1, 2));
    CHECK(classical_e(8, 2, Rational(13, 12)) == Rational(1, 12));
    CHECK(classical_e(8, 2, Rational(-1, 12)) == Rational(11, 12));
}

TEST_CASE("two-cell cones: generalized equals classical mod 1") {
    for (const auto& a : {Rational(1, 2), Rational(1, 12), Rational(5, 3), Rational(-7, 24), Rational(0)}) {
        const ConeData c = two_cell_cone(4, 8, a);
        const EInvariantReport rep = generalized_e(c);
        REQUIRE(rep.entries.size() == 1);
        CHECK(rep.entries[0].mod1 == classical_e(8, 2, a));
        CHECK(rep.entries[0].top);
    }
}

TEST_CASE("CP2 cone: Hopf invariant 1/2, trivial at p = 3 and 5") {
    const ConeData c = cone("cp2_cone");
    const EInvariantReport rep = generalized_e(c);
    REQUIRE(rep.entries.size() == 1);
    CHECK(rep.entries[0].mod1 == Rational(1, 2));
    // The cone lattice is the K-lattice of CP2 itself.
    CHECK(c.extended == chern_image(ring("cp2")).lattice);
    for (int p : {3, 5}) {
        const TrivialityVerdict v = p_local_triviality(rep, p, 1);
        CHECK(v.status == TrivialityStatus::CertifiedTrivial);
    }
    CHECK(skeleton_consistency(c, 1));
}

TEST_CASE("nu cone: 1/12 agrees with the Chern character of the quaternionic line bundle") {
    const ConeData c = cone("nu_cone");
    const EInvariantReport rep = generalized_e(c);
    REQUIRE(rep.entries.size() == 1);
    CHECK(rep.entries[0].mod1 == Rational(1, 12));
    // ch of a rank-2 bundle with c1 = 0, c2 = -u: 2 + u + u^2/12.
    const auto ch = oracle::rank_two_chern_character(-1);
    CHECK(ch[2] == 1);
    CHECK(ch[4] == Rational(1, 12));
    CHECK(mod_one(ch[4] / ch[2]) == rep.entries[0].mod1);
    const TrivialityVerdict v = p_local_triviality(rep, 3, 2);
    CHECK(v.status == TrivialityStatus::CertifiedNontrivial);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->mod1 == Rational(1, 12));
    // 1/12 is 5-locally integral.
    CHECK(p_local_triviality(rep, 5, 2).status == TrivialityStatus::CertifiedTrivial);
}

TEST_CASE("range limits and even prime") {
    const EInvariantReport rep = generalized_e(cone("deep_cone"));
    const TrivialityVerdict v = p_local_triviality(rep, 3, 8);
    CHECK(v.status == TrivialityStatus::Inconclusive);
    CHECK(v.reason.rfind("RangeExceeded", 0) == 0);
    CHECK(v.bound == 7);
    CHECK(p_local_triviality(rep, 5, 8).status == TrivialityStatus::CertifiedTrivial);
    CHECK(p_local_triviality(generalized_e(two_cell_cone(16, 20, Rational(1, 5))), 5, 8).status ==
          TrivialityStatus::CertifiedNontrivial);
    CHECK(code_of([&] { p_local_triviality(rep, 2, 8); }) == "e_invariant.EvenPrime");
    CHECK(code_of([&] { p_local_triviality(rep, 9, 8); }) == "e_invariant.NotPrime");
}

TEST_CASE("verdicts are mutually exclusive and monotone under the stem bound") {
    for (const char* name : {"cp2_cone", "nu_cone", "cp3_cone", "three_cell", "deep_cone"}) {
        const ConeData c = cone(name);
        const EInvariantReport rep = generalized_e(c);
        for (int p : {3, 5, 7, 11}) {
            const TrivialityVerdict v = p_local_triviality(rep, p, c.base_top_degree() / 2);
            const bool trivial = v.status == TrivialityStatus::CertifiedTrivial;
            const bool nontrivial = v.status == TrivialityStatus::CertifiedNontrivial;
            CHECK(!(trivial && nontrivial));
            CHECK((v.witness.has_value() == nontrivial));
        }
    }
}

TEST_CASE("stem outside the detection range is inconclusive") {
    // d = 1, r = 9 at p = 3: stem 8 > p^2 - 3 = 6.
    const EInvariantReport rep = generalized_e(two_cell_cone(2, 18, Rational(1, 3)));
    const TrivialityVerdict v = p_local_triviality(rep, 3, 1);
    CHECK(v.status == TrivialityStatus::Inconclusive);
    CHECK(v.stem == 8);
}

TEST_CASE("three-cell fixture and CP3 cone: skeleton consistency at every legal k") {
    for (const char* name : {"three_cell", "cp3_cone"}) {
        const ConeData c = cone(name);
        for (int k = 1; k <= c.base_top_degree() / 2; ++k) CHECK(skeleton_consistency(c, k));
    }
    const EInvariantReport cp3 = generalized_e(cone("cp3_cone"));
    REQUIRE(cp3.entries.size() == 2);
    CHECK(cp3.entries[0].mod1 == Rational(1, 6));
    CHECK_FALSE(cp3.entries[0].top);
    CHECK(cp3.entries[1].mod1 == 0);
    CHECK(cp3.entries[1].top);
    // The CP3 cone lattice is the K-lattice of CP3.
    CHECK(cone("cp3_cone").extended == chern_image(ring("cp3")).lattice);
    CHECK(p_local_triviality(cp3, 3, 2).status == TrivialityStatus::Inconclusive);
}

TEST_CASE("truncation that loses exactness of eta is not deformable") {
    CHECK(code_of([] { skeleton_consistency(cone("nu_cone"), 1); }) == "e_invariant.NotDeformable");
}

TEST_CASE("malformed cones are rejected") {
    RationalMatrix half(2, 2);
    half(0, 0) = 1;
    half(1, 1) = 2;
    CHECK(code_of([&] { make_cone({2}, 4, half); }) == "e_invariant.MalformedCone");
    CHECK(code_of([&] { make_cone({2}, 5, RationalMatrix::identity(2)); }) == "e_invariant.MalformedCone");
    CHECK(code_of([&] { make_cone({2, 4}, 6, RationalMatrix::identity(2)); }) == "e_invariant.MalformedCone");
    CHECK(code_of([&] { make_cone({2}, 4, RationalMatrix::identity(2), {{2, 1}}); }) == "e_invariant.MalformedCone");
}

TEST_CASE("realizability on Hirzebruch 0 and 2") {
    const GradedRing h0 = ring("hirzebruch_0"), h2 = ring("hirzebruch_2");
    const KLattice k0 = chern_image(h0), k2 = chern_image(h2);
    IntMatrix a(2, 2);
    a(0, 0) = -1;
    a(0, 1) = -1;
    a(1, 0) = -1;
    InducedMap im = induce_from_degree2(h0, h2, a);
    REQUIRE(im.ok);
    REQUIRE(verify_ring_map_ok(h0, h2, im.map));
    const RealizabilityCertificate cert = realizability_check(h0, k0, h2, k2, im.map, 3);
    CHECK(cert.certified);
    CHECK(cert.bound == 14);
    CHECK(cert.evidence.skeleta.size() == 2);
    for (const auto& s : cert.evidence.skeleta) CHECK((s.truncation_iso && s.quotient_iso));
    CHECK(code_of([&] { realizability_check(h0, k0, h2, k2, im.map, 2); }) == "e_invariant.EvenPrime");

    const GradedRing cp3 = ring("cp3");
    const KLattice kc = chern_image(cp3);
    CHECK(code_of([&] { realizability_check(h0, k0, cp3, kc, im.map, 3); }) == "e_invariant.DimensionMismatch");
}

TEST_CASE("realizability range is checked against 2p^2 - 4") {
    const GradedRing b = ring("bott_tower_12");
    const KLattice kb = chern_image(b);
    const RingMap id = identity_map(b);
    CHECK(realizability_check(b, kb, b, kb, id, 3).certified);
    const RealizabilityEvidence ev = prepare_realizability(b, kb, b, kb, id);
    CHECK(ev.dim == 12);
    CHECK(certify_at_prime(ev, 5).certified);
    // Dimension 16 exceeds 2*9 - 4 = 14 at p = 3.
    RealizabilityEvidence big = ev;
    big.dim = 16;
    CHECK(code_of([&] { certify_at_prime(big, 3); }) == "e_invariant.RangeExceeded");
}
