#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cstdlib>
#include <set>

#include "oracles.hpp"
#include "qtor/error.hpp"
#include "qtor/rigidity.hpp"
#include "qtor/serialization.hpp"

using namespace qtor;

namespace {

ValidatedManifold load(const std::string& name) {
    return validate(
        io::manifold_from_json(io::read_file(std::string(QTOR_DATA_DIR) + "/manifolds/" + name + ".json")));
}

IntMatrix supplied(const std::string& name) {
    return io::iso_matrix_from_json(io::read_file(std::string(QTOR_DATA_DIR) + "/isos/" + name + ".json"));
}

std::set<int> certified(const RigidityVerdict& v) {
    std::set<int> out;
    if (v.p2.status == "Certified") out.insert(2);
    for (const auto& p : v.primes)
        if (p.status == "Certified") out.insert(p.p);
    return out;
}

}  // namespace

TEST_CASE("CP2 identity is found at bound 1") {
    const GradedRing r = cohomology(load("cp2"));
    const auto res = find_ring_iso(r, r, 1);
    REQUIRE(res.iso.has_value());
    CHECK(res.iso->degree2 == IntMatrix::identity(1));
    CHECK(res.iso->check.ok);
}

TEST_CASE("search agrees with the quadratic form oracle on Hirzebruch pairs") {
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b) {
            CAPTURE(a);
            CAPTURE(b);
            const auto va = load("hirzebruch_" + std::to_string(a)), vb = load("hirzebruch_" + std::to_string(b));
            const bool expected = oracle::forms_equivalent(oracle::intersection_form(va.data),
                                                           oracle::intersection_form(vb.data), 3);
            const auto res = find_ring_iso(cohomology(va), cohomology(vb), 3);
            CHECK(res.iso.has_value() == expected);
            CHECK(expected == (a % 2 == b % 2));
            if (!res.iso) CHECK(res.reason == "ExhaustedBound");
        }
}

TEST_CASE("serial and parallel search return the same certificate") {
    const GradedRing h0 = cohomology(load("hirzebruch_0")), h2 = cohomology(load("hirzebruch_2"));
    const auto par = find_ring_iso(h0, h2, 3, default_search_cap, true);
    const auto ser = find_ring_iso(h0, h2, 3, default_search_cap, false);
    REQUIRE(par.iso.has_value());
    REQUIRE(ser.iso.has_value());
    CHECK(par.iso->degree2 == ser.iso->degree2);
    CHECK(par.iso->candidate_index == ser.iso->candidate_index);
}

TEST_CASE("Betti mismatch and safety cap") {
    const GradedRing cp2 = cohomology(load("cp2")), s2s2 = cohomology(load("cp1xcp1"));
    const auto res = find_ring_iso(cp2, s2s2, 2);
    CHECK_FALSE(res.iso.has_value());
    CHECK(res.reason == "BettiMismatch");
    const GradedRing b = cohomology(load("bott_tower_6"));
    try {
        find_ring_iso(b, b, 3, 1000);
        FAIL("expected BoundTooLarge");
    } catch (const Error& e) {
        CHECK(e.qualified_code() == "rigidity.BoundTooLarge");
    }
}

TEST_CASE("search cap is read from the environment") {
    setenv("QTOR_SEARCH_CAP", "123", 1);
    CHECK(search_cap_from_env() == 123);
    setenv("QTOR_SEARCH_CAP", "x", 1);
    CHECK_THROWS_AS(search_cap_from_env(), Error);
    unsetenv("QTOR_SEARCH_CAP");
    CHECK(search_cap_from_env() == default_search_cap);
}

TEST_CASE("Hirzebruch 0 vs 2: every prime certified") {
    VerdictOptions opts;
    opts.bound = 3;
    const RigidityVerdict v = verdict(load("hirzebruch_0"), load("hirzebruch_2"), opts);
    CHECK(v.dim == 4);
    CHECK(v.iso_status == "found");
    CHECK(v.p2.status == "Certified");
    CHECK(v.p2.route == "sq2");
    CHECK(v.p2.tables_match == std::optional<bool>(true));
    for (const auto& p : v.primes) CHECK(p.status == "Certified");
    CHECK(v.all_primes_from == std::optional<int>(2));
    CHECK(v.primes.back().p == 97);
}

TEST_CASE("Hirzebruch 0 vs 1 and CP2 vs CP1xCP1: nothing certified") {
    VerdictOptions opts;
    opts.bound = 3;
    const RigidityVerdict v = verdict(load("hirzebruch_0"), load("hirzebruch_1"), opts);
    CHECK(v.iso_status == "none");
    CHECK(v.iso_reason == "ExhaustedBound");
    CHECK(certified(v).empty());
    CHECK_FALSE(v.all_primes_from.has_value());
    const RigidityVerdict w = verdict(load("cp2"), load("cp1xcp1"), opts);
    CHECK(w.iso_reason == "BettiMismatch");
    CHECK(certified(w).empty());
    for (const auto& p : w.primes) CHECK(p.reason.find("BettiMismatch") != std::string::npos);
}

TEST_CASE("12-dimensional Bott towers with supplied identity") {
    VerdictOptions opts;
    opts.supplied_iso = supplied("identity_6");
    const RigidityVerdict v = verdict(load("bott_tower_12"), load("bott_tower_12_mixed"), opts);
    CHECK(v.dim == 12);
    CHECK(v.iso_status == "supplied");
    CHECK(v.p2.status == "NotApplicable");
    CHECK(v.all_primes_from == std::optional<int>(3));
    for (const auto& p : v.primes) CHECK(p.status == "Certified");
    CHECK(certified(v).count(3) == 1);
    CHECK(certified(v).count(2) == 0);
}

TEST_CASE("a supplied non-isomorphism is rejected, not trusted") {
    VerdictOptions opts;
    IntMatrix bad = IntMatrix::identity(2);
    bad(0, 1) = 1;
    opts.supplied_iso = bad;
    const RigidityVerdict v = verdict(load("cp1xcp1"), load("cp1xcp1"), opts);
    CHECK(v.iso_status == "none");
    CHECK(certified(v).empty());
}

TEST_CASE("symmetry, self-verdict and monotonicity") {
    VerdictOptions opts;
    opts.bound = 2;
    opts.prime_cap = 31;
    for (const auto& [a, b] : std::vector<std::pair<const char*, const char*>>{
             {"hirzebruch_0", "hirzebruch_2"}, {"hirzebruch_1", "hirzebruch_3"}, {"cp1xcp1", "hirzebruch_2"}}) {
        const auto va = load(a), vb = load(b);
        CHECK(certified(verdict(va, vb, opts)) == certified(verdict(vb, va, opts)));
    }
    for (const char* name : {"s2", "cp2", "cp3", "bott_tower_6"}) {
        CAPTURE(name);
        const auto v = load(name);
        const RigidityVerdict self = verdict(v, v, opts);
        REQUIRE(self.iso.has_value());
        CHECK(self.iso->degree2 == IntMatrix::identity(self.iso->degree2.rows()));
        const int n = v.data.n;
        bool seen = false;
        for (const auto& p : self.primes) {
            CHECK((p.status == "Certified") == (p.p * p.p >= n + 2));
            if (p.status == "Certified") seen = true;
            if (seen) CHECK(p.status == "Certified");
        }
    }
}

TEST_CASE("q-tables match under every found isomorphism of surfaces") {
    const GradedRing h1 = cohomology(load("hirzebruch_1")), h3 = cohomology(load("hirzebruch_3"));
    const auto res = find_ring_iso(h1, h3, 3);
    REQUIRE(res.iso.has_value());
    CHECK(square_tables_match(h1, h3, res.iso->degree2));
    CHECK(mod2_square_rank(h1).nonzero_count == mod2_square_rank(h3).nonzero_count);
}

TEST_CASE("dim-4 search at bound 3 is fast") {
    const auto start = std::chrono::steady_clock::now();
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            find_ring_iso(cohomology(load("hirzebruch_" + std::to_string(a))),
                          cohomology(load("hirzebruch_" + std::to_string(b))), 3);
    const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(secs < 60.0);
}
