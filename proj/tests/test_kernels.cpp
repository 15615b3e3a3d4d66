#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <omp.h>

#include "qtor/kernels.hpp"
#include "qtor/serialization.hpp"

using namespace qtor;

namespace {

GradedRing ring(const std::string& name) {
    return cohomology(
        validate(io::manifold_from_json(io::read_file(std::string(QTOR_DATA_DIR) + "/manifolds/" + name + ".json"))));
}

std::vector<RationalVector> lines(const GradedRing& r) {
    std::vector<RationalVector> out;
    for (std::size_t j = 0; j < r.rank(1); ++j) {
        RationalVector x(r.total_rank());
        x[r.offset(1) + j] = 1;
        out.push_back(x);
    }
    return out;
}

}  // namespace

TEST_CASE("chern exponent order") {
    const auto e = kernels::chern_exponents(2, 2);
    const std::vector<std::vector<int>> expected = {{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    CHECK(e == expected);
    CHECK(kernels::chern_exponents(6, 6).size() == 923);
}

TEST_CASE("parallel and serial Chern expansion agree") {
    for (const char* name : {"cp2", "hirzebruch_1", "bott_tower_6", "bott_tower_12"}) {
        CAPTURE(name);
        const GradedRing r = ring(name);
        const auto exps = kernels::chern_exponents(r.rank(1), r.n());
        const auto serial = kernels::expand_chern_monomials_serial(r, lines(r), exps);
        for (int threads : {1, 2, 4}) {
            omp_set_num_threads(threads);
            CHECK(kernels::expand_chern_monomials(r, lines(r), exps) == serial);
        }
    }
}

TEST_CASE("candidate enumeration") {
    CHECK(kernels::candidate_count(2, 3) == std::optional<std::uint64_t>(2401));
    CHECK_FALSE(kernels::candidate_count(6, 100).has_value());
    CHECK(kernels::candidate_matrix(0, 2, 1) == std::vector<std::int64_t>{-1, -1, -1, -1});
    CHECK(kernels::candidate_matrix(80, 2, 1) == std::vector<std::int64_t>{1, 1, 1, 1});
    CHECK(kernels::candidate_matrix(1, 2, 1) == std::vector<std::int64_t>{-1, -1, -1, 0});
    CHECK(kernels::small_determinant({2, 1, 1, 1}, 2) == 1);
    CHECK(kernels::small_determinant({0, 1, 0, 1, 0, 0, 0, 0, 1}, 3) == -1);
    CHECK(kernels::small_determinant({1, 2, 2, 4}, 2) == 0);
}

TEST_CASE("parallel and serial isomorphism search return the same index") {
    const GradedRing h0 = ring("hirzebruch_0"), h1 = ring("hirzebruch_1"), h2 = ring("hirzebruch_2"),
                     h3 = ring("hirzebruch_3");
    for (int threads : {1, 2, 4}) {
        omp_set_num_threads(threads);
        for (const auto* a : {&h0, &h1, &h2, &h3})
            for (const auto* b : {&h0, &h1, &h2, &h3})
                CHECK(kernels::first_degree2_iso(*a, *b, 3) == kernels::first_degree2_iso_serial(*a, *b, 3));
    }
    CHECK(kernels::first_degree2_iso_serial(h0, h1, 3) == std::nullopt);
    CHECK(kernels::first_degree2_iso_serial(h0, h2, 3).has_value());
}
