#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "qtor/error.hpp"
#include "qtor/qt_input.hpp"
#include "qtor/serialization.hpp"

using namespace qtor;

namespace {

QuasitoricData load(const std::string& name) {
    return io::manifold_from_json(io::read_file(std::string(QTOR_DATA_DIR) + "/manifolds/" + name + ".json"));
}

std::string code_of(const QuasitoricData& d) {
    try {
        validate(d);
    } catch (const Error& e) {
        return e.qualified_code();
    }
    return "ok";
}

}  // namespace

TEST_CASE("CP2 validates with unimodular minors") {
    const auto v = validate(load("cp2"));
    CHECK(v.h_vector == std::vector<std::int64_t>{1, 1, 1});
    for (const auto& f : v.data.maximal_faces) {
        const Integer det = face_determinant(v.data, f);
        CHECK((det == 1 || det == -1));
    }
}

TEST_CASE("non-unimodular lambda is reported with face and determinant") {
    try {
        validate(load("bad_lambda"));
        FAIL("expected NonUnimodular");
    } catch (const Error& e) {
        CHECK(e.qualified_code() == "qt_input.NonUnimodular");
        CHECK(e.detail()["face"] == nlohmann::json({2, 3}));
        CHECK(e.detail()["det"] == -2);
    }
}

TEST_CASE("interval gives S2") {
    QuasitoricData d{2, 1, {{1}, {2}}, {{1, -1}}};
    const auto v = validate(d);
    CHECK(v.h_vector == std::vector<std::int64_t>{1, 1});
}

TEST_CASE("h-vectors of bundled manifolds") {
    CHECK(validate(load("cp1xcp1")).h_vector == std::vector<std::int64_t>{1, 2, 1});
    for (int k = 0; k <= 3; ++k)
        CHECK(validate(load("hirzebruch_" + std::to_string(k))).h_vector == std::vector<std::int64_t>{1, 2, 1});
    CHECK(validate(load("cp3")).h_vector == std::vector<std::int64_t>{1, 1, 1, 1});
    CHECK(validate(load("bott_tower_6")).h_vector == std::vector<std::int64_t>{1, 3, 3, 1});
    CHECK(validate(load("bott_tower_12")).h_vector == std::vector<std::int64_t>{1, 6, 15, 20, 15, 6, 1});
}

TEST_CASE("error taxonomy") {
    CHECK(code_of({3, 2, {{1, 2}, {2, 3}, {1}}, {{1, 0, -1}, {0, 1, -1}}}) == "qt_input.NotPure");
    CHECK(code_of({4, 2, {{1, 2}, {2, 3}, {1, 3}}, {{1, 0, -1, 0}, {0, 1, -1, 0}}}) == "qt_input.DanglingVertex");
    CHECK(code_of({3, 2, {{1, 2}, {2, 3}, {1, 3}}, {{1, 0, -1}}}) == "qt_input.InvalidShape");
    CHECK(code_of({3, 2, {{1, 2}, {2, 3}, {1, 3}}, {{1, 0}, {0, 1}}}) == "qt_input.InvalidShape");
    CHECK(code_of({1, 2, {{1, 2}}, {{1}, {0}}}) == "qt_input.InvalidShape");
    CHECK(code_of({3, 2, {{1, 2}, {2, 4}, {1, 3}}, {{1, 0, -1}, {0, 1, -1}}}) == "qt_input.InvalidShape");
    // A path of two edges is pure and unimodular but not a sphere.
    CHECK(code_of({3, 2, {{1, 2}, {2, 3}}, {{1, 0, 1}, {0, 1, 0}}}) == "qt_input.NotSphereLike");
}

TEST_CASE("validate is idempotent and normalizes faces") {
    QuasitoricData d{3, 2, {{3, 1}, {2, 1}, {3, 2}}, {{1, 0, -1}, {0, 1, -1}}};
    const auto v = validate(d);
    CHECK(v.data.maximal_faces == std::vector<Face>{{1, 2}, {1, 3}, {2, 3}});
    CHECK(validate(v.data) == v);
}

TEST_CASE("h-vector properties on random inputs") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 3;
        const int m = n == 1 ? 2 : n == 2 ? 3 + trial % 4 : 4 + trial % 3;
        const auto v = validate(oracle::random_manifold(rng, n, m));
        const auto& h = v.h_vector;
        CHECK(h.size() == static_cast<std::size_t>(n) + 1);
        CHECK(std::accumulate(h.begin(), h.end(), std::int64_t{0}) ==
              static_cast<std::int64_t>(v.data.maximal_faces.size()));
        for (std::size_t i = 0; i < h.size(); ++i) {
            CHECK(h[i] >= 0);
            CHECK(h[i] == h[h.size() - 1 - i]);
        }
    }
}

TEST_CASE("minimal non-faces of the square") {
    const auto v = validate(load("cp1xcp1"));
    CHECK(minimal_non_faces(v) == std::vector<Face>{{1, 3}, {2, 4}});
    CHECK(minimal_non_faces(validate(load("cp2"))) == std::vector<Face>{{1, 2, 3}});
}
