#pragma once

#include <cstdint>
#include <vector>

#include "qtor/exact_linalg.hpp"

namespace qtor {

using Face = std::vector<int>;  // one-based facet indices, sorted ascending

// Combinatorial data of a quasitoric manifold: the dual simplicial sphere of
// the orbit polytope (maximal faces = vertices of the polytope, as sets of
// facets) and the n x m characteristic matrix, one column per facet.
struct QuasitoricData {
    int m = 0;
    int n = 0;
    std::vector<Face> maximal_faces;
    std::vector<std::vector<std::int64_t>> lambda;  // n rows of m entries

    friend bool operator==(const QuasitoricData&, const QuasitoricData&) = default;
};

struct ValidatedManifold {
    QuasitoricData data;
    std::vector<std::int64_t> f_vector;  // f_{-1}, f_0, ..., f_{n-1}
    std::vector<std::int64_t> h_vector;  // h_0, ..., h_n

    friend bool operator==(const ValidatedManifold&, const ValidatedManifold&) = default;
};

// Checks shape, purity, vertex coverage, unimodularity of lambda on every
// maximal face, and the Dehn-Sommerville symmetry of the h-vector. Faces are
// normalized (sorted within and between faces); lambda is kept as given.
ValidatedManifold validate(const QuasitoricData& data);

const std::vector<std::int64_t>& h_vector(const ValidatedManifold& v);

std::vector<std::int64_t> f_vector_of(const std::vector<Face>& maximal_faces, int n);
std::vector<std::int64_t> h_from_f(const std::vector<std::int64_t>& f, int n);

// n x n minor of lambda on the given columns.
Integer face_determinant(const QuasitoricData& data, const Face& face);

bool is_face(const std::vector<Face>& maximal_faces, const Face& candidate);

// Minimal non-faces of the simplicial complex (the Stanley-Reisner generators).
std::vector<Face> minimal_non_faces(const ValidatedManifold& v);

}  // namespace qtor
