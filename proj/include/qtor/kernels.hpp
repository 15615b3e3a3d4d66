#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qtor/cohomology_ring.hpp"

// Data-parallel inner loops of the pipeline. Each OpenMP kernel has a serial
// reference twin with identical output; tests compare the two and the
// benchmark target times them against each other.
namespace qtor::kernels {

// Exponent vectors a with 1 <= |a| <= n over `vars` line bundles, ordered by
// |a| and then with the first coordinate heaviest.
std::vector<std::vector<int>> chern_exponents(std::size_t vars, int n);

// e^x - 1 truncated above the top degree; x is a whole-ring vector.
RationalVector exp_minus_one(const GradedRing& ring, const RationalVector& x);

// ch(prod (L_i - 1)^{a_i}) = prod (e^{x_i} - 1)^{a_i} for every exponent vector.
std::vector<RationalVector> expand_chern_monomials(const GradedRing& ring,
                                                   const std::vector<RationalVector>& line_classes,
                                                   const std::vector<std::vector<int>>& exponents);
std::vector<RationalVector> expand_chern_monomials_serial(const GradedRing& ring,
                                                          const std::vector<RationalVector>& line_classes,
                                                          const std::vector<std::vector<int>>& exponents);

// Number of degree-2 candidate matrices with entries in [-bound, bound].
// Returns nullopt on overflow of 64 bits.
std::optional<std::uint64_t> candidate_count(std::size_t dim, int bound);

// Row-major entries of candidate `index` in lexicographic order (entries
// ascending from -bound).
std::vector<std::int64_t> candidate_matrix(std::uint64_t index, std::size_t dim, int bound);

std::int64_t small_determinant(const std::vector<std::int64_t>& a, std::size_t dim);

// Index of the lexicographically first degree-2 matrix that has det +-1 and
// respects every relation of src inside dst, or nullopt.
std::optional<std::uint64_t> first_degree2_iso(const GradedRing& src, const GradedRing& dst, int bound);
std::optional<std::uint64_t> first_degree2_iso_serial(const GradedRing& src, const GradedRing& dst, int bound);

bool accepts_degree2(const GradedRing& src, const GradedRing& dst, const std::vector<std::int64_t>& a);

}  // namespace qtor::kernels
