#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qtor/exact_linalg.hpp"
#include "qtor/qt_input.hpp"

namespace qtor {

// Exponent vector over the free degree-2 generators.
using Monomial = std::vector<int>;

// All monomials of the given degree in `vars` variables, first variable
// heaviest first: x^2, xy, y^2.
std::vector<Monomial> monomials_of_degree(std::size_t vars, int degree);

// One graded slice H^{2i}: the monomials spanning it, the integral relations
// among them, a chosen Z-basis and the projection onto basis coordinates.
struct DegreePiece {
    std::vector<Monomial> monomials;
    IntMatrix relations;                     // HNF rows over `monomials`
    std::vector<SparseRow> representatives;  // basis polynomials over `monomials`
    IntMatrix projection;                    // rank x monomials.size()
    std::vector<std::string> labels;

    std::size_t rank() const { return representatives.size(); }

    friend bool operator==(const DegreePiece& a, const DegreePiece& b) {
        return a.monomials == b.monomials && a.relations == b.relations &&
               a.representatives == b.representatives && a.projection == b.projection &&
               a.labels == b.labels;
    }
};

// A homogeneous class of cohomological degree `degree` (even).
struct Class {
    int degree = 0;
    IntVector coords;
    friend bool operator==(const Class&, const Class&) = default;
};

// Integral cohomology of a quasitoric manifold as a graded ring with a fixed
// basis in each even degree. Elements of the whole ring are dense vectors over
// the concatenated bases (degree 0 first).
class GradedRing {
public:
    GradedRing() = default;
    GradedRing(int n, std::vector<int> free_generators, IntMatrix linear_forms,
               std::vector<DegreePiece> pieces);

    int n() const noexcept { return n_; }
    int top_degree() const noexcept { return 2 * n_; }
    const std::vector<int>& free_generators() const noexcept { return free_generators_; }
    // Row j expresses v_{j+1} in the free generators.
    const IntMatrix& linear_forms() const noexcept { return linear_forms_; }
    const DegreePiece& piece(int i) const { return pieces_.at(static_cast<std::size_t>(i)); }
    const std::vector<DegreePiece>& pieces() const noexcept { return pieces_; }

    // Rank of H^{2i}; zero outside 0..n.
    std::size_t rank(int i) const;
    std::vector<std::int64_t> ranks() const;
    std::size_t offset(int i) const { return offsets_.at(static_cast<std::size_t>(i)); }
    std::size_t total_rank() const noexcept { return offsets_.back(); }
    int half_degree_of(std::size_t global) const;
    std::string label(std::size_t global) const;

    std::size_t monomial_index(int i, const Monomial& mono) const;
    // Class coordinates of a polynomial given over the degree-i monomials.
    IntVector project(int i, const IntVector& poly) const;

    // Product of global basis elements p and q, sparse over global indices.
    const std::vector<std::pair<std::size_t, Integer>>& product(std::size_t p, std::size_t q) const {
        return table_[p * total_rank() + q];
    }

    template <class T>
    std::vector<T> multiply(const std::vector<T>& a, const std::vector<T>& b) const;

    // Product of a degree-2i slice vector with a degree-2j slice vector,
    // returned as a degree-2(i+j) slice vector (empty above the top degree).
    template <class T>
    std::vector<T> multiply_homogeneous(int i, const std::vector<T>& a, int j, const std::vector<T>& b) const;

    // Classes above the top degree vanish: the result then has no coordinates.
    Class cup(const Class& a, const Class& b) const;
    Class basis_class(int i, std::size_t j) const;
    Class unit() const { return basis_class(0, 0); }

    // Pairing H^{2i} x H^{2n-2i} -> H^{2n} in the chosen bases.
    IntMatrix pairing(int i) const;

    friend bool operator==(const GradedRing& a, const GradedRing& b) {
        return a.n_ == b.n_ && a.free_generators_ == b.free_generators_ &&
               a.linear_forms_ == b.linear_forms_ && a.pieces_ == b.pieces_;
    }

private:
    void build_tables();
    void require_small_constants() const;

    int n_ = 0;
    std::vector<int> free_generators_;
    IntMatrix linear_forms_;
    std::vector<DegreePiece> pieces_;
    std::vector<std::size_t> offsets_{0};
    std::vector<int> half_degree_;
    std::vector<std::map<Monomial, std::size_t>> monomial_index_;
    std::vector<std::vector<std::pair<std::size_t, Integer>>> table_;
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> table64_;
    bool small_constants_ = true;
};

GradedRing cohomology(const ValidatedManifold& v);

bool check_commutativity(const GradedRing& r);
bool check_associativity(const GradedRing& r);
bool check_poincare_duality(const GradedRing& r);

// Degree-preserving map H*(src) -> H*(dst); blocks[i] is rank_dst(i) x rank_src(i)
// acting on column coordinate vectors.
struct RingMap {
    std::vector<IntMatrix> blocks;
    friend bool operator==(const RingMap&, const RingMap&) = default;
};

struct MapCheck {
    bool ok = false;
    std::string reason;
    std::vector<Integer> determinants;  // per degree
    std::size_t pairs_checked = 0;
};

MapCheck verify_ring_map(const GradedRing& src, const GradedRing& dst, const RingMap& f);
bool verify_ring_map_ok(const GradedRing& src, const GradedRing& dst, const RingMap& f);

RingMap identity_map(const GradedRing& r);
RingMap compose(const RingMap& g, const RingMap& f);  // g after f
// Inverse of a map whose blocks are unimodular.
RingMap invert(const RingMap& f);

IntVector apply(const RingMap& f, const GradedRing& src, const IntVector& element);
RationalVector apply(const RingMap& f, const GradedRing& src, const RationalVector& element);

// Extends a map on degree-2 generators (a is rank_dst(1) x rank_src(1), column f
// is the image of the f-th source generator) multiplicatively. Fails when some
// source relation does not map to zero; `relations_checked` counts the
// relation rows evaluated.
struct InducedMap {
    bool ok = false;
    RingMap map;
    std::string reason;
    std::size_t relations_checked = 0;
};
InducedMap induce_from_degree2(const GradedRing& src, const GradedRing& dst, const IntMatrix& a);

// Fast feasibility test used by the isomorphism search: machine integers,
// stops at the first relation that fails.
bool degree2_map_respects_relations(const GradedRing& src, const GradedRing& dst,
                                    const std::vector<std::int64_t>& a_row_major);

// x -> x^2 on H^2(M; F_2) for n = 2. Squaring is additive mod 2, so this is
// Sq^2 restricted to degree 2; `rank` is the F_2-rank of that linear map.
struct SquareTable {
    int rank = 0;
    bool identically_zero = true;
    int nonzero_count = 0;
    std::vector<std::pair<std::vector<int>, int>> values;  // (class mod 2, q value)
};
SquareTable mod2_square_rank(const GradedRing& r);

}  // namespace qtor
