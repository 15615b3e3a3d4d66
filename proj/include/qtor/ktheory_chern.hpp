#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qtor/cohomology_ring.hpp"
#include "qtor/exact_linalg.hpp"

namespace qtor {

// Reduced K-theory of an evenly generated complex, represented by the image of
// the Chern character inside the positive-degree rational cohomology. Since
// cohomology is torsion free here, ch is injective and this lattice is a
// faithful model.
struct KLattice {
    std::vector<std::string> labels;  // ambient coordinate names
    std::vector<int> degrees;         // cohomological degree of each coordinate, ascending
    Lattice lattice;
    std::vector<std::vector<int>> generator_log;  // exponent vector of each generator
    RationalMatrix generators;                    // ch of each generator, ambient coordinates

    std::size_t ambient() const { return degrees.size(); }
    std::size_t rank() const { return lattice.rank(); }

    friend bool operator==(const KLattice& a, const KLattice& b) {
        return a.labels == b.labels && a.degrees == b.degrees && a.lattice == b.lattice &&
               a.generator_log == b.generator_log && a.generators == b.generators;
    }
};

// Lattice generated by ch(prod (L_i - 1)^{a_i}) over 1 <= |a| <= n, with L_i
// the line bundles classified by the degree-2 basis. Throws
// ktheory_chern.FullnessFailure when the associated graded is not Z^{n_i} in
// every degree.
KLattice chern_image(const GradedRing& r);

// Drops the degree-0 slot of a whole-ring vector, and the inverse.
RationalVector to_ambient(const RationalVector& ring_vector);
RationalVector from_ambient(const RationalVector& ambient);

struct AdmissibleElement {
    int degree = 0;          // 2i
    std::size_t position = 0;  // j, zero based
    RationalVector ch;
    friend bool operator==(const AdmissibleElement&, const AdmissibleElement&) = default;
};

struct AdmissibleBasis {
    std::vector<AdmissibleElement> elements;
    friend bool operator==(const AdmissibleBasis&, const AdmissibleBasis&) = default;
};

// A Z-basis whose i-th block has Chern character x^i_j plus higher-degree
// terms; higher tails are the canonical HNF representatives.
AdmissibleBasis admissible_basis(const KLattice& k);
AdmissibleBasis admissible_basis(const Lattice& l, const std::vector<int>& degrees);
bool has_full_associated_graded(const Lattice& l, const std::vector<int>& degrees);

// Restriction to the skeleton of dimension `degree_cap`: drop coordinates of
// higher degree.
KLattice skeleton_truncate(const KLattice& k, int degree_cap);

// K of the quotient by that skeleton: elements whose ch vanishes in degrees
// <= degree_cap, kept in the full ambient coordinates.
KLattice quotient_data(const KLattice& k, int degree_cap);

// Lift of a ring isomorphism to K-theory in lattice bases: column s holds the
// target coordinates of the image of source basis row s.
struct KIso {
    IntMatrix matrix;
    std::size_t relations_checked = 0;
    friend bool operator==(const KIso& a, const KIso& b) { return a.matrix == b.matrix; }
};

// theta_bar applied to an ambient (positive degree) vector.
RationalVector apply_to_ambient(const RingMap& theta_bar, const GradedRing& src, const RationalVector& v);

// Builds theta(rho_1^*(y)) := rho_2^*(y) on the monomial generators, after
// checking that every integer relation among the source generators also holds
// among their theta_bar counterparts. Throws ktheory_chern.KernelMismatch or
// ktheory_chern.NotIso.
KIso lift_iso(const GradedRing& src, const KLattice& src_k, const GradedRing& dst, const KLattice& dst_k,
              const RingMap& theta_bar);

// ch o theta == (theta_bar (x) Q) o ch, checked on every source basis row.
bool lift_relation_holds(const GradedRing& src, const KLattice& src_k, const KLattice& dst_k,
                         const RingMap& theta_bar, const KIso& theta);

// Matrix of a linear map (given on ambient vectors) between two lattices in
// their HNF bases; nullopt if some image leaves the target lattice.
std::optional<IntMatrix> induced_lattice_map(const Lattice& src, const Lattice& dst,
                                             const std::function<RationalVector(const RationalVector&)>& map);

}  // namespace qtor
