#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtor/cohomology_ring.hpp"
#include "qtor/exact_linalg.hpp"
#include "qtor/ktheory_chern.hpp"

namespace qtor {

// Mapping cone C_f of f: S^{2r-1} -> X with X evenly generated. The extended
// lattice lives on the base coordinates (ascending degree) followed by one
// coordinate for the new cell class u_{2r}.
struct ConeData {
    std::vector<int> base_degrees;  // cohomological degrees, ascending
    int cell_degree = 0;            // 2r
    Lattice extended;
    Lattice base;                   // restriction of `extended` to X
    std::vector<std::pair<int, int>> admissible_index;  // (i, j) of each base coordinate, j one based

    int base_top_degree() const { return base_degrees.empty() ? 0 : base_degrees.back(); }
};

// Validates the cone invariants: the extended lattice has full rank, meets the
// u-axis exactly in Z*eta, and restricts to a base lattice that has an
// admissible basis. Throws e_invariant.MalformedCone.
ConeData make_cone(std::vector<int> base_degrees, int cell_degree, const RationalMatrix& lattice_rows,
                   std::vector<std::pair<int, int>> admissible_index = {});

// Cone over a single sphere S^{2d} with ch(xi) = u_{2d} + a u_{2r}.
ConeData two_cell_cone(int base_degree, int cell_degree, const Rational& a);

// [a] in Q/Z for the two-cell cone ch(xi) = u_{2n} + a u_{2n+2k}.
Rational classical_e(int cell_degree, int stem, const Rational& a);

struct EEntry {
    int degree = 0;            // 2i
    std::size_t position = 0;  // j, zero based
    Rational raw;
    Rational mod1;
    bool top = false;  // 2i = 2d and r > d: an honest e-invariant of the pinched map
    friend bool operator==(const EEntry&, const EEntry&) = default;
};

struct EInvariantReport {
    int cell_degree = 0;
    int base_top_degree = 0;
    std::vector<EEntry> entries;
};

// u_{2r}-coefficient of ch of the lift of each admissible basis element.
EInvariantReport generalized_e(const ConeData& c);

// Restricts the cone to the 2k-skeleton of X (plus the new cell) and compares
// reports in degrees <= 2k modulo 1. Throws e_invariant.NotDeformable when the
// truncated data is not a cone.
bool skeleton_consistency(const ConeData& c, int k);

enum class TrivialityStatus { CertifiedTrivial, CertifiedNontrivial, Inconclusive };
const char* to_string(TrivialityStatus s);

struct TrivialityVerdict {
    TrivialityStatus status = TrivialityStatus::Inconclusive;
    int prime = 0;
    int d = 0;
    int bound = 0;  // p^2 - 2
    int stem = 0;   // r - d
    std::string reason;
    std::optional<EEntry> witness;
};

bool is_prime(int p);

// Throws e_invariant.EvenPrime for p = 2 and e_invariant.NotPrime otherwise
// when p is not prime.
TrivialityVerdict p_local_triviality(const EInvariantReport& rep, int p, int d);

struct SkeletonCheck {
    int degree_cap = 0;
    bool truncation_iso = false;
    bool quotient_iso = false;  // vacuous at the top skeleton
};

struct InductionStep {
    int k = 0;         // cells of dimension 2k are being attached
    int base_dim = 0;  // half-dimension of the skeleton receiving the attaching map
    int bound = 0;     // p^2 - 2
    bool in_range = false;
};

// Prime-independent part of a realizability certificate.
struct RealizabilityEvidence {
    int dim = 0;
    KIso lift;
    bool lift_relation = false;
    std::vector<SkeletonCheck> skeleta;
};

struct RealizabilityCertificate {
    bool certified = false;
    int prime = 0;
    int dim = 0;
    int bound = 0;  // 2p^2 - 4
    RealizabilityEvidence evidence;
    std::vector<InductionStep> steps;
    std::string reason;
};

// Lifts theta_bar and checks the induced maps on every skeleton and quotient.
// Throws e_invariant.DimensionMismatch or e_invariant.LiftFailed.
RealizabilityEvidence prepare_realizability(const GradedRing& src, const KLattice& src_k, const GradedRing& dst,
                                            const KLattice& dst_k, const RingMap& theta_bar);

// Throws e_invariant.EvenPrime, e_invariant.NotPrime or e_invariant.RangeExceeded.
RealizabilityCertificate certify_at_prime(const RealizabilityEvidence& evidence, int p);

RealizabilityCertificate realizability_check(const GradedRing& src, const KLattice& src_k, const GradedRing& dst,
                                             const KLattice& dst_k, const RingMap& theta_bar, int p);

}  // namespace qtor
