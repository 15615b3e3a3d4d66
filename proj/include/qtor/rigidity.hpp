#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtor/cohomology_ring.hpp"
#include "qtor/e_invariant.hpp"
#include "qtor/ktheory_chern.hpp"
#include "qtor/qt_input.hpp"

namespace qtor {

struct IsoCertificate {
    IntMatrix degree2;  // column f is the image of source generator f
    RingMap map;
    MapCheck check;
    std::size_t relations_checked = 0;
    std::string origin;  // "found" or "supplied"
    std::optional<std::uint64_t> candidate_index;  // lexicographic index when found by search
};

struct IsoSearchResult {
    std::optional<IsoCertificate> iso;
    std::string reason;  // BettiMismatch or ExhaustedBound when no iso
    std::uint64_t search_space = 0;
};

inline constexpr std::uint64_t default_search_cap = 50'000'000;

// Reads QTOR_SEARCH_CAP, falling back to default_search_cap.
std::uint64_t search_cap_from_env();

// Searches degree-2 matrices with entries in [-bound, bound]. The identity is
// tried first when both rings share the same generator count; otherwise the
// lexicographically first acceptor is returned. Throws
// rigidity.BoundTooLarge when the search space exceeds `cap`.
IsoSearchResult find_ring_iso(const GradedRing& a, const GradedRing& b, int bound,
                              std::uint64_t cap = default_search_cap, bool parallel = true);

// Re-verifies a supplied degree-2 matrix; nullopt with `reason` set when it
// does not define a ring isomorphism.
std::optional<IsoCertificate> certify_iso(const GradedRing& a, const GradedRing& b, const IntMatrix& degree2,
                                          std::string& reason);

// q-table agreement under a degree-2 map (column f = image of generator f).
bool square_tables_match(const GradedRing& a, const GradedRing& b, const IntMatrix& degree2);

struct PrimeStatus {
    int p = 0;
    std::string status;  // Certified, OutOfRange or NotApplicable
    std::string reason;
};

struct TwoPrimaryEvidence {
    std::string status;  // Certified or NotApplicable
    std::string route;   // sphere, sq2 or none
    std::string reason;
    std::optional<SquareTable> src_table;
    std::optional<SquareTable> dst_table;
    std::optional<bool> tables_match;
};

struct RigidityVerdict {
    int dim = 0;
    std::string iso_status;  // found, supplied or none
    std::optional<IsoCertificate> iso;
    std::string iso_reason;
    std::optional<KIso> lift;
    std::vector<PrimeStatus> primes;
    std::optional<int> all_primes_from;
    TwoPrimaryEvidence p2;
};

struct VerdictOptions {
    int bound = 2;
    int prime_cap = 97;
    std::optional<IntMatrix> supplied_iso;
    std::uint64_t search_cap = default_search_cap;
};

// Least prime p with p^2 >= n + 2.
int least_certified_prime(int n);

RigidityVerdict verdict(const ValidatedManifold& a, const ValidatedManifold& b, const VerdictOptions& opts);

}  // namespace qtor
