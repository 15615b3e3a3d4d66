#include "qtor/rigidity.hpp"

#include <cstdlib>
#include <map>

#include "qtor/error.hpp"
#include "qtor/kernels.hpp"

namespace qtor {

namespace {

IntMatrix from_row_major(const std::vector<std::int64_t>& a, std::size_t dim) {
    IntMatrix m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) m(r, c) = Integer(static_cast<long>(a[r * dim + c]));
    return m;
}

std::vector<std::int64_t> identity_row_major(std::size_t dim) {
    std::vector<std::int64_t> a(dim * dim, 0);
    for (std::size_t k = 0; k < dim; ++k) a[k * dim + k] = 1;
    return a;
}

}  // namespace

std::uint64_t search_cap_from_env() {
    const char* raw = std::getenv("QTOR_SEARCH_CAP");
    if (!raw || !*raw) return default_search_cap;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (*end != '\0' || v == 0)
        throw Error("rigidity", "ParseError", "QTOR_SEARCH_CAP must be a positive integer", {{"value", raw}});
    return v;
}

std::optional<IsoCertificate> certify_iso(const GradedRing& a, const GradedRing& b, const IntMatrix& degree2,
                                          std::string& reason) {
    if (a.n() != b.n() || a.ranks() != b.ranks()) {
        reason = "BettiMismatch";
        return std::nullopt;
    }
    if (degree2.rows() != b.rank(1) || degree2.cols() != a.rank(1)) {
        reason = "degree-2 matrix has the wrong shape";
        return std::nullopt;
    }
    InducedMap induced = induce_from_degree2(a, b, degree2);
    if (!induced.ok) {
        reason = induced.reason;
        return std::nullopt;
    }
    MapCheck check = verify_ring_map(a, b, induced.map);
    if (!check.ok) {
        reason = check.reason;
        return std::nullopt;
    }
    IsoCertificate cert;
    cert.degree2 = degree2;
    cert.map = std::move(induced.map);
    cert.check = std::move(check);
    cert.relations_checked = induced.relations_checked;
    cert.origin = "supplied";
    return cert;
}

IsoSearchResult find_ring_iso(const GradedRing& a, const GradedRing& b, int bound, std::uint64_t cap,
                              bool parallel) {
    IsoSearchResult result;
    if (a.n() != b.n() || a.ranks() != b.ranks()) {
        result.reason = "BettiMismatch";
        return result;
    }
    if (bound < 0) throw Error("rigidity", "BoundTooLarge", "bound must be non-negative", {{"bound", bound}});
    const std::size_t dim = a.rank(1);
    const auto total = kernels::candidate_count(dim, bound);
    if (!total || *total > cap)
        throw Error("rigidity", "BoundTooLarge", "search space exceeds the safety cap",
                    {{"bound", bound}, {"dim", dim}, {"cap", cap}});
    result.search_space = *total;

    std::optional<std::uint64_t> index;
    std::vector<std::int64_t> chosen;
    if (bound >= 1 && kernels::accepts_degree2(a, b, identity_row_major(dim))) {
        chosen = identity_row_major(dim);
        std::uint64_t idx = 0;
        const std::uint64_t base = 2 * static_cast<std::uint64_t>(bound) + 1;
        for (std::int64_t e : chosen) idx = idx * base + static_cast<std::uint64_t>(e + bound);
        index = idx;
    } else {
        index = parallel ? kernels::first_degree2_iso(a, b, bound) : kernels::first_degree2_iso_serial(a, b, bound);
        if (index) chosen = kernels::candidate_matrix(*index, dim, bound);
    }
    if (!index) {
        result.reason = "ExhaustedBound";
        return result;
    }
    std::string reason;
    auto cert = certify_iso(a, b, from_row_major(chosen, dim), reason);
    if (!cert)
        throw Error("rigidity", "InternalMismatch", "accepted candidate failed full verification: " + reason);
    cert->origin = "found";
    cert->candidate_index = index;
    result.iso = std::move(cert);
    return result;
}

bool square_tables_match(const GradedRing& a, const GradedRing& b, const IntMatrix& degree2) {
    const SquareTable ta = mod2_square_rank(a), tb = mod2_square_rank(b);
    std::map<std::vector<int>, int> lookup(tb.values.begin(), tb.values.end());
    for (const auto& [x, q] : ta.values) {
        std::vector<int> y(degree2.rows(), 0);
        for (std::size_t r = 0; r < degree2.rows(); ++r) {
            Integer s = 0;
            for (std::size_t c = 0; c < degree2.cols(); ++c) s += degree2(r, c) * x[c];
            y[r] = mpz_odd_p(s.get_mpz_t()) ? 1 : 0;
        }
        auto it = lookup.find(y);
        if (it == lookup.end() || it->second != q) return false;
    }
    return ta.nonzero_count == tb.nonzero_count;
}

int least_certified_prime(int n) {
    for (int p = 2;; ++p)
        if (is_prime(p) && p * p >= n + 2) return p;
}

RigidityVerdict verdict(const ValidatedManifold& a, const ValidatedManifold& b, const VerdictOptions& opts) {
    const GradedRing ra = cohomology(a), rb = cohomology(b);
    RigidityVerdict v;
    v.dim = ra.top_degree();
    const int n = ra.n();

    if (opts.supplied_iso) {
        std::string reason;
        v.iso = certify_iso(ra, rb, *opts.supplied_iso, reason);
        v.iso_status = v.iso ? "supplied" : "none";
        v.iso_reason = v.iso ? "supplied matrix re-verified" : "supplied matrix rejected: " + reason;
    } else {
        IsoSearchResult found = find_ring_iso(ra, rb, opts.bound, opts.search_cap);
        v.iso = std::move(found.iso);
        v.iso_status = v.iso ? "found" : "none";
        v.iso_reason = v.iso ? "first acceptor within bound " + std::to_string(opts.bound) : found.reason;
    }

    std::string blocker;
    std::optional<RealizabilityEvidence> evidence;
    if (!v.iso) {
        blocker = "no ring isomorphism: " + v.iso_reason;
    } else {
        try {
            KLattice ka = chern_image(ra), kb = chern_image(rb);
            evidence = prepare_realizability(ra, ka, rb, kb, v.iso->map);
            v.lift = evidence->lift;
        } catch (const Error& e) {
            blocker = std::string("lift failed: ") + e.qualified_code() + ": " + e.what();
        }
    }

    for (int p = 3; p <= opts.prime_cap; ++p) {
        if (!is_prime(p)) continue;
        PrimeStatus s{p, "", ""};
        if (!evidence) {
            s.status = "NotApplicable";
            s.reason = blocker;
        } else if (v.dim > 2 * p * p - 4) {
            s.status = "OutOfRange";
            s.reason = "dim " + std::to_string(v.dim) + " > 2p^2 - 4 = " + std::to_string(2 * p * p - 4);
        } else {
            RealizabilityCertificate cert = certify_at_prime(*evidence, p);
            s.status = cert.certified ? "Certified" : "NotApplicable";
            s.reason = cert.reason;
        }
        v.primes.push_back(std::move(s));
    }

    TwoPrimaryEvidence& p2 = v.p2;
    if (!v.iso) {
        p2.status = "NotApplicable";
        p2.route = "none";
        p2.reason = blocker;
    } else if (n == 1) {
        p2.status = "Certified";
        p2.route = "sphere";
        p2.reason = "every quasitoric surface is S^2";
    } else if (n == 2) {
        p2.src_table = mod2_square_rank(ra);
        p2.dst_table = mod2_square_rank(rb);
        p2.tables_match = square_tables_match(ra, rb, v.iso->degree2);
        p2.status = "Certified";
        p2.route = "sq2";
        p2.reason = "dim 4: mod 2 cohomology with Sq^2 is carried by the ring isomorphism";
    } else {
        p2.status = "NotApplicable";
        p2.route = "none";
        p2.reason = "dim " + std::to_string(v.dim) + " > 4";
    }

    if (evidence) {
        v.all_primes_from = least_certified_prime(n);
        if (*v.all_primes_from == 2 && p2.status != "Certified") v.all_primes_from = 3;
    }
    return v;
}

}  // namespace qtor
