#include "qtor/e_invariant.hpp"

#include "qtor/error.hpp"

namespace qtor {

namespace {

[[noreturn]] void malformed(const std::string& why) {
    throw Error("e_invariant", "MalformedCone", why);
}

void check_prime(int p) {
    if (p == 2)
        throw Error("e_invariant", "EvenPrime", "the e-invariant criterion is stated for odd primes",
                    {{"p", p}});
    if (!is_prime(p)) throw Error("e_invariant", "NotPrime", std::to_string(p) + " is not prime", {{"p", p}});
}

RationalMatrix project_columns(const RationalMatrix& m, const std::vector<std::size_t>& keep) {
    RationalMatrix out(m.rows(), keep.size());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < keep.size(); ++c) out(r, c) = m(r, keep[c]);
    return out;
}

}  // namespace

ConeData make_cone(std::vector<int> base_degrees, int cell_degree, const RationalMatrix& lattice_rows,
                   std::vector<std::pair<int, int>> admissible_index) {
    const std::size_t base = base_degrees.size();
    if (cell_degree <= 0 || cell_degree % 2 != 0) malformed("cell degree must be positive and even");
    for (std::size_t c = 0; c < base; ++c) {
        if (base_degrees[c] <= 0 || base_degrees[c] % 2 != 0) malformed("base degrees must be positive and even");
        if (c > 0 && base_degrees[c] < base_degrees[c - 1]) malformed("base degrees must be ascending");
    }
    if (lattice_rows.cols() != base + 1) malformed("lattice rows need one entry per base cell plus the new cell");

    ConeData cone;
    cone.base_degrees = std::move(base_degrees);
    cone.cell_degree = cell_degree;
    cone.extended = hnf(lattice_rows);
    if (cone.extended.rank() != base + 1) malformed("extended lattice must have full rank");
    const std::size_t last = cone.extended.rank() - 1;
    if (cone.extended.pivots()[last] != base || cone.extended.basis()(last, base) != 1)
        malformed("the new cell class must lie in the lattice exactly once (eta)");

    std::vector<std::size_t> keep(base);
    for (std::size_t c = 0; c < base; ++c) keep[c] = c;
    cone.base = hnf(project_columns(cone.extended.basis(), keep));
    if (!has_full_associated_graded(cone.base, cone.base_degrees))
        malformed("base lattice admits no admissible basis");

    if (admissible_index.empty()) {
        for (std::size_t c = 0; c < base; ++c) {
            int j = 1;
            for (std::size_t e = c; e > 0 && cone.base_degrees[e - 1] == cone.base_degrees[c]; --e) ++j;
            admissible_index.emplace_back(cone.base_degrees[c] / 2, j);
        }
    }
    if (admissible_index.size() != base) malformed("admissible_index needs one entry per base coordinate");
    for (std::size_t c = 0; c < base; ++c) {
        int j = 1;
        for (std::size_t e = c; e > 0 && cone.base_degrees[e - 1] == cone.base_degrees[c]; --e) ++j;
        if (admissible_index[c] != std::make_pair(cone.base_degrees[c] / 2, j))
            malformed("admissible_index disagrees with base degrees");
    }
    cone.admissible_index = std::move(admissible_index);
    return cone;
}

ConeData two_cell_cone(int base_degree, int cell_degree, const Rational& a) {
    RationalMatrix rows(2, 2);
    rows(0, 0) = 1;
    rows(0, 1) = a;
    rows(1, 1) = 1;
    return make_cone({base_degree}, cell_degree, rows);
}

Rational classical_e(int cell_degree, int stem, const Rational& a) {
    if (cell_degree <= 0 || stem <= 0)
        throw Error("e_invariant", "MalformedCone", "classical e needs positive cell degree and stem");
    return mod_one(a);
}

EInvariantReport generalized_e(const ConeData& c) {
    const std::size_t base = c.base_degrees.size();
    EInvariantReport rep;
    rep.cell_degree = c.cell_degree;
    rep.base_top_degree = c.base_top_degree();
    const int r = c.cell_degree / 2;
    const int d = c.base_top_degree() / 2;
    AdmissibleBasis basis = admissible_basis(c.base, c.base_degrees);
    for (std::size_t k = 0; k < basis.elements.size(); ++k) {
        const auto& xi = basis.elements[k];
        // A lift of xi: the combination of extended rows whose base part is xi.
        RationalVector lift(base + 1);
        auto coords = c.base.coordinates(xi.ch);
        if (!coords) malformed("admissible element outside the base lattice");
        std::vector<std::size_t> keep(base);
        for (std::size_t col = 0; col < base; ++col) keep[col] = col;
        for (std::size_t row = 0; row + 1 < c.extended.rank(); ++row) {
            RationalVector projected = c.extended.row(row);
            projected.pop_back();
            if (projected != c.base.row(row)) malformed("extended rows do not restrict to the base basis");
            if ((*coords)[row] == 0) continue;
            for (std::size_t col = 0; col <= base; ++col)
                lift[col] += Rational((*coords)[row]) * c.extended.basis()(row, col);
        }
        EEntry e;
        e.degree = xi.degree;
        e.position = xi.position;
        e.raw = lift[base];
        e.mod1 = mod_one(e.raw);
        e.top = xi.degree == 2 * d && r > d;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

bool skeleton_consistency(const ConeData& c, int k) {
    if (2 * k >= c.base_top_degree()) return true;
    std::vector<std::size_t> keep;
    std::vector<int> degrees;
    for (std::size_t col = 0; col < c.base_degrees.size(); ++col)
        if (c.base_degrees[col] <= 2 * k) {
            keep.push_back(col);
            degrees.push_back(c.base_degrees[col]);
        }
    keep.push_back(c.base_degrees.size());
    ConeData truncated;
    try {
        truncated = make_cone(degrees, c.cell_degree, project_columns(c.extended.basis(), keep));
    } catch (const Error& e) {
        throw Error("e_invariant", "NotDeformable",
                    "the cone data does not restrict to the " + std::to_string(2 * k) + "-skeleton: " + e.what(),
                    {{"k", k}});
    }
    const EInvariantReport full = generalized_e(c);
    const EInvariantReport part = generalized_e(truncated);
    for (const EEntry& e : part.entries) {
        bool matched = false;
        for (const EEntry& f : full.entries)
            if (f.degree == e.degree && f.position == e.position) {
                if (f.mod1 != e.mod1) return false;
                matched = true;
            }
        if (!matched) return false;
    }
    return true;
}

const char* to_string(TrivialityStatus s) {
    switch (s) {
        case TrivialityStatus::CertifiedTrivial: return "CertifiedTrivial";
        case TrivialityStatus::CertifiedNontrivial: return "CertifiedNontrivial";
        case TrivialityStatus::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

TrivialityVerdict p_local_triviality(const EInvariantReport& rep, int p, int d) {
    check_prime(p);
    TrivialityVerdict v;
    v.prime = p;
    v.d = d;
    v.bound = p * p - 2;
    const int r = rep.cell_degree / 2;
    v.stem = r - d;
    if (d > v.bound) {
        v.reason = "RangeExceeded: d = " + std::to_string(d) + " > p^2 - 2 = " + std::to_string(v.bound);
        return v;
    }
    auto p_integral = [&](const Rational& q) { return mpz_divisible_ui_p(q.get_den_mpz_t(), static_cast<unsigned long>(p)) == 0; };
    const EEntry* failing_top = nullptr;
    bool all_integral = true;
    for (const EEntry& e : rep.entries) {
        if (p_integral(e.mod1)) continue;
        all_integral = false;
        if (!failing_top && e.degree == 2 * d && r > d) failing_top = &e;
    }
    if (all_integral) {
        v.status = TrivialityStatus::CertifiedTrivial;
        v.reason = "every entry is p-locally integral and d <= p^2 - 2";
        return v;
    }
    if (failing_top && v.stem <= p * p - 3) {
        v.status = TrivialityStatus::CertifiedNontrivial;
        v.witness = *failing_top;
        v.reason = "top-degree entry " + failing_top->mod1.get_str() + " is not p-locally integral and stem k = " +
                   std::to_string(v.stem) + " <= p^2 - 3";
        return v;
    }
    v.reason = failing_top ? "stem k = " + std::to_string(v.stem) + " exceeds p^2 - 3"
                           : "only non-top entries fail p-local integrality";
    return v;
}

RealizabilityEvidence prepare_realizability(const GradedRing& src, const KLattice& src_k, const GradedRing& dst,
                                            const KLattice& dst_k, const RingMap& theta_bar) {
    if (src.n() != dst.n())
        throw Error("e_invariant", "DimensionMismatch", "complexes have different dimensions",
                    {{"src", src.top_degree()}, {"dst", dst.top_degree()}});
    RealizabilityEvidence ev;
    ev.dim = src.top_degree();
    try {
        ev.lift = lift_iso(src, src_k, dst, dst_k, theta_bar);
    } catch (const Error& e) {
        throw Error("e_invariant", "LiftFailed", std::string("lift to K-theory failed: ") + e.what(),
                    {{"cause", e.qualified_code()}});
    }
    ev.lift_relation = lift_relation_holds(src, src_k, dst_k, theta_bar, ev.lift);

    auto unimodular = [](const std::optional<IntMatrix>& m) {
        if (!m || m->rows() != m->cols()) return false;
        Integer det = determinant(*m);
        return det == 1 || det == -1;
    };
    for (int cap = 2; cap <= ev.dim; cap += 2) {
        SkeletonCheck check;
        check.degree_cap = cap;
        KLattice ts = skeleton_truncate(src_k, cap), td = skeleton_truncate(dst_k, cap);
        check.truncation_iso = unimodular(induced_lattice_map(ts.lattice, td.lattice, [&](const RationalVector& v) {
            RationalVector padded(src_k.ambient());
            std::copy(v.begin(), v.end(), padded.begin());
            RationalVector image = apply_to_ambient(theta_bar, src, padded);
            image.resize(v.size());
            return image;
        }));
        if (cap < ev.dim) {
            KLattice qs = quotient_data(src_k, cap), qd = quotient_data(dst_k, cap);
            check.quotient_iso = unimodular(induced_lattice_map(
                qs.lattice, qd.lattice, [&](const RationalVector& v) { return apply_to_ambient(theta_bar, src, v); }));
        } else {
            check.quotient_iso = true;
        }
        ev.skeleta.push_back(check);
    }
    return ev;
}

RealizabilityCertificate certify_at_prime(const RealizabilityEvidence& evidence, int p) {
    check_prime(p);
    RealizabilityCertificate cert;
    cert.prime = p;
    cert.dim = evidence.dim;
    cert.bound = 2 * p * p - 4;
    if (evidence.dim > cert.bound)
        throw Error("e_invariant", "RangeExceeded",
                    "dimension " + std::to_string(evidence.dim) + " exceeds 2p^2 - 4 = " + std::to_string(cert.bound),
                    {{"dim", evidence.dim}, {"bound", cert.bound}, {"p", p}});
    cert.evidence = evidence;
    const int d = evidence.dim / 2;
    bool steps_ok = true;
    for (int k = 2; k <= d; ++k) {
        InductionStep s{k, k - 1, p * p - 2, k - 1 <= p * p - 2};
        steps_ok = steps_ok && s.in_range;
        cert.steps.push_back(s);
    }
    bool skeleta_ok = true;
    for (const auto& s : evidence.skeleta) skeleta_ok = skeleta_ok && s.truncation_iso && s.quotient_iso;
    cert.certified = evidence.lift_relation && skeleta_ok && steps_ok;
    if (!evidence.lift_relation)
        cert.reason = "lift relation failed";
    else if (!skeleta_ok)
        cert.reason = "an induced skeleton or quotient map is not an isomorphism";
    else if (!steps_ok)
        cert.reason = "an induction step is outside the triviality range";
    else
        cert.reason = "dim " + std::to_string(evidence.dim) + " <= 2p^2 - 4 = " + std::to_string(cert.bound) +
                      "; K-theory lift verified on all skeleta";
    return cert;
}

RealizabilityCertificate realizability_check(const GradedRing& src, const KLattice& src_k, const GradedRing& dst,
                                             const KLattice& dst_k, const RingMap& theta_bar, int p) {
    if (src.n() != dst.n())
        throw Error("e_invariant", "DimensionMismatch", "complexes have different dimensions",
                    {{"src", src.top_degree()}, {"dst", dst.top_degree()}});
    check_prime(p);
    if (src.top_degree() > 2 * p * p - 4)
        throw Error("e_invariant", "RangeExceeded",
                    "dimension " + std::to_string(src.top_degree()) + " exceeds 2p^2 - 4 = " +
                        std::to_string(2 * p * p - 4),
                    {{"dim", src.top_degree()}, {"bound", 2 * p * p - 4}, {"p", p}});
    return certify_at_prime(prepare_realizability(src, src_k, dst, dst_k, theta_bar), p);
}

}  // namespace qtor
