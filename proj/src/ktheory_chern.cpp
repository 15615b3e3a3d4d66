#include "qtor/ktheory_chern.hpp"

#include "qtor/error.hpp"
#include "qtor/kernels.hpp"

namespace qtor {

namespace {

RationalMatrix rows_to_matrix(const std::vector<RationalVector>& rows, std::size_t cols) {
    RationalMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    return m;
}

RationalMatrix select_columns(const RationalMatrix& m, const std::vector<std::size_t>& keep) {
    RationalMatrix out(m.rows(), keep.size());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < keep.size(); ++c) out(r, c) = m(r, keep[c]);
    return out;
}

std::vector<RationalVector> line_classes(const GradedRing& r) {
    std::vector<RationalVector> lines;
    for (std::size_t j = 0; j < r.rank(1); ++j) {
        RationalVector x(r.total_rank());
        x[r.offset(1) + j] = 1;
        lines.push_back(std::move(x));
    }
    return lines;
}

}  // namespace

RationalVector to_ambient(const RationalVector& ring_vector) {
    return RationalVector(ring_vector.begin() + 1, ring_vector.end());
}

RationalVector from_ambient(const RationalVector& ambient) {
    RationalVector v(ambient.size() + 1);
    std::copy(ambient.begin(), ambient.end(), v.begin() + 1);
    return v;
}

bool has_full_associated_graded(const Lattice& l, const std::vector<int>& degrees) {
    if (l.rank() != l.ambient()) return false;
    for (std::size_t k = 0; k < l.rank(); ++k) {
        const std::size_t c = l.pivots()[k];
        if (l.basis()(k, c) != 1) return false;
        for (std::size_t j = 0; j < degrees.size(); ++j)
            if (j != c && degrees[j] == degrees[c] && l.basis()(k, j) != 0) return false;
    }
    return true;
}

KLattice chern_image(const GradedRing& r) {
    KLattice k;
    for (std::size_t g = 1; g < r.total_rank(); ++g) {
        k.labels.push_back(r.label(g));
        k.degrees.push_back(2 * r.half_degree_of(g));
    }
    k.generator_log = kernels::chern_exponents(r.rank(1), r.n());
    auto gens = kernels::expand_chern_monomials(r, line_classes(r), k.generator_log);
    for (auto& g : gens) g = to_ambient(g);
    k.generators = rows_to_matrix(gens, k.ambient());
    k.lattice = hnf(k.generators);
    if (!has_full_associated_graded(k.lattice, k.degrees))
        throw Error("ktheory_chern", "FullnessFailure",
                    "Chern character lattice is not full in some degree (not a quasitoric cohomology ring)",
                    {{"rank", k.lattice.rank()}, {"ambient", k.ambient()}});
    return k;
}

AdmissibleBasis admissible_basis(const Lattice& l, const std::vector<int>& degrees) {
    if (!has_full_associated_graded(l, degrees))
        throw Error("ktheory_chern", "FullnessFailure", "lattice admits no admissible basis");
    AdmissibleBasis b;
    for (std::size_t k = 0; k < l.rank(); ++k) {
        const std::size_t c = l.pivots()[k];
        std::size_t first = c;
        while (first > 0 && degrees[first - 1] == degrees[c]) --first;
        b.elements.push_back({degrees[c], c - first, l.row(k)});
    }
    return b;
}

AdmissibleBasis admissible_basis(const KLattice& k) { return admissible_basis(k.lattice, k.degrees); }

KLattice skeleton_truncate(const KLattice& k, int degree_cap) {
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < k.ambient(); ++c)
        if (k.degrees[c] <= degree_cap) keep.push_back(c);
    KLattice out;
    for (std::size_t c : keep) {
        out.labels.push_back(k.labels[c]);
        out.degrees.push_back(k.degrees[c]);
    }
    out.lattice = keep.empty() ? Lattice(0) : hnf(select_columns(k.lattice.basis(), keep));
    out.generator_log = k.generator_log;
    out.generators = select_columns(k.generators, keep);
    return out;
}

KLattice quotient_data(const KLattice& k, int degree_cap) {
    KLattice out;
    out.labels = k.labels;
    out.degrees = k.degrees;
    RationalMatrix rows(0, k.ambient());
    for (std::size_t r = 0; r < k.rank(); ++r)
        if (k.degrees[k.lattice.pivots()[r]] > degree_cap) rows.append_row(k.lattice.row(r));
    out.lattice = rows.rows() ? hnf(rows) : Lattice(k.ambient());
    out.generators = out.lattice.basis();
    return out;
}

RationalVector apply_to_ambient(const RingMap& theta_bar, const GradedRing& src, const RationalVector& v) {
    return to_ambient(apply(theta_bar, src, from_ambient(v)));
}

std::optional<IntMatrix> induced_lattice_map(const Lattice& src, const Lattice& dst,
                                             const std::function<RationalVector(const RationalVector&)>& map) {
    IntMatrix m(dst.rank(), src.rank());
    for (std::size_t s = 0; s < src.rank(); ++s) {
        auto coords = dst.coordinates(map(src.row(s)));
        if (!coords) return std::nullopt;
        for (std::size_t t = 0; t < dst.rank(); ++t) m(t, s) = (*coords)[t];
    }
    return m;
}

KIso lift_iso(const GradedRing& src, const KLattice& src_k, const GradedRing& dst, const KLattice& dst_k,
              const RingMap& theta_bar) {
    if (src.n() != dst.n() || src.rank(1) != dst.rank(1))
        throw Error("ktheory_chern", "NotIso", "rings have different shapes");

    // rho_2 classifies the theta_bar images of the degree-2 basis.
    const IntMatrix& a = theta_bar.blocks.at(1);
    std::vector<RationalVector> images;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        RationalVector x(dst.total_rank());
        for (std::size_t t = 0; t < a.rows(); ++t) x[dst.offset(1) + t] = a(t, j);
        images.push_back(std::move(x));
    }
    auto target_gens = kernels::expand_chern_monomials(dst, images, src_k.generator_log);
    for (auto& g : target_gens) g = to_ambient(g);

    HermiteDecomposition dec = hermite_decompose(src_k.generators);
    if (!(dec.lattice == src_k.lattice))
        throw Error("ktheory_chern", "NotIso", "source generators do not span the source lattice");

    auto combine = [&](const SparseRow& z) {
        RationalVector v(dst_k.ambient());
        for (const auto& [g, coef] : z)
            for (std::size_t c = 0; c < v.size(); ++c)
                if (target_gens[g][c] != 0) v[c] += Rational(coef) * target_gens[g][c];
        return v;
    };

    KIso out;
    // Ker rho_1^* must lie in Ker rho_2^*: every integer relation among the
    // source generators has to kill the target generators too.
    for (const SparseRow& z : dec.relations) {
        ++out.relations_checked;
        for (const auto& x : combine(z))
            if (x != 0)
                throw Error("ktheory_chern", "KernelMismatch",
                            "a relation among source generators fails among their images",
                            {{"relation_index", out.relations_checked - 1}});
    }

    out.matrix = IntMatrix(dst_k.rank(), src_k.rank());
    for (std::size_t s = 0; s < src_k.rank(); ++s) {
        RationalVector image = combine(dec.transform[s]);
        auto coords = dst_k.lattice.coordinates(image);
        if (!coords)
            throw Error("ktheory_chern", "NotIso", "image of a basis element leaves the target lattice",
                        {{"basis_row", s}});
        for (std::size_t t = 0; t < dst_k.rank(); ++t) out.matrix(t, s) = (*coords)[t];
    }
    if (out.matrix.rows() != out.matrix.cols())
        throw Error("ktheory_chern", "NotIso", "lattice ranks differ");
    Integer det = determinant(out.matrix);
    if (det != 1 && det != -1)
        throw Error("ktheory_chern", "NotIso", "induced map is not invertible over Z", {{"det", det.get_str()}});
    if (!lift_relation_holds(src, src_k, dst_k, theta_bar, out))
        throw Error("ktheory_chern", "NotIso", "ch o theta differs from theta_bar o ch");
    return out;
}

bool lift_relation_holds(const GradedRing& src, const KLattice& src_k, const KLattice& dst_k,
                         const RingMap& theta_bar, const KIso& theta) {
    for (std::size_t s = 0; s < src_k.rank(); ++s) {
        RationalVector expected = apply_to_ambient(theta_bar, src, src_k.lattice.row(s));
        RationalVector got(dst_k.ambient());
        for (std::size_t t = 0; t < dst_k.rank(); ++t) {
            if (theta.matrix(t, s) == 0) continue;
            for (std::size_t c = 0; c < got.size(); ++c)
                got[c] += Rational(theta.matrix(t, s)) * dst_k.lattice.basis()(t, c);
        }
        if (got != expected) return false;
    }
    return true;
}

}  // namespace qtor
