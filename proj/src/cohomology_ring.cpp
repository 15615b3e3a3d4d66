#include "qtor/cohomology_ring.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "qtor/error.hpp"

namespace qtor {

namespace {

using Polynomial = std::map<Monomial, Integer>;

void enumerate(std::size_t vars, int degree, std::size_t pos, Monomial& cur, std::vector<Monomial>& out) {
    if (pos + 1 == vars) {
        cur[pos] = degree;
        out.push_back(cur);
        return;
    }
    for (int e = degree; e >= 0; --e) {
        cur[pos] = e;
        enumerate(vars, degree - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

std::string monomial_label(const Monomial& mono, const std::vector<int>& gens) {
    std::string s;
    for (std::size_t k = 0; k < mono.size(); ++k) {
        if (mono[k] == 0) continue;
        if (!s.empty()) s += "*";
        s += "v" + std::to_string(gens[k]);
        if (mono[k] > 1) s += "^" + std::to_string(mono[k]);
    }
    return s.empty() ? "1" : s;
}

std::string polynomial_label(const SparseRow& poly, const std::vector<Monomial>& monos,
                             const std::vector<int>& gens) {
    std::string s;
    for (const auto& [c, coef] : poly) {
        std::string m = monomial_label(monos[c], gens);
        if (coef < 0)
            s += s.empty() ? "-" : "-";
        else if (!s.empty())
            s += "+";
        Integer a = abs(coef);
        if (a != 1) s += a.get_str() + "*";
        s += m;
    }
    return s.empty() ? "0" : s;
}

Polynomial multiply_linear(const Polynomial& p, const IntVector& form) {
    Polynomial out;
    for (const auto& [mono, coef] : p) {
        for (std::size_t k = 0; k < form.size(); ++k) {
            if (form[k] == 0) continue;
            Monomial next = mono;
            ++next[k];
            out[next] += coef * form[k];
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

// Choose the maximal face to eliminate: the one whose indices, read from the
// largest down, compare greatest. Its lambda columns are unimodular, so the
// remaining generators are free over Z.
Face eliminated_face(const ValidatedManifold& v) {
    auto key = [](const Face& f) { return std::vector<int>(f.rbegin(), f.rend()); };
    return *std::max_element(v.data.maximal_faces.begin(), v.data.maximal_faces.end(),
                             [&](const Face& a, const Face& b) { return key(a) < key(b); });
}

DegreePiece build_piece(int degree, std::size_t vars, const std::vector<int>& gens,
                        const std::vector<Polynomial>& relation_polys,
                        const std::vector<int>& relation_degrees, std::int64_t expected_rank) {
    DegreePiece piece;
    piece.monomials = monomials_of_degree(vars, degree);
    const std::size_t count = piece.monomials.size();
    std::map<Monomial, std::size_t> index;
    for (std::size_t c = 0; c < count; ++c) index[piece.monomials[c]] = c;

    // Columns of the elimination matrix run in reverse canonical order, so
    // monomials heavy in the last generators become pivots first.
    auto elim_col = [&](std::size_t canonical) { return count - 1 - canonical; };

    std::vector<std::vector<std::pair<std::size_t, Integer>>> rows;
    Monomial shifted(vars);
    for (std::size_t r = 0; r < relation_polys.size(); ++r) {
        const int d = relation_degrees[r];
        if (d > degree) continue;
        for (const Monomial& mu : monomials_of_degree(vars, degree - d)) {
            auto& row = rows.emplace_back();
            for (const auto& [mono, coef] : relation_polys[r]) {
                for (std::size_t k = 0; k < vars; ++k) shifted[k] = mono[k] + mu[k];
                row.emplace_back(elim_col(index.at(shifted)), coef);
            }
        }
    }
    Lattice rel = hnf(count, rows);
    const std::size_t r = rel.rank();
    if (static_cast<std::int64_t>(count - r) != expected_rank)
        throw Error("cohomology_ring", "RankMismatch",
                    "rank of H^" + std::to_string(2 * degree) + " is " + std::to_string(count - r) +
                        ", h-vector predicts " + std::to_string(expected_rank),
                    {{"degree", 2 * degree}, {"computed", count - r}, {"expected", expected_rank}});

    piece.relations = IntMatrix(r, count);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t c = 0; c < count; ++c)
            piece.relations(k, c) = rel.basis()(k, elim_col(c)).get_num();

    bool unit_pivots = true;
    std::vector<bool> is_pivot(count, false);
    for (std::size_t k = 0; k < r; ++k) {
        if (rel.basis()(k, rel.pivots()[k]) != 1) unit_pivots = false;
        is_pivot[count - 1 - rel.pivots()[k]] = true;
    }

    const std::size_t basis_size = count - r;
    piece.projection = IntMatrix(basis_size, count);
    if (unit_pivots) {
        std::vector<std::size_t> standard;
        for (std::size_t c = 0; c < count; ++c)
            if (!is_pivot[c]) standard.push_back(c);
        for (std::size_t t = 0; t < basis_size; ++t) {
            piece.representatives.push_back({{standard[t], Integer(1)}});
            piece.labels.push_back(monomial_label(piece.monomials[standard[t]], gens));
            piece.projection(t, standard[t]) = 1;
        }
        for (std::size_t k = 0; k < r; ++k) {
            const std::size_t pc = count - 1 - rel.pivots()[k];
            for (std::size_t t = 0; t < basis_size; ++t)
                piece.projection(t, pc) = -piece.relations(k, standard[t]);
        }
        return piece;
    }

    // No monomial basis in this order: complete the relation lattice to a
    // unimodular basis of Z^count and use the complementary coordinates.
    IntegerHermite col = integer_hnf(piece.relations.transpose());
    for (std::size_t k = 0; k < col.h.rows(); ++k)
        if (col.h(k, k) != 1)
            throw Error("cohomology_ring", "RankMismatch",
                        "torsion in H^" + std::to_string(2 * degree) + " (input is not quasitoric)",
                        {{"degree", 2 * degree}});
    RationalMatrix u_inv = inverse(to_rational(col.u));
    for (std::size_t t = 0; t < basis_size; ++t) {
        SparseRow rep;
        for (std::size_t c = 0; c < count; ++c) {
            piece.projection(t, c) = col.u(r + t, c);
            const Rational& x = u_inv(c, r + t);
            if (x != 0) rep.emplace_back(c, x.get_num());
        }
        piece.labels.push_back(polynomial_label(rep, piece.monomials, gens));
        piece.representatives.push_back(std::move(rep));
    }
    return piece;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t vars, int degree) {
    std::vector<Monomial> out;
    if (degree < 0) return out;
    if (vars == 0) {
        if (degree == 0) out.emplace_back();
        return out;
    }
    Monomial cur(vars, 0);
    enumerate(vars, degree, 0, cur, out);
    return out;
}

GradedRing::GradedRing(int n, std::vector<int> free_generators, IntMatrix linear_forms,
                       std::vector<DegreePiece> pieces)
    : n_(n),
      free_generators_(std::move(free_generators)),
      linear_forms_(std::move(linear_forms)),
      pieces_(std::move(pieces)) {
    build_tables();
}

std::size_t GradedRing::rank(int i) const {
    if (i < 0 || i > n_) return 0;
    return pieces_[static_cast<std::size_t>(i)].rank();
}

std::vector<std::int64_t> GradedRing::ranks() const {
    std::vector<std::int64_t> out;
    for (int i = 0; i <= n_; ++i) out.push_back(static_cast<std::int64_t>(rank(i)));
    return out;
}

int GradedRing::half_degree_of(std::size_t global) const { return half_degree_.at(global); }

std::string GradedRing::label(std::size_t global) const {
    const int i = half_degree_of(global);
    return pieces_[static_cast<std::size_t>(i)].labels[global - offset(i)];
}

std::size_t GradedRing::monomial_index(int i, const Monomial& mono) const {
    return monomial_index_.at(static_cast<std::size_t>(i)).at(mono);
}

IntVector GradedRing::project(int i, const IntVector& poly) const { return qtor::multiply(piece(i).projection, poly); }

void GradedRing::build_tables() {
    offsets_.assign(1, 0);
    half_degree_.clear();
    monomial_index_.clear();
    for (int i = 0; i <= n_; ++i) {
        const auto& p = pieces_[static_cast<std::size_t>(i)];
        offsets_.push_back(offsets_.back() + p.rank());
        for (std::size_t t = 0; t < p.rank(); ++t) half_degree_.push_back(i);
        std::map<Monomial, std::size_t> idx;
        for (std::size_t c = 0; c < p.monomials.size(); ++c) idx[p.monomials[c]] = c;
        monomial_index_.push_back(std::move(idx));
    }
    const std::size_t total = total_rank();
    table_.assign(total * total, {});
    table64_.assign(total * total, {});
    small_constants_ = true;
    for (std::size_t p = 0; p < total; ++p) {
        const int i = half_degree_[p];
        const auto& rep_p = pieces_[static_cast<std::size_t>(i)].representatives[p - offset(i)];
        for (std::size_t q = 0; q < total; ++q) {
            const int j = half_degree_[q];
            if (i + j > n_) continue;
            const auto& rep_q = pieces_[static_cast<std::size_t>(j)].representatives[q - offset(j)];
            const int k = i + j;
            const auto& target = pieces_[static_cast<std::size_t>(k)];
            IntVector poly(target.monomials.size());
            for (const auto& [a, ca] : rep_p) {
                for (const auto& [b, cb] : rep_q) {
                    Monomial mono = pieces_[static_cast<std::size_t>(i)].monomials[a];
                    const Monomial& other = pieces_[static_cast<std::size_t>(j)].monomials[b];
                    for (std::size_t v = 0; v < mono.size(); ++v) mono[v] += other[v];
                    poly[monomial_index_[static_cast<std::size_t>(k)].at(mono)] += ca * cb;
                }
            }
            IntVector coords = qtor::multiply(target.projection, poly);
            auto& entry = table_[p * total + q];
            auto& entry64 = table64_[p * total + q];
            for (std::size_t t = 0; t < coords.size(); ++t) {
                if (coords[t] == 0) continue;
                entry.emplace_back(offset(k) + t, coords[t]);
                if (!coords[t].fits_slong_p()) small_constants_ = false;
                entry64.emplace_back(offset(k) + t, coords[t].get_si());
            }
        }
    }
}

void GradedRing::require_small_constants() const {
    if (!small_constants_)
        throw Error("cohomology_ring", "Overflow", "structure constants exceed 64 bits; use the exact product");
}

template <class T>
std::vector<T> GradedRing::multiply(const std::vector<T>& a, const std::vector<T>& b) const {
    if constexpr (std::is_same_v<T, std::int64_t>) require_small_constants();
    const std::size_t total = total_rank();
    std::vector<T> out(total);
    for (std::size_t p = 0; p < total; ++p) {
        if (a[p] == 0) continue;
        const int i = half_degree_[p];
        for (std::size_t q = 0; q < total; ++q) {
            if (b[q] == 0 || i + half_degree_[q] > n_) continue;
            T ab = a[p] * b[q];
            if constexpr (std::is_same_v<T, std::int64_t>) {
                for (const auto& [k, c] : table64_[p * total + q]) out[k] += ab * c;
            } else {
                for (const auto& [k, c] : table_[p * total + q]) out[k] += ab * c;
            }
        }
    }
    return out;
}

template <class T>
std::vector<T> GradedRing::multiply_homogeneous(int i, const std::vector<T>& a, int j,
                                                const std::vector<T>& b) const {
    if constexpr (std::is_same_v<T, std::int64_t>) require_small_constants();
    if (i + j > n_) return {};
    const std::size_t total = total_rank();
    const std::size_t base = offset(i + j);
    std::vector<T> out(rank(i + j));
    for (std::size_t s = 0; s < a.size(); ++s) {
        if (a[s] == 0) continue;
        const std::size_t p = offset(i) + s;
        for (std::size_t t = 0; t < b.size(); ++t) {
            if (b[t] == 0) continue;
            const std::size_t q = offset(j) + t;
            T ab = a[s] * b[t];
            if constexpr (std::is_same_v<T, std::int64_t>) {
                for (const auto& [k, c] : table64_[p * total + q]) out[k - base] += ab * c;
            } else {
                for (const auto& [k, c] : table_[p * total + q]) out[k - base] += ab * c;
            }
        }
    }
    return out;
}

template IntVector GradedRing::multiply(const IntVector&, const IntVector&) const;
template RationalVector GradedRing::multiply(const RationalVector&, const RationalVector&) const;
template std::vector<std::int64_t> GradedRing::multiply(const std::vector<std::int64_t>&,
                                                        const std::vector<std::int64_t>&) const;
template IntVector GradedRing::multiply_homogeneous(int, const IntVector&, int, const IntVector&) const;
template RationalVector GradedRing::multiply_homogeneous(int, const RationalVector&, int,
                                                         const RationalVector&) const;
template std::vector<std::int64_t> GradedRing::multiply_homogeneous(int, const std::vector<std::int64_t>&, int,
                                                                    const std::vector<std::int64_t>&) const;

Class GradedRing::cup(const Class& a, const Class& b) const {
    const int i = a.degree / 2, j = b.degree / 2;
    return Class{a.degree + b.degree, multiply_homogeneous(i, a.coords, j, b.coords)};
}

Class GradedRing::basis_class(int i, std::size_t j) const {
    Class c{2 * i, IntVector(rank(i))};
    c.coords.at(j) = 1;
    return c;
}

IntMatrix GradedRing::pairing(int i) const {
    const int j = n_ - i;
    IntMatrix m(rank(i), rank(j));
    for (std::size_t a = 0; a < rank(i); ++a)
        for (std::size_t b = 0; b < rank(j); ++b)
            for (const auto& [k, c] : product(offset(i) + a, offset(j) + b)) m(a, b) += c;
    return m;
}

GradedRing cohomology(const ValidatedManifold& v) {
    const int n = v.data.n, m = v.data.m;
    const Face elim = eliminated_face(v);
    std::vector<int> free;
    for (int j = 1; j <= m; ++j)
        if (!std::binary_search(elim.begin(), elim.end(), j)) free.push_back(j);
    const std::size_t ell = free.size();

    RationalMatrix lam_e(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    RationalMatrix lam_f(static_cast<std::size_t>(n), ell);
    for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r) {
        for (std::size_t c = 0; c < elim.size(); ++c)
            lam_e(r, c) = static_cast<long>(v.data.lambda[r][static_cast<std::size_t>(elim[c] - 1)]);
        for (std::size_t c = 0; c < ell; ++c)
            lam_f(r, c) = static_cast<long>(v.data.lambda[r][static_cast<std::size_t>(free[c] - 1)]);
    }
    RationalMatrix inv = inverse(lam_e);

    // Row j of `forms` writes v_{j+1} in terms of the free generators.
    IntMatrix forms(static_cast<std::size_t>(m), ell);
    for (std::size_t c = 0; c < ell; ++c) forms(static_cast<std::size_t>(free[c] - 1), c) = 1;
    for (std::size_t k = 0; k < elim.size(); ++k) {
        for (std::size_t c = 0; c < ell; ++c) {
            Rational s = 0;
            for (std::size_t t = 0; t < static_cast<std::size_t>(n); ++t) s += inv(k, t) * lam_f(t, c);
            forms(static_cast<std::size_t>(elim[k] - 1), c) = Rational(-s).get_num();
        }
    }

    std::vector<Polynomial> relation_polys;
    std::vector<int> relation_degrees;
    for (const Face& sigma : minimal_non_faces(v)) {
        Polynomial p{{Monomial(ell, 0), Integer(1)}};
        for (int vert : sigma) p = multiply_linear(p, forms.row(static_cast<std::size_t>(vert - 1)));
        relation_polys.push_back(std::move(p));
        relation_degrees.push_back(static_cast<int>(sigma.size()));
    }

    std::vector<DegreePiece> pieces;
    for (int i = 0; i <= n; ++i)
        pieces.push_back(build_piece(i, ell, free, relation_polys, relation_degrees,
                                     v.h_vector[static_cast<std::size_t>(i)]));
    return GradedRing(n, free, forms, std::move(pieces));
}

bool check_commutativity(const GradedRing& r) {
    const std::size_t total = r.total_rank();
    for (std::size_t p = 0; p < total; ++p)
        for (std::size_t q = p + 1; q < total; ++q)
            if (r.product(p, q) != r.product(q, p)) return false;
    return true;
}

bool check_associativity(const GradedRing& r) {
    const std::size_t total = r.total_rank();
    // (pq)s and p(qs) accumulated from the sparse product table.
    std::map<std::size_t, Integer> lhs, rhs;
    auto settle = [](std::map<std::size_t, Integer>& m) { std::erase_if(m, [](const auto& e) { return e.second == 0; }); };
    for (std::size_t p = 0; p < total; ++p)
        for (std::size_t q = 0; q < total; ++q) {
            if (r.half_degree_of(p) + r.half_degree_of(q) > r.n()) continue;
            for (std::size_t s = 0; s < total; ++s) {
                if (r.half_degree_of(p) + r.half_degree_of(q) + r.half_degree_of(s) > r.n()) continue;
                lhs.clear();
                rhs.clear();
                for (const auto& [k, c] : r.product(p, q))
                    for (const auto& [t, d] : r.product(k, s)) lhs[t] += c * d;
                for (const auto& [k, c] : r.product(q, s))
                    for (const auto& [t, d] : r.product(p, k)) rhs[t] += c * d;
                settle(lhs);
                settle(rhs);
                if (lhs != rhs) return false;
            }
        }
    return true;
}

bool check_poincare_duality(const GradedRing& r) {
    for (int i = 0; i <= r.n(); ++i) {
        IntMatrix m = r.pairing(i);
        if (m.rows() != m.cols()) return false;
        Integer d = determinant(m);
        if (d != 1 && d != -1) return false;
    }
    return true;
}

MapCheck verify_ring_map(const GradedRing& src, const GradedRing& dst, const RingMap& f) {
    MapCheck out;
    if (src.n() != dst.n()) {
        out.reason = "top degrees differ";
        return out;
    }
    const int n = src.n();
    if (f.blocks.size() != static_cast<std::size_t>(n) + 1) {
        out.reason = "expected one block per even degree";
        return out;
    }
    for (int i = 0; i <= n; ++i) {
        const IntMatrix& b = f.blocks[static_cast<std::size_t>(i)];
        if (b.rows() != dst.rank(i) || b.cols() != src.rank(i)) {
            out.reason = "block H^" + std::to_string(2 * i) + " has wrong shape";
            return out;
        }
    }
    if (f.blocks[0](0, 0) != 1) {
        out.reason = "unit not preserved";
        return out;
    }
    for (int i = 0; i <= n; ++i) {
        const IntMatrix& b = f.blocks[static_cast<std::size_t>(i)];
        if (b.rows() != b.cols()) {
            out.reason = "ranks differ in H^" + std::to_string(2 * i);
            return out;
        }
        Integer d = determinant(b);
        out.determinants.push_back(d);
        if (d != 1 && d != -1) {
            out.reason = "block on H^" + std::to_string(2 * i) + " has determinant " + d.get_str() +
                         " (not invertible over Z)";
            return out;
        }
    }
    for (int i = 0; i <= n; ++i) {
        for (int j = i; i + j <= n; ++j) {
            const IntMatrix& bi = f.blocks[static_cast<std::size_t>(i)];
            const IntMatrix& bj = f.blocks[static_cast<std::size_t>(j)];
            const IntMatrix& bk = f.blocks[static_cast<std::size_t>(i + j)];
            for (std::size_t a = 0; a < src.rank(i); ++a) {
                IntVector ea(src.rank(i));
                ea[a] = 1;
                IntVector fa = bi.col(a);
                for (std::size_t b = 0; b < src.rank(j); ++b) {
                    IntVector eb(src.rank(j));
                    eb[b] = 1;
                    IntVector lhs = multiply(bk, src.multiply_homogeneous(i, ea, j, eb));
                    IntVector rhs = dst.multiply_homogeneous(i, fa, j, bj.col(b));
                    ++out.pairs_checked;
                    if (lhs != rhs) {
                        out.reason = "not multiplicative on " + src.piece(i).labels[a] + " * " +
                                     src.piece(j).labels[b];
                        return out;
                    }
                }
            }
        }
    }
    out.ok = true;
    return out;
}

bool verify_ring_map_ok(const GradedRing& src, const GradedRing& dst, const RingMap& f) {
    return verify_ring_map(src, dst, f).ok;
}

RingMap identity_map(const GradedRing& r) {
    RingMap f;
    for (int i = 0; i <= r.n(); ++i) f.blocks.push_back(IntMatrix::identity(r.rank(i)));
    return f;
}

RingMap compose(const RingMap& g, const RingMap& f) {
    RingMap out;
    for (std::size_t i = 0; i < f.blocks.size(); ++i) out.blocks.push_back(multiply(g.blocks[i], f.blocks[i]));
    return out;
}

RingMap invert(const RingMap& f) {
    RingMap out;
    for (const auto& b : f.blocks) {
        RationalMatrix inv = inverse(to_rational(b));
        IntMatrix ib(inv.rows(), inv.cols());
        for (std::size_t r = 0; r < inv.rows(); ++r)
            for (std::size_t c = 0; c < inv.cols(); ++c) {
                if (inv(r, c).get_den() != 1)
                    throw Error("cohomology_ring", "NotUnimodular", "ring map is not invertible over Z");
                ib(r, c) = inv(r, c).get_num();
            }
        out.blocks.push_back(std::move(ib));
    }
    return out;
}

namespace {
template <class V>
V apply_blocks(const RingMap& f, const GradedRing& src, const V& element) {
    V out;
    for (int i = 0; i <= src.n(); ++i) {
        V slice(element.begin() + static_cast<std::ptrdiff_t>(src.offset(i)),
                element.begin() + static_cast<std::ptrdiff_t>(src.offset(i + 1)));
        V image = multiply(f.blocks[static_cast<std::size_t>(i)], slice);
        out.insert(out.end(), image.begin(), image.end());
    }
    return out;
}

// Images of every source monomial, degree by degree, under the substitution
// generator f -> column f of `a`. Returns false as soon as a relation row of
// the source fails to vanish.
template <class T>
bool evaluate_monomials(const GradedRing& src, const GradedRing& dst, const std::vector<std::vector<T>>& columns,
                        std::vector<std::vector<std::vector<T>>>& images, std::size_t& relations_checked,
                        std::string* reason) {
    const int n = src.n();
    images.assign(static_cast<std::size_t>(n) + 1, {});
    for (int i = 0; i <= n; ++i) {
        const auto& piece = src.piece(i);
        auto& img = images[static_cast<std::size_t>(i)];
        img.reserve(piece.monomials.size());
        for (const Monomial& mono : piece.monomials) {
            if (i == 0) {
                img.push_back(std::vector<T>{T(1)});
                continue;
            }
            std::size_t last = mono.size();
            while (mono[--last] == 0) {
            }
            Monomial prev = mono;
            --prev[last];
            const auto& lower = images[static_cast<std::size_t>(i - 1)][src.monomial_index(i - 1, prev)];
            img.push_back(dst.multiply_homogeneous(i - 1, lower, 1, columns[last]));
        }
        for (std::size_t r = 0; r < piece.relations.rows(); ++r) {
            ++relations_checked;
            std::vector<T> sum(dst.rank(i));
            for (std::size_t c = 0; c < piece.monomials.size(); ++c) {
                const Integer& coef = piece.relations(r, c);
                if (coef == 0) continue;
                T k;
                if constexpr (std::is_same_v<T, std::int64_t>)
                    k = coef.get_si();
                else
                    k = coef;
                for (std::size_t t = 0; t < sum.size(); ++t) sum[t] += k * img[c][t];
            }
            for (const auto& x : sum)
                if (x != 0) {
                    if (reason) *reason = "relation in H^" + std::to_string(2 * i) + " does not map to zero";
                    return false;
                }
        }
    }
    return true;
}
}  // namespace

IntVector apply(const RingMap& f, const GradedRing& src, const IntVector& element) {
    return apply_blocks(f, src, element);
}
RationalVector apply(const RingMap& f, const GradedRing& src, const RationalVector& element) {
    return apply_blocks(f, src, element);
}

InducedMap induce_from_degree2(const GradedRing& src, const GradedRing& dst, const IntMatrix& a) {
    InducedMap out;
    if (src.n() != dst.n()) {
        out.reason = "top degrees differ";
        return out;
    }
    if (a.rows() != dst.rank(1) || a.cols() != src.rank(1)) {
        out.reason = "degree-2 matrix has wrong shape";
        return out;
    }
    std::vector<IntVector> columns;
    for (std::size_t c = 0; c < a.cols(); ++c) columns.push_back(a.col(c));
    std::vector<std::vector<IntVector>> images;
    if (!evaluate_monomials(src, dst, columns, images, out.relations_checked, &out.reason)) return out;
    for (int i = 0; i <= src.n(); ++i) {
        const auto& piece = src.piece(i);
        IntMatrix block(dst.rank(i), src.rank(i));
        for (std::size_t t = 0; t < piece.rank(); ++t)
            for (const auto& [c, coef] : piece.representatives[t])
                for (std::size_t k = 0; k < dst.rank(i); ++k)
                    block(k, t) += coef * images[static_cast<std::size_t>(i)][c][k];
        out.map.blocks.push_back(std::move(block));
    }
    out.ok = true;
    return out;
}

bool degree2_map_respects_relations(const GradedRing& src, const GradedRing& dst,
                                    const std::vector<std::int64_t>& a_row_major) {
    const std::size_t rows = dst.rank(1), cols = src.rank(1);
    std::vector<std::vector<std::int64_t>> columns(cols, std::vector<std::int64_t>(rows));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) columns[c][r] = a_row_major[r * cols + c];
    std::vector<std::vector<std::vector<std::int64_t>>> images;
    std::size_t checked = 0;
    return evaluate_monomials(src, dst, columns, images, checked, nullptr);
}

SquareTable mod2_square_rank(const GradedRing& r) {
    if (r.n() != 2)
        throw Error("cohomology_ring", "WrongDimension", "mod-2 squaring table needs n = 2",
                    {{"n", r.n()}});
    SquareTable out;
    const std::size_t ell = r.rank(1);
    auto q = [&](const std::vector<int>& bits) {
        IntVector x(ell);
        for (std::size_t k = 0; k < ell; ++k) x[k] = bits[k];
        IntVector sq = r.multiply_homogeneous(1, x, 1, x);
        Integer v = sq.at(0) % 2;
        return v == 0 ? 0 : 1;
    };
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ell); ++mask) {
        std::vector<int> bits(ell);
        for (std::size_t k = 0; k < ell; ++k) bits[k] = (mask >> k) & 1U;
        int value = q(bits);
        if (value) {
            out.identically_zero = false;
            ++out.nonzero_count;
        }
        out.values.emplace_back(std::move(bits), value);
    }
    // Squaring is linear mod 2, so the image is spanned by the generators'
    // squares; H^4(F_2) is one-dimensional.
    out.rank = out.identically_zero ? 0 : 1;
    return out;
}

}  // namespace qtor
