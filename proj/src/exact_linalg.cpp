#include "qtor/exact_linalg.hpp"

#include <algorithm>
#include <map>

#include "qtor/error.hpp"

namespace qtor {

namespace {

[[noreturn]] void dimension_mismatch(std::size_t expected, std::size_t got) {
    throw Error("exact_linalg", "DimensionMismatch",
                "expected dimension " + std::to_string(expected) + ", got " + std::to_string(got),
                {{"expected", expected}, {"got", got}});
}

// target -= q * source, both sorted by column.
void sparse_submul(SparseRow& target, const SparseRow& source, const Integer& q) {
    if (q == 0 || source.empty()) return;
    SparseRow out;
    out.reserve(target.size() + source.size());
    std::size_t i = 0, j = 0;
    while (i < target.size() || j < source.size()) {
        if (j == source.size() || (i < target.size() && target[i].first < source[j].first)) {
            out.push_back(std::move(target[i++]));
        } else if (i == target.size() || source[j].first < target[i].first) {
            out.emplace_back(source[j].first, -q * source[j].second);
            ++j;
        } else {
            Integer v = target[i].second - q * source[j].second;
            if (v != 0) out.emplace_back(target[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    target = std::move(out);
}

// s*a + t*b, sparse.
SparseRow sparse_combine(const Integer& s, const SparseRow& a, const Integer& t, const SparseRow& b) {
    SparseRow out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        Integer v;
        std::size_t c;
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            c = a[i].first;
            v = s * a[i++].second;
        } else if (i == a.size() || b[j].first < a[i].first) {
            c = b[j].first;
            v = t * b[j++].second;
        } else {
            c = a[i].first;
            v = s * a[i++].second + t * b[j++].second;
        }
        if (v != 0) out.emplace_back(c, std::move(v));
    }
    return out;
}

void negate(SparseRow& r) {
    for (auto& [c, v] : r) v = -v;
}

struct HermiteRow {
    IntVector values;
    SparseRow transform;
};

// Row-at-a-time Hermite reduction. Each inserted row is reduced against the
// existing pivots; when a pivot does not divide the incoming entry the pair is
// replaced by a unimodular gcd combination.
class IncrementalHermite {
public:
    IncrementalHermite(std::size_t cols, bool track) : cols_(cols), track_(track) {}

    void insert(IntVector v, std::size_t index) {
        SparseRow u;
        if (track_) u.emplace_back(index, 1);
        for (std::size_t c = 0; c < cols_; ++c) {
            if (v[c] == 0) continue;
            auto it = rows_.find(c);
            if (it == rows_.end()) {
                rows_.emplace(c, HermiteRow{std::move(v), std::move(u)});
                return;
            }
            HermiteRow& p = it->second;
            if (mpz_divisible_p(v[c].get_mpz_t(), p.values[c].get_mpz_t())) {
                Integer q = v[c] / p.values[c];
                for (std::size_t k = c; k < cols_; ++k)
                    if (p.values[k] != 0) v[k] -= q * p.values[k];
                if (track_) sparse_submul(u, p.transform, q);
            } else {
                Integer d, s, t;
                mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p.values[c].get_mpz_t(),
                           v[c].get_mpz_t());
                Integer a = p.values[c] / d;
                Integer b = v[c] / d;
                IntVector np(cols_), nv(cols_);
                for (std::size_t k = c; k < cols_; ++k) {
                    np[k] = s * p.values[k] + t * v[k];
                    nv[k] = a * v[k] - b * p.values[k];
                }
                if (track_) {
                    SparseRow nu = sparse_combine(s, p.transform, t, u);
                    u = sparse_combine(-b, p.transform, a, u);
                    p.transform = std::move(nu);
                }
                p.values = std::move(np);
                v = std::move(nv);
            }
        }
        if (track_) relations_.push_back(std::move(u));
    }

    void finalize() {
        std::vector<std::map<std::size_t, HermiteRow>::iterator> order;
        for (auto it = rows_.begin(); it != rows_.end(); ++it) order.push_back(it);
        for (std::size_t k = 0; k < order.size(); ++k) {
            std::size_t c = order[k]->first;
            HermiteRow& p = order[k]->second;
            if (p.values[c] < 0) {
                for (auto& x : p.values) x = -x;
                negate(p.transform);
            }
            for (std::size_t j = 0; j < k; ++j) {
                HermiteRow& r = order[j]->second;
                Integer q = floor_div(r.values[c], p.values[c]);
                if (q == 0) continue;
                for (std::size_t col = c; col < cols_; ++col) r.values[col] -= q * p.values[col];
                if (track_) sparse_submul(r.transform, p.transform, q);
            }
        }
    }

    const std::map<std::size_t, HermiteRow>& rows() const { return rows_; }
    std::vector<SparseRow>& relations() { return relations_; }

private:
    std::size_t cols_;
    bool track_;
    std::map<std::size_t, HermiteRow> rows_;
    std::vector<SparseRow> relations_;
};

Integer common_denominator(const RationalMatrix& m) {
    Integer d = 1;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), m(r, c).get_den_mpz_t());
    return d;
}

}  // namespace

struct HermiteAccess {
    static Lattice build(const RationalMatrix& m, bool track, HermiteDecomposition* out) {
        const Integer scale = common_denominator(m);
        IncrementalHermite builder(m.cols(), track);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            IntVector v(m.cols());
            bool zero = true;
            for (std::size_t c = 0; c < m.cols(); ++c) {
                const Rational& x = m(r, c);
                if (x == 0) continue;
                mpz_divexact(v[c].get_mpz_t(), scale.get_mpz_t(), x.get_den_mpz_t());
                v[c] *= x.get_num();
                zero = false;
            }
            if (zero && !track) continue;
            builder.insert(std::move(v), r);
        }
        return finish(builder, m.cols(), scale, out);
    }

    static Lattice build(std::size_t cols, const std::vector<std::vector<std::pair<std::size_t, Integer>>>& rows) {
        IncrementalHermite builder(cols, false);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            IntVector v(cols);
            bool zero = true;
            for (const auto& [c, x] : rows[r]) {
                if (c >= cols) dimension_mismatch(cols, c + 1);
                v[c] += x;
                if (v[c] != 0) zero = false;
            }
            if (!zero) builder.insert(std::move(v), r);
        }
        return finish(builder, cols, Integer(1), nullptr);
    }

    static Lattice finish(IncrementalHermite& builder, std::size_t cols, const Integer& scale,
                          HermiteDecomposition* out) {
        builder.finalize();
        Lattice l(cols);
        l.basis_ = RationalMatrix(builder.rows().size(), cols);
        std::size_t i = 0;
        for (const auto& [pivot, row] : builder.rows()) {
            l.pivots_.push_back(pivot);
            for (std::size_t c = 0; c < cols; ++c) {
                if (row.values[c] == 0) continue;
                l.basis_(i, c) = Rational(row.values[c], scale);
                l.basis_(i, c).canonicalize();
            }
            if (out) out->transform.push_back(row.transform);
            ++i;
        }
        if (out) out->relations = std::move(builder.relations());
        return l;
    }
};

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto strip = [](std::string& x) {
        x.erase(0, x.find_first_not_of(" \t"));
        x.erase(x.find_last_not_of(" \t") + 1);
    };
    strip(s);
    if (s.empty()) throw Error("exact_linalg", "ParseError", "empty rational literal");
    auto valid_int = [](const std::string& x) {
        std::size_t start = (!x.empty() && (x[0] == '-' || x[0] == '+')) ? 1 : 0;
        if (start == x.size()) return false;
        return std::all_of(x.begin() + static_cast<std::ptrdiff_t>(start), x.end(),
                           [](char ch) { return ch >= '0' && ch <= '9'; });
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-')
        throw Error("exact_linalg", "ParseError", "malformed rational literal '" + s + "'");
    Integer d(den);
    if (d == 0) throw Error("exact_linalg", "ParseError", "zero denominator in '" + s + "'");
    Rational q(Integer(num), d);
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Rational mod_one(const Rational& q) {
    Integer f = floor_div(q.get_num(), q.get_den());
    Rational r = q - Rational(f);
    r.canonicalize();
    return r;
}

Integer determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) dimension_mismatch(m.rows(), m.cols());
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Integer previous = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && a(swap, k) == 0) ++swap;
            if (swap == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(swap, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / previous;
            }
        }
        previous = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

RationalMatrix inverse(const RationalMatrix& m) {
    if (m.rows() != m.cols()) dimension_mismatch(m.rows(), m.cols());
    const std::size_t n = m.rows();
    RationalMatrix a = m;
    RationalMatrix inv = RationalMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) throw Error("exact_linalg", "Singular", "matrix is singular");
        if (p != c) {
            for (std::size_t k = 0; k < n; ++k) {
                std::swap(a(p, k), a(c, k));
                std::swap(inv(p, k), inv(c, k));
            }
        }
        Rational pivot = a(c, c);
        for (std::size_t k = 0; k < n; ++k) {
            a(c, k) /= pivot;
            inv(c, k) /= pivot;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0) continue;
            Rational f = a(r, c);
            for (std::size_t k = 0; k < n; ++k) {
                a(r, k) -= f * a(c, k);
                inv(r, k) -= f * inv(c, k);
            }
        }
    }
    return inv;
}

std::size_t rank(const RationalMatrix& m) {
    RationalMatrix a = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(p, k), a(r, k));
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0) continue;
            Rational f = a(i, c) / a(r, c);
            for (std::size_t k = c; k < a.cols(); ++k) a(i, k) -= f * a(r, k);
        }
        ++r;
    }
    return r;
}

IntVector multiply(const IntMatrix& m, const IntVector& v) {
    if (m.cols() != v.size()) dimension_mismatch(m.cols(), v.size());
    IntVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (v[c] != 0) out[r] += m(r, c) * v[c];
    return out;
}

RationalVector multiply(const IntMatrix& m, const RationalVector& v) {
    if (m.cols() != v.size()) dimension_mismatch(m.cols(), v.size());
    RationalVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (v[c] != 0 && m(r, c) != 0) out[r] += Rational(m(r, c)) * v[c];
    return out;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) dimension_mismatch(a.cols(), b.rows());
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

RationalMatrix to_rational(const IntMatrix& m) {
    RationalMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
    return out;
}

std::optional<IntVector> Lattice::coordinates(const RationalVector& v) const {
    if (v.size() != ambient_) dimension_mismatch(ambient_, v.size());
    RationalVector rest = v;
    IntVector coords(rank());
    for (std::size_t k = 0; k < rank(); ++k) {
        const std::size_t c = pivots_[k];
        for (std::size_t j = 0; j < c; ++j)
            if (rest[j] != 0) return std::nullopt;
        if (rest[c] == 0) continue;
        Rational y = rest[c] / basis_(k, c);
        if (y.get_den() != 1) return std::nullopt;
        coords[k] = y.get_num();
        for (std::size_t j = c; j < ambient_; ++j)
            if (basis_(k, j) != 0) rest[j] -= y * basis_(k, j);
    }
    for (const auto& x : rest)
        if (x != 0) return std::nullopt;
    return coords;
}

Lattice hnf(const RationalMatrix& m) { return HermiteAccess::build(m, false, nullptr); }

Lattice hnf(std::size_t cols, const std::vector<std::vector<std::pair<std::size_t, Integer>>>& rows) {
    return HermiteAccess::build(cols, rows);
}

bool member(const Lattice& l, const RationalVector& v) { return l.contains(v); }

HermiteDecomposition hermite_decompose(const RationalMatrix& m) {
    HermiteDecomposition out;
    out.lattice = HermiteAccess::build(m, true, &out);
    return out;
}

Lattice kernel_lattice(const RationalMatrix& m) {
    HermiteDecomposition d = hermite_decompose(m);
    RationalMatrix relations(d.relations.size(), m.rows());
    for (std::size_t i = 0; i < d.relations.size(); ++i)
        for (const auto& [c, v] : d.relations[i]) relations(i, c) = v;
    return hnf(relations);
}

bool sublattice_inclusion(const Lattice& a, const Lattice& b) {
    if (a.ambient() != b.ambient()) dimension_mismatch(b.ambient(), a.ambient());
    for (std::size_t i = 0; i < a.rank(); ++i)
        if (!b.contains(a.row(i))) return false;
    return true;
}

IntegerHermite integer_hnf(const IntMatrix& m) {
    IntegerHermite out;
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    const std::size_t rows = m.rows(), cols = m.cols();
    auto row_sub = [&](IntMatrix& x, std::size_t target, std::size_t source, const Integer& q) {
        for (std::size_t c = 0; c < x.cols(); ++c) x(target, c) -= q * x(source, c);
    };
    auto row_swap = [&](IntMatrix& x, std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < x.cols(); ++c) std::swap(x(i, c), x(j, c));
    };
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (a(i, c) != 0 && (best == rows || abs(a(i, c)) < abs(a(best, c)))) best = i;
            if (best == rows) break;
            if (best != r) {
                row_swap(a, r, best);
                row_swap(u, r, best);
            }
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (a(i, c) == 0) continue;
                Integer q = floor_div(a(i, c), a(r, c));
                row_sub(a, i, r, q);
                row_sub(u, i, r, q);
                if (a(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (r < rows && a(r, c) != 0) {
            if (a(r, c) < 0) {
                for (std::size_t k = 0; k < cols; ++k) a(r, k) = -a(r, k);
                for (std::size_t k = 0; k < rows; ++k) u(r, k) = -u(r, k);
            }
            for (std::size_t i = 0; i < r; ++i) {
                Integer q = floor_div(a(i, c), a(r, c));
                if (q == 0) continue;
                row_sub(a, i, r, q);
                row_sub(u, i, r, q);
            }
            out.pivots.push_back(c);
            ++r;
        }
    }
    out.h = IntMatrix(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t c = 0; c < cols; ++c) out.h(i, c) = a(i, c);
    out.u = std::move(u);
    return out;
}

std::vector<Integer> smith_invariants(const IntMatrix& m) {
    IntMatrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<Integer> out;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            // Move the smallest nonzero entry of the trailing block to (t, t).
            std::size_t br = rows, bc = cols;
            for (std::size_t r = t; r < rows; ++r)
                for (std::size_t c = t; c < cols; ++c)
                    if (a(r, c) != 0 && (br == rows || abs(a(r, c)) < abs(a(br, bc)))) {
                        br = r;
                        bc = c;
                    }
            if (br == rows) return out;
            for (std::size_t c = 0; c < cols; ++c) std::swap(a(t, c), a(br, c));
            for (std::size_t r = 0; r < rows; ++r) std::swap(a(r, t), a(r, bc));
            bool clean = true;
            for (std::size_t r = t + 1; r < rows; ++r) {
                const Integer q = floor_div(a(r, t), a(t, t) > 0 ? a(t, t) : Integer(-a(t, t))) *
                                  (a(t, t) > 0 ? 1 : -1);
                for (std::size_t c = t; c < cols; ++c) a(r, c) -= q * a(t, c);
                clean = clean && a(r, t) == 0;
            }
            for (std::size_t c = t + 1; c < cols; ++c) {
                const Integer q = floor_div(a(t, c), a(t, t) > 0 ? a(t, t) : Integer(-a(t, t))) *
                                  (a(t, t) > 0 ? 1 : -1);
                for (std::size_t r = t; r < rows; ++r) a(r, c) -= q * a(r, t);
                clean = clean && a(t, c) == 0;
            }
            if (!clean) continue;
            std::size_t bad = rows;
            for (std::size_t r = t + 1; r < rows && bad == rows; ++r)
                for (std::size_t c = t + 1; c < cols; ++c)
                    if (a(r, c) % a(t, t) != 0) {
                        bad = r;
                        break;
                    }
            if (bad == rows) break;
            for (std::size_t c = t; c < cols; ++c) a(t, c) += a(bad, c);
        }
        out.push_back(abs(a(t, t)));
    }
    return out;
}

}  // namespace qtor
