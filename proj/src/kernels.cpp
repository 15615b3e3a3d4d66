#include "qtor/kernels.hpp"

#include <atomic>
#include <limits>

namespace qtor::kernels {

namespace {

void exponents_of_degree(std::size_t vars, int degree, std::size_t pos, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
    if (pos + 1 == vars) {
        cur[pos] = degree;
        out.push_back(cur);
        cur[pos] = 0;
        return;
    }
    for (int e = degree; e >= 0; --e) {
        cur[pos] = e;
        exponents_of_degree(vars, degree - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

std::vector<std::vector<RationalVector>> line_powers(const GradedRing& ring,
                                                     const std::vector<RationalVector>& line_classes) {
    std::vector<std::vector<RationalVector>> powers;
    for (const auto& x : line_classes) {
        std::vector<RationalVector> p;
        RationalVector base = exp_minus_one(ring, x);
        p.push_back(base);
        for (int k = 2; k <= ring.n(); ++k) p.push_back(ring.multiply(p.back(), base));
        powers.push_back(std::move(p));
    }
    return powers;
}

RationalVector monomial_from_powers(const GradedRing& ring, const std::vector<std::vector<RationalVector>>& powers,
                                    const std::vector<int>& a) {
    RationalVector acc;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        const RationalVector& factor = powers[i][static_cast<std::size_t>(a[i] - 1)];
        acc = acc.empty() ? factor : ring.multiply(acc, factor);
    }
    return acc;
}

}  // namespace

std::vector<std::vector<int>> chern_exponents(std::size_t vars, int n) {
    std::vector<std::vector<int>> out;
    if (vars == 0) return out;
    std::vector<int> cur(vars, 0);
    for (int d = 1; d <= n; ++d) exponents_of_degree(vars, d, 0, cur, out);
    return out;
}

RationalVector exp_minus_one(const GradedRing& ring, const RationalVector& x) {
    RationalVector sum(ring.total_rank());
    RationalVector power = x;
    Rational factorial = 1;
    for (int k = 1; k <= ring.n(); ++k) {
        factorial *= k;
        for (std::size_t t = 0; t < sum.size(); ++t)
            if (power[t] != 0) sum[t] += power[t] / factorial;
        if (k < ring.n()) power = ring.multiply(power, x);
    }
    return sum;
}

std::vector<RationalVector> expand_chern_monomials(const GradedRing& ring,
                                                   const std::vector<RationalVector>& line_classes,
                                                   const std::vector<std::vector<int>>& exponents) {
    const auto powers = line_powers(ring, line_classes);
    std::vector<RationalVector> out(exponents.size());
    const auto count = static_cast<std::int64_t>(exponents.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t g = 0; g < count; ++g) {
        out[static_cast<std::size_t>(g)] = monomial_from_powers(ring, powers, exponents[static_cast<std::size_t>(g)]);
    }
    return out;
}

std::vector<RationalVector> expand_chern_monomials_serial(const GradedRing& ring,
                                                          const std::vector<RationalVector>& line_classes,
                                                          const std::vector<std::vector<int>>& exponents) {
    std::vector<RationalVector> factors;
    for (const auto& x : line_classes) factors.push_back(exp_minus_one(ring, x));
    std::vector<RationalVector> out;
    out.reserve(exponents.size());
    for (const auto& a : exponents) {
        RationalVector acc(ring.total_rank());
        acc[0] = 1;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (int k = 0; k < a[i]; ++k) acc = ring.multiply(acc, factors[i]);
        out.push_back(std::move(acc));
    }
    return out;
}

std::optional<std::uint64_t> candidate_count(std::size_t dim, int bound) {
    const std::uint64_t base = 2 * static_cast<std::uint64_t>(bound) + 1;
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < dim * dim; ++k) {
        if (total > std::numeric_limits<std::uint64_t>::max() / base) return std::nullopt;
        total *= base;
    }
    return total;
}

std::vector<std::int64_t> candidate_matrix(std::uint64_t index, std::size_t dim, int bound) {
    const std::uint64_t base = 2 * static_cast<std::uint64_t>(bound) + 1;
    std::vector<std::int64_t> a(dim * dim);
    for (std::size_t k = dim * dim; k-- > 0;) {
        a[k] = static_cast<std::int64_t>(index % base) - bound;
        index /= base;
    }
    return a;
}

std::int64_t small_determinant(const std::vector<std::int64_t>& a, std::size_t dim) {
    if (dim == 0) return 1;
    std::vector<__int128> m(a.begin(), a.end());
    __int128 previous = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < dim; ++k) {
        if (m[k * dim + k] == 0) {
            std::size_t s = k + 1;
            while (s < dim && m[s * dim + k] == 0) ++s;
            if (s == dim) return 0;
            for (std::size_t c = 0; c < dim; ++c) std::swap(m[k * dim + c], m[s * dim + c]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < dim; ++i)
            for (std::size_t j = k + 1; j < dim; ++j)
                m[i * dim + j] = (m[k * dim + k] * m[i * dim + j] - m[i * dim + k] * m[k * dim + j]) / previous;
        previous = m[k * dim + k];
    }
    return static_cast<std::int64_t>(sign * m[dim * dim - 1]);
}

bool accepts_degree2(const GradedRing& src, const GradedRing& dst, const std::vector<std::int64_t>& a) {
    const std::int64_t det = small_determinant(a, src.rank(1));
    if (det != 1 && det != -1) return false;
    return degree2_map_respects_relations(src, dst, a);
}

std::optional<std::uint64_t> first_degree2_iso(const GradedRing& src, const GradedRing& dst, int bound) {
    const std::size_t dim = src.rank(1);
    const auto total = candidate_count(dim, bound);
    if (!total) return std::nullopt;
    std::atomic<std::uint64_t> best{*total};
    const auto count = static_cast<std::int64_t>(*total);
#pragma omp parallel for schedule(dynamic, 256)
    for (std::int64_t idx = 0; idx < count; ++idx) {
        const auto u = static_cast<std::uint64_t>(idx);
        if (u >= best.load(std::memory_order_relaxed)) continue;
        if (!accepts_degree2(src, dst, candidate_matrix(u, dim, bound))) continue;
        std::uint64_t current = best.load();
        while (u < current && !best.compare_exchange_weak(current, u)) {
        }
    }
    if (best.load() == *total) return std::nullopt;
    return best.load();
}

std::optional<std::uint64_t> first_degree2_iso_serial(const GradedRing& src, const GradedRing& dst, int bound) {
    const std::size_t dim = src.rank(1);
    const auto total = candidate_count(dim, bound);
    if (!total) return std::nullopt;
    for (std::uint64_t idx = 0; idx < *total; ++idx)
        if (accepts_degree2(src, dst, candidate_matrix(idx, dim, bound))) return idx;
    return std::nullopt;
}

}  // namespace qtor::kernels
