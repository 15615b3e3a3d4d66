#include "qtor/qt_input.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "qtor/error.hpp"

namespace qtor {

namespace {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

nlohmann::json face_json(const Face& f) { return nlohmann::json(f); }

}  // namespace

Integer face_determinant(const QuasitoricData& data, const Face& face) {
    const auto n = static_cast<std::size_t>(data.n);
    IntMatrix minor(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            minor(r, c) = static_cast<long>(data.lambda[r][static_cast<std::size_t>(face[c] - 1)]);
    return determinant(minor);
}

bool is_face(const std::vector<Face>& maximal_faces, const Face& candidate) {
    return std::any_of(maximal_faces.begin(), maximal_faces.end(), [&](const Face& f) {
        return std::includes(f.begin(), f.end(), candidate.begin(), candidate.end());
    });
}

std::vector<std::int64_t> f_vector_of(const std::vector<Face>& maximal_faces, int n) {
    std::vector<std::set<Face>> faces(static_cast<std::size_t>(n));
    for (const Face& f : maximal_faces) {
        const std::size_t k = f.size();
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
            Face sub;
            for (std::size_t b = 0; b < k; ++b)
                if (mask & (std::uint64_t{1} << b)) sub.push_back(f[b]);
            faces[sub.size() - 1].insert(sub);
        }
    }
    std::vector<std::int64_t> f{1};
    for (const auto& s : faces) f.push_back(static_cast<std::int64_t>(s.size()));
    return f;
}

std::vector<std::int64_t> h_from_f(const std::vector<std::int64_t>& f, int n) {
    // h_k = sum_{i=0}^{k} (-1)^{k-i} C(n-i, k-i) f_{i-1}
    std::vector<std::int64_t> h(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        std::int64_t s = 0;
        for (int i = 0; i <= k; ++i) {
            std::int64_t term = binomial(n - i, k - i) * f[static_cast<std::size_t>(i)];
            s += ((k - i) % 2 == 0) ? term : -term;
        }
        h[static_cast<std::size_t>(k)] = s;
    }
    return h;
}

ValidatedManifold validate(const QuasitoricData& data) {
    if (data.n < 1 || data.m < data.n)
        throw Error("qt_input", "InvalidShape", "need m >= n >= 1",
                    {{"m", data.m}, {"n", data.n}});
    if (data.lambda.size() != static_cast<std::size_t>(data.n))
        throw Error("qt_input", "InvalidShape", "lambda must have n rows",
                    {{"rows", data.lambda.size()}, {"n", data.n}});
    for (const auto& row : data.lambda)
        if (row.size() != static_cast<std::size_t>(data.m))
            throw Error("qt_input", "InvalidShape", "each lambda row must have m entries",
                        {{"cols", row.size()}, {"m", data.m}});
    if (data.maximal_faces.empty())
        throw Error("qt_input", "InvalidShape", "no maximal faces given");

    std::vector<Face> faces;
    for (const Face& raw : data.maximal_faces) {
        Face f = raw;
        std::sort(f.begin(), f.end());
        if (f.size() != static_cast<std::size_t>(data.n) ||
            std::adjacent_find(f.begin(), f.end()) != f.end())
            throw Error("qt_input", "NotPure", "maximal face of wrong size",
                        {{"face", face_json(raw)}, {"expected_size", data.n}});
        for (int v : f)
            if (v < 1 || v > data.m)
                throw Error("qt_input", "InvalidShape", "vertex index out of range 1..m",
                            {{"face", face_json(raw)}, {"vertex", v}});
        faces.push_back(std::move(f));
    }

    std::vector<bool> seen(static_cast<std::size_t>(data.m) + 1, false);
    for (const Face& f : faces)
        for (int v : f) seen[static_cast<std::size_t>(v)] = true;
    for (int v = 1; v <= data.m; ++v)
        if (!seen[static_cast<std::size_t>(v)])
            throw Error("qt_input", "DanglingVertex", "vertex " + std::to_string(v) + " lies in no maximal face",
                        {{"vertex", v}});

    for (std::size_t i = 0; i < faces.size(); ++i) {
        Integer det = face_determinant(data, faces[i]);
        if (det != 1 && det != -1)
            throw Error("qt_input", "NonUnimodular",
                        "lambda minor on a maximal face has determinant " + det.get_str(),
                        {{"face", face_json(faces[i])}, {"det", det.get_si()}});
    }

    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());

    ValidatedManifold v;
    v.data = data;
    v.data.maximal_faces = faces;
    v.f_vector = f_vector_of(faces, data.n);
    v.h_vector = h_from_f(v.f_vector, data.n);

    const auto& h = v.h_vector;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (h[i] < 0 || h[i] != h[h.size() - 1 - i])
            throw Error("qt_input", "NotSphereLike", "h-vector fails Dehn-Sommerville symmetry or positivity",
                        {{"h_vector", h}});
    }
    return v;
}

const std::vector<std::int64_t>& h_vector(const ValidatedManifold& v) { return v.h_vector; }

std::vector<Face> minimal_non_faces(const ValidatedManifold& v) {
    const int m = v.data.m;
    const auto& faces = v.data.maximal_faces;
    std::vector<Face> out;
    // Minimal non-faces of a pure (n-1)-complex have at most n+1 vertices.
    const int max_size = std::min(m, v.data.n + 1);
    std::vector<int> pick;
    auto recurse = [&](auto&& self, int start) -> void {
        if (!pick.empty()) {
            Face cand(pick.begin(), pick.end());
            if (!is_face(faces, cand)) {
                bool minimal = true;
                for (std::size_t drop = 0; drop < cand.size() && minimal; ++drop) {
                    Face sub;
                    for (std::size_t k = 0; k < cand.size(); ++k)
                        if (k != drop) sub.push_back(cand[k]);
                    if (!is_face(faces, sub)) minimal = false;
                }
                if (minimal) out.push_back(cand);
                return;  // supersets of a non-face are never minimal
            }
        }
        if (static_cast<int>(pick.size()) == max_size) return;
        for (int x = start; x <= m; ++x) {
            pick.push_back(x);
            self(self, x + 1);
            pick.pop_back();
        }
    };
    recurse(recurse, 1);
    std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

}  // namespace qtor
