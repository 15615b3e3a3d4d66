#include "qtor/serialization.hpp"

#include <fstream>
#include <sstream>

namespace qtor::io {

namespace {

[[noreturn]] void parse_error(const std::string& field, const std::string& why) {
    throw Error("io", "ParseError", "field '" + field + "': " + why, {{"field", field}});
}

const json& field(const json& j, const std::string& name, const std::string& context = "") {
    const std::string full = context.empty() ? name : context + "." + name;
    if (!j.is_object()) parse_error(context.empty() ? "<root>" : context, "expected an object");
    auto it = j.find(name);
    if (it == j.end()) parse_error(full, "missing");
    return *it;
}

std::int64_t small_int(const json& j, const std::string& name) {
    if (!j.is_number_integer()) parse_error(name, "expected an integer");
    return j.get<std::int64_t>();
}

int small_int32(const json& j, const std::string& name) {
    const std::int64_t v = small_int(j, name);
    if (v < INT32_MIN || v > INT32_MAX) parse_error(name, "integer out of range");
    return static_cast<int>(v);
}

const json& array(const json& j, const std::string& name) {
    if (!j.is_array()) parse_error(name, "expected an array");
    return j;
}

std::string idx(const std::string& name, std::size_t i) { return name + "[" + std::to_string(i) + "]"; }

json rational_to_json(const Rational& q) { return format_rational(q); }

Rational rational_from_json(const json& j, const std::string& name) {
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<std::int64_t>())));
    if (!j.is_string()) parse_error(name, "expected a \"p/q\" string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error&) {
        parse_error(name, "not a rational: " + j.get<std::string>());
    }
}

json rational_vector_to_json(const RationalVector& v) {
    json out = json::array();
    for (const auto& q : v) out.push_back(rational_to_json(q));
    return out;
}

json sparse_to_json(const SparseRow& row) {
    json out = json::array();
    for (const auto& [c, z] : row) out.push_back(json::array({c, int_to_json(z)}));
    return out;
}

SparseRow sparse_from_json(const json& j, const std::string& name) {
    SparseRow row;
    array(j, name);
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string n = idx(name, k);
        if (!j[k].is_array() || j[k].size() != 2) parse_error(n, "expected [column, coefficient]");
        const std::int64_t c = small_int(j[k][0], n);
        if (c < 0) parse_error(n, "negative column");
        row.emplace_back(static_cast<std::size_t>(c), int_from_json(j[k][1], n));
    }
    return row;
}

std::vector<int> int_list(const json& j, const std::string& name) {
    array(j, name);
    std::vector<int> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(small_int32(j[k], idx(name, k)));
    return out;
}

json class_table(const GradedRing& r) {
    json out = json::array();
    for (std::size_t p = 0; p < r.total_rank(); ++p)
        for (std::size_t q = p; q < r.total_rank(); ++q) {
            const auto& prod = r.product(p, q);
            if (prod.empty()) continue;
            out.push_back({{"left", r.label(p)}, {"right", r.label(q)}, {"product", sparse_to_json(prod)}});
        }
    return out;
}

}  // namespace

json int_to_json(const Integer& z) {
    if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
    return z.get_str();
}

Integer int_from_json(const json& j, const std::string& name) {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) {
        Integer z;
        const std::string s = j.get<std::string>();
        if (s.empty() || z.set_str(s, 10) != 0) parse_error(name, "not an integer: " + s);
        return z;
    }
    parse_error(name, "expected an integer");
}

json int_matrix_to_json(const IntMatrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(int_to_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

IntMatrix int_matrix_from_json(const json& j, const std::string& name) {
    array(j, name);
    IntMatrix m(j.size(), j.empty() ? 0 : (j[0].is_array() ? j[0].size() : 0));
    for (std::size_t r = 0; r < j.size(); ++r) {
        const std::string rn = idx(name, r);
        if (!j[r].is_array() || j[r].size() != m.cols()) parse_error(rn, "rows must be arrays of equal length");
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = int_from_json(j[r][c], idx(rn, c));
    }
    return m;
}

json rational_matrix_to_json(const RationalMatrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(rational_vector_to_json(m.row(r)));
    return out;
}

RationalMatrix rational_matrix_from_json(const json& j, const std::string& name) {
    array(j, name);
    RationalMatrix m(j.size(), j.empty() ? 0 : (j[0].is_array() ? j[0].size() : 0));
    for (std::size_t r = 0; r < j.size(); ++r) {
        const std::string rn = idx(name, r);
        if (!j[r].is_array() || j[r].size() != m.cols()) parse_error(rn, "rows must be arrays of equal length");
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rational_from_json(j[r][c], idx(rn, c));
    }
    return m;
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io", "ParseError", "cannot open " + path, {{"field", "<file>"}, {"path", path}});
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw Error("io", "ParseError", path + ": invalid JSON: " + e.what(), {{"field", "<file>"}, {"path", path}});
    }
}

QuasitoricData manifold_from_json(const json& j) {
    QuasitoricData d;
    d.m = small_int32(field(j, "m"), "m");
    d.n = small_int32(field(j, "n"), "n");
    const json& faces = array(field(j, "maximal_faces"), "maximal_faces");
    for (std::size_t k = 0; k < faces.size(); ++k) d.maximal_faces.push_back(int_list(faces[k], idx("maximal_faces", k)));
    const json& lambda = array(field(j, "lambda"), "lambda");
    for (std::size_t r = 0; r < lambda.size(); ++r) {
        const std::string rn = idx("lambda", r);
        array(lambda[r], rn);
        std::vector<std::int64_t> row;
        for (std::size_t c = 0; c < lambda[r].size(); ++c) row.push_back(small_int(lambda[r][c], idx(rn, c)));
        d.lambda.push_back(std::move(row));
    }
    return d;
}

json manifold_to_json(const QuasitoricData& d) {
    return {{"m", d.m}, {"n", d.n}, {"maximal_faces", d.maximal_faces}, {"lambda", d.lambda}};
}

json validation_to_json(const ValidatedManifold& v) {
    return {{"valid", true},
            {"manifold", manifold_to_json(v.data)},
            {"f_vector", v.f_vector},
            {"h_vector", v.h_vector},
            {"dim", 2 * v.data.n}};
}

json ring_to_json(const GradedRing& r) {
    json degrees = json::array();
    for (int i = 0; i <= r.n(); ++i) {
        const DegreePiece& p = r.piece(i);
        json reps = json::array();
        for (const auto& s : p.representatives) reps.push_back(sparse_to_json(s));
        degrees.push_back({{"degree", 2 * i},
                           {"rank", p.rank()},
                           {"monomials", p.monomials},
                           {"labels", p.labels},
                           {"relations", int_matrix_to_json(p.relations)},
                           {"representatives", reps},
                           {"projection", int_matrix_to_json(p.projection)}});
    }
    json pairing = json::array();
    for (int i = 0; i <= r.n(); ++i) pairing.push_back({{"degree", 2 * i}, {"matrix", int_matrix_to_json(r.pairing(i))}});
    json basis = json::array();
    for (std::size_t g = 0; g < r.total_rank(); ++g) basis.push_back(r.label(g));
    return {{"n", r.n()},
            {"top_degree", r.top_degree()},
            {"ranks", r.ranks()},
            {"free_generators", r.free_generators()},
            {"linear_forms", int_matrix_to_json(r.linear_forms())},
            {"basis", basis},
            {"degrees", degrees},
            {"multiplication", class_table(r)},
            {"pairing", pairing}};
}

GradedRing ring_from_json(const json& j) {
    const int n = small_int32(field(j, "n"), "n");
    if (n < 1) parse_error("n", "must be positive");
    std::vector<int> gens = int_list(field(j, "free_generators"), "free_generators");
    IntMatrix forms = int_matrix_from_json(field(j, "linear_forms"), "linear_forms");
    const json& degs = array(field(j, "degrees"), "degrees");
    if (degs.size() != static_cast<std::size_t>(n) + 1) parse_error("degrees", "expected n + 1 entries");
    std::vector<DegreePiece> pieces;
    for (std::size_t i = 0; i < degs.size(); ++i) {
        const std::string dn = idx("degrees", i);
        const json& d = degs[i];
        if (small_int32(field(d, "degree", dn), dn + ".degree") != 2 * static_cast<int>(i))
            parse_error(dn + ".degree", "degrees must be 0, 2, ..., 2n in order");
        DegreePiece p;
        const json& monos = array(field(d, "monomials", dn), dn + ".monomials");
        for (std::size_t k = 0; k < monos.size(); ++k) {
            Monomial mono = int_list(monos[k], idx(dn + ".monomials", k));
            if (mono.size() != gens.size()) parse_error(idx(dn + ".monomials", k), "wrong number of exponents");
            p.monomials.push_back(std::move(mono));
        }
        const json& labels = array(field(d, "labels", dn), dn + ".labels");
        for (std::size_t k = 0; k < labels.size(); ++k) {
            if (!labels[k].is_string()) parse_error(idx(dn + ".labels", k), "expected a string");
            p.labels.push_back(labels[k].get<std::string>());
        }
        p.relations = int_matrix_from_json(field(d, "relations", dn), dn + ".relations");
        if (p.relations.rows() == 0) p.relations = IntMatrix(0, p.monomials.size());
        const json& reps = array(field(d, "representatives", dn), dn + ".representatives");
        for (std::size_t k = 0; k < reps.size(); ++k) {
            SparseRow row = sparse_from_json(reps[k], idx(dn + ".representatives", k));
            for (const auto& [c, z] : row)
                if (c >= p.monomials.size()) parse_error(idx(dn + ".representatives", k), "column out of range");
            p.representatives.push_back(std::move(row));
        }
        p.projection = int_matrix_from_json(field(d, "projection", dn), dn + ".projection");
        if (p.projection.rows() != p.representatives.size() ||
            (p.projection.rows() > 0 && p.projection.cols() != p.monomials.size()))
            parse_error(dn + ".projection", "shape disagrees with basis and monomials");
        if (p.projection.rows() == 0) p.projection = IntMatrix(0, p.monomials.size());
        if (p.labels.size() != p.representatives.size()) parse_error(dn + ".labels", "one label per basis element");
        pieces.push_back(std::move(p));
    }
    GradedRing ring(n, std::move(gens), std::move(forms), std::move(pieces));
    if (j.contains("multiplication") && j["multiplication"] != class_table(ring))
        parse_error("multiplication", "table disagrees with the stored bases");
    return ring;
}

json klattice_to_json(const KLattice& k) {
    json coords = json::array();
    for (std::size_t c = 0; c < k.ambient(); ++c) coords.push_back({{"label", k.labels[c]}, {"degree", k.degrees[c]}});
    return {{"ambient", coords},
            {"rank", k.rank()},
            {"basis", rational_matrix_to_json(k.lattice.basis())},
            {"pivots", k.lattice.pivots()},
            {"generator_log", k.generator_log},
            {"generators", rational_matrix_to_json(k.generators)}};
}

KLattice klattice_from_json(const json& j) {
    KLattice k;
    const json& coords = array(field(j, "ambient"), "ambient");
    for (std::size_t c = 0; c < coords.size(); ++c) {
        const std::string cn = idx("ambient", c);
        const json& lbl = field(coords[c], "label", cn);
        if (!lbl.is_string()) parse_error(cn + ".label", "expected a string");
        k.labels.push_back(lbl.get<std::string>());
        k.degrees.push_back(small_int32(field(coords[c], "degree", cn), cn + ".degree"));
    }
    RationalMatrix basis = rational_matrix_from_json(field(j, "basis"), "basis");
    if (basis.rows() == 0) basis = RationalMatrix(0, k.ambient());
    if (basis.cols() != k.ambient()) parse_error("basis", "row length differs from the ambient dimension");
    k.lattice = hnf(basis);
    if (!(k.lattice.basis() == basis)) parse_error("basis", "not in canonical Hermite normal form");
    const json& log = array(field(j, "generator_log"), "generator_log");
    for (std::size_t g = 0; g < log.size(); ++g) k.generator_log.push_back(int_list(log[g], idx("generator_log", g)));
    k.generators = rational_matrix_from_json(field(j, "generators"), "generators");
    if (k.generators.rows() == 0) k.generators = RationalMatrix(0, k.ambient());
    if (k.generators.cols() != k.ambient() || k.generators.rows() != k.generator_log.size())
        parse_error("generators", "shape disagrees with ambient and generator_log");
    return k;
}

json admissible_to_json(const AdmissibleBasis& b, const KLattice& k) {
    json elems = json::array();
    for (const auto& e : b.elements) {
        std::size_t first = 0;
        while (first < k.degrees.size() && k.degrees[first] != e.degree) ++first;
        elems.push_back({{"i", e.degree / 2},
                         {"j", e.position + 1},
                         {"degree", e.degree},
                         {"leading", k.labels.at(first + e.position)},
                         {"ch", rational_vector_to_json(e.ch)}});
    }
    return {{"elements", elems}};
}

AdmissibleBasis admissible_from_json(const json& j) {
    AdmissibleBasis b;
    const json& elems = array(field(j, "elements"), "elements");
    for (std::size_t k = 0; k < elems.size(); ++k) {
        const std::string en = idx("elements", k);
        AdmissibleElement e;
        e.degree = small_int32(field(elems[k], "degree", en), en + ".degree");
        const int jpos = small_int32(field(elems[k], "j", en), en + ".j");
        if (jpos < 1) parse_error(en + ".j", "positions are one based");
        e.position = static_cast<std::size_t>(jpos - 1);
        const json& ch = array(field(elems[k], "ch", en), en + ".ch");
        for (std::size_t c = 0; c < ch.size(); ++c) e.ch.push_back(rational_from_json(ch[c], idx(en + ".ch", c)));
        b.elements.push_back(std::move(e));
    }
    return b;
}

ConeData cone_from_json(const json& j) {
    std::vector<int> degrees = int_list(field(j, "base_degrees"), "base_degrees");
    const int cell = small_int32(field(j, "cell_degree"), "cell_degree");
    RationalMatrix rows = rational_matrix_from_json(field(j, "lattice_rows"), "lattice_rows");
    std::vector<std::pair<int, int>> index;
    if (j.contains("admissible_index")) {
        const json& ai = array(j["admissible_index"], "admissible_index");
        for (std::size_t k = 0; k < ai.size(); ++k) {
            std::vector<int> pair = int_list(ai[k], idx("admissible_index", k));
            if (pair.size() != 2) parse_error(idx("admissible_index", k), "expected [i, j]");
            index.emplace_back(pair[0], pair[1]);
        }
    }
    return make_cone(std::move(degrees), cell, rows, std::move(index));
}

json cone_to_json(const ConeData& c) {
    json index = json::array();
    for (const auto& [i, jj] : c.admissible_index) index.push_back(json::array({i, jj}));
    return {{"base_degrees", c.base_degrees},
            {"cell_degree", c.cell_degree},
            {"lattice_rows", rational_matrix_to_json(c.extended.basis())},
            {"admissible_index", index}};
}

json report_to_json(const EInvariantReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"i", e.degree / 2},
                           {"j", e.position + 1},
                           {"degree", e.degree},
                           {"raw", rational_to_json(e.raw)},
                           {"mod1", rational_to_json(e.mod1)},
                           {"top", e.top}});
    return {{"cell_degree", r.cell_degree}, {"base_top_degree", r.base_top_degree}, {"entries", entries}};
}

json triviality_to_json(const TrivialityVerdict& v) {
    json out = {{"p", v.prime},     {"d", v.d},           {"bound", v.bound},
                {"stem", v.stem},   {"status", to_string(v.status)}, {"reason", v.reason},
                {"witness", nullptr}};
    if (v.witness)
        out["witness"] = {{"i", v.witness->degree / 2},
                          {"j", v.witness->position + 1},
                          {"mod1", rational_to_json(v.witness->mod1)}};
    return out;
}

json iso_to_json(const IsoCertificate& c) {
    json blocks = json::array();
    for (const auto& b : c.map.blocks) blocks.push_back(int_matrix_to_json(b));
    json dets = json::array();
    for (const auto& d : c.check.determinants) dets.push_back(int_to_json(d));
    json out = {{"degree2", int_matrix_to_json(c.degree2)},
                {"blocks", blocks},
                {"determinants", dets},
                {"relations_checked", c.relations_checked},
                {"pairs_checked", c.check.pairs_checked},
                {"origin", c.origin},
                {"candidate_index", nullptr}};
    if (c.candidate_index) out["candidate_index"] = *c.candidate_index;
    return out;
}

IntMatrix iso_matrix_from_json(const json& j) {
    if (j.is_object()) return int_matrix_from_json(field(j, "degree2"), "degree2");
    return int_matrix_from_json(j, "degree2");
}

json search_to_json(const IsoSearchResult& r) {
    return {{"found", r.iso.has_value()},
            {"iso", r.iso ? iso_to_json(*r.iso) : json(nullptr)},
            {"reason", r.iso ? json("found") : json(r.reason)},
            {"search_space", r.search_space}};
}

json kiso_to_json(const KIso& k) {
    return {{"matrix", int_matrix_to_json(k.matrix)}, {"relations_checked", k.relations_checked}};
}

json verdict_to_json(const RigidityVerdict& v) {
    json primes = json::array();
    primes.push_back({{"p", 2}, {"status", v.p2.status}, {"reason", v.p2.reason}});
    for (const auto& p : v.primes) primes.push_back({{"p", p.p}, {"status", p.status}, {"reason", p.reason}});
    json p2 = {{"status", v.p2.status}, {"route", v.p2.route}, {"reason", v.p2.reason}};
    auto table = [](const SquareTable& t) {
        json values = json::array();
        for (const auto& [x, q] : t.values) values.push_back({{"class", x}, {"q", q}});
        return json{{"rank", t.rank}, {"identically_zero", t.identically_zero}, {"nonzero_count", t.nonzero_count},
                    {"values", values}};
    };
    if (v.p2.src_table) p2["sq2_source"] = table(*v.p2.src_table);
    if (v.p2.dst_table) p2["sq2_target"] = table(*v.p2.dst_table);
    if (v.p2.tables_match) p2["tables_match"] = *v.p2.tables_match;
    json iso = nullptr;
    if (v.iso) {
        iso = iso_to_json(*v.iso);
        iso["status"] = v.iso_status;
        iso["reason"] = v.iso_reason;
        if (v.lift) iso["k_lift"] = kiso_to_json(*v.lift);
    }
    return {{"dim", v.dim},
            {"iso", iso},
            {"iso_status", v.iso_status},
            {"iso_reason", v.iso_reason},
            {"primes", primes},
            {"all_primes_from", v.all_primes_from ? json(*v.all_primes_from) : json(nullptr)},
            {"p2", p2}};
}

json error_to_json(const Error& e) {
    return {{"error", e.qualified_code()}, {"message", e.what()}, {"detail", e.detail()}};
}

}  // namespace qtor::io
