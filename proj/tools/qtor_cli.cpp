#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qtor/serialization.hpp"

namespace {

using nlohmann::json;
using namespace qtor;

struct Output {
    bool pretty = false;
    std::string out_path;

    void emit(const json& j) const {
        const std::string text = (pretty ? j.dump(2) : j.dump()) + "\n";
        if (out_path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw Error("cli", "IoError", "cannot write " + out_path, {{"path", out_path}});
        f << text;
    }
};

ValidatedManifold load_manifold(const std::string& path) {
    return validate(io::manifold_from_json(io::read_file(path)));
}

int run_validate(const Output& o, const std::string& path) {
    o.emit(io::validation_to_json(load_manifold(path)));
    return 0;
}

int run_cohomology(const Output& o, const std::string& path) {
    const GradedRing r = cohomology(load_manifold(path));
    json j = io::ring_to_json(r);
    j["checks"] = {{"commutative", check_commutativity(r)},
                   {"associative", check_associativity(r)},
                   {"poincare_duality", check_poincare_duality(r)}};
    o.emit(j);
    return 0;
}

int run_klattice(const Output& o, const std::string& path, int degree_cap) {
    const GradedRing r = cohomology(load_manifold(path));
    KLattice k = chern_image(r);
    if (degree_cap > 0) k = skeleton_truncate(k, degree_cap);
    json j = io::klattice_to_json(k);
    if (degree_cap > 0) j["degree_cap"] = degree_cap;
    o.emit(j);
    return 0;
}

int run_admissible(const Output& o, const std::string& path) {
    const KLattice k = chern_image(cohomology(load_manifold(path)));
    o.emit(io::admissible_to_json(admissible_basis(k), k));
    return 0;
}

int run_einv(const Output& o, const std::string& path, int prime) {
    const ConeData cone = io::cone_from_json(io::read_file(path));
    const EInvariantReport rep = generalized_e(cone);
    json skeleta = json::array();
    const int d = cone.base_top_degree() / 2;
    for (int k = 1; k < d; ++k) {
        json entry = {{"k", k}};
        try {
            entry["consistent"] = skeleton_consistency(cone, k);
        } catch (const Error& e) {
            entry["consistent"] = nullptr;
            entry["error"] = e.qualified_code();
        }
        skeleta.push_back(entry);
    }
    json j = {{"cone", io::cone_to_json(cone)}, {"report", io::report_to_json(rep)}, {"skeleton_consistency", skeleta},
              {"triviality", nullptr}};
    int code = 0;
    if (prime > 0) {
        const TrivialityVerdict v = p_local_triviality(rep, prime, d);
        j["triviality"] = io::triviality_to_json(v);
        if (v.status == TrivialityStatus::Inconclusive) code = 1;
    }
    o.emit(j);
    return code;
}

int run_iso(const Output& o, const std::string& a, const std::string& b, int bound) {
    const GradedRing ra = cohomology(load_manifold(a)), rb = cohomology(load_manifold(b));
    const IsoSearchResult res = find_ring_iso(ra, rb, bound, search_cap_from_env());
    json j = io::search_to_json(res);
    j["bound"] = bound;
    o.emit(j);
    return res.iso ? 0 : 1;
}

int run_verdict(const Output& o, const std::string& a, const std::string& b, int bound, int prime_cap,
                const std::string& iso_path) {
    VerdictOptions opts;
    opts.bound = bound;
    opts.prime_cap = prime_cap;
    opts.search_cap = search_cap_from_env();
    if (!iso_path.empty()) opts.supplied_iso = io::iso_matrix_from_json(io::read_file(iso_path));
    const RigidityVerdict v = verdict(load_manifold(a), load_manifold(b), opts);
    o.emit(io::verdict_to_json(v));
    return v.iso && v.all_primes_from ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rigidity certificates for quasitoric manifolds"};
    app.require_subcommand(1);
    Output out;
    bool json_flag = false;
    app.add_flag("--json", json_flag, "Compact JSON output (default)");
    app.add_flag("--pretty", out.pretty, "Indented JSON output");
    app.add_option("--out", out.out_path, "Write the report to a file instead of standard output");

    std::string a, b, iso_path;
    int bound = 2, prime_cap = 97, degree_cap = 0, prime = 0;

    auto* validate_cmd = app.add_subcommand("validate", "Validate a manifold file");
    validate_cmd->add_option("manifold", a)->required();
    auto* cohomology_cmd = app.add_subcommand("cohomology", "Integral cohomology ring");
    cohomology_cmd->add_option("manifold", a)->required();
    auto* klattice_cmd = app.add_subcommand("klattice", "Chern character lattice of K-theory");
    klattice_cmd->add_option("manifold", a)->required();
    klattice_cmd->add_option("--degree-cap", degree_cap, "Restrict to the skeleton of this dimension")
        ->check(CLI::PositiveNumber);
    auto* admissible_cmd = app.add_subcommand("admissible", "Admissible basis of K-theory");
    admissible_cmd->add_option("manifold", a)->required();
    auto* einv_cmd = app.add_subcommand("einv", "Generalized e-invariant of a mapping cone");
    einv_cmd->add_option("cone", a)->required();
    einv_cmd->add_option("--prime", prime, "Odd prime for the p-local triviality test");
    auto* iso_cmd = app.add_subcommand("iso", "Search a cohomology ring isomorphism");
    iso_cmd->add_option("source", a)->required();
    iso_cmd->add_option("target", b)->required();
    iso_cmd->add_option("--bound", bound, "Entry bound for degree-2 matrices")->check(CLI::NonNegativeNumber);
    auto* verdict_cmd = app.add_subcommand("verdict", "Per-prime rigidity verdict");
    verdict_cmd->add_option("source", a)->required();
    verdict_cmd->add_option("target", b)->required();
    verdict_cmd->add_option("--bound", bound, "Entry bound for degree-2 matrices")->check(CLI::NonNegativeNumber);
    verdict_cmd->add_option("--prime-cap", prime_cap, "Largest prime listed")->check(CLI::PositiveNumber);
    verdict_cmd->add_option("--iso", iso_path, "Supplied degree-2 isomorphism (re-verified)");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*validate_cmd) return run_validate(out, a);
        if (*cohomology_cmd) return run_cohomology(out, a);
        if (*klattice_cmd) return run_klattice(out, a, degree_cap);
        if (*admissible_cmd) return run_admissible(out, a);
        if (*einv_cmd) return run_einv(out, a, prime);
        if (*iso_cmd) return run_iso(out, a, b, bound);
        if (*verdict_cmd) return run_verdict(out, a, b, bound, prime_cap, iso_path);
    } catch (const Error& e) {
        std::cerr << e.qualified_code() << ": " << e.what() << "\n";
        try {
            out.emit(io::error_to_json(e));
        } catch (const Error&) {
        }
        return 2;
    }
    return 2;
}
