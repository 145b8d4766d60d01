#pragma once

#include <future>
#include <json.hpp>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "liekit/cohomology.hpp"
#include "liekit/hochschild.hpp"
#include "liekit/poisson.hpp"
#include "liekit/quasiroot.hpp"
#include "liekit/version.hpp"

namespace liekit {

struct Instance {
    SimpleLieType type;
    int node = 1;  // Bourbaki node numbering, 1-based
    int level = 2;

    std::string str() const {
        return type.str() + ":" + std::to_string(node) + ":" + std::to_string(level);
    }
    static Instance parse(const std::string& s) {
        auto p1 = s.find(':');
        auto p2 = s.find(':', p1 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos)
            throw std::invalid_argument("instance format is TYPE:NODE:LEVEL, e.g. G2:1:3");
        Instance in;
        in.type = SimpleLieType::parse(s.substr(0, p1));
        in.node = std::stoi(s.substr(p1 + 1, p2 - p1 - 1));
        in.level = std::stoi(s.substr(p2 + 1));
        return in;
    }
};

struct RunConfig {
    std::vector<Instance> instances;
    double kappa = 1.0;
    double tol_accept = 1e-9;
    double tol_reject = 1e-6;
    std::string format = "text";  // "text" or "json"
    std::string output = "-";
    int jobs = 1;
    uint64_t seed = 20240901;
    bool perturb = false;  // negative-control injection

    static RunConfig defaults() {
        RunConfig c;
        c.instances = {Instance{{Family::G, 2}, 2, 2}, Instance{{Family::G, 2}, 1, 3},
                       Instance{{Family::F, 4}, 3, 4}, Instance{{Family::E, 8}, 5, 5},
                       Instance{{Family::E, 8}, 4, 6}};
        return c;
    }

    void validate() const {
        if (!(tol_accept < tol_reject))
            throw std::invalid_argument("tol_accept must be below tol_reject");
        if (instances.empty()) throw std::invalid_argument("no instances configured");
        if (format != "text" && format != "json")
            throw std::invalid_argument("format must be text or json");
        if (jobs < 1) throw std::invalid_argument("jobs must be positive");
    }
};

struct BranchRow {
    std::string label;
    std::vector<Cplx> coeffs;  // c_1 .. c_{l-1}
    double recurrence_residual = 0.0;
    double mcybe_residual = 0.0;
    int h2 = 0, h3 = 0;
    int rank_d2 = 0, rank_d3 = 0;
    double ds_square_residual = 0.0;
    double ds_factor = 0.0;
    std::string status = "pass";
};

struct InstanceRow {
    Instance instance;
    int omega_p_size = 0;
    std::vector<int> class_sizes;
    int dim2 = 0, dim3 = 0;
    int expected_dim2 = 0, expected_dim3 = 0;
    bool connectivity = false;
    bool bracket_image = false;
    std::vector<BranchRow> branches;
    std::optional<WitnessReport> witness;
    std::string status = "pass";
    std::string note;
};

struct VerificationReport {
    std::string version = kVersion;
    RunConfig config;
    std::vector<InstanceRow> rows;
    int passed = 0, failed = 0;
    bool ok() const { return failed == 0; }
};

inline int expected_dim2_formula(int l) { return (l - 1) / 2; }
/// number of partitions of l into exactly three positive parts; the v(i,j)
/// identifications v(i,j) = v(j,i) = v(i,l-i-j) collapse index pairs to
/// class multisets {i,j,l-i-j}
inline int expected_dim3_formula(int l) {
    int count = 0;
    for (int i = 1; i <= l; ++i)
        for (int j = i; i + j < l; ++j) {
            int k = l - i - j;
            if (k >= j) ++count;
        }
    return count;
}

/// Runs the full pipeline for one instance. Shared immutable root data is
/// prepared by the caller.
inline InstanceRow verify_instance(const Instance& in, const RootSystem& rs,
                                   const StructureConstants& sc, const RunConfig& cfg) {
    InstanceRow row;
    row.instance = in;
    MlaModel model(rs, sc, in.node - 1, in.level);
    int l = in.level;
    row.omega_p_size = int(model.omega_p().size());
    for (int i = 1; i < l; ++i) row.class_sizes.push_back(int(model.class_members(i).size()));

    row.expected_dim2 = expected_dim2_formula(l);
    row.expected_dim3 = expected_dim3_formula(l);
    row.dim2 = int(invariant_subspace(model, 2, -1).size());
    row.dim3 = int(invariant_subspace(model, 3, +1).size());

    row.connectivity = true;
    for (int i = 1; i < l; ++i)
        if (!connectivity_check(model, i)) row.connectivity = false;
    row.bracket_image = true;
    for (int i = 1; i < l; ++i)
        for (int j = i; j < l; ++j) {
            if ((i + j) % l == 0) continue;
            if (!bracket_image_check(model, i, j)) row.bracket_image = false;
        }

    auto solutions = solve_phi_poisson(model, cfg.kappa, cfg.tol_accept);
    if (cfg.perturb) {
        for (auto& s : solutions) {
            if (l == 2) continue;
            s.family.c[1] += Cplx(0.1, 0.0);
            s.family.c[size_t(l - 1)] = -s.family.c[1];
            s.recurrence_residual = recurrence_residual(model, s.family);
            s.mcybe_residual =
                verify_mcybe(model, invariant_bivector(model, s.family), s.family.kappa);
        }
    }

    bool ok = row.dim2 == row.expected_dim2 && row.dim3 == row.expected_dim3 &&
              row.connectivity && row.bracket_image;
    if (l >= 3 && solutions.empty()) {
        ok = false;
        row.note = "no admissible coefficient family";
    }
    for (const auto& sol : solutions) {
        BranchRow br;
        br.label = sol.branch_label;
        for (int i = 1; i < l; ++i) br.coeffs.push_back(sol.family.c[size_t(i)]);
        br.recurrence_residual = sol.recurrence_residual;
        br.mcybe_residual = sol.mcybe_residual;
        bool branch_ok = true;
        if (br.mcybe_residual >= cfg.tol_reject || br.recurrence_residual >= cfg.tol_reject) {
            br.status = "fail:mcybe";
            branch_ok = false;
        } else if (br.mcybe_residual > cfg.tol_accept ||
                   br.recurrence_residual > cfg.tol_accept) {
            br.status = "indeterminate";
            branch_ok = false;
        }
        if (branch_ok) {
            auto slice = build_slice(model, sol);
            auto dims = cohomology_dims(slice, 1e-8, 1e-10, cfg.tol_reject);
            br.h2 = dims.h2;
            br.h3 = dims.h3;
            br.rank_d2 = dims.rank_d2;
            br.rank_d3 = dims.rank_d3;
            br.ds_square_residual = slice.ds_square_residual;
            br.ds_factor = slice.ds_factor;
            if (br.h2 != 0 || br.h3 != 0 || br.ds_square_residual > cfg.tol_accept) {
                br.status = "fail:cohomology";
                branch_ok = false;
            }
            if (branch_ok && in.type == SimpleLieType{Family::E, 8} && l == 6 &&
                in.node == 4 && !row.witness) {
                row.witness = e8_witness_check(slice);
                if (!row.witness->all_pass()) {
                    br.status = "fail:witness";
                    branch_ok = false;
                }
            }
        }
        ok = ok && branch_ok;
        row.branches.push_back(std::move(br));
    }
    row.status = ok ? "pass" : "fail";
    return row;
}

inline VerificationReport run_verification(const RunConfig& cfg) {
    cfg.validate();
    VerificationReport rep;
    rep.config = cfg;

    // build each distinct root system once; instances share them read-only
    struct BuiltType {
        std::unique_ptr<RootSystem> rs;
        std::unique_ptr<StructureConstants> sc;
    };
    std::map<std::string, BuiltType> built;
    for (const auto& in : cfg.instances) {
        auto key = in.type.str();
        if (!built.count(key)) {
            BuiltType bt;
            bt.rs = std::make_unique<RootSystem>(in.type);
            bt.sc = std::make_unique<StructureConstants>(*bt.rs);
            built.emplace(key, std::move(bt));
        }
    }

    std::vector<std::future<InstanceRow>> futures;
    int jobs = std::max(1, cfg.jobs);
    for (const auto& in : cfg.instances) {
        auto& pack = built.at(in.type.str());
        auto task = [&in, &pack, &cfg]() {
            return verify_instance(in, *pack.rs, *pack.sc, cfg);
        };
        futures.push_back(jobs > 1 ? std::async(std::launch::async, task)
                                   : std::async(std::launch::deferred, task));
    }
    for (auto& f : futures) {
        rep.rows.push_back(f.get());
        (rep.rows.back().status == "pass" ? rep.passed : rep.failed)++;
    }

    // the measured Schouten bookkeeping factor must agree across models
    std::optional<double> factor;
    for (auto& r : rep.rows) {
        if (r.instance.level < 3) continue;
        for (const auto& b : r.branches) {
            if (b.status != "pass") continue;
            if (!factor) {
                factor = b.ds_factor;
            } else if (std::abs(*factor - b.ds_factor) > 1e-6) {
                r.note += " inconsistent ds_factor";
                if (r.status == "pass") {
                    r.status = "fail";
                    rep.failed++;
                    rep.passed--;
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// report emission
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const VerificationReport& rep) {
    nlohmann::json j;
    j["toolkit"] = "liekit";
    j["version"] = rep.version;
    j["config"] = {{"kappa", rep.config.kappa},
                   {"tol_accept", rep.config.tol_accept},
                   {"tol_reject", rep.config.tol_reject},
                   {"seed", rep.config.seed},
                   {"perturb", rep.config.perturb}};
    nlohmann::json insts = nlohmann::json::array();
    for (const auto& in : rep.config.instances) insts.push_back(in.str());
    j["config"]["instances"] = insts;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows) {
        nlohmann::json jr;
        jr["instance"] = r.instance.str();
        jr["omega_p"] = r.omega_p_size;
        jr["class_sizes"] = r.class_sizes;
        jr["dim2"] = r.dim2;
        jr["dim3"] = r.dim3;
        jr["expected_dim2"] = r.expected_dim2;
        jr["expected_dim3"] = r.expected_dim3;
        jr["connectivity"] = r.connectivity;
        jr["bracket_image"] = r.bracket_image;
        nlohmann::json branches = nlohmann::json::array();
        for (const auto& b : r.branches) {
            nlohmann::json jb;
            jb["label"] = b.label;
            nlohmann::json cs = nlohmann::json::array();
            for (const auto& c : b.coeffs) cs.push_back({c.real(), c.imag()});
            jb["c"] = cs;
            jb["recurrence_residual"] = b.recurrence_residual;
            jb["mcybe_residual"] = b.mcybe_residual;
            jb["h2"] = b.h2;
            jb["h3"] = b.h3;
            jb["rank_d2"] = b.rank_d2;
            jb["rank_d3"] = b.rank_d3;
            jb["ds_square_residual"] = b.ds_square_residual;
            jb["ds_factor"] = b.ds_factor;
            jb["status"] = b.status;
            branches.push_back(jb);
        }
        jr["branches"] = branches;
        if (r.witness) {
            jr["witness"] = {{"roots_exist", r.witness->roots_exist},
                             {"zero_sum", r.witness->zero_sum},
                             {"sums_are_roots", r.witness->sums_are_roots},
                             {"non_sums_hold", r.witness->non_sums_hold},
                             {"upsilon_in_basis3", r.witness->upsilon_in_basis3},
                             {"witness_coefficient",
                              {r.witness->witness_coefficient.real(),
                               r.witness->witness_coefficient.imag()}},
                             {"coefficient_nonzero", r.witness->coefficient_nonzero}};
        }
        if (!r.note.empty()) jr["note"] = r.note;
        jr["status"] = r.status;
        rows.push_back(jr);
    }
    j["instances"] = rows;
    j["summary"] = {{"instances", int(rep.rows.size())},
                    {"passed", rep.passed},
                    {"failed", rep.failed}};
    return j;
}

inline std::string render_json(const VerificationReport& rep) {
    return to_json(rep).dump(2) + "\n";
}

inline std::string render_text(const VerificationReport& rep) {
    std::ostringstream os;
    os << "liekit verification report (v" << rep.version << ")\n";
    os << "instance      |Wp|  dims(2,3)  conn  brkt  branches\n";
    os << "------------- ----- ---------- ----- ----- --------\n";
    for (const auto& r : rep.rows) {
        std::ostringstream dims;
        dims << "(" << r.dim2 << "," << r.dim3 << ")";
        os << r.instance.str();
        for (size_t k = r.instance.str().size(); k < 14; ++k) os << ' ';
        os << r.omega_p_size << "     " << dims.str() << "      "
           << (r.connectivity ? "ok" : "NO") << "    " << (r.bracket_image ? "ok" : "NO")
           << "    " << r.branches.size() << " [" << r.status << "]\n";
        for (const auto& b : r.branches) {
            os.precision(3);
            os << "    branch " << b.label << ": mcybe=" << std::scientific
               << b.mcybe_residual << " H2=" << b.h2 << " H3=" << b.h3
               << " d2d2=" << b.ds_square_residual << " [" << b.status << "]\n";
            os.unsetf(std::ios::scientific);
        }
        if (r.witness) {
            os << "    witness: roots=" << (r.witness->roots_exist ? "ok" : "NO")
               << " sums=" << (r.witness->sums_are_roots ? "ok" : "NO")
               << " nonsums=" << (r.witness->non_sums_hold ? "ok" : "NO") << " coef=("
               << r.witness->witness_coefficient.real() << ","
               << r.witness->witness_coefficient.imag() << ")\n";
        }
    }
    os << "summary: " << rep.passed << " passed, " << rep.failed << " failed\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// selftest property suites (shared by the CLI and the test binaries)
// ---------------------------------------------------------------------------

/// Structure-constant properties I-IV over every root pair, plus Jacobi on
/// seeded random basis triples. Returns a human-readable failure or empty.
inline std::string chevalley_property_failures(const RootSystem& rs,
                                               const StructureConstants& sc,
                                               int jacobi_samples, uint64_t seed) {
    int R = rs.size();
    for (int a = 0; a < R; ++a)
        for (int b = 0; b < R; ++b) {
            int s = rs.sum_index(a, b);
            bool root_sum = s >= 0;
            const QuadExt& n = sc.n(a, b);
            if (root_sum == n.is_zero() && rs.negative_of(a) != b)
                return "property I fails at pair " + std::to_string(a) + "," + std::to_string(b);
            if (!root_sum) continue;
            if (sc.n(b, a) != -n) return "property III fails";
            if (sc.n(rs.negative_of(a), rs.negative_of(b)) != -n) return "property IV fails";
            int c = rs.negative_of(s);
            if (sc.n(b, c) != n || sc.n(c, a) != n) return "property II fails";
        }
    // Jacobi on random triples (exact)
    std::mt19937_64 rng(seed);
    int dim = sc.dim();
    std::uniform_int_distribution<int> pick(0, dim - 1);
    auto bracket_mv = [&](const Multivector<QuadExt>& u, int z) {
        Multivector<QuadExt> out;
        for (const auto& [m, c] : u.terms())
            for (const auto& t : sc.bracket(int(m[0]), z))
                out.add_term(Monomial{uint16_t(t.index)}, c * t.coeff);
        return out;
    };
    for (int it = 0; it < jacobi_samples; ++it) {
        int x = pick(rng), y = pick(rng), z = pick(rng);
        Multivector<QuadExt> total;
        auto add_term = [&](int a, int b, int c) {
            Multivector<QuadExt> ab;
            for (const auto& t : sc.bracket(a, b))
                ab.add_term(Monomial{uint16_t(t.index)}, t.coeff);
            total += bracket_mv(ab, c);
        };
        add_term(x, y, z);
        add_term(y, z, x);
        add_term(z, x, y);
        if (!total.is_zero())
            return "Jacobi fails at triple " + std::to_string(x) + "," + std::to_string(y) +
                   "," + std::to_string(z);
    }
    return "";
}

/// Hochschild identity suite on the three commutative lab algebras plus the
/// noncommutative control. Empty string on success.
inline std::string hochschild_suite_failures(int cochains_per_algebra, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<FiniteAlgebra> algs = {truncated_polynomial_algebra(3),
                                       square_zero_two_generators(),
                                       truncated_polynomial_algebra(4)};
    for (size_t ai = 0; ai < algs.size(); ++ai) {
        const auto& alg = algs[ai];
        if (!alg.is_commutative()) return "lab algebra not commutative";
        for (int p = 1; p <= 3; ++p) {
            int reps = std::max(1, cochains_per_algebra / 3);
            for (int it = 0; it < reps; ++it) {
                Cochain xi = random_cochain(alg, p, rng);
                Cochain dxi = coboundary(alg, xi);
                if (!coboundary(alg, dxi).is_zero()) return "d^2 != 0";
                if (!(tau(dxi) - coboundary(alg, tau(xi))).is_zero()) return "tau d != d tau";
                if (!alt(dxi).is_zero()) return "Alt(d xi) != 0 on commutative algebra";
                Cochain a = alt(xi);
                if (!(alt(a) - a).is_zero()) return "Alt not idempotent";
                Cochain plus = (xi + tau(xi)).scaled(Rat(1, 2));
                Cochain minus = (xi - tau(xi)).scaled(Rat(1, 2));
                if (!(tau(plus) - plus).is_zero() || !(tau(minus) + minus).is_zero() ||
                    !((plus + minus) - xi).is_zero())
                    return "parity split fails";
            }
        }
        if (!coboundary(alg, multiplication_cochain(alg)).is_zero())
            return "d(mu) != 0 (associativity restated)";
        for (int p = 1; p <= 2; ++p)
            for (const auto& z : skew_cocycle_basis(alg, p)) {
                if (!coboundary(alg, z).is_zero()) return "skew kernel vector is not a cocycle";
                if (!is_polyderivation(alg, z)) return "skew cocycle fails Leibniz";
            }
    }
    // noncommutative control: Alt(d xi) must fail for some cochain
    FiniteAlgebra nc = upper_triangular_2x2();
    if (nc.is_commutative()) return "control algebra unexpectedly commutative";
    bool violated = false;
    for (int it = 0; it < cochains_per_algebra && !violated; ++it) {
        Cochain xi = random_cochain(nc, 2, rng);
        if (!alt(coboundary(nc, xi)).is_zero()) violated = true;
    }
    if (!violated) return "noncommutative control failed to violate Alt(d)=0";
    return "";
}

}  // namespace liekit
