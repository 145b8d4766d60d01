#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "liekit/poisson.hpp"
#include "liekit/root_system.hpp"
#include "liekit/verify.hpp"

namespace {

using namespace liekit;

int cmd_roots(const std::string& type_str, int node, const std::string& cache_dir) {
    SimpleLieType t = SimpleLieType::parse(type_str);
    std::optional<RootSystem> rs;
    if (!cache_dir.empty()) {
        auto path = std::filesystem::path(cache_dir) / (t.str() + ".roots");
        if (std::filesystem::exists(path)) {
            std::ifstream f(path);
            rs.emplace(RootSystem::load_cache(f));
        }
    }
    if (!rs) rs.emplace(t);
    if (!cache_dir.empty()) {
        std::filesystem::create_directories(cache_dir);
        rs->save_cache_file((std::filesystem::path(cache_dir) / (t.str() + ".roots")).string());
    }
    const auto& hi = rs->root(rs->highest_root());
    std::cout << t.str() << ": " << rs->size() << " roots\n";
    std::cout << "highest root coefficients (Bourbaki node order):";
    for (int i = 0; i < rs->rank(); ++i) std::cout << " " << hi[size_t(i)];
    std::cout << "\n";
    if (node > 0) {
        if (node > rs->rank()) {
            std::cerr << "node out of range\n";
            return 2;
        }
        std::cout << "node " << node << ": highest-root coefficient " << hi[size_t(node - 1)]
                  << " (admissible levels 2.." << hi[size_t(node - 1)] << ")\n";
    }
    return 0;
}

void apply_env_tolerances(RunConfig& cfg) {
    if (const char* v = std::getenv("LIEKIT_TOL_ACCEPT")) cfg.tol_accept = std::atof(v);
    if (const char* v = std::getenv("LIEKIT_TOL_REJECT")) cfg.tol_reject = std::atof(v);
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config file: " + path);
    nlohmann::json j;
    f >> j;
    if (j.contains("instances")) {
        cfg.instances.clear();
        for (const auto& s : j["instances"]) cfg.instances.push_back(Instance::parse(s));
    }
    if (j.contains("kappa")) cfg.kappa = j["kappa"];
    if (j.contains("tol_accept")) cfg.tol_accept = j["tol_accept"];
    if (j.contains("tol_reject")) cfg.tol_reject = j["tol_reject"];
    if (j.contains("format")) cfg.format = j["format"];
    if (j.contains("output")) cfg.output = j["output"];
    if (j.contains("jobs")) cfg.jobs = j["jobs"];
    if (j.contains("seed")) cfg.seed = j["seed"];
}

int cmd_verify(const RunConfig& cfg) {
    VerificationReport rep = run_verification(cfg);
    std::string body = cfg.format == "json" ? render_json(rep) : render_text(rep);
    if (cfg.output == "-" || cfg.output.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(cfg.output, std::ios::binary);
        if (!f) {
            std::cerr << "cannot write output: " << cfg.output << "\n";
            return 2;
        }
        f << body;
    }
    return rep.ok() ? 0 : 1;
}

int cmd_selftest(uint64_t seed, bool corrupt) {
    for (const char* ts : {"A2", "B2", "G2", "A3"}) {
        SimpleLieType t = SimpleLieType::parse(ts);
        RootSystem rs(t);
        StructureConstants sc(rs);
        if (corrupt) sc.corrupt_one_sign();
        auto fail = chevalley_property_failures(rs, sc, 300, seed);
        if (!fail.empty()) {
            std::cerr << "selftest: " << ts << ": " << fail << "\n";
            return 1;
        }
        std::cout << "selftest: structure constants " << ts << " ok\n";
    }
    auto fail = hochschild_suite_failures(60, seed);
    if (!fail.empty()) {
        std::cerr << "selftest: hochschild: " << fail << "\n";
        return 1;
    }
    std::cout << "selftest: hochschild identities ok\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"liekit: exact computations around invariant Poisson structures on M_{l,alpha}"};
    app.require_subcommand(1);

    std::string roots_type, cache_dir;
    int roots_node = 0;
    auto* roots = app.add_subcommand("roots", "enumerate a root system");
    roots->add_option("type", roots_type, "Lie type, e.g. E8")->required();
    roots->add_option("--node", roots_node, "Bourbaki node to describe (1-based)");
    roots->add_option("--cache-dir", cache_dir, "root-system cache directory");

    RunConfig cfg = RunConfig::defaults();
    std::string config_path;
    std::vector<std::string> instance_strs;
    auto* verify = app.add_subcommand("verify", "run the verification pipeline");
    verify->add_option("--config", config_path, "JSON config file");
    verify->add_option("--instance", instance_strs,
                       "instance TYPE:NODE:LEVEL (repeatable), overrides config");
    auto* kappa_opt = verify->add_option("--kappa", cfg.kappa, "bracket scale kappa");
    auto* ta_opt = verify->add_option("--tol-accept", cfg.tol_accept, "accept tolerance");
    auto* tr_opt = verify->add_option("--tol-reject", cfg.tol_reject, "reject tolerance");
    auto* fmt_opt = verify->add_option("--format", cfg.format, "text|json");
    auto* out_opt = verify->add_option("--output", cfg.output, "output path or -");
    auto* jobs_opt = verify->add_option("--jobs", cfg.jobs, "parallel instances");
    auto* seed_opt = verify->add_option("--seed", cfg.seed, "rng seed");
    verify->add_flag("--perturb", cfg.perturb,
                     "negative control: perturb solved coefficients by 0.1");

    uint64_t st_seed = 20240901;
    bool corrupt = false;
    auto* selftest = app.add_subcommand("selftest", "run internal property suites");
    selftest->add_option("--seed", st_seed, "rng seed");
    selftest->add_flag("--corrupt-signs", corrupt, "mutation control: corrupt one sign");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (roots->parsed()) return cmd_roots(roots_type, roots_node, cache_dir);
        if (verify->parsed()) {
            // precedence: env < config file < flags
            RunConfig merged = RunConfig::defaults();
            apply_env_tolerances(merged);
            if (!config_path.empty()) apply_config_file(merged, config_path);
            if (!instance_strs.empty()) {
                merged.instances.clear();
                for (const auto& s : instance_strs) merged.instances.push_back(Instance::parse(s));
            }
            if (kappa_opt->count()) merged.kappa = cfg.kappa;
            if (ta_opt->count()) merged.tol_accept = cfg.tol_accept;
            if (tr_opt->count()) merged.tol_reject = cfg.tol_reject;
            if (fmt_opt->count()) merged.format = cfg.format;
            if (out_opt->count()) merged.output = cfg.output;
            if (jobs_opt->count()) merged.jobs = cfg.jobs;
            if (seed_opt->count()) merged.seed = cfg.seed;
            merged.perturb = cfg.perturb;
            merged.validate();
            return cmd_verify(merged);
        }
        if (selftest->parsed()) return cmd_selftest(st_seed, corrupt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
