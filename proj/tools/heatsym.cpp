#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <map>

#include "commands.hpp"
#include "config.hpp"

namespace {

// Config keys are shared by several subcommands: values come from --config,
// then from individual flags, which win.
struct ConfigFlags {
    std::string file;
    std::map<std::string, std::string> flags;

    void attach(CLI::App* app) {
        app->add_option("--config", file, "key=value config file");
        for (const std::string& key : cli::config_keys())
            app->add_option("--" + key, flags[key], "config key '" + key + "'");
    }

    cli::RunConfig build() const {
        cli::KeyValues kv;
        if (!file.empty()) kv = cli::read_config_file(file);
        for (const auto& [k, v] : flags)
            if (!v.empty()) kv[k] = v;
        return cli::make_config(kv);
    }
};

std::uint64_t seed_from(const CLI::Option* opt, std::uint64_t flag) {
    if (opt->count() > 0) return flag;
    if (const char* env = std::getenv("HEATSYM_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw cli::ConfigError("HEATSYM_SEED must be a non-negative integer");
        }
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symmetry-preserving finite-difference schemes for u_t = (K(u) u_x)_x + Q(u)"};
    app.require_subcommand(1);

    ConfigFlags run_cfg, audit_cfg, conv_cfg, cons_cfg, res_cfg;

    auto* run = app.add_subcommand("run", "integrate a scheme and write the solution CSV");
    run_cfg.attach(run);

    auto* audit = app.add_subcommand("audit", "check invariance of a scheme under its generators");
    audit_cfg.attach(audit);
    cli::AuditOptions audit_opt;
    std::uint64_t seed_flag = 0;
    audit->add_option("--trials", audit_opt.trials, "random stencils")->capture_default_str();
    audit->add_option("--eps", audit_opt.eps, "group parameters")->capture_default_str();
    audit->add_option("--generator", audit_opt.generators, "audit these labels instead of the bound set");
    auto* seed_opt = audit->add_option("--seed", seed_flag, "sampling seed (else HEATSYM_SEED, else 1)");

    auto* conv = app.add_subcommand("convergence", "refinement study against the heat kernel");
    conv_cfg.attach(conv);
    int refinements = 3;
    double lambda = 0.25;
    conv->add_option("--refinements", refinements)->capture_default_str();
    conv->add_option("--lambda", lambda, "tau/h^2")->capture_default_str();

    auto* cons = app.add_subcommand("conserve-check", "check the discrete conservation laws");
    cons_cfg.attach(cons);
    double cons_tol = 1e-10;
    cons->add_option("--tol", cons_tol)->capture_default_str();

    auto* tr = app.add_subcommand("transform", "apply a change of variables to a solution CSV");
    std::string tr_name, tr_in, tr_out;
    double tr_delta = 1.0, tr_sigma = 1.0;
    bool tr_inverse = false;
    tr->add_option("--transform", tr_name, "CH22, CH32, CH44A, CH44B, CH55 or CH56")->required();
    tr->add_option("--delta", tr_delta)->capture_default_str();
    tr->add_option("--sigma", tr_sigma)->capture_default_str();
    tr->add_flag("--inverse", tr_inverse);
    tr->add_option("--input", tr_in)->required();
    tr->add_option("--output", tr_out)->required();

    auto* res = app.add_subcommand("residual-check", "largest scheme residual of a solution CSV");
    res_cfg.attach(res);
    std::string res_in;
    double res_tol = 1e-10;
    res->add_option("--input", res_in)->required();
    res->add_option("--tol", res_tol)->capture_default_str();

    auto* list = app.add_subcommand("list-models", "print the classification catalog");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::BadConfig;
    }

    try {
        if (*run) return cli::cmd_run(run_cfg.build());
        if (*audit) {
            audit_opt.seed = seed_from(seed_opt, seed_flag);
            return cli::cmd_audit(audit_cfg.build(), audit_opt);
        }
        if (*conv) return cli::cmd_convergence(conv_cfg.build(), refinements, lambda);
        if (*cons) return cli::cmd_conserve_check(cons_cfg.build(), cons_tol);
        if (*tr) return cli::cmd_transform(tr_name, tr_delta, tr_sigma, tr_inverse, tr_in, tr_out);
        if (*res) return cli::cmd_residual_check(res_cfg.build(), res_in, res_tol);
        if (*list) return cli::cmd_list_models();
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return cli::BadConfig;
    }
    return cli::BadConfig;
}
