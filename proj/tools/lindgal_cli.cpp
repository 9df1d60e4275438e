#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lindgal/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Galerkin truncation toolkit for Lindblad dynamics on Fock spaces"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int threads = 0;
    long long seed = -1;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", config_path, "path to the run config file");
        if (needs_config) opt->required();
        sub->add_option("--out", out_dir, "output directory (overrides the config)");
        sub->add_option("--threads", threads, "worker threads (overrides the config)");
        sub->add_option("--seed", seed, "random seed (overrides the config)");
    };

    add_common(app.add_subcommand("evolve", "propagate one density matrix and report observables"),
               true);
    add_common(app.add_subcommand("steady", "solve for the stationary state(s)"), true);
    add_common(app.add_subcommand("converge", "truncation-error sweep against a reference level"),
               true);
    add_common(app.add_subcommand("apriori", "estimate Sobolev-moment growth constants"), true);
    add_common(app.add_subcommand("check", "run the cross-module invariant suite"), false);

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    if (command == "check" && config_path.empty()) return lindgal::run_invariant_checks() ? 1 : 0;

    try {
        lindgal::RunConfig cfg = lindgal::parse_config(config_path);
        cfg.command = command;  // the subcommand wins over [run] command
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (threads > 0) cfg.threads = threads;
        if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
        return lindgal::execute(cfg);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
