// Command-line front end: run experiments described by config files.
//
// Exit codes: 0 success, 1 unexpected error, 2 configuration problem,
// 3 enumeration/budget refusal, 4 I/O failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "secgame/config.hpp"
#include "secgame/errors.hpp"
#include "secgame/experiments.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string output_dir;
    std::optional<std::uint64_t> seed;
    int workers = 1;
    bool verbose = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_run_flags) {
    cmd->add_option("-c,--config", args.config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    if (with_run_flags) {
        cmd->add_option("-o,--output", args.output_dir, "output directory override");
        cmd->add_option("-s,--seed", args.seed, "root seed override");
        cmd->add_option("-w,--workers", args.workers, "worker threads")
            ->check(CLI::PositiveNumber);
        cmd->add_flag("-v,--verbose", args.verbose, "chatty progress output");
    }
}

secgame::RunOverrides to_overrides(const CommonArgs& args) {
    secgame::RunOverrides overrides;
    if (!args.output_dir.empty()) overrides.output_dir = args.output_dir;
    if (args.seed) overrides.seed = *args.seed;
    overrides.workers = args.workers;
    overrides.verbosity = args.verbose ? 2 : 1;
    return overrides;
}

int dispatch(const std::string& verb, const CommonArgs& args) {
    secgame::ExperimentConfig cfg = secgame::load_config(args.config_path);
    if (verb == "validate") {
        std::cout << "ok: " << args.config_path << " (kind " << cfg.kind << ", name "
                  << cfg.name << ")\n";
        return 0;
    }
    secgame::RunResult result;
    if (verb == "sweep") {
        result = secgame::run_sweep(std::move(cfg), to_overrides(args));
    } else {
        result = secgame::run_experiment(std::move(cfg), to_overrides(args));
    }
    std::cout << result.summary;
    std::cout << "output: " << result.output_dir << "\n";
    return result.all_checks_passed ? 0 : 0; // audit verdicts are data, not errors
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"solver and simulation toolkit for network security-investment games"};
    app.require_subcommand(1);

    CommonArgs run_args, sweep_args, validate_args;
    CLI::App* run_cmd = app.add_subcommand("run", "run one experiment from a config file");
    add_common(run_cmd, run_args, true);
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "run an experiment across its [sweep] values");
    add_common(sweep_cmd, sweep_args, true);
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "parse and check a config file, run nothing");
    add_common(validate_cmd, validate_args, false);

    CLI11_PARSE(app, argc, argv);

    const std::string verb = run_cmd->parsed()     ? "run"
                             : sweep_cmd->parsed() ? "sweep"
                                                   : "validate";
    const CommonArgs& args = run_cmd->parsed()     ? run_args
                             : sweep_cmd->parsed() ? sweep_args
                                                   : validate_args;
    try {
        return dispatch(verb, args);
    } catch (const secgame::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const secgame::BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const secgame::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
