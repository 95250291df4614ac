#ifndef SECGAME_EXPERIMENTS_HPP
#define SECGAME_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "secgame/config.hpp"

namespace secgame {

struct RunOverrides {
    std::optional<std::string> output_dir;
    std::optional<std::uint64_t> seed;
    int workers = 1;
    int verbosity = 1;
};

struct RunResult {
    std::string output_dir;
    std::string summary;
    /// Verdict-style experiments (lemma-suite) report their outcome here;
    /// a false value is data, not an execution failure.
    bool all_checks_passed = true;
};

/// Executes one experiment: writes records.csv (plus kind-specific files),
/// manifest.txt (resolved config + seed + version; the only place a
/// timestamp appears), and summary.txt into the output directory. Identical
/// config and seed produce byte-identical records.
RunResult run_experiment(ExperimentConfig cfg, const RunOverrides& overrides = {});

/// Runs the configured sweep: one sub-directory per value (points run
/// concurrently up to `workers`), then a combined table keyed by the swept
/// value, assembled in value order after every point finishes.
RunResult run_sweep(ExperimentConfig cfg, const RunOverrides& overrides = {});

/// Output directory resolution: explicit config/override value, else
/// $SECGAME_OUTPUT_DIR/<name>, else ./<name>.
std::string resolve_output_dir(const ExperimentConfig& cfg);

} // namespace secgame

#endif
