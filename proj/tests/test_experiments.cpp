#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "secgame/config.hpp"
#include "secgame/csv.hpp"
#include "secgame/errors.hpp"
#include "secgame/experiments.hpp"

using namespace secgame;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

const char* kBinarySolveText = R"([experiment]
kind = solve
name = binary-regular
seed = 7

[payoff]
kind = best-shot
cost_scale = 0.25

[beliefs]
kind = regular
max_degree = 2
degrees = 2

[solver]
damping = 0.005
max_iterations = 4000
starts = zero one
)";

double column_value(const std::vector<std::vector<std::string>>& rows, std::size_t row,
                    const std::string& column) {
    for (std::size_t c = 0; c < rows[0].size(); ++c)
        if (rows[0][c] == column) return std::stod(rows[row][c]);
    throw std::runtime_error("column not found: " + column);
}

std::string column_text(const std::vector<std::vector<std::string>>& rows, std::size_t row,
                        const std::string& column) {
    for (std::size_t c = 0; c < rows[0].size(); ++c)
        if (rows[0][c] == column) return rows[row][c];
    throw std::runtime_error("column not found: " + column);
}

} // namespace

TEST_CASE("solve run: records, summary, manifest, and the analytic mixing point") {
    TempDir dir("secgame_test_solve");
    ExperimentConfig cfg = parse_config(kBinarySolveText);
    RunOverrides overrides;
    overrides.output_dir = dir.str();
    overrides.verbosity = 0;
    RunResult result = run_experiment(cfg, overrides);
    CHECK(result.output_dir == dir.str());
    CHECK(result.all_checks_passed);

    auto rows = read_csv(dir.str() + "/records.csv");
    REQUIRE(rows.size() >= 3);   // header + two starts x one degree
    CHECK(rows[0][0] == "start");
    // Damped oscillation settles within half a percent of p* = 0.5.
    for (std::size_t r = 1; r < rows.size(); ++r)
        CHECK(column_value(rows, r, "invest_probability") == doctest::Approx(0.5).epsilon(0.02));

    CHECK(fs::exists(dir.path / "eu_table.csv"));
    CHECK(fs::exists(dir.path / "summary.txt"));
    std::string manifest = read_text(dir.str() + "/manifest.txt");
    CHECK(manifest.find("root_seed = 7") != std::string::npos);
    CHECK(manifest.find("[payoff]") != std::string::npos);

    // The manifest's resolved configuration block re-parses to the same run.
    std::size_t start = manifest.find("[experiment]");
    REQUIRE(start != std::string::npos);
    ExperimentConfig back = parse_config(manifest.substr(start));
    CHECK(back.kind == cfg.kind);
    CHECK(back.seed == cfg.seed);
    CHECK(back.output_dir == dir.str());   // the override is resolved into the manifest
    back.output_dir.clear();
    CHECK(back.canonical_text() == cfg.canonical_text());
}

TEST_CASE("identical config and seed give byte-identical records") {
    TempDir dir_a("secgame_test_repro_a");
    TempDir dir_b("secgame_test_repro_b");
    ExperimentConfig cfg = parse_config(kBinarySolveText);
    RunOverrides a, b;
    a.output_dir = dir_a.str();
    b.output_dir = dir_b.str();
    a.verbosity = b.verbosity = 0;
    run_experiment(cfg, a);
    run_experiment(cfg, b);
    CHECK(read_text(dir_a.str() + "/records.csv") == read_text(dir_b.str() + "/records.csv"));
    CHECK(read_text(dir_a.str() + "/eu_table.csv") == read_text(dir_b.str() + "/eu_table.csv"));

    // A different seed perturbs the random starts but keeps the format.
    TempDir dir_c("secgame_test_repro_c");
    RunOverrides c;
    c.output_dir = dir_c.str();
    c.seed = 8;
    c.verbosity = 0;
    run_experiment(cfg, c);
    std::string manifest = read_text(dir_c.str() + "/manifest.txt");
    CHECK(manifest.find("root_seed = 8") != std::string::npos);
}

TEST_CASE("enumerate run lists every symmetric equilibrium") {
    TempDir dir("secgame_test_enumerate");
    std::string text = R"([experiment]
kind = enumerate
seed = 3

[payoff]
kind = best-shot
cost_scale = 0.25

[beliefs]
kind = regular
max_degree = 2
degrees = 1 2

[solver]
mixing_levels = 21
)";
    ExperimentConfig cfg = parse_config(text);
    RunOverrides overrides;
    overrides.output_dir = dir.str();
    overrides.verbosity = 0;
    RunResult result = run_experiment(cfg, overrides);
    auto rows = read_csv(dir.str() + "/records.csv");
    REQUIRE(rows.size() == 3);   // header + one equilibrium x two degrees
    CHECK(column_value(rows, 1, "invest_probability") == doctest::Approx(0.75));
    CHECK(column_value(rows, 2, "invest_probability") == doctest::Approx(0.5));
    CHECK(column_text(rows, 1, "action_monotonicity") == "non_increasing");
    CHECK(result.summary.find("1 symmetric equilibria") != std::string::npos);
}

TEST_CASE("association-audit run reports the verdict over recorded comparisons") {
    TempDir dir("secgame_test_assoc");
    std::string text = R"([experiment]
kind = association-audit
seed = 5

[beliefs]
kind = conditional
max_degree = 2
degrees = 1 2
row_1 = 0 0.7 0.3
row_2 = 0 0.2 0.8

[association]
subset_size = 1
functions = 3
)";
    ExperimentConfig cfg = parse_config(text);
    RunOverrides overrides;
    overrides.output_dir = dir.str();
    overrides.verbosity = 0;
    RunResult result = run_experiment(cfg, overrides);
    CHECK(result.summary.find("verdict: positive") != std::string::npos);
    auto rows = read_csv(dir.str() + "/records.csv");
    REQUIRE(rows.size() == 4);   // header + one pair x three functions
    for (std::size_t r = 1; r < rows.size(); ++r)
        CHECK(column_value(rows, r, "diff") >= -1e-12);
}

TEST_CASE("expost-validate run writes the graph and the agreement table") {
    TempDir dir("secgame_test_expost");
    std::string text = R"([experiment]
kind = expost-validate
seed = 11

[payoff]
kind = best-shot
cost_scale = 0.3

[graph]
n = 80
degree_pmf = 0 0.5 0 0.5
r_target = 0

[expost]
trials = 60
)";
    ExperimentConfig cfg = parse_config(text);
    RunOverrides overrides;
    overrides.output_dir = dir.str();
    overrides.verbosity = 0;
    overrides.workers = 2;
    RunResult result = run_experiment(cfg, overrides);
    CHECK(fs::exists(dir.path / "graph.edges"));
    auto rows = read_csv(dir.str() + "/records.csv");
    REQUIRE(rows.size() >= 2);
    CHECK(rows[0][0] == "degree");
    for (std::size_t r = 1; r < rows.size(); ++r) {
        double diff = column_value(rows, r, "abs_diff");
        CHECK(diff >= 0.0);
        CHECK((column_text(rows, r, "within_4se") == "1" ||
               column_text(rows, r, "within_4se") == "0"));
    }
    CHECK(result.summary.find("degree classes within 4 standard errors") != std::string::npos);

    // Worker count must not leak into the records.
    TempDir dir_b("secgame_test_expost_b");
    RunOverrides serial;
    serial.output_dir = dir_b.str();
    serial.verbosity = 0;
    serial.workers = 1;
    run_experiment(cfg, serial);
    CHECK(read_text(dir.str() + "/records.csv") == read_text(dir_b.str() + "/records.csv"));
}

TEST_CASE("sweep run: analytic mixing curve across cost scales") {
    TempDir dir("secgame_test_sweep");
    std::string text = std::string(kBinarySolveText) +
                       "\n[sweep]\nparameter = cost_scale\nvalues = 0.1 0.25 0.5 0.75\n";
    ExperimentConfig cfg = parse_config(text);
    RunOverrides overrides;
    overrides.output_dir = dir.str();
    overrides.verbosity = 0;
    overrides.workers = 4;
    RunResult result = run_sweep(cfg, overrides);
    CHECK(result.output_dir == dir.str());

    auto rows = read_csv(dir.str() + "/combined.csv");
    CHECK(rows[0][0] == "cost_scale");
    REQUIRE(rows.size() > 1);
    int checked = 0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        double c0 = std::stod(rows[r][0]);
        double expected = 1.0 - std::sqrt(c0);
        if (column_text(rows, r, "start") == "zero") {
            CHECK(column_value(rows, r, "invest_probability") ==
                  doctest::Approx(expected).epsilon(0.03));
            ++checked;
        }
    }
    CHECK(checked == 4);

    // Values appear in input order in the combined table.
    std::vector<double> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) seen.push_back(std::stod(rows[r][0]));
    CHECK(std::is_sorted(seen.begin(), seen.end()));

    // Each point directory is a complete run of its own.
    CHECK(fs::exists(dir.path / "cost_scale-0.25" / "records.csv"));
    CHECK(fs::exists(dir.path / "cost_scale-0.25" / "manifest.txt"));

    // Sweeping without a [sweep] section is a config error.
    ExperimentConfig plain = parse_config(kBinarySolveText);
    RunOverrides plain_overrides;
    plain_overrides.output_dir = dir.str() + "_plain";
    CHECK_THROWS_AS(run_sweep(plain, plain_overrides), ConfigError);
    fs::remove_all(dir.str() + "_plain");
}

TEST_CASE("sweep reruns are byte-identical including the combined table") {
    TempDir dir_a("secgame_test_sweep_a");
    TempDir dir_b("secgame_test_sweep_b");
    std::string text = std::string(kBinarySolveText) +
                       "\n[sweep]\nparameter = cost_scale\nvalues = 0.25 0.5\n";
    ExperimentConfig cfg = parse_config(text);
    RunOverrides a, b;
    a.output_dir = dir_a.str();
    b.output_dir = dir_b.str();
    a.verbosity = b.verbosity = 0;
    a.workers = 1;
    b.workers = 3;   // concurrency must not change the bytes
    run_sweep(cfg, a);
    run_sweep(cfg, b);
    CHECK(read_text(dir_a.str() + "/combined.csv") == read_text(dir_b.str() + "/combined.csv"));
    CHECK(read_text(dir_a.str() + "/cost_scale-0.5/records.csv") ==
          read_text(dir_b.str() + "/cost_scale-0.5/records.csv"));
}

TEST_CASE("output directory resolution prefers explicit settings") {
    ExperimentConfig cfg;
    cfg.kind = "solve";
    cfg.name = "resolver-check";
    cfg.output_dir = "/tmp/explicit";
    CHECK(resolve_output_dir(cfg) == "/tmp/explicit");
    cfg.output_dir.clear();
    // With the environment unset the default is a working-directory child.
    if (!std::getenv("SECGAME_OUTPUT_DIR"))
        CHECK(resolve_output_dir(cfg) == "./resolver-check");
}
