#ifndef DTODA_TOOLS_COMMANDS_HPP
#define DTODA_TOOLS_COMMANDS_HPP

#include "config.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace dtoda::cli
{

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string error; // non-empty when the computation threw
    double wall_ms = 0.0;
};

struct Report {
    std::string command;
    std::vector<CheckResult> checks; // ordered by name

    [[nodiscard]] bool pass() const;
    [[nodiscard]] nlohmann::ordered_json to_json(bool timings) const;
    [[nodiscard]] std::string to_csv(bool timings) const;
    [[nodiscard]] std::string to_text(bool timings) const;
};

// Result of one subcommand: data for the configured outputs plus the checks run.
struct CommandOutput {
    nlohmann::ordered_json data;
    std::string csv;
    Report report;
};

struct RunOptions {
    bool timings = false;
    int threads = 1;
};

// Every check name cmd_verify knows, with its default tolerance.
[[nodiscard]] const std::vector<std::pair<std::string, double>> &check_catalog();

// Threads from DTODA_THREADS, else the hardware concurrency.
[[nodiscard]] int threads_from_env();

[[nodiscard]] CommandOutput cmd_coords(const ExperimentConfig &config);
[[nodiscard]] CommandOutput cmd_grunsky(const ExperimentConfig &config);
[[nodiscard]] CommandOutput cmd_flow(const ExperimentConfig &config, int n, double eps, int steps,
                                     const std::string &method);
// Empty check_set selects every check applicable to the config.
[[nodiscard]] CommandOutput cmd_verify(const ExperimentConfig &config, const std::vector<std::string> &check_set,
                                       const RunOptions &options = {});
[[nodiscard]] CommandOutput cmd_sigma(const ExperimentConfig &config, const RunOptions &options = {});
[[nodiscard]] CommandOutput cmd_special(const ExperimentConfig &config, int mu, int nu,
                                        const RunOptions &options = {});

// Writes data or the report to every configured output; returns the targets written.
std::vector<std::string> write_outputs(const ExperimentConfig &config, const CommandOutput &out, bool timings);

} // namespace dtoda::cli

#endif
