#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace dtoda::cli;

namespace
{

std::vector<std::string> split_checks(const std::string &s)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t end = s.find(',', start);
        const std::string item = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (!item.empty()) {
            out.push_back(item);
        }
        if (end == std::string::npos) {
            break;
        }
        start = end + 1;
    }
    return out;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"dtoda: dispersionless Toda numerical laboratory"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    bool timings = false;
    app.add_flag("--timings", timings, "Include wall time per check (output is then not reproducible)");

    auto add = [&](const std::string &name, const std::string &help) {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->add_option("config", config_path, "Experiment config (JSON)")->required();
        return sub;
    };
    CLI::App *coords = add("coords", "Time variables, v, log T");
    CLI::App *grunsky = add("grunsky", "Grunsky coefficient table");
    CLI::App *flow = add("flow", "Integrate the n-th flow");
    int n = 1;
    double eps = 1e-3;
    int steps = 10;
    std::string method = "rk4";
    flow->add_option("-n,--n", n, "Flow index");
    flow->add_option("--eps", eps, "Step size");
    flow->add_option("--steps", steps, "Number of steps");
    flow->add_option("--method", method, "euler or rk4")->check(CLI::IsMember({"euler", "rk4"}));
    CLI::App *verify = add("verify", "Run the identity checks");
    std::string checks = "all";
    verify->add_option("--checks", checks, "Comma-separated check names, or 'all'");
    CLI::App *sigma = add("sigma", "Sigma reduction report and Green kernel export");
    CLI::App *special = add("special", "Monomial Hamiltonian z1^mu z2^-nu");
    CLI::App *catalog = app.add_subcommand("checks", "List check names and default tolerances");
    int mu = 1;
    int nu = 1;
    special->add_option("--mu", mu, "mu")->required();
    special->add_option("--nu", nu, "nu")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (catalog->parsed()) {
            for (const auto &[name, tol] : check_catalog()) {
                std::cout << name << ' ' << tol << '\n';
            }
            return 0;
        }
        const ExperimentConfig config = load_config(config_path);
        const RunOptions options{timings, threads_from_env()};
        CommandOutput out;
        if (coords->parsed()) {
            out = cmd_coords(config);
        } else if (grunsky->parsed()) {
            out = cmd_grunsky(config);
        } else if (flow->parsed()) {
            out = cmd_flow(config, n, eps, steps, method);
        } else if (verify->parsed()) {
            out = cmd_verify(config, split_checks(checks), options);
        } else if (sigma->parsed()) {
            out = cmd_sigma(config, options);
        } else {
            out = cmd_special(config, mu, nu, options);
        }
        const auto written = write_outputs(config, out, timings);
        if (!out.report.checks.empty()) {
            std::cout << out.report.to_text(timings);
        } else if (written.empty()) {
            std::cout << out.data.dump(2) << '\n';
        }
        for (const auto &w : written) {
            std::cout << "wrote " << w << '\n';
        }
        return out.report.pass() ? 0 : 1;
    } catch (const usage_error &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
