#ifndef DTODA_TOOLS_CONFIG_HPP
#define DTODA_TOOLS_CONFIG_HPP

#include "dtoda/conformal_pair.hpp"
#include "dtoda/hamiltonian.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtoda::cli
{

// Malformed configuration or arguments; maps to exit code 2.
class usage_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { json, csv };

struct OutputSpec {
    std::string target;
    OutputFormat format = OutputFormat::json;
};

struct PairSpec {
    enum class Kind { explicit_coefficients, sigma_from_g, random } kind = Kind::random;
    std::map<int, cplx> g;
    std::map<int, cplx> f;
    std::uint64_t seed = 7;
    double decay = 0.3;
    bool real = false;
};

struct ExperimentConfig {
    std::vector<HamiltonianTerm> hamiltonian;
    std::vector<GaugeTerm> gauge;
    PairSpec pair;
    int order = 16;
    int samples_m = 1024;
    double eps_fd = 1e-5;
    std::map<std::string, double> tolerances;
    std::vector<OutputSpec> outputs;

    [[nodiscard]] Hamiltonian make_hamiltonian() const;
    // Sigma pairs are stored at the working depth: f comes from an exact g and
    // the summation identities need its tail.
    [[nodiscard]] ConformalPair make_pair() const;
    [[nodiscard]] LaurentSeries sigma_g() const;
};

// Parses and validates; errors name the offending field (and line for syntax errors).
[[nodiscard]] ExperimentConfig parse_config(const std::string &text);
[[nodiscard]] ExperimentConfig load_config(const std::string &path);

} // namespace dtoda::cli

#endif
