#include "config.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace dtoda::cli
{

namespace
{

using nlohmann::json;

[[noreturn]] void fail(const std::string &field, const std::string &what)
{
    throw usage_error("config field '" + field + "': " + what);
}

const json &require(const json &obj, const std::string &key, const std::string &path)
{
    if (!obj.is_object() || !obj.contains(key)) {
        fail(path + key, "missing");
    }
    return obj.at(key);
}

double number(const json &v, const std::string &path)
{
    if (!v.is_number()) {
        fail(path, "expected a number");
    }
    return v.get<double>();
}

int integer(const json &v, const std::string &path)
{
    if (!v.is_number_integer()) {
        fail(path, "expected an integer");
    }
    return v.get<int>();
}

double optional_number(const json &obj, const std::string &key, double fallback, const std::string &path)
{
    return obj.contains(key) ? number(obj.at(key), path + key) : fallback;
}

// [{"k": 1, "re": 1.0, "im": 0.0}, ...]
std::map<int, cplx> coefficients(const json &v, const std::string &path)
{
    if (!v.is_array()) {
        fail(path, "expected an array of {k, re, im}");
    }
    std::map<int, cplx> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "].";
        const json &e = v[i];
        const int k = integer(require(e, "k", p), p + "k");
        out[k] += cplx{number(require(e, "re", p), p + "re"), optional_number(e, "im", 0.0, p)};
    }
    return out;
}

LaurentSeries series_from(const std::map<int, cplx> &m, Flavor flavor)
{
    const int lo = m.begin()->first;
    const int hi = m.rbegin()->first;
    std::vector<cplx> v(static_cast<std::size_t>(hi - lo + 1));
    for (const auto &[k, c] : m) {
        v[static_cast<std::size_t>(k - lo)] = c;
    }
    return LaurentSeries::polynomial(lo, std::move(v), flavor);
}

} // namespace

Hamiltonian ExperimentConfig::make_hamiltonian() const
{
    try {
        return Hamiltonian(hamiltonian, gauge);
    } catch (const hamiltonian_error &e) {
        throw usage_error(std::string("config field 'hamiltonian': ") + e.what());
    }
}

LaurentSeries ExperimentConfig::sigma_g() const
{
    if (pair.kind != PairSpec::Kind::sigma_from_g) {
        throw usage_error("config field 'pair.kind': this command needs 'sigma_from_g'");
    }
    return series_from(pair.g, Flavor::AtInfinity);
}

ConformalPair ExperimentConfig::make_pair() const
{
    try {
        switch (pair.kind) {
        case PairSpec::Kind::explicit_coefficients:
            return from_coefficients(pair.g, pair.f, order);
        case PairSpec::Kind::sigma_from_g:
            return sigma_conjugate(sigma_g(), order, working_depth(order));
        case PairSpec::Kind::random:
            return random_pair(pair.seed, pair.decay, order, pair.real);
        }
    } catch (const pair_error &e) {
        throw usage_error(std::string("config field 'pair': ") + e.what());
    }
    throw usage_error("config field 'pair.kind': unknown");
}

ExperimentConfig parse_config(const std::string &text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error &e) {
        throw usage_error(std::string("config syntax: ") + e.what());
    }
    if (!root.is_object()) {
        throw usage_error("config: top level must be an object");
    }
    static const std::vector<std::string> known = {"hamiltonian", "gauge",    "pair",       "order",
                                                   "samples_M",   "eps_fd",   "tolerances", "outputs"};
    for (const auto &[key, value] : root.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            fail(key, "unknown field");
        }
    }

    ExperimentConfig c;
    const json &h = require(root, "hamiltonian", "");
    if (!h.is_array() || h.empty()) {
        fail("hamiltonian", "expected a non-empty array of {mu, nu, re, im}");
    }
    for (std::size_t i = 0; i < h.size(); ++i) {
        const std::string p = "hamiltonian[" + std::to_string(i) + "].";
        const json &t = h[i];
        c.hamiltonian.push_back({integer(require(t, "mu", p), p + "mu"), integer(require(t, "nu", p), p + "nu"),
                                 cplx{number(require(t, "re", p), p + "re"), optional_number(t, "im", 0.0, p)}});
    }
    if (root.contains("gauge")) {
        const json &g = root.at("gauge");
        if (!g.is_array()) {
            fail("gauge", "expected an array of {variable, exponent, re, im}");
        }
        for (std::size_t i = 0; i < g.size(); ++i) {
            const std::string p = "gauge[" + std::to_string(i) + "].";
            const json &var = require(g[i], "variable", p);
            if (var != "z1" && var != "z2") {
                fail(p + "variable", "expected \"z1\" or \"z2\"");
            }
            c.gauge.push_back({var == "z1" ? GaugeVariable::z1 : GaugeVariable::z2,
                               integer(require(g[i], "exponent", p), p + "exponent"),
                               cplx{number(require(g[i], "re", p), p + "re"), optional_number(g[i], "im", 0.0, p)}});
        }
    }

    const json &pair = require(root, "pair", "");
    const json &kind = require(pair, "kind", "pair.");
    if (kind == "explicit") {
        c.pair.kind = PairSpec::Kind::explicit_coefficients;
        c.pair.g = coefficients(require(pair, "g", "pair."), "pair.g");
        c.pair.f = coefficients(require(pair, "f", "pair."), "pair.f");
        if (c.pair.g.empty() || c.pair.f.empty()) {
            fail("pair", "g and f need at least one coefficient");
        }
    } else if (kind == "sigma_from_g") {
        c.pair.kind = PairSpec::Kind::sigma_from_g;
        c.pair.g = coefficients(require(pair, "g", "pair."), "pair.g");
        if (c.pair.g.empty()) {
            fail("pair.g", "needs at least one coefficient");
        }
    } else if (kind == "random") {
        c.pair.kind = PairSpec::Kind::random;
        const json &seed = require(pair, "seed", "pair.");
        if (!seed.is_number_unsigned()) {
            fail("pair.seed", "expected a non-negative integer");
        }
        c.pair.seed = seed.get<std::uint64_t>();
        c.pair.decay = number(require(pair, "decay", "pair."), "pair.decay");
        if (pair.contains("real")) {
            if (!pair.at("real").is_boolean()) {
                fail("pair.real", "expected a boolean");
            }
            c.pair.real = pair.at("real").get<bool>();
        }
    } else {
        fail("pair.kind", "expected \"explicit\", \"sigma_from_g\" or \"random\"");
    }

    c.order = integer(require(root, "order", ""), "order");
    if (c.order < 4) {
        fail("order", "must be at least 4");
    }
    if (root.contains("samples_M")) {
        c.samples_m = integer(root.at("samples_M"), "samples_M");
    }
    const int min_samples = 4 * (2 * c.order + 1);
    if (c.samples_m < min_samples || (c.samples_m & (c.samples_m - 1)) != 0) {
        fail("samples_M", "must be a power of two >= " + std::to_string(min_samples));
    }
    c.eps_fd = optional_number(root, "eps_fd", c.eps_fd, "");
    if (!(c.eps_fd > 1e-8 && c.eps_fd < 1e-2)) {
        fail("eps_fd", "must lie in (1e-8, 1e-2)");
    }
    if (root.contains("tolerances")) {
        const json &t = root.at("tolerances");
        if (!t.is_object()) {
            fail("tolerances", "expected an object name -> number");
        }
        for (const auto &[name, value] : t.items()) {
            const double v = number(value, "tolerances." + name);
            if (!(v >= 0.0)) {
                fail("tolerances." + name, "must be non-negative");
            }
            c.tolerances[name] = v;
        }
    }
    if (root.contains("outputs")) {
        const json &o = root.at("outputs");
        if (!o.is_array()) {
            fail("outputs", "expected an array of {target, format}");
        }
        for (std::size_t i = 0; i < o.size(); ++i) {
            const std::string p = "outputs[" + std::to_string(i) + "].";
            const json &target = require(o[i], "target", p);
            if (!target.is_string()) {
                fail(p + "target", "expected a string");
            }
            OutputSpec s{target.get<std::string>(), OutputFormat::json};
            if (o[i].contains("format")) {
                const json &fmt = o[i].at("format");
                if (fmt == "csv") {
                    s.format = OutputFormat::csv;
                } else if (fmt != "json") {
                    fail(p + "format", "expected \"json\" or \"csv\"");
                }
            }
            c.outputs.push_back(std::move(s));
        }
    }
    return c;
}

ExperimentConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw usage_error("cannot read config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace dtoda::cli
