#include "commands.hpp"

#include "dtoda/flows.hpp"
#include "dtoda/reductions.hpp"
#include "dtoda/special.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

namespace dtoda::cli
{

namespace
{

using json = nlohmann::ordered_json;

json to_json(cplx z)
{
    return json::array({z.real(), z.imag()});
}

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json series_json(const LaurentSeries &s)
{
    json out = json::array();
    for (int k = s.lo(); k <= s.hi(); ++k) {
        out.push_back({{"k", k}, {"value", to_json(s.coeff(k))}});
    }
    return out;
}

// One computation that yields one residual per name.
struct CheckGroup {
    std::vector<std::string> names;
    std::function<std::vector<double>()> run;
};

double catalog_tolerance(const std::string &name)
{
    for (const auto &[n, tol] : check_catalog()) {
        if (n == name) {
            return tol;
        }
    }
    throw usage_error("unknown check '" + name + "'");
}

void validate_tolerances(const ExperimentConfig &config)
{
    for (const auto &[name, tol] : config.tolerances) {
        try {
            (void)catalog_tolerance(name);
        } catch (const usage_error &) {
            throw usage_error("config field 'tolerances." + name + "': unknown check");
        }
    }
}

double tolerance_for(const ExperimentConfig &config, const std::string &name)
{
    const auto it = config.tolerances.find(name);
    return it != config.tolerances.end() ? it->second : catalog_tolerance(name);
}

// Runs the groups that contain a selected name on a fixed pool; results keyed by name.
Report run_checks(const std::string &command, const ExperimentConfig &config, const std::vector<CheckGroup> &groups,
                  const std::set<std::string> &selected, const RunOptions &options)
{
    std::vector<const CheckGroup *> todo;
    for (const auto &g : groups) {
        if (std::any_of(g.names.begin(), g.names.end(), [&](const auto &n) { return selected.count(n) > 0; })) {
            todo.push_back(&g);
        }
    }
    struct Outcome {
        std::vector<double> values;
        std::string error;
        double wall_ms = 0.0;
    };
    std::vector<Outcome> outcomes(todo.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < todo.size(); i = next++) {
            const auto start = std::chrono::steady_clock::now();
            try {
                outcomes[i].values = todo[i]->run();
            } catch (const std::exception &e) {
                outcomes[i].error = e.what();
            }
            outcomes[i].wall_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
    };
    const int threads = std::clamp(options.threads, 1, static_cast<int>(std::max<std::size_t>(todo.size(), 1)));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }

    Report report;
    report.command = command;
    for (std::size_t i = 0; i < todo.size(); ++i) {
        for (std::size_t k = 0; k < todo[i]->names.size(); ++k) {
            const std::string &name = todo[i]->names[k];
            if (selected.count(name) == 0) {
                continue;
            }
            CheckResult r;
            r.name = name;
            r.tolerance = tolerance_for(config, name);
            r.error = outcomes[i].error;
            r.wall_ms = outcomes[i].wall_ms;
            r.residual = r.error.empty() ? outcomes[i].values.at(k) : std::nan("");
            r.pass = r.error.empty() && std::isfinite(r.residual) && r.residual <= r.tolerance;
            report.checks.push_back(std::move(r));
        }
    }
    std::sort(report.checks.begin(), report.checks.end(),
              [](const auto &a, const auto &b) { return a.name < b.name; });
    return report;
}

std::set<std::string> select(const std::vector<CheckGroup> &groups, const std::vector<std::string> &check_set)
{
    std::set<std::string> available;
    for (const auto &g : groups) {
        available.insert(g.names.begin(), g.names.end());
    }
    if (check_set.empty() || (check_set.size() == 1 && check_set[0] == "all")) {
        return available;
    }
    std::set<std::string> out;
    for (const auto &name : check_set) {
        (void)catalog_tolerance(name);
        if (available.count(name) == 0) {
            throw usage_error("check '" + name + "' does not apply to this config");
        }
        out.insert(name);
    }
    return out;
}

// Lazily computed value shared by several groups; rethrows the original error.
template <class T> class Shared
{
public:
    explicit Shared(std::function<T()> make) : make_(std::move(make)) {}

    const T &get()
    {
        std::call_once(once_, [this] {
            try {
                value_.emplace(make_());
            } catch (...) {
                error_ = std::current_exception();
            }
        });
        if (error_) {
            std::rethrow_exception(error_);
        }
        return *value_;
    }

private:
    std::function<T()> make_;
    std::once_flag once_;
    std::optional<T> value_;
    std::exception_ptr error_;
};

bool pair_is_real(const ConformalPair &p)
{
    for (const LaurentSeries *s : {&p.g(), &p.f()}) {
        for (int k = s->lo(); k <= s->hi(); ++k) {
            if (s->coeff(k).imag() != 0.0) {
                return false;
            }
        }
    }
    return true;
}

std::optional<MonomialCase> monomial_case(const Hamiltonian &h)
{
    if (h.terms().size() != 1 || !h.gauge().empty()) {
        return std::nullopt;
    }
    const HamiltonianTerm &t = h.terms()[0];
    if (t.c != cplx{1.0} || t.mu < 1 || t.nu < 1) {
        return std::nullopt;
    }
    return MonomialCase{t.mu, t.nu};
}

double max_abs_diff_on(const LaurentSeries &a, const LaurentSeries &b, int order)
{
    double d = 0.0;
    for (int k = -order; k <= order + 1; ++k) {
        d = std::max(d, std::abs(a.coeff(k) - b.coeff(k)));
    }
    return d;
}

std::vector<CheckGroup> special_groups(const ConformalPair &pair, MonomialCase mc)
{
    auto coords = std::make_shared<Shared<TodaCoordinates>>(
        [pair, mc] { return coordinates(pair, mc.hamiltonian(), summation_order(pair)); });
    return {
        {{"special.nontrivial"}, [coords, mc] { return std::vector{nontrivial_identity(coords->get(), mc)}; }},
        {{"special.logtau"},
         [coords, mc] {
             const auto &c = coords->get();
             return std::vector{std::abs(special_logtau(c, mc) - c.log_t)};
         }},
        {{"special.generating"},
         [coords, mc, pair] { return std::vector{generating_identity_check(pair, coords->get(), mc).derivative}; }},
    };
}

std::vector<CheckGroup> sigma_groups(const ExperimentConfig &config, const Hamiltonian &h)
{
    const LaurentSeries g = config.sigma_g();
    const int order = config.order;
    std::vector<CheckGroup> groups = {
        {{"sigma.coordinates"}, [g, h, order] { return std::vector{sigma_coordinate_check(g, h, order).max()}; }},
        {{"sigma.green_identity"},
         [g, h, order] { return std::vector{green_identity_check(g, h, std::min(order, 8))}; }},
    };
    if (const auto mc = monomial_case(h); mc && mc->mu == mc->nu) {
        const ConformalPair pair = config.make_pair();
        groups.push_back({{"sigma.logtau"}, [pair, mc] {
                              const auto c = coordinates(pair, mc->hamiltonian(), summation_order(pair));
                              return std::vector{std::abs(special_logtau(c, *mc) - c.log_t)};
                          }});
    }
    return groups;
}

json coordinates_json(const TodaCoordinates &c)
{
    json out;
    out["order"] = c.order;
    out["t0"] = to_json(c.t.at(0));
    out["t0_alt"] = to_json(c.t0_alt);
    out["v0"] = to_json(c.v0);
    out["log_T"] = to_json(c.log_t);
    out["log_tau"] = c.log_tau();
    out["Z1"] = to_json(c.z1);
    out["Z2"] = to_json(c.z2);
    out["Z3"] = to_json(c.z3);
    out["Z2_closed"] = to_json(c.z2_closed);
    json t = json::array();
    json v = json::array();
    for (const auto &[n, x] : c.t) {
        t.push_back({{"n", n}, {"value", to_json(x)}});
    }
    for (const auto &[n, x] : c.v) {
        v.push_back({{"n", n}, {"value", to_json(x)}});
    }
    out["t"] = std::move(t);
    out["v"] = std::move(v);
    return out;
}

std::string coordinates_csv(const TodaCoordinates &c)
{
    std::ostringstream os;
    os << "n,t_re,t_im,v_re,v_im\n";
    for (const auto &[n, t] : c.t) {
        const cplx v = c.v_at(n);
        os << n << ',' << num(t.real()) << ',' << num(t.imag()) << ',' << num(v.real()) << ',' << num(v.imag())
           << '\n';
    }
    return os.str();
}

void attach_report(CommandOutput &out)
{
    out.data["pass"] = out.report.pass();
}

} // namespace

bool Report::pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.pass; });
}

json Report::to_json(bool timings) const
{
    json arr = json::array();
    for (const auto &c : checks) {
        json e;
        e["name"] = c.name;
        e["residual"] = std::isfinite(c.residual) ? json(c.residual) : json(nullptr);
        e["tolerance"] = c.tolerance;
        e["pass"] = c.pass;
        if (!c.error.empty()) {
            e["error"] = c.error;
        }
        if (timings) {
            e["wall_ms"] = c.wall_ms;
        }
        arr.push_back(std::move(e));
    }
    return {{"command", command}, {"pass", pass()}, {"checks", std::move(arr)}};
}

std::string Report::to_csv(bool timings) const
{
    std::ostringstream os;
    os << "name,residual,tolerance,pass" << (timings ? ",wall_ms" : "") << '\n';
    for (const auto &c : checks) {
        os << c.name << ',' << num(c.residual) << ',' << num(c.tolerance) << ',' << (c.pass ? "pass" : "fail");
        if (timings) {
            os << ',' << num(c.wall_ms);
        }
        os << '\n';
    }
    return os.str();
}

std::string Report::to_text(bool timings) const
{
    std::ostringstream os;
    for (const auto &c : checks) {
        char line[256];
        std::snprintf(line, sizeof line, "%-22s residual %-24s tolerance %-10.3g %s", c.name.c_str(),
                      num(c.residual).c_str(), c.tolerance, c.pass ? "PASS" : "FAIL");
        os << line;
        if (timings) {
            std::snprintf(line, sizeof line, "  %.1f ms", c.wall_ms);
            os << line;
        }
        if (!c.error.empty()) {
            os << "  (" << c.error << ')';
        }
        os << '\n';
    }
    os << command << ": " << (pass() ? "PASS" : "FAIL") << '\n';
    return os.str();
}

const std::vector<std::pair<std::string, double>> &check_catalog()
{
    static const std::vector<std::pair<std::string, double>> catalog = {
        {"coords.plemelj", 1e-10},      {"coords.t0_duality", 1e-10},    {"coords.z2_closed_form", 1e-10},
        {"flows.jacobian", 1e-6},       {"flows.lax", 1e-8},             {"flows.string", 1e-9},
        {"gauge.coordinates", 1e-10},   {"gauge.flows", 1e-12},          {"grunsky.dual_path", 1e-10},
        {"grunsky.symmetry", 1e-10},    {"real.subspace", 1e-11},        {"sigma.coordinates", 1e-10},
        {"sigma.green_identity", 1e-10}, {"sigma.logtau", 1e-9},          {"special.generating", 1e-9},
        {"special.logtau", 1e-9},       {"special.nontrivial", 1e-9},    {"tau.gradient", 1e-6},
        {"tau.hessian", 1e-6},          {"tau.symmetry", 1e-6},
    };
    return catalog;
}

int threads_from_env()
{
    if (const char *env = std::getenv("DTODA_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1 || v > 1024) {
            throw usage_error("DTODA_THREADS must be an integer in [1, 1024]");
        }
        return static_cast<int>(v);
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

CommandOutput cmd_coords(const ExperimentConfig &config)
{
    const auto c = coordinates(config.make_pair(), config.make_hamiltonian(), config.order);
    CommandOutput out;
    out.data = coordinates_json(c);
    out.csv = coordinates_csv(c);
    return out;
}

CommandOutput cmd_grunsky(const ExperimentConfig &config)
{
    const GrunskyTable table = grunsky_table(config.make_pair(), config.order);
    const int n_max = config.order;
    CommandOutput out;
    out.data["order"] = n_max;
    out.data["b00"] = to_json(table.b00());
    out.data["symmetry_defect"] = table.symmetry_defect();
    json entries = json::array();
    std::ostringstream os;
    os << "m,n,re,im\n";
    for (int m = -n_max; m <= n_max; ++m) {
        for (int n = -n_max; n <= n_max; ++n) {
            const cplx b = table(m, n);
            entries.push_back({{"m", m}, {"n", n}, {"value", to_json(b)}});
            os << m << ',' << n << ',' << num(b.real()) << ',' << num(b.imag()) << '\n';
        }
    }
    out.data["entries"] = std::move(entries);
    out.csv = os.str();
    return out;
}

CommandOutput cmd_flow(const ExperimentConfig &config, int n, double eps, int steps, const std::string &method)
{
    if (std::abs(n) > config.order) {
        throw usage_error("flow index n must satisfy |n| <= order");
    }
    if (steps < 0) {
        throw usage_error("steps must be non-negative");
    }
    if (method != "euler" && method != "rk4") {
        throw usage_error("method must be 'euler' or 'rk4'");
    }
    const StepMethod sm = method == "rk4" ? StepMethod::rk4 : StepMethod::euler;
    const Hamiltonian h = config.make_hamiltonian();
    ConformalPair pair = config.make_pair();

    CommandOutput out;
    out.data["n"] = n;
    out.data["eps"] = eps;
    out.data["steps"] = steps;
    out.data["method"] = method;
    json traj = json::array();
    std::ostringstream os;
    os << "step,time,t_n_re,t_n_im,t0_re,t0_im,log_T_re,log_T_im,normalization_defect\n";
    for (int s = 0; s <= steps; ++s) {
        if (s > 0) {
            pair = step(pair, h, n, eps, sm);
        }
        const auto c = coordinates(pair, h, config.order);
        const double time = s * eps;
        traj.push_back({{"step", s},
                        {"time", time},
                        {"t_n", to_json(c.t.at(n))},
                        {"t0", to_json(c.t.at(0))},
                        {"log_T", to_json(c.log_t)},
                        {"normalization_defect", pair.normalization_defect()}});
        os << s << ',' << num(time) << ',' << num(c.t.at(n).real()) << ',' << num(c.t.at(n).imag()) << ','
           << num(c.t.at(0).real()) << ',' << num(c.t.at(0).imag()) << ',' << num(c.log_t.real()) << ','
           << num(c.log_t.imag()) << ',' << num(pair.normalization_defect()) << '\n';
    }
    out.data["trajectory"] = std::move(traj);
    out.data["final_pair"] = {{"g", series_json(pair.g())}, {"f", series_json(pair.f())}};
    out.csv = os.str();
    return out;
}

CommandOutput cmd_verify(const ExperimentConfig &config, const std::vector<std::string> &check_set,
                         const RunOptions &options)
{
    validate_tolerances(config);
    const ConformalPair pair = config.make_pair();
    const Hamiltonian h = config.make_hamiltonian();
    const int order = config.order;
    const int samples = config.samples_m;
    const double eps = config.eps_fd;

    auto coords = std::make_shared<Shared<TodaCoordinates>>([=] { return coordinates(pair, h, order); });
    auto table = std::make_shared<Shared<GrunskyTable>>([=] { return grunsky_table(pair, order); });

    std::vector<CheckGroup> groups = {
        {{"coords.t0_duality", "coords.z2_closed_form"},
         [coords] {
             const auto &c = coords->get();
             return std::vector{std::abs(c.t.at(0) - c.t0_alt), std::abs(c.z2 - c.z2_closed)};
         }},
        {{"coords.plemelj"}, [=] { return std::vector{plemelj_check(pair, h, coords->get(), samples).max()}; }},
        {{"grunsky.symmetry"}, [table] { return std::vector{table->get().symmetry_defect()}; }},
        {{"grunsky.dual_path"},
         [=] {
             InverseSampling s;
             s.samples = samples;
             return std::vector{GrunskyTable::max_difference(table->get(), grunsky_via_inverse(pair, order, s))};
         }},
        {{"flows.jacobian"}, [=] { return std::vector{jacobian_check(pair, h, std::min(order, 8), eps)}; }},
        {{"flows.string"}, [=] { return std::vector{string_check(pair, h)}; }},
        {{"flows.lax"},
         [=] {
             double d = 0.0;
             for (const int n : {-3, -2, -1, 1, 2, 3}) {
                 d = std::max(d, lax_check(pair, h, table->get(), n).max());
             }
             return std::vector{d};
         }},
        {{"tau.gradient", "tau.hessian", "tau.symmetry"},
         [=] {
             const auto r = tau_gradient_check(pair, h, std::min(order, 6), eps);
             return std::vector{r.gradient, r.hessian, r.symmetry};
         }},
    };
    if (!h.gauge().empty()) {
        groups.push_back({{"gauge.coordinates", "gauge.flows"}, [=] {
                              const Hamiltonian bare(h.terms());
                              const auto shift = gauge_shift_constants(h.gauge(), order);
                              const auto base = coordinates(pair, bare, order);
                              const auto &moved = coords->get();
                              double dc = std::abs(moved.v0 - base.v0 - shift.v0_shift);
                              double df = 0.0;
                              for (int n = -order; n <= order; ++n) {
                                  dc = std::max(dc, std::abs(moved.t.at(n) - base.t.at(n) - shift.c.at(n)));
                                  if (n != 0) {
                                      dc = std::max(dc, std::abs(moved.v.at(n) - base.v.at(n) - shift.d.at(n)));
                                  }
                                  const FlowField a = flow_field(pair, h, n);
                                  const FlowField b = flow_field(pair, bare, n);
                                  df = std::max({df, max_abs_diff_on(a.dg, b.dg, order),
                                                 max_abs_diff_on(a.df, b.df, order)});
                              }
                              return std::vector{dc, df};
                          }});
    }
    if (config.pair.kind == PairSpec::Kind::sigma_from_g && sigma_admissible(h)) {
        auto sg = sigma_groups(config, h);
        groups.insert(groups.end(), sg.begin(), sg.end());
    }
    if (pair_is_real(pair) && h.real_on_real()) {
        groups.push_back({{"real.subspace"}, [=] { return std::vector{real_subspace_check(pair, h, order)}; }});
    }
    if (const auto mc = monomial_case(h)) {
        auto sp = special_groups(pair, *mc);
        groups.insert(groups.end(), sp.begin(), sp.end());
    }

    CommandOutput out;
    out.report = run_checks("verify", config, groups, select(groups, check_set), options);
    out.data = out.report.to_json(options.timings);
    return out;
}

CommandOutput cmd_sigma(const ExperimentConfig &config, const RunOptions &options)
{
    validate_tolerances(config);
    const Hamiltonian h = config.make_hamiltonian();
    if (!sigma_admissible(h)) {
        throw usage_error("config field 'hamiltonian': not admissible for the sigma reduction");
    }
    const LaurentSeries g = config.sigma_g();
    const auto groups = sigma_groups(config, h);
    const auto c = coordinates(config.make_pair(), h, config.order);
    const GreenCoefficients green = green_coefficients(g, std::min(config.order, 8));

    CommandOutput out;
    out.report = run_checks("sigma", config, groups, select(groups, {}), options);
    out.data["coordinates"] = coordinates_json(c);
    json mixed = json::array();
    json holo = json::array();
    for (int m = 0; m <= green.order(); ++m) {
        for (int n = 0; n <= green.order(); ++n) {
            mixed.push_back({{"m", m}, {"n", n}, {"value", to_json(green.mixed(m, n))}});
            if (m > 0 && n > 0) {
                holo.push_back({{"m", m}, {"n", n}, {"value", to_json(green.holo(m, n))}});
            }
        }
    }
    out.data["green"] = {{"order", green.order()}, {"mixed", std::move(mixed)}, {"holo", std::move(holo)}};
    out.data["report"] = out.report.to_json(options.timings);
    attach_report(out);
    std::ostringstream os;
    green.write_csv(os);
    out.csv = os.str();
    return out;
}

CommandOutput cmd_special(const ExperimentConfig &config, int mu, int nu, const RunOptions &options)
{
    if (mu < 1 || nu < 1) {
        throw usage_error("special needs mu >= 1 and nu >= 1");
    }
    validate_tolerances(config);
    const MonomialCase mc{mu, nu};
    const ConformalPair pair = config.make_pair();
    const auto groups = special_groups(pair, mc);
    const auto c = special_coords(pair, mc, config.order);
    const auto full = coordinates(pair, mc.hamiltonian(), summation_order(pair));
    const auto gen = generating_identity_check(pair, full, mc);

    CommandOutput out;
    out.report = run_checks("special", config, groups, select(groups, {}), options);
    out.data["mu"] = mu;
    out.data["nu"] = nu;
    out.data["coordinates"] = coordinates_json(c);
    out.data["summation_order"] = summation_order(pair);
    out.data["log_T"] = to_json(full.log_t);
    out.data["special_log_T"] = to_json(special_logtau(full, mc));
    out.data["generating_offset"] = to_json(gen.offset);
    out.data["generating_plemelj"] = gen.plemelj;
    out.data["report"] = out.report.to_json(options.timings);
    attach_report(out);
    out.csv = coordinates_csv(c);
    return out;
}

std::vector<std::string> write_outputs(const ExperimentConfig &config, const CommandOutput &out, bool timings)
{
    std::vector<std::string> written;
    for (const auto &o : config.outputs) {
        std::ofstream file(o.target, std::ios::binary);
        if (!file) {
            throw std::runtime_error("cannot write output '" + o.target + "'");
        }
        if (o.format == OutputFormat::json) {
            file << out.data.dump(2) << '\n';
        } else {
            file << (out.csv.empty() ? out.report.to_csv(timings) : out.csv);
        }
        written.push_back(o.target);
    }
    return written;
}

} // namespace dtoda::cli
