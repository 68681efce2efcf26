#include "polariton/scenarios.hpp"

#include "polariton/bessel.hpp"
#include "polariton/cavity.hpp"
#include "polariton/csv.hpp"
#include "polariton/error.hpp"
#include "polariton/linresp.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace polariton {

namespace fs = std::filesystem;
using config::ParamSet;

namespace {

// Fig. 2 runs need a window much longer than 1 / gamma_perp to resolve the
// narrow absorption line in the spectrum.
const std::vector<std::pair<std::string, std::string>> long_window{
    {"grid.tau_min", "-2"},
    {"grid.tau_max", "2558"},
    {"grid.n_tau", "128001"},
};

// Reference medium for density sweeps when no physical.* inputs are given:
// a 1 debye dipole on a 589 nm transition.
constexpr double reference_dipole = 1e-18;
constexpr double reference_frequency = 3.1983e15;

} // namespace

const std::vector<std::string>& scenario_names()
{
    static const std::vector<std::string> names{
        "linear-line", "ringing",     "pump-probe", "fig2a",      "fig2b",
        "fig2c",       "cavity-modes", "fp-spectrum", "dispersion", "sweep",
    };
    return names;
}

bool is_scenario(const std::string& name)
{
    const auto& n = scenario_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

std::vector<std::pair<std::string, std::string>> scenario_preset(const std::string& name)
{
    if (!is_scenario(name))
        throw UnknownScenario("unknown scenario '" + name + "'");

    std::vector<std::pair<std::string, std::string>> preset;
    auto fig2_common = [&] {
        preset = long_window;
        preset.insert(preset.end(), {
                                        {"medium.gamma_perp_t", "1e-3"},
                                        {"medium.gamma_par_t", "1e-3"},
                                        {"pump.area_pi_units", "0.49"},
                                        {"solver.d_zeta", "5e-4"},
                                        {"solver.convergence_check", "0"},
                                        {"spectrum.delta_limit", "5"},
                                    });
    };
    if (name == "linear-line") {
        preset = long_window;
        preset.insert(preset.end(), {{"grid.zeta_end", "1"}, {"solver.convergence_check", "0"}});
    } else if (name == "fig2a") {
        fig2_common();
        preset.insert(preset.end(), {{"fig2.zetas", "1"}, {"fig2.delays", "0"},
                                     {"fig2.include_linear", "1"}});
    } else if (name == "fig2b") {
        fig2_common();
        preset.insert(preset.end(), {{"fig2.zetas", "1"}, {"fig2.delays", "-0.5, 0.5, 0"}});
    } else if (name == "fig2c") {
        fig2_common();
        preset.insert(preset.end(), {{"fig2.zetas", "0.5, 2"}, {"fig2.delays", "-0.5"}});
    }
    return preset;
}

ParamSet resolve_parameters(const std::string& name,
                            const std::optional<fs::path>& config_path,
                            const std::vector<std::string>& overrides)
{
    ParamSet p = ParamSet::defaults();
    for (const auto& [key, value] : scenario_preset(name))
        p.set(key, value, "preset");
    if (config_path)
        config::apply_config_file(p, *config_path);
    for (const auto& o : overrides)
        config::apply_override(p, o);
    return p;
}

std::optional<PhysicalMedium> physical_from(const ParamSet& p)
{
    PhysicalMedium m;
    m.dipole_moment = p.number("physical.dipole_moment");
    m.transition_frequency = p.number("physical.transition_frequency");
    m.density = p.number("physical.density");
    m.gamma_perp = p.number("physical.gamma_perp");
    m.gamma_par = p.number("physical.gamma_par");
    if (m.dipole_moment > 0.0 && m.transition_frequency > 0.0 && m.density > 0.0)
        return m;
    return std::nullopt;
}

MediumParams medium_from(const ParamSet& p)
{
    MediumParams m{p.number("medium.gamma_perp_t"), p.number("medium.gamma_par_t"),
                   p.number("medium.detuning_t")};
    if (const auto phys = physical_from(p)) {
        const auto norm = nondimensionalize(*phys);
        m.gamma_perp_t = norm.params.gamma_perp_t;
        m.gamma_par_t = norm.params.gamma_par_t;
    }
    m.validate();
    return m;
}

SimGrid grid_from(const ParamSet& p)
{
    SimGrid g;
    g.tau_min = p.number("grid.tau_min");
    g.tau_max = p.number("grid.tau_max");
    g.n_tau = p.integer("grid.n_tau");
    g.zeta_end = p.number("grid.zeta_end");
    g.n_zeta = p.integer("grid.n_zeta");
    g.record_stations = p.list("grid.stations");
    if (const auto phys = physical_from(p); phys && p.number("physical.length_cm") > 0.0)
        g.zeta_end = to_zeta(p.number("physical.length_cm"), nondimensionalize(*phys).scales);
    g.validate();
    return g;
}

SolverConfig solver_from(const ParamSet& p)
{
    SolverConfig s;
    s.d_zeta = p.number("solver.d_zeta");
    s.corrector_iterations = p.integer("solver.corrector_iterations");
    s.tolerance = p.number("solver.tolerance");
    s.validate();
    return s;
}

PulseSpec pulse_from(const ParamSet& p, const std::string& prefix)
{
    PulseSpec s;
    s.shape = p.text(prefix + ".shape") == "sech" ? PulseShape::sech : PulseShape::gaussian;
    s.area = p.number(prefix + ".area_pi_units") * pi;
    s.duration = p.number(prefix + ".duration");
    s.center = p.number(prefix + (prefix == "probe" ? ".delay" : ".center"));
    s.carrier_offset = p.number(prefix + ".carrier_offset");
    if (prefix == "probe")
        s.center += p.number("pump.center");
    return s;
}

experiments::PumpProbeConfig pump_probe_from(const ParamSet& p)
{
    experiments::PumpProbeConfig c;
    c.pump = pulse_from(p, "pump");
    c.probe = pulse_from(p, "probe");
    c.medium = medium_from(p);
    c.grid = grid_from(p);
    c.solver = solver_from(p);
    c.delta_limit = p.number("spectrum.delta_limit");
    c.mask_threshold = p.number("spectrum.mask_threshold");
    c.check_linearity = p.integer("spectrum.check_linearity") != 0;
    return c;
}

std::string RunManifest::render() const
{
    std::ostringstream out;
    out << "scenario = " << scenario << '\n';
    out << "wall_seconds = " << csv::format_number(wall_seconds) << '\n';
    for (const auto& [k, v] : parameters)
        out << "param." << k << " = " << v << '\n';
    for (const auto& [k, v] : physical)
        out << "physical." << k << " = " << v << '\n';
    for (const auto& [k, v] : results)
        out << "result." << k << " = " << v << '\n';
    for (std::size_t i = 0; i < outputs.size(); ++i)
        out << "output." << i << " = " << outputs[i].generic_string() << '\n';
    if (convergence.empty())
        out << "convergence = not checked\n";
    for (std::size_t i = 0; i < convergence.size(); ++i)
        out << "convergence." << i << " = " << convergence[i] << '\n';
    for (std::size_t i = 0; i < warnings.size(); ++i)
        out << "warning." << i << " = " << warnings[i] << '\n';
    return out.str();
}

namespace {

std::string num(double v) { return csv::format_number(v); }

// short form for file names
std::string tag(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct Context
{
    const ParamSet& params;
    fs::path out_dir;
    std::string prefix; // prepended to file names and result keys
    std::function<void(const std::string&)> progress;
};

struct Output
{
    std::vector<std::pair<std::string, std::string>> results;
    std::vector<fs::path> files;
    std::vector<std::string> warnings;
    std::vector<std::string> convergence;

    void result(const Context& ctx, const std::string& key, const std::string& value)
    {
        results.emplace_back(ctx.prefix + key, value);
    }

    void warn(const std::vector<std::string>& messages)
    {
        for (const auto& m : messages)
            if (std::find(warnings.begin(), warnings.end(), m) == warnings.end())
                warnings.push_back(m);
    }
};

void say(const Context& ctx, const std::string& msg)
{
    if (ctx.progress)
        ctx.progress(ctx.prefix + msg);
}

fs::path file(const Context& ctx, Output& out, const std::string& name)
{
    fs::path rel = ctx.prefix + name;
    out.files.push_back(rel);
    return ctx.out_dir / rel;
}

void maybe_check_convergence(const Context& ctx, Output& out, const std::vector<complex>& input,
                             const MediumParams& medium, const SimGrid& grid,
                             const SolverConfig& solver)
{
    if (ctx.params.integer("solver.convergence_check") == 0)
        return;
    say(ctx, "convergence check at half the zeta step");
    const auto r = check_convergence(FieldRecord{0.0, input}, medium, grid, solver);
    std::ostringstream line;
    line << (ctx.prefix.empty() ? "" : ctx.prefix + " ") << "d_zeta " << num(r.d_zeta) << " relative_norm_change "
         << num(r.relative_norm_change) << " relative_field_change " << num(r.relative_field_change)
         << " converged " << (r.converged ? "yes" : "no");
    out.convergence.push_back(line.str());
}

double max_unmasked(const TransmissionSpectrum& s)
{
    double m = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k)
        if (!s.masked[k])
            m = std::max(m, s.T[k]);
    return m;
}

double min_unmasked(const TransmissionSpectrum& s)
{
    double m = INFINITY;
    for (std::size_t k = 0; k < s.size(); ++k)
        if (!s.masked[k])
            m = std::min(m, s.T[k]);
    return m;
}

void report_metrics(const Context& ctx, Output& out, const std::string& key,
                    const TransmissionSpectrum& s)
{
    const auto m = experiments::feature_metrics(s);
    out.result(ctx, key + ".max_T", num(max_unmasked(s)));
    out.result(ctx, key + ".min_T", num(min_unmasked(s)));
    out.result(ctx, key + ".n_peaks", std::to_string(m.peak_positions.size()));
    out.result(ctx, key + ".outermost_position", num(m.outermost_position));
    out.result(ctx, key + ".feature_width", num(m.feature_width));
}

void run_linear_line(const Context& ctx, Output& out)
{
    const ParamSet& p = ctx.params;
    const PulseSpec pulse = pulse_from(p, "pulse");
    const MediumParams medium = medium_from(p);
    SimGrid grid = grid_from(p);
    grid.record_stations = {grid.zeta_end};
    const SolverConfig solver = solver_from(p);
    const double limit = p.number("spectrum.delta_limit");

    say(ctx, "propagating weak pulse to zeta = " + num(grid.zeta_end));
    const auto input = render_pulse(pulse, grid);
    const auto run = propagate(FieldRecord{0.0, input}, medium, grid, solver);
    out.warn(run.warnings);

    auto sim = experiments::transmission_from_fields(input, run.fields.back().omega, grid, limit,
                                                     p.number("spectrum.mask_threshold"));
    TransmissionSpectrum oracle;
    oracle.delta = sim.delta;
    double worst = 0.0;
    for (std::size_t k = 0; k < sim.size(); ++k) {
        const auto h = linresp::transfer_function(sim.delta[k], grid.zeta_end, medium.gamma_perp_t);
        oracle.T.push_back(h.singular ? 0.0 : std::norm(h.value));
        if (!sim.masked[k])
            worst = std::max(worst, std::abs(sim.T[k] - oracle.T.back()));
    }
    oracle.masked.assign(oracle.T.size(), 0);

    csv::write_spectrum(file(ctx, out, "linear_line.csv"), sim);
    csv::write_cavity(file(ctx, out, "linear_line_oracle.csv"), oracle);
    out.result(ctx, "max_abs_error_vs_oracle", num(worst));
    out.result(ctx, "linear_line_width", num(linresp::linear_line_width(grid.zeta_end, medium.gamma_perp_t)));
    out.result(ctx, "pulse_area_in", num(pulse_area(FieldRecord{0.0, input}, grid)));
    out.result(ctx, "pulse_area_out", num(pulse_area(run.fields.back(), grid)));
    maybe_check_convergence(ctx, out, input, medium, grid, solver);
}

void run_ringing(const Context& ctx, Output& out)
{
    const ParamSet& p = ctx.params;
    const PulseSpec pulse = pulse_from(p, "pulse");
    const MediumParams medium = medium_from(p);
    const SimGrid grid = grid_from(p);
    const SolverConfig solver = solver_from(p);

    say(ctx, "ringing trace to zeta = " + num(grid.zeta_end));
    const auto trace = experiments::ringing_trace(pulse, medium, grid, solver);
    out.warn(trace.warnings);
    csv::write_field(file(ctx, out, "ringing_input.csv"), trace.input, grid);
    csv::write_field(file(ctx, out, "ringing_output.csv"), trace.output, grid);

    out.result(ctx, "n_nodes", std::to_string(trace.nodes.size()));
    for (std::size_t i = 0; i < trace.nodes.size() && i < 5; ++i) {
        out.result(ctx, "node." + std::to_string(i + 1), num(trace.nodes[i]));
        if (grid.zeta_end > 0.0) {
            const double z = bessel::j1_zero(static_cast<int>(i + 1));
            out.result(ctx, "node." + std::to_string(i + 1) + ".impulse_prediction",
                       num(pulse.center + z * z / (2.0 * grid.zeta_end)));
        }
    }
    out.result(ctx, "pulse_area_out", num(pulse_area(trace.output, grid)));
    maybe_check_convergence(ctx, out, trace.input.omega, medium, grid, solver);
}

std::vector<complex> pump_plus_probe(const experiments::PumpProbeConfig& cfg)
{
    auto input = render_pulse(cfg.pump, cfg.grid);
    const auto probe = render_pulse(cfg.probe, cfg.grid);
    for (std::size_t j = 0; j < input.size(); ++j)
        input[j] += probe[j];
    return input;
}

void write_pump_probe(const Context& ctx, Output& out, const std::string& key,
                      const experiments::PumpProbeResult& r)
{
    csv::write_spectrum(file(ctx, out, "spectrum_" + key + ".csv"), r.spectrum);
    out.warn(r.spectrum.metadata.warnings);
    report_metrics(ctx, out, key, r.spectrum);
    if (r.linearity_deviation >= 0.0)
        out.result(ctx, key + ".linearity_deviation", num(r.linearity_deviation));
}

void run_single_pump_probe(const Context& ctx, Output& out)
{
    const auto cfg = pump_probe_from(ctx.params);
    say(ctx, "pump-probe at zeta = " + num(cfg.grid.zeta_end) + ", tau0 = " + num(cfg.tau0()));
    const auto r = experiments::run_pump_probe(cfg);
    write_pump_probe(ctx, out, "pump_probe", r);
    csv::write_field(file(ctx, out, "probe_out.csv"), r.probe_out, cfg.grid);
    maybe_check_convergence(ctx, out, pump_plus_probe(cfg), cfg.medium, cfg.grid, cfg.solver);
}

void run_fig2(const Context& ctx, Output& out)
{
    const ParamSet& p = ctx.params;
    const auto base = pump_probe_from(p);
    const auto zetas = p.list("fig2.zetas");
    const auto delays = p.list("fig2.delays");
    if (zetas.empty() || delays.empty())
        throw InvalidParameter("fig2.zetas and fig2.delays must not be empty");

    for (double zeta : zetas) {
        std::vector<std::pair<double, TransmissionSpectrum>> by_delay;
        auto cfg = base;
        cfg.grid.zeta_end = zeta;
        cfg.grid.record_stations.clear();

        if (p.integer("fig2.include_linear")) {
            auto lin = cfg;
            lin.pump.area = 0.0;
            say(ctx, "linear reference at zeta = " + num(zeta));
            write_pump_probe(ctx, out, "linear_zeta" + tag(zeta), experiments::run_pump_probe(lin));
        }
        say(ctx, "pump-probe at zeta = " + num(zeta) + " for " + std::to_string(delays.size()) +
                     " delay(s)");
        const auto runs = experiments::run_pump_probe_delays(cfg, delays);
        for (std::size_t i = 0; i < delays.size(); ++i) {
            write_pump_probe(ctx, out, "zeta" + tag(zeta) + "_tau0" + tag(delays[i]), runs[i]);
            by_delay.emplace_back(delays[i], runs[i].spectrum);
        }

        // compare each delayed run against the simultaneous (tau0 = 0) one
        const auto baseline = std::find_if(by_delay.begin(), by_delay.end(),
                                           [](const auto& e) { return e.first == 0.0; });
        if (baseline == by_delay.end())
            continue;
        for (const auto& [delay, s] : by_delay) {
            if (delay == 0.0)
                continue;
            double lowest = INFINITY, where = 0.0;
            for (std::size_t k = 0; k < s.size(); ++k) {
                if (s.masked[k] || baseline->second.masked[k])
                    continue;
                const double d = s.T[k] - baseline->second.T[k];
                if (d < lowest) {
                    lowest = d;
                    where = s.delta[k];
                }
            }
            const std::string key = "zeta" + tag(zeta) + "_tau0" + tag(delay);
            out.result(ctx, key + ".min_T_minus_baseline", num(lowest));
            out.result(ctx, key + ".min_T_minus_baseline_at", num(where));
        }
    }
    if (p.integer("solver.convergence_check")) {
        auto cfg = base;
        cfg.grid.zeta_end = zetas.front();
        cfg.probe.center = cfg.pump.center + delays.front();
        maybe_check_convergence(ctx, out, pump_plus_probe(cfg), cfg.medium, cfg.grid, cfg.solver);
    }
}

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return v;
}

cavity::CavityParams cavity_from(const ParamSet& p)
{
    cavity::CavityParams c;
    c.kappa = p.number("cavity.kappa");
    c.gamma = p.number("cavity.gamma");
    c.detuning = p.number("cavity.detuning");
    c.reflectivity = p.number("cavity.reflectivity");
    c.length = p.number("cavity.length");
    c.fill_fraction = p.number("cavity.fill_fraction");
    c.validate();
    return c;
}

void run_cavity_modes(const Context& ctx, Output& out)
{
    const ParamSet& p = ctx.params;
    const auto c = cavity_from(p);
    const auto modes = cavity::coupled_mode_eigenfrequencies(c);
    out.result(ctx, "mode_plus", num(modes.plus.real()) + " " + num(modes.plus.imag()));
    out.result(ctx, "mode_minus", num(modes.minus.real()) + " " + num(modes.minus.imag()));
    out.result(ctx, "splitting", num(modes.splitting));
    out.result(ctx, "strong_coupling", 1.0 > std::abs(c.kappa - c.gamma) ? "yes" : "no");

    PhysicalMedium ref;
    if (const auto phys = physical_from(p)) {
        ref = *phys;
    } else {
        ref.dipole_moment = reference_dipole;
        ref.transition_frequency = reference_frequency;
    }
    const double n_min = p.number("density.min");
    const double n_max = p.number("density.max");
    const int count = p.integer("density.n");
    if (!(n_max > n_min))
        throw InvalidParameter("density.max must exceed density.min");
    // logarithmic density grid; kappa, gamma and detuning are in units of
    // omega_c at the reference density
    ref.density = n_min;
    std::vector<double> densities(count);
    for (int i = 0; i < count; ++i)
        densities[i] = count == 1 ? n_min : n_min * std::pow(n_max / n_min, double(i) / (count - 1));
    const auto split = cavity::splitting_vs_density(densities, ref, c);
    std::vector<double> omega_c(count);
    for (int i = 0; i < count; ++i) {
        PhysicalMedium m = ref;
        m.density = densities[i];
        omega_c[i] = cooperative_frequency(m).omega_c;
    }
    csv::Table{{"density_per_cm3", "splitting_rad_per_s", "omega_c_rad_per_s"},
               {densities, split, omega_c}}
        .write(file(ctx, out, "splitting_vs_density.csv"));
    out.result(ctx, "reference_dipole_statc_cm", num(ref.dipole_moment));
    out.result(ctx, "reference_transition_frequency_rad_per_s", num(ref.transition_frequency));
}

void run_fp_spectrum(const Context& ctx, Output& out)
{
    const ParamSet& p = ctx.params;
    const auto c = cavity_from(p);
    const auto grid = linspace(p.number("fp.delta_min"), p.number("fp.delta_max"), p.integer("fp.n"));
    const auto t = cavity::fp_transmission(grid, c);
    csv::write_cavity(file(ctx, out, "fp_transmission.csv"), t);

    auto empty = c;
    empty.fill_fraction = 0.0;
    csv::write_cavity(file(ctx, out, "fp_transmission_empty.csv"), cavity::fp_transmission(grid, empty));

    const auto m = experiments::feature_metrics(t);
    out.result(ctx, "n_peaks", std::to_string(m.peak_positions.size()));
    if (m.peak_positions.size() >= 2) {
        // the two most prominent peaks form the doublet
        std::vector<std::size_t> order(m.prominences.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](auto a, auto b) { return m.prominences[a] > m.prominences[b]; });
        out.result(ctx, "doublet_separation",
                   num(std::abs(m.peak_positions[order[0]] - m.peak_positions[order[1]])));
    }
    const double kappa = cavity::empty_cavity_half_width(c.reflectivity, c.length);
    auto coupled = c;
    coupled.kappa = kappa;
    out.result(ctx, "finesse", num(cavity::finesse(c.reflectivity)));
    out.result(ctx, "empty_cavity_half_width", num(kappa));
    // a medium filling a fraction f of the cavity couples with strength sqrt(f / 2)
    out.result(ctx, "coupled_mode_splitting",
               num(std::sqrt(2.0 * c.fill_fraction) *
                   cavity::coupled_mode_eigenfrequencies(coupled).splitting));
}

void run_dispersion(const Context& ctx, Output& out)
{
    const ParamSet& p = ctx.params;
    const auto xs = linspace(p.number("dispersion.x_min"), p.number("dispersion.x_max"),
                             p.integer("dispersion.n"));
    csv::Table t{{"x_over_omega_c", "delta_plus", "delta_minus", "vg_plus_over_c", "vg_minus_over_c"},
                 std::vector<std::vector<double>>(5)};
    for (double x : xs) {
        const auto b = linresp::polariton_branches(x);
        t.columns[0].push_back(x);
        t.columns[1].push_back(b.delta_plus);
        t.columns[2].push_back(b.delta_minus);
        t.columns[3].push_back(linresp::group_velocity(b.delta_plus));
        t.columns[4].push_back(linresp::group_velocity(b.delta_minus));
    }
    t.write(file(ctx, out, "dispersion.csv"));
    out.result(ctx, "gap_lower_edge", num(linresp::polariton_branches(0.0).delta_minus));
    out.result(ctx, "gap_upper_edge", num(linresp::polariton_branches(0.0).delta_plus));
}

void dispatch(const std::string& name, const Context& ctx, Output& out);

void run_sweep(const Context& ctx, Output& out)
{
    const ParamSet& p = ctx.params;
    const std::string target = p.text("sweep.scenario");
    const std::string key = p.text("sweep.key");
    auto values = p.list("sweep.values");
    if (values.empty())
        throw InvalidParameter("sweep.values must not be empty");
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    const std::size_t n = values.size();
    std::vector<ParamSet> points(n, p);
    for (std::size_t i = 0; i < n; ++i) {
        const auto* spec = config::find_key(key);
        const std::string text = spec->type == config::KeyType::integer
                                     ? std::to_string(static_cast<long long>(std::llround(values[i])))
                                     : num(values[i]);
        points[i].set(key, text, "sweep");
    }

    std::vector<Output> outputs(n);
    std::vector<std::exception_ptr> errors(n);
    std::mutex progress_mutex;
    auto progress = [&](const std::string& msg) {
        if (!ctx.progress)
            return;
        std::lock_guard lock(progress_mutex);
        ctx.progress(msg);
    };

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < n;) {
            char prefix[32];
            std::snprintf(prefix, sizeof prefix, "point%02zu_", i);
            const Context sub{points[i], ctx.out_dir, ctx.prefix + prefix, progress};
            try {
                dispatch(target, sub, outputs[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto workers = std::min<std::size_t>(n, p.integer("sweep.workers"));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    for (std::size_t i = 0; i < n; ++i) {
        char prefix[32];
        std::snprintf(prefix, sizeof prefix, "point%02zu_", i);
        out.result(ctx, std::string(prefix) + key, points[i].text(key));
        auto& o = outputs[i];
        out.results.insert(out.results.end(), o.results.begin(), o.results.end());
        out.files.insert(out.files.end(), o.files.begin(), o.files.end());
        out.convergence.insert(out.convergence.end(), o.convergence.begin(), o.convergence.end());
        out.warn(o.warnings);
    }
}

void dispatch(const std::string& name, const Context& ctx, Output& out)
{
    if (name == "linear-line")
        run_linear_line(ctx, out);
    else if (name == "ringing")
        run_ringing(ctx, out);
    else if (name == "pump-probe")
        run_single_pump_probe(ctx, out);
    else if (name == "fig2a" || name == "fig2b" || name == "fig2c")
        run_fig2(ctx, out);
    else if (name == "cavity-modes")
        run_cavity_modes(ctx, out);
    else if (name == "fp-spectrum")
        run_fp_spectrum(ctx, out);
    else if (name == "dispersion")
        run_dispersion(ctx, out);
    else if (name == "sweep")
        run_sweep(ctx, out);
    else
        throw UnknownScenario("unknown scenario '" + name + "'");
}

} // namespace

RunManifest run_scenario(const std::string& name, const ParamSet& params, const RunOptions& opts)
{
    if (!is_scenario(name))
        throw UnknownScenario("unknown scenario '" + name + "'");
    const auto start = std::chrono::steady_clock::now();

    RunManifest manifest;
    manifest.scenario = name;
    for (const auto& [key, value] : params.values()) {
        const auto& source = params.source(key);
        manifest.parameters.emplace_back(key, source == "default" ? value : value + " (" + source + ")");
    }
    if (const auto phys = physical_from(params)) {
        const auto norm = nondimensionalize(*phys);
        manifest.physical = {
            {"omega_c_rad_per_s", num(norm.scales.omega_c)},
            {"omega_c_hz", num(cooperative_frequency(*phys).hertz)},
            {"time_scale_s", num(norm.scales.time_scale)},
            {"length_scale_cm", num(norm.scales.length_scale)},
            {"gamma_perp_t", num(norm.params.gamma_perp_t)},
            {"gamma_par_t", num(norm.params.gamma_par_t)},
        };
        if (params.number("physical.length_cm") > 0.0)
            manifest.physical.emplace_back(
                "zeta", num(to_zeta(params.number("physical.length_cm"), norm.scales)));
    }

    fs::create_directories(opts.out_dir);
    Output out;
    dispatch(name, Context{params, opts.out_dir, "", opts.progress}, out);

    for (const auto& f : out.files) {
        const auto path = opts.out_dir / f;
        if (!fs::exists(path) || fs::file_size(path) == 0)
            throw Error("output file " + path.string() + " is missing or empty");
    }
    manifest.results = std::move(out.results);
    manifest.outputs = std::move(out.files);
    manifest.convergence = std::move(out.convergence);
    manifest.warnings = std::move(out.warnings);
    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ofstream mf(opts.out_dir / "manifest.txt", std::ios::binary);
    mf << manifest.render();
    if (!mf)
        throw Error("cannot write manifest.txt");
    return manifest;
}

RunManifest run_scenario(const std::string& name, const std::optional<fs::path>& config_path,
                         const std::vector<std::string>& overrides, const RunOptions& opts)
{
    return run_scenario(name, resolve_parameters(name, config_path, overrides), opts);
}

} // namespace polariton
