#include "polariton/experiments.hpp"

#include "polariton/error.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

namespace polariton::experiments {

void PumpProbeConfig::validate() const
{
    pump.validate();
    probe.validate();
    medium.validate();
    grid.validate();
    solver.validate();
    if (pump.area != 0.0 && std::abs(probe.area) > 0.05 * std::abs(pump.area))
        throw InvalidParameter("probe area must not exceed 5% of the pump area");
    if (probe.area == 0.0)
        throw InvalidParameter("probe area must be non-zero");
    if (!(delta_limit > 0.0))
        throw InvalidParameter("delta_limit must be positive");
    if (!(mask_threshold > 0.0 && mask_threshold < 1.0))
        throw InvalidParameter("mask_threshold must lie in (0, 1)");
}

TransmissionSpectrum transmission_from_fields(std::span<const complex> in,
                                              std::span<const complex> out,
                                              const SimGrid& grid, double delta_limit,
                                              double mask_threshold)
{
    const Spectrum s_in = dft_spectrum(in, grid);
    const Spectrum s_out = dft_spectrum(out, grid);

    double peak = 0.0;
    for (const complex& z : s_in.values)
        peak = std::max(peak, std::norm(z));

    TransmissionSpectrum t;
    for (std::size_t k = 0; k < s_in.delta.size(); ++k) {
        const double delta = s_in.delta[k];
        if (std::abs(delta) > delta_limit)
            continue;
        const double density_in = std::norm(s_in.values[k]);
        const double density_out = std::norm(s_out.values[k]);
        const bool masked = !(density_in > mask_threshold * peak);
        double value = density_in > 0.0 ? density_out / density_in : 0.0;
        if (!std::isfinite(value))
            value = 0.0;
        t.delta.push_back(delta);
        t.T.push_back(value);
        t.masked.push_back(masked ? 1 : 0);
    }
    return t;
}

namespace {

std::vector<complex> add(const std::vector<complex>& a, const std::vector<complex>& b)
{
    std::vector<complex> out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
        out[j] = a[j] + b[j];
    return out;
}

std::vector<complex> subtract(const std::vector<complex>& a, const std::vector<complex>& b)
{
    std::vector<complex> out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
        out[j] = a[j] - b[j];
    return out;
}

bool is_zero(const std::vector<complex>& v)
{
    return std::all_of(v.begin(), v.end(), [](const complex& z) { return z == complex(0.0, 0.0); });
}

struct Output
{
    std::vector<complex> field;
    std::vector<std::string> warnings;
};

Output final_field(const std::vector<complex>& input, const PumpProbeConfig& cfg)
{
    // a zero field leaves the ground-state medium untouched
    if (is_zero(input))
        return {input, {}};
    SimGrid grid = cfg.grid;
    grid.record_stations = {grid.zeta_end};
    auto run = propagate(FieldRecord{0.0, input}, cfg.medium, grid, cfg.solver);
    return {std::move(run.fields.back().omega), std::move(run.warnings)};
}

double max_relative_change(const TransmissionSpectrum& a, const TransmissionSpectrum& b)
{
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a.masked[k] || b.masked[k] || !(a.T[k] > 0.0))
            continue;
        worst = std::max(worst, std::abs(b.T[k] - a.T[k]) / a.T[k]);
    }
    return worst;
}

} // namespace

namespace {

PumpProbeResult assemble(const PumpProbeConfig& cfg, const std::vector<complex>& probe_in,
                         const std::vector<complex>& half_in, const Output& pump_out,
                         const Output& both_out, const Output& both_half_out)
{
    PumpProbeResult result;
    result.probe_in = {0.0, probe_in};
    result.probe_out = {cfg.grid.zeta_end, subtract(both_out.field, pump_out.field)};

    result.spectrum = transmission_from_fields(probe_in, result.probe_out.omega, cfg.grid,
                                               cfg.delta_limit, cfg.mask_threshold);
    auto& meta = result.spectrum.metadata;
    meta.zeta = cfg.grid.zeta_end;
    meta.tau0 = cfg.tau0();
    meta.pump_area = cfg.pump.area;
    meta.gamma_perp = cfg.medium.gamma_perp_t;
    for (const auto* w : {&pump_out.warnings, &both_out.warnings})
        for (const auto& msg : *w)
            if (std::find(meta.warnings.begin(), meta.warnings.end(), msg) == meta.warnings.end())
                meta.warnings.push_back(msg);

    if (cfg.check_linearity) {
        const auto half_response = subtract(both_half_out.field, pump_out.field);
        const auto half_spectrum = transmission_from_fields(half_in, half_response, cfg.grid,
                                                            cfg.delta_limit, cfg.mask_threshold);
        result.linearity_deviation = max_relative_change(result.spectrum, half_spectrum);
        if (result.linearity_deviation > linearity_warning_threshold) {
            std::ostringstream msg;
            msg << "probe not in the linear regime: halving its area changes T by up to "
                << 100.0 * result.linearity_deviation << "%";
            meta.warnings.push_back(msg.str());
        }
    }
    return result;
}

} // namespace

PumpProbeResult run_pump_probe(const PumpProbeConfig& cfg)
{
    cfg.validate();

    const auto pump_in = render_pulse(cfg.pump, cfg.grid);
    const auto probe_in = render_pulse(cfg.probe, cfg.grid);
    PulseSpec half_probe = cfg.probe;
    half_probe.area *= 0.5;
    const auto half_in = render_pulse(half_probe, cfg.grid);

    const auto both_in = add(pump_in, probe_in);
    const auto both_half_in = add(pump_in, half_in);

    Output pump_out, both_out, both_half_out;
    if (cfg.parallel) {
        auto f_pump = std::async(std::launch::async, final_field, std::cref(pump_in), std::cref(cfg));
        auto f_both = std::async(std::launch::async, final_field, std::cref(both_in), std::cref(cfg));
        std::future<Output> f_half;
        if (cfg.check_linearity)
            f_half = std::async(std::launch::async, final_field, std::cref(both_half_in), std::cref(cfg));
        pump_out = f_pump.get();
        both_out = f_both.get();
        if (cfg.check_linearity)
            both_half_out = f_half.get();
    } else {
        pump_out = final_field(pump_in, cfg);
        both_out = final_field(both_in, cfg);
        if (cfg.check_linearity)
            both_half_out = final_field(both_half_in, cfg);
    }
    return assemble(cfg, probe_in, half_in, pump_out, both_out, both_half_out);
}

std::vector<PumpProbeResult> run_pump_probe_delays(const PumpProbeConfig& cfg,
                                                   std::span<const double> delays)
{
    std::vector<PumpProbeConfig> configs;
    for (double d : delays) {
        PumpProbeConfig c = cfg;
        c.probe.center = cfg.pump.center + d;
        c.validate();
        configs.push_back(c);
    }

    // one pump run plus one or two pump+probe runs per delay, marched together
    const auto pump_in = render_pulse(cfg.pump, cfg.grid);
    std::vector<std::vector<complex>> probe_in, half_in;
    std::vector<FieldRecord> inputs;
    std::vector<int> slot; // index into inputs, -1 for an all-zero field
    auto enqueue = [&](std::vector<complex> field) {
        if (is_zero(field)) {
            slot.push_back(-1);
            return;
        }
        slot.push_back(static_cast<int>(inputs.size()));
        inputs.push_back({0.0, std::move(field)});
    };
    enqueue(pump_in);
    for (const auto& c : configs) {
        probe_in.push_back(render_pulse(c.probe, c.grid));
        PulseSpec half = c.probe;
        half.area *= 0.5;
        half_in.push_back(render_pulse(half, c.grid));
        enqueue(add(pump_in, probe_in.back()));
        if (cfg.check_linearity)
            enqueue(add(pump_in, half_in.back()));
    }

    SimGrid grid = cfg.grid;
    grid.record_stations = {grid.zeta_end};
    auto runs = propagate_batch(inputs, cfg.medium, grid, cfg.solver);
    std::vector<Output> outputs;
    for (int s : slot) {
        if (s < 0)
            outputs.push_back({std::vector<complex>(grid.n_tau), {}});
        else
            outputs.push_back({std::move(runs[s].fields.back().omega), std::move(runs[s].warnings)});
    }

    std::vector<PumpProbeResult> results;
    std::size_t k = 1;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const Output& both = outputs[k++];
        const Output empty;
        const Output& half = cfg.check_linearity ? outputs[k++] : empty;
        results.push_back(assemble(configs[i], probe_in[i], half_in[i], outputs[0], both, half));
    }
    return results;
}

TransmissionSpectrum probe_transmission(const PumpProbeConfig& cfg)
{
    return run_pump_probe(cfg).spectrum;
}

FeatureMetrics feature_metrics(const TransmissionSpectrum& spectrum, double min_prominence)
{
    FeatureMetrics m;
    const auto& T = spectrum.T;
    const auto& D = spectrum.delta;
    const std::size_t n = T.size();
    if (n < 3)
        return m;

    auto usable = [&](std::size_t i) { return spectrum.masked[i] == 0; };

    double t_max = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (usable(i))
            t_max = std::max(t_max, T[i]);
    if (!(t_max > 0.0))
        return m;

    struct Peak
    {
        std::size_t index;
        double prominence;
        std::size_t left_base, right_base;
    };
    std::vector<Peak> peaks;

    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!usable(i) || !usable(i - 1))
            continue;
        if (!(T[i] > T[i - 1]))
            continue;
        // plateau: walk to its right end; the peak is reported at its leftmost index
        std::size_t j = i;
        while (j + 1 < n && usable(j + 1) && T[j + 1] == T[i])
            ++j;
        if (j + 1 >= n || !usable(j + 1) || !(T[j + 1] < T[i]))
            continue;

        // prominence: lowest point on each side before reaching higher ground
        std::size_t lb = i, rb = j;
        double left_min = T[i];
        for (std::size_t k = i; k-- > 0;) {
            if (!usable(k) || T[k] > T[i])
                break;
            if (T[k] < left_min) {
                left_min = T[k];
                lb = k;
            }
        }
        double right_min = T[i];
        for (std::size_t k = j + 1; k < n; ++k) {
            if (!usable(k) || T[k] > T[i])
                break;
            if (T[k] < right_min) {
                right_min = T[k];
                rb = k;
            }
        }
        const double prominence = T[i] - std::max(left_min, right_min);
        if (prominence > min_prominence * t_max)
            peaks.push_back({i, prominence, lb, rb});
        i = j;
    }
    if (peaks.empty())
        return m;

    const double cell = D.size() > 1 ? (D.back() - D.front()) / (D.size() - 1) : 0.0;
    std::size_t outer = 0;
    for (std::size_t p = 0; p < peaks.size(); ++p) {
        m.peak_positions.push_back(D[peaks[p].index]);
        m.peak_values.push_back(T[peaks[p].index]);
        m.prominences.push_back(peaks[p].prominence);
        // strictly further out by more than half a cell; otherwise keep the leftmost
        if (std::abs(D[peaks[p].index]) > std::abs(D[peaks[outer].index]) + 0.5 * cell)
            outer = p;
    }

    const Peak& pk = peaks[outer];
    const double level = T[pk.index] - 0.5 * pk.prominence;
    auto crossing = [&](std::size_t a, std::size_t b) {
        // T[a] >= level > T[b]
        const double f = (T[a] - level) / (T[a] - T[b]);
        return D[a] + f * (D[b] - D[a]);
    };
    double left = D[pk.left_base];
    for (std::size_t k = pk.index; k > pk.left_base; --k)
        if (T[k - 1] < level) {
            left = crossing(k, k - 1);
            break;
        }
    double right = D[pk.right_base];
    for (std::size_t k = pk.index; k < pk.right_base; ++k)
        if (T[k + 1] < level) {
            right = crossing(k, k + 1);
            break;
        }
    m.outermost_position = std::abs(D[pk.index]);
    m.feature_width = right - left;
    return m;
}

std::vector<double> find_nodes(std::span<const complex> field, const SimGrid& grid, double tau_start)
{
    std::vector<double> nodes;
    const std::size_t n = field.size();
    const double d_tau = grid.d_tau();
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double tau = grid.tau(static_cast<int>(j));
        if (tau < tau_start)
            continue;
        const double y0 = std::norm(field[j - 1]);
        const double y1 = std::norm(field[j]);
        const double y2 = std::norm(field[j + 1]);
        if (!(y1 < y0 && y1 <= y2))
            continue;
        const double curvature = y0 - 2.0 * y1 + y2;
        double offset = curvature > 0.0 ? 0.5 * (y0 - y2) / curvature : 0.0;
        offset = std::clamp(offset, -0.5, 0.5);
        nodes.push_back(tau + offset * d_tau);
    }
    return nodes;
}

RingingTrace ringing_trace(const PulseSpec& pulse, const MediumParams& medium, const SimGrid& grid,
                           const SolverConfig& solver)
{
    if (std::abs(pulse.area) > 0.1 * pi)
        throw InvalidParameter("ringing_trace needs a weak pulse (area <= 0.1 pi)");

    RingingTrace trace;
    trace.input = {0.0, render_pulse(pulse, grid)};

    SimGrid final_only = grid;
    final_only.record_stations = {grid.zeta_end};
    auto run = propagate(trace.input, medium, final_only, solver);
    trace.output = std::move(run.fields.back());
    trace.warnings = std::move(run.warnings);

    // nodes are searched after the trailing edge of the input pulse
    const double peak = pulse.peak();
    double tau_start = pulse.center;
    for (int j = 0; j < grid.n_tau; ++j) {
        const double tau = grid.tau(j);
        if (tau > pulse.center && std::abs(trace.input.omega[j]) < 1e-3 * peak) {
            tau_start = tau;
            break;
        }
    }
    if (grid.zeta_end > 0.0)
        trace.nodes = find_nodes(trace.output.omega, grid, tau_start);
    return trace;
}

} // namespace polariton::experiments
