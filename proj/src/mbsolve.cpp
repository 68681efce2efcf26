#include "polariton/mbsolve.hpp"

#include "polariton/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polariton {

void SolverConfig::validate() const
{
    if (!(d_zeta > 0.0))
        throw InvalidParameter("solver.d_zeta must be positive");
    if (corrector_iterations < 1 || corrector_iterations > 4)
        throw InvalidParameter("solver.corrector_iterations must lie in [1, 4]");
    if (!(tolerance > 0.0))
        throw InvalidParameter("solver.tolerance must be positive");
}

namespace {

bool all_finite(std::span<const complex> v)
{
    return std::all_of(v.begin(), v.end(), [](const complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

struct BlochState
{
    double pr, pi, w;
};

struct BlochRates
{
    double g_perp, g_par, detuning;

    BlochState operator()(const BlochState& s, double or_, double oi) const
    {
        return {
            -(g_perp * s.pr - detuning * s.pi) - 0.5 * s.w * oi,
            -(g_perp * s.pi + detuning * s.pr) + 0.5 * s.w * or_,
            -g_par * (s.w + 1.0) - 2.0 * (or_ * s.pi - oi * s.pr),
        };
    }
};

// Integrates K independent slices in lockstep so that their RK4 dependency
// chains overlap. Beyond K = 2 register pressure eats the gain.
template <std::size_t K>
void integrate_lockstep(const std::span<const complex>* omega, const MediumParams& params,
                        double d_tau, const std::span<complex>* P, std::span<double> W)
{
    const std::size_t n = omega[0].size();
    const bool keep_w = !W.empty();
    const BlochRates rates{params.gamma_perp_t, params.gamma_par_t, params.detuning_t};
    const double h = d_tau;
    const double h2 = 0.5 * d_tau;
    const double h6 = d_tau / 6.0;

    BlochState s[K];
    for (std::size_t f = 0; f < K; ++f) {
        s[f] = {0.0, 0.0, -1.0};
        P[f][0] = {0.0, 0.0};
    }
    if (keep_w)
        W[0] = -1.0;

    for (std::size_t j = 0; j + 1 < n; ++j) {
        for (std::size_t f = 0; f < K; ++f) {
            const double ar = omega[f][j].real(), ai = omega[f][j].imag();
            const double br = omega[f][j + 1].real(), bi = omega[f][j + 1].imag();
            const double mr = 0.5 * (ar + br), mi = 0.5 * (ai + bi);
            BlochState& st = s[f];

            const BlochState k1 = rates(st, ar, ai);
            const BlochState k2 =
                rates({st.pr + h2 * k1.pr, st.pi + h2 * k1.pi, st.w + h2 * k1.w}, mr, mi);
            const BlochState k3 =
                rates({st.pr + h2 * k2.pr, st.pi + h2 * k2.pi, st.w + h2 * k2.w}, mr, mi);
            const BlochState k4 =
                rates({st.pr + h * k3.pr, st.pi + h * k3.pi, st.w + h * k3.w}, br, bi);

            st.pr += h6 * (k1.pr + 2.0 * (k2.pr + k3.pr) + k4.pr);
            st.pi += h6 * (k1.pi + 2.0 * (k2.pi + k3.pi) + k4.pi);
            st.w += h6 * (k1.w + 2.0 * (k2.w + k3.w) + k4.w);

            P[f][j + 1] = {st.pr, st.pi};
        }
        if (keep_w)
            W[j + 1] = s[0].w;
    }
}

constexpr std::size_t max_lockstep = 2;

void integrate_group(const std::span<const complex>* omega, std::size_t count,
                     const MediumParams& params, double d_tau, const std::span<complex>* P)
{
    while (count > 0) {
        const std::size_t k = std::min(count, max_lockstep);
        if (k == 2)
            integrate_lockstep<2>(omega, params, d_tau, P, {});
        else
            integrate_lockstep<1>(omega, params, d_tau, P, {});
        omega += k;
        P += k;
        count -= k;
    }
}

} // namespace

void integrate_medium(std::span<const complex> omega, const MediumParams& params, double d_tau,
                      std::span<complex> P, std::span<double> W)
{
    integrate_lockstep<1>(&omega, params, d_tau, &P, W);
}

MediumRecord bloch_step(const FieldRecord& row, const MediumParams& params, const SimGrid& grid)
{
    grid.validate();
    params.validate();
    if (row.omega.size() != static_cast<std::size_t>(grid.n_tau))
        throw InvalidParameter("field length does not match grid.n_tau");
    if (!all_finite(row.omega))
        throw PropagationDiverged("non-finite field at zeta = " + std::to_string(row.zeta));

    MediumRecord out;
    out.zeta = row.zeta;
    out.P.resize(grid.n_tau);
    out.W.resize(grid.n_tau);
    integrate_medium(row.omega, params, grid.d_tau(), out.P, out.W);
    return out;
}

double field_energy(std::span<const complex> omega, double d_tau)
{
    double sum = 0.0;
    for (const complex& z : omega)
        sum += std::norm(z);
    return sum * d_tau;
}

double pulse_area(const FieldRecord& field, const SimGrid& grid)
{
    const auto& v = field.omega;
    if (v.size() < 2)
        return 0.0;
    complex sum = 0.5 * (v.front() + v.back());
    for (std::size_t j = 1; j + 1 < v.size(); ++j)
        sum += v[j];
    return std::abs(sum * grid.d_tau());
}

namespace {

std::vector<double> station_list(const SimGrid& grid)
{
    std::vector<double> stations = grid.record_stations;
    if (stations.empty())
        stations.push_back(grid.zeta_end);
    std::sort(stations.begin(), stations.end());
    stations.erase(std::unique(stations.begin(), stations.end()), stations.end());
    return stations;
}

void check_tail(const FieldRecord& f, PropagationResult& result)
{
    double peak = 0.0;
    for (const complex& z : f.omega)
        peak = std::max(peak, std::abs(z));
    if (peak == 0.0)
        return;
    const double tail = std::abs(f.omega.back());
    if (tail >= 1e-6 * peak) {
        std::ostringstream msg;
        msg << "tau window truncates the response at zeta = " << f.zeta
            << " (|Omega(tau_max)| / max = " << tail / peak << ")";
        result.warnings.push_back(msg.str());
    }
}

} // namespace

std::vector<PropagationResult> propagate_batch(std::span<const FieldRecord> inputs,
                                              const MediumParams& params, const SimGrid& grid,
                                              const SolverConfig& cfg)
{
    grid.validate();
    params.validate();
    cfg.validate();
    const std::size_t n = grid.n_tau;
    const std::size_t count = inputs.size();
    for (const auto& input : inputs) {
        if (input.omega.size() != n)
            throw InvalidParameter("input field length does not match grid.n_tau");
        if (!all_finite(input.omega))
            throw PropagationDiverged("non-finite input field");
    }

    const double d_tau = grid.d_tau();
    const double h_max = std::min(cfg.d_zeta, grid.zeta_end / grid.n_zeta);

    std::vector<PropagationResult> results(count);
    std::vector<std::vector<complex>> field(count), trial(count), p0(count), p1(count);
    for (std::size_t f = 0; f < count; ++f) {
        results[f].input_energy = field_energy(inputs[f].omega, d_tau);
        field[f] = inputs[f].omega;
        trial[f].resize(n);
        p0[f].resize(n);
        p1[f].resize(n);
    }

    auto const_views = [](std::vector<std::vector<complex>>& v) {
        return std::vector<std::span<const complex>>(v.begin(), v.end());
    };
    auto views = [](std::vector<std::vector<complex>>& v) {
        return std::vector<std::span<complex>>(v.begin(), v.end());
    };
    const auto p0_out = views(p0);
    const auto p1_out = views(p1);

    auto record = [&](double zeta) {
        for (std::size_t f = 0; f < count; ++f) {
            FieldRecord rec{zeta, field[f]};
            MediumRecord m;
            m.zeta = zeta;
            m.P.resize(n);
            m.W.resize(n);
            integrate_medium(field[f], params, d_tau, m.P, m.W);
            check_tail(rec, results[f]);
            results[f].fields.push_back(std::move(rec));
            results[f].media.push_back(std::move(m));
        }
    };

    double zeta = 0.0;
    std::size_t step = 0;
    for (double station : station_list(grid)) {
        const double length = station - zeta;
        if (length > 0.0) {
            const auto steps =
                static_cast<std::size_t>(std::max(1.0, std::ceil(length / h_max - 1e-9)));
            const double h = length / steps;
            for (std::size_t s = 0; s < steps; ++s) {
                // predictor: explicit Euler; corrector: trapezoid, iterated
                integrate_group(const_views(field).data(), count, params, d_tau, p0_out.data());
                for (std::size_t f = 0; f < count; ++f)
                    for (std::size_t j = 0; j < n; ++j)
                        trial[f][j] = field[f][j] - complex(0.0, h) * p0[f][j];
                for (int it = 0; it < cfg.corrector_iterations; ++it) {
                    integrate_group(const_views(trial).data(), count, params, d_tau, p1_out.data());
                    for (std::size_t f = 0; f < count; ++f)
                        for (std::size_t j = 0; j < n; ++j)
                            trial[f][j] = field[f][j] - complex(0.0, 0.5 * h) * (p0[f][j] + p1[f][j]);
                }
                field.swap(trial);
                ++step;

                for (std::size_t f = 0; f < count; ++f) {
                    const double energy = field_energy(field[f], d_tau);
                    results[f].steps = step;
                    if (!std::isfinite(energy))
                        throw InstabilityError(step, "field became non-finite");
                    if (results[f].input_energy > 0.0 && energy > 10.0 * results[f].input_energy)
                        throw InstabilityError(step, "field energy exceeded 10x the input energy");
                }
            }
            zeta = station;
        }
        record(station);
    }
    return results;
}

PropagationResult propagate(const FieldRecord& input, const MediumParams& params,
                            const SimGrid& grid, const SolverConfig& cfg)
{
    return std::move(propagate_batch(std::span(&input, 1), params, grid, cfg).front());
}

ConvergenceReport check_convergence(const FieldRecord& input, const MediumParams& params,
                                    const SimGrid& grid, const SolverConfig& cfg)
{
    SimGrid final_only = grid;
    final_only.record_stations = {grid.zeta_end};
    SolverConfig fine = cfg;
    fine.d_zeta = 0.5 * std::min(cfg.d_zeta, grid.zeta_end / grid.n_zeta);
    if (!(fine.d_zeta > 0.0))
        return {cfg.d_zeta, 0.0, 0.0, true};

    const auto coarse_run = propagate(input, params, final_only, cfg);
    const auto fine_run = propagate(input, params, final_only, fine);
    const auto& a = coarse_run.fields.back().omega;
    const auto& b = fine_run.fields.back().omega;

    double na = 0.0, nb = 0.0, diff = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        na += std::norm(a[j]);
        nb += std::norm(b[j]);
        diff += std::norm(a[j] - b[j]);
    }
    ConvergenceReport r;
    r.d_zeta = cfg.d_zeta;
    if (na > 0.0) {
        r.relative_norm_change = std::abs(std::sqrt(na) - std::sqrt(nb)) / std::sqrt(na);
        r.relative_field_change = std::sqrt(diff / na);
    }
    r.converged = r.relative_norm_change < cfg.tolerance;
    return r;
}

} // namespace polariton
