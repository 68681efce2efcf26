#include "polariton/model.hpp"

#include "polariton/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace polariton {

void MediumParams::validate() const
{
    if (!(gamma_perp_t >= 0.0))
        throw InvalidParameter("gamma_perp_t must be >= 0, got " + std::to_string(gamma_perp_t));
    if (!(gamma_par_t >= 0.0))
        throw InvalidParameter("gamma_par_t must be >= 0, got " + std::to_string(gamma_par_t));
    if (!std::isfinite(detuning_t))
        throw InvalidParameter("detuning_t must be finite");
}

CooperativeFrequency cooperative_frequency(const PhysicalMedium& medium)
{
    if (!(medium.dipole_moment > 0.0))
        throw InvalidParameter("dipole moment must be positive");
    if (!(medium.transition_frequency > 0.0))
        throw InvalidParameter("transition frequency must be positive");
    if (!(medium.density >= 0.0))
        throw InvalidParameter("density must be non-negative");

    const double d = medium.dipole_moment;
    const double omega_c =
        std::sqrt(2.0 * pi * d * d * medium.transition_frequency * medium.density / cgs::hbar);
    return {omega_c, omega_c / (2.0 * pi)};
}

NormalizedMedium nondimensionalize(const PhysicalMedium& medium)
{
    const double omega_c = cooperative_frequency(medium).omega_c;
    if (omega_c <= 0.0)
        throw DegenerateMedium("cooperative frequency is zero; medium has no density");
    if (medium.gamma_perp < 0.0 || medium.gamma_par < 0.0)
        throw InvalidParameter("relaxation rates must be non-negative");

    NormalizedMedium out;
    out.scales = {omega_c, 1.0 / omega_c, cgs::speed_of_light / omega_c};
    out.params.gamma_perp_t = medium.gamma_perp / omega_c;
    out.params.gamma_par_t = medium.gamma_par / omega_c;
    out.params.detuning_t = medium.detuning / omega_c;
    return out;
}

PhysicalMedium redimensionalize(const MediumParams& params, const Scales& scales,
                                const PhysicalMedium& reference)
{
    PhysicalMedium out = reference;
    const double d = reference.dipole_moment;
    const double w0 = reference.transition_frequency;
    if (!(d > 0.0) || !(w0 > 0.0))
        throw InvalidParameter("reference medium needs positive dipole moment and frequency");
    out.density = scales.omega_c * scales.omega_c * cgs::hbar / (2.0 * pi * d * d * w0);
    out.gamma_perp = params.gamma_perp_t * scales.omega_c;
    out.gamma_par = params.gamma_par_t * scales.omega_c;
    out.detuning = params.detuning_t * scales.omega_c;
    return out;
}

double to_zeta(double z_cm, const Scales& scales) { return z_cm / scales.length_scale; }
double from_zeta(double zeta, const Scales& scales) { return zeta * scales.length_scale; }
double to_tau(double t_s, const Scales& scales) { return t_s / scales.time_scale; }
double from_tau(double tau, const Scales& scales) { return tau * scales.time_scale; }

double ringing_frequency(double omega_c, double z_cm)
{
    if (omega_c < 0.0 || z_cm < 0.0)
        throw InvalidParameter("ringing_frequency needs omega_c >= 0 and z >= 0");
    return omega_c * omega_c * z_cm / cgs::speed_of_light;
}

double ringing_frequency_normalized(double zeta)
{
    if (zeta < 0.0)
        throw InvalidParameter("zeta must be >= 0");
    return zeta;
}

void SimGrid::validate() const
{
    if (!(tau_max > tau_min))
        throw InvalidParameter("grid.tau_max must exceed grid.tau_min");
    if (n_tau < 2)
        throw InvalidParameter("grid.n_tau must be >= 2");
    if (!(zeta_end >= 0.0))
        throw InvalidParameter("grid.zeta_end must be >= 0");
    if (n_zeta < 1)
        throw InvalidParameter("grid.n_zeta must be >= 1");
    for (double s : record_stations)
        if (!(s >= 0.0 && s <= zeta_end))
            throw InvalidParameter("record station " + std::to_string(s) + " outside [0, zeta_end]");
}

std::vector<double> SimGrid::tau_axis() const
{
    std::vector<double> axis(n_tau);
    for (int j = 0; j < n_tau; ++j)
        axis[j] = tau(j);
    return axis;
}

void PulseSpec::validate() const
{
    if (!(duration > 0.0))
        throw InvalidParameter("pulse duration must be positive");
    if (!std::isfinite(area) || !std::isfinite(center) || !std::isfinite(carrier_offset))
        throw InvalidParameter("pulse parameters must be finite");
}

double PulseSpec::peak() const
{
    switch (shape) {
    case PulseShape::gaussian:
        return std::abs(area) / (duration * std::sqrt(2.0 * pi));
    case PulseShape::sech:
        return std::abs(area) / (pi * duration);
    }
    return 0.0;
}

complex PulseSpec::envelope(double tau) const
{
    const double x = (tau - center) / duration;
    double value = 0.0;
    switch (shape) {
    case PulseShape::gaussian:
        value = area / (duration * std::sqrt(2.0 * pi)) * std::exp(-0.5 * x * x);
        break;
    case PulseShape::sech:
        value = area / (pi * duration) / std::cosh(x);
        break;
    }
    // e^{-i Delta tau} carries a positive detuning Delta
    if (carrier_offset == 0.0)
        return {value, 0.0};
    return value * std::polar(1.0, -carrier_offset * tau);
}

std::vector<complex> render_pulse(const PulseSpec& pulse, const SimGrid& grid)
{
    pulse.validate();
    grid.validate();

    const double peak = pulse.peak();
    if (peak > 0.0) {
        const double edge = std::max(std::abs(pulse.envelope(grid.tau_min)),
                                     std::abs(pulse.envelope(grid.tau_max)));
        if (edge > pulse_truncation_limit * peak)
            throw InvalidParameter("pulse centred at " + std::to_string(pulse.center) +
                                   " is truncated by the tau window (edge/peak = " +
                                   std::to_string(edge / peak) + ")");
    }

    std::vector<complex> samples(grid.n_tau);
    for (int j = 0; j < grid.n_tau; ++j)
        samples[j] = pulse.envelope(grid.tau(j));
    return samples;
}

} // namespace polariton
