#include "polariton/cavity.hpp"

#include "polariton/error.hpp"

#include <cmath>

namespace polariton::cavity {

void CavityParams::validate() const
{
    if (!(kappa >= 0.0) || !(gamma >= 0.0))
        throw InvalidParameter("cavity kappa and gamma must be >= 0");
    if (!(reflectivity >= 0.0 && reflectivity < 1.0))
        throw InvalidParameter("mirror reflectivity must lie in [0, 1)");
    if (!(length > 0.0))
        throw InvalidParameter("cavity length must be positive");
    if (!(fill_fraction >= 0.0 && fill_fraction <= 1.0))
        throw InvalidParameter("fill fraction must lie in [0, 1]");
    if (!std::isfinite(detuning))
        throw InvalidParameter("cavity detuning must be finite");
}

NormalModes coupled_mode_eigenfrequencies(const CavityParams& p)
{
    if (!(p.kappa >= 0.0) || !(p.gamma >= 0.0))
        throw InvalidParameter("cavity kappa and gamma must be >= 0");
    const complex a(p.detuning, -p.kappa);
    const complex d(0.0, -p.gamma);
    const complex mean = 0.5 * (a + d);
    const complex half_diff = 0.5 * (a - d);
    const complex root = std::sqrt(half_diff * half_diff + 0.25);

    NormalModes m;
    m.plus = mean + root;
    m.minus = mean - root;
    if (m.plus.real() < m.minus.real())
        std::swap(m.plus, m.minus);
    m.splitting = std::abs(m.plus.real() - m.minus.real());
    return m;
}

std::vector<double> splitting_vs_density(std::span<const double> densities,
                                         const PhysicalMedium& reference, const CavityParams& p)
{
    const double omega_ref = cooperative_frequency(reference).omega_c;
    if (!(omega_ref > 0.0))
        throw DegenerateMedium("reference medium has zero cooperative frequency");
    const double kappa = p.kappa * omega_ref;
    const double gamma = p.gamma * omega_ref;
    const double detuning = p.detuning * omega_ref;

    std::vector<double> out;
    out.reserve(densities.size());
    for (double n : densities) {
        if (!(n > 0.0))
            throw InvalidParameter("densities must be positive");
        PhysicalMedium m = reference;
        m.density = n;
        const double omega_c = cooperative_frequency(m).omega_c;
        CavityParams scaled = p;
        scaled.kappa = kappa / omega_c;
        scaled.gamma = gamma / omega_c;
        scaled.detuning = detuning / omega_c;
        out.push_back(omega_c * coupled_mode_eigenfrequencies(scaled).splitting);
    }
    return out;
}

TransmissionSpectrum fp_transmission(std::span<const double> delta_grid, const CavityParams& p)
{
    if (!(p.reflectivity < 1.0))
        throw InvalidParameter("mirror reflectivity must be < 1");
    p.validate();
    for (std::size_t i = 1; i < delta_grid.size(); ++i)
        if (!(delta_grid[i] > delta_grid[i - 1]))
            throw InvalidParameter("detuning grid must be strictly increasing");

    const double r2 = p.reflectivity * p.reflectivity;
    const double t2 = 1.0 - r2;
    const complex i(0.0, 1.0);

    TransmissionSpectrum out;
    out.delta.assign(delta_grid.begin(), delta_grid.end());
    out.T.resize(delta_grid.size());
    out.masked.assign(delta_grid.size(), 0);
    out.metadata.gamma_perp = p.gamma;
    for (std::size_t j = 0; j < delta_grid.size(); ++j) {
        const double delta = delta_grid[j];
        complex k(delta, 0.0);
        if (p.fill_fraction > 0.0)
            k += p.fill_fraction * (-0.5) / complex(delta, p.gamma);
        const complex phase = k * p.length;
        const complex num = t2 * std::exp(i * phase);
        const complex den = 1.0 - r2 * std::exp(2.0 * i * phase);
        out.T[j] = std::norm(num) / std::norm(den);
    }
    return out;
}

double empty_cavity_half_width(double reflectivity, double length)
{
    if (!(reflectivity > 0.0 && reflectivity < 1.0) || !(length > 0.0))
        throw InvalidParameter("need 0 < r < 1 and length > 0");
    // |1 - R e^{i phi}|^2 = 2 (1 - R)^2 at the half-maximum phase
    const double R = reflectivity * reflectivity;
    const double c = (1.0 + R * R - 2.0 * (1.0 - R) * (1.0 - R)) / (2.0 * R);
    return std::acos(c) / (2.0 * length);
}

double finesse(double reflectivity)
{
    const double R = reflectivity * reflectivity;
    return pi * std::sqrt(R) / (1.0 - R);
}

} // namespace polariton::cavity
