#pragma once

// Single cavity mode coupled to the resonant medium, in units of omega_c.
//
// Coupled-mode picture: the mode (detuning delta_c, amplitude decay kappa)
// exchanges energy with the collective polarisation (decay gamma) at rate
// omega_c / 2, so the undamped normal modes sit at +-omega_c / 2. Some texts
// write the coupling as g sqrt(N) and the splitting as 2 g sqrt(N); with
// that convention g sqrt(N) here is omega_c / 2.
//
// Fabry-Perot picture: two mirrors of amplitude reflectivity r a distance
// L (units of c / omega_c) apart, with a medium cell occupying a fraction
// of the length. A cell filling half the cavity reproduces the coupled-mode
// coupling omega_c / 2 exactly; a filled cavity couples at omega_c / sqrt(2).

#include "polariton/model.hpp"
#include "polariton/transmission.hpp"

#include <span>
#include <vector>

namespace polariton::cavity {

struct CavityParams
{
    double kappa = 0.0;            // cavity amplitude decay
    double gamma = 0.0;            // medium coherence decay
    double detuning = 0.0;         // cavity - atom
    double reflectivity = 0.99;    // mirror amplitude reflectivity
    double length = 0.1;           // omega_c L / c
    double fill_fraction = 0.5;    // medium length / cavity length

    void validate() const;
};

struct NormalModes
{
    complex plus;
    complex minus;
    double splitting = 0.0; // |Re plus - Re minus|
};

/// Eigenvalues of [[delta_c - i kappa, 1/2], [1/2, -i gamma]].
NormalModes coupled_mode_eigenfrequencies(const CavityParams& p);

/// Dimensional splitting (rad/s) for each density. kappa, gamma and the
/// detuning in `p` are read in units of the cooperative frequency of
/// `reference` and held fixed in physical units while the density varies.
std::vector<double> splitting_vs_density(std::span<const double> densities,
                                         const PhysicalMedium& reference, const CavityParams& p);

/// Airy transmission |t^2 e^{ikL}|^2 / |1 - r^2 e^{2ikL}|^2 with
/// k = Delta + f * (-1/2) / (Delta + i gamma); the empty cavity is tuned to
/// resonate at Delta = 0.
TransmissionSpectrum fp_transmission(std::span<const double> delta_grid, const CavityParams& p);

/// Exact half width at half maximum of the empty-cavity Airy peak.
double empty_cavity_half_width(double reflectivity, double length);

/// Finesse pi sqrt(R) / (1 - R), R = r^2.
double finesse(double reflectivity);

} // namespace polariton::cavity
