#pragma once

#include "polariton/mbsolve.hpp"
#include "polariton/model.hpp"

#include <span>
#include <vector>

namespace polariton {

/// Spectrum on an increasing detuning axis (units of omega_c).
struct Spectrum
{
    std::vector<double> delta;
    std::vector<complex> values;
    double d_delta = 0.0;
};

/// S(Delta_k) = d_tau * sum_j Omega(tau_j) e^{+i Delta_k tau_j}, the sampled
/// continuous transform matching the e^{-i Delta tau} convention of linresp.
/// Unitary in the sense sum |Omega|^2 d_tau = sum |S|^2 d_Delta / (2 pi).
/// pad_factor > 1 zero-pads the record to refine the detuning axis.
Spectrum dft_spectrum(std::span<const complex> field, const SimGrid& grid, int pad_factor = 1);
Spectrum dft_spectrum(const FieldRecord& field, const SimGrid& grid, int pad_factor = 1);

} // namespace polariton
