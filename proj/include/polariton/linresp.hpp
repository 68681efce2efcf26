#pragma once

// Weak-field response of a homogeneously broadened resonant medium.
//
// A field component e^{-i Delta tau} (Delta measured from the atomic line in
// units of omega_c) acquires, after a length zeta,
//
//     H(Delta, zeta) = exp( -(zeta/2) / (gamma - i Delta) ),
//
// i.e. k c = Delta - 1 / (2 Delta) in the lossless limit: refractive index
// above one on the red side, normal dispersion in both wings, slow light.
// The time-domain response is delta(tau) - h(tau) with the sharp-line
// Bessel envelope h described at impulse_response().

#include "polariton/model.hpp"

namespace polariton::linresp {

struct TransferValue
{
    complex value;
    /// gamma = 0 and Delta = 0: the exponent has a pole, value is NaN.
    bool singular = false;
};

TransferValue transfer_function(double delta, double zeta, double gamma_perp);

struct ImpulseResponse
{
    /// h(tau) = e^{-gamma tau} sqrt(b/tau) J1(2 sqrt(b tau)), b = zeta/2, for
    /// tau > 0; zero otherwise. Enters the response with a minus sign.
    double envelope = 0.0;
    /// Weight of the transmitted delta(tau) term. Always 1: the leading
    /// edge of any pulse passes the medium undistorted.
    double spike_weight = 1.0;
};

ImpulseResponse impulse_response(double tau, double zeta, double gamma_perp);

/// Detuning whose group delay equals tau: sqrt(b/tau), b = zeta/2.
double instantaneous_ringing_frequency(double tau, double zeta);

/// Excess group delay over vacuum after length zeta: b / Delta^2.
double group_delay(double delta, double zeta);

struct DispersionPoint
{
    double x = 0.0; // (c k - omega_0) / omega_c
    double delta_plus = 0.0;
    double delta_minus = 0.0;
};

/// Upper and lower polariton at wave number x: roots of D^2 - x D - 1/2 = 0.
DispersionPoint polariton_branches(double x);

/// v_g / c = 1 / (1 + 1 / (2 Delta^2)).
double group_velocity(double delta);

/// Full width of the absorption line |H|^2 at half depth.
double linear_line_width(double zeta, double gamma_perp);

} // namespace polariton::linresp
