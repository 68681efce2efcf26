#include "polariton/linresp.hpp"

#include "polariton/bessel.hpp"
#include "polariton/error.hpp"

#include <cmath>
#include <limits>

namespace polariton::linresp {

TransferValue transfer_function(double delta, double zeta, double gamma_perp)
{
    if (zeta < 0.0)
        throw DomainError("transfer_function needs zeta >= 0");
    if (gamma_perp < 0.0)
        throw DomainError("transfer_function needs gamma_perp >= 0");
    if (zeta == 0.0)
        return {complex(1.0, 0.0), false};
    if (gamma_perp == 0.0 && delta == 0.0) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        return {complex(nan, nan), true};
    }
    const complex exponent = -0.5 * zeta / complex(gamma_perp, -delta);
    return {std::exp(exponent), false};
}

ImpulseResponse impulse_response(double tau, double zeta, double gamma_perp)
{
    ImpulseResponse out;
    if (tau <= 0.0 || zeta <= 0.0)
        return out;
    const double b = 0.5 * zeta;
    const double arg = 2.0 * std::sqrt(b * tau);
    out.envelope = std::exp(-gamma_perp * tau) * std::sqrt(b / tau) * bessel::j1(arg);
    return out;
}

double instantaneous_ringing_frequency(double tau, double zeta)
{
    if (!(tau > 0.0))
        throw DomainError("ringing frequency needs tau > 0");
    if (!(zeta > 0.0))
        throw DomainError("ringing frequency needs zeta > 0");
    return std::sqrt(0.5 * zeta / tau);
}

double group_delay(double delta, double zeta)
{
    if (delta == 0.0)
        throw DomainError("group delay diverges at the line centre");
    return 0.5 * zeta / (delta * delta);
}

DispersionPoint polariton_branches(double x)
{
    const double root = std::sqrt(x * x + 2.0);
    DispersionPoint p;
    p.x = x;
    // avoid cancellation in the branch that tends to zero
    if (x >= 0.0) {
        p.delta_plus = 0.5 * (x + root);
        p.delta_minus = -0.5 / p.delta_plus;
    } else {
        p.delta_minus = 0.5 * (x - root);
        p.delta_plus = -0.5 / p.delta_minus;
    }
    return p;
}

double group_velocity(double delta)
{
    if (delta == 0.0)
        throw DomainError("group velocity undefined inside the polariton gap (Delta = 0)");
    return 1.0 / (1.0 + 0.5 / (delta * delta));
}

double linear_line_width(double zeta, double gamma_perp)
{
    if (!(zeta > 0.0) || !(gamma_perp > 0.0))
        throw DomainError("line width needs zeta > 0 and gamma_perp > 0");
    // |H|^2 = exp(-zeta gamma / (gamma^2 + D^2)); the depth runs from e^{-zeta/gamma} to 1
    const double floor = std::exp(-zeta / gamma_perp);
    const double half = 0.5 * (1.0 + floor);
    const double d2 = zeta * gamma_perp / (-std::log(half)) - gamma_perp * gamma_perp;
    return d2 > 0.0 ? 2.0 * std::sqrt(d2) : 0.0;
}

} // namespace polariton::linresp
