#include "polariton/bessel.hpp"

#include "polariton/error.hpp"
#include "polariton/model.hpp"

#include <cmath>

namespace polariton::bessel {

namespace {

constexpr double series_limit = 12.0;

double power_series(int order, double x)
{
    // sum_k (-1)^k (x/2)^{2k+order} / (k! (k+order)!)
    const double half = 0.5 * x;
    const double q = -half * half;
    double term = order == 0 ? 1.0 : half;
    double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * (k + order));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum))
            break;
    }
    return sum;
}

double hankel_asymptotic(int order, double x)
{
    // J_nu(x) ~ sqrt(2/(pi x)) (P cos chi - Q sin chi), chi = x - (nu/2 + 1/4) pi
    const double mu = 4.0 * order * order;
    double p = 1.0;
    double q = 0.0;
    double a = 1.0; // a_k / x^k
    double last = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        a *= (mu - odd * odd) / (k * 8.0 * x);
        const double mag = std::abs(a);
        if (mag > last)
            break; // series has started to diverge
        last = mag;
        // k = 1 -> +Q, 2 -> -P, 3 -> -Q, 4 -> +P, ...
        switch (k % 4) {
        case 1: q += a; break;
        case 2: p -= a; break;
        case 3: q -= a; break;
        case 0: p += a; break;
        }
        if (mag < 1e-17)
            break;
    }
    const double chi = x - (0.5 * order + 0.25) * pi;
    return std::sqrt(2.0 / (pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double evaluate(int order, double x)
{
    const double ax = std::abs(x);
    const double value = ax <= series_limit ? power_series(order, ax) : hankel_asymptotic(order, ax);
    // J1 is odd, J0 even
    return (order == 1 && x < 0.0) ? -value : value;
}

} // namespace

double j0(double x) { return evaluate(0, x); }

double j1(double x) { return evaluate(1, x); }

double j1_zero(int n)
{
    if (n < 1)
        throw DomainError("Bessel zero index must be >= 1");
    // McMahon: j_{1,n} ~ beta - 3/(8 beta), beta = (n + 1/4) pi
    const double beta = (n + 0.25) * pi;
    double x = beta - 3.0 / (8.0 * beta) + 3.0 / (128.0 * beta * beta * beta);
    for (int it = 0; it < 50; ++it) {
        // J1' = J0 - J1 / x
        const double f = j1(x);
        const double df = j0(x) - f / x;
        const double step = f / df;
        x -= step;
        if (std::abs(step) < 1e-15 * x)
            break;
    }
    return x;
}

} // namespace polariton::bessel
