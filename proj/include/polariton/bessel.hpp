#pragma once

namespace polariton::bessel {

/// J0 and J1 of real argument. Power series up to |x| = 12, Hankel
/// asymptotic expansion beyond; absolute error below 1e-10 * max(1, |J|).
double j0(double x);
double j1(double x);

/// n-th positive zero of J1 (n >= 1), Newton-polished from McMahon's estimate.
double j1_zero(int n);

} // namespace polariton::bessel
