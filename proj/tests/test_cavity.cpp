#include "polariton/cavity.hpp"
#include "polariton/error.hpp"
#include "polariton/experiments.hpp"

#include <doctest.h>

#include <cmath>
#include <initializer_list>

using namespace polariton;
using namespace polariton::cavity;

namespace {

std::vector<double> axis(double lo, double hi, int n)
{
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

} // namespace

TEST_CASE("equal damping on resonance splits by exactly omega_c")
{
    for (double rate : {0.0, 1e-3, 0.05, 0.4}) {
        CAPTURE(rate);
        CavityParams p;
        p.kappa = p.gamma = rate;
        const auto m = coupled_mode_eigenfrequencies(p);
        CHECK(m.splitting == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(m.plus.imag() == doctest::Approx(-rate));
    }
}

TEST_CASE("eigenvalues satisfy the characteristic polynomial")
{
    CavityParams p;
    p.kappa = 0.3;
    p.gamma = 0.02;
    p.detuning = 0.4;
    const auto m = coupled_mode_eigenfrequencies(p);
    const complex a(p.detuning, -p.kappa), d(0.0, -p.gamma);
    for (const complex w : {m.plus, m.minus})
        CHECK(std::abs((a - w) * (d - w) - 0.25) < 1e-14);
    CHECK(m.plus.real() >= m.minus.real());
}

TEST_CASE("splitting closes at the threshold |kappa - gamma| = omega_c")
{
    CavityParams p;
    p.gamma = 0.01;
    p.kappa = 1.01;
    CHECK(coupled_mode_eigenfrequencies(p).splitting < 1e-6);
    p.kappa = 1.5;
    CHECK(coupled_mode_eigenfrequencies(p).splitting == 0.0);
    p.kappa = 0.9;
    CHECK(coupled_mode_eigenfrequencies(p).splitting == doctest::Approx(std::sqrt(1.0 - 0.89 * 0.89 )));
}

TEST_CASE("splitting grows as the square root of the density")
{
    PhysicalMedium ref;
    ref.dipole_moment = 1e-18;
    ref.transition_frequency = 3.2e15;
    ref.density = 1e10;
    CavityParams p; // undamped: the splitting is omega_c itself
    const std::vector<double> n{1e10, 1e11, 1e12};
    const auto s = splitting_vs_density(n, ref, p);
    CHECK(s[1] / s[0] == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
    CHECK(s[2] / s[0] == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(s[0] == doctest::Approx(cooperative_frequency(ref).omega_c));

    const std::vector<double> bad{1e10, 0.0};
    CHECK_THROWS_AS(splitting_vs_density(bad, ref, p), InvalidParameter);
    ref.dipole_moment = 0.0;
    CHECK_THROWS_AS(splitting_vs_density(n, ref, p), InvalidParameter);
}

TEST_CASE("empty Fabry-Perot line has the Airy half width")
{
    CavityParams p;
    p.fill_fraction = 0.0;
    p.reflectivity = 0.98;
    p.length = 0.1;
    const auto grid = axis(-2.0, 2.0, 400001);
    const auto t = fp_transmission(grid, p);
    // numerical half maximum on the right of the peak at Delta = 0
    std::size_t k = 200000;
    CHECK(t.T[k] == doctest::Approx(1.0));
    while (t.T[k] > 0.5)
        ++k;
    const double hwhm = grid[k - 1] + (t.T[k - 1] - 0.5) / (t.T[k - 1] - t.T[k]) * (grid[k] - grid[k - 1]);
    CHECK(empty_cavity_half_width(p.reflectivity, p.length) == doctest::Approx(hwhm).epsilon(1e-6));
    CHECK(finesse(0.98) == doctest::Approx(pi * 0.98 / (1.0 - 0.9604)));
}

TEST_CASE("filled Fabry-Perot cavity shows the vacuum Rabi doublet")
{
    CavityParams p;
    p.reflectivity = 0.99;
    p.length = 0.1;
    p.gamma = 1e-3;
    REQUIRE(finesse(p.reflectivity) >= 100.0);
    const auto t = fp_transmission(axis(-2.0, 2.0, 40001), p);
    const auto m = experiments::feature_metrics(t);
    REQUIRE(m.peak_positions.size() == 2);
    p.kappa = empty_cavity_half_width(p.reflectivity, p.length);
    const double predicted = coupled_mode_eigenfrequencies(p).splitting;
    CHECK(m.peak_positions[1] - m.peak_positions[0] == doctest::Approx(predicted).epsilon(0.1));
}

TEST_CASE("cavity parameter checks")
{
    CavityParams p;
    p.reflectivity = 1.0;
    CHECK_THROWS_AS(fp_transmission(axis(-1, 1, 11), p), InvalidParameter);
    p = CavityParams{};
    CHECK_THROWS_AS(fp_transmission(std::vector<double>{0.0, 0.0}, p), InvalidParameter);
    p.kappa = -1.0;
    CHECK_THROWS_AS(coupled_mode_eigenfrequencies(p), InvalidParameter);
    p = CavityParams{};
    p.fill_fraction = 1.5;
    CHECK_THROWS_AS(p.validate(), InvalidParameter);
    CHECK_THROWS_AS(empty_cavity_half_width(1.0, 0.1), InvalidParameter);
}
