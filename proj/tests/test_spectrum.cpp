#include "polariton/error.hpp"
#include "polariton/spectrum.hpp"

#include <doctest.h>

#include <cmath>
#include <initializer_list>

using namespace polariton;

namespace {

SimGrid grid_of(double a, double b, int n)
{
    SimGrid g;
    g.tau_min = a;
    g.tau_max = b;
    g.n_tau = n;
    return g;
}

} // namespace

TEST_CASE("axis is increasing, centred and evenly spaced")
{
    const auto g = grid_of(-3.0, 5.0, 1000);
    const auto s = dft_spectrum(std::vector<complex>(1000, 1.0), g);
    REQUIRE(s.delta.size() == 1000);
    CHECK(s.d_delta == doctest::Approx(2.0 * pi / (1000 * g.d_tau())));
    for (std::size_t i = 1; i < s.delta.size(); ++i)
        CHECK(s.delta[i] - s.delta[i - 1] == doctest::Approx(s.d_delta));
    CHECK(s.delta[500] == 0.0);
}

TEST_CASE("Parseval: sum |Omega|^2 dtau = sum |S|^2 dDelta / 2 pi")
{
    const auto g = grid_of(-4.0, 12.0, 2048);
    std::vector<complex> f(g.n_tau);
    for (int j = 0; j < g.n_tau; ++j) {
        const double t = g.tau(j);
        f[j] = complex(std::exp(-t * t) * std::cos(3 * t), std::sin(t) * std::exp(-0.5 * t * t));
    }
    const auto s = dft_spectrum(f, g);
    double lhs = 0.0, rhs = 0.0;
    for (const auto& z : f)
        lhs += std::norm(z) * g.d_tau();
    for (const auto& z : s.values)
        rhs += std::norm(z) * s.d_delta / (2.0 * pi);
    CHECK(rhs == doctest::Approx(lhs).epsilon(1e-12));
}

TEST_CASE("Gaussian pulse transforms to area * exp(-sigma^2 Delta^2 / 2) with a delay phase")
{
    const auto g = grid_of(-10.0, 10.0, 4001);
    const double sigma = 0.3, t0 = 1.7, area = 0.4;
    const auto pulse = render_pulse(PulseSpec{PulseShape::gaussian, area, sigma, t0, 0.0}, g);
    for (int pad : {1, 3}) {
        const auto s = dft_spectrum(pulse, g, pad);
        CHECK(s.delta.size() == std::size_t(4001 * pad));
        for (std::size_t i = 0; i < s.delta.size(); i += 37) {
            const double d = s.delta[i];
            if (std::abs(d) > 12.0)
                continue;
            const complex expected = area * std::exp(-0.5 * sigma * sigma * d * d) * std::polar(1.0, d * t0);
            CHECK(std::abs(s.values[i] - expected) < 1e-10);
        }
    }
}

TEST_CASE("carrier offset moves the spectrum to positive detuning")
{
    const auto g = grid_of(-10.0, 10.0, 4000);
    const auto pulse = render_pulse(PulseSpec{PulseShape::gaussian, 1.0, 0.5, 0.0, 2.0}, g);
    const auto s = dft_spectrum(pulse, g);
    std::size_t best = 0;
    for (std::size_t i = 0; i < s.values.size(); ++i)
        if (std::abs(s.values[i]) > std::abs(s.values[best]))
            best = i;
    CHECK(s.delta[best] == doctest::Approx(2.0).epsilon(s.d_delta));
}

TEST_CASE("input checks")
{
    const auto g = grid_of(0.0, 1.0, 10);
    CHECK_THROWS_AS(dft_spectrum(std::vector<complex>(9), g), InvalidParameter);
    CHECK_THROWS_AS(dft_spectrum(std::vector<complex>(10), g, 0), InvalidParameter);
}
