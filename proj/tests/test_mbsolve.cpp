#include "polariton/error.hpp"
#include "polariton/linresp.hpp"
#include "polariton/mbsolve.hpp"

#include <doctest.h>

#include <cmath>
#include <initializer_list>

using namespace polariton;

namespace {

SimGrid make_grid(double tau_min, double tau_max, int n, double zeta_end = 1.0)
{
    SimGrid g;
    g.tau_min = tau_min;
    g.tau_max = tau_max;
    g.n_tau = n;
    g.zeta_end = zeta_end;
    return g;
}

double relative_l2(const std::vector<complex>& a, const std::vector<complex>& b)
{
    double diff = 0.0, norm = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        diff += std::norm(a[j] - b[j]);
        norm += std::norm(b[j]);
    }
    return std::sqrt(diff / norm);
}

} // namespace

TEST_CASE("constant drive flips the inversion at area pi")
{
    const auto grid = make_grid(0.0, pi, 2001);
    FieldRecord row{0.0, std::vector<complex>(grid.n_tau, complex(1.0, 0.0))};
    const auto m = bloch_step(row, MediumParams{0.0, 0.0, 0.0}, grid);
    CHECK(std::abs(m.W.back() - 1.0) < 1e-6);
    CHECK(std::abs(m.P.back()) < 1e-6);
    // a quarter of the way through, W = -cos(pi / 4)
    CHECK(m.W[500] == doctest::Approx(-std::cos(pi / 4)).epsilon(1e-9));
}

TEST_CASE("undamped Bloch vector keeps unit length")
{
    const auto grid = make_grid(-2.0, 4.0, 6001);
    PulseSpec pulse{PulseShape::gaussian, 1.3 * pi, 0.1, 0.0, 0.0};
    FieldRecord row{0.0, render_pulse(pulse, grid)};
    for (double detuning : {0.0, 0.7, -3.0}) {
        CAPTURE(detuning);
        const auto m = bloch_step(row, MediumParams{0.0, 0.0, detuning}, grid);
        double worst = 0.0;
        for (int j = 0; j < grid.n_tau; ++j)
            worst = std::max(worst, std::abs(4.0 * std::norm(m.P[j]) + m.W[j] * m.W[j] - 1.0));
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("bloch_step rejects bad input")
{
    const auto grid = make_grid(-1.0, 1.0, 101);
    FieldRecord row{0.0, std::vector<complex>(101)};
    row.omega[40] = complex(NAN, 0.0);
    CHECK_THROWS_AS(bloch_step(row, MediumParams{}, grid), PropagationDiverged);
    row.omega.resize(50);
    CHECK_THROWS_AS(bloch_step(row, MediumParams{}, grid), InvalidParameter);
}

TEST_CASE("field energy lost equals energy deposited in the medium")
{
    // dE/dzeta = -(W(tau_max) + 1) - gamma_par int (W + 1) dtau
    auto grid = make_grid(-2.0, 60.0, 6201);
    const MediumParams medium{0.05, 0.02, 0.0};
    PulseSpec pulse{PulseShape::gaussian, 0.49 * pi, 0.2, 0.0, 0.0};
    const int stations = 21;
    for (int s = 0; s < stations; ++s)
        grid.record_stations.push_back(s / double(stations - 1));
    const auto run = propagate(FieldRecord{0.0, render_pulse(pulse, grid)}, medium, grid, SolverConfig{});
    REQUIRE(run.fields.size() == std::size_t(stations));

    const double d_tau = grid.d_tau();
    std::vector<double> rate(stations);
    for (int s = 0; s < stations; ++s) {
        const auto& W = run.media[s].W;
        double deposited = 0.0;
        for (std::size_t j = 0; j + 1 < W.size(); ++j)
            deposited += 0.5 * (W[j] + W[j + 1] + 2.0) * d_tau;
        rate[s] = W.back() + 1.0 + medium.gamma_par_t * deposited;
    }
    double absorbed = 0.0; // Simpson over zeta
    const double h = 1.0 / (stations - 1);
    for (int s = 0; s < stations; ++s)
        absorbed += (s == 0 || s == stations - 1 ? 1.0 : (s % 2 ? 4.0 : 2.0)) * rate[s];
    absorbed *= h / 3.0;

    const double e0 = field_energy(run.fields.front().omega, d_tau);
    const double e1 = field_energy(run.fields.back().omega, d_tau);
    CHECK(e0 == doctest::Approx(run.input_energy));
    CHECK(std::abs((e0 - e1) - absorbed) < 1e-3 * e0);
}

TEST_CASE("a weak pulse is convolved with the linear impulse response")
{
    auto grid = make_grid(-2.0, 150.0, 15201);
    const double gamma = 0.1, zeta = 1.0;
    grid.zeta_end = zeta;
    PulseSpec pulse{PulseShape::gaussian, 0.01 * pi, 0.1, 0.0, 0.0};
    const auto input = render_pulse(pulse, grid);
    const auto run = propagate(FieldRecord{0.0, input}, MediumParams{gamma, gamma, 0.0}, grid, SolverConfig{});

    const double d_tau = grid.d_tau();
    std::vector<double> h(grid.n_tau);
    for (int k = 0; k < grid.n_tau; ++k)
        h[k] = k == 0 ? 0.5 * zeta : linresp::impulse_response(k * d_tau, zeta, gamma).envelope;

    std::vector<complex> expected(input);
    for (int j = 0; j < grid.n_tau; ++j) {
        complex acc = 0.0;
        for (int k = 0; k <= j; ++k) {
            if (input[k] == complex(0.0, 0.0) || std::abs(input[k]) < 1e-30)
                continue;
            acc += (k == j ? 0.5 : 1.0) * h[j - k] * input[k];
        }
        expected[j] -= acc * d_tau;
    }
    CHECK(relative_l2(run.fields.back().omega, expected) < 1e-2);
}

TEST_CASE("zero propagation length returns the input")
{
    const auto grid = make_grid(-2.0, 10.0, 1201, 0.0);
    const auto input = render_pulse(PulseSpec{PulseShape::gaussian, 0.3, 0.1, 0.0, 0.0}, grid);
    const auto run = propagate(FieldRecord{0.0, input}, MediumParams{1e-3, 1e-3, 0.0}, grid, SolverConfig{});
    REQUIRE(run.fields.size() == 1);
    CHECK(run.fields[0].omega == input);
    CHECK(run.steps == 0);
}

TEST_CASE("batch propagation matches single runs exactly")
{
    auto grid = make_grid(-2.0, 10.0, 1201, 0.2);
    grid.record_stations = {0.1, 0.2};
    const MediumParams medium{1e-2, 1e-2, 0.1};
    std::vector<FieldRecord> inputs;
    for (double area : {0.1, 0.5 * pi, 2.0 * pi})
        inputs.push_back({0.0, render_pulse(PulseSpec{PulseShape::gaussian, area, 0.1, 0.0, 0.0}, grid)});
    const auto batch = propagate_batch(inputs, medium, grid, SolverConfig{});
    REQUIRE(batch.size() == inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const auto single = propagate(inputs[i], medium, grid, SolverConfig{});
        REQUIRE(single.fields.size() == 2);
        CHECK(single.fields[0].zeta == 0.1);
        CHECK(single.fields[1].omega == batch[i].fields[1].omega);
        CHECK(single.media[1].W == batch[i].media[1].W);
    }
}

TEST_CASE("record stations split the march without changing the result")
{
    auto grid = make_grid(-2.0, 10.0, 1201, 0.5);
    const MediumParams medium{1e-2, 1e-2, 0.0};
    const FieldRecord input{0.0, render_pulse(PulseSpec{PulseShape::gaussian, 0.49 * pi, 0.1, 0.0, 0.0}, grid)};
    const auto plain = propagate(input, medium, grid, SolverConfig{});
    grid.record_stations = {0.25, 0.5};
    const auto split = propagate(input, medium, grid, SolverConfig{});
    CHECK(split.fields.size() == 2);
    CHECK(relative_l2(split.fields.back().omega, plain.fields.back().omega) < 1e-12);
    CHECK(split.steps == plain.steps);
}

TEST_CASE("a short window triggers a truncation warning")
{
    const auto grid = make_grid(-2.0, 10.0, 1201, 1.0);
    const FieldRecord input{0.0, render_pulse(PulseSpec{PulseShape::gaussian, 0.01, 0.1, 0.0, 0.0}, grid)};
    const auto run = propagate(input, MediumParams{1e-3, 1e-3, 0.0}, grid, SolverConfig{});
    CHECK_FALSE(run.warnings.empty());
}

TEST_CASE("oversized zeta steps are reported as an instability")
{
    const auto grid = make_grid(-2.0, 20.0, 2201, 200.0);
    const FieldRecord input{0.0, render_pulse(PulseSpec{PulseShape::gaussian, 0.01, 0.1, 0.0, 0.0}, grid)};
    SolverConfig cfg;
    cfg.d_zeta = 50.0;
    CHECK_THROWS_AS(propagate(input, MediumParams{1e-3, 1e-3, 0.0}, grid, cfg), InstabilityError);
}

TEST_CASE("solver settings are validated")
{
    SolverConfig cfg;
    cfg.corrector_iterations = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidParameter);
    cfg = SolverConfig{};
    cfg.d_zeta = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidParameter);
}

TEST_CASE("halving the zeta step confirms convergence")
{
    const auto grid = make_grid(-2.0, 40.0, 4201, 1.0);
    const FieldRecord input{0.0, render_pulse(PulseSpec{PulseShape::gaussian, 0.49 * pi, 0.1, 0.0, 0.0}, grid)};
    SolverConfig cfg;
    cfg.d_zeta = 1e-2;
    const auto r = check_convergence(input, MediumParams{1e-3, 1e-3, 0.0}, grid, cfg);
    CHECK(r.converged);
    CHECK(r.relative_field_change < 1e-3);
}

TEST_CASE("pulse area and energy of a sampled field")
{
    const auto grid = make_grid(-12.0, 12.0, 24001, 0.0);
    const FieldRecord f{0.0, render_pulse(PulseSpec{PulseShape::sech, 2.0 * pi, 0.5, 0.0, 0.0}, grid)};
    CHECK(pulse_area(f, grid) == doctest::Approx(2.0 * pi).epsilon(1e-6));
    // int (2/s)^2 sech^2(t/s) dt = 8 / s
    CHECK(field_energy(f.omega, grid.d_tau()) == doctest::Approx(16.0).epsilon(1e-6));
}
