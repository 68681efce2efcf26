#pragma once

// Reduced Maxwell-Bloch system in the retarded frame (dimensionless):
//
//   dP/dtau   = -(gamma_perp + i delta) P + (i/2) Omega W
//   dW/dtau   = -gamma_par (W + 1) + i (Omega* P - Omega P*)
//   dOmega/dzeta = -i P
//
// The medium starts in the ground state (P = 0, W = -1) at tau_min of every
// slice. In the weak-field limit this reproduces linresp::transfer_function.

#include "polariton/model.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace polariton {

struct FieldRecord
{
    double zeta = 0.0;
    std::vector<complex> omega;
};

struct MediumRecord
{
    double zeta = 0.0;
    std::vector<complex> P;
    std::vector<double> W;
};

struct SolverConfig
{
    double d_zeta = 1e-3; // largest step in zeta
    int corrector_iterations = 2;
    double tolerance = 1e-3; // relative L2 change accepted by check_convergence

    void validate() const;
};

/// Integrate the Bloch pair over one slice with classical RK4 in tau. The
/// field is interpolated linearly between grid nodes for the half steps.
MediumRecord bloch_step(const FieldRecord& row, const MediumParams& params, const SimGrid& grid);

/// Allocation-free core of bloch_step. `W` may be empty when only P is needed.
void integrate_medium(std::span<const complex> omega, const MediumParams& params, double d_tau,
                      std::span<complex> P, std::span<double> W);

struct PropagationResult
{
    std::vector<FieldRecord> fields; // one per record station, ascending zeta
    std::vector<MediumRecord> media;
    std::vector<std::string> warnings;
    std::size_t steps = 0;
    double input_energy = 0.0;
};

/// March the field from zeta = 0 to grid.zeta_end with a predictor-corrector
/// (trapezoidal corrector) scheme. Steps are uniform between consecutive
/// record stations and never longer than min(cfg.d_zeta, zeta_end / n_zeta).
/// With no record stations the field at zeta_end is returned.
PropagationResult propagate(const FieldRecord& input, const MediumParams& params,
                            const SimGrid& grid, const SolverConfig& cfg);

/// propagate() for several independent inputs marched in lockstep. Each
/// result is identical to the corresponding single-input run.
std::vector<PropagationResult> propagate_batch(std::span<const FieldRecord> inputs,
                                              const MediumParams& params, const SimGrid& grid,
                                              const SolverConfig& cfg);

/// |integral of Omega dtau| by the trapezoidal rule.
double pulse_area(const FieldRecord& field, const SimGrid& grid);

/// sum |Omega|^2 dtau.
double field_energy(std::span<const complex> omega, double d_tau);

struct ConvergenceReport
{
    double d_zeta = 0.0;
    double relative_norm_change = 0.0;  // | ||a|| - ||b|| | / ||a||
    double relative_field_change = 0.0; // ||a - b|| / ||a||
    bool converged = false;
};

/// Re-run at half the step and compare the final fields.
ConvergenceReport check_convergence(const FieldRecord& input, const MediumParams& params,
                                    const SimGrid& grid, const SolverConfig& cfg);

} // namespace polariton
