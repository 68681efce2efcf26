#pragma once

#include "polariton/mbsolve.hpp"
#include "polariton/model.hpp"
#include "polariton/spectrum.hpp"
#include "polariton/transmission.hpp"

#include <span>
#include <vector>

namespace polariton::experiments {

/// Collinear pump-probe run on a shared carrier. The probe response is the
/// difference between the pump+probe and pump-alone outputs.
struct PumpProbeConfig
{
    PulseSpec pump{PulseShape::gaussian, 0.49 * pi, 0.1, 0.0, 0.0};
    PulseSpec probe{PulseShape::gaussian, 0.002 * pi, 0.1, -0.5, 0.0};
    MediumParams medium{1e-3, 1e-3, 0.0};
    SimGrid grid;
    SolverConfig solver;

    double delta_limit = 10.0;    // report |Delta| <= delta_limit
    double mask_threshold = 1e-3; // of the peak input probe spectral density
    bool check_linearity = true;  // extra run at half probe area
    bool parallel = false;        // run the independent propagations concurrently

    /// probe centre minus pump centre; negative when the probe leads
    double tau0() const { return probe.center - pump.center; }
    void validate() const;
};

struct PumpProbeResult
{
    TransmissionSpectrum spectrum;
    FieldRecord probe_in;
    FieldRecord probe_out;
    /// max relative change of T on unmasked points when the probe area is
    /// halved; negative when not checked
    double linearity_deviation = -1.0;
};

/// Relative T change above which a nonlinearity warning is attached.
inline constexpr double linearity_warning_threshold = 0.02;

PumpProbeResult run_pump_probe(const PumpProbeConfig& cfg);

/// run_pump_probe() for several probe delays (tau0 values). The pump is
/// propagated once and all fields are marched together; each result equals
/// the corresponding run_pump_probe() output.
std::vector<PumpProbeResult> run_pump_probe_delays(const PumpProbeConfig& cfg,
                                                   std::span<const double> delays);

TransmissionSpectrum probe_transmission(const PumpProbeConfig& cfg);

/// |S_out|^2 / |S_in|^2 with masking, cropped to |Delta| <= delta_limit.
TransmissionSpectrum transmission_from_fields(std::span<const complex> in,
                                              std::span<const complex> out,
                                              const SimGrid& grid, double delta_limit,
                                              double mask_threshold);

struct FeatureMetrics
{
    std::vector<double> peak_positions; // ascending detuning
    std::vector<double> peak_values;
    std::vector<double> prominences;
    double outermost_position = 0.0; // |Delta| of the outermost peak
    double feature_width = 0.0;      // full width at half prominence of that peak
    bool empty() const { return peak_positions.empty(); }
};

/// Local maxima of T over unmasked points with prominence above
/// min_prominence * max(T). Ties between outermost candidates go to the
/// leftmost index.
FeatureMetrics feature_metrics(const TransmissionSpectrum& spectrum, double min_prominence = 0.01);

struct RingingTrace
{
    FieldRecord input;
    FieldRecord output;
    std::vector<double> nodes; // tau of |Omega| minima after the input pulse
    std::vector<std::string> warnings;
};

/// Propagate a weak pulse (area <= 0.1 pi) and locate the ringing nodes.
RingingTrace ringing_trace(const PulseSpec& pulse, const MediumParams& medium, const SimGrid& grid,
                           const SolverConfig& solver);

/// Sub-grid minima of |Omega| at tau >= tau_start, refined by a parabola
/// through |Omega|^2.
std::vector<double> find_nodes(std::span<const complex> field, const SimGrid& grid, double tau_start);

} // namespace polariton::experiments
