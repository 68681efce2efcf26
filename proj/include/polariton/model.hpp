#pragma once

// Units and parameter containers.
//
// Physical inputs are CGS. Everything downstream of nondimensionalize() works
// in units of the cooperative frequency omega_c:
//   tau  = omega_c (t - z/c)     retarded time
//   zeta = omega_c z / c         propagation length
//   Omega / omega_c              Rabi envelope

#include <complex>
#include <vector>

namespace polariton {

using complex = std::complex<double>;

namespace cgs {
inline constexpr double hbar = 1.054571817e-27;        // erg s
inline constexpr double speed_of_light = 2.99792458e10; // cm / s
} // namespace cgs

inline constexpr double pi = 3.14159265358979323846;

struct PhysicalMedium
{
    double dipole_moment = 0.0;        // statC cm
    double transition_frequency = 0.0; // rad / s
    double density = 0.0;              // cm^-3
    double gamma_perp = 0.0;           // rad / s
    double gamma_par = 0.0;            // rad / s
    double detuning = 0.0;             // atom - carrier, rad / s
};

/// Dimensionless medium constants (rates and detuning over omega_c).
struct MediumParams
{
    double gamma_perp_t = 0.0;
    double gamma_par_t = 0.0;
    double detuning_t = 0.0;

    /// Throws InvalidParameter on negative rates.
    void validate() const;

    /// omega_c exceeds the coherence decay.
    bool strong_coupling() const { return gamma_perp_t < 1.0; }
};

struct CooperativeFrequency
{
    double omega_c = 0.0; // rad / s
    double hertz = 0.0;   // omega_c / 2 pi
};

struct Scales
{
    double omega_c = 0.0;      // rad / s
    double time_scale = 0.0;   // s, 1 / omega_c
    double length_scale = 0.0; // cm, c / omega_c
};

struct NormalizedMedium
{
    MediumParams params;
    Scales scales;
};

/// omega_c = sqrt(2 pi d^2 omega_0 n / hbar). Zero density gives zero.
CooperativeFrequency cooperative_frequency(const PhysicalMedium& medium);

NormalizedMedium nondimensionalize(const PhysicalMedium& medium);

/// Inverse of nondimensionalize for the rate fields; d, omega_0 and n are
/// copied from `reference` after rescaling its density to reproduce omega_c.
PhysicalMedium redimensionalize(const MediumParams& params, const Scales& scales,
                                const PhysicalMedium& reference);

double to_zeta(double z_cm, const Scales& scales);
double from_zeta(double zeta, const Scales& scales);
double to_tau(double t_s, const Scales& scales);
double from_tau(double tau, const Scales& scales);

/// omega_D = omega_c^2 z / c in rad/s, for omega_c in rad/s and z in cm.
double ringing_frequency(double omega_c, double z_cm);

/// Dimensionless form omega_D / omega_c, which is just zeta.
double ringing_frequency_normalized(double zeta);

struct SimGrid
{
    double tau_min = -2.0;
    double tau_max = 80.0;
    int n_tau = 16384;
    double zeta_end = 1.0;
    int n_zeta = 1; // minimum number of marching steps
    std::vector<double> record_stations;

    void validate() const;
    double d_tau() const { return (tau_max - tau_min) / (n_tau - 1); }
    double tau(int j) const { return tau_min + j * d_tau(); }
    std::vector<double> tau_axis() const;
};

enum class PulseShape { gaussian, sech };

struct PulseSpec
{
    PulseShape shape = PulseShape::gaussian;
    double area = 0.0;           // rad
    double duration = 0.1;       // sigma for gaussian, sech width otherwise
    double center = 0.0;
    double carrier_offset = 0.0; // detuning of this pulse from the common carrier

    void validate() const;
    /// Peak of |Omega|.
    double peak() const;
    complex envelope(double tau) const;
};

/// Relative amplitude allowed at the window edges for a rendered pulse.
inline constexpr double pulse_truncation_limit = 1e-8;

/// Sample a pulse on the grid. Throws InvalidParameter when the pulse does not
/// fit inside the window to pulse_truncation_limit.
std::vector<complex> render_pulse(const PulseSpec& pulse, const SimGrid& grid);

} // namespace polariton
