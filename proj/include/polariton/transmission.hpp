#pragma once

#include <string>
#include <vector>

namespace polariton {

struct SpectrumMetadata
{
    double zeta = 0.0;
    double tau0 = 0.0;      // probe centre minus pump centre
    double pump_area = 0.0; // rad
    double gamma_perp = 0.0;
    std::vector<std::string> warnings;
};

/// Intensity transmission on a strictly increasing detuning axis. Masked
/// points carry masked = 1; their T is still finite and non-negative but
/// should not be interpreted.
struct TransmissionSpectrum
{
    std::vector<double> delta;
    std::vector<double> T;
    std::vector<unsigned char> masked;
    SpectrumMetadata metadata;

    std::size_t size() const { return delta.size(); }
};

} // namespace polariton
