#pragma once

// CSV output. Every file starts with a header row; numbers are written with
// 17 significant digits so that a value survives a text round trip.

#include "polariton/mbsolve.hpp"
#include "polariton/model.hpp"
#include "polariton/transmission.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace polariton::csv {

std::string format_number(double v);

struct Table
{
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns; // one vector per header entry

    void write(const std::filesystem::path& path) const;
};

/// delta_over_omega_c,T,masked
void write_spectrum(const std::filesystem::path& path, const TransmissionSpectrum& spectrum);

/// delta_over_omega_c,T
void write_cavity(const std::filesystem::path& path, const TransmissionSpectrum& spectrum);

/// tau,re_omega,im_omega,abs_omega
void write_field(const std::filesystem::path& path, const FieldRecord& field, const SimGrid& grid);

} // namespace polariton::csv
