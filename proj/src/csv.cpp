#include "polariton/csv.hpp"

#include "polariton/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace polariton::csv {

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void Table::write(const std::filesystem::path& path) const
{
    if (header.size() != columns.size())
        throw InvalidParameter("CSV header and column count differ");
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& c : columns)
        if (c.size() != rows)
            throw InvalidParameter("CSV columns have different lengths");

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path.string());
    for (std::size_t c = 0; c < header.size(); ++c)
        out << (c ? "," : "") << header[c];
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << (c ? "," : "") << format_number(columns[c][r]);
        out << '\n';
    }
    if (!out)
        throw Error("error while writing " + path.string());
}

void write_spectrum(const std::filesystem::path& path, const TransmissionSpectrum& spectrum)
{
    std::vector<double> masked(spectrum.masked.begin(), spectrum.masked.end());
    Table{{"delta_over_omega_c", "T", "masked"}, {spectrum.delta, spectrum.T, masked}}.write(path);
}

void write_cavity(const std::filesystem::path& path, const TransmissionSpectrum& spectrum)
{
    Table{{"delta_over_omega_c", "T"}, {spectrum.delta, spectrum.T}}.write(path);
}

void write_field(const std::filesystem::path& path, const FieldRecord& field, const SimGrid& grid)
{
    const std::size_t n = field.omega.size();
    Table t{{"tau", "re_omega", "im_omega", "abs_omega"}, std::vector<std::vector<double>>(4)};
    for (auto& c : t.columns)
        c.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        t.columns[0][j] = grid.tau(static_cast<int>(j));
        t.columns[1][j] = field.omega[j].real();
        t.columns[2][j] = field.omega[j].imag();
        t.columns[3][j] = std::abs(field.omega[j]);
    }
    t.write(path);
}

} // namespace polariton::csv
