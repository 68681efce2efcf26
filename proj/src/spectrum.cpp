#include "polariton/spectrum.hpp"

#include "polariton/error.hpp"

#include <fftw3.h>

#include <mutex>

namespace polariton {

namespace {

// The FFTW planner is not reentrant; execution of a finished plan is.
std::mutex planner_mutex;

class Transform
{
public:
    explicit Transform(std::size_t n)
        : data_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)))
    {
        std::lock_guard lock(planner_mutex);
        plan_ = fftw_plan_dft_1d(static_cast<int>(n), data_, data_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    ~Transform()
    {
        {
            std::lock_guard lock(planner_mutex);
            fftw_destroy_plan(plan_);
        }
        fftw_free(data_);
    }

    Transform(const Transform&) = delete;
    Transform& operator=(const Transform&) = delete;

    complex* data() { return reinterpret_cast<complex*>(data_); }
    void execute() { fftw_execute(plan_); }

private:
    fftw_complex* data_;
    fftw_plan plan_;
};

} // namespace

Spectrum dft_spectrum(std::span<const complex> field, const SimGrid& grid, int pad_factor)
{
    grid.validate();
    if (field.size() != static_cast<std::size_t>(grid.n_tau))
        throw InvalidParameter("field length does not match grid.n_tau");
    if (pad_factor < 1)
        throw InvalidParameter("pad_factor must be >= 1");

    const std::size_t n = field.size() * static_cast<std::size_t>(pad_factor);
    const double d_tau = grid.d_tau();
    const double d_delta = 2.0 * pi / (static_cast<double>(n) * d_tau);

    Transform fft(n);
    complex* data = fft.data();
    std::copy(field.begin(), field.end(), data);
    std::fill(data + field.size(), data + n, complex(0.0, 0.0));
    fft.execute();

    // bin k holds sum_j x_j e^{2 pi i j k / n}; tau_j = tau_min + j d_tau adds e^{i Delta tau_min}
    Spectrum out;
    out.d_delta = d_delta;
    out.delta.resize(n);
    out.values.resize(n);
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = (i + (n - half)) % n; // fftshift: i = 0 -> most negative bin
        const long signed_k = k < n - half ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
        const double delta = signed_k * d_delta;
        out.delta[i] = delta;
        out.values[i] = d_tau * data[k] * std::polar(1.0, delta * grid.tau_min);
    }
    return out;
}

Spectrum dft_spectrum(const FieldRecord& field, const SimGrid& grid, int pad_factor)
{
    return dft_spectrum(std::span<const complex>(field.omega), grid, pad_factor);
}

} // namespace polariton
