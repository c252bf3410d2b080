#include "mixlab/fourier.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace mixlab {

namespace {

// FFTW's planner is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

PeriodicFft::PeriodicFft(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("transform size must be at least 2");
    std::lock_guard<std::mutex> lock(planner_mutex());
    const std::size_t nr = static_cast<std::size_t>(n) * n;
    double* in = fftw_alloc_real(nr);
    fftw_complex* out = fftw_alloc_complex(spectrum_size());
    forward_plan_ = fftw_plan_dft_r2c_2d(n, n, in, out, FFTW_ESTIMATE);
    backward_plan_ = fftw_plan_dft_c2r_2d(n, n, out, in, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    if (!forward_plan_ || !backward_plan_) throw std::runtime_error("FFTW planning failed");
}

PeriodicFft::~PeriodicFft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

std::vector<std::complex<double>> PeriodicFft::forward(const std::vector<double>& data) const {
    const std::size_t nr = static_cast<std::size_t>(n_) * n_;
    if (data.size() != nr) throw std::invalid_argument("transform input has wrong size");
    double* in = fftw_alloc_real(nr);
    fftw_complex* out = fftw_alloc_complex(spectrum_size());
    std::memcpy(in, data.data(), nr * sizeof(double));
    fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), in, out);
    std::vector<std::complex<double>> result(spectrum_size());
    std::memcpy(static_cast<void*>(result.data()), out, spectrum_size() * sizeof(fftw_complex));
    fftw_free(in);
    fftw_free(out);
    return result;
}

std::vector<double> PeriodicFft::backward(const std::vector<std::complex<double>>& spectrum) const {
    if (spectrum.size() != spectrum_size()) throw std::invalid_argument("spectrum has wrong size");
    const std::size_t nr = static_cast<std::size_t>(n_) * n_;
    double* outr = fftw_alloc_real(nr);
    fftw_complex* in = fftw_alloc_complex(spectrum_size());
    // c2r destroys its input, so work on a copy.
    std::memcpy(in, spectrum.data(), spectrum_size() * sizeof(fftw_complex));
    fftw_execute_dft_c2r(static_cast<fftw_plan>(backward_plan_), in, outr);
    std::vector<double> result(outr, outr + nr);
    fftw_free(outr);
    fftw_free(in);
    return result;
}

std::vector<double> PeriodicFft::convolve(const std::vector<std::complex<double>>& kernel_hat,
                                          const std::vector<double>& g) const {
    auto spec = forward(g);
    for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= kernel_hat[k];
    auto out = backward(spec);
    const double scale = 1.0 / (static_cast<double>(n_) * n_);
    for (auto& v : out) v *= scale;
    return out;
}

std::vector<std::complex<double>> dft2_full(const std::vector<double>& data, int n) {
    const std::size_t nr = static_cast<std::size_t>(n) * n;
    if (data.size() != nr) throw std::invalid_argument("transform input has wrong size");
    fftw_complex* buf = fftw_alloc_complex(nr);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    for (std::size_t k = 0; k < nr; ++k) {
        buf[k][0] = data[k];
        buf[k][1] = 0.0;
    }
    fftw_execute(plan);
    std::vector<std::complex<double>> result(nr);
    std::memcpy(static_cast<void*>(result.data()), buf, nr * sizeof(fftw_complex));
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(buf);
    return result;
}

}  // namespace mixlab
