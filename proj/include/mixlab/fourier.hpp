#pragma once

#include <complex>
#include <vector>

namespace mixlab {

/// Real-to-complex 2D transforms on an n x n periodic array (row-major,
/// row index slow). Spectra use FFTW's half layout: n x (n/2 + 1).
class PeriodicFft {
public:
    explicit PeriodicFft(int n);
    ~PeriodicFft();
    PeriodicFft(const PeriodicFft&) = delete;
    PeriodicFft& operator=(const PeriodicFft&) = delete;

    int n() const { return n_; }
    std::size_t spectrum_size() const { return static_cast<std::size_t>(n_) * (n_ / 2 + 1); }

    std::vector<std::complex<double>> forward(const std::vector<double>& data) const;
    /// Unnormalized inverse (result scaled by n^2).
    std::vector<double> backward(const std::vector<std::complex<double>>& spectrum) const;

    /// Circular convolution (k * g)(x) = sum_y k(x - y) g(y), given k's spectrum.
    std::vector<double> convolve(const std::vector<std::complex<double>>& kernel_hat,
                                 const std::vector<double>& g) const;

private:
    int n_;
    void* forward_plan_;
    void* backward_plan_;
};

/// Full complex DFT of a real n x n array, F(k) = sum_x f(x) e^{-2 pi i k.x/n}.
std::vector<std::complex<double>> dft2_full(const std::vector<double>& data, int n);

}  // namespace mixlab
