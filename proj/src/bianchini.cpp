#include "mixlab/bianchini.hpp"

#include "mixlab/fourier.hpp"
#include "mixlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace mixlab {

double SemiNormParams::default_rho() { return std::pow(2.0, 0.25); }

SemiNormParams SemiNormParams::make(double eps, double rho, double kappa) {
    if (!(eps > 0.0) || !(eps < 0.125)) throw std::invalid_argument("eps must lie in (0, 1/8)");
    if (!(rho > 1.0)) throw std::invalid_argument("rho must exceed 1");
    if (!(kappa > 0.0) || !(kappa < 0.5)) throw std::invalid_argument("kappa must lie in (0, 1/2)");

    SemiNormParams p;
    p.eps = eps;
    p.rho = rho;
    p.kappa = kappa;
    for (int j = 0;; ++j) {
        const double r = eps * std::pow(rho, j);
        if (r >= 0.25 * (1.0 - 1e-9)) break;
        p.radii.push_back(r);
    }
    p.radii.push_back(0.25);

    const std::size_t m = p.radii.size();
    p.weights.assign(m, 0.0);
    for (std::size_t j = 0; j + 1 < m; ++j) {
        const double step = std::log(p.radii[j + 1] / p.radii[j]);
        p.weights[j] += 0.5 * step;
        p.weights[j + 1] += 0.5 * step;
    }
    return p;
}

void SemiNormParams::check_resolution(const GridSpec& spec) const {
    if (radii.empty()) throw std::invalid_argument("empty radius grid");
    if (radii.front() < spec.h()) {
        throw std::invalid_argument("smallest radius is below the grid resolution");
    }
}

namespace {

void check_radius(const GridSpec& spec, double r) {
    if (r < spec.h()) throw std::invalid_argument("radius below grid resolution");
    if (r > 0.25) throw std::invalid_argument("radius exceeds 1/4");
}

// sum_x |c * a(x) - count(x)|, the integer core of one radius term.
std::int64_t indicator_deviation(const IndicatorField& field, const DiskStencil& stencil) {
    const auto counts = ball_counts(field, stencil);
    const auto cells = field.cells();
    const std::int64_t c = stencil.count();
    std::int64_t total = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        total += std::llabs(c * cells[k] - static_cast<std::int64_t>(counts[k]));
    }
    return total;
}

}  // namespace

RadiusStat ball_average_range(const IndicatorField& field, double r) {
    check_radius(field.spec(), r);
    DiskStencil stencil(r, field.n());
    const auto counts = ball_counts(field, stencil);
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    const double c = static_cast<double>(stencil.count());
    return {r, *lo / c, *hi / c};
}

bool is_mixed(const IndicatorField& field, double r, double kappa) {
    if (!(kappa > 0.0) || !(kappa < 0.5)) throw std::invalid_argument("kappa must lie in (0, 1/2)");
    const RadiusStat s = ball_average_range(field, r);
    constexpr double slack = 1e-12;
    return s.min_avg >= kappa - slack && s.max_avg <= 1.0 - kappa + slack;
}

MixReport mixing_scale(const IndicatorField& field, const SemiNormParams& params) {
    params.check_resolution(field.spec());
    MixReport report;
    report.kappa = params.kappa;
    constexpr double slack = 1e-12;
    for (double r : params.radii) report.per_radius.push_back(ball_average_range(field, r));
    for (std::size_t j = report.per_radius.size(); j-- > 0;) {
        const auto& s = report.per_radius[j];
        if (s.min_avg >= params.kappa - slack && s.max_avg <= 1.0 - params.kappa + slack) {
            report.scale = s.r;
        } else {
            break;
        }
    }
    return report;
}

std::vector<double> seminorm_profile(const IndicatorField& field, const SemiNormParams& params) {
    params.check_resolution(field.spec());
    const double h2 = field.spec().h() * field.spec().h();
    std::vector<double> terms;
    terms.reserve(params.radii.size());
    for (double r : params.radii) {
        DiskStencil stencil(r, field.n());
        const std::int64_t dev = indicator_deviation(field, stencil);
        terms.push_back(h2 * static_cast<double>(dev) / static_cast<double>(stencil.count()));
    }
    return terms;
}

double bianchini_seminorm(const IndicatorField& field, const SemiNormParams& params) {
    const auto terms = seminorm_profile(field, params);
    CompensatedSum total;
    for (std::size_t j = 0; j < terms.size(); ++j) total.add(params.weights[j] * terms[j]);
    return total.value();
}

double bianchini_seminorm(const ScalarField& field, const SemiNormParams& params) {
    params.check_resolution(field.spec());
    const double h2 = field.spec().h() * field.spec().h();
    const auto f = field.values();
    CompensatedSum total;
    for (std::size_t j = 0; j < params.radii.size(); ++j) {
        DiskStencil stencil(params.radii[j], field.n());
        const ScalarField avg = ball_averages(field, stencil);
        const auto a = avg.values();
        CompensatedSum s;
        for (std::size_t k = 0; k < f.size(); ++k) s.add(std::abs(f[k] - a[k]));
        total.add(params.weights[j] * h2 * s.value());
    }
    return total.value();
}

ScalarField fA_of(const IndicatorField& field) {
    const auto cells = field.cells();
    std::vector<double> v(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) v[k] = cells[k] ? 1.0 : -1.0;
    return ScalarField(field.spec(), std::move(v));
}

namespace {

template <typename Weight>
double weighted_energy(const ScalarField& field, Weight&& weight) {
    const int n = field.n();
    const auto values = field.values();
    const auto spectrum = dft2_full(std::vector<double>(values.begin(), values.end()), n);
    const double h2 = field.spec().h() * field.spec().h();
    CompensatedSum total;
    for (int ky = 0; ky < n; ++ky) {
        const int xy = ky < n / 2 ? ky : ky - n;
        for (int kx = 0; kx < n; ++kx) {
            const int xx = kx < n / 2 ? kx : kx - n;
            const double w = weight(xx, xy);
            if (w == 0.0) continue;
            const auto c = spectrum[static_cast<std::size_t>(ky) * n + kx] * h2;
            total.add(std::norm(c) * w);
        }
    }
    return total.value();
}

}  // namespace

double leger_V(const ScalarField& field) {
    return weighted_energy(field, [](int a, int b) {
        if (a == 0 && b == 0) return 0.0;
        return 0.5 * std::log(static_cast<double>(a) * a + static_cast<double>(b) * b);
    });
}

double fourier_energy(const ScalarField& field) {
    return weighted_energy(field, [](int, int) { return 1.0; });
}

}  // namespace mixlab
