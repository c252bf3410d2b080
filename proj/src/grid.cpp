#include "mixlab/grid.hpp"

#include "mixlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mixlab {

bool is_power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

GridSpec::GridSpec(int n) : n_(n) {
    if (n < 4 || !is_power_of_two(n)) {
        throw std::invalid_argument("grid size must be a power of two >= 4, got " +
                                    std::to_string(n));
    }
}

// ---------------------------------------------------------------------------

IndicatorField::IndicatorField(GridSpec spec) : spec_(spec), cells_(spec.cell_count(), 0) {}

IndicatorField::IndicatorField(GridSpec spec, std::vector<std::uint8_t> cells)
    : spec_(spec), cells_(std::move(cells)) {
    if (cells_.size() != spec_.cell_count()) {
        throw std::invalid_argument("indicator storage does not match grid size");
    }
    for (auto& c : cells_) c = c ? 1 : 0;
}

std::int64_t IndicatorField::count() const {
    std::int64_t total = 0;
    for (auto c : cells_) total += c;
    return total;
}

double IndicatorField::measure() const {
    const double h = spec_.h();
    return static_cast<double>(count()) * h * h;
}

IndicatorField IndicatorField::complement() const {
    IndicatorField out(spec_);
    for (std::size_t k = 0; k < cells_.size(); ++k) out.cells_[k] = cells_[k] ? 0 : 1;
    return out;
}

IndicatorField IndicatorField::translated(int di, int dj) const {
    IndicatorField out(spec_);
    const int n = spec_.n();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) out.set(i + di, j + dj, at(i, j));
    }
    return out;
}

IndicatorField IndicatorField::rotated_quarter() const {
    // (x, y) -> (-y, x) on cell centers: cell (i, j) -> (N-1-j, i).
    IndicatorField out(spec_);
    const int n = spec_.n();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) out.set(n - 1 - j, i, at(i, j));
    }
    return out;
}

// ---------------------------------------------------------------------------

ScalarField::ScalarField(GridSpec spec, double fill)
    : spec_(spec), values_(spec.cell_count(), fill) {}

ScalarField::ScalarField(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
    if (values_.size() != spec_.cell_count()) {
        throw std::invalid_argument("scalar storage does not match grid size");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("scalar field entries must be finite");
    }
}

double ScalarField::mean() const {
    CompensatedSum s;
    for (double v : values_) s.add(v);
    return s.value() / static_cast<double>(values_.size());
}

ScalarField ScalarField::from_indicator(const IndicatorField& field) {
    std::vector<double> v(field.cells().begin(), field.cells().end());
    return ScalarField(field.spec(), std::move(v));
}

// ---------------------------------------------------------------------------

DiskStencil::DiskStencil(double radius, int n) : radius_(radius), n_(n) {
    if (!(radius > 0.0) || radius > 0.25) {
        throw std::invalid_argument("stencil radius must lie in (0, 1/4]");
    }
    const double rc = radius * n;
    threshold_ = rc * rc * (1.0 + 8.0 * std::numeric_limits<double>::epsilon());
    reach_ = static_cast<int>(std::floor(std::sqrt(threshold_)));
    while (static_cast<double>(reach_ + 1) * (reach_ + 1) <= threshold_) ++reach_;
    while (reach_ > 0 && static_cast<double>(reach_) * reach_ > threshold_) --reach_;

    halfwidths_.assign(2 * reach_ + 1, -1);
    count_ = 0;
    for (int dj = -reach_; dj <= reach_; ++dj) {
        const double rest = threshold_ - static_cast<double>(dj) * dj;
        int w = static_cast<int>(std::floor(std::sqrt(std::max(rest, 0.0))));
        while (static_cast<double>(w + 1) * (w + 1) <= rest) ++w;
        while (w >= 0 && static_cast<double>(w) * w > rest) --w;
        halfwidths_[dj + reach_] = w;
        count_ += 2 * w + 1;
    }
}

int DiskStencil::row_halfwidth(int dj) const {
    if (dj < -reach_ || dj > reach_) return -1;
    return halfwidths_[dj + reach_];
}

bool DiskStencil::contains(int di, int dj) const {
    const int w = row_halfwidth(dj);
    return w >= 0 && std::abs(di) <= w;
}

std::vector<DiskStencil::Offset> DiskStencil::offsets() const {
    std::vector<Offset> out;
    out.reserve(static_cast<std::size_t>(count_));
    for (int dj = -reach_; dj <= reach_; ++dj) {
        const int w = halfwidths_[dj + reach_];
        for (int di = -w; di <= w; ++di) out.push_back({di, dj});
    }
    return out;
}

// ---------------------------------------------------------------------------

IndicatorField make_half_torus(GridSpec spec) {
    if (spec.n() % 2 != 0) throw std::invalid_argument("half torus needs an even grid");
    IndicatorField out(spec);
    const int n = spec.n();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n / 2; ++i) out.set(i, j, true);
    }
    return out;
}

IndicatorField make_checkerboard(GridSpec spec, int m) {
    const int n = spec.n();
    if (m < 0 || m > 30 || n % (1 << m) != 0) {
        throw std::invalid_argument("checkerboard exponent must satisfy 2^m | N");
    }
    const int block = n >> m;
    IndicatorField out(spec);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) out.set(i, j, ((i / block) + (j / block)) % 2 == 0);
    }
    return out;
}

namespace {

// Row prefix sums over a periodic extension of each row by `pad` cells on
// both sides, so any window [i - w, i + w] with w <= pad is a difference of
// two entries.
template <typename T, typename Source>
std::vector<T> padded_row_prefix(int n, int pad, Source&& value) {
    const std::size_t stride = static_cast<std::size_t>(n) + 2 * pad + 1;
    std::vector<T> prefix(stride * n, T{});
    for (int j = 0; j < n; ++j) {
        T* row = prefix.data() + stride * j;
        row[0] = T{};
        for (int k = 0; k < n + 2 * pad; ++k) {
            int i = (k - pad) % n;
            if (i < 0) i += n;
            row[k + 1] = row[k] + value(i, j);
        }
    }
    return prefix;
}

template <typename T, typename Out>
void disk_window_sums(int n, const DiskStencil& stencil, const std::vector<T>& prefix,
                      std::vector<Out>& out) {
    const int pad = stencil.reach();
    const std::size_t stride = static_cast<std::size_t>(n) + 2 * pad + 1;
    out.assign(static_cast<std::size_t>(n) * n, Out{});
    parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t jrow) {
        const int j = static_cast<int>(jrow);
        Out* dst = out.data() + static_cast<std::size_t>(j) * n;
        for (int dj = -pad; dj <= pad; ++dj) {
            const int w = stencil.row_halfwidth(dj);
            if (w < 0) continue;
            int jj = (j + dj) % n;
            if (jj < 0) jj += n;
            const T* row = prefix.data() + stride * jj;
            const T* hi = row + pad + w + 1;
            const T* lo = row + pad - w;
            for (int i = 0; i < n; ++i) dst[i] += static_cast<Out>(hi[i] - lo[i]);
        }
    });
}

}  // namespace

std::vector<std::int32_t> ball_counts(const IndicatorField& field, const DiskStencil& stencil) {
    const int n = field.n();
    if (stencil.grid_n() != n) throw std::invalid_argument("stencil built for a different grid");
    if (stencil.radius() < field.spec().h()) {
        throw std::invalid_argument("ball radius below grid resolution");
    }
    const auto cells = field.cells();
    auto prefix = padded_row_prefix<std::int32_t>(
        n, stencil.reach(),
        [&](int i, int j) { return static_cast<std::int32_t>(cells[static_cast<std::size_t>(j) * n + i]); });
    std::vector<std::int32_t> out;
    disk_window_sums(n, stencil, prefix, out);
    return out;
}

ScalarField ball_sums(const IndicatorField& field, const DiskStencil& stencil) {
    const auto counts = ball_counts(field, stencil);
    const double size = static_cast<double>(stencil.count());
    std::vector<double> v(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) v[k] = counts[k] / size;
    return ScalarField(field.spec(), std::move(v));
}

ScalarField ball_averages(const ScalarField& field, const DiskStencil& stencil) {
    const int n = field.n();
    if (stencil.grid_n() != n) throw std::invalid_argument("stencil built for a different grid");
    if (stencil.radius() < field.spec().h()) {
        throw std::invalid_argument("ball radius below grid resolution");
    }
    const auto values = field.values();
    auto prefix = padded_row_prefix<double>(
        n, stencil.reach(), [&](int i, int j) { return values[static_cast<std::size_t>(j) * n + i]; });
    std::vector<double> sums;
    disk_window_sums(n, stencil, prefix, sums);
    const double inv = 1.0 / static_cast<double>(stencil.count());
    for (auto& s : sums) s *= inv;
    return ScalarField(field.spec(), std::move(sums));
}

double symmetric_difference_measure(const IndicatorField& a, const IndicatorField& b) {
    if (!(a.spec() == b.spec())) throw std::invalid_argument("fields live on different grids");
    std::int64_t diff = 0;
    const auto ca = a.cells();
    const auto cb = b.cells();
    for (std::size_t k = 0; k < ca.size(); ++k) diff += (ca[k] != cb[k]);
    const double h = a.spec().h();
    return static_cast<double>(diff) * h * h;
}

}  // namespace mixlab
