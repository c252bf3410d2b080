#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mixlab {

/// Uniform periodic grid on the unit torus: N cells per side, N a power of
/// two, N >= 4. Cell (i, j) covers [i h, (i+1) h) x [j h, (j+1) h).
class GridSpec {
public:
    explicit GridSpec(int n);

    int n() const { return n_; }
    double h() const { return 1.0 / n_; }
    std::size_t cell_count() const { return static_cast<std::size_t>(n_) * n_; }

    /// Reduces an integer coordinate to [0, N).
    int wrap(int k) const {
        const int r = k % n_;
        return r < 0 ? r + n_ : r;
    }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(wrap(j)) * n_ + wrap(i);
    }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    int n_;
};

bool is_power_of_two(long long v);

/// Indicator of a set A on the torus, sampled at cell centers. Storage is
/// row-major: row j holds cells (0, j) ... (N-1, j).
class IndicatorField {
public:
    explicit IndicatorField(GridSpec spec);
    IndicatorField(GridSpec spec, std::vector<std::uint8_t> cells);

    const GridSpec& spec() const { return spec_; }
    int n() const { return spec_.n(); }

    bool at(int i, int j) const { return cells_[spec_.index(i, j)] != 0; }
    void set(int i, int j, bool v) { cells_[spec_.index(i, j)] = v ? 1 : 0; }

    std::span<const std::uint8_t> cells() const { return cells_; }

    std::int64_t count() const;
    double measure() const;

    IndicatorField complement() const;
    /// Field B with B(i + di, j + dj) = A(i, j).
    IndicatorField translated(int di, int dj) const;
    /// Whole-grid counter-clockwise quarter turn about the origin corner.
    IndicatorField rotated_quarter() const;

    friend bool operator==(const IndicatorField&, const IndicatorField&) = default;

private:
    GridSpec spec_;
    std::vector<std::uint8_t> cells_;
};

/// Real samples at cell centers. Entries must be finite.
class ScalarField {
public:
    explicit ScalarField(GridSpec spec, double fill = 0.0);
    ScalarField(GridSpec spec, std::vector<double> values);

    const GridSpec& spec() const { return spec_; }
    int n() const { return spec_.n(); }

    double at(int i, int j) const { return values_[spec_.index(i, j)]; }
    void set(int i, int j, double v) { values_[spec_.index(i, j)] = v; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    double mean() const;

    static ScalarField from_indicator(const IndicatorField& field);

private:
    GridSpec spec_;
    std::vector<double> values_;
};

/// Discrete closed ball: integer offsets whose centers lie within geodesic
/// distance r of the origin cell center. Boundary ties are included.
class DiskStencil {
public:
    DiskStencil(double radius, int n);

    double radius() const { return radius_; }
    int grid_n() const { return n_; }
    /// Largest |dj| present.
    int reach() const { return reach_; }
    /// Half-width of the row at vertical offset dj, or -1 when the row is empty.
    int row_halfwidth(int dj) const;
    std::int64_t count() const { return count_; }
    bool contains(int di, int dj) const;

    struct Offset {
        int di;
        int dj;
    };
    std::vector<Offset> offsets() const;

private:
    double radius_;
    int n_;
    double threshold_;  // (r / h)^2 with a one-ulp-scale allowance for ties
    int reach_;
    std::vector<int> halfwidths_;  // indexed by dj + reach_
    std::int64_t count_;
};

IndicatorField make_half_torus(GridSpec spec);
IndicatorField make_checkerboard(GridSpec spec, int m);

/// Number of set cells inside the ball around every cell center.
std::vector<std::int32_t> ball_counts(const IndicatorField& field, const DiskStencil& stencil);

/// |A ∩ B_r(x)| / |B_r(x)| at every cell center.
ScalarField ball_sums(const IndicatorField& field, const DiskStencil& stencil);

/// Ball average of a real field at every cell center.
ScalarField ball_averages(const ScalarField& field, const DiskStencil& stencil);

/// h^2 times the number of cells where the fields differ.
double symmetric_difference_measure(const IndicatorField& a, const IndicatorField& b);

}  // namespace mixlab
