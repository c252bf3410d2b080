#pragma once

#include "mixlab/bianchini.hpp"
#include "mixlab/grid.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace mixlab {

using Vec2 = std::array<double, 2>;
using VelocitySampler = std::function<Vec2(const Vec2&)>;

/// Divergence-free flows with closed-form flow maps.
class AnalyticFlow {
public:
    enum class Family { Shear, AlternatingShear, Translation };

    /// v = (0, a sin 2 pi x1).
    static AnalyticFlow shear(double a);
    /// v = (0, a sin 2 pi x1) for t < T/2, then (a sin 2 pi x2, 0).
    static AnalyticFlow alternating_shear(double a, double period);
    /// v = (c1, c2).
    static AnalyticFlow translation(double c1, double c2);

    Family family() const { return family_; }
    std::string name() const;

    Vec2 velocity(const Vec2& x, double t) const;
    /// Phi_t(x), not reduced modulo 1.
    Vec2 map(const Vec2& x, double t) const;
    Vec2 inverse(const Vec2& x, double t) const;

    VelocitySampler at_time(double t) const;

private:
    AnalyticFlow(Family f, double a, double b, double c) : family_(f), p0_(a), p1_(b), p2_(c) {}

    Family family_;
    double p0_, p1_, p2_;
};

/// Pullback sampling: output cell is set iff Phi_t^{-1}(center) falls in a
/// set cell.
IndicatorField advect_set(const IndicatorField& field, const AnalyticFlow& flow, double t);

struct FormSpec {
    double eps = 1.0 / 16.0;
    double outer = 0.25;
};

/// Periodic annulus-truncated singular form on cell-center pairs
/// h^4 sum_{eps <= |x-y| <= R} <x-y, b(x)-b(y)> / |x-y|^4 g(y) f(x).
/// Evaluated with FFT convolutions; kernels are cached per (N, eps, R).
double singular_form_periodic(const ScalarField& f, const ScalarField& g, const VelocitySampler& b,
                              const FormSpec& spec);

struct Prop22Check {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double seminorm_start = 0.0;
    double seminorm_end = 0.0;
};

/// Semi-norm change of 1_A under Phi_T against (1 / 2 pi) times the
/// time integral of the singular form (midpoint rule with `steps` nodes).
Prop22Check verify_prop22(const IndicatorField& field, const AnalyticFlow& flow, double T,
                          const SemiNormParams& params, int steps);

/// Samples on a planar lattice: value k covers the cell with lower-left
/// corner (x0 + i h, y0 + j h), row-major in j.
struct PlanarSamples {
    double x0 = 0.0;
    double y0 = 0.0;
    double h = 0.0;
    int nx = 0;
    int ny = 0;
    std::vector<double> values;

    Vec2 center(int i, int j) const { return {x0 + (i + 0.5) * h, y0 + (j + 0.5) * h}; }
};

/// Cell-average-free indicator sampling of a rectangle list.
PlanarSamples sample_rectangles(const std::vector<std::array<double, 4>>& rects, double x0, double y0,
                                double h, int nx, int ny);

/// Non-periodic version of the annulus form over pairs of lattice centers.
double singular_form_planar(const PlanarSamples& f, const PlanarSamples& g, const VelocitySampler& b,
                            const FormSpec& spec);

}  // namespace mixlab
