#pragma once

#include "mixlab/grid.hpp"

#include <optional>
#include <vector>

namespace mixlab {

/// Radius grid and weights for the truncated semi-norm integral over
/// [eps, 1/4] against dr/r.
struct SemiNormParams {
    double eps = 1.0 / 64.0;
    double rho = 0.0;
    double kappa = 1.0 / 3.0;
    std::vector<double> radii;
    std::vector<double> weights;

    /// Geometric radii eps * rho^j, the last one clamped to 1/4, with
    /// log-trapezoid weights summing to log(1 / (4 eps)).
    static SemiNormParams make(double eps, double rho = default_rho(), double kappa = 1.0 / 3.0);
    static double default_rho();

    /// Throws when the smallest radius is below the cell width of `spec`.
    void check_resolution(const GridSpec& spec) const;
};

struct RadiusStat {
    double r;
    double min_avg;
    double max_avg;
};

struct MixReport {
    std::optional<double> scale;  // empty: not mixed at any tested radius
    double kappa = 1.0 / 3.0;
    std::vector<RadiusStat> per_radius;
};

/// Minimum and maximum ball average of 1_E at radius r.
RadiusStat ball_average_range(const IndicatorField& field, double r);

bool is_mixed(const IndicatorField& field, double r, double kappa);

MixReport mixing_scale(const IndicatorField& field, const SemiNormParams& params);

double bianchini_seminorm(const IndicatorField& field, const SemiNormParams& params);
double bianchini_seminorm(const ScalarField& field, const SemiNormParams& params);

/// Per-radius terms h^2 sum_x |f - avg_r f| before weighting.
std::vector<double> seminorm_profile(const IndicatorField& field, const SemiNormParams& params);

ScalarField fA_of(const IndicatorField& field);

/// Sum over nonzero frequencies of |f^(xi)|^2 log|xi|, unitary normalization.
double leger_V(const ScalarField& field);

/// Parseval companion: sum over all frequencies of |f^(xi)|^2.
double fourier_energy(const ScalarField& field);

}  // namespace mixlab
