#include "mixlab/flow.hpp"

#include "mixlab/fourier.hpp"
#include "mixlab/parallel.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace mixlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

AnalyticFlow AnalyticFlow::shear(double a) { return AnalyticFlow(Family::Shear, a, 0.0, 0.0); }

AnalyticFlow AnalyticFlow::alternating_shear(double a, double period) {
    if (!(period > 0.0)) throw std::invalid_argument("alternating shear needs a positive period");
    return AnalyticFlow(Family::AlternatingShear, a, period, 0.0);
}

AnalyticFlow AnalyticFlow::translation(double c1, double c2) {
    return AnalyticFlow(Family::Translation, c1, c2, 0.0);
}

std::string AnalyticFlow::name() const {
    switch (family_) {
        case Family::Shear: return "shear";
        case Family::AlternatingShear: return "alternating";
        default: return "translation";
    }
}

Vec2 AnalyticFlow::velocity(const Vec2& x, double t) const {
    switch (family_) {
        case Family::Shear: return {0.0, p0_ * std::sin(kTwoPi * x[0])};
        case Family::AlternatingShear:
            if (t < 0.5 * p1_) return {0.0, p0_ * std::sin(kTwoPi * x[0])};
            return {p0_ * std::sin(kTwoPi * x[1]), 0.0};
        default: return {p0_, p1_};
    }
}

Vec2 AnalyticFlow::map(const Vec2& x, double t) const {
    switch (family_) {
        case Family::Shear: return {x[0], x[1] + p0_ * t * std::sin(kTwoPi * x[0])};
        case Family::AlternatingShear: {
            const double t1 = std::min(t, 0.5 * p1_);
            Vec2 y{x[0], x[1] + p0_ * t1 * std::sin(kTwoPi * x[0])};
            if (t > 0.5 * p1_) y[0] += p0_ * (t - 0.5 * p1_) * std::sin(kTwoPi * y[1]);
            return y;
        }
        default: return {x[0] + p0_ * t, x[1] + p1_ * t};
    }
}

Vec2 AnalyticFlow::inverse(const Vec2& x, double t) const {
    switch (family_) {
        case Family::Shear: return {x[0], x[1] - p0_ * t * std::sin(kTwoPi * x[0])};
        case Family::AlternatingShear: {
            Vec2 y = x;
            if (t > 0.5 * p1_) y[0] -= p0_ * (t - 0.5 * p1_) * std::sin(kTwoPi * y[1]);
            const double t1 = std::min(t, 0.5 * p1_);
            y[1] -= p0_ * t1 * std::sin(kTwoPi * y[0]);
            return y;
        }
        default: return {x[0] - p0_ * t, x[1] - p1_ * t};
    }
}

VelocitySampler AnalyticFlow::at_time(double t) const {
    AnalyticFlow copy = *this;
    return [copy, t](const Vec2& x) { return copy.velocity(x, t); };
}

IndicatorField advect_set(const IndicatorField& field, const AnalyticFlow& flow, double t) {
    const int n = field.n();
    const double h = field.spec().h();
    IndicatorField out(field.spec());
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Vec2 p = flow.inverse({(i + 0.5) * h, (j + 0.5) * h}, t);
            const int pi = static_cast<int>(std::floor(p[0] * n));
            const int pj = static_cast<int>(std::floor(p[1] * n));
            out.set(i, j, field.at(pi, pj));
        }
    }
    return out;
}

namespace {

struct KernelPair {
    std::unique_ptr<PeriodicFft> fft;
    std::vector<std::complex<double>> k1;
    std::vector<std::complex<double>> k2;
};

const KernelPair& annulus_kernels(int n, double eps, double outer) {
    static std::mutex mutex;
    static std::map<std::tuple<int, double, double>, std::unique_ptr<KernelPair>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{n, eps, outer}];
    if (slot) return *slot;

    auto kp = std::make_unique<KernelPair>();
    kp->fft = std::make_unique<PeriodicFft>(n);
    const double h = 1.0 / n;
    const double lo2 = eps * eps * (1.0 - 1e-12);
    const double hi2 = outer * outer * (1.0 + 1e-12);
    std::vector<double> a1(static_cast<std::size_t>(n) * n, 0.0), a2(a1.size(), 0.0);
    for (int dj = -n / 2 + 1; dj <= n / 2; ++dj) {
        for (int di = -n / 2 + 1; di <= n / 2; ++di) {
            const double u1 = di * h, u2 = dj * h;
            const double r2 = u1 * u1 + u2 * u2;
            if (r2 < lo2 || r2 > hi2) continue;
            const std::size_t k = static_cast<std::size_t>((dj + n) % n) * n + (di + n) % n;
            a1[k] = u1 / (r2 * r2);
            a2[k] = u2 / (r2 * r2);
        }
    }
    kp->k1 = kp->fft->forward(a1);
    kp->k2 = kp->fft->forward(a2);
    slot = std::move(kp);
    return *slot;
}

}  // namespace

double singular_form_periodic(const ScalarField& f, const ScalarField& g, const VelocitySampler& b,
                              const FormSpec& spec) {
    if (!(f.spec() == g.spec())) throw std::invalid_argument("fields live on different grids");
    const int n = f.n();
    const double h = f.spec().h();
    if (spec.eps < 2.0 * h * (1.0 - 1e-12)) throw std::invalid_argument("eps below twice the cell width");
    if (!(spec.outer > spec.eps) || spec.outer > 0.25) {
        throw std::invalid_argument("annulus must satisfy eps < R <= 1/4");
    }
    const KernelPair& kp = annulus_kernels(n, spec.eps, spec.outer);

    const std::size_t cells = static_cast<std::size_t>(n) * n;
    std::vector<double> b1(cells), b2(cells);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Vec2 v = b({(i + 0.5) * h, (j + 0.5) * h});
            b1[static_cast<std::size_t>(j) * n + i] = v[0];
            b2[static_cast<std::size_t>(j) * n + i] = v[1];
        }
    }
    const auto gv = g.values();
    std::vector<double> gvec(gv.begin(), gv.end()), bg1(cells), bg2(cells);
    for (std::size_t k = 0; k < cells; ++k) {
        bg1[k] = b1[k] * gvec[k];
        bg2[k] = b2[k] * gvec[k];
    }
    const auto c1 = kp.fft->convolve(kp.k1, gvec);
    const auto c2 = kp.fft->convolve(kp.k2, gvec);
    const auto d1 = kp.fft->convolve(kp.k1, bg1);
    const auto d2 = kp.fft->convolve(kp.k2, bg2);

    const auto fv = f.values();
    CompensatedSum total;
    for (std::size_t k = 0; k < cells; ++k) {
        total.add(fv[k] * ((b1[k] * c1[k] - d1[k]) + (b2[k] * c2[k] - d2[k])));
    }
    const double h2 = h * h;
    return h2 * h2 * total.value();
}

Prop22Check verify_prop22(const IndicatorField& field, const AnalyticFlow& flow, double T,
                          const SemiNormParams& params, int steps) {
    if (steps < 1) throw std::invalid_argument("time integration needs at least one step");
    if (!(T >= 0.0)) throw std::invalid_argument("final time must be nonnegative");
    Prop22Check out;
    out.seminorm_start = bianchini_seminorm(field, params);
    out.seminorm_end = bianchini_seminorm(advect_set(field, flow, T), params);
    out.lhs = out.seminorm_end - out.seminorm_start;

    FormSpec spec{params.eps, 0.25};
    const double dt = T / steps;
    CompensatedSum integral;
    for (int k = 0; k < steps; ++k) {
        const double t = (k + 0.5) * dt;
        const ScalarField f = fA_of(advect_set(field, flow, t));
        integral.add(dt * singular_form_periodic(f, f, flow.at_time(t), spec));
    }
    out.rhs = integral.value() / (2.0 * std::numbers::pi);
    out.gap = std::abs(out.lhs - out.rhs) / std::max({std::abs(out.lhs), std::abs(out.rhs), 1e-6});
    return out;
}

PlanarSamples sample_rectangles(const std::vector<std::array<double, 4>>& rects, double x0, double y0,
                                double h, int nx, int ny) {
    if (!(h > 0.0) || nx < 1 || ny < 1) throw std::invalid_argument("invalid planar lattice");
    PlanarSamples s{x0, y0, h, nx, ny, std::vector<double>(static_cast<std::size_t>(nx) * ny, 0.0)};
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const Vec2 c = s.center(i, j);
            for (const auto& r : rects) {
                if (c[0] >= r[0] && c[0] < r[1] && c[1] >= r[2] && c[1] < r[3]) {
                    s.values[static_cast<std::size_t>(j) * nx + i] = 1.0;
                    break;
                }
            }
        }
    }
    return s;
}

double singular_form_planar(const PlanarSamples& f, const PlanarSamples& g, const VelocitySampler& b,
                            const FormSpec& spec) {
    if (f.nx != g.nx || f.ny != g.ny || f.h != g.h || f.x0 != g.x0 || f.y0 != g.y0) {
        throw std::invalid_argument("planar samples must share one lattice");
    }
    if (spec.eps < f.h) throw std::invalid_argument("eps below the lattice step");
    if (!(spec.outer > spec.eps)) throw std::invalid_argument("annulus must satisfy eps < R");

    const double h = f.h;
    const int reach = static_cast<int>(std::floor(spec.outer / h)) + 1;
    const double lo2 = spec.eps * spec.eps * (1.0 - 1e-12);
    const double hi2 = spec.outer * spec.outer * (1.0 + 1e-12);
    struct Off {
        int di, dj;
        double k1, k2;
    };
    std::vector<Off> offs;
    for (int dj = -reach; dj <= reach; ++dj) {
        for (int di = -reach; di <= reach; ++di) {
            const double u1 = di * h, u2 = dj * h;
            const double r2 = u1 * u1 + u2 * u2;
            if (r2 < lo2 || r2 > hi2) continue;
            offs.push_back({di, dj, u1 / (r2 * r2), u2 / (r2 * r2)});
        }
    }

    const int nx = f.nx, ny = f.ny;
    std::vector<Vec2> bv(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) bv[static_cast<std::size_t>(j) * nx + i] = b(f.center(i, j));
    }
    std::vector<double> per_row(ny, 0.0);
    parallel_for(0, static_cast<std::size_t>(ny), [&](std::size_t jr) {
        const int j = static_cast<int>(jr);
        CompensatedSum row;
        for (int i = 0; i < nx; ++i) {
            const std::size_t kx = static_cast<std::size_t>(j) * nx + i;
            const double fx = f.values[kx];
            if (fx == 0.0) continue;
            double acc = 0.0;
            for (const auto& o : offs) {
                // y = x - u
                const int yi = i - o.di, yj = j - o.dj;
                if (yi < 0 || yi >= nx || yj < 0 || yj >= ny) continue;
                const std::size_t ky = static_cast<std::size_t>(yj) * nx + yi;
                const double gy = g.values[ky];
                if (gy == 0.0) continue;
                acc += gy * (o.k1 * (bv[kx][0] - bv[ky][0]) + o.k2 * (bv[kx][1] - bv[ky][1]));
            }
            row.add(fx * acc);
        }
        per_row[jr] = row.value();
    });
    CompensatedSum total;
    for (double v : per_row) total.add(v);
    const double h2 = h * h;
    return h2 * h2 * total.value();
}

}  // namespace mixlab
