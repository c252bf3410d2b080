#include "mixlab/counterexample.hpp"

#include "mixlab/parallel.hpp"
#include "mixlab/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace mixlab {

using u128 = unsigned __int128;
using i128 = __int128;

namespace {

bool rects_overlap(const Rect& a, const Rect& b) {
    return a.x.lo < b.x.hi && b.x.lo < a.x.hi && a.y.lo < b.y.hi && b.y.lo < a.y.hi;
}

void check_rect(const Rect& r, RectUnion::Side side) {
    if (!(r.x.hi > r.x.lo) || !(r.y.hi > r.y.lo)) throw std::invalid_argument("degenerate rectangle");
    if (side == RectUnion::Side::Left && r.x.hi > 0.0) {
        throw std::invalid_argument("left rectangles must satisfy x2 <= 0");
    }
    if (side == RectUnion::Side::Right && r.x.lo < 0.0) {
        throw std::invalid_argument("right rectangles must satisfy x1 >= 0");
    }
}

// Full 10-point Gauss-Legendre rule on [-1, 1].
struct Rule10 {
    std::array<double, 10> x{};
    std::array<double, 10> w{};
    Rule10() {
        using G = boost::math::quadrature::gauss<double, 10>;
        const auto& a = G::abscissa();
        const auto& wt = G::weights();
        for (std::size_t i = 0; i < a.size(); ++i) {
            x[2 * i] = -a[i];
            x[2 * i + 1] = a[i];
            w[2 * i] = wt[i];
            w[2 * i + 1] = wt[i];
        }
    }
};

const Rule10& rule10() {
    static const Rule10 r;
    return r;
}

// Product rule for the inner integral when both intervals are short
// compared with their distance from the kernel's singular set.
double inner_product_rule(double u, Interval JL, Interval JR) {
    const Rule10& g = rule10();
    const double cx = 0.5 * (JL.lo + JL.hi), hx = 0.5 * JL.length();
    const double cy = 0.5 * (JR.lo + JR.hi), hy = 0.5 * JR.length();
    double total = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double x2 = cx + hx * g.x[i];
        double row = 0.0;
        for (int j = 0; j < 10; ++j) row += g.w[j] * shear_kernel(u, x2 - (cy + hy * g.x[j]));
        total += g.w[i] * row;
    }
    return total * hx * hy;
}

}  // namespace

RectUnion::RectUnion(Side side, std::vector<Rect> rects) : side_(side) {
    for (const auto& r : rects) add(r);
}

void RectUnion::add(const Rect& r) {
    check_rect(r, side_);
    for (const auto& o : rects_) {
        if (rects_overlap(o, r)) throw std::invalid_argument("rectangles in a union must be interior-disjoint");
    }
    rects_.push_back(r);
}

void RectUnion::add_unchecked(const Rect& r) {
    check_rect(r, side_);
    rects_.push_back(r);
}

double shear_kernel(double r, double s) {
    const double d = r * r + s * s;
    return s / (d * d);
}

double kernel_pair_integral(double u, Interval JL, Interval JR) {
    if (!(u > 0.0)) throw std::invalid_argument("horizontal separation must be positive");
    if (!(JL.length() > 0.0) || !(JR.length() > 0.0)) throw std::invalid_argument("degenerate interval");
    const double smin = JL.lo - JR.hi;
    const double smax = JL.hi - JR.lo;
    const double gap = (smin <= 0.0 && smax >= 0.0) ? 0.0 : std::min(std::abs(smin), std::abs(smax));
    const double d = std::hypot(u, gap);
    if (std::max(JL.length(), JR.length()) <= 0.25 * d) return inner_product_rule(u, JL, JR);

    // atan((a-b2)/u) - atan((a-b1)/u) = -atan2(u (b2-b1), u^2 + (a-b2)(a-b1))
    const double wb = JR.length();
    auto G = [&](double a) { return std::atan2(u * wb, u * u + (a - JR.hi) * (a - JR.lo)); };
    return (G(JL.lo) - G(JL.hi)) / (2.0 * u);
}

double kernel_block_integral(Interval IL, Interval IR, Interval JL, Interval JR, double abs_tol,
                             double rel_tol) {
    if (!(IL.length() > 0.0) || !(IR.length() > 0.0) || !(JL.length() > 0.0) || !(JR.length() > 0.0)) {
        throw std::invalid_argument("degenerate interval in block integral");
    }
    if (IL.hi > 0.0 || IR.lo < 0.0) {
        throw std::invalid_argument("x-intervals must lie on opposite sides of x1 = 0");
    }
    // u = |x1| + y1 has a trapezoidal density on [p0 + q0, p1 + q1].
    const double p0 = -IL.hi, p1 = -IL.lo, q0 = IR.lo, q1 = IR.hi;
    auto density = [=](double u) {
        return std::max(0.0, std::min(p1, u - q0) - std::max(p0, u - q1));
    };
    auto integrand = [&](double u) { return density(u) * kernel_pair_integral(u, JL, JR); };
    const double a = p0 + q0;
    const double k1 = std::min(p0 + q1, p1 + q0);
    const double k2 = std::max(p0 + q1, p1 + q0);
    const double b = p1 + q1;
    double total = 0.0;
    const double pieces[4] = {a, k1, k2, b};
    for (int i = 0; i < 3; ++i) {
        if (pieces[i + 1] > pieces[i]) {
            total += integrate_adaptive(integrand, pieces[i], pieces[i + 1], abs_tol / 3.0, rel_tol).value;
        }
    }
    return total;
}

double evaluate_I(const RectUnion& A, const RectUnion& B) {
    if (A.side() != RectUnion::Side::Left || B.side() != RectUnion::Side::Right) {
        throw std::invalid_argument("evaluate_I expects a left union and a right union");
    }
    const auto& ra = A.rects();
    const auto& rb = B.rects();
    std::vector<double> partial(ra.size(), 0.0);
    parallel_for(0, ra.size(), [&](std::size_t i) {
        CompensatedSum s;
        for (const auto& r : rb) s.add(kernel_block_integral(ra[i].x, r.x, ra[i].y, r.y));
        partial[i] = s.value();
    });
    CompensatedSum total;
    for (double v : partial) total.add(v);
    return total.value();
}

double union_distance(const RectUnion& A, const RectUnion& B) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : A.rects()) {
        for (const auto& b : B.rects()) {
            const double dx = std::max({0.0, a.x.lo - b.x.hi, b.x.lo - a.x.hi});
            const double dy = std::max({0.0, a.y.lo - b.y.hi, b.y.lo - a.y.hi});
            best = std::min(best, std::hypot(dx, dy));
        }
    }
    return best;
}

// ---------------------------------------------------------------------------

void MultiscaleParams::validate() const {
    if (M < 11) throw std::invalid_argument("M must be at least 11");
    if (L < 2) throw std::invalid_argument("L must be at least 2");
    if ((L - 1) * M > 120) throw std::invalid_argument("(L - 1) M exceeds the supported 120 bits");
}

double MultiscaleParams::eps() const { return std::ldexp(1.0, -L * M); }

double MultiscaleParams::log_inv_eps() const { return L * M * std::numbers::ln2; }

double Comb::delta() const { return std::ldexp(1.0, -exponent); }

unsigned __int128 column_count(int k, int M) {
    if (k < 0 || M < 1 || k * M > 126) throw std::invalid_argument("column index out of range");
    const u128 pow = u128{1} << (k * M);
    return pow / static_cast<u128>(M + 1) + 1;
}

double column_density(int k, int M) {
    if (k < 0 || M < 1 || k * M > 126) throw std::invalid_argument("column index out of range");
    const u128 pow = u128{1} << (k * M);
    const double r = static_cast<double>(pow % static_cast<u128>(M + 1));
    const double delta = std::ldexp(1.0, -k * M);
    return (1.0 - r * delta) / (M + 1) + delta;
}

MultiscaleSets build_multiscale_sets(const MultiscaleParams& p) {
    p.validate();
    MultiscaleSets s{p, {}, {}};
    for (int k = 1; k <= p.L - 1; ++k) {
        const u128 c = column_count(k, p.M);
        s.left.push_back({k * p.M, c, true, 2, p.M});
        s.right.push_back({k * p.M, c, false, 0, p.M});
    }
    return s;
}

RectUnion materialize(const std::vector<Comb>& combs, std::size_t limit) {
    if (combs.empty()) throw std::invalid_argument("no combs to materialize");
    const bool left = combs.front().left;
    u128 total = 0;
    for (const auto& c : combs) {
        if (c.left != left) throw std::invalid_argument("combs mix both sides");
        total += c.count;
    }
    if (total > limit) {
        throw std::invalid_argument("set has too many rectangles to materialize");
    }
    RectUnion u(left ? RectUnion::Side::Left : RectUnion::Side::Right);
    for (const auto& c : combs) {
        const double d = c.delta();
        const Interval x = left ? Interval{-d, -0.5 * d} : Interval{0.5 * d, d};
        const auto count = static_cast<std::uint64_t>(c.count);
        for (std::uint64_t n = 0; n < count; ++n) {
            const double y0 = (static_cast<double>(c.spacing) * n + c.offset) * d;
            u.add_unchecked({x, {y0, y0 + d}});
        }
    }
    return u;
}

double unit_block_integral(int M, long long d) {
    const double shift = static_cast<double>(M) * d;
    return kernel_block_integral({-1.0, -0.5}, {0.5, 1.0}, {shift + 2.0, shift + 3.0}, {0.0, 1.0}, 0.0,
                                 1e-13);
}

double unit_pair_sum(int M, long long d) {
    if (d <= 0) throw std::invalid_argument("offset must be positive");
    const double shift = static_cast<double>(M) * d;
    const Rule10& g = rule10();
    // For u in [1, 2] the density of |x1| + y1 is 1/2 - |u - 3/2|.
    auto at_u = [&](double u) {
        double total = 0.0;
        for (int i = 0; i < 10; ++i) {
            const double x2 = 2.5 + 0.5 * g.x[i];
            double row = 0.0;
            for (int j = 0; j < 10; ++j) {
                const double t = x2 - (0.5 + 0.5 * g.x[j]);
                row += g.w[j] * (shear_kernel(u, shift + t) - shear_kernel(u, shift - t));
            }
            total += g.w[i] * row;
        }
        return 0.25 * total * (0.5 - std::abs(u - 1.5));
    };
    return gauss_legendre20(at_u, 1.0, 1.5) + gauss_legendre20(at_u, 1.5, 2.0);
}

// ---------------------------------------------------------------------------

namespace {

// psi(t) = integral over x in [t, t+1] of 1 / (2 (u^2 + x^2)).
double psi(double u, double t) { return std::atan2(u, u * u + t * (t + 1.0)) / (2.0 * u); }

double psi_prime(double u, double t) {
    return -(2.0 * t + 1.0) / (2.0 * (u * u + (t + 1.0) * (t + 1.0)) * (u * u + t * t));
}

double atan_over(double z) {
    if (std::abs(z) < 1e-8) return 1.0 - z * z / 3.0;
    return std::atan(z) / z;
}

// Integral of psi over [A, B] with 1 <= A < B, via v = 1 / t.
double psi_integral_positive(double u, double A, double B) {
    auto h = [u](double v) {
        const double den = 1.0 + v + u * u * v * v;
        const double z = u * v * v / den;
        return atan_over(z) / (2.0 * den);
    };
    const double vlo = std::isinf(B) ? 0.0 : 1.0 / B;
    return integrate_adaptive(h, vlo, 1.0 / A, 0.0, 1e-13).value;
}

// Integral of psi over [ta, tb] where the range avoids (-1 - T0, T0).
double psi_integral(double u, double ta, double tb) {
    if (ta >= 1.0) return psi_integral_positive(u, ta, tb);
    if (tb <= -2.0) return psi_integral_positive(u, -1.0 - tb, -1.0 - ta);
    throw std::logic_error("tail integral straddles the kernel peak");
}

// Comb of unit intervals at positions M n + o - Z, n = 0 .. count-1, with
// Z = zint + zfrac: sum of psi.
struct CombSum {
    int spacing;
    i128 count;
    double offset;

    double eval(double u, i128 zint, double zfrac) const {
        constexpr i128 W = 64;
        const double tau = offset - zfrac;
        auto t_of = [&](i128 n) { return static_cast<double>(static_cast<i128>(spacing) * n - zint) + tau; };
        i128 center = zint / spacing;
        if (center < 0) center = 0;
        if (center > count - 1) center = count - 1;
        const i128 lo = center - W < 0 ? 0 : center - W;
        const i128 hi = center + W > count - 1 ? count - 1 : center + W;
        double total = 0.0;
        for (i128 n = lo; n <= hi; ++n) total += psi(u, t_of(n));
        auto em = [&](i128 a, i128 b) {
            const double ta = t_of(a), tb = t_of(b);
            double s = psi_integral(u, ta, tb) / spacing;
            s += 0.5 * (psi(u, ta) + psi(u, tb));
            s += spacing * (psi_prime(u, tb) - psi_prime(u, ta)) / 12.0;
            return s;
        };
        if (lo > 0) total += em(0, lo - 1);
        if (hi < count - 1) total += em(hi + 1, count - 1);
        return total;
    }
};

}  // namespace

double cross_comb_integral(const Comb& a, const Comb& b) {
    if (a.left == b.left) throw std::invalid_argument("cross integral needs one left and one right comb");
    if (a.exponent == b.exponent) throw std::invalid_argument("cross integral needs different scales");
    if (a.spacing != b.spacing) throw std::invalid_argument("combs must share the spacing");
    if (a.count == 0 || b.count == 0) return 0.0;
    const Comb& coarse = a.exponent < b.exponent ? a : b;
    const Comb& fine = a.exponent < b.exponent ? b : a;
    const int shift = fine.exponent - coarse.exponent;
    if (shift > 1000) throw std::invalid_argument("scale ratio out of range");
    const int M = coarse.spacing;
    const double eta = std::ldexp(1.0, -shift);

    // In coarse units the finer comb becomes density 1/M on [Z0, Z1],
    // centered on its squares.
    const double z0 = (fine.offset + 0.5 - 0.5 * M) * eta;
    const u128 num = static_cast<u128>(M) * fine.count;
    const i128 zint = shift >= 127 ? 0 : static_cast<i128>(num >> shift);
    const u128 rem = shift >= 127 ? num : num - (static_cast<u128>(zint) << shift);
    const double z1frac = std::ldexp(static_cast<double>(rem), -shift) + z0;

    const CombSum sum{M, static_cast<i128>(coarse.count), static_cast<double>(coarse.offset)};
    const bool coarse_left = coarse.left;
    auto inner = [&](double u) {
        const double s0 = sum.eval(u, 0, z0);
        const double s1 = sum.eval(u, zint, z1frac);
        return (coarse_left ? s1 - s0 : s0 - s1) / M;
    };
    const Rule10& g = rule10();
    auto over_p = [&](double p) {
        double acc = 0.0;
        for (int j = 0; j < 10; ++j) {
            const double q = 0.75 * eta + 0.25 * eta * g.x[j];
            acc += g.w[j] * inner(p + q);
        }
        return acc * 0.25 * eta;
    };
    const double value = gauss_legendre20(over_p, 0.5, 1.0);
    return value * coarse.delta();
}

BoundsReport decompose_E(const MultiscaleParams& p) {
    p.validate();
    const MultiscaleSets sets = build_multiscale_sets(p);
    BoundsReport rep;
    rep.M = p.M;
    rep.L = p.L;
    rep.eps = p.eps();
    rep.log_inv_eps = p.log_inv_eps();
    rep.E1_paper_floor = (p.L - 1) / (1000.0 * (p.M + 1));
    rep.unit_block = unit_block_integral(p.M, 0);

    // Same level, same column: every block is a scaled copy of the unit one.
    CompensatedSum e1;
    for (int k = 1; k <= p.L - 1; ++k) e1.add(rep.unit_block * column_density(k, p.M));
    rep.E1 = e1.value();

    // Same level, columns d apart: delta_k sum_d (c_k - d) T(d).
    constexpr long long kDirect = 2048;
    double cmax = 0.0;
    for (const auto& c : sets.left) cmax = std::max(cmax, c.count_as_double());
    const long long D = static_cast<long long>(std::min<double>(kDirect, cmax - 1.0));
    rep.direct_offsets = static_cast<int>(std::max(0LL, D));
    std::vector<double> T(static_cast<std::size_t>(std::max(0LL, D)) + 1, 0.0);
    parallel_for(1, static_cast<std::size_t>(std::max(0LL, D)) + 1,
                 [&](std::size_t d) { T[d] = unit_pair_sum(p.M, static_cast<long long>(d)); });
    const double tail_coeff = D >= 1 ? T[D] * std::pow(static_cast<double>(p.M) * D, 4) : 0.0;

    CompensatedSum e2;
    for (int k = 1; k <= p.L - 1; ++k) {
        const Comb& comb = sets.left[k - 1];
        const double density = column_density(k, p.M);
        const double delta = comb.delta();
        const double c = comb.count_as_double();
        const long long dk = static_cast<long long>(std::min<double>(static_cast<double>(D), c - 1.0));
        CompensatedSum s0, s1;
        for (long long d = 1; d <= dk; ++d) {
            s0.add(T[d]);
            s1.add(static_cast<double>(d) * T[d]);
        }
        double level = density * s0.value() - delta * s1.value();
        if (c - 1.0 > static_cast<double>(D) && D >= 1) {
            rep.E2_tail_used = true;
            const double a = D + 0.5, b = c - 0.5;
            const double z4 = (1.0 / (a * a * a) - 1.0 / (b * b * b)) / 3.0;
            const double z3 = (1.0 / (a * a) - 1.0 / (b * b)) / 2.0;
            const double m4 = std::pow(static_cast<double>(p.M), -4);
            level += tail_coeff * m4 * (density * z4 - delta * z3);
        }
        e2.add(level);
    }
    rep.E2 = e2.value();

    // Different levels.
    CompensatedSum e3;
    for (int ka = 1; ka <= p.L - 1; ++ka) {
        for (int kb = 1; kb <= p.L - 1; ++kb) {
            if (ka == kb) continue;
            e3.add(cross_comb_integral(sets.left[ka - 1], sets.right[kb - 1]));
        }
    }
    rep.E3 = e3.value();

    rep.E2_abs = std::abs(rep.E2);
    rep.E3_abs = std::abs(rep.E3);
    rep.I_total = rep.E1 + rep.E2 + rep.E3;
    const double M = p.M;
    rep.E2_over_L_M3 = rep.E2_abs / (p.L / (M * M * M));
    rep.E2_over_L_M4 = rep.E2_abs / (p.L / (M * M * M * M));
    rep.E3_over_L_2M = rep.E3_abs / (p.L * std::ldexp(1.0, -p.M));
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void fill_side(RectUnion& u, double eps, std::mt19937_64& rng) {
    const bool left = u.side() == RectUnion::Side::Left;
    const int wanted = 1 + static_cast<int>(rng() % 4);
    const double log_eps = std::log(eps);
    for (int attempt = 0; attempt < 64 && static_cast<int>(u.rects().size()) < wanted; ++attempt) {
        const double scale = std::exp(log_eps * uniform01(rng));
        const double width = std::min(scale * (0.5 + 0.5 * uniform01(rng)), 1.0 - eps / 2);
        const double near = eps / 2 + (1.0 - eps / 2 - width) * std::pow(uniform01(rng), 4.0);
        const double height = std::min(scale * (0.5 + 1.5 * uniform01(rng)), 2.0);
        const double y0 = -1.0 + (2.0 - height) * uniform01(rng);
        Interval x = left ? Interval{-(near + width), -near} : Interval{near, near + width};
        Rect r{x, {y0, y0 + height}};
        bool clash = false;
        for (const auto& o : u.rects()) clash = clash || rects_overlap(o, r);
        if (!clash) u.add_unchecked(r);
    }
}

}  // namespace

void probe_sets(double eps, std::uint64_t seed, int trial, RectUnion& A, RectUnion& B) {
    if (!(eps > 0.0) || !(eps < 0.5)) throw std::invalid_argument("probe separation must lie in (0, 1/2)");
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);
    A = RectUnion(RectUnion::Side::Left);
    B = RectUnion(RectUnion::Side::Right);
    fill_side(A, eps, rng);
    fill_side(B, eps, rng);
}

ProbeReport upper_bound_probe(double eps, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("probe needs at least one trial");
    ProbeReport rep;
    rep.ratios.assign(trials, 0.0);
    const double denom = std::log(1.0 / eps);
    for (int t = 0; t < trials; ++t) {
        RectUnion A(RectUnion::Side::Left), B(RectUnion::Side::Right);
        probe_sets(eps, seed, t, A, B);
        rep.ratios[t] = std::abs(evaluate_I(A, B)) / denom;
        if (rep.ratios[t] > rep.max_ratio || rep.worst_trial < 0) {
            rep.max_ratio = rep.ratios[t];
            rep.worst_trial = t;
        }
    }
    return rep;
}

}  // namespace mixlab
