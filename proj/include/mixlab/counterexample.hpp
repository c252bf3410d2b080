#pragma once

#include <cstdint>
#include <vector>

namespace mixlab {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

struct Rect {
    Interval x;
    Interval y;
};

/// Union of interior-disjoint rectangles on one side of the line x1 = 0.
class RectUnion {
public:
    enum class Side { Left, Right };

    explicit RectUnion(Side side) : side_(side) {}
    RectUnion(Side side, std::vector<Rect> rects);

    Side side() const { return side_; }
    const std::vector<Rect>& rects() const { return rects_; }
    bool empty() const { return rects_.empty(); }

    /// Adds a rectangle after checking the side constraint and disjointness.
    void add(const Rect& r);
    /// Adds without the O(n) overlap check (callers guarantee disjointness).
    void add_unchecked(const Rect& r);

private:
    Side side_;
    std::vector<Rect> rects_;
};

/// Step-shear kernel K_r(s) = s / (r^2 + s^2)^2.
double shear_kernel(double r, double s);

/// Inner integral over x2 in JL, y2 in JR of K_u(x2 - y2), closed form.
double kernel_pair_integral(double u, Interval JL, Interval JR);

/// Integral of K_{|x1 - y1|}(x2 - y2) over (IL x JL) x (IR x JR), with IL
/// left of x1 = 0 and IR right of it.
double kernel_block_integral(Interval IL, Interval IR, Interval JL, Interval JR,
                             double abs_tol = 1e-12, double rel_tol = 1e-9);

/// Sum of block integrals over all rectangle pairs, lexicographic order.
double evaluate_I(const RectUnion& A, const RectUnion& B);

/// Smallest Euclidean distance between rectangles of A and of B.
double union_distance(const RectUnion& A, const RectUnion& B);

struct MultiscaleParams {
    int M = 16;
    int L = 2;

    void validate() const;
    /// 2^{-LM}.
    double eps() const;
    double log_inv_eps() const;
};

/// One column of squares at scale delta = 2^{-exponent}: x-interval
/// [-delta, -delta/2] (left) or [delta/2, delta] (right); the n-th square
/// spans y in [(spacing n + offset) delta, (spacing n + offset + 1) delta].
struct Comb {
    int exponent = 0;
    unsigned __int128 count = 0;
    bool left = true;
    int offset = 0;
    int spacing = 1;

    double delta() const;
    double count_as_double() const { return static_cast<double>(count); }
};

/// floor(2^{kM} / (M + 1)) + 1.
unsigned __int128 column_count(int k, int M);
/// column_count(k, M) * 2^{-kM}, evaluated without overflow or cancellation.
double column_density(int k, int M);

struct MultiscaleSets {
    MultiscaleParams params;
    std::vector<Comb> left;   // A, levels 1 .. L-1
    std::vector<Comb> right;  // B
};

MultiscaleSets build_multiscale_sets(const MultiscaleParams& p);

/// Explicit rectangles of a comb list; refuses more than `limit` rectangles.
RectUnion materialize(const std::vector<Comb>& combs, std::size_t limit = 1u << 20);

/// Block integral for the unit configuration IL = [-1,-1/2], IR = [1/2,1],
/// JL = [M d + 2, M d + 3], JR = [0, 1].
double unit_block_integral(int M, long long d);

/// Combined misaligned pair I0(d) + I0(-d) on the unit configuration.
double unit_pair_sum(int M, long long d);

/// Interaction of two combs on different scales (smeared finer comb).
double cross_comb_integral(const Comb& a, const Comb& b);

struct BoundsReport {
    int M = 0;
    int L = 0;
    double eps = 0.0;
    double log_inv_eps = 0.0;
    double unit_block = 0.0;
    double E1 = 0.0;
    double E2 = 0.0;
    double E3 = 0.0;
    double E2_abs = 0.0;
    double E3_abs = 0.0;
    double I_total = 0.0;
    double E1_paper_floor = 0.0;
    double E2_over_L_M3 = 0.0;
    double E2_over_L_M4 = 0.0;
    double E3_over_L_2M = 0.0;
    int direct_offsets = 0;  // misaligned offsets summed term by term
    bool E2_tail_used = false;
};

BoundsReport decompose_E(const MultiscaleParams& p);

struct ProbeReport {
    double max_ratio = 0.0;
    int worst_trial = -1;
    std::vector<double> ratios;
};

/// Random separated rectangle-union pairs; max |I| / log(1/eps).
ProbeReport upper_bound_probe(double eps, int trials, std::uint64_t seed);

/// The random pair drawn for trial `trial` of a probe run.
void probe_sets(double eps, std::uint64_t seed, int trial, RectUnion& A, RectUnion& B);

}  // namespace mixlab
