#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mixlab/counterexample.hpp"
#include "mixlab/parallel.hpp"
#include "mixlab/quadrature.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace mixlab;

TEST_CASE("quadrature self-test: half-line kernel integral") {
    for (double r : {0.1, 1.0, 3.0}) {
        auto q = integrate_adaptive([r](double s) { return shear_kernel(r, s); }, 0.0, INFINITY, 1e-14, 1e-12);
        CHECK(q.value == doctest::Approx(1.0 / (2 * r * r)).epsilon(1e-10));
    }
    CHECK(gauss_legendre20([](double x) { return x * x * x; }, 0.0, 2.0) == doctest::Approx(4.0));
}

TEST_CASE("inner kernel integral") {
    // symmetric overlap: the odd kernel integrates to zero
    CHECK(std::abs(kernel_pair_integral(0.7, {0.0, 1.0}, {0.0, 1.0})) < 1e-15);
    for (double u : {0.05, 0.5, 2.0}) {
        const Interval a{0.3, 0.9}, b{-0.4, 0.1};
        const double v = kernel_pair_integral(u, a, b);
        CHECK(std::abs(v + kernel_pair_integral(u, b, a)) < 1e-14);
        // two-dimensional Gauss rule on a refined grid
        double ref = 0.0;
        const int k = 400;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                const double x = a.lo + (i + 0.5) * a.length() / k, y = b.lo + (j + 0.5) * b.length() / k;
                ref += shear_kernel(u, x - y);
            }
        ref *= a.length() * b.length() / (static_cast<double>(k) * k);
        CHECK(v == doctest::Approx(ref).epsilon(u < 0.1 ? 1e-3 : 1e-4));
    }
    // far-field product rule and closed form agree where both apply
    const Interval a{10.0, 10.5}, b{0.0, 0.5};
    const double far = kernel_pair_integral(0.5, a, b);
    auto G = [&](double x) { return std::atan2(0.5 * 0.5, 0.25 + (x - 0.5) * (x - 0.0)); };
    CHECK(far == doctest::Approx((G(10.0) - G(10.5)) / 1.0).epsilon(1e-10));
}

TEST_CASE("block integral") {
    CHECK(std::abs(kernel_block_integral({-1, -0.5}, {0.5, 1}, {0, 1}, {0, 1})) < 1e-14);
    const double v = kernel_block_integral({-0.6, -0.1}, {0.2, 0.7}, {0.3, 0.8}, {-0.2, 0.1});
    const double w = kernel_block_integral({-0.6, -0.1}, {0.2, 0.7}, {-0.2, 0.1}, {0.3, 0.8});
    CHECK(std::abs(v + w) < 1e-10);
    const double ref = oracle::block_integral_4d<20>(-0.6, -0.1, 0.3, 0.8, 0.2, 0.7, -0.2, 0.1, 4);
    CHECK(v == doctest::Approx(ref).epsilon(1e-7));
    CHECK_THROWS_AS(kernel_block_integral({-1, -1}, {0.5, 1}, {0, 1}, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(kernel_block_integral({0.1, 0.5}, {0.5, 1}, {0, 1}, {0, 1}), std::invalid_argument);
}

TEST_CASE("block integral error control") {
    const Interval IL{-0.3, -0.01}, IR{0.005, 0.4}, JL{0.0, 0.2}, JR{0.05, 0.5};
    const double coarse = kernel_block_integral(IL, IR, JL, JR, 1e-8, 1e-6);
    const double fine = kernel_block_integral(IL, IR, JL, JR, 5e-9, 5e-7);
    CHECK(std::abs(coarse - fine) < std::max(1e-8, 1e-6 * std::abs(fine)));
}

TEST_CASE("aligned unit block") {
    // scaled to the level-one square of side 2^-12
    const double block = unit_block_integral(12, 0) * std::ldexp(1.0, -12);
    CHECK(block >= std::ldexp(1.0, -12) / 1000);
    const double ref = oracle::block_integral_4d<30>(-1, -0.5, 2, 3, 0.5, 1, 0, 1, 3);
    CHECK(unit_block_integral(12, 0) == doctest::Approx(ref).epsilon(1e-12));
    CHECK(unit_block_integral(12, 0) == doctest::Approx(0.013598408778397906).epsilon(1e-12));
}

TEST_CASE("misaligned pair sums") {
    for (long long d : {1LL, 3LL, 40LL}) {
        const double pair = unit_pair_sum(16, d);
        CHECK(pair == doctest::Approx(unit_block_integral(16, d) + unit_block_integral(16, -d)).epsilon(1e-9));
    }
    // decay like d^-4
    const double a = unit_pair_sum(16, 200), b = unit_pair_sum(16, 400);
    CHECK(a / b == doctest::Approx(16.0).epsilon(0.01));
}

TEST_CASE("union evaluation") {
    RectUnion A(RectUnion::Side::Left), B(RectUnion::Side::Right);
    A.add({{-1, -0.5}, {2, 3}});
    CHECK(evaluate_I(A, B) == 0.0);
    B.add({{0.5, 1}, {0, 1}});
    CHECK(evaluate_I(A, B) == kernel_block_integral({-1, -0.5}, {0.5, 1}, {2, 3}, {0, 1}));
    CHECK_THROWS_AS(A.add({{-0.8, -0.6}, {2.5, 2.7}}), std::invalid_argument);
    CHECK_THROWS_AS(A.add({{-0.2, 0.1}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_I(B, A), std::invalid_argument);
    CHECK(union_distance(A, B) == doctest::Approx(std::hypot(1.0, 1.0)));
}

TEST_CASE("multiscale construction") {
    CHECK_THROWS_AS(MultiscaleParams({10, 2}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(MultiscaleParams({12, 1}).validate(), std::invalid_argument);
    auto s = build_multiscale_sets({12, 2});
    REQUIRE(s.left.size() == 1);
    CHECK(static_cast<long long>(s.left[0].count) == 4096 / 13 + 1);
    CHECK(static_cast<long long>(column_count(2, 12)) == (1LL << 24) / 13 + 1);
    CHECK(column_density(1, 12) == doctest::Approx(static_cast<double>(4096 / 13 + 1) / 4096).epsilon(1e-15));
    auto A = materialize(s.left), B = materialize(s.right);
    for (std::size_t k = 0; k < A.rects().size(); ++k) {
        CHECK(A.rects()[k].x.lo == -B.rects()[k].x.hi);
        CHECK(A.rects()[k].x.hi == -B.rects()[k].x.lo);
        CHECK(A.rects()[k].y.hi <= 1.0);
        CHECK(A.rects()[k].x.lo >= -1.0);
    }
    auto s3 = build_multiscale_sets({12, 3});
    CHECK(s3.left.size() == 2);
    // pairwise distance over the level-one comb and a slice of level two
    Comb fine = s3.left[1];
    fine.count = 2000;
    Comb fine_r = s3.right[1];
    fine_r.count = 2000;
    auto A3 = materialize({s3.left[0], fine}), B3 = materialize({s3.right[0], fine_r});
    CHECK(union_distance(A3, B3) >= MultiscaleParams{12, 3}.eps());
    CHECK_THROWS_AS(materialize(s3.left), std::invalid_argument);
}

TEST_CASE("multiscale totals on explicit rectangles") {
    // one level is small enough to evaluate pair by pair
    auto s = build_multiscale_sets({11, 2});
    const double direct = evaluate_I(materialize(s.left), materialize(s.right));
    auto rep = decompose_E({11, 2});
    CHECK(rep.I_total == doctest::Approx(direct).epsilon(1e-7));
}

TEST_CASE("cross-scale combs against explicit rectangles") {
    const Comb coarse{3, 5, true, 2, 12};
    const Comb fine{10, 300, false, 0, 12};
    const double direct = evaluate_I(materialize({coarse}), materialize({fine}));
    CHECK(cross_comb_integral(coarse, fine) == doctest::Approx(direct).epsilon(0.01));
    const Comb coarse_r{3, 5, false, 0, 12};
    const Comb fine_l{10, 300, true, 2, 12};
    const double direct2 = evaluate_I(materialize({fine_l}), materialize({coarse_r}));
    CHECK(cross_comb_integral(fine_l, coarse_r) == doctest::Approx(direct2).epsilon(0.01));
}

TEST_CASE("decomposition") {
    auto r2 = decompose_E({16, 2});
    CHECK(r2.E3 == 0.0);
    auto r3 = decompose_E({16, 3});
    CHECK(r3.E1 >= 2.0 / (1000.0 * 17));
    CHECK(std::abs(r3.I_total - (r3.E1 + r3.E2 + r3.E3)) < 1e-9 * std::abs(r3.I_total));
    auto r12 = decompose_E({12, 3});
    CHECK(r12.I_total > 0.0);
    CHECK(r12.I_total >= r12.E1 - r12.E2_abs - r12.E3_abs);
    // equal contributions per level
    std::vector<double> e1;
    for (int L = 2; L <= 5; ++L) e1.push_back(decompose_E({16, L}).E1);
    const double step = (e1[3] - e1[0]) / 3;
    for (int k = 0; k < 4; ++k) CHECK(std::abs(e1[k] - (e1[0] + k * step)) <= 0.01 * e1[k]);
}

TEST_CASE("decomposition constants") {
    double c2 = 0.0, c3 = 0.0;
    for (int L = 2; L <= 5; ++L) {
        auto r = decompose_E({16, L});
        c2 = std::max(c2, r.E2_over_L_M3);
        c3 = std::max(c3, r.E3_over_L_2M);
    }
    // values of the M = 16 sweep
    CHECK(c2 == doctest::Approx(0.0098019).epsilon(1e-3));
    CHECK(c3 < 1e-8);
    for (int L = 2; L <= 5; ++L) {
        auto r = decompose_E({20, L});
        CHECK(r.E2_over_L_M3 <= c2);
        CHECK(r.E3_over_L_2M <= std::max(c3, 1e-8));
    }
}

TEST_CASE("upper-bound probe") {
    auto a = upper_bound_probe(0.25, 1, 0);
    CHECK(std::isfinite(a.max_ratio));
    CHECK(a.max_ratio <= 0.078562);
    auto b = upper_bound_probe(1.0 / 16, 20, 3);
    auto c = upper_bound_probe(1.0 / 16, 20, 3);
    CHECK(b.ratios == c.ratios);
    set_thread_count(1);
    auto d = upper_bound_probe(1.0 / 16, 20, 3);
    set_thread_count(0);
    CHECK(b.ratios == d.ratios);
    for (int t = 0; t < 20; ++t) {
        RectUnion A(RectUnion::Side::Left), B(RectUnion::Side::Right);
        probe_sets(1.0 / 16, 3, t, A, B);
        CHECK(union_distance(A, B) >= 1.0 / 16);
    }
    RectUnion A(RectUnion::Side::Left), B(RectUnion::Side::Right);
    A.add({{-0.5, -0.1}, {0, 1}});
    CHECK(evaluate_I(A, B) == 0.0);
    CHECK_THROWS_AS(upper_bound_probe(0.6, 5, 0), std::invalid_argument);
}

TEST_CASE("probe scaling study") {
    // the same configuration shrunk towards the interface
    std::vector<double> ratios;
    for (double scale : {1.0, 0.25, 1.0 / 16}) {
        const double eps = 0.2 * scale;
        RectUnion A(RectUnion::Side::Left, {Rect{{-0.6 * scale - 0.1 * scale, -0.1 * scale}, {0.0, 0.5 * scale}}});
        RectUnion B(RectUnion::Side::Right, {Rect{{0.1 * scale, 0.5 * scale}, {-0.4 * scale, 0.2 * scale}}});
        ratios.push_back(std::abs(evaluate_I(A, B)) / std::log(1.0 / eps));
    }
    CHECK(ratios[1] <= ratios[0] * 1.0000001);
    CHECK(ratios[2] <= ratios[1] * 1.0000001);
}
