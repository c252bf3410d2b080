// Acceptance checks: one PASS/FAIL line per criterion.

#include "mixlab/bianchini.hpp"
#include "mixlab/counterexample.hpp"
#include "mixlab/flow.hpp"
#include "mixlab/parallel.hpp"
#include "mixlab/rotation.hpp"
#include "mixlab/slide.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace mixlab;

namespace {

// Frozen regression constants (seed 0 runs).
constexpr int kSlideDistanceN2 = 6;
constexpr double kProbeBound = 0.078562;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

IndicatorField lower_half(int n) {
    IndicatorField a{GridSpec(n)};
    for (int j = 0; j < n / 2; ++j)
        for (int i = 0; i < n; ++i) a.set(i, j, true);
    return a;
}

Outcome quadrisection_figure() {
    GridSpec s(4);
    IndicatorField a(s), expect(s);
    for (auto [i, j] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}}) a.set(i, j, true);
    for (auto [i, j] : {std::pair{0, 0}, {2, 0}, {0, 2}, {2, 2}}) expect.set(i, j, true);
    const auto seq = quadrisection_moves(s, 0, 0, 2);
    const bool ok = apply_sequence(a, seq) == expect && seq.total_cost() == 0.375 && seq.cost_units() == 6;
    return {ok, "cost " + fmt("%.17g", seq.total_cost())};
}

Outcome scheme_linearity() {
    bool ok = true;
    std::string detail;
    for (int n = 1; n <= 5; ++n) {
        const auto r = recursive_scheme(n, GridSpec(256));
        double lo = 1e300, hi = 0.0;
        for (const auto& l : r.ledger) {
            lo = std::min(lo, l.cost);
            hi = std::max(hi, l.cost);
        }
        const double total = r.moves.total_cost();
        ok = ok && static_cast<int>(r.ledger.size()) == n && hi <= lo * 1.01 &&
             std::abs(total - 0.375 * n) <= 0.01 * 0.375 * n;
        detail += " n=" + std::to_string(n) + ":" + fmt("%.6g", total);
    }
    return {ok, "total cost" + detail};
}

Outcome checkerboard_growth() {
    std::vector<double> m, v;
    for (int k = 3; k <= 6; ++k) {
        m.push_back(k);
        v.push_back(bianchini_seminorm(make_checkerboard(GridSpec(512), k), SemiNormParams::make(std::ldexp(1.0, -k - 1))));
    }
    const double n = static_cast<double>(m.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < m.size(); ++i) mx += m[i] / n, my += v[i] / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        sxx += (m[i] - mx) * (m[i] - mx);
        sxy += (m[i] - mx) * (v[i] - my);
        syy += (v[i] - my) * (v[i] - my);
    }
    const double slope = sxy / sxx;
    const double r2 = sxy * sxy / (sxx * syy);
    const double floor = (1.0 / 3) * std::log(2.0) * 0.8;
    return {r2 >= 0.99 && slope >= floor,
            fmt("slope %.6g", slope) + fmt(" (floor %.6g)", floor) + fmt(" R^2 %.6f", r2)};
}

Outcome identity_ladder() {
    const int ladder[3][2] = {{128, 6}, {256, 9}, {512, 12}};
    const auto params = SemiNormParams::make(1.0 / 16, std::pow(2.0, 1.0 / 16));
    std::vector<double> gaps;
    std::string detail = "gaps";
    for (const auto& l : ladder) {
        const auto r = verify_prop22(lower_half(l[0]), AnalyticFlow::shear(1.0), 0.3, params, l[1]);
        gaps.push_back(r.gap);
        detail += " (" + std::to_string(l[0]) + "," + std::to_string(l[1]) + "):" + fmt("%.3e", r.gap);
    }
    bool ok = gaps[1] <= 0.10 && gaps[2] <= 0.05;
    for (std::size_t k = 1; k < gaps.size(); ++k) ok = ok && gaps[k] <= 1.10 * gaps[k - 1];
    return {ok, detail};
}

Outcome lower_bound_machine() {
    bool ok = true;
    double lo = 1e300, hi = 0.0;
    std::string detail;
    for (int L = 2; L <= 5; ++L) {
        const auto r = decompose_E({16, L});
        ok = ok && r.E1 >= (L - 1) / (1000.0 * 17) && r.I_total > 0.0;
        const double ratio = r.I_total / (L * 16 * std::log(2.0));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        detail += " L=" + std::to_string(L) + fmt(":%.4e", ratio);
    }
    ok = ok && hi / lo <= 4.0;
    return {ok, "I/(LM log2)" + detail + fmt(" band %.3f", hi / lo)};
}

Outcome upper_bound_probe_check() {
    double worst = 0.0;
    std::string detail;
    for (int e : {4, 6, 8}) {
        const auto r = upper_bound_probe(std::ldexp(1.0, -e), 100, 0);
        worst = std::max(worst, r.max_ratio);
        detail += " eps=2^-" + std::to_string(e) + fmt(":%.6g", r.max_ratio);
    }
    return {worst <= kProbeBound, "max |I|/log(1/eps)" + detail + fmt(" (bound %.6g)", kProbeBound)};
}

Outcome oracle_equivalence() {
    std::vector<IndicatorField> fields;
    const int sizes[] = {16, 32, 64};
    for (int t = 0; t < 20; ++t) fields.push_back(oracle::random_field(sizes[t % 3], 100 + t, 0.2 + 0.03 * t));
    const GridSpec s64(64);
    fields.push_back(make_half_torus(s64));
    fields.push_back(make_checkerboard(s64, 3));
    fields.push_back(make_initial_square(s64));
    fields.push_back(IndicatorField(s64));
    fields.push_back(make_checkerboard(GridSpec(16), 4));
    double worst = 0.0;
    for (const auto& f : fields) {
        const int n = f.n();
        const auto p = SemiNormParams::make(1.0 / 16);
        const auto v = oracle::values(f);
        for (double r : p.radii) {
            const auto fast = ball_sums(f, DiskStencil(r, n));
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i)
                    worst = std::max(worst, std::abs(fast.at(i, j) - oracle::ball_average(v, n, r, i, j)));
        }
        const double ref = oracle::seminorm(v, n, p);
        worst = std::max(worst, std::abs(bianchini_seminorm(f, p) - ref));
        worst = std::max(worst, std::abs(bianchini_seminorm(ScalarField::from_indicator(f), p) - ref));
    }
    return {worst <= 1e-10, std::to_string(fields.size()) + " fields" + fmt(", max deviation %.3e", worst)};
}

Outcome rotation_constants() {
    const auto params = SemiNormParams::make(1.0 / 32);
    double max_ratio[2] = {0.0, 0.0};
    bool bound_ok = true;
    double tightest = 0.0;
    std::size_t moves = 0;
    const int grids[2] = {128, 256};
    for (int g = 0; g < 2; ++g) {
        for (const auto& c : rotation_corpus(grids[g], 0)) {
            const auto led = seminorm_ledger(c.field, c.moves, params);
            for (std::size_t k = 0; k < led.rows.size(); ++k) {
                max_ratio[g] = std::max(max_ratio[g], std::abs(led.rows[k].ratio));
                if (grids[g] != 256) continue;
                ++moves;
                const double rhs = rotation_defect_bound(c.field.spec(), c.moves.moves()[k], params);
                bound_ok = bound_ok && std::abs(led.rows[k].delta) <= rhs;
                tightest = std::max(tightest, std::abs(led.rows[k].delta) / rhs);
            }
        }
    }
    const double spread = std::abs(max_ratio[0] - max_ratio[1]) / std::max(max_ratio[0], max_ratio[1]);
    return {bound_ok && moves == 200 && spread <= 0.25,
            std::to_string(moves) + " moves" + fmt(", max delta/RHS %.4f", tightest) +
                fmt(", C(128) %.5g", max_ratio[0]) + fmt(" C(256) %.5g", max_ratio[1]) + fmt(" spread %.4f", spread)};
}

Outcome slider_exhaustion() {
    auto run = [](int threads) {
        set_thread_count(threads);
        auto r1 = bfs_min_moves(1, SlideState::initial(1), SlideState::target(1), 10);
        auto r2 = bfs_min_moves(2, SlideState::initial(2), SlideState::target(2), 40);
        set_thread_count(0);
        return std::pair{r1, r2};
    };
    const auto a = run(1);
    const auto b = run(4);
    const bool ok = a.first.distance == 1 && a.second.distance == kSlideDistanceN2 &&
                    b.first.distance == a.first.distance && b.second.distance == a.second.distance &&
                    a.first.path == b.first.path && a.second.path == b.second.path;
    const int d2 = a.second.distance ? *a.second.distance : -1;
    return {ok, "d(n=1) " + std::to_string(a.first.distance.value_or(-1)) + ", d(n=2) " + std::to_string(d2) +
                    " (frozen " + std::to_string(kSlideDistanceN2) + ")"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"quadrisection figure", quadrisection_figure},
        {"scheme linearity", scheme_linearity},
        {"log lower bound for mixed sets", checkerboard_growth},
        {"flow identity", identity_ladder},
        {"multiscale lower bound", lower_bound_machine},
        {"upper-bound probe", upper_bound_probe_check},
        {"oracle equivalence", oracle_equivalence},
        {"rotation bounds", rotation_constants},
        {"slider exhaustion", slider_exhaustion},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
