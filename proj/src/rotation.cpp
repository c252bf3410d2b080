#include "mixlab/rotation.hpp"

#include "mixlab/parallel.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace mixlab {

MoveSequence::MoveSequence(int n) : n_(n) {}

void MoveSequence::push_back(const RotationMove& m) {
    moves_.push_back(m);
    cost_units_ += m.cost_units();
}

void MoveSequence::append(const MoveSequence& other) {
    if (other.n_ != n_) throw std::invalid_argument("move sequences live on different grids");
    for (const auto& m : other.moves_) push_back(m);
}

double MoveSequence::total_cost() const {
    return static_cast<double>(cost_units_) / (static_cast<double>(n_) * n_);
}

void validate_move(const GridSpec& spec, const RotationMove& m) {
    if (m.s < 1 || 4 * m.s > spec.n()) {
        throw std::invalid_argument("rotation half-width must lie in [1, N/4], got " +
                                    std::to_string(m.s));
    }
    if (m.q < 1 || m.q > 3) throw std::invalid_argument("quarter turns must be 1, 2 or 3");
}

namespace {

struct Local {
    int a;
    int b;
};

// Image of local square coordinates under q counter-clockwise quarter turns.
inline Local turn(int a, int b, int side, int q) {
    switch (q) {
        case 1: return {side - 1 - b, a};
        case 2: return {side - 1 - a, side - 1 - b};
        default: return {b, side - 1 - a};
    }
}

}  // namespace

IndicatorField apply_rotation(const IndicatorField& field, const RotationMove& m) {
    validate_move(field.spec(), m);
    IndicatorField out = field;
    const int side = 2 * m.s;
    const int i0 = m.ci - m.s;
    const int j0 = m.cj - m.s;
    for (int b = 0; b < side; ++b) {
        for (int a = 0; a < side; ++a) {
            const Local t = turn(a, b, side, m.q);
            out.set(i0 + t.a, j0 + t.b, field.at(i0 + a, j0 + b));
        }
    }
    return out;
}

IndicatorField apply_sequence(const IndicatorField& field, const MoveSequence& seq) {
    if (seq.n() != field.n()) throw std::invalid_argument("sequence built for a different grid");
    IndicatorField cur = field;
    for (const auto& m : seq.moves()) cur = apply_rotation(cur, m);
    return cur;
}

MoveSequence quadrisection_moves(GridSpec spec, int oi, int oj, int side) {
    if (side < 2 || side % 2 != 0) {
        throw std::invalid_argument("quadrisection side must be even, got " + std::to_string(side));
    }
    if (2 * side > spec.n()) throw std::invalid_argument("quadrisection side exceeds N/2");
    if (oi < 0 || oj < 0 || oi + side > spec.n() || oj + side > spec.n()) {
        throw std::invalid_argument("quadrisection square leaves the grid");
    }
    const int s = side / 2;
    MoveSequence seq(spec.n());
    seq.push_back({oi + side, oj + side, s, 2});
    seq.push_back({oi + side, oj + s, s, 1});
    seq.push_back({oi + s, oj + side, s, 3});
    for (const auto& m : seq.moves()) validate_move(spec, m);
    return seq;
}

IndicatorField make_initial_square(GridSpec spec) {
    IndicatorField out(spec);
    const int half = spec.n() / 2;
    for (int j = 0; j < half; ++j) {
        for (int i = 0; i < half; ++i) out.set(i, j, true);
    }
    return out;
}

namespace {

bool square_full(const IndicatorField& f, int oi, int oj, int side) {
    for (int j = oj; j < oj + side; ++j) {
        for (int i = oi; i < oi + side; ++i) {
            if (!f.at(i, j)) return false;
        }
    }
    return true;
}

}  // namespace

SchemeResult recursive_scheme(int levels, GridSpec spec, const SemiNormParams* diagnostics) {
    if (levels < 1) throw std::invalid_argument("scheme needs at least one level");
    if (levels > 30 || (2LL << levels) > spec.n()) {
        throw std::invalid_argument("grid too coarse for " + std::to_string(levels) +
                                    " quadrisection levels");
    }
    SchemeResult result{MoveSequence(spec.n()), make_initial_square(spec), {}};
    for (int k = 1; k <= levels; ++k) {
        const int side = spec.n() >> k;
        MoveSequence level_moves(spec.n());
        for (int oj = 0; oj < spec.n(); oj += side) {
            for (int oi = 0; oi < spec.n(); oi += side) {
                if (square_full(result.final_field, oi, oj, side)) {
                    level_moves.append(quadrisection_moves(spec, oi, oj, side));
                }
            }
        }
        result.final_field = apply_sequence(result.final_field, level_moves);
        result.moves.append(level_moves);

        SchemeLevel row;
        row.level = k;
        row.moves = level_moves.size();
        row.cost_units = level_moves.cost_units();
        row.cost = level_moves.total_cost();
        if (diagnostics) {
            row.mixing_scale = mixing_scale(result.final_field, *diagnostics).scale;
            row.seminorm = bianchini_seminorm(result.final_field, *diagnostics);
        }
        result.ledger.push_back(row);
    }
    return result;
}

SeminormLedger seminorm_ledger(const IndicatorField& start, const MoveSequence& seq,
                               const SemiNormParams& params) {
    if (seq.n() != start.n()) throw std::invalid_argument("sequence built for a different grid");
    SeminormLedger ledger;
    IndicatorField cur = start;
    double prev = bianchini_seminorm(cur, params);
    ledger.initial = prev;
    const double h = start.spec().h();
    bool first = true;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const auto& m = seq.moves()[k];
        cur = apply_rotation(cur, m);
        const double now = bianchini_seminorm(cur, params);
        LedgerRow row;
        row.index = k;
        row.seminorm = now;
        row.delta = now - prev;
        row.ratio = row.delta / (m.q * (m.s * h) * (m.s * h));
        if (first || row.ratio > ledger.max_ratio) ledger.max_ratio = row.ratio;
        first = false;
        ledger.rows.push_back(row);
        prev = now;
    }
    return ledger;
}

namespace {

inline int overlap(int a0, int a1, int b0, int b1) {
    const int lo = std::max(a0, b0);
    const int hi = std::min(a1, b1);
    return hi >= lo ? hi - lo + 1 : 0;
}

// Marks cells directly on the torus; used when balls around the square can
// wrap onto themselves.
std::int64_t rotation_defect_marking(GridSpec spec, const RotationMove& m,
                                     const DiskStencil& stencil) {
    const int n = spec.n();
    const int side = 2 * m.s;
    const int i0 = m.ci - m.s;
    const int j0 = m.cj - m.s;
    // perm[k]: image cell of cell k under the move.
    std::vector<std::size_t> perm(spec.cell_count());
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
    for (int b = 0; b < side; ++b) {
        for (int a = 0; a < side; ++a) {
            const Local t = turn(a, b, side, m.q);
            perm[spec.index(i0 + a, j0 + b)] = spec.index(i0 + t.a, j0 + t.b);
        }
    }
    const auto offsets = stencil.offsets();
    std::vector<std::int64_t> per_row(n, 0);
    parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t jr) {
        const int zj = static_cast<int>(jr);
        std::vector<std::uint8_t> mark(spec.cell_count(), 0);
        std::int64_t acc = 0;
        for (int zi = 0; zi < n; ++zi) {
            const std::size_t z = spec.index(zi, zj);
            const std::size_t zp = perm[z];
            const int zpi = static_cast<int>(zp % n);
            const int zpj = static_cast<int>(zp / n);
            for (const auto& o : offsets) mark[perm[spec.index(zi + o.di, zj + o.dj)]] ^= 1;
            for (const auto& o : offsets) mark[spec.index(zpi + o.di, zpj + o.dj)] ^= 2;
            std::int64_t diff = 0;
            for (const auto& o : offsets) {
                const std::size_t a = perm[spec.index(zi + o.di, zj + o.dj)];
                if (mark[a] == 1) ++diff;
                mark[a] = 0;
            }
            for (const auto& o : offsets) {
                const std::size_t b = spec.index(zpi + o.di, zpj + o.dj);
                if (mark[b] == 2) ++diff;
                mark[b] = 0;
            }
            acc += diff;
        }
        per_row[jr] = acc;
    });
    std::int64_t total = 0;
    for (auto v : per_row) total += v;
    return total;
}

}  // namespace

std::int64_t rotation_defect(GridSpec spec, const RotationMove& m, const DiskStencil& stencil) {
    validate_move(spec, m);
    if (stencil.grid_n() != spec.n()) throw std::invalid_argument("stencil built for a different grid");
    const int R = stencil.reach();
    const int side = 2 * m.s;
    if (2 * R + side + 1 > spec.n()) return rotation_defect_marking(spec, m, stencil);

    // Local unwrapped coordinates: the square occupies [0, side)^2 and only
    // centers z within the reach of the square can see it.
    const std::int64_t c = stencil.count();
    const int lo = -R;
    const int hi = side - 1 + R;
    const int span = hi - lo + 1;
    auto w = [&](int d) { return stencil.row_halfwidth(d); };

    std::vector<std::int64_t> per_row(span, 0);
    parallel_for(0, static_cast<std::size_t>(span), [&](std::size_t row) {
        const int zy = lo + static_cast<int>(row);
        std::int64_t acc = 0;
        for (int zx = lo; zx <= hi; ++zx) {
            const bool inside = zx >= 0 && zx < side && zy >= 0 && zy < side;
            int px = zx, py = zy;
            if (inside) {
                const Local t = turn(zx, zy, side, m.q);
                px = t.a;
                py = t.b;
            }
            // Cells outside the square: rows of both balls, minus the square.
            std::int64_t common = 0;
            const int ylo = std::max(zy, py) - R;
            const int yhi = std::min(zy, py) + R;
            for (int y = ylo; y <= yhi; ++y) {
                const int w1 = w(y - zy);
                const int w2 = w(y - py);
                if (w1 < 0 || w2 < 0) continue;
                const int a0 = std::max(zx - w1, px - w2);
                const int a1 = std::min(zx + w1, px + w2);
                if (a1 < a0) continue;
                common += a1 - a0 + 1;
                if (y >= 0 && y < side) common -= overlap(a0, a1, 0, side - 1);
            }
            // Cells p inside the square with p in B(z') and m^{-1}(p) in B(z).
            for (int b = 0; b < side; ++b) {
                const int w2 = w(b - py);
                if (w2 < 0) continue;
                int c0, c1;
                if (m.q == 1) {
                    const int w1 = w(b - zx);
                    if (w1 < 0) continue;
                    c0 = side - 1 - zy - w1;
                    c1 = side - 1 - zy + w1;
                } else if (m.q == 2) {
                    const int w1 = w(side - 1 - b - zy);
                    if (w1 < 0) continue;
                    c0 = side - 1 - zx - w1;
                    c1 = side - 1 - zx + w1;
                } else {
                    const int w1 = w(side - 1 - b - zx);
                    if (w1 < 0) continue;
                    c0 = zy - w1;
                    c1 = zy + w1;
                }
                const int a0 = std::max({px - w2, c0, 0});
                const int a1 = std::min({px + w2, c1, side - 1});
                if (a1 >= a0) common += a1 - a0 + 1;
            }
            acc += 2 * (c - common);
        }
        per_row[row] = acc;
    });
    std::int64_t total = 0;
    for (auto v : per_row) total += v;
    return total;
}

double rotation_defect_bound(GridSpec spec, const RotationMove& m, const SemiNormParams& params) {
    params.check_resolution(spec);
    const double h2 = spec.h() * spec.h();
    CompensatedSum total;
    for (std::size_t j = 0; j < params.radii.size(); ++j) {
        DiskStencil stencil(params.radii[j], spec.n());
        const std::int64_t d = rotation_defect(spec, m, stencil);
        total.add(params.weights[j] * h2 * static_cast<double>(d) /
                  static_cast<double>(stencil.count()));
    }
    return total.value();
}

std::vector<CorpusCase> rotation_corpus(int n, std::uint64_t seed, int fields, int moves_per_field) {
    if (n < 128 || n % 128 != 0) throw std::invalid_argument("corpus grids must be a multiple of 128");
    if (fields < 1 || moves_per_field < 1) throw std::invalid_argument("corpus must be nonempty");
    const GridSpec spec(n);
    const int f = n / 128;
    std::mt19937_64 rng(seed);
    std::vector<CorpusCase> out;
    for (int t = 0; t < fields; ++t) {
        std::vector<std::uint8_t> blocks(256);
        for (auto& b : blocks) b = static_cast<std::uint8_t>(rng() & 1u);
        IndicatorField field(spec);
        const int bs = n / 16;
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) field.set(i, j, blocks[(j / bs) * 16 + i / bs] != 0);
        }
        MoveSequence seq(n);
        for (int k = 0; k < moves_per_field; ++k) {
            const int s = 1 << (rng() % 3);
            const int q = 1 + static_cast<int>(rng() % 3);
            const int ci = static_cast<int>(rng() % 128) * f;
            const int cj = static_cast<int>(rng() % 128) * f;
            seq.push_back({ci, cj, s * f, q});
        }
        out.push_back({std::move(field), std::move(seq)});
    }
    return out;
}

}  // namespace mixlab
