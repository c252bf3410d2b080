#include "mixlab/slide.hpp"

#include "mixlab/bianchini.hpp"

#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace mixlab {

SlideState::SlideState(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("slide torus needs n >= 1");
    cells_.assign(static_cast<std::size_t>(4) * n * n, 0);
}

SlideState::SlideState(int n, std::vector<std::uint8_t> cells) : SlideState(n) {
    if (cells.size() != cells_.size()) throw std::invalid_argument("slide state has wrong size");
    for (std::size_t k = 0; k < cells.size(); ++k) cells_[k] = cells[k] ? 1 : 0;
}

int SlideState::count() const {
    int c = 0;
    for (auto v : cells_) c += v;
    return c;
}

SlideState SlideState::initial(int n) {
    SlideState s(n);
    for (int y = 0; y < 2 * n; ++y) {
        for (int x = 1; x <= n; ++x) s.set(x, y, true);
    }
    return s;
}

SlideState SlideState::target(int n) {
    SlideState s(n);
    for (int y = 0; y < 2 * n; ++y) {
        for (int x = 0; x < 2 * n; ++x) s.set(x, y, (x + y) % 2 == 0);
    }
    return s;
}

IndicatorField SlideState::to_field() const {
    GridSpec spec(side());
    return IndicatorField(spec, cells_);
}

void validate_slide(int n, const SlideMove& m) {
    if (m.kind == SlideMove::Kind::Rotate) {
        if (m.q < 1 || m.q > 3) throw std::invalid_argument("rotation must be 1, 2 or 3 quarter turns");
        return;
    }
    if (m.a < 0 || m.a >= 2 * n) throw std::invalid_argument("strip start must lie in [0, 2n)");
    if (m.b < m.a || m.b - m.a > 2 * n - 2) {
        throw std::invalid_argument("strip [" + std::to_string(m.a) + ", " + std::to_string(m.b) +
                                    "] must have height between 1 and 2n - 1");
    }
}

SlideState apply_slide(const SlideState& state, const SlideMove& m) {
    const int n = state.n();
    validate_slide(n, m);
    const int side = 2 * n;
    SlideState out(n);
    if (m.kind == SlideMove::Kind::Strip) {
        out = state;
        for (int y = m.a; y <= m.b; ++y) {
            for (int x = 0; x < side; ++x) out.set(x + 1, y, state.at(x, y));
        }
        return out;
    }
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            int px = x, py = y;
            for (int t = 0; t < m.q; ++t) {
                const int nx = -py;
                py = px;
                px = nx;
            }
            out.set(px, py, state.at(x, y));
        }
    }
    return out;
}

std::vector<SlideMove> inverse_moves(int n, const SlideMove& m) {
    validate_slide(n, m);
    if (m.kind == SlideMove::Kind::Rotate) return {SlideMove::rotate(4 - m.q)};
    return std::vector<SlideMove>(static_cast<std::size_t>(2 * n - 1), m);
}

std::vector<SlideMove> slide_generators(int n) {
    std::vector<SlideMove> gens;
    for (int a = 0; a < 2 * n; ++a) {
        for (int height = 1; height <= 2 * n - 1; ++height) gens.push_back(SlideMove::strip(a, a + height - 1));
    }
    for (int q = 1; q <= 3; ++q) gens.push_back(SlideMove::rotate(q));
    return gens;
}

namespace {

std::uint64_t mask_of(const SlideState& s, int dx, int dy) {
    const int side = s.side();
    std::uint64_t mask = 0;
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            if (s.at(x - dx, y - dy)) mask |= std::uint64_t{1} << (y * side + x);
        }
    }
    return mask;
}

SlideState state_of(int n, std::uint64_t mask) {
    SlideState s(n);
    const int side = 2 * n;
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) s.set(x, y, (mask >> (y * side + x)) & 1);
    }
    return s;
}

}  // namespace

std::uint64_t canonical_key(const SlideState& state) {
    const int side = state.side();
    if (side * side > 64) throw std::invalid_argument("state too large for a 64-bit key");
    std::uint64_t best = ~std::uint64_t{0};
    for (int dy = 0; dy < side; ++dy) {
        for (int dx = 0; dx < side; ++dx) best = std::min(best, mask_of(state, dx, dy));
    }
    return best;
}

SearchResult bfs_min_moves(int n, const SlideState& start, const SlideState& goal, int max_depth) {
    if (n < 1 || n > 2) throw std::invalid_argument("exhaustive search supports n <= 2 only");
    if (max_depth < 1) throw std::invalid_argument("search depth must be at least 1");
    if (start.n() != n || goal.n() != n) throw std::invalid_argument("state size does not match n");

    struct Node {
        std::uint64_t state;  // representative actually reached
        std::uint64_t parent;
        SlideMove move;
        int depth;
    };
    const std::uint64_t goal_key = canonical_key(goal);
    const std::uint64_t start_key = canonical_key(start);
    const auto gens = slide_generators(n);

    SearchResult result;
    std::unordered_map<std::uint64_t, Node> seen;
    seen.emplace(start_key, Node{mask_of(start, 0, 0), start_key, SlideMove{}, 0});
    std::deque<std::uint64_t> frontier{start_key};
    std::optional<std::uint64_t> found;
    if (start_key == goal_key) found = start_key;

    while (!found && !frontier.empty()) {
        const std::uint64_t key = frontier.front();
        frontier.pop_front();
        const Node node = seen.at(key);
        if (node.depth >= max_depth) continue;
        const SlideState cur = state_of(n, node.state);
        for (const auto& g : gens) {
            const SlideState next = apply_slide(cur, g);
            const std::uint64_t k = canonical_key(next);
            if (seen.count(k)) continue;
            seen.emplace(k, Node{mask_of(next, 0, 0), key, g, node.depth + 1});
            if (k == goal_key) {
                found = k;
                break;
            }
            frontier.push_back(k);
        }
    }
    result.states_visited = seen.size();
    if (!found) return result;

    std::vector<SlideMove> rev;
    for (std::uint64_t k = *found; k != start_key;) {
        const Node& node = seen.at(k);
        rev.push_back(node.move);
        k = node.parent;
    }
    result.path.assign(rev.rbegin(), rev.rend());
    result.distance = static_cast<int>(result.path.size());
    return result;
}

std::optional<int> slide_mixing_cells(const SlideState& state, double kappa) {
    const IndicatorField field = state.to_field();
    const int side = state.side();
    std::optional<int> finest;
    for (int m = side / 4; m >= 1; --m) {
        if (!is_mixed(field, static_cast<double>(m) / side, kappa)) break;
        finest = m;
    }
    return finest;
}

namespace {

// Coarse 4 x 4 state lifted to blocks of `hb` cells and translated.
bool matches_lift(const SlideState& fine, const SlideState& coarse, int hb, int ox, int oy) {
    const int side = fine.side();
    for (int y = 0; y < side; ++y) {
        const int cy = ((y - oy) % side + side) % side / hb;
        for (int x = 0; x < side; ++x) {
            const int cx = ((x - ox) % side + side) % side / hb;
            if (fine.at(x, y) != coarse.at(cx, cy)) return false;
        }
    }
    return true;
}

std::pair<int, int> find_lift_offset(const SlideState& fine, const SlideState& coarse, int hb) {
    for (int oy = 0; oy < 4 * hb; ++oy) {
        for (int ox = 0; ox < 4 * hb; ++ox) {
            if (matches_lift(fine, coarse, hb, ox, oy)) return {ox, oy};
        }
    }
    throw std::logic_error("greedy strategy lost track of the block pattern");
}

struct Runner {
    SlideState state;
    std::size_t budget;
    std::vector<SlideMove> path;

    bool apply(const SlideMove& m) {
        if (path.size() >= budget) return false;
        state = apply_slide(state, m);
        path.push_back(m);
        return true;
    }
};

}  // namespace

GreedyResult greedy_mix(int n, std::size_t budget) {
    if (n < 2 || !is_power_of_two(n)) throw std::invalid_argument("greedy strategy needs n a power of two >= 2");
    const int side = 2 * n;
    Runner run{SlideState::initial(n), budget, {}};
    GreedyResult result{run.state, 0, false, std::nullopt, {}};

    // The coarse plan: block-2 checkerboard to single-cell checkerboard on
    // the 4 x 4 torus, replayed at every scale.
    SlideState coarse_start(2);
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) coarse_start.set(x, y, ((x / 2) + (y / 2)) % 2 == 0);
    }
    const SearchResult plan = bfs_min_moves(2, coarse_start, SlideState::target(2), 32);
    std::vector<SlideState> plan_states{coarse_start};
    for (const auto& m : plan.path) plan_states.push_back(apply_slide(plan_states.back(), m));

    auto finish = [&]() {
        result.state = run.state;
        result.moves = run.path.size();
        result.path = run.path;
        result.reached_target = run.state == SlideState::target(n);
        result.mixing_cells = slide_mixing_cells(run.state);
        return result;
    };

    // Bottom half slides by n: blocks of side n.
    for (int t = 0; t < n; ++t) {
        if (!run.apply(SlideMove::strip(n, side - 1))) return finish();
    }

    for (int b = n; b >= 2; b /= 2) {
        const int hb = b / 2;
        const int tiles = n / b;
        for (std::size_t k = 0; k < plan.path.size(); ++k) {
            const SlideMove& cm = plan.path[k];
            if (cm.kind == SlideMove::Kind::Rotate) {
                if (!run.apply(cm)) return finish();
                continue;
            }
            const auto [ox, oy] = find_lift_offset(run.state, plan_states[k], hb);
            (void)ox;
            for (int t = 0; t < tiles; ++t) {
                const int lo = ((oy + (cm.a + 4 * t) * hb) % side + side) % side;
                const int hi = lo + (cm.b - cm.a + 1) * hb - 1;
                for (int rep = 0; rep < hb; ++rep) {
                    if (!run.apply(SlideMove::strip(lo, hi))) return finish();
                }
            }
        }
    }

    if (!(run.state == SlideState::target(n))) {
        // Opposite parity: shift every row once.
        if (!run.apply(SlideMove::strip(0, side - 2))) return finish();
        if (!run.apply(SlideMove::strip(side - 1, side - 1))) return finish();
    }
    return finish();
}

}  // namespace mixlab
