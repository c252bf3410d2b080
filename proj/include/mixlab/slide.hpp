#pragma once

#include "mixlab/grid.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mixlab {

/// Configuration on the discrete torus Z^2 / 2n Z^2. Cell (x, y) is stored
/// at y * 2n + x.
class SlideState {
public:
    explicit SlideState(int n);
    SlideState(int n, std::vector<std::uint8_t> cells);

    int n() const { return n_; }
    int side() const { return 2 * n_; }

    bool at(int x, int y) const { return cells_[index(x, y)] != 0; }
    void set(int x, int y, bool v) { cells_[index(x, y)] = v ? 1 : 0; }
    const std::vector<std::uint8_t>& cells() const { return cells_; }
    int count() const;

    /// Column band x in [1, n].
    static SlideState initial(int n);
    /// Cells with x + y even.
    static SlideState target(int n);

    /// Same cells on a 2n x 2n torus grid (requires 2n a power of two >= 4).
    IndicatorField to_field() const;

    friend bool operator==(const SlideState&, const SlideState&) = default;

private:
    std::size_t index(int x, int y) const {
        const int m = 2 * n_;
        int xx = x % m, yy = y % m;
        if (xx < 0) xx += m;
        if (yy < 0) yy += m;
        return static_cast<std::size_t>(yy) * m + xx;
    }

    int n_;
    std::vector<std::uint8_t> cells_;
};

/// Either a +1 horizontal shift of the rows a, a+1, ..., b (mod 2n) or a
/// global rotation by q counter-clockwise quarter turns.
struct SlideMove {
    enum class Kind { Strip, Rotate };
    Kind kind = Kind::Strip;
    int a = 0;
    int b = 0;
    int q = 1;

    static SlideMove strip(int a, int b) { return {Kind::Strip, a, b, 0}; }
    static SlideMove rotate(int q) { return {Kind::Rotate, 0, 0, q}; }

    friend bool operator==(const SlideMove&, const SlideMove&) = default;
};

void validate_slide(int n, const SlideMove& m);

SlideState apply_slide(const SlideState& state, const SlideMove& m);

/// Generator word equal to the inverse permutation (2n - 1 shifts of the
/// same strip, or the opposite rotation).
std::vector<SlideMove> inverse_moves(int n, const SlideMove& m);

/// All generators in the fixed search order: strips by (a, height), then
/// rotations q = 1, 2, 3.
std::vector<SlideMove> slide_generators(int n);

/// Smallest translate of the state, as a bit mask; requires (2n)^2 <= 64.
std::uint64_t canonical_key(const SlideState& state);

struct SearchResult {
    std::optional<int> distance;
    std::vector<SlideMove> path;  // replays start -> a translate of goal
    std::size_t states_visited = 0;
};

/// Breadth-first search over states modulo torus translations. Exhaustive
/// mode only: n <= 2.
SearchResult bfs_min_moves(int n, const SlideState& start, const SlideState& goal, int max_depth);

struct GreedyResult {
    SlideState state;
    std::size_t moves = 0;
    bool reached_target = false;
    /// Finest radius in cells at which the state is 1/3-mixed (together with
    /// every coarser tested radius); empty when none.
    std::optional<int> mixing_cells;
    std::vector<SlideMove> path;
};

/// Deterministic halving-interleave strategy from A0 toward A1; stops when
/// the budget is spent. n must be a power of two, n >= 2.
GreedyResult greedy_mix(int n, std::size_t budget);

/// Finest mixing radius (in cells) of the state's grid embedding.
std::optional<int> slide_mixing_cells(const SlideState& state, double kappa = 1.0 / 3.0);

}  // namespace mixlab
