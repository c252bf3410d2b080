#pragma once

#include "mixlab/bianchini.hpp"
#include "mixlab/grid.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mixlab {

/// Rotation of the square (x - r, x + r)^2 by q counter-clockwise quarter
/// turns. The center x = (ci h, cj h) sits on a cell corner and r = s h.
struct RotationMove {
    int ci = 0;
    int cj = 0;
    int s = 1;
    int q = 1;

    /// Cost in units of h^2: q * s^2.
    std::int64_t cost_units() const { return static_cast<std::int64_t>(q) * s * s; }
    RotationMove inverse() const { return {ci, cj, s, 4 - q}; }

    friend bool operator==(const RotationMove&, const RotationMove&) = default;
};

/// Ordered moves on a fixed grid. Costs are kept as an integer multiple of
/// h^2, so sums are exact.
class MoveSequence {
public:
    explicit MoveSequence(int n);

    int n() const { return n_; }
    const std::vector<RotationMove>& moves() const { return moves_; }
    std::size_t size() const { return moves_.size(); }

    void push_back(const RotationMove& m);
    void append(const MoveSequence& other);

    std::int64_t cost_units() const { return cost_units_; }
    /// cost_units / N^2.
    double total_cost() const;

private:
    int n_;
    std::vector<RotationMove> moves_;
    std::int64_t cost_units_ = 0;
};

void validate_move(const GridSpec& spec, const RotationMove& m);

IndicatorField apply_rotation(const IndicatorField& field, const RotationMove& m);
IndicatorField apply_sequence(const IndicatorField& field, const MoveSequence& seq);

/// The three moves splitting the S x S square at `origin` into four
/// squares of side S/2 spread over the 2S x 2S square. Cost 6 (S h / 2)^2.
MoveSequence quadrisection_moves(GridSpec spec, int oi, int oj, int side);

/// Solid square [0, N/2)^2.
IndicatorField make_initial_square(GridSpec spec);

struct SchemeLevel {
    int level = 0;
    std::size_t moves = 0;
    std::int64_t cost_units = 0;
    double cost = 0.0;
    std::optional<double> mixing_scale;
    double seminorm = 0.0;
};

struct SchemeResult {
    MoveSequence moves;
    IndicatorField final_field;
    std::vector<SchemeLevel> ledger;
};

/// Recursive quadrisection: level k splits every fully occupied dyadic
/// square of side N / 2^k, visited row-major. When `diagnostics` is given the
/// ledger also records the mixing scale and semi-norm after every level.
SchemeResult recursive_scheme(int levels, GridSpec spec,
                              const SemiNormParams* diagnostics = nullptr);

struct LedgerRow {
    std::size_t index = 0;
    double seminorm = 0.0;
    double delta = 0.0;
    double ratio = 0.0;  // delta / (q r^2)
};

struct SeminormLedger {
    double initial = 0.0;
    std::vector<LedgerRow> rows;
    double max_ratio = 0.0;
};

SeminormLedger seminorm_ledger(const IndicatorField& start, const MoveSequence& seq,
                               const SemiNormParams& params);

/// Discrete right-hand side of the semi-norm difference bound for one move:
/// sum_j w_j h^2 / |B_j| sum_z |m(B_j(z)) symdiff B_j(m(z))|. Independent of
/// the set being moved.
double rotation_defect_bound(GridSpec spec, const RotationMove& m, const SemiNormParams& params);

/// Per-radius defect sum_z |m(B(z)) symdiff B(m(z))| in cells.
std::int64_t rotation_defect(GridSpec spec, const RotationMove& m, const DiskStencil& stencil);

struct CorpusCase {
    IndicatorField field;
    MoveSequence moves;
};

/// Seeded test corpus: random fields built from a 16 x 16 block pattern,
/// each followed by moves centered on the 1/128 lattice with radius 1/128,
/// 1/64 or 1/32 and q in {1, 2, 3}. The geometry does not depend on N, which
/// must be a multiple of 128.
std::vector<CorpusCase> rotation_corpus(int n, std::uint64_t seed, int fields = 20, int moves_per_field = 10);

}  // namespace mixlab
