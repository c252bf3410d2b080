#pragma once

#include <cstddef>
#include <functional>

namespace mixlab {

/// Worker count used by internal loops. Reads MIXLAB_THREADS once; falls back
/// to the hardware concurrency. Results never depend on this value.
int thread_count();

/// Overrides the worker count for the current process (tests use this to
/// check thread-count independence). Passing 0 restores the default.
void set_thread_count(int n);

/// Runs body(i) for i in [begin, end). Iterations are split into contiguous
/// chunks; callers must write to disjoint slots and reduce in index order.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace mixlab
