#pragma once

#include <optional>
#include <vector>

#include "flatconn/errors.hpp"
#include "flatconn/series.hpp"

namespace flatconn {

// A vector of module elements known at each precision of an ascending
// level list: stages[k] holds the components truncated to levels[k].
struct Tower {
    std::vector<int> levels;
    std::vector<std::vector<TruncatedSeries>> stages;

    Tower(std::vector<int> levels_in,
          std::vector<std::vector<TruncatedSeries>> stages_in);

    int nvars() const;
    int rank() const;
};

struct CoherenceReport {
    bool coherent = true;
    // Index k of the first adjacent pair whose projection test
    //   project(stages[k+1], levels[k]) == stages[k]
    // fails; meaningful only when !coherent.
    std::optional<int> failing_pair = std::nullopt;
};

struct CoherenceError : Error {
    CoherenceReport report;
    explicit CoherenceError(CoherenceReport r)
        : Error("tower is not coherent"), report(std::move(r)) {}
};

// Verifies that each stage is the truncation of the next.
CoherenceReport is_coherent(const Tower& t);

// The limit of a coherent tower, i.e. its top stage (CoherenceError when
// the projections disagree).
std::vector<TruncatedSeries> complete(const Tower& t);

// Builds the tower of truncations of `top` at the given ascending levels
// (each <= the precision of `top`).
Tower tower_of_projections(const std::vector<TruncatedSeries>& top,
                           const std::vector<int>& levels);

// Whether every component of the top stage has augmentation order >= i,
// decided two independent ways: by inspecting lowest degrees, and
// constructively by factoring each component as a sum of degree-i
// monomials times series and re-expanding the factorization.  The two
// routes are asserted to agree.
bool kernel_order_check(const Tower& t, int i);

}  // namespace flatconn
