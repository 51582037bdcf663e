#include "flatconn/completion.hpp"

#include <algorithm>

namespace flatconn {

Tower::Tower(std::vector<int> levels_in,
             std::vector<std::vector<TruncatedSeries>> stages_in)
    : levels(std::move(levels_in)), stages(std::move(stages_in)) {
    if (levels.empty()) {
        throw DimensionError("tower: needs at least one level");
    }
    if (levels.size() != stages.size()) {
        throw DimensionError("tower: one stage per level");
    }
    if (levels.front() < 0) {
        throw PrecisionError("tower: negative level");
    }
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
        if (levels[k] >= levels[k + 1]) {
            throw DimensionError("tower: levels must increase strictly");
        }
    }
    const std::size_t r = stages.front().size();
    if (r == 0) throw DimensionError("tower: stages must be nonempty");
    for (std::size_t k = 0; k < stages.size(); ++k) {
        if (stages[k].size() != r) {
            throw DimensionError("tower: stages must share one length");
        }
        for (const auto& s : stages[k]) {
            if (s.nvars() != stages.front().front().nvars()) {
                throw DimensionError("tower: components must share one "
                                     "variable count");
            }
            if (s.prec() != levels[k]) {
                throw PrecisionError(
                    "tower: stage " + std::to_string(k) +
                    " components must carry precision " +
                    std::to_string(levels[k]));
            }
        }
    }
}

int Tower::nvars() const { return stages.front().front().nvars(); }

int Tower::rank() const { return static_cast<int>(stages.front().size()); }

CoherenceReport is_coherent(const Tower& t) {
    for (std::size_t k = 0; k + 1 < t.stages.size(); ++k) {
        for (std::size_t c = 0; c < t.stages[k].size(); ++c) {
            if (project(t.stages[k + 1][c], t.levels[k]) != t.stages[k][c]) {
                return CoherenceReport{false, static_cast<int>(k)};
            }
        }
    }
    return CoherenceReport{};
}

std::vector<TruncatedSeries> complete(const Tower& t) {
    CoherenceReport report = is_coherent(t);
    if (!report.coherent) throw CoherenceError(std::move(report));
    return t.stages.back();
}

Tower tower_of_projections(const std::vector<TruncatedSeries>& top,
                           const std::vector<int>& levels) {
    if (top.empty()) {
        throw DimensionError("tower: needs at least one component");
    }
    std::vector<std::vector<TruncatedSeries>> stages;
    stages.reserve(levels.size());
    for (int level : levels) {
        std::vector<TruncatedSeries> stage;
        stage.reserve(top.size());
        for (const auto& s : top) stage.push_back(project(s, level));
        stages.push_back(std::move(stage));
    }
    return Tower(levels, std::move(stages));
}

namespace {

// Splits off the first `amount` units of the exponent, axis by axis.
MultiIndex leading_part(const MultiIndex& e, int amount) {
    MultiIndex m(e.size(), 0);
    for (std::size_t a = 0; a < e.size() && amount > 0; ++a) {
        m[a] = std::min(e[a], amount);
        amount -= m[a];
    }
    return m;
}

}  // namespace

bool kernel_order_check(const Tower& t, int i) {
    const int top = t.levels.back();
    if (i < 0 || i > top) {
        throw DomainError(
            "tower: order to test must lie within the top level");
    }
    const std::vector<TruncatedSeries>& stage = t.stages.back();

    // Route 1: inspect the lowest nonzero degree of each component.
    bool by_order = true;
    for (const auto& s : stage) {
        if (auto o = s.order(); o && *o < i) {
            by_order = false;
            break;
        }
    }

    // Route 2: factor each component as a sum of degree-i monomials times
    // series, then re-expand and compare.
    bool by_factoring = true;
    for (const auto& s : stage) {
        if (!by_factoring) break;
        std::map<MultiIndex, std::map<MultiIndex, Rational>> parts;
        for (const auto& [e, c] : s.terms()) {
            if (total_degree(e) < i) {
                by_factoring = false;
                break;
            }
            MultiIndex m = leading_part(e, i);
            MultiIndex rest(e.size());
            for (std::size_t a = 0; a < e.size(); ++a) rest[a] = e[a] - m[a];
            parts[m].emplace(std::move(rest), c);
        }
        if (!by_factoring) break;
        TruncatedSeries rebuilt(s.nvars(), top);
        for (auto& [m, terms] : parts) {
            TruncatedSeries factor = TruncatedSeries::from_terms(
                s.nvars(), top - i, std::move(terms));
            for (std::size_t a = 0; a < m.size(); ++a) {
                if (m[a] > 0) {
                    factor = mul_by_var_power(factor, static_cast<int>(a),
                                              m[a], top);
                }
            }
            rebuilt = rebuilt + factor;
        }
        if (rebuilt != s) {
            throw Error("tower: factorization failed to re-expand");
        }
    }

    if (by_order != by_factoring) {
        throw Error("tower: order routes disagree");
    }
    return by_order;
}

}  // namespace flatconn
