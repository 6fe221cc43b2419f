#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ols.hpp"

namespace macrorisk {

enum class Direction { Backward, Forward };

inline const char* to_string(Direction d) {
    return d == Direction::Backward ? "backward" : "forward";
}

struct SpecStep {
    OlsFit fit;
    std::optional<std::string> removed;       // backward only
    std::optional<double> removal_p_value;    // p-value that triggered removal
    std::optional<std::string> entered;       // forward only
    std::optional<double> entry_p_value;
    std::vector<std::string> abs_t_ranking;   // non-intercept names, |t| ascending
};

struct SpecLadder {
    std::vector<SpecStep> steps;
    double alpha = 0.05;
    Direction direction = Direction::Backward;

    const OlsFit& final_fit() const { return steps.back().fit; }
};

namespace detail {

inline std::vector<std::string> t_ranking(const OlsFit& f) {
    std::vector<std::pair<double, std::string>> order;
    for (std::size_t i = 0; i < f.names.size(); ++i)
        if (f.names[i] != kIntercept)
            order.emplace_back(std::fabs(f.t_stats[i]), f.names[i]);
    std::sort(order.begin(), order.end());
    std::vector<std::string> out;
    out.reserve(order.size());
    for (auto& [t, nm] : order) out.push_back(std::move(nm));
    return out;
}

}  // namespace detail

// Backward elimination: refit, drop the non-intercept regressor with the
// largest p-value while it exceeds alpha. Ties break to the smaller |t|,
// then the lexicographically smaller name. The intercept never leaves.
inline SpecLadder backward_eliminate(const std::string& dependent,
                                     const std::vector<double>& y,
                                     DesignMatrix X, double alpha) {
    SpecLadder ladder;
    ladder.alpha = alpha;
    ladder.direction = Direction::Backward;
    for (;;) {
        OlsFit f = fit(dependent, y, X);
        SpecStep step;
        step.abs_t_ranking = detail::t_ranking(f);
        std::ptrdiff_t worst = -1;
        for (std::size_t i = 0; i < f.names.size(); ++i) {
            if (f.names[i] == kIntercept) continue;
            if (worst < 0) {
                worst = (std::ptrdiff_t)i;
                continue;
            }
            const auto w = (std::size_t)worst;
            if (f.p_values[i] > f.p_values[w] ||
                (f.p_values[i] == f.p_values[w] &&
                 (std::fabs(f.t_stats[i]) < std::fabs(f.t_stats[w]) ||
                  (std::fabs(f.t_stats[i]) == std::fabs(f.t_stats[w]) &&
                   f.names[i] < f.names[w]))))
                worst = (std::ptrdiff_t)i;
        }
        if (worst >= 0 && f.p_values[(std::size_t)worst] > alpha) {
            const auto w = (std::size_t)worst;
            step.removed = f.names[w];
            step.removal_p_value = f.p_values[w];
            step.fit = std::move(f);
            ladder.steps.push_back(std::move(step));
            X.names.erase(X.names.begin() + (std::ptrdiff_t)w);
            X.columns.erase(X.columns.begin() + (std::ptrdiff_t)w);
            continue;
        }
        step.fit = std::move(f);
        ladder.steps.push_back(std::move(step));
        return ladder;
    }
}

// Forward selection: starting from the intercept, add the candidate with the
// smallest p-value when fitted alongside the current set, while that p-value
// is <= alpha. Entered variables never leave.
inline SpecLadder forward_select(const std::string& dependent,
                                 const std::vector<double>& y,
                                 const DesignMatrix& X, double alpha) {
    SpecLadder ladder;
    ladder.alpha = alpha;
    ladder.direction = Direction::Forward;

    DesignMatrix current;
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < X.n_cols(); ++i) {
        if (X.names[i] == kIntercept)
            current.add(X.names[i], X.columns[i]);
        else
            pool.push_back(i);
    }
    if (current.n_cols() == 0) current.add_intercept(y.size());

    OlsFit base = fit(dependent, y, current);
    SpecStep first;
    first.abs_t_ranking = detail::t_ranking(base);
    first.fit = std::move(base);
    ladder.steps.push_back(std::move(first));

    while (!pool.empty()) {
        std::ptrdiff_t best = -1;
        double best_p = 2.0;
        OlsFit best_fit;
        for (std::size_t c = 0; c < pool.size(); ++c) {
            DesignMatrix trial = current;
            trial.add(X.names[pool[c]], X.columns[pool[c]]);
            OlsFit f;
            try {
                f = fit(dependent, y, trial);
            } catch (const Error&) {
                continue;  // collinear or exhausted dof: not a candidate
            }
            const double p = f.p_value(X.names[pool[c]]);
            if (p < best_p ||
                (p == best_p && best >= 0 &&
                 X.names[pool[c]] < X.names[pool[(std::size_t)best]])) {
                best = (std::ptrdiff_t)c;
                best_p = p;
                best_fit = std::move(f);
            }
        }
        if (best < 0 || best_p > alpha) break;
        const std::size_t chosen = pool[(std::size_t)best];
        current.add(X.names[chosen], X.columns[chosen]);
        pool.erase(pool.begin() + best);
        SpecStep step;
        step.entered = X.names[chosen];
        step.entry_p_value = best_p;
        step.abs_t_ranking = detail::t_ranking(best_fit);
        step.fit = std::move(best_fit);
        ladder.steps.push_back(std::move(step));
    }
    return ladder;
}

}  // namespace macrorisk
