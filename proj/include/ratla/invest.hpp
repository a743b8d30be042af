#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eigen.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "scalar.hpp"

namespace ratla {

/// A sector returning `growth_factor` per unit invested per year.
struct SectorSpec {
    std::string name;
    Scalar growth_factor;
};

struct InvestmentModel {
    std::vector<SectorSpec> sectors;
    Matrix transition;

    std::size_t size() const { return sectors.size(); }
};

struct Allocation {
    Vector amounts;
    Scalar budget;
    Scalar growth_rate;
};

/**
 * Year-transition matrix of the keep-then-redistribute policy.
 *
 * Each sector keeps min(g, 1) of its stake; the profit max(g - 1, 0) per unit
 * is shared equally by all n sectors, so
 * transition[i][j] = [i == j] * min(g_j, 1) + max(g_j - 1, 0) / n
 * and column j sums to g_j.
 */
inline InvestmentModel build_transition(std::vector<SectorSpec> specs) {
    const std::size_t n = specs.size();
    if (n == 0) throw shape_error("an investment model needs at least one sector");
    std::vector<Scalar> e(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        const Scalar& g = specs[j].growth_factor;
        if (g.sign() < 0) throw domain_error("negative growth factor for sector '" + specs[j].name + "'");
        const Scalar kept = g < Scalar(1) ? g : Scalar(1);
        const Scalar share = g > Scalar(1) ? (g - 1) / Scalar(static_cast<long long>(n)) : Scalar(0);
        for (std::size_t i = 0; i < n; ++i) e[i * n + j] = (i == j ? kept : Scalar(0)) + share;
    }
    return {std::move(specs), Matrix(n, n, std::move(e))};
}

/// Sectors named A, B, C, ... in order.
inline InvestmentModel build_transition(const std::vector<Scalar>& growth_factors) {
    std::vector<SectorSpec> specs;
    for (std::size_t j = 0; j < growth_factors.size(); ++j) {
        specs.push_back({std::string(1, static_cast<char>('A' + j % 26)) + (j >= 26 ? std::to_string(j / 26) : ""),
                         growth_factors[j]});
    }
    return build_transition(std::move(specs));
}

/// transition^years * allocation.
inline Vector evolve(const InvestmentModel& model, Vector allocation, std::size_t years) {
    if (allocation.size() != model.size()) throw shape_error("allocation length does not match the sector count");
    for (std::size_t y = 0; y < years; ++y) allocation = mat_vec(model.transition, allocation);
    return allocation;
}

namespace detail {

inline bool is_feasible_direction(const Vector& v) {
    bool any_positive = false;
    for (const auto& x : v) {
        if (x.sign() < 0) return false;
        if (x.sign() > 0) any_positive = true;
    }
    return any_positive;
}

/// Nonnegative candidate from a normalized eigenspace basis, if the search finds one.
inline std::optional<Vector> nonnegative_direction(const std::vector<Vector>& basis) {
    if (basis.size() > 1) {
        Vector sum(basis.front().size());
        for (const auto& v : basis) {
            for (std::size_t k = 0; k < v.size(); ++k) sum[k] += v[k];
        }
        if (is_feasible_direction(sum)) return sum;
    }
    for (const auto& v : basis) {
        if (is_feasible_direction(v)) return v;
    }
    return std::nullopt;
}

}  // namespace detail

/**
 * Budget split that grows proportionally every year.
 *
 * Walks the real eigenvalues from largest to smallest and takes the first
 * whose eigenspace holds a nonnegative, nonzero direction, scaled to sum to
 * the budget. Throws exactness_unavailable when an irrational eigenvalue is
 * reached before any feasible rational one.
 */
inline Allocation optimal_allocation(const InvestmentModel& model, const Scalar& budget) {
    if (budget.sign() <= 0) throw domain_error("budget must be positive");
    const std::size_t n = model.size();

    auto scaled = [&](Vector v, const Scalar& rate) {
        Scalar total;
        for (const auto& x : v) total += x;
        for (auto& x : v) x = x * budget / total;
        return Allocation{std::move(v), budget, rate};
    };

    if (n == 1) {
        return scaled(Vector{Scalar(1)}, model.transition(0, 0));
    }
    if (n > 3) throw shape_error("optimal allocation supports at most 3 sectors");

    const auto spectrum = eigen_decompose(model.transition);
    for (const auto& pair : spectrum.pairs) {
        if (!pair.eigenvalue.exact) {
            throw exactness_unavailable("eigenvalue " + pair.eigenvalue.to_string() +
                                        " is irrational; no exact allocation");
        }
        if (auto direction = detail::nonnegative_direction(pair.basis)) {
            return scaled(std::move(*direction), pair.eigenvalue.value);
        }
    }
    throw no_feasible_allocation("no eigenvalue has a nonnegative eigenvector");
}

}  // namespace ratla
