#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "ratla/invest.hpp"

using namespace ratla;

namespace {

Scalar q(const char* s) { return parse_scalar(s); }

InvestmentModel strawberry_model() {
    return build_transition({{"cakes", 4}, {"jam", 2}, {"fair", q("2/3")}});
}

}  // namespace

TEST_CASE("transition matrix of the strawberry sectors", "[invest]") {
    auto m = strawberry_model();
    CHECK(m.transition == parse_matrix("2,1/3,0;1,4/3,0;1,1/3,2/3"));
    CHECK(m.sectors[2].name == "fair");
}

TEST_CASE("transition edge cases", "[invest]") {
    CHECK(build_transition(std::vector<Scalar>{1, 1, 1}).transition == Matrix::identity(3));

    // Frozen from a step-by-step simulation of one year on each unit vector.
    const std::vector<Scalar> growth{1, 1, 4};
    auto m = build_transition(growth);
    CHECK(m.transition == Matrix{{1, 0, 1}, {0, 1, 1}, {0, 0, 2}});
    for (std::size_t j = 0; j < 3; ++j) {
        std::vector<Scalar> unit(3);
        unit[j] = 1;
        CHECK(m.transition.column(j) == oracle::simulate_year(growth, unit));
    }

    CHECK_THROWS_AS(build_transition(std::vector<Scalar>{1, -1}), domain_error);
    CHECK_THROWS_AS(build_transition(std::vector<Scalar>{}), shape_error);
    CHECK(build_transition(std::vector<Scalar>{3}).transition == Matrix{{3}});
}

TEST_CASE("optimal allocation for a 4200 budget", "[invest]") {
    auto m = strawberry_model();
    auto a = optimal_allocation(m, 4200);
    CHECK(a.amounts == Vector{1500, 1500, 1200});
    CHECK(a.growth_rate == q("7/3"));
    CHECK(a.budget == Scalar(4200));
    CHECK(evolve(m, a.amounts, 1) == Vector{3500, 3500, 2800});
    CHECK(evolve(m, a.amounts, 0) == a.amounts);
    CHECK(evolve(m, a.amounts, 2) == Vector{q("24500/3"), q("24500/3"), q("19600/3")});
    CHECK(evolve(m, a.amounts, 2) == evolve(m, evolve(m, a.amounts, 1), 1));
    CHECK_THROWS_AS(evolve(m, Vector{1, 2}, 1), shape_error);
    CHECK_THROWS_AS(optimal_allocation(m, 0), domain_error);
}

TEST_CASE("eigenvalue 1 is skipped for its mixed-sign eigenvector", "[invest]") {
    auto m = strawberry_model();
    auto v = eigenspace(m.transition, Scalar(1));
    REQUIRE(v.size() == 1);
    CHECK(v[0] == Vector{1, -3, 0});
    CHECK(optimal_allocation(m, 4200).growth_rate != Scalar(1));
}

TEST_CASE("identity model splits the budget evenly", "[invest]") {
    auto m = build_transition(std::vector<Scalar>{1, 1, 1});
    auto a = optimal_allocation(m, 900);
    CHECK(a.amounts == Vector{300, 300, 300});
    CHECK(a.growth_rate == Scalar(1));
}

TEST_CASE("allocation errors", "[invest]") {
    // Eigenvalues 1 +- sqrt(1/2) are irrational.
    InvestmentModel irrational{{{"a", 0}, {"b", 0}}, Matrix{{1, q("1/2")}, {1, 1}}};
    CHECK_THROWS_AS(optimal_allocation(irrational, 100), exactness_unavailable);

    // 1 -> (1,-1) is skipped; -1 -> (1,1) is the first feasible one.
    InvestmentModel flip{{{"a", 0}, {"b", 0}}, Matrix{{0, -1}, {-1, 0}}};
    CHECK(optimal_allocation(flip, 10).growth_rate == Scalar(-1));

    // 2 -> (1,1), 1 -> (1,0).
    InvestmentModel upper{{{"a", 0}, {"b", 0}}, Matrix{{1, 1}, {0, 2}}};
    CHECK(optimal_allocation(upper, 10).amounts == Vector{5, 5});

    // 3 -> (1,-1), -1 -> (1,1).
    InvestmentModel mixed{{{"a", 0}, {"b", 0}}, Matrix{{1, -2}, {-2, 1}}};
    CHECK(optimal_allocation(mixed, 8).amounts == Vector{4, 4});

    // Double eigenvalue 2 with eigenvector (1,1).
    InvestmentModel shear{{{"a", 0}, {"b", 0}}, Matrix{{1, 1}, {-1, 3}}};
    CHECK(optimal_allocation(shear, 6).growth_rate == Scalar(2));

    // Double eigenvalue 1 with eigenvector (1,-1) only.
    InvestmentModel hopeless{{{"a", 0}, {"b", 0}}, Matrix{{-1, -2}, {2, 3}}};
    CHECK_THROWS_AS(optimal_allocation(hopeless, 6), no_feasible_allocation);

    CHECK_THROWS_AS(optimal_allocation(build_transition(std::vector<Scalar>{1, 2, 3, 4}), 10), shape_error);
    auto single = optimal_allocation(build_transition(std::vector<Scalar>{3}), 10);
    CHECK(single.amounts == Vector{10});
    CHECK(single.growth_rate == Scalar(3));
}

TEST_CASE("investment model properties", "[invest][property]") {
    std::mt19937_64 rng(51);
    std::uniform_int_distribution<int> size(1, 3);
    int allocations = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto n = static_cast<std::size_t>(size(rng));
        std::vector<Scalar> g;
        for (std::size_t k = 0; k < n; ++k) g.push_back(oracle::random_scalar(rng, 9, 3).abs());
        auto m = build_transition(g);

        for (std::size_t j = 0; j < n; ++j) {
            Scalar col;
            for (std::size_t r = 0; r < n; ++r) {
                REQUIRE(m.transition(r, j).sign() >= 0);
                col += m.transition(r, j);
            }
            REQUIRE(col == g[j]);
        }

        Vector x;
        for (std::size_t k = 0; k < n; ++k) x.push_back(oracle::random_scalar(rng, 50, 4).abs());
        auto next = evolve(m, x, 1);
        REQUIRE(next == oracle::simulate_year(g, x));
        Scalar total;
        Scalar expected;
        for (std::size_t k = 0; k < n; ++k) {
            total += next[k];
            expected += g[k] * x[k];
        }
        REQUIRE(total == expected);

        bool all_growing = std::all_of(g.begin(), g.end(), [](const Scalar& s) { return s >= Scalar(1); });
        if (all_growing) {
            for (std::size_t k = 0; k < n; ++k) REQUIRE(next[k] >= x[k]);
        }

        try {
            auto a = optimal_allocation(m, 1000);
            auto b = optimal_allocation(m, 3000);
            Scalar sum;
            for (std::size_t k = 0; k < n; ++k) {
                REQUIRE(a.amounts[k].sign() >= 0);
                REQUIRE(b.amounts[k] == a.amounts[k] * 3);
                sum += a.amounts[k];
            }
            REQUIRE(sum == Scalar(1000));
            REQUIRE(a.growth_rate == b.growth_rate);
            Vector grown = a.amounts;
            for (auto& v : grown) v *= a.growth_rate;
            REQUIRE(evolve(m, a.amounts, 1) == grown);
            ++allocations;
        } catch (const exactness_unavailable&) {
        }
    }
    CHECK(allocations > 500);
}
