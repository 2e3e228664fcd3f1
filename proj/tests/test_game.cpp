#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "sfgame/game.hpp"
#include "sfgame/rng.hpp"

using namespace sfgame;
using namespace sfgame::game;

namespace {

GameWeights default_weights() { return GameWeights{}; }

constexpr ActionPair kNbNd{ChAction::NoBeacon, CmAction::NoDrop};
constexpr ActionPair kBD{ChAction::Beacon, CmAction::Drop};
constexpr ActionPair kNbD{ChAction::NoBeacon, CmAction::Drop};
constexpr ActionPair kBNd{ChAction::Beacon, CmAction::NoDrop};

}  // namespace

TEST_CASE("reliability") {
    CHECK(reliability({100, 100}) == 1.0);
    CHECK(reliability({60, 100}) == doctest::Approx(0.6));
    CHECK(reliability({110, 100}) == doctest::Approx(1.1));  // over-transmission
    CHECK(reliability({0, 100}) == 0.0);
    CHECK_THROWS_AS(reliability({1, 0}), std::invalid_argument);
}

TEST_CASE("punishment components and selection") {
    const GameWeights w = default_weights();

    SUBCASE("cooperative pair owes nothing") {
        const auto p = punishment(kBNd, {100, 100}, w);
        CHECK(p.applied_j == 0.0);
    }

    SUBCASE("x1 at full delivery equals the window energy") {
        const auto p = punishment(kNbNd, {100, 100}, w);
        CHECK(p.applied_j == p.x1_j);
        CHECK(p.x1_j == doctest::Approx(100 * 1024 * 50e-9).epsilon(1e-12));  // 5.12e-3 J
        CHECK(p.x2_j == 0.0);
    }

    SUBCASE("x3 at partial delivery splits into x1 + x2") {
        const auto p = punishment(kNbD, {60, 100}, w);
        CHECK(p.applied_j == p.x3_j);
        CHECK(p.x1_j == doctest::Approx(3.072e-3).epsilon(1e-9));
        CHECK(p.x2_j == doctest::Approx(2.048e-3).epsilon(1e-9));
        CHECK(p.x3_j == p.x1_j + p.x2_j);
        CHECK(p.x3_j == doctest::Approx(5.12e-3).epsilon(1e-12));
    }

    SUBCASE("full drop under beacon owes the whole window") {
        const auto p = punishment(kBD, {0, 100}, w);
        CHECK(p.applied_j == p.x2_j);
        CHECK(p.x2_j == doctest::Approx(5.12e-3).epsilon(1e-12));
        CHECK(p.x1_j == 0.0);
    }

    SUBCASE("punishment is zero iff the pair is (B, ND)") {
        const WindowOutcome outcome{60, 100};
        CHECK(punishment(kBNd, outcome, w).applied_j == 0.0);
        CHECK(punishment(kNbNd, outcome, w).applied_j > 0.0);
        CHECK(punishment(kBD, outcome, w).applied_j > 0.0);
        CHECK(punishment(kNbD, outcome, w).applied_j > 0.0);
    }
}

TEST_CASE("punishment identities are bit-exact for random tuples") {
    Rng rng(99, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        GameWeights w;
        w.window_packets = 1 + static_cast<int>(rng.below(10000));
        w.packet_len_bits = 1 + static_cast<long>(rng.below(65536));
        w.energy_per_bit_j = 1e-10 + rng.uniform() * 1e-5;
        const int fwd = static_cast<int>(rng.below(static_cast<std::uint64_t>(w.window_packets) + 1));
        const WindowOutcome outcome{fwd, w.window_packets};

        const auto p = punishment(kNbD, outcome, w);
        CHECK(p.x3_j == p.x1_j + p.x2_j);
        const double expected_total =
            static_cast<double>(w.window_packets) *
            (static_cast<double>(w.packet_len_bits) * w.energy_per_bit_j);
        CHECK(p.x1_j + p.x2_j == expected_total);
        CHECK(p.x1_j + p.x2_j == window_energy_j(w));
        CHECK(p.x1_j >= 0.0);
        CHECK(p.x2_j >= 0.0);
    }
}

TEST_CASE("utility breakdown") {
    const GameWeights w = default_weights();

    SUBCASE("weighted identity") {
        const auto u = utility(0.0, 1.0, 0.0, w);
        CHECK(u.total == doctest::Approx(0.4));
    }

    SUBCASE("chained from the radio example") {
        const auto u = utility(4.75, 1.0, 0.0, w);
        CHECK(u.total == doctest::Approx(0.6 * 4.75 + 0.4));
    }

    SUBCASE("punished full drop sits strictly below the cooperative utility") {
        const auto x3 = punishment(kNbD, {0, 100}, w).applied_j;
        const auto punished = utility(4.75, 0.0, x3, w);
        const auto cooperative = utility(4.75, 1.0, 0.0, w);
        CHECK(punished.total < cooperative.total);
    }

    SUBCASE("strictly decreasing in xi, strictly increasing in rl") {
        Rng rng(7, 0);
        for (int trial = 0; trial < 500; ++trial) {
            const double rssi = rng.normal(0.0, 10.0);
            const double rl = rng.uniform();
            const double xi = rng.uniform() * 1e-2;
            const double more_xi = xi + 1e-4 + rng.uniform() * 1e-3;
            const double more_rl = rl + 1e-3 + rng.uniform() * 0.1;
            CHECK(utility(rssi, rl, more_xi, w).total < utility(rssi, rl, xi, w).total);
            CHECK(utility(rssi, more_rl, xi, w).total > utility(rssi, rl, xi, w).total);
        }
    }
}

TEST_CASE("data trustworthiness") {
    CHECK(data_trustworthiness({{0.0, 0.0}, {0.0, 0.0}}) == 0.0);
    CHECK(data_trustworthiness({{1.0, 2.0}, {2.0, 3.0}}) == doctest::Approx(4.0));
    CHECK(data_trustworthiness({{7.0}}) == doctest::Approx(7.0));
    CHECK_THROWS_AS(data_trustworthiness({}), std::domain_error);

    SUBCASE("invariant under permutation of CM indices within a round") {
        Rng rng(3, 0);
        std::vector<std::vector<double>> history(5);
        for (auto& round : history)
            for (int i = 0; i < 10; ++i) round.push_back(rng.normal(0.0, 5.0));
        const double before = data_trustworthiness(history);
        for (auto& round : history) {
            // deterministic shuffle
            for (std::size_t i = round.size(); i > 1; --i)
                std::swap(round[i - 1], round[rng.below(i)]);
        }
        CHECK(data_trustworthiness(history) == doctest::Approx(before).epsilon(1e-12));
    }
}

TEST_CASE("best response") {
    CHECK(best_response_cm(3.25, 1.1) == CmAction::NoDrop);
    CHECK(best_response_cm(2.0, 2.0) == CmAction::NoDrop);  // tie breaks toward ND
    CHECK(best_response_cm(1.0, 2.5) == CmAction::Drop);

    SUBCASE("argmax invariant under positive scaling") {
        Rng rng(31, 0);
        for (int trial = 0; trial < 500; ++trial) {
            const double u_nd = rng.normal(0.0, 5.0);
            const double u_d = rng.normal(0.0, 5.0);
            const double scale = 1e-6 + rng.uniform() * 100.0;
            CHECK(best_response_cm(u_nd, u_d) == best_response_cm(u_nd * scale, u_d * scale));
        }
    }
}

TEST_CASE("nash predicate") {
    SUBCASE("no profitable deviation") {
        std::vector<DeviationCheck> players = {
            {3.25, {1.1}},
            {3.25, {0.5, 3.25}},  // equal alternative is not a strict improvement
            {10.0, {}},
        };
        CHECK(is_nash(players));
    }

    SUBCASE("one profitable deviation breaks it") {
        std::vector<DeviationCheck> players = {
            {3.25, {1.1}},
            {0.2, {0.6}},
        };
        CHECK_FALSE(is_nash(players));
    }

    SUBCASE("single CM with equal payoffs is an equilibrium") {
        CHECK(is_nash({{1.0, {1.0}}}));
    }
}

TEST_CASE("pareto predicate on DT") {
    CHECK(is_pareto_optimal_dt(4.0, {1.0, 2.0, 3.0}));
    CHECK_FALSE(is_pareto_optimal_dt(2.5, {1.0, 2.0, 3.0}));
    CHECK(is_pareto_optimal_dt(2.0, {2.0, 2.0}));  // weak dominance
}
