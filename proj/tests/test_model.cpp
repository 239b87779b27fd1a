#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pda/model.hpp"
#include "property_checks.hpp"

using namespace pda;

namespace {
HistoryState hist(std::vector<int> winners) { return HistoryState{std::move(winners)}; }
}  // namespace

TEST_CASE("win counts over the window") {
    CHECK(win_counts(hist({0, 2, 0}), 0, 3) == 2);
    CHECK(win_counts(hist({0, 2, 0}), 1, 3) == 0);
    CHECK(win_counts(hist({0, 2, 0}), 2, 3) == 1);
    CHECK(win_counts(hist({0, 0, 0}), 0, 3) == 3);
    CHECK_THROWS_AS(win_counts(hist({0, 1}), 2, 2), std::domain_error);
    CHECK_THROWS_AS(win_counts(hist({0, 1}), -1, 2), std::domain_error);

    // counts over all players partition the window
    const auto counts = all_win_counts(hist({1, 3, 1, 0}), 4);
    CHECK(counts == std::vector<int>{1, 2, 0, 1});
}

TEST_CASE("alpha-exponential difficulty vector") {
    const auto config = SystemConfig::make(3, 3, DifficultyFnSpec::alpha_exponential(2.0));
    const auto d = difficulty_vector(hist({0, 2, 0}), config);
    CHECK(d.d[0] == doctest::Approx(4.0 / 7.0).epsilon(1e-14));
    CHECK(d.d[1] == doctest::Approx(1.0 / 7.0).epsilon(1e-14));
    CHECK(d.d[2] == doctest::Approx(2.0 / 7.0).epsilon(1e-14));

    const auto two = SystemConfig::make(2, 2, DifficultyFnSpec::alpha_exponential(5.0));
    const auto d2 = difficulty_vector(hist({0, 0}), two);
    CHECK(d2.d[0] == doctest::Approx(25.0 / 26.0).epsilon(1e-14));
    CHECK(d2.d[1] == doctest::Approx(1.0 / 26.0).epsilon(1e-14));
}

TEST_CASE("alpha = 1 collapses to uniform") {
    const auto config = SystemConfig::make(3, 3, DifficultyFnSpec::alpha_exponential(1.0));
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        HistoryState h;
        for (int j = 0; j < 3; ++j) h.winners.push_back(static_cast<int>(rng() % 3));
        const auto d = difficulty_vector(h, config);
        for (double v : d.d) CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    }
}

TEST_CASE("win probabilities follow power over difficulty") {
    const Distribution p =
        win_probabilities({1, 1, 1}, DifficultyVector{{4.0 / 7, 1.0 / 7, 2.0 / 7}});
    CHECK(p.p[0] == doctest::Approx(1.0 / 7).epsilon(1e-14));
    CHECK(p.p[1] == doctest::Approx(4.0 / 7).epsilon(1e-14));
    CHECK(p.p[2] == doctest::Approx(2.0 / 7).epsilon(1e-14));

    const Distribution shares =
        win_probabilities({1, 2, 3}, DifficultyVector{{1.0 / 3, 1.0 / 3, 1.0 / 3}});
    CHECK(shares.p[0] == doctest::Approx(1.0 / 6).epsilon(1e-14));
    CHECK(shares.p[1] == doctest::Approx(2.0 / 6).epsilon(1e-14));
    CHECK(shares.p[2] == doctest::Approx(3.0 / 6).epsilon(1e-14));

    const Distribution skew = win_probabilities({1, 1}, DifficultyVector{{0.2, 0.8}});
    CHECK(skew.p[0] == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(skew.p[1] == doctest::Approx(0.2).epsilon(1e-14));

    CHECK_THROWS_AS(win_probabilities({1, 1}, DifficultyVector{{0.0, 1.0}}),
                    std::domain_error);
    CHECK_THROWS_AS(win_probabilities({1.0}, DifficultyVector{{0.5, 0.5}}),
                    std::invalid_argument);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(SystemConfig::make(0, 2, DifficultyFnSpec::uniform()),
                    std::invalid_argument);
    CHECK_THROWS_AS(SystemConfig::make(2, 0, DifficultyFnSpec::uniform()),
                    std::invalid_argument);
    CHECK_THROWS_AS(SystemConfig::make(2, 2, DifficultyFnSpec::uniform(), {1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SystemConfig::make(2, 2, DifficultyFnSpec::uniform(), {1.0, -1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(DifficultyFnSpec::alpha_exponential(0.0), std::invalid_argument);

    const auto config = SystemConfig::make(3, 2, DifficultyFnSpec::uniform());
    CHECK(config.powers == std::vector<double>{1.0, 1.0, 1.0});
    CHECK(config.equal_powers());
    CHECK(config.valid_state(hist({0, 2})));
    CHECK_FALSE(config.valid_state(hist({0, 3})));
    CHECK_FALSE(config.valid_state(hist({0, 1, 2})));
}

TEST_CASE("runtime state derives difficulties from history") {
    const auto config = SystemConfig::make(3, 3, DifficultyFnSpec::alpha_exponential(2.0));
    const RuntimeState state = RuntimeState::from_history(hist({0, 2, 0}), config);
    CHECK(state.difficulties.d[0] == doctest::Approx(4.0 / 7.0));
    double sum = 0.0;
    for (double v : state.difficulties.d) sum += v;
    CHECK(std::abs(sum - 1.0) <= kSumTolerance);
}

TEST_CASE("normalization holds over random inputs") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 1000; ++i) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const int k = 1 + static_cast<int>(rng() % 6);
        const double alpha =
            1.0 + 5.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
        const auto config =
            SystemConfig::make(n, k, DifficultyFnSpec::alpha_exponential(alpha));
        HistoryState h;
        for (int j = 0; j < k; ++j) h.winners.push_back(static_cast<int>(rng() % n));
        const auto d = difficulty_vector(h, config);
        double sum = 0.0;
        for (double v : d.d) sum += v;
        CHECK(std::abs(sum - 1.0) <= kSumTolerance);
        const auto p = win_probabilities(config.powers, d);
        CHECK(std::abs(p.sum() - 1.0) <= kSumTolerance);
    }
}

TEST_CASE("permutation equivariance of the difficulty function") {
    pda::testing::Gen gen(31);
    for (int i = 0; i < 1000; ++i) {
        const int n = gen.uniform_int(2, 5);
        const int k = gen.uniform_int(1, 6);
        const auto config =
            SystemConfig::make(n, k, DifficultyFnSpec::alpha_exponential(
                                         gen.uniform_real(1.0, 6.0)));
        const HistoryState h = gen.history(n, k);
        const auto sigma = gen.permutation(n);
        HistoryState relabeled = h;
        for (int& w : relabeled.winners) w = sigma[w];
        const auto base = difficulty_vector(h, config);
        const auto moved = difficulty_vector(relabeled, config);
        for (int player = 0; player < n; ++player)
            CHECK(moved.d[sigma[player]] == doctest::Approx(base.d[player]).epsilon(1e-13));
    }
}

TEST_CASE("monotone penalty: more past wins, lower win probability") {
    pda::testing::Gen gen(37);
    for (int i = 0; i < 1000; ++i) {
        const int n = gen.uniform_int(2, 5);
        const int k = gen.uniform_int(2, 6);
        const auto config =
            SystemConfig::make(n, k, DifficultyFnSpec::alpha_exponential(
                                         gen.uniform_real(1.1, 6.0)));
        const HistoryState h = gen.history(n, k);
        const auto counts = all_win_counts(h, n);
        const auto p = win_probabilities(config.powers, difficulty_vector(h, config));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (counts[a] > counts[b]) CHECK(p.p[a] < p.p[b]);
    }
}

TEST_CASE("config JSON schema") {
    const auto config =
        config_from_json_text(R"({"n": 3, "k": 2, "alpha": null, "powers": null})");
    CHECK(config.n == 3);
    CHECK(config.k == 2);
    CHECK(config.difficulty_fn.kind == DifficultyKind::Uniform);
    CHECK(config.powers == std::vector<double>{1.0, 1.0, 1.0});

    const auto sharp =
        config_from_json_text(R"({"n": 2, "k": 4, "alpha": 2.5, "powers": [1.0, 3.0]})");
    CHECK(sharp.difficulty_fn.kind == DifficultyKind::AlphaExponentialNonOrdered);
    CHECK(sharp.difficulty_fn.alpha == 2.5);
    CHECK(sharp.powers == std::vector<double>{1.0, 3.0});

    // round trip
    const auto back = config_from_json_text(config_to_json_text(sharp));
    CHECK(back.n == sharp.n);
    CHECK(back.k == sharp.k);
    CHECK(back.difficulty_fn.alpha == sharp.difficulty_fn.alpha);
    CHECK(back.powers == sharp.powers);

    CHECK_THROWS(config_from_json_text(R"({"k": 2})"));
    CHECK_THROWS(config_from_json_text(R"({"n": 0, "k": 2})"));
    CHECK_THROWS(config_from_json_text(R"({"n": 2, "k": 2, "alpha": -1})"));
    CHECK_THROWS(config_from_json_text(R"({"n": 2, "k": 2, "powers": [1.0]})"));
}

TEST_CASE("scale invariance property") {
    const auto result = pda::testing::check_scale_invariance(101);
    INFO(result.first_failure);
    CHECK(result.cases >= 1000);
    CHECK(result.failures == 0);
}
