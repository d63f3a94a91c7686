// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#include <doctest.h>

#include <vector>

#include "acp/error.hpp"
#include "acp/numerology.hpp"

using namespace acp;
using namespace acp::numerology;

TEST_SUITE("numerology") {

TEST_CASE("delay-spread plan holds T and B fixed") {
    // 6 * 16/6 us = 16 us of CP in an 80 us symbol at 32 MHz
    const auto p = plan_from_delay_spread(80e-6, 32e6, 16e-6 / 6.0, 6.0, 64);
    CHECK(p.K == 512);
    CHECK(p.N == 2048);
    CHECK(p.M == 64);
    CHECK(p.T_c == doctest::Approx(16e-6).epsilon(1e-12));
    CHECK(p.T_d == doctest::Approx(64e-6).epsilon(1e-12));
    CHECK(p.delta_f == doctest::Approx(15625.0).epsilon(1e-12));
    CHECK(p.T_s == doctest::Approx(31.25e-9).epsilon(1e-12));
    CHECK(p.T_c + p.T_d == doctest::Approx(p.T).epsilon(1e-15));
}

TEST_CASE("plan from a CP duration") {
    const auto p = plan_from_cp(10e-6, 32e6, 2e-6, 48);
    CHECK(p.N == 256);
    CHECK(p.K == 64);
    CHECK(static_cast<double>(p.N) * p.delta_f == doctest::Approx(p.B).epsilon(1e-12));
}

TEST_CASE("zero delay spread leaves no CP") {
    const auto p = plan_from_delay_spread(10e-6, 32e6, 0.0, 6.0, 1);
    CHECK(p.K == 0);
    CHECK(p.N == 320);
}

TEST_CASE("ceil_samples forgives a few ulps") {
    CHECK(ceil_samples(16e-6 / 31.25e-9) == 512);
    CHECK(ceil_samples(512.0001) == 513);
    CHECK(ceil_samples(0.0) == 0);
    CHECK(ceil_samples(0.2) == 1);
}

TEST_CASE("power of two") {
    CHECK(is_power_of_two(1));
    CHECK(is_power_of_two(4096));
    CHECK_FALSE(is_power_of_two(0));
    CHECK_FALSE(is_power_of_two(1543));
}

TEST_CASE("overhead with a fixed data portion") {
    // T_c / (T_d + T_c) with T_c = 6 * tau
    CHECK(overhead_fixed_data_portion(2e-6, 200.3e-9, 6.0) == doctest::Approx(1.2018 / 3.2018).epsilon(1e-12));
    CHECK(overhead_fixed_data_portion(2e-6, 12.1e-9, 6.0) == doctest::Approx(0.0726 / 2.0726).epsilon(1e-12));
    CHECK(overhead_fixed_data_portion(2e-6, 0.0, 6.0) == 0.0);
}

TEST_CASE("fixed grid enumeration") {
    const auto grid = enumerate_fixed_grid_cp(500e-6, 66.7e-6);
    REQUIRE(grid.size() == 7);
    CHECK(grid[0].n == 7);
    CHECK(grid[0].T_c == doctest::Approx(500e-6 / 7.0 - 66.7e-6).epsilon(1e-12));
    CHECK(grid[1].n == 6);
    CHECK(grid[1].T_c == doctest::Approx(500e-6 / 6.0 - 66.7e-6).epsilon(1e-12));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        CHECK(grid[i].overhead > grid[i - 1].overhead);
    }
}

TEST_CASE("clocked plan for one period") {
    const double Ts = 31.25e-9;
    const double Ts_tilde = Ts * 250.0 / 256.0;
    const auto c = clocked_plan_for_period(10e-6, Ts, 256, Ts_tilde);
    CHECK(c.base.N == 250);
    CHECK(c.N_tilde == 256);
    CHECK(c.base.T_d == doctest::Approx(7.8125e-6).epsilon(1e-12));
    CHECK(c.base.T_c == doctest::Approx(2.1875e-6).epsilon(1e-12));
    CHECK(c.K_tilde == 72);
    CHECK(c.symbol_time_residual == doctest::Approx((256.0 + 72.0) * Ts_tilde - 10e-6).epsilon(1e-9));
    // the transform span equals the data portion on both grids
    CHECK(static_cast<double>(c.N_tilde) * c.Ts_tilde ==
          doctest::Approx(static_cast<double>(c.base.N) * c.base.T_s).epsilon(1e-12));
}

TEST_CASE("clock-rate plan picks the smallest feasible CP") {
    const double Ts = 31.25e-9;
    const std::vector<double> periods{30e-9, Ts * 250.0 / 256.0, Ts};
    const auto c = plan_from_clock_rates(10e-6, Ts, 256, periods, 100e-9, 6.0);
    CHECK(c.Ts_tilde == Ts);
    CHECK(c.base.N == 256);
    // a larger delay spread rules the CP-poor candidate out
    const auto wide = plan_from_clock_rates(10e-6, Ts, 256, periods, 350e-9, 6.0);
    CHECK(wide.base.N == 250);
}

TEST_CASE("clock-rate plan reports infeasibility") {
    const std::vector<double> periods{30e-9};
    try {
        (void)plan_from_clock_rates(10e-6, 31.25e-9, 256, periods, 100e-9, 6.0);
        FAIL("expected no_feasible_clock");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::no_feasible_clock);
    }
    CHECK_THROWS_AS((void)plan_from_clock_rates(10e-6, 31.25e-9, 250, periods, 0.0, 6.0), Error);
}

TEST_CASE("common CP and grouping") {
    const std::vector<UserDelayProfile> users{{"a", 12.1e-9, 6.0}, {"b", 200.3e-9, 6.0}, {"c", 50e-9, 6.0}};
    CHECK(common_cp_for_group(users) == doctest::Approx(6.0 * 200.3e-9));
    CHECK_THROWS_AS((void)common_cp_for_group(std::vector<UserDelayProfile>{}), Error);

    const std::vector<double> edges{0.5e-6, 1e-6, 2e-6};
    const auto groups = group_users_by_cp(users, edges);
    REQUIRE(groups.size() == 2);
    CHECK(groups[0].T_c == 0.5e-6);
    CHECK(groups[0].users.size() == 2);
    CHECK(groups[1].T_c == 2e-6);
    CHECK(groups[1].users.front().user_id == "b");

    const std::vector<double> tight{0.1e-6};
    try {
        (void)group_users_by_cp(users, tight);
        FAIL("expected out_of_range");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::out_of_range);
    }
}

TEST_CASE("invalid plans carry their error code") {
    auto code_of = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::invalid_argument;
    };
    CHECK(code_of([] { (void)plan_from_cp(10e-6, 32e6, 10e-6, 1); }) == ErrorCode::cp_exceeds_symbol);
    CHECK(code_of([] { (void)plan_from_cp(10e-6, 32e6, 2e-6, 257); }) == ErrorCode::block_too_large);
    CHECK(code_of([] { (void)clocked_plan_for_period(10e-6, 31.25e-9, 250, 30e-9); }) ==
          ErrorCode::not_power_of_two);
    CHECK_THROWS_AS((void)plan_from_cp(-1.0, 32e6, 0.0, 1), Error);
    CHECK_THROWS_AS((void)plan_from_delay_spread(10e-6, 32e6, -1e-9, 6.0, 1), Error);
}

} // TEST_SUITE
