// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#include "acp/numerology.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "acp/error.hpp"

namespace acp::numerology {

namespace {

// Relative slack used when a duration ratio should land on an integer.
constexpr double integer_slack = 1e-9;
// Clock-derived N must be this close to an integer to be usable.
constexpr double clock_integrality = 1e-6;

void check_common(double T, double B) {
    require(std::isfinite(T) && T > 0.0, ErrorCode::invalid_argument, "symbol time T must be > 0");
    require(std::isfinite(B) && B > 0.0, ErrorCode::invalid_argument, "bandwidth B must be > 0");
}

} // namespace

Count ceil_samples(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) <= integer_slack * std::max(1.0, std::abs(x))) {
        return static_cast<Count>(r);
    }
    return static_cast<Count>(std::ceil(x));
}

bool is_power_of_two(Count n) { return n > 0 && (n & (n - 1)) == 0; }

NumerologyPlan plan_from_cp(double T, double B, double T_c, Count M) {
    check_common(T, B);
    require(std::isfinite(T_c) && T_c >= 0.0, ErrorCode::invalid_argument, "CP duration must be >= 0");
    if (T_c >= T) {
        fail(ErrorCode::cp_exceeds_symbol,
             fmt::format("CP duration {:g} s is not shorter than the symbol time {:g} s", T_c, T));
    }

    NumerologyPlan plan;
    plan.T = T;
    plan.T_c = T_c;
    plan.T_d = T - T_c;
    plan.T_s = 1.0 / B;
    plan.B = B;
    plan.N = static_cast<Count>(std::llround(plan.T_d * B));
    plan.K = ceil_samples(T_c * B);
    plan.delta_f = 1.0 / plan.T_d;
    require(plan.N >= 1, ErrorCode::block_too_large, "data portion holds no samples");
    require(M >= 1, ErrorCode::invalid_argument, "block length M must be >= 1");
    if (M > plan.N) {
        fail(ErrorCode::block_too_large, fmt::format("block length M={} exceeds N={}", M, plan.N));
    }
    plan.M = M;
    return plan;
}

NumerologyPlan plan_from_delay_spread(double T, double B, double tau, double cp_multiple, Count M) {
    require(std::isfinite(tau) && tau >= 0.0, ErrorCode::invalid_argument, "delay spread tau must be >= 0");
    require(std::isfinite(cp_multiple) && cp_multiple > 0.0, ErrorCode::invalid_argument,
            "cp_multiple must be > 0");
    return plan_from_cp(T, B, cp_multiple * tau, M);
}

double overhead_fixed_data_portion(double T_d, double tau, double cp_multiple) {
    require(T_d > 0.0, ErrorCode::invalid_argument, "data-portion duration must be > 0");
    require(tau >= 0.0, ErrorCode::invalid_argument, "delay spread tau must be >= 0");
    const double cp = cp_multiple * tau;
    return cp / (T_d + cp);
}

std::vector<GridEntry> enumerate_fixed_grid_cp(double T_subframe, double T_d) {
    require(T_d > 0.0 && T_subframe >= T_d, ErrorCode::invalid_argument,
            "need T_subframe >= T_d > 0");
    const auto n_max = static_cast<Count>(std::floor(T_subframe / T_d * (1.0 + 1e-12)));
    std::vector<GridEntry> out;
    out.reserve(static_cast<std::size_t>(n_max));
    for (Count n = 1; n <= n_max; ++n) {
        double T_c = T_subframe / static_cast<double>(n) - T_d;
        if (T_c < 0.0) {
            T_c = 0.0; // only reachable through rounding at an exact fit
        }
        out.push_back({n, T_c, T_c / (T_c + T_d)});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const GridEntry& a, const GridEntry& b) { return a.overhead < b.overhead; });
    return out;
}

ClockedPlan clocked_plan_for_period(double T, double T_s, Count N_tilde, double Ts_tilde, Count M) {
    require(is_power_of_two(N_tilde), ErrorCode::not_power_of_two,
            fmt::format("N_tilde={} is not a power of two", N_tilde));
    require(T > 0.0 && T_s > 0.0 && Ts_tilde > 0.0, ErrorCode::invalid_argument,
            "durations and clock periods must be > 0");

    const double data = static_cast<double>(N_tilde) * Ts_tilde;
    double T_c = T - data;
    if (T_c < 0.0 && T_c > -1e-12 * T) {
        T_c = 0.0;
    }
    require(T_c >= 0.0, ErrorCode::cp_exceeds_symbol, "transform span exceeds the symbol time");
    const double n_real = data / T_s;
    const auto N = static_cast<Count>(std::llround(n_real));
    require(std::abs(n_real - static_cast<double>(N)) <= clock_integrality, ErrorCode::no_feasible_clock,
            fmt::format("clock period {:g} s gives non-integral N={:.6f}", Ts_tilde, n_real));
    require(N >= 1 && N <= N_tilde, ErrorCode::no_feasible_clock,
            fmt::format("clock period {:g} s gives N={} outside [1, N_tilde]", Ts_tilde, N));

    ClockedPlan plan;
    plan.base.T = T;
    plan.base.T_c = T_c;
    plan.base.T_d = data;
    plan.base.T_s = T_s;
    plan.base.B = 1.0 / T_s;
    plan.base.N = N;
    plan.base.M = M == 0 ? N : M;
    plan.base.K = ceil_samples(T_c / T_s);
    plan.base.delta_f = 1.0 / data;
    require(plan.base.M >= 1 && plan.base.M <= N, ErrorCode::block_too_large,
            fmt::format("block length M={} exceeds N={}", plan.base.M, N));

    plan.N_tilde = N_tilde;
    plan.Ts_tilde = Ts_tilde;
    plan.Fs_tilde = 1.0 / Ts_tilde;
    plan.K_tilde = ceil_samples(T_c / Ts_tilde);
    plan.B_tilde = static_cast<double>(N) / data;
    plan.symbol_time_residual = static_cast<double>(N_tilde + plan.K_tilde) * Ts_tilde - T;
    return plan;
}

ClockedPlan plan_from_clock_rates(double T, double T_s, Count N_tilde, std::span<const double> clock_periods,
                                  double tau, double cp_multiple, Count M) {
    require(is_power_of_two(N_tilde), ErrorCode::not_power_of_two,
            fmt::format("N_tilde={} is not a power of two", N_tilde));
    require(!clock_periods.empty(), ErrorCode::invalid_argument, "clock period list is empty");
    require(tau >= 0.0 && cp_multiple > 0.0, ErrorCode::invalid_argument, "need tau >= 0 and cp_multiple > 0");

    const double required = cp_multiple * tau;
    std::optional<ClockedPlan> best;
    for (const double period : clock_periods) {
        require(std::isfinite(period) && period > 0.0, ErrorCode::invalid_argument, "clock periods must be > 0");
        ClockedPlan candidate;
        try {
            candidate = clocked_plan_for_period(T, T_s, N_tilde, period, M);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::invalid_argument) {
                throw;
            }
            continue;
        }
        if (candidate.base.T_c < required * (1.0 - 1e-12)) {
            continue;
        }
        if (!best) {
            best = candidate;
            continue;
        }
        const double diff = candidate.base.T_c - best->base.T_c;
        const double tie = 1e-12 * T;
        if (diff < -tie || (std::abs(diff) <= tie && candidate.Ts_tilde < best->Ts_tilde)) {
            best = candidate;
        }
    }
    if (!best) {
        fail(ErrorCode::no_feasible_clock,
             fmt::format("no feasible clock: every candidate gives T_c < {:g} s or a non-integral N", required));
    }
    return *best;
}

double common_cp_for_group(std::span<const UserDelayProfile> users) {
    require(!users.empty(), ErrorCode::empty_group, "user group is empty");
    double cp = 0.0;
    for (const auto& u : users) {
        require(u.tau >= 0.0 && u.cp_multiple > 0.0, ErrorCode::invalid_argument,
                "user profile needs tau >= 0 and cp_multiple > 0");
        cp = std::max(cp, u.required_cp());
    }
    return cp;
}

std::vector<UserGroup> group_users_by_cp(std::span<const UserDelayProfile> users, std::span<const double> bin_edges) {
    require(!bin_edges.empty(), ErrorCode::invalid_argument, "bin edge list is empty");
    for (std::size_t i = 1; i < bin_edges.size(); ++i) {
        require(bin_edges[i] > bin_edges[i - 1], ErrorCode::invalid_argument, "bin edges must be strictly increasing");
    }

    std::vector<std::vector<UserDelayProfile>> bins(bin_edges.size());
    for (const auto& u : users) {
        require(u.tau >= 0.0 && u.cp_multiple > 0.0, ErrorCode::invalid_argument,
                "user profile needs tau >= 0 and cp_multiple > 0");
        const double need = u.required_cp();
        const auto it = std::lower_bound(bin_edges.begin(), bin_edges.end(), need);
        if (it == bin_edges.end()) {
            fail(ErrorCode::out_of_range, fmt::format("user '{}' needs CP {:g} s beyond the last edge {:g} s",
                                                      u.user_id, need, bin_edges.back()));
        }
        bins[static_cast<std::size_t>(it - bin_edges.begin())].push_back(u);
    }

    std::vector<UserGroup> groups;
    for (std::size_t i = 0; i < bins.size(); ++i) {
        if (!bins[i].empty()) {
            groups.push_back({bin_edges[i], std::move(bins[i])});
        }
    }
    return groups;
}

} // namespace acp::numerology
