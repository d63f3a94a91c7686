// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace acp::numerology {

using Count = std::int64_t;

/// Timing of one symbol under a constant overall symbol time.
/// All durations in seconds, rates in hertz.
struct NumerologyPlan {
    double T = 0.0;       ///< overall symbol time (CP + data portion)
    double T_c = 0.0;     ///< cyclic-prefix duration
    double T_d = 0.0;     ///< data-portion duration
    double T_s = 0.0;     ///< DAC sample period
    Count N = 0;          ///< data-portion samples
    Count M = 0;          ///< QAM block length
    Count K = 0;          ///< CP samples
    double delta_f = 0.0; ///< subcarrier spacing
    double B = 0.0;       ///< bandwidth

    bool operator==(const NumerologyPlan&) const = default;
};

/// Power-of-two transform size driven by a changed DAC/ADC clock.
struct ClockedPlan {
    NumerologyPlan base;
    Count N_tilde = 0;
    double Ts_tilde = 0.0;
    double Fs_tilde = 0.0;
    Count K_tilde = 0;
    double B_tilde = 0.0;
    double symbol_time_residual = 0.0; ///< (N_tilde + K_tilde) * Ts_tilde - T

    bool operator==(const ClockedPlan&) const = default;
};

struct UserDelayProfile {
    std::string user_id;
    double tau = 0.0;
    double cp_multiple = 6.0;

    [[nodiscard]] double required_cp() const { return cp_multiple * tau; }
};

struct GridEntry {
    Count n = 0;
    double T_c = 0.0;
    double overhead = 0.0;
};

struct UserGroup {
    double T_c = 0.0; ///< common CP (the bin's upper edge)
    std::vector<UserDelayProfile> users;
};

inline constexpr double default_cp_multiple = 6.0;

/// ceil() that ignores floating-point excess of a few ulps above an integer,
/// so 16 us / 31.25 ns yields 512 rather than 513.
[[nodiscard]] Count ceil_samples(double x);

[[nodiscard]] bool is_power_of_two(Count n);

/// Adapt the CP to `cp_multiple * tau` while holding T and B fixed.
[[nodiscard]] NumerologyPlan plan_from_delay_spread(double T, double B, double tau, double cp_multiple, Count M);

/// Same as above with the CP duration given directly.
[[nodiscard]] NumerologyPlan plan_from_cp(double T, double B, double T_c, Count M);

/// CP overhead when the data portion is held fixed and the symbol grows instead.
[[nodiscard]] double overhead_fixed_data_portion(double T_d, double tau, double cp_multiple);

/// All n with n * (T_d + T_c) = T_subframe and T_c >= 0, lowest overhead first.
[[nodiscard]] std::vector<GridEntry> enumerate_fixed_grid_cp(double T_subframe, double T_d);

/// Work backwards from the clock periods a synthesizer can provide to the CP that
/// each one implies, and keep the most efficient one that still covers the delay spread.
/// `M` = 0 selects M = N.
[[nodiscard]] ClockedPlan plan_from_clock_rates(double T, double T_s, Count N_tilde,
                                                std::span<const double> clock_periods, double tau,
                                                double cp_multiple, Count M = 0);

/// Clocked plan for one given clock period (no feasibility selection).
[[nodiscard]] ClockedPlan clocked_plan_for_period(double T, double T_s, Count N_tilde, double Ts_tilde, Count M = 0);

[[nodiscard]] double common_cp_for_group(std::span<const UserDelayProfile> users);

[[nodiscard]] std::vector<UserGroup> group_users_by_cp(std::span<const UserDelayProfile> users,
                                                       std::span<const double> bin_edges);

} // namespace acp::numerology
