// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "acp/channel.hpp"
#include "acp/io.hpp"
#include "acp/transceiver.hpp"

namespace acp::scenario {

/// Single-user adaptive-CP sweep: one table row per delay spread.
struct SweepConfig {
    std::vector<double> taus;             ///< RMS delay spreads, seconds
    double T = 10e-6;                     ///< overall symbol time
    double B = 32e6;                      ///< bandwidth
    double cp_multiple = numerology::default_cp_multiple;
    std::int64_t M = 64;
    std::optional<double> snr_db;         ///< none = noiseless
    std::int64_t trials = 1;
    std::uint64_t seed = 1;
    std::optional<double> fixed_Td;       ///< data portion for the fixed-T_d overhead column
    transceiver::Waveform waveform = transceiver::Waveform::dfts_ofdm;
    transceiver::Modulation modulation = transceiver::Modulation::qpsk;
};

/// Columns: tau_s, T_c_s, K_samples, N_samples, overhead_ratio, overhead_fixed_td_ratio, evm_db, ber.
/// EVM pools error energy over all trials. Deterministic per (seed, trial).
[[nodiscard]] io::Table run_single_user_sweep(const SweepConfig& cfg);

/// Two users on disjoint subcarriers of one common numerology, received at user 2.
/// User u prepends a CP of cp_user<u>, so with cp_user1 < cp_user2 user 1's symbols are
/// shorter and its boundaries drift through user 2's DFT window from the second symbol on.
struct TwoUserScenario {
    numerology::NumerologyPlan plan_common; ///< N, T_s and subcarrier grid shared by both users
    double cp_user1 = 0.5e-6;
    double cp_user2 = 2e-6;
    transceiver::SubcarrierMap map1;
    transceiver::SubcarrierMap map2;
    channel::ChannelModel channel1{{{0, {1.0, 0.0}}}, 1}; ///< user 1's transmission as seen at user 2
    channel::ChannelModel channel2{{{0, {1.0, 0.0}}}, 2};
    std::int64_t initial_offset = 0; ///< samples by which user 1's first symbol lags user 2's
    std::int64_t symbols = 8;        ///< back-to-back symbols per trial
    std::optional<double> snr_db;
    bool user1_active = true;
    std::uint64_t seed = 1;

    /// T = 10 us, B = 32 MHz, CPs 0.5 us and 2 us, 48 bins each at offsets 8 and 120 of N = 256;
    /// channel1 spans the full 64-sample user-2 CP, channel2 spans 30 samples.
    [[nodiscard]] static TwoUserScenario defaults(std::uint64_t seed = 1);
    /// Throws overlapping_subcarriers if the two maps share a subcarrier.
    void validate() const;
};

struct TwoUserResult {
    double evm_user2_mismatched = 0.0; ///< dB, user 1 at cp_user1
    double evm_user2_common = 0.0;     ///< dB, both users at the common CP
    double common_cp = 0.0;            ///< seconds
    std::vector<double> trial_mismatched; ///< per-trial EVM, dB
    std::vector<double> trial_common;
};

/// User-2 EVM pooled over symbols 2..symbols and all trials.
[[nodiscard]] TwoUserResult run_two_user(const TwoUserScenario& sc, std::int64_t trials);

/// Per-trial rows plus an aggregate row: trial, cp_user1_s, cp_user2_s, common_cp_s, evm_mismatched_db, evm_common_db.
[[nodiscard]] io::Table two_user_table(const TwoUserScenario& sc, const TwoUserResult& result);

} // namespace acp::scenario
