// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#include "acp/scenario.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "acp/error.hpp"

namespace acp::scenario {

using dsp::Complex;
using dsp::Samples;
using transceiver::Backend;
using transceiver::Constellation;
using transceiver::SubcarrierMap;
using transceiver::TxConfig;
using transceiver::Waveform;

namespace {

struct ErrorTally {
    double error = 0.0;
    double reference = 0.0;

    void add(std::span<const Complex> u, std::span<const Complex> u_hat) {
        for (std::size_t i = 0; i < u.size(); ++i) {
            error += std::norm(u_hat[i] - u[i]);
            reference += std::norm(u[i]);
        }
    }
    [[nodiscard]] double evm_db() const { return transceiver::ratio_db(reference > 0.0 ? error / reference : 0.0); }
};

TxConfig direct_config(const numerology::NumerologyPlan& plan, Waveform waveform, std::int64_t offset) {
    TxConfig cfg;
    cfg.waveform = waveform;
    cfg.backend = Backend::direct;
    cfg.plan = plan;
    cfg.map = SubcarrierMap::localized(plan.N, plan.M, offset);
    cfg.validate();
    return cfg;
}

void add_noise(Samples& y, double signal_power, double snr_db, channel::Rng& rng) {
    const double variance = signal_power / std::pow(10.0, snr_db / 10.0);
    for (auto& v : y) {
        v += rng.complex_normal(variance);
    }
}

} // namespace

io::Table run_single_user_sweep(const SweepConfig& cfg) {
    require(!cfg.taus.empty(), ErrorCode::invalid_argument, "sweep needs at least one delay spread");
    require(cfg.trials >= 1, ErrorCode::invalid_argument, "trials must be >= 1");
    const double max_tau = *std::max_element(cfg.taus.begin(), cfg.taus.end());
    const double fixed_Td = cfg.fixed_Td.value_or(cfg.T - cfg.cp_multiple * max_tau);
    require(fixed_Td > 0.0, ErrorCode::invalid_argument, "fixed data portion must be > 0");

    const Constellation constellation(cfg.modulation);
    io::Table table({"tau_s", "T_c_s", "K_samples", "N_samples", "overhead_ratio", "overhead_fixed_td_ratio", "evm_db",
                     "ber"});
    for (std::size_t i = 0; i < cfg.taus.size(); ++i) {
        const double tau = cfg.taus[i];
        auto plan = numerology::plan_from_delay_spread(cfg.T, cfg.B, tau, cfg.cp_multiple,
                                                       cfg.waveform == Waveform::ofdm ? 1 : cfg.M);
        if (cfg.waveform == Waveform::ofdm) {
            plan.M = plan.N;
        }
        const TxConfig tx = direct_config(plan, cfg.waveform, 0);

        ErrorTally tally;
        double ber_sum = 0.0;
        for (std::int64_t t = 0; t < cfg.trials; ++t) {
            // three disjoint streams per (tau, trial): data, channel taps, noise
            const auto k = static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(cfg.trials) +
                           static_cast<std::uint64_t>(t);
            channel::Rng data_rng(cfg.seed, 3 * k);
            const Samples u = constellation.random_block(static_cast<std::size_t>(plan.M), data_rng);
            const auto ch = channel::random_exponential(plan.K, tau / plan.T_s, cfg.seed, 3 * k + 1);
            const auto x = transceiver::tx_chain(u, tx);
            const auto y = channel::apply_channel(x, ch, cfg.snr_db, 3 * k + 2);
            const auto h = channel::cir_as_signal(ch, static_cast<std::size_t>(ch.max_delay() + 1), plan.T_s);
            const Samples u_hat = transceiver::rx_chain(y.samples(), tx, h.samples());
            tally.add(u, u_hat);
            ber_sum += transceiver::measure(u, u_hat, constellation).ber;
        }
        table.add_row({io::format_cell(tau), io::format_cell(plan.T_c), std::to_string(plan.K), std::to_string(plan.N),
                       io::format_cell(plan.T_c / plan.T),
                       io::format_cell(numerology::overhead_fixed_data_portion(fixed_Td, tau, cfg.cp_multiple)),
                       io::format_cell(tally.evm_db()), io::format_cell(ber_sum / static_cast<double>(cfg.trials))});
    }
    return table;
}

TwoUserScenario TwoUserScenario::defaults(std::uint64_t seed) {
    TwoUserScenario sc;
    sc.seed = seed;
    sc.plan_common = numerology::plan_from_cp(10e-6, 32e6, sc.cp_user2, 48);
    sc.map1 = SubcarrierMap::localized(sc.plan_common.N, 48, 8);
    sc.map2 = SubcarrierMap::localized(sc.plan_common.N, 48, 120);
    sc.channel1 = channel::random_exponential(64, 16.0, seed, 101);
    sc.channel2 = channel::random_exponential(30, 8.0, seed, 102);
    return sc;
}

void TwoUserScenario::validate() const {
    require(plan_common.N >= 1 && plan_common.T_s > 0.0, ErrorCode::invalid_argument, "common plan is not set");
    require(cp_user1 >= 0.0 && cp_user2 >= 0.0, ErrorCode::invalid_argument, "CP durations must be >= 0");
    require(symbols >= 2, ErrorCode::invalid_argument, "need at least 2 symbols (the first is not measured)");
    require(initial_offset >= 0, ErrorCode::invalid_argument, "initial offset must be >= 0");
    require(map1.N == plan_common.N && map2.N == plan_common.N, ErrorCode::config_mismatch,
            "subcarrier maps must span the common N");
    map1.validate();
    map2.validate();
    const auto a = map1.indices();
    const auto b = map2.indices();
    for (const auto i : a) {
        if (std::find(b.begin(), b.end(), i) != b.end()) {
            fail(ErrorCode::overlapping_subcarriers, fmt::format("both users occupy subcarrier {}", i));
        }
    }
}

namespace {

TxConfig user_config(const TwoUserScenario& sc, const SubcarrierMap& map, double cp) {
    auto plan = sc.plan_common;
    plan.M = map.M;
    plan.T_c = cp;
    plan.K = numerology::ceil_samples(cp / plan.T_s);
    plan.T = plan.T_c + plan.T_d;
    TxConfig cfg;
    cfg.waveform = Waveform::dfts_ofdm;
    cfg.backend = Backend::direct;
    cfg.plan = plan;
    cfg.map = map;
    cfg.validate();
    return cfg;
}

// User-2 error over symbols 1..symbols-1 of one trial.
ErrorTally two_user_trial(const TwoUserScenario& sc, double cp1, double cp2, std::int64_t trial) {
    const TxConfig cfg1 = user_config(sc, sc.map1, cp1);
    const TxConfig cfg2 = user_config(sc, sc.map2, cp2);

    const Constellation qpsk;
    const auto t = static_cast<std::uint64_t>(trial);
    channel::Rng rng1(sc.seed, 4 * t);
    channel::Rng rng2(sc.seed, 4 * t + 1);
    std::vector<Samples> blocks1;
    std::vector<Samples> blocks2;
    for (std::int64_t s = 0; s < sc.symbols; ++s) {
        blocks1.push_back(qpsk.random_block(static_cast<std::size_t>(sc.map1.M), rng1));
        blocks2.push_back(qpsk.random_block(static_cast<std::size_t>(sc.map2.M), rng2));
    }

    const auto x2 = transceiver::tx_stream(blocks2, cfg2);
    Samples y = channel::apply_channel(x2, sc.channel2, std::nullopt).vector();
    const double power2 = dsp::energy(y) / static_cast<double>(y.size());
    if (sc.user1_active) {
        const auto x1 = transceiver::tx_stream(blocks1, cfg1);
        const auto y1 = channel::apply_channel(x1, sc.channel1, std::nullopt);
        const auto start = static_cast<std::size_t>(sc.initial_offset);
        y.resize(std::max(y.size(), start + y1.size()), Complex{0.0, 0.0});
        for (std::size_t n = 0; n < y1.size(); ++n) {
            y[start + n] += y1[n];
        }
    }
    if (sc.snr_db && std::isfinite(*sc.snr_db)) {
        channel::Rng noise(sc.seed, 4 * t + 2);
        add_noise(y, power2, *sc.snr_db, noise);
    }

    const auto h2 =
        channel::cir_as_signal(sc.channel2, static_cast<std::size_t>(sc.channel2.max_delay() + 1), sc.plan_common.T_s);
    const auto symbol_len = static_cast<std::size_t>(cfg2.symbol_samples());
    ErrorTally tally;
    for (std::int64_t s = 1; s < sc.symbols; ++s) {
        const std::span<const Complex> segment(y.data() + static_cast<std::size_t>(s) * symbol_len, symbol_len);
        const Samples u_hat = transceiver::rx_chain(segment, cfg2, h2.samples());
        tally.add(blocks2[static_cast<std::size_t>(s)], u_hat);
    }
    return tally;
}

} // namespace

TwoUserResult run_two_user(const TwoUserScenario& sc, std::int64_t trials) {
    require(trials >= 1, ErrorCode::invalid_argument, "trials must be >= 1");
    sc.validate();
    const std::vector<numerology::UserDelayProfile> users{{"user1", sc.cp_user1, 1.0}, {"user2", sc.cp_user2, 1.0}};

    TwoUserResult result;
    result.common_cp = numerology::common_cp_for_group(users);
    ErrorTally mismatched;
    ErrorTally common;
    for (std::int64_t t = 0; t < trials; ++t) {
        const ErrorTally m = two_user_trial(sc, sc.cp_user1, sc.cp_user2, t);
        const ErrorTally c = two_user_trial(sc, result.common_cp, result.common_cp, t);
        result.trial_mismatched.push_back(m.evm_db());
        result.trial_common.push_back(c.evm_db());
        mismatched.error += m.error;
        mismatched.reference += m.reference;
        common.error += c.error;
        common.reference += c.reference;
    }
    result.evm_user2_mismatched = mismatched.evm_db();
    result.evm_user2_common = common.evm_db();
    return result;
}

io::Table two_user_table(const TwoUserScenario& sc, const TwoUserResult& result) {
    io::Table table({"trial", "cp_user1_s", "cp_user2_s", "common_cp_s", "evm_user2_mismatched_db",
                     "evm_user2_common_db"});
    auto row = [&](std::string label, double m, double c) {
        table.add_row({std::move(label), io::format_cell(sc.cp_user1), io::format_cell(sc.cp_user2),
                       io::format_cell(result.common_cp), io::format_cell(m), io::format_cell(c)});
    };
    for (std::size_t t = 0; t < result.trial_mismatched.size(); ++t) {
        row(std::to_string(t), result.trial_mismatched[t], result.trial_common[t]);
    }
    row("all", result.evm_user2_mismatched, result.evm_user2_common);
    return table;
}

} // namespace acp::scenario
