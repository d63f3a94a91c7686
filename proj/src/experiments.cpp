// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#include "acp/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "acp/channel.hpp"
#include "acp/error.hpp"
#include "acp/numerology.hpp"
#include "acp/resampler.hpp"
#include "acp/transceiver.hpp"

namespace acp::experiments {

using dsp::Complex;
using dsp::Samples;

Theorem1Result run_theorem1(const Theorem1Config& cfg) {
    require(cfg.pairs >= 1, ErrorCode::invalid_argument, "pairs must be >= 1");
    require(numerology::is_power_of_two(cfg.max_N_tilde), ErrorCode::not_power_of_two,
            "max_N_tilde must be a power of two");
    const int max_log = std::countr_zero(static_cast<std::uint64_t>(cfg.max_N_tilde));

    Theorem1Result result;
    channel::Rng rng(cfg.seed, 0);
    for (std::int64_t i = 0; i < cfg.pairs; ++i) {
        const auto log2_n = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_log + 1)));
        const std::int64_t N_tilde = std::int64_t{1} << log2_n;
        const auto N = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(N_tilde))) + 1;

        Samples D(static_cast<std::size_t>(N));
        for (auto& v : D) {
            v = rng.complex_normal(1.0);
        }
        const Samples direct = dsp::idft(D);
        const Samples oversampled =
            dsp::ifft_pow2(dsp::zero_pad_spectrum(dsp::SpectrumVector(D), static_cast<std::size_t>(N_tilde)).bins());
        const Samples resampled =
            dsp::ideal_resample(oversampled, static_cast<std::size_t>(N), dsp::Band{0, static_cast<std::size_t>(N)});
        const double err = dsp::max_relative_error(resampled, direct);
        result.max_rel_error = std::max(result.max_rel_error, err);
        result.table.add_row({std::to_string(i), std::to_string(N), std::to_string(N_tilde), io::format_cell(err)});
    }
    return result;
}

FarrowBenchResult run_farrow_bench(const FarrowBenchConfig& cfg) {
    require(cfg.N >= 1 && cfg.N <= cfg.N_tilde, ErrorCode::invalid_argument, "need 1 <= N <= N_tilde");
    require(cfg.compare_samples >= 1 && cfg.compare_samples <= cfg.N, ErrorCode::invalid_argument,
            "compare_samples must lie in [1, N]");

    using namespace transceiver;
    TxConfig tx;
    tx.waveform = Waveform::ofdm;
    tx.backend = Backend::direct;
    // the timing is irrelevant here; one unit-rate symbol of N samples
    tx.plan = numerology::plan_from_cp(static_cast<double>(cfg.N), 1.0, 0.0, cfg.N);
    tx.map = SubcarrierMap::localized(cfg.N, cfg.N, 0);

    const Constellation qpsk;
    channel::Rng rng(cfg.seed, 0);
    const Samples u = qpsk.random_block(static_cast<std::size_t>(cfg.N), rng);
    const Samples direct = data_portion(u, tx);

    const auto bank = make_bank(cfg.L, cfg.p, cfg.alpha, cfg.stopband_atten);
    tx.backend = Backend::farrow;
    tx.farrow = FarrowSetup{cfg.N_tilde, bank};
    const Samples farrow = data_portion(u, tx);

    const auto n = static_cast<std::size_t>(cfg.compare_samples);
    FarrowBenchResult r;
    r.rel_mse_db = ratio_db(dsp::relative_error_energy(std::span(farrow).first(n), std::span(direct).first(n)));
    r.rel_mse_all_db = ratio_db(dsp::relative_error_energy(farrow, direct));
    r.mults_farrow = resampler::multiplications_per_sample(cfg.L, cfg.p, cfg.alpha, cfg.N, cfg.N_tilde);
    r.mults_direct = resampler::direct_idft_cost(cfg.N);
    r.fit_residual = bank->fit_residual;

    const bool published_case =
        cfg.L == 231 && cfg.p == 9 && cfg.alpha == 4 && cfg.N == 1543 && cfg.N_tilde == 2048;
    const std::string note =
        published_case
            ? fmt::format("published figure 146 differs from the formula value {:.2f}", r.mults_farrow)
            : std::string("published figure applies to L=231 p=9 alpha=4 N=1543 N_tilde=2048 only");
    r.summary.add_row({std::to_string(cfg.N), std::to_string(cfg.N_tilde), std::to_string(cfg.L),
                       std::to_string(cfg.p), std::to_string(cfg.alpha), io::format_cell(cfg.stopband_atten),
                       io::format_cell(r.rel_mse_db), io::format_cell(r.rel_mse_all_db),
                       io::format_cell(r.fit_residual), io::format_cell(r.mults_farrow),
                       std::to_string(r.mults_direct), io::format_cell(published_mults_per_sample), note});
    for (std::size_t i = 0; i < n; ++i) {
        r.samples.add_row({std::to_string(i), io::format_cell(direct[i].real()), io::format_cell(farrow[i].real()),
                           io::format_cell(direct[i].imag()), io::format_cell(farrow[i].imag())});
    }
    return r;
}

io::Table lte_grid_table(double T_subframe, double T_d) {
    io::Table table({"n", "T_c_s", "overhead_ratio"});
    for (const auto& e : numerology::enumerate_fixed_grid_cp(T_subframe, T_d)) {
        table.add_row({std::to_string(e.n), io::format_cell(e.T_c), io::format_cell(e.overhead)});
    }
    return table;
}

} // namespace acp::experiments
