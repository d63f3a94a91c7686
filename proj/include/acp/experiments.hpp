// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#pragma once

#include <cstdint>

#include "acp/io.hpp"

namespace acp::experiments {

/// Random (N, N_tilde) pairs with N <= N_tilde <= max_N_tilde, N_tilde a power of two.
struct Theorem1Config {
    std::int64_t pairs = 20;
    std::int64_t max_N_tilde = 4096;
    std::uint64_t seed = 1;
};

struct Theorem1Result {
    io::Table table{{"pair", "N", "N_tilde", "max_rel_error"}};
    double max_rel_error = 0.0;
};

/// Compares the resampled clock-change data portion against the direct IDFT for each pair.
[[nodiscard]] Theorem1Result run_theorem1(const Theorem1Config& cfg);

struct FarrowBenchConfig {
    std::int64_t N = 1543;
    std::int64_t N_tilde = 2048;
    std::int64_t L = 231;
    std::int64_t p = 9;
    std::int64_t alpha = 4;
    double stopband_atten = 60.0;
    std::int64_t compare_samples = 100; ///< leading samples that enter rel_mse_db and the dump
    std::uint64_t seed = 1;
};

/// Multiplication count quoted in the published example for (231, 9, 4, 1543, 2048).
inline constexpr double published_mults_per_sample = 146.0;

struct FarrowBenchResult {
    double rel_mse_db = 0.0;     ///< over the first compare_samples samples
    double rel_mse_all_db = 0.0; ///< over the whole data portion
    double mults_farrow = 0.0;
    std::int64_t mults_direct = 0;
    double fit_residual = 0.0;
    io::Table summary{{"N", "N_tilde", "L", "p", "alpha", "stopband_db", "rel_mse_db", "rel_mse_all_db",
                       "fit_residual", "mults_farrow_per_sample", "mults_direct_per_sample",
                       "published_mults_per_sample", "note"}};
    /// index, direct_re, farrow_re, direct_im, farrow_im
    io::Table samples{{"index", "direct_re", "farrow_re", "direct_im", "farrow_im"}};
};

/// OFDM data portion with every subcarrier loaded (random QPSK), Farrow backend against direct IDFT.
[[nodiscard]] FarrowBenchResult run_farrow_bench(const FarrowBenchConfig& cfg);

/// Columns: n, T_c_s, overhead_ratio (lowest overhead first).
[[nodiscard]] io::Table lte_grid_table(double T_subframe, double T_d);

} // namespace acp::experiments
