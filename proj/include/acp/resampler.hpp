// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "acp/dsp.hpp"

namespace acp::resampler {

/// Linear-phase lowpass prototype for interpolation by `p`.
struct PrototypeFilter {
    std::vector<double> taps;
    std::int64_t p = 1;
    double cutoff = 0.5;         ///< cycles per high-rate sample
    double stopband_atten = 60.0; ///< dB
    double kaiser_beta = 0.0;

    [[nodiscard]] std::size_t length() const { return taps.size(); }
    /// Delay of the prototype in high-rate samples.
    [[nodiscard]] double group_delay() const { return (static_cast<double>(taps.size()) - 1.0) / 2.0; }
};

/// Exact rational stride q = q_num / q_den (in high-rate samples) for interpolation by p.
struct RationalRatio {
    std::int64_t p = 1;
    std::int64_t q_num = 1;
    std::int64_t q_den = 1;

    /// Ratio that resamples `in_len` input samples onto `out_len` outputs: q = p * in_len / out_len.
    [[nodiscard]] static RationalRatio for_lengths(std::int64_t p, std::int64_t in_len, std::int64_t out_len);
    [[nodiscard]] double q() const { return static_cast<double>(q_num) / static_cast<double>(q_den); }
};

[[nodiscard]] RationalRatio make_ratio(std::int64_t p, std::int64_t q_num, std::int64_t q_den);

/// One polynomial per tap row: row r approximates prototype taps r*p + i at mu = i/p.
struct FarrowBank {
    std::int64_t p = 1;
    std::int64_t alpha = 0;
    std::int64_t prototype_length = 0;
    std::vector<std::vector<double>> rows; ///< rows[r][k] multiplies mu^k
    double group_delay = 0.0;              ///< high-rate samples
    double fit_residual = 0.0;             ///< max |poly(i/p) - tap| over all rows

    [[nodiscard]] std::size_t row_count() const { return rows.size(); }
    /// Horner evaluation of row r at mu.
    [[nodiscard]] double evaluate(std::size_t row, double mu) const;
};

/// Kaiser length estimate: taps needed for `atten` dB with a transition of `width` cycles/sample.
[[nodiscard]] std::int64_t kaiser_length_estimate(double atten, double width);
[[nodiscard]] double kaiser_beta(double atten);

/// Kaiser-windowed sinc with cutoff 1/(2p) unless `cutoff` > 0 is given, scaled so every
/// polyphase arm has DC gain close to 1 (total tap sum p). The feasibility check assumes a
/// transition band one cutoff wide, centered on the cutoff.
[[nodiscard]] PrototypeFilter design_lowpass(std::int64_t L, std::int64_t p, double stopband_atten,
                                             double cutoff = 0.0);

/// Magnitude response |H(f)| / |H(0)| at f cycles per high-rate sample.
[[nodiscard]] double relative_response(const PrototypeFilter& proto, double f);

/// Interpolate by p, filter, keep every q-th sample (no delay compensation).
/// Output length floor(len(x) * p / q).
[[nodiscard]] dsp::Samples polyphase_resample(std::span<const dsp::Complex> x, std::int64_t p, std::int64_t q,
                                              const PrototypeFilter& proto);
[[nodiscard]] dsp::ComplexSignal polyphase_resample(const dsp::ComplexSignal& x, std::int64_t p, std::int64_t q,
                                                    const PrototypeFilter& proto);

/// Least-squares fit of each tap row by an order-alpha polynomial in mu.
[[nodiscard]] FarrowBank fit_farrow(const PrototypeFilter& proto, std::int64_t alpha);

/// Phase accumulator in units of 1/q_den high-rate samples. Stays integral, so no drift.
/// The base index is rounded so mu falls in [-1/(2p), 1 - 1/(2p)): the row polynomials are
/// fitted at mu = 0, 1/p, ..., (p-1)/p and are only ever evaluated within half a node spacing
/// of that range.
class StrideAccumulator {
public:
    StrideAccumulator(const RationalRatio& ratio, std::int64_t start_phase = 0);

    /// Input index of the newest sample under the filter.
    [[nodiscard]] std::int64_t base() const { return (2 * phase_ + half_) / (2 * span_); }
    /// Fractional offset numerator; mu = numerator / (2 * p * q_den).
    [[nodiscard]] std::int64_t mu_numerator() const { return 2 * phase_ - base() * 2 * span_; }
    [[nodiscard]] double mu() const { return static_cast<double>(mu_numerator()) / static_cast<double>(2 * span_); }
    [[nodiscard]] std::int64_t phase() const { return phase_; }
    void advance() { phase_ += step_; }

private:
    std::int64_t phase_;
    std::int64_t step_;
    std::int64_t span_; ///< p * q_den, one input sample
    std::int64_t half_; ///< q_den, half a node spacing in doubled units
};

/// Farrow resampler. Output m is the filtered high-rate sequence at position
/// (start_phase / q_den + m * q) high-rate samples; input samples outside x count as zero.
/// Output length floor(len(x) * p * q_den / q_num).
[[nodiscard]] dsp::Samples farrow_resample(std::span<const dsp::Complex> x, const RationalRatio& ratio,
                                           const FarrowBank& bank, std::int64_t start_phase = 0);
[[nodiscard]] dsp::ComplexSignal farrow_resample(const dsp::ComplexSignal& x, const RationalRatio& ratio,
                                                 const FarrowBank& bank);

/// (alpha + 1) * ceil(L/p) + 2 + (N_tilde / (2N)) * log2(N_tilde)
[[nodiscard]] double multiplications_per_sample(std::int64_t L, std::int64_t p, std::int64_t alpha, std::int64_t N,
                                                std::int64_t N_tilde);
[[nodiscard]] std::int64_t direct_idft_cost(std::int64_t N);

/// Flat text form: header lines `key value`, then one `row` line per polynomial.
[[nodiscard]] std::string serialize(const FarrowBank& bank);
[[nodiscard]] FarrowBank deserialize_bank(std::string_view text);

} // namespace acp::resampler
