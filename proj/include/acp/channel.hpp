// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "acp/dsp.hpp"

namespace acp::channel {

struct Tap {
    std::int64_t delay = 0; ///< in samples
    dsp::Complex gain{1.0, 0.0};
};

/// Tapped-delay-line channel impulse response.
class ChannelModel {
public:
    ChannelModel(std::vector<Tap> taps, std::uint64_t rng_seed);

    [[nodiscard]] const std::vector<Tap>& taps() const { return taps_; }
    [[nodiscard]] std::uint64_t rng_seed() const { return rng_seed_; }
    [[nodiscard]] std::int64_t max_delay() const { return taps_.back().delay; }
    [[nodiscard]] double total_power() const;

private:
    std::vector<Tap> taps_;
    std::uint64_t rng_seed_;
};

struct PdpEntry {
    double delay = 0.0; ///< seconds
    double power = 0.0;
};

/// Power-delay profile; delays non-decreasing, powers non-negative.
class PowerDelayProfile {
public:
    explicit PowerDelayProfile(std::vector<PdpEntry> entries);
    [[nodiscard]] const std::vector<PdpEntry>& entries() const { return entries_; }

private:
    std::vector<PdpEntry> entries_;
};

/// Second central moment of the power-delay profile.
[[nodiscard]] double rms_delay_spread(const PowerDelayProfile& pdp);

/// Profile of a channel at the given sample period.
[[nodiscard]] PowerDelayProfile power_delay_profile(const ChannelModel& ch, double sample_period);

/// Linear convolution over the whole stream, plus complex white Gaussian noise at
/// `snr_db` per sample relative to the noiseless output power. `trial` selects an
/// independent noise stream for the same channel seed.
[[nodiscard]] dsp::ComplexSignal apply_channel(const dsp::ComplexSignal& x, const ChannelModel& ch,
                                               std::optional<double> snr_db, std::uint64_t trial = 0);

/// Dense CIR vector of `length` samples.
[[nodiscard]] dsp::ComplexSignal cir_as_signal(const ChannelModel& ch, std::size_t length, double sample_period);

/// Deterministic generator for one (seed, stream) pair: mt19937_64 seeded through
/// std::seed_seq{seed_lo, seed_hi, stream_lo, stream_hi}; uniforms take the top 53 bits,
/// normals use Box-Muller. The mapping is fixed and portable across standard libraries.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream);

    /// Uniform on [0, 1).
    double uniform();
    /// Uniform integer on [0, n).
    std::uint64_t below(std::uint64_t n);
    /// Standard normal.
    double normal();
    /// Circular complex Gaussian with E|z|^2 = variance.
    dsp::Complex complex_normal(double variance);

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

/// Tap at a physical delay; discretize() rounds delays to the nearest sample
/// and sums taps that land on the same sample.
struct PhysicalTap {
    double delay = 0.0; ///< seconds
    dsp::Complex gain{1.0, 0.0};
};

struct ChannelProfile {
    std::vector<PhysicalTap> taps;
    std::uint64_t seed = 0;

    [[nodiscard]] ChannelModel discretize(double sample_period) const;
    [[nodiscard]] PowerDelayProfile pdp() const;
};

/// Text format, one entry per line ('#' comments):
///   seed <integer>
///   tap <delay_ns> <gain_re> <gain_im>
[[nodiscard]] ChannelProfile parse_profile(std::string_view text);

/// "mmw73-min" (single tap), "mmw73-avg" (12.1 ns RMS), "mmw73-max" (200.3 ns RMS),
/// each as two equal-power taps at 0 and 2*tau.
[[nodiscard]] ChannelProfile preset_profile(std::string_view name);

/// Random Rayleigh taps on every sample 0..span with an exponential power profile
/// of decay constant `decay_samples` (a single tap when decay is 0), normalized to unit power.
[[nodiscard]] ChannelModel random_exponential(std::int64_t span, double decay_samples, std::uint64_t seed,
                                              std::uint64_t stream);

} // namespace acp::channel
