// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "acp/channel.hpp"
#include "acp/dsp.hpp"
#include "acp/numerology.hpp"
#include "acp/resampler.hpp"

namespace acp::transceiver {

enum class Waveform { dfts_ofdm, ofdm };
enum class Backend { direct, clock_change, farrow };
enum class MapMode { localized, distributed };
enum class Equalizer { zero_forcing, mmse };
enum class Modulation { qpsk, qam16 };

[[nodiscard]] std::string_view to_string(Waveform w);
[[nodiscard]] std::string_view to_string(Backend b);
[[nodiscard]] Waveform parse_waveform(std::string_view s);
[[nodiscard]] Backend parse_backend(std::string_view s);

/// Places M block bins onto N subcarriers: localized (offset + i) or distributed (offset + i * stride).
struct SubcarrierMap {
    MapMode mode = MapMode::localized;
    std::int64_t offset = 0;
    std::int64_t stride = 1;
    std::int64_t N = 0;
    std::int64_t M = 0;

    [[nodiscard]] static SubcarrierMap localized(std::int64_t N, std::int64_t M, std::int64_t offset = 0);
    [[nodiscard]] static SubcarrierMap distributed(std::int64_t N, std::int64_t M, std::int64_t offset,
                                                   std::int64_t stride);

    void validate() const;
    /// Subcarrier index of block bin i.
    [[nodiscard]] std::vector<std::size_t> indices() const;
    /// (U, 0...) permuted onto N subcarriers.
    [[nodiscard]] dsp::Samples map(std::span<const dsp::Complex> U) const;
    /// Picks the M occupied bins back out of an N-bin spectrum.
    [[nodiscard]] dsp::Samples demap(std::span<const dsp::Complex> Y) const;
};

/// Gray-mapped QPSK or 16-QAM with unit average symbol energy.
class Constellation {
public:
    explicit Constellation(Modulation modulation = Modulation::qpsk);

    [[nodiscard]] Modulation modulation() const { return modulation_; }
    [[nodiscard]] int bits_per_symbol() const { return bits_; }
    [[nodiscard]] dsp::Complex symbol(unsigned bits) const;
    /// Nearest-point decision, returned as the symbol's bit label.
    [[nodiscard]] unsigned slice(dsp::Complex z) const;
    [[nodiscard]] dsp::Samples random_block(std::size_t count, channel::Rng& rng) const;

private:
    Modulation modulation_;
    int bits_;
    std::vector<double> levels_; ///< per-axis amplitudes indexed by Gray label
};

struct FarrowSetup {
    std::int64_t N_tilde = 0;
    std::shared_ptr<const resampler::FarrowBank> bank;
};

struct TxConfig {
    Waveform waveform = Waveform::dfts_ofdm;
    Backend backend = Backend::direct;
    numerology::NumerologyPlan plan;
    std::optional<numerology::ClockedPlan> clocked; ///< clock_change only
    SubcarrierMap map;
    std::optional<FarrowSetup> farrow; ///< farrow only
    Equalizer equalizer = Equalizer::zero_forcing;
    double noise_variance = 0.0; ///< per received sample, used by MMSE

    /// Throws config_mismatch when fields disagree with the waveform or backend.
    void validate() const;
    /// Samples of the CP and the data portion on the transmit grid.
    [[nodiscard]] std::int64_t cp_samples() const;
    [[nodiscard]] std::int64_t data_samples() const;
    [[nodiscard]] double sample_period() const;
    [[nodiscard]] std::int64_t symbol_samples() const { return cp_samples() + data_samples(); }
};

struct LinkMetrics {
    double evm_db = 0.0;
    double ber = 0.0;
    double rel_mse_db = 0.0;
    double overhead = 0.0;
};

/// Data portion (no CP) on the backend's transmit grid.
[[nodiscard]] dsp::Samples data_portion(std::span<const dsp::Complex> u, const TxConfig& cfg);

/// One symbol: CP copied from the data-portion tail, then the data portion.
[[nodiscard]] dsp::ComplexSignal tx_chain(std::span<const dsp::Complex> u, const TxConfig& cfg);

/// Back-to-back symbols, one per block.
[[nodiscard]] dsp::ComplexSignal tx_stream(std::span<const dsp::Samples> blocks, const TxConfig& cfg);

/// `y` starts at the first CP sample of the symbol; `h` is the genie CIR on the transmit grid.
[[nodiscard]] dsp::Samples rx_chain(std::span<const dsp::Complex> y, const TxConfig& cfg,
                                    std::span<const dsp::Complex> h);

/// Per-subcarrier channel response the receiver divides by (occupied bins, in block order).
[[nodiscard]] dsp::Samples channel_response(const TxConfig& cfg, std::span<const dsp::Complex> h);

inline constexpr double evm_floor_db = -150.0;

[[nodiscard]] double ratio_db(double ratio);

/// EVM and BER of u_hat against u; rel_mse_db over (x_test, x_ref) when both are given.
[[nodiscard]] LinkMetrics measure(std::span<const dsp::Complex> u, std::span<const dsp::Complex> u_hat,
                                  const Constellation& constellation,
                                  std::optional<std::span<const dsp::Complex>> x_ref = std::nullopt,
                                  std::optional<std::span<const dsp::Complex>> x_test = std::nullopt);

/// Kaiser prototype of length L for interpolation by p, fitted with order-alpha rows.
[[nodiscard]] std::shared_ptr<const resampler::FarrowBank> make_bank(std::int64_t L, std::int64_t p,
                                                                     std::int64_t alpha, double stopband_atten);

} // namespace acp::transceiver
