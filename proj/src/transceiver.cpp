// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#include "acp/transceiver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "acp/error.hpp"

namespace acp::transceiver {

using dsp::Complex;
using dsp::Samples;

std::string_view to_string(Waveform w) { return w == Waveform::ofdm ? "ofdm" : "dfts-ofdm"; }

std::string_view to_string(Backend b) {
    switch (b) {
    case Backend::direct:
        return "direct";
    case Backend::clock_change:
        return "clock-change";
    case Backend::farrow:
        return "farrow";
    }
    return "direct";
}

Waveform parse_waveform(std::string_view s) {
    if (s == "ofdm") {
        return Waveform::ofdm;
    }
    if (s == "dfts-ofdm" || s == "dfts_ofdm") {
        return Waveform::dfts_ofdm;
    }
    fail(ErrorCode::parse, fmt::format("unknown waveform '{}'", s));
}

Backend parse_backend(std::string_view s) {
    if (s == "direct") {
        return Backend::direct;
    }
    if (s == "clock-change" || s == "clock_change") {
        return Backend::clock_change;
    }
    if (s == "farrow") {
        return Backend::farrow;
    }
    fail(ErrorCode::parse, fmt::format("unknown backend '{}'", s));
}

SubcarrierMap SubcarrierMap::localized(std::int64_t N, std::int64_t M, std::int64_t offset) {
    SubcarrierMap m{MapMode::localized, offset, 1, N, M};
    m.validate();
    return m;
}

SubcarrierMap SubcarrierMap::distributed(std::int64_t N, std::int64_t M, std::int64_t offset, std::int64_t stride) {
    SubcarrierMap m{MapMode::distributed, offset, stride, N, M};
    m.validate();
    return m;
}

void SubcarrierMap::validate() const {
    require(N >= 1 && M >= 1 && M <= N, ErrorCode::invalid_argument,
            fmt::format("subcarrier map needs 1 <= M <= N (M={}, N={})", M, N));
    require(offset >= 0, ErrorCode::invalid_argument, "subcarrier offset must be >= 0");
    const std::int64_t step = mode == MapMode::localized ? 1 : stride;
    require(step >= 1, ErrorCode::invalid_argument, "subcarrier stride must be >= 1");
    require(offset + (M - 1) * step < N, ErrorCode::out_of_range,
            fmt::format("subcarrier map runs past N={} (offset {}, M {}, stride {})", N, offset, M, step));
}

std::vector<std::size_t> SubcarrierMap::indices() const {
    const std::int64_t step = mode == MapMode::localized ? 1 : stride;
    std::vector<std::size_t> idx(static_cast<std::size_t>(M));
    for (std::int64_t i = 0; i < M; ++i) {
        idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(offset + i * step);
    }
    return idx;
}

Samples SubcarrierMap::map(std::span<const Complex> U) const {
    require(static_cast<std::int64_t>(U.size()) == M, ErrorCode::length_mismatch,
            fmt::format("block has {} bins, map expects M={}", U.size(), M));
    Samples D(static_cast<std::size_t>(N), Complex{0.0, 0.0});
    const auto idx = indices();
    for (std::size_t i = 0; i < idx.size(); ++i) {
        D[idx[i]] = U[i];
    }
    return D;
}

Samples SubcarrierMap::demap(std::span<const Complex> Y) const {
    require(static_cast<std::int64_t>(Y.size()) == N, ErrorCode::length_mismatch,
            fmt::format("spectrum has {} bins, map expects N={}", Y.size(), N));
    const auto idx = indices();
    Samples W(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        W[i] = Y[idx[i]];
    }
    return W;
}

Constellation::Constellation(Modulation modulation) : modulation_(modulation) {
    if (modulation == Modulation::qpsk) {
        bits_ = 2;
        const double a = 1.0 / std::sqrt(2.0);
        levels_ = {a, -a}; // label 0 -> +, 1 -> -
    } else {
        bits_ = 4;
        const double s = 1.0 / std::sqrt(10.0);
        // Gray labels 00, 01, 11, 10 on levels -3, -1, +1, +3
        levels_ = {-3.0 * s, -1.0 * s, 3.0 * s, 1.0 * s};
    }
}

Complex Constellation::symbol(unsigned bits) const {
    const int half = bits_ / 2;
    const unsigned mask = (1u << half) - 1u;
    return {levels_[(bits >> half) & mask], levels_[bits & mask]};
}

unsigned Constellation::slice(Complex z) const {
    const int half = bits_ / 2;
    auto nearest = [this](double v) {
        unsigned best = 0;
        for (unsigned i = 1; i < levels_.size(); ++i) {
            if (std::abs(v - levels_[i]) < std::abs(v - levels_[best])) {
                best = i;
            }
        }
        return best;
    };
    return (nearest(z.real()) << half) | nearest(z.imag());
}

Samples Constellation::random_block(std::size_t count, channel::Rng& rng) const {
    Samples out(count);
    for (auto& s : out) {
        s = symbol(static_cast<unsigned>(rng.below(1u << bits_)));
    }
    return out;
}

void TxConfig::validate() const {
    map.validate();
    require(map.N == plan.N && map.M == plan.M, ErrorCode::config_mismatch,
            fmt::format("map (N={}, M={}) does not match plan (N={}, M={})", map.N, map.M, plan.N, plan.M));
    if (waveform == Waveform::ofdm) {
        require(plan.M == plan.N, ErrorCode::config_mismatch, "OFDM mode needs M = N");
    }
    require(clocked.has_value() == (backend == Backend::clock_change), ErrorCode::config_mismatch,
            "a clocked plan is required by, and only by, the clock-change backend");
    require(farrow.has_value() == (backend == Backend::farrow), ErrorCode::config_mismatch,
            "a Farrow setup is required by, and only by, the farrow backend");
    if (clocked) {
        require(clocked->base.N == plan.N, ErrorCode::config_mismatch, "clocked plan N differs from the plan");
        require(numerology::is_power_of_two(clocked->N_tilde) && clocked->N_tilde >= plan.N,
                ErrorCode::config_mismatch, "clocked plan needs a power-of-two N_tilde >= N");
    }
    if (farrow) {
        require(farrow->bank != nullptr, ErrorCode::config_mismatch, "Farrow setup has no bank");
        require(numerology::is_power_of_two(farrow->N_tilde) && farrow->N_tilde >= plan.N,
                ErrorCode::config_mismatch, "Farrow setup needs a power-of-two N_tilde >= N");
    }
    require(noise_variance >= 0.0, ErrorCode::invalid_argument, "noise variance must be >= 0");
}

std::int64_t TxConfig::cp_samples() const { return backend == Backend::clock_change ? clocked->K_tilde : plan.K; }

std::int64_t TxConfig::data_samples() const {
    return backend == Backend::clock_change ? clocked->N_tilde : plan.N;
}

double TxConfig::sample_period() const { return backend == Backend::clock_change ? clocked->Ts_tilde : plan.T_s; }

namespace {

// N-bin frequency-domain symbol (D) for one block.
Samples spectrum_for_block(std::span<const Complex> u, const TxConfig& cfg) {
    if (static_cast<std::int64_t>(u.size()) != cfg.plan.M) {
        fail(ErrorCode::config_mismatch, fmt::format("block has {} symbols, config expects M={}", u.size(), cfg.plan.M));
    }
    if (cfg.waveform == Waveform::ofdm) {
        return cfg.map.map(u);
    }
    return cfg.map.map(dsp::dft_any(u));
}

Samples farrow_data_portion(const Samples& D, const TxConfig& cfg) {
    const auto& setup = *cfg.farrow;
    const auto& bank = *setup.bank;
    const std::int64_t N = cfg.plan.N;
    const std::int64_t N_tilde = setup.N_tilde;

    const Samples oversampled =
        dsp::ifft_pow2(dsp::zero_pad_spectrum(dsp::SpectrumVector(D), static_cast<std::size_t>(N_tilde)).bins());
    if (N_tilde == N) {
        // nothing to resample: the FFT grid is already the output grid
        return oversampled;
    }

    // cyclic history on both sides, so the filter sees the periodic symbol at the block edges
    const auto guard = static_cast<std::int64_t>(bank.row_count()) + 1;
    Samples extended(static_cast<std::size_t>(N_tilde + 2 * guard));
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(extended.size()); ++i) {
        const std::int64_t src = ((i - guard) % N_tilde + N_tilde) % N_tilde;
        extended[static_cast<std::size_t>(i)] = oversampled[static_cast<std::size_t>(src)];
    }
    const double ratio = static_cast<double>(N) / static_cast<double>(N_tilde);
    const Samples centered = dsp::half_band_shift(extended, ratio, -1, -guard);

    const auto stride = resampler::RationalRatio::for_lengths(bank.p, N_tilde, N);
    const double start = (static_cast<double>(guard * bank.p) + bank.group_delay) * static_cast<double>(stride.q_den);
    Samples out = resampler::farrow_resample(centered, stride, bank, std::llround(start));
    require(static_cast<std::int64_t>(out.size()) >= N, ErrorCode::config_mismatch,
            "Farrow output shorter than the data portion");
    out.resize(static_cast<std::size_t>(N));
    // inverse half-band shift at the output rate is (-1)^m
    for (std::size_t m = 1; m < out.size(); m += 2) {
        out[m] = -out[m];
    }
    return out;
}

} // namespace

Samples data_portion(std::span<const Complex> u, const TxConfig& cfg) {
    cfg.validate();
    const Samples D = spectrum_for_block(u, cfg);
    switch (cfg.backend) {
    case Backend::direct:
        return dsp::idft(D);
    case Backend::clock_change:
        return dsp::ifft_pow2(
            dsp::zero_pad_spectrum(dsp::SpectrumVector(D), static_cast<std::size_t>(cfg.clocked->N_tilde)).bins());
    case Backend::farrow:
        return farrow_data_portion(D, cfg);
    }
    fail(ErrorCode::config_mismatch, "unknown backend");
}

dsp::ComplexSignal tx_chain(std::span<const Complex> u, const TxConfig& cfg) {
    const Samples d = data_portion(u, cfg);
    const auto K = static_cast<std::size_t>(cfg.cp_samples());
    require(K <= d.size(), ErrorCode::config_mismatch, "CP longer than the data portion");
    Samples x;
    x.reserve(K + d.size());
    x.insert(x.end(), d.end() - static_cast<std::ptrdiff_t>(K), d.end());
    x.insert(x.end(), d.begin(), d.end());
    return dsp::ComplexSignal(std::move(x), cfg.sample_period());
}

dsp::ComplexSignal tx_stream(std::span<const Samples> blocks, const TxConfig& cfg) {
    require(!blocks.empty(), ErrorCode::invalid_argument, "no blocks to transmit");
    Samples stream;
    for (const auto& block : blocks) {
        const auto symbol = tx_chain(block, cfg);
        stream.insert(stream.end(), symbol.samples().begin(), symbol.samples().end());
    }
    return dsp::ComplexSignal(std::move(stream), cfg.sample_period());
}

Samples channel_response(const TxConfig& cfg, std::span<const Complex> h) {
    const auto grid = static_cast<std::size_t>(cfg.data_samples());
    require(!h.empty() && h.size() <= grid, ErrorCode::length_mismatch,
            fmt::format("CIR length {} does not fit a {}-sample window", h.size(), grid));
    Samples padded(h.begin(), h.end());
    padded.resize(grid, Complex{0.0, 0.0});
    Samples H = dsp::dft_any(padded);
    // clock-change: subcarrier k sits on bin k of the N_tilde grid
    H.resize(static_cast<std::size_t>(cfg.plan.N));
    return cfg.map.demap(H);
}

Samples rx_chain(std::span<const Complex> y, const TxConfig& cfg, std::span<const Complex> h) {
    cfg.validate();
    const auto K = static_cast<std::size_t>(cfg.cp_samples());
    const auto window_len = static_cast<std::size_t>(cfg.data_samples());
    require(y.size() >= K + window_len, ErrorCode::length_mismatch,
            fmt::format("received {} samples, one symbol needs {}", y.size(), K + window_len));
    const auto window = y.subspan(K, window_len);
    const auto N = static_cast<std::size_t>(cfg.plan.N);

    Samples on_grid;
    if (cfg.backend == Backend::clock_change) {
        on_grid = dsp::ideal_resample(window, N, dsp::Band{0, N});
    } else {
        on_grid.assign(window.begin(), window.end());
    }
    const Samples W = cfg.map.demap(dsp::dft_any(on_grid));
    const Samples H = channel_response(cfg, h);

    const double n = static_cast<double>(N);
    const double bin_power = cfg.waveform == Waveform::ofdm ? 1.0 : static_cast<double>(cfg.plan.M);
    Samples U(W.size());
    for (std::size_t k = 0; k < W.size(); ++k) {
        if (cfg.equalizer == Equalizer::zero_forcing) {
            if (std::abs(H[k]) < 1e-12) {
                fail(ErrorCode::zero_channel_bin, fmt::format("channel response vanishes on occupied bin {}", k));
            }
            U[k] = W[k] / (n * H[k]);
        } else {
            // noise on a DFT bin has variance n * sigma^2
            U[k] = std::conj(H[k]) * W[k] / (n * std::norm(H[k]) + cfg.noise_variance / bin_power);
        }
    }
    if (cfg.waveform == Waveform::ofdm) {
        return U;
    }
    Samples u_hat = dsp::idft_any(U);
    const double scale = 1.0 / static_cast<double>(cfg.plan.M);
    for (auto& v : u_hat) {
        v *= scale;
    }
    return u_hat;
}

double ratio_db(double ratio) {
    if (!(ratio > 0.0)) {
        return evm_floor_db;
    }
    return std::max(evm_floor_db, 10.0 * std::log10(ratio));
}

LinkMetrics measure(std::span<const Complex> u, std::span<const Complex> u_hat, const Constellation& constellation,
                    std::optional<std::span<const Complex>> x_ref, std::optional<std::span<const Complex>> x_test) {
    require(u.size() == u_hat.size() && !u.empty(), ErrorCode::length_mismatch,
            fmt::format("symbol blocks differ in length ({} vs {})", u.size(), u_hat.size()));
    LinkMetrics m;
    m.evm_db = ratio_db(dsp::relative_error_energy(u_hat, u));

    std::size_t errors = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        errors += static_cast<std::size_t>(std::popcount(constellation.slice(u[i]) ^ constellation.slice(u_hat[i])));
    }
    m.ber = static_cast<double>(errors) / static_cast<double>(u.size() * static_cast<std::size_t>(constellation.bits_per_symbol()));

    if (x_ref && x_test) {
        m.rel_mse_db = ratio_db(dsp::relative_error_energy(*x_test, *x_ref));
    }
    return m;
}

std::shared_ptr<const resampler::FarrowBank> make_bank(std::int64_t L, std::int64_t p, std::int64_t alpha,
                                                       double stopband_atten) {
    return std::make_shared<const resampler::FarrowBank>(
        resampler::fit_farrow(resampler::design_lowpass(L, p, stopband_atten), alpha));
}

} // namespace acp::transceiver
