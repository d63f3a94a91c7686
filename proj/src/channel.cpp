// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#include "acp/channel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "acp/error.hpp"
#include "acp/io.hpp"

namespace acp::channel {

ChannelModel::ChannelModel(std::vector<Tap> taps, std::uint64_t rng_seed)
    : taps_(std::move(taps)), rng_seed_(rng_seed) {
    require(!taps_.empty(), ErrorCode::invalid_argument, "channel needs at least one tap");
    for (std::size_t i = 0; i < taps_.size(); ++i) {
        require(taps_[i].delay >= 0, ErrorCode::invalid_argument, "tap delays must be >= 0");
        require(i == 0 || taps_[i].delay > taps_[i - 1].delay, ErrorCode::invalid_argument,
                "tap delays must be strictly increasing");
        require(std::isfinite(taps_[i].gain.real()) && std::isfinite(taps_[i].gain.imag()),
                ErrorCode::invalid_argument, "tap gains must be finite");
    }
    require(total_power() > 0.0, ErrorCode::zero_power, "channel has zero total power");
}

double ChannelModel::total_power() const {
    double p = 0.0;
    for (const auto& t : taps_) {
        p += std::norm(t.gain);
    }
    return p;
}

PowerDelayProfile::PowerDelayProfile(std::vector<PdpEntry> entries) : entries_(std::move(entries)) {
    require(!entries_.empty(), ErrorCode::invalid_argument, "power-delay profile is empty");
    double total = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        require(entries_[i].power >= 0.0, ErrorCode::invalid_argument, "PDP powers must be >= 0");
        require(i == 0 || entries_[i].delay >= entries_[i - 1].delay, ErrorCode::invalid_argument,
                "PDP delays must be non-decreasing");
        total += entries_[i].power;
    }
    require(total > 0.0, ErrorCode::zero_power, "power-delay profile has zero total power");
}

double rms_delay_spread(const PowerDelayProfile& pdp) {
    // center on the first delay so a large common offset does not cost precision
    const double origin = pdp.entries().front().delay;
    double p = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    for (const auto& e : pdp.entries()) {
        const double d = e.delay - origin;
        p += e.power;
        m1 += e.power * d;
        m2 += e.power * d * d;
    }
    require(p > 0.0, ErrorCode::zero_power, "power-delay profile has zero total power");
    const double mean = m1 / p;
    return std::sqrt(std::max(0.0, m2 / p - mean * mean));
}

PowerDelayProfile power_delay_profile(const ChannelModel& ch, double sample_period) {
    std::vector<PdpEntry> entries;
    entries.reserve(ch.taps().size());
    for (const auto& t : ch.taps()) {
        entries.push_back({static_cast<double>(t.delay) * sample_period, std::norm(t.gain)});
    }
    return PowerDelayProfile(std::move(entries));
}

dsp::ComplexSignal apply_channel(const dsp::ComplexSignal& x, const ChannelModel& ch, std::optional<double> snr_db,
                                 std::uint64_t trial) {
    const auto max_delay = static_cast<std::size_t>(ch.max_delay());
    dsp::Samples y(x.size() + max_delay, dsp::Complex{0.0, 0.0});
    for (const auto& tap : ch.taps()) {
        const auto d = static_cast<std::size_t>(tap.delay);
        for (std::size_t n = 0; n < x.size(); ++n) {
            y[n + d] += tap.gain * x[n];
        }
    }
    if (snr_db && std::isfinite(*snr_db)) {
        const double power = dsp::energy(y) / static_cast<double>(y.size());
        const double variance = power / std::pow(10.0, *snr_db / 10.0);
        Rng rng(ch.rng_seed(), trial);
        for (auto& v : y) {
            v += rng.complex_normal(variance);
        }
    }
    return dsp::ComplexSignal(std::move(y), x.sample_period());
}

dsp::ComplexSignal cir_as_signal(const ChannelModel& ch, std::size_t length, double sample_period) {
    if (static_cast<std::int64_t>(length) <= ch.max_delay()) {
        fail(ErrorCode::length_too_short,
             fmt::format("CIR length {} cannot hold a tap at delay {}", length, ch.max_delay()));
    }
    dsp::Samples h(length, dsp::Complex{0.0, 0.0});
    for (const auto& t : ch.taps()) {
        h[static_cast<std::size_t>(t.delay)] = t.gain;
    }
    return dsp::ComplexSignal(std::move(h), sample_period);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
    require(n > 0, ErrorCode::invalid_argument, "empty range");
    // rejection keeps the draw unbiased
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = 0;
    do {
        v = engine_();
    } while (v >= limit);
    return v % n;
}

double Rng::normal() {
    if (spare_) {
        const double v = *spare_;
        spare_.reset();
        return v;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    return r * std::cos(theta);
}

dsp::Complex Rng::complex_normal(double variance) {
    const double s = std::sqrt(variance / 2.0);
    const double re = normal();
    const double im = normal();
    return {s * re, s * im};
}

ChannelModel ChannelProfile::discretize(double sample_period) const {
    require(sample_period > 0.0, ErrorCode::invalid_argument, "sample period must be > 0");
    std::map<std::int64_t, dsp::Complex> merged;
    for (const auto& t : taps) {
        require(t.delay >= 0.0, ErrorCode::invalid_argument, "tap delays must be >= 0");
        merged[std::llround(t.delay / sample_period)] += t.gain;
    }
    std::vector<Tap> out;
    for (const auto& [d, g] : merged) {
        out.push_back({d, g});
    }
    return ChannelModel(std::move(out), seed);
}

PowerDelayProfile ChannelProfile::pdp() const {
    std::vector<PdpEntry> entries;
    for (const auto& t : taps) {
        entries.push_back({t.delay, std::norm(t.gain)});
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const PdpEntry& a, const PdpEntry& b) { return a.delay < b.delay; });
    return PowerDelayProfile(std::move(entries));
}

ChannelProfile parse_profile(std::string_view text) {
    ChannelProfile profile;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word) || word.front() == '#') {
            continue;
        }
        if (word == "seed") {
            std::string value;
            require(static_cast<bool>(ls >> value), ErrorCode::parse, fmt::format("line {}: seed needs a value", line_no));
            profile.seed = std::stoull(value);
        } else if (word == "tap") {
            std::string d;
            std::string re;
            std::string im;
            require(static_cast<bool>(ls >> d >> re >> im), ErrorCode::parse,
                    fmt::format("line {}: expected 'tap <delay_ns> <gain_re> <gain_im>'", line_no));
            profile.taps.push_back({io::parse_quantity(d) * 1e-9, {io::parse_quantity(re), io::parse_quantity(im)}});
        } else {
            fail(ErrorCode::parse, fmt::format("line {}: unknown entry '{}'", line_no, word));
        }
    }
    require(!profile.taps.empty(), ErrorCode::parse, "channel profile defines no taps");
    return profile;
}

ChannelProfile preset_profile(std::string_view name) {
    const double a = 1.0 / std::numbers::sqrt2;
    auto two_tap = [a](double tau) {
        ChannelProfile p;
        p.taps = {{0.0, {a, 0.0}}, {2.0 * tau, {a, 0.0}}};
        return p;
    };
    if (name == "mmw73-min") {
        ChannelProfile p;
        p.taps = {{0.0, {1.0, 0.0}}};
        return p;
    }
    if (name == "mmw73-avg") {
        return two_tap(12.1e-9);
    }
    if (name == "mmw73-max") {
        return two_tap(200.3e-9);
    }
    fail(ErrorCode::invalid_argument, fmt::format("unknown channel preset '{}'", name));
}

ChannelModel random_exponential(std::int64_t span, double decay_samples, std::uint64_t seed, std::uint64_t stream) {
    require(span >= 0, ErrorCode::invalid_argument, "channel span must be >= 0");
    if (span == 0 || decay_samples <= 0.0) {
        return ChannelModel({{0, {1.0, 0.0}}}, seed);
    }
    Rng rng(seed, stream);
    std::vector<Tap> taps;
    double total = 0.0;
    for (std::int64_t d = 0; d <= span; ++d) {
        const double power = std::exp(-static_cast<double>(d) / decay_samples);
        const dsp::Complex g = rng.complex_normal(power);
        taps.push_back({d, g});
        total += std::norm(g);
    }
    const double scale = 1.0 / std::sqrt(total);
    for (auto& t : taps) {
        t.gain *= scale;
    }
    return ChannelModel(std::move(taps), seed);
}

} // namespace acp::channel
