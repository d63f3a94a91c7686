// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#include "acp/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "acp/error.hpp"

namespace acp::dsp {

namespace {

bool all_finite(std::span<const Complex> v) {
    return std::all_of(v.begin(), v.end(),
                       [](Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

bool pow2(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

// table[m] = exp(sign * j*2pi*m/n), each entry evaluated directly
Samples twiddles(std::size_t n, double sign) {
    Samples table(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
        table[m] = {std::cos(angle), std::sin(angle)};
    }
    return table;
}

Samples direct_transform(std::span<const Complex> x, double sign) {
    const std::size_t n = x.size();
    require(n >= 1, ErrorCode::invalid_argument, "transform length must be >= 1");
    const Samples w = twiddles(n, sign);
    Samples out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc{0.0, 0.0};
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += x[i] * w[idx];
            idx += k;
            if (idx >= n) {
                idx -= n;
            }
        }
        out[k] = acc;
    }
    return out;
}

Samples radix2(std::span<const Complex> x, double sign) {
    const std::size_t n = x.size();
    if (!pow2(n)) {
        fail(ErrorCode::not_power_of_two, fmt::format("length {} is not a power of two", n));
    }
    Samples a(x.begin(), x.end());

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(a[i], a[j]);
        }
    }

    const Samples w = twiddles(n, sign);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t step = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const Complex t = a[start + k + half] * w[k * step];
                const Complex u = a[start + k];
                a[start + k] = u + t;
                a[start + k + half] = u - t;
            }
        }
    }
    return a;
}

} // namespace

ComplexSignal::ComplexSignal(Samples samples, double sample_period)
    : samples_(std::move(samples)), sample_period_(sample_period) {
    require(!samples_.empty(), ErrorCode::invalid_argument, "signal must hold at least one sample");
    require(std::isfinite(sample_period_) && sample_period_ > 0.0, ErrorCode::invalid_argument,
            "sample period must be > 0");
    require(all_finite(samples_), ErrorCode::invalid_argument, "signal holds non-finite samples");
}

SpectrumVector::SpectrumVector(Samples bins) : bins_(std::move(bins)) {
    require(!bins_.empty(), ErrorCode::invalid_argument, "spectrum must hold at least one bin");
    require(all_finite(bins_), ErrorCode::invalid_argument, "spectrum holds non-finite bins");
}

Samples dft(std::span<const Complex> x) { return direct_transform(x, -1.0); }
SpectrumVector dft(const ComplexSignal& x) { return SpectrumVector(dft(x.samples())); }
SpectrumVector dft(const SpectrumVector& x) { return SpectrumVector(dft(x.bins())); }

Samples idft(std::span<const Complex> X) { return direct_transform(X, 1.0); }
ComplexSignal idft(const SpectrumVector& X, double sample_period) {
    return ComplexSignal(idft(X.bins()), sample_period);
}

Samples fft_pow2(std::span<const Complex> x) { return radix2(x, -1.0); }
SpectrumVector fft_pow2(const ComplexSignal& x) { return SpectrumVector(fft_pow2(x.samples())); }
Samples ifft_pow2(std::span<const Complex> X) { return radix2(X, 1.0); }
ComplexSignal ifft_pow2(const SpectrumVector& X, double sample_period) {
    return ComplexSignal(ifft_pow2(X.bins()), sample_period);
}

Samples dft_any(std::span<const Complex> x) { return pow2(x.size()) ? fft_pow2(x) : dft(x); }
Samples idft_any(std::span<const Complex> X) { return pow2(X.size()) ? ifft_pow2(X) : idft(X); }

Samples circular_convolve(std::span<const Complex> h, std::span<const Complex> d) {
    require(!d.empty(), ErrorCode::invalid_argument, "convolution input is empty");
    if (h.size() > d.size()) {
        fail(ErrorCode::length_mismatch,
             fmt::format("kernel length {} exceeds signal length {}", h.size(), d.size()));
    }
    const std::size_t n = d.size();
    Samples out(n, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc{0.0, 0.0};
        for (std::size_t m = 0; m < h.size(); ++m) {
            acc += h[m] * d[(i + n - m) % n];
        }
        out[i] = acc;
    }
    return out;
}

ComplexSignal circular_convolve(const ComplexSignal& h, const ComplexSignal& d) {
    return ComplexSignal(circular_convolve(h.samples(), d.samples()), d.sample_period());
}

SpectrumVector zero_pad_spectrum(const SpectrumVector& D, std::size_t N_tilde) {
    if (N_tilde < D.size()) {
        fail(ErrorCode::shrink, fmt::format("cannot zero-pad {} bins down to {}", D.size(), N_tilde));
    }
    Samples out(D.vector());
    out.resize(N_tilde, Complex{0.0, 0.0});
    return SpectrumVector(std::move(out));
}

Samples half_band_shift(std::span<const Complex> x, double ratio, int direction, long long first_index) {
    require(ratio > 0.0 && ratio <= 1.0, ErrorCode::invalid_argument, "shift ratio must lie in (0, 1]");
    require(direction == 1 || direction == -1, ErrorCode::invalid_argument, "direction must be +1 or -1");
    Samples out(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) {
        // phase in half-turns, reduced mod 2 before scaling by pi
        const double turns = std::fmod(static_cast<double>(static_cast<long long>(n) + first_index) * ratio, 2.0);
        const double angle = static_cast<double>(direction) * std::numbers::pi * turns;
        out[n] = x[n] * Complex{std::cos(angle), std::sin(angle)};
    }
    return out;
}

ComplexSignal half_band_shift(const ComplexSignal& x, double ratio, int direction) {
    return ComplexSignal(half_band_shift(x.samples(), ratio, direction), x.sample_period());
}

Band occupied_band(std::span<const Complex> X, double rel_threshold) {
    const std::size_t n = X.size();
    double peak = 0.0;
    for (const auto& v : X) {
        peak = std::max(peak, std::abs(v));
    }
    if (peak == 0.0) {
        return {0, 0};
    }
    std::vector<bool> used(n);
    std::size_t count = 0;
    for (std::size_t k = 0; k < n; ++k) {
        used[k] = std::abs(X[k]) > rel_threshold * peak;
        count += used[k] ? 1 : 0;
    }
    if (count == n) {
        return {0, n};
    }

    // longest circular run of unused bins; the band is its complement
    std::size_t best_len = 0;
    std::size_t best_end = 0; // one past the gap, i.e. the band start
    for (std::size_t start = 0; start < n; ++start) {
        if (used[start] || !used[(start + n - 1) % n]) {
            continue; // not the first bin of a gap
        }
        std::size_t len = 0;
        while (!used[(start + len) % n]) {
            ++len;
        }
        if (len > best_len) {
            best_len = len;
            best_end = (start + len) % n;
        }
    }
    const std::size_t width = n - best_len;
    const bool wraps = best_end + width > n;
    const long long first = wraps ? static_cast<long long>(best_end) - static_cast<long long>(n)
                                  : static_cast<long long>(best_end);
    return {first, width};
}

Samples ideal_resample(std::span<const Complex> x, std::size_t out_len, Band band) {
    require(!x.empty() && out_len >= 1, ErrorCode::invalid_argument, "resample lengths must be >= 1");
    if (band.width > out_len) {
        fail(ErrorCode::alias, fmt::format("{} occupied bins do not fit in {} output samples", band.width, out_len));
    }
    const auto n_in = static_cast<long long>(x.size());
    const auto n_out = static_cast<long long>(out_len);
    const Samples X = dft_any(x);
    Samples Y(out_len, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < band.width; ++i) {
        const long long f = band.first + static_cast<long long>(i);
        const auto src = static_cast<std::size_t>(((f % n_in) + n_in) % n_in);
        const auto dst = static_cast<std::size_t>(((f % n_out) + n_out) % n_out);
        Y[dst] = X[src];
    }
    Samples y = idft_any(Y);
    const double scale = 1.0 / static_cast<double>(n_in);
    for (auto& v : y) {
        v *= scale;
    }
    return y;
}

Samples ideal_resample(std::span<const Complex> x, std::size_t out_len) {
    return ideal_resample(x, out_len, occupied_band(dft_any(x)));
}

ComplexSignal ideal_resample(const ComplexSignal& x, std::size_t out_len) {
    return ComplexSignal(ideal_resample(x.samples(), out_len), x.duration() / static_cast<double>(out_len));
}

double energy(std::span<const Complex> x) {
    double e = 0.0;
    for (const auto& v : x) {
        e += std::norm(v);
    }
    return e;
}

double relative_error_energy(std::span<const Complex> a, std::span<const Complex> b) {
    require(a.size() == b.size(), ErrorCode::length_mismatch,
            fmt::format("length mismatch {} vs {}", a.size(), b.size()));
    double err = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        err += std::norm(a[i] - b[i]);
    }
    const double ref = energy(b);
    return ref > 0.0 ? err / ref : (err > 0.0 ? INFINITY : 0.0);
}

double max_relative_error(std::span<const Complex> a, std::span<const Complex> b) {
    require(a.size() == b.size(), ErrorCode::length_mismatch,
            fmt::format("length mismatch {} vs {}", a.size(), b.size()));
    double diff = 0.0;
    double ref = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff = std::max(diff, std::abs(a[i] - b[i]));
        ref = std::max(ref, std::abs(b[i]));
    }
    return ref > 0.0 ? diff / ref : (diff > 0.0 ? INFINITY : 0.0);
}

} // namespace acp::dsp
