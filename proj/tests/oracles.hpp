// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

// Slow reference computations shared by the unit tests. Nothing here calls the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Samples = std::vector<Complex>;

// sum x[n] e^{sign j 2 pi k n / N}, no scaling.
inline Samples dft(const Samples& x, int sign = -1) {
    const std::size_t N = x.size();
    Samples X(N);
    for (std::size_t k = 0; k < N; ++k) {
        std::complex<long double> acc{};
        for (std::size_t n = 0; n < N; ++n) {
            const long double a = sign * 2.0L * std::numbers::pi_v<long double> *
                                  static_cast<long double>((k * n) % N) / static_cast<long double>(N);
            acc += std::complex<long double>(x[n].real(), x[n].imag()) * std::polar(1.0L, a);
        }
        X[k] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    }
    return X;
}

inline Samples circular(const Samples& h, const Samples& d) {
    const std::size_t N = d.size();
    Samples y(N);
    for (std::size_t n = 0; n < N; ++n) {
        for (std::size_t m = 0; m < h.size(); ++m) {
            y[n] += h[m] * d[(n + N * h.size() - m) % N];
        }
    }
    return y;
}

inline Samples linear(const Samples& h, const Samples& x) {
    Samples y(x.size() + h.size() - 1);
    for (std::size_t n = 0; n < x.size(); ++n) {
        for (std::size_t m = 0; m < h.size(); ++m) {
            y[n + m] += h[m] * x[n];
        }
    }
    return y;
}

// Zero-stuff by p, full FIR, keep every q-th sample.
inline Samples zero_stuff_filter_decimate(const Samples& x, std::int64_t p, std::int64_t q,
                                          const std::vector<double>& taps) {
    const std::size_t up = x.size() * static_cast<std::size_t>(p);
    Samples stuffed(up);
    for (std::size_t i = 0; i < x.size(); ++i) {
        stuffed[i * static_cast<std::size_t>(p)] = x[i];
    }
    Samples out;
    for (std::size_t n = 0; n < up; n += static_cast<std::size_t>(q)) {
        Complex acc{};
        for (std::size_t k = 0; k < taps.size() && k <= n; ++k) {
            acc += taps[k] * stuffed[n - k];
        }
        out.push_back(acc);
    }
    return out;
}

// Periodic bandlimited signal with the given signed-frequency coefficients, sampled at t/period.
inline Complex trig_poly(const std::vector<std::pair<long long, Complex>>& terms, double t) {
    Complex acc{};
    for (const auto& [f, c] : terms) {
        acc += c * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(f) * t);
    }
    return acc;
}

inline Samples random_samples(std::size_t n, std::mt19937_64& gen) {
    std::normal_distribution<double> g;
    Samples x(n);
    for (auto& v : x) {
        v = {g(gen), g(gen)};
    }
    return x;
}

inline double max_abs_diff(const Samples& a, const Samples& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

inline double max_abs(const Samples& a) {
    double m = 0.0;
    for (const auto& v : a) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

} // namespace oracle
