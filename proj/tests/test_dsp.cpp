// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#include <doctest.h>

#include <random>

#include "acp/dsp.hpp"
#include "acp/error.hpp"
#include "oracles.hpp"

using namespace acp;
using dsp::Complex;
using dsp::Samples;

TEST_SUITE("dsp") {

TEST_CASE("direct DFT against the long-double oracle, any length") {
    std::mt19937_64 gen(11);
    for (std::size_t n : {1u, 2u, 3u, 7u, 12u, 48u, 97u}) {
        const Samples x = oracle::random_samples(n, gen);
        const Samples X = dsp::dft(x);
        CHECK(oracle::max_abs_diff(X, oracle::dft(x)) <= 1e-11 * oracle::max_abs(X));
        CHECK(oracle::max_abs_diff(dsp::idft(x), oracle::dft(x, +1)) <= 1e-11 * oracle::max_abs(X));
    }
}

TEST_CASE("idft of dft scales by N") {
    std::mt19937_64 gen(12);
    const Samples x = oracle::random_samples(30, gen);
    const Samples back = dsp::idft(dsp::dft(x));
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(std::abs(back[i] - 30.0 * x[i]) <= 1e-11);
    }
}

TEST_CASE("radix-2 FFT against the oracle") {
    std::mt19937_64 gen(13);
    for (std::size_t n = 1; n <= 1024; n *= 2) {
        const Samples x = oracle::random_samples(n, gen);
        const Samples ref = oracle::dft(x);
        CHECK(oracle::max_abs_diff(dsp::fft_pow2(x), ref) <= 1e-10 * oracle::max_abs(ref));
        CHECK(oracle::max_abs_diff(dsp::ifft_pow2(x), oracle::dft(x, +1)) <= 1e-10 * oracle::max_abs(ref));
    }
    CHECK_THROWS_AS((void)dsp::fft_pow2(Samples(12)), Error);
}

TEST_CASE("dft_any switches paths without changing results") {
    std::mt19937_64 gen(14);
    for (std::size_t n : {64u, 63u}) {
        const Samples x = oracle::random_samples(n, gen);
        CHECK(oracle::max_abs_diff(dsp::dft_any(x), oracle::dft(x)) <= 1e-10 * n);
        CHECK(oracle::max_abs_diff(dsp::idft_any(x), oracle::dft(x, +1)) <= 1e-10 * n);
    }
}

TEST_CASE("circular convolution is exact on small integers") {
    std::mt19937_64 gen(15);
    std::uniform_int_distribution<int> small(-32, 32);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + gen() % 24;
        Samples h(1 + gen() % n);
        Samples d(n);
        for (auto& v : h) {
            v = Complex(small(gen), small(gen));
        }
        for (auto& v : d) {
            v = Complex(small(gen), small(gen));
        }
        CHECK(dsp::circular_convolve(h, d) == oracle::circular(h, d));
    }
    CHECK_THROWS_AS((void)dsp::circular_convolve(Samples(5), Samples(4)), Error);
}

TEST_CASE("zero padding appends bins") {
    Samples D{1.0, 2.0, 3.0, 4.0};
    const auto P = dsp::zero_pad_spectrum(dsp::SpectrumVector(D), 8);
    REQUIRE(P.size() == 8);
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(P[k] == (k < 4 ? D[k] : Complex(0.0)));
    }
    try {
        (void)dsp::zero_pad_spectrum(dsp::SpectrumVector(D), 2);
        FAIL("expected shrink");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::shrink);
    }
}

TEST_CASE("half-band shift multiplies by a linear phase") {
    const Samples x(6, Complex(1.0, 0.0));
    const Samples y = dsp::half_band_shift(x, 0.5, +1, 2);
    for (std::size_t n = 0; n < x.size(); ++n) {
        const double phase = std::numbers::pi * static_cast<double>(n + 2) * 0.5;
        CHECK(std::abs(y[n] - std::polar(1.0, phase)) <= 1e-14);
    }
    const Samples back = dsp::half_band_shift(y, 0.5, -1, 2);
    CHECK(oracle::max_abs_diff(back, x) <= 1e-14);
}

TEST_CASE("ideal resampling samples a trigonometric polynomial") {
    const std::vector<std::pair<long long, Complex>> terms{{-3, {0.5, 0.2}}, {0, {1.0, 0.0}}, {5, {0.0, -0.7}}};
    for (std::size_t in_len : {16u, 21u}) {
        Samples x(in_len);
        for (std::size_t n = 0; n < in_len; ++n) {
            x[n] = oracle::trig_poly(terms, static_cast<double>(n) / static_cast<double>(in_len));
        }
        for (std::size_t out_len : {12u, 13u, 40u}) {
            const Samples y = dsp::ideal_resample(x, out_len);
            REQUIRE(y.size() == out_len);
            for (std::size_t m = 0; m < out_len; ++m) {
                const Complex ref = oracle::trig_poly(terms, static_cast<double>(m) / static_cast<double>(out_len));
                CHECK(std::abs(y[m] - ref) <= 1e-12);
            }
        }
    }
}

TEST_CASE("ideal resampling refuses to alias") {
    // occupied bins 0, 3 and 5 need at least 6 output samples
    Samples x(16);
    for (std::size_t n = 0; n < 16; ++n) {
        x[n] = oracle::trig_poly({{0, 1.0}, {3, 1.0}, {5, 1.0}}, static_cast<double>(n) / 16.0);
    }
    CHECK(dsp::ideal_resample(x, 6).size() == 6);
    try {
        (void)dsp::ideal_resample(x, 4);
        FAIL("expected alias");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::alias);
    }
}

TEST_CASE("occupied band of a one-sided spectrum") {
    Samples X(16);
    X[2] = 1.0;
    X[5] = 1.0;
    const auto b = dsp::occupied_band(X);
    CHECK(b.first == 2);
    CHECK(b.width == 4);
    Samples Y(16);
    Y[15] = 1.0;
    Y[1] = 1.0;
    const auto c = dsp::occupied_band(Y);
    CHECK(c.first == -1);
    CHECK(c.width == 3);
}

TEST_CASE("error measures") {
    const Samples ref{2.0, 0.0};
    const Samples got{2.0, 1.0};
    CHECK(dsp::relative_error_energy(got, ref) == doctest::Approx(0.25));
    CHECK(dsp::max_relative_error(got, ref) == doctest::Approx(0.5));
    CHECK(dsp::energy(got) == doctest::Approx(5.0));
    CHECK_THROWS_AS((void)dsp::relative_error_energy(Samples(2), Samples(3)), Error);
}

TEST_CASE("signal carries its sample period") {
    const dsp::ComplexSignal s(Samples(8, Complex(1.0)), 0.5e-6);
    CHECK(s.duration() == doctest::Approx(4e-6));
    const auto S = dsp::dft(s);
    CHECK(S[0] == Complex(8.0));
    const auto back = dsp::idft(S, 0.5e-6);
    CHECK(std::abs(back[3] - Complex(8.0)) <= 1e-12);
    CHECK(back.sample_period() == 0.5e-6);
}

} // TEST_SUITE
