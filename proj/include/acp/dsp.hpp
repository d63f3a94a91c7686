// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace acp::dsp {

using Complex = std::complex<double>;
using Samples = std::vector<Complex>;

/// Finite complex sequence sampled every `sample_period()` seconds.
class ComplexSignal {
public:
    ComplexSignal(Samples samples, double sample_period);

    [[nodiscard]] std::span<const Complex> samples() const { return samples_; }
    [[nodiscard]] const Samples& vector() const { return samples_; }
    [[nodiscard]] std::size_t size() const { return samples_.size(); }
    [[nodiscard]] double sample_period() const { return sample_period_; }
    [[nodiscard]] Complex operator[](std::size_t i) const { return samples_[i]; }
    [[nodiscard]] double duration() const { return static_cast<double>(samples_.size()) * sample_period_; }

private:
    Samples samples_;
    double sample_period_;
};

/// Finite sequence of transform bins.
class SpectrumVector {
public:
    explicit SpectrumVector(Samples bins);

    [[nodiscard]] std::span<const Complex> bins() const { return bins_; }
    [[nodiscard]] const Samples& vector() const { return bins_; }
    [[nodiscard]] std::size_t size() const { return bins_.size(); }
    [[nodiscard]] Complex operator[](std::size_t i) const { return bins_[i]; }

private:
    Samples bins_;
};

// Transform convention: forward has exp(-j2pi nk/N), inverse exp(+j2pi nk/N),
// neither is scaled, so idft(dft(x)) == N * x.

/// Direct O(N^2) DFT of any length.
[[nodiscard]] Samples dft(std::span<const Complex> x);
[[nodiscard]] SpectrumVector dft(const ComplexSignal& x);
[[nodiscard]] SpectrumVector dft(const SpectrumVector& x);

/// Direct O(N^2) inverse DFT of any length, unscaled.
[[nodiscard]] Samples idft(std::span<const Complex> X);
[[nodiscard]] ComplexSignal idft(const SpectrumVector& X, double sample_period);

/// Radix-2 FFT; throws not_power_of_two for other lengths.
[[nodiscard]] Samples fft_pow2(std::span<const Complex> x);
[[nodiscard]] SpectrumVector fft_pow2(const ComplexSignal& x);
[[nodiscard]] Samples ifft_pow2(std::span<const Complex> X);
[[nodiscard]] ComplexSignal ifft_pow2(const SpectrumVector& X, double sample_period);

/// Radix-2 when the length allows it, direct otherwise.
[[nodiscard]] Samples dft_any(std::span<const Complex> x);
[[nodiscard]] Samples idft_any(std::span<const Complex> X);

/// out[n] = sum_m h[m] d[(n - m) mod N], with h zero-extended to len(d).
[[nodiscard]] Samples circular_convolve(std::span<const Complex> h, std::span<const Complex> d);
[[nodiscard]] ComplexSignal circular_convolve(const ComplexSignal& h, const ComplexSignal& d);

/// Append zero bins after D up to length N_tilde.
[[nodiscard]] SpectrumVector zero_pad_spectrum(const SpectrumVector& D, std::size_t N_tilde);

/// Multiply sample n by exp(direction * j*pi * (n + first_index) * ratio).
/// `first_index` lets a cyclically extended block keep the phase of its true time index.
[[nodiscard]] Samples half_band_shift(std::span<const Complex> x, double ratio, int direction,
                                      long long first_index = 0);
[[nodiscard]] ComplexSignal half_band_shift(const ComplexSignal& x, double ratio, int direction);

/// Contiguous band of signed frequency indices [first, first + width), in cycles per period.
struct Band {
    long long first = 0;
    std::size_t width = 0;
};

/// Smallest circular arc of bins holding all bins above `rel_threshold * max|X|`.
/// An arc that wraps through bin 0 is read as a band straddling DC.
[[nodiscard]] Band occupied_band(std::span<const Complex> X, double rel_threshold = 1e-9);

/// Treat x as one period of a periodic bandlimited signal and sample that period
/// on `out_len` points. A pure tone keeps its amplitude.
[[nodiscard]] Samples ideal_resample(std::span<const Complex> x, std::size_t out_len);
[[nodiscard]] Samples ideal_resample(std::span<const Complex> x, std::size_t out_len, Band band);
[[nodiscard]] ComplexSignal ideal_resample(const ComplexSignal& x, std::size_t out_len);

/// sum |a - b|^2 / sum |b|^2 (b is the reference).
[[nodiscard]] double relative_error_energy(std::span<const Complex> a, std::span<const Complex> b);
/// max |a - b| / max |b|.
[[nodiscard]] double max_relative_error(std::span<const Complex> a, std::span<const Complex> b);
[[nodiscard]] double energy(std::span<const Complex> x);

} // namespace acp::dsp
