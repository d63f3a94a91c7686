// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#include "acp/resampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "acp/error.hpp"
#include "acp/io.hpp"
#include "acp/numerology.hpp"

namespace acp::resampler {

namespace {

double sinc(double x) {
    if (x == 0.0) {
        return 1.0;
    }
    const double a = std::numbers::pi * x;
    return std::sin(a) / a;
}

} // namespace

RationalRatio make_ratio(std::int64_t p, std::int64_t q_num, std::int64_t q_den) {
    require(p >= 1 && q_num >= 1 && q_den >= 1, ErrorCode::invalid_argument,
            "ratio terms p, q_num, q_den must be >= 1");
    const std::int64_t g = std::gcd(q_num, q_den);
    return {p, q_num / g, q_den / g};
}

RationalRatio RationalRatio::for_lengths(std::int64_t p, std::int64_t in_len, std::int64_t out_len) {
    require(in_len >= 1 && out_len >= 1, ErrorCode::invalid_argument, "lengths must be >= 1");
    return make_ratio(p, p * in_len, out_len);
}

double FarrowBank::evaluate(std::size_t row, double mu) const {
    const auto& c = rows[row];
    double acc = c.back();
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        acc = acc * mu + c[k];
    }
    return acc;
}

double kaiser_beta(double atten) {
    if (atten > 50.0) {
        return 0.1102 * (atten - 8.7);
    }
    if (atten >= 21.0) {
        return 0.5842 * std::pow(atten - 21.0, 0.4) + 0.07886 * (atten - 21.0);
    }
    return 0.0;
}

std::int64_t kaiser_length_estimate(double atten, double width) {
    require(width > 0.0, ErrorCode::invalid_argument, "transition width must be > 0");
    return static_cast<std::int64_t>(std::ceil((atten - 7.95) / (14.36 * width))) + 1;
}

PrototypeFilter design_lowpass(std::int64_t L, std::int64_t p, double stopband_atten, double cutoff) {
    require(p >= 1, ErrorCode::invalid_argument, "interpolation factor p must be >= 1");
    require(L >= 2 * p, ErrorCode::invalid_argument, fmt::format("filter length {} is below 2p = {}", L, 2 * p));
    require(stopband_atten >= 20.0, ErrorCode::invalid_argument, "stopband attenuation must be >= 20 dB");
    const double fc = cutoff > 0.0 ? cutoff : 1.0 / (2.0 * static_cast<double>(p));
    require(fc <= 0.5, ErrorCode::invalid_argument, "cutoff must be <= 0.5 cycles/sample");

    const std::int64_t needed = kaiser_length_estimate(stopband_atten, fc);
    if (L < needed) {
        fail(ErrorCode::infeasible_filter,
             fmt::format("{} dB with transition width {:g} needs about {} taps, got {}", stopband_atten, fc, needed, L));
    }

    PrototypeFilter proto;
    proto.p = p;
    proto.cutoff = fc;
    proto.stopband_atten = stopband_atten;
    proto.kaiser_beta = kaiser_beta(stopband_atten);
    proto.taps.resize(static_cast<std::size_t>(L));

    const double center = (static_cast<double>(L) - 1.0) / 2.0;
    const double i0_beta = std::cyl_bessel_i(0.0, proto.kaiser_beta);
    double sum = 0.0;
    for (std::int64_t n = 0; n < L; ++n) {
        const double t = static_cast<double>(n) - center;
        const double r = center > 0.0 ? t / center : 0.0;
        const double window = std::cyl_bessel_i(0.0, proto.kaiser_beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / i0_beta;
        const double v = 2.0 * fc * sinc(2.0 * fc * t) * window;
        proto.taps[static_cast<std::size_t>(n)] = v;
        sum += v;
    }
    const double scale = static_cast<double>(p) / sum;
    for (auto& v : proto.taps) {
        v *= scale;
    }
    return proto;
}

double relative_response(const PrototypeFilter& proto, double f) {
    dsp::Complex acc{0.0, 0.0};
    double dc = 0.0;
    for (std::size_t n = 0; n < proto.taps.size(); ++n) {
        const double angle = -2.0 * std::numbers::pi * f * static_cast<double>(n);
        acc += proto.taps[n] * dsp::Complex{std::cos(angle), std::sin(angle)};
        dc += proto.taps[n];
    }
    return std::abs(acc) / std::abs(dc);
}

dsp::Samples polyphase_resample(std::span<const dsp::Complex> x, std::int64_t p, std::int64_t q,
                                const PrototypeFilter& proto) {
    require(p >= 1 && q >= 1, ErrorCode::invalid_argument, "p and q must be >= 1");
    require(std::gcd(p, q) == 1, ErrorCode::invalid_argument, fmt::format("p={} and q={} are not coprime", p, q));
    const double max_cutoff = 1.0 / (2.0 * static_cast<double>(std::max(p, q)));
    if (proto.p != p || proto.cutoff > max_cutoff * (1.0 + 1e-9)) {
        fail(ErrorCode::mismatched_prototype,
             fmt::format("prototype (p={}, cutoff {:g}) does not suit p/q = {}/{} (needs cutoff <= {:g})", proto.p,
                         proto.cutoff, p, q, max_cutoff));
    }

    const auto len = static_cast<std::int64_t>(x.size());
    const auto taps = static_cast<std::int64_t>(proto.taps.size());
    const std::int64_t out_len = len * p / q;
    dsp::Samples y(static_cast<std::size_t>(out_len));
    for (std::int64_t m = 0; m < out_len; ++m) {
        const std::int64_t j = m * q;
        const std::int64_t arm = j % p;
        const std::int64_t base = j / p;
        dsp::Complex acc{0.0, 0.0};
        for (std::int64_t k = 0; arm + p * k < taps; ++k) {
            const std::int64_t idx = base - k;
            if (idx < 0) {
                break;
            }
            if (idx < len) {
                acc += proto.taps[static_cast<std::size_t>(arm + p * k)] * x[static_cast<std::size_t>(idx)];
            }
        }
        y[static_cast<std::size_t>(m)] = acc;
    }
    return y;
}

dsp::ComplexSignal polyphase_resample(const dsp::ComplexSignal& x, std::int64_t p, std::int64_t q,
                                      const PrototypeFilter& proto) {
    return dsp::ComplexSignal(polyphase_resample(x.samples(), p, q, proto),
                              x.sample_period() * static_cast<double>(q) / static_cast<double>(p));
}

FarrowBank fit_farrow(const PrototypeFilter& proto, std::int64_t alpha) {
    require(alpha >= 0, ErrorCode::invalid_argument, "polynomial order must be >= 0");
    const std::int64_t p = proto.p;
    if (p < alpha + 1) {
        fail(ErrorCode::rank_deficient,
             fmt::format("{} points per row cannot determine an order-{} polynomial", p, alpha));
    }
    const auto L = static_cast<std::int64_t>(proto.taps.size());
    const std::int64_t row_count = (L + p - 1) / p;

    Eigen::MatrixXd vandermonde(p, alpha + 1);
    for (std::int64_t i = 0; i < p; ++i) {
        const double mu = static_cast<double>(i) / static_cast<double>(p);
        double power = 1.0;
        for (std::int64_t k = 0; k <= alpha; ++k) {
            vandermonde(i, k) = power;
            power *= mu;
        }
    }
    const auto qr = vandermonde.colPivHouseholderQr();

    FarrowBank bank;
    bank.p = p;
    bank.alpha = alpha;
    bank.prototype_length = L;
    bank.group_delay = proto.group_delay();
    bank.rows.reserve(static_cast<std::size_t>(row_count));
    for (std::int64_t r = 0; r < row_count; ++r) {
        Eigen::VectorXd values(p);
        for (std::int64_t i = 0; i < p; ++i) {
            const std::int64_t idx = r * p + i;
            values(i) = idx < L ? proto.taps[static_cast<std::size_t>(idx)] : 0.0;
        }
        const Eigen::VectorXd coeffs = qr.solve(values);
        bank.rows.emplace_back(coeffs.data(), coeffs.data() + coeffs.size());
        for (std::int64_t i = 0; i < p; ++i) {
            const double fitted = bank.evaluate(static_cast<std::size_t>(r), static_cast<double>(i) / static_cast<double>(p));
            bank.fit_residual = std::max(bank.fit_residual, std::abs(fitted - values(i)));
        }
    }
    return bank;
}

StrideAccumulator::StrideAccumulator(const RationalRatio& ratio, std::int64_t start_phase)
    : phase_(start_phase), step_(ratio.q_num), span_(ratio.p * ratio.q_den), half_(ratio.q_den) {
    require(start_phase >= 0, ErrorCode::invalid_argument, "start phase must be >= 0");
}

dsp::Samples farrow_resample(std::span<const dsp::Complex> x, const RationalRatio& ratio, const FarrowBank& bank,
                             std::int64_t start_phase) {
    if (bank.p != ratio.p) {
        fail(ErrorCode::mismatched_prototype,
             fmt::format("bank interpolation factor {} differs from ratio p={}", bank.p, ratio.p));
    }
    require(!bank.rows.empty(), ErrorCode::invalid_argument, "Farrow bank has no rows");
    const auto len = static_cast<std::int64_t>(x.size());
    const std::int64_t out_len = len * ratio.p * ratio.q_den / ratio.q_num;
    const auto rows = static_cast<std::int64_t>(bank.rows.size());

    dsp::Samples y(static_cast<std::size_t>(std::max<std::int64_t>(out_len, 0)));
    StrideAccumulator acc(ratio, start_phase);
    for (std::int64_t m = 0; m < out_len; ++m, acc.advance()) {
        const std::int64_t base = acc.base();
        const double mu = acc.mu();
        dsp::Complex sum{0.0, 0.0};
        for (std::int64_t r = 0; r < rows; ++r) {
            const std::int64_t idx = base - r;
            if (idx < 0) {
                break;
            }
            if (idx < len) {
                sum += bank.evaluate(static_cast<std::size_t>(r), mu) * x[static_cast<std::size_t>(idx)];
            }
        }
        y[static_cast<std::size_t>(m)] = sum;
    }
    return y;
}

dsp::ComplexSignal farrow_resample(const dsp::ComplexSignal& x, const RationalRatio& ratio, const FarrowBank& bank) {
    return dsp::ComplexSignal(farrow_resample(x.samples(), ratio, bank),
                              x.sample_period() * ratio.q() / static_cast<double>(ratio.p));
}

double multiplications_per_sample(std::int64_t L, std::int64_t p, std::int64_t alpha, std::int64_t N,
                                  std::int64_t N_tilde) {
    require(L >= 1 && p >= 1 && alpha >= 0 && N >= 1, ErrorCode::invalid_argument,
            "cost model needs L, p, N >= 1 and alpha >= 0");
    require(numerology::is_power_of_two(N_tilde), ErrorCode::not_power_of_two,
            fmt::format("N_tilde={} is not a power of two", N_tilde));
    const auto rows = static_cast<double>((L + p - 1) / p);
    const double fft = static_cast<double>(N_tilde) / (2.0 * static_cast<double>(N)) *
                       std::log2(static_cast<double>(N_tilde));
    return static_cast<double>(alpha + 1) * rows + 2.0 + fft;
}

std::int64_t direct_idft_cost(std::int64_t N) {
    require(N >= 1, ErrorCode::invalid_argument, "N must be >= 1");
    return N;
}

std::string serialize(const FarrowBank& bank) {
    std::string out = "farrow_bank 1\n";
    out += fmt::format("p {}\nalpha {}\nprototype_length {}\n", bank.p, bank.alpha, bank.prototype_length);
    out += fmt::format("group_delay {}\nfit_residual {}\nrows {}\n", io::format_exact(bank.group_delay),
                       io::format_exact(bank.fit_residual), bank.rows.size());
    for (const auto& row : bank.rows) {
        out += "row";
        for (const double c : row) {
            out += ' ';
            out += io::format_exact(c);
        }
        out += '\n';
    }
    return out;
}

FarrowBank deserialize_bank(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string key;
    require(static_cast<bool>(in >> key) && key == "farrow_bank", ErrorCode::parse, "not a Farrow bank file");
    int version = 0;
    in >> version;
    require(version == 1, ErrorCode::parse, "unsupported Farrow bank version");

    FarrowBank bank;
    std::size_t row_count = 0;
    auto expect = [&in](const char* name) {
        std::string k;
        std::string v;
        require(static_cast<bool>(in >> k >> v) && k == name, ErrorCode::parse,
                fmt::format("Farrow bank: expected '{}'", name));
        return v;
    };
    bank.p = std::stoll(expect("p"));
    bank.alpha = std::stoll(expect("alpha"));
    bank.prototype_length = std::stoll(expect("prototype_length"));
    bank.group_delay = io::parse_quantity(expect("group_delay"));
    bank.fit_residual = io::parse_quantity(expect("fit_residual"));
    row_count = std::stoull(expect("rows"));
    require(bank.p >= 1 && bank.alpha >= 0, ErrorCode::parse, "Farrow bank: bad p or alpha");

    for (std::size_t r = 0; r < row_count; ++r) {
        std::string tag;
        require(static_cast<bool>(in >> tag) && tag == "row", ErrorCode::parse, "Farrow bank: expected 'row'");
        std::vector<double> coeffs(static_cast<std::size_t>(bank.alpha + 1));
        for (auto& c : coeffs) {
            std::string v;
            require(static_cast<bool>(in >> v), ErrorCode::parse, "Farrow bank: truncated row");
            c = io::parse_quantity(v);
        }
        bank.rows.push_back(std::move(coeffs));
    }
    return bank;
}

} // namespace acp::resampler
