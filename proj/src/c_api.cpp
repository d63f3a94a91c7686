// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#include "acp/acp.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "acp/channel.hpp"
#include "acp/dsp.hpp"
#include "acp/error.hpp"
#include "acp/experiments.hpp"
#include "acp/io.hpp"
#include "acp/numerology.hpp"
#include "acp/resampler.hpp"
#include "acp/scenario.hpp"
#include "acp/transceiver.hpp"

struct acp_table {
    acp::io::Table table;
};
struct acp_signal {
    acp::dsp::ComplexSignal signal;
};
struct acp_spectrum {
    acp::dsp::SpectrumVector spectrum;
};
struct acp_channel {
    acp::channel::ChannelModel model;
};
struct acp_prototype {
    acp::resampler::PrototypeFilter proto;
};
struct acp_farrow_bank {
    std::shared_ptr<const acp::resampler::FarrowBank> bank;
};
struct acp_link {
    acp::transceiver::TxConfig config;
};

namespace {

using namespace acp;
using dsp::Complex;
using dsp::Samples;

thread_local std::string last_error;

// Caller-supplied output buffer is too short; only the C layer raises it.
struct BufferTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class F>
acp_status guard(F&& body) noexcept {
    try {
        body();
        last_error.clear();
        return ACP_OK;
    } catch (const BufferTooSmall& e) {
        last_error = e.what();
        return ACP_ERR_BUFFER_TOO_SMALL;
    } catch (const Error& e) {
        last_error = e.what();
        return static_cast<acp_status>(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return ACP_ERR_INTERNAL;
    } catch (const std::invalid_argument& e) {
        // only number conversions in the parsers throw this
        last_error = std::string("malformed number: ") + e.what();
        return ACP_ERR_PARSE;
    } catch (const std::exception& e) {
        last_error = e.what();
        return ACP_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown failure";
        return ACP_ERR_INTERNAL;
    }
}

void need(const void* ptr, const char* name) {
    require(ptr != nullptr, ErrorCode::invalid_argument, std::string(name) + " is NULL");
}

template <class T, class... Args>
void emit(T** out, Args&&... args) {
    need(out, "output handle");
    *out = new T{std::forward<Args>(args)...};
}

Samples from_interleaved(const double* data, std::size_t count) {
    need(data, "sample buffer");
    Samples s(count);
    for (std::size_t i = 0; i < count; ++i) {
        s[i] = {data[2 * i], data[2 * i + 1]};
    }
    return s;
}

void to_interleaved(std::span<const Complex> s, double* out, std::size_t capacity) {
    need(out, "output buffer");
    if (capacity < 2 * s.size()) {
        throw BufferTooSmall("buffer holds " + std::to_string(capacity) + " doubles, need " +
                             std::to_string(2 * s.size()));
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        out[2 * i] = s[i].real();
        out[2 * i + 1] = s[i].imag();
    }
}

acp_plan to_c(const numerology::NumerologyPlan& p) {
    return {p.T, p.T_c, p.T_d, p.T_s, p.N, p.M, p.K, p.delta_f, p.B};
}

numerology::NumerologyPlan from_c(const acp_plan& p) {
    numerology::NumerologyPlan out;
    out.T = p.T;
    out.T_c = p.T_c;
    out.T_d = p.T_d;
    out.T_s = p.T_s;
    out.N = p.N;
    out.M = p.M;
    out.K = p.K;
    out.delta_f = p.delta_f;
    out.B = p.B;
    return out;
}

acp_clocked_plan to_c(const numerology::ClockedPlan& p) {
    return {to_c(p.base), p.N_tilde, p.Ts_tilde, p.Fs_tilde, p.K_tilde, p.B_tilde, p.symbol_time_residual};
}

numerology::ClockedPlan from_c(const acp_clocked_plan& p) {
    numerology::ClockedPlan out;
    out.base = from_c(p.base);
    out.N_tilde = p.N_tilde;
    out.Ts_tilde = p.Ts_tilde;
    out.Fs_tilde = p.Fs_tilde;
    out.K_tilde = p.K_tilde;
    out.B_tilde = p.B_tilde;
    out.symbol_time_residual = p.symbol_time_residual;
    return out;
}

io::Table record_table(const io::KeyValueRecord& record) {
    std::vector<std::string> columns;
    std::vector<std::string> row;
    for (const auto& [k, v] : record.entries()) {
        columns.push_back(k);
        row.push_back(v);
    }
    io::Table t(std::move(columns));
    t.add_row(std::move(row));
    return t;
}

std::vector<numerology::UserDelayProfile> users_from(const double* taus, const double* mults, std::size_t count) {
    require(count == 0 || (taus != nullptr && mults != nullptr), ErrorCode::invalid_argument,
            "user arrays are NULL");
    std::vector<numerology::UserDelayProfile> users;
    for (std::size_t i = 0; i < count; ++i) {
        users.push_back({std::to_string(i), taus[i], mults[i]});
    }
    return users;
}

transceiver::Modulation modulation_from(acp_modulation m) {
    switch (m) {
    case ACP_MOD_QPSK:
        return transceiver::Modulation::qpsk;
    case ACP_MOD_QAM16:
        return transceiver::Modulation::qam16;
    }
    fail(ErrorCode::invalid_argument, "unknown modulation");
}

transceiver::Waveform waveform_from(acp_waveform w) {
    switch (w) {
    case ACP_WAVEFORM_DFTS_OFDM:
        return transceiver::Waveform::dfts_ofdm;
    case ACP_WAVEFORM_OFDM:
        return transceiver::Waveform::ofdm;
    }
    fail(ErrorCode::invalid_argument, "unknown waveform");
}

} // namespace

extern "C" {

const char* acp_last_error(void) { return last_error.c_str(); }

const char* acp_status_string(acp_status status) {
    switch (status) {
    case ACP_OK:
        return "ok";
    case ACP_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case ACP_ERR_CP_EXCEEDS_SYMBOL:
        return "CP exceeds symbol";
    case ACP_ERR_BLOCK_TOO_LARGE:
        return "block too large";
    case ACP_ERR_NO_FEASIBLE_CLOCK:
        return "no feasible clock";
    case ACP_ERR_EMPTY_GROUP:
        return "empty group";
    case ACP_ERR_OUT_OF_RANGE:
        return "out of range";
    case ACP_ERR_NOT_POWER_OF_TWO:
        return "not a power of two";
    case ACP_ERR_LENGTH_MISMATCH:
        return "length mismatch";
    case ACP_ERR_SHRINK:
        return "shrink";
    case ACP_ERR_ALIAS:
        return "alias";
    case ACP_ERR_ZERO_POWER:
        return "zero power";
    case ACP_ERR_LENGTH_TOO_SHORT:
        return "length too short";
    case ACP_ERR_INFEASIBLE_FILTER:
        return "infeasible filter";
    case ACP_ERR_MISMATCHED_PROTOTYPE:
        return "mismatched prototype";
    case ACP_ERR_RANK_DEFICIENT:
        return "rank deficient";
    case ACP_ERR_CONFIG_MISMATCH:
        return "config mismatch";
    case ACP_ERR_ZERO_CHANNEL_BIN:
        return "zero channel bin";
    case ACP_ERR_OVERLAPPING_SUBCARRIERS:
        return "overlapping subcarriers";
    case ACP_ERR_IO:
        return "I/O error";
    case ACP_ERR_PARSE:
        return "parse error";
    case ACP_ERR_BUFFER_TOO_SMALL:
        return "buffer too small";
    case ACP_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char* acp_version(void) { return "0.1.0"; }

acp_status acp_parse_quantity(const char* text, double* out) {
    return guard([&] {
        need(text, "text");
        need(out, "out");
        *out = io::parse_quantity(text);
    });
}

// ---- numerology

acp_status acp_plan_from_delay_spread(double T, double B, double tau, double cp_multiple, int64_t M, acp_plan* out) {
    return guard([&] {
        need(out, "out");
        *out = to_c(numerology::plan_from_delay_spread(T, B, tau, cp_multiple, M));
    });
}

acp_status acp_plan_from_cp(double T, double B, double T_c, int64_t M, acp_plan* out) {
    return guard([&] {
        need(out, "out");
        *out = to_c(numerology::plan_from_cp(T, B, T_c, M));
    });
}

acp_status acp_overhead_fixed_data_portion(double T_d, double tau, double cp_multiple, double* out) {
    return guard([&] {
        need(out, "out");
        *out = numerology::overhead_fixed_data_portion(T_d, tau, cp_multiple);
    });
}

acp_status acp_enumerate_fixed_grid_cp(double T_subframe, double T_d, acp_grid_entry* entries, size_t capacity,
                                       size_t* count) {
    return guard([&] {
        need(count, "count");
        const auto grid = numerology::enumerate_fixed_grid_cp(T_subframe, T_d);
        *count = grid.size();
        require(capacity == 0 || entries != nullptr, ErrorCode::invalid_argument, "entries is NULL");
        for (std::size_t i = 0; i < std::min(capacity, grid.size()); ++i) {
            entries[i] = {grid[i].n, grid[i].T_c, grid[i].overhead};
        }
    });
}

acp_status acp_plan_from_clock_rates(double T, double T_s, int64_t N_tilde, const double* clock_periods,
                                     size_t clock_count, double tau, double cp_multiple, int64_t M,
                                     acp_clocked_plan* out) {
    return guard([&] {
        need(out, "out");
        require(clock_count == 0 || clock_periods != nullptr, ErrorCode::invalid_argument, "clock_periods is NULL");
        require(clock_count > 0, ErrorCode::invalid_argument, "clock period list is empty");
        *out = to_c(numerology::plan_from_clock_rates(T, T_s, N_tilde, std::span(clock_periods, clock_count), tau,
                                                      cp_multiple, M));
    });
}

acp_status acp_common_cp_for_group(const double* taus, const double* cp_multiples, size_t count, double* out) {
    return guard([&] {
        need(out, "out");
        *out = numerology::common_cp_for_group(users_from(taus, cp_multiples, count));
    });
}

acp_status acp_group_users_by_cp(const double* taus, const double* cp_multiples, size_t count,
                                 const double* bin_edges, size_t edge_count, size_t* group_of) {
    return guard([&] {
        require(edge_count == 0 || bin_edges != nullptr, ErrorCode::invalid_argument, "bin_edges is NULL");
        require(count == 0 || group_of != nullptr, ErrorCode::invalid_argument, "group_of is NULL");
        const auto users = users_from(taus, cp_multiples, count);
        const auto groups = numerology::group_users_by_cp(users, std::span(bin_edges, edge_count));
        for (const auto& g : groups) {
            const auto edge = static_cast<std::size_t>(
                std::find(bin_edges, bin_edges + edge_count, g.T_c) - bin_edges);
            for (const auto& u : g.users) {
                group_of[std::stoull(u.user_id)] = edge;
            }
        }
    });
}

// ---- tables

void acp_table_destroy(acp_table* table) { delete table; }
size_t acp_table_rows(const acp_table* table) { return table ? table->table.rows().size() : 0; }
size_t acp_table_columns(const acp_table* table) { return table ? table->table.columns().size() : 0; }

acp_status acp_table_csv(const acp_table* table, char* buffer, size_t capacity, size_t* needed) {
    std::string csv;
    const acp_status s = guard([&] {
        need(table, "table");
        need(needed, "needed");
        csv = table->table.csv();
        *needed = csv.size() + 1;
    });
    if (s != ACP_OK) {
        return s;
    }
    if (buffer == nullptr || capacity < csv.size() + 1) {
        last_error = "CSV needs " + std::to_string(csv.size() + 1) + " bytes";
        return ACP_ERR_BUFFER_TOO_SMALL;
    }
    std::memcpy(buffer, csv.c_str(), csv.size() + 1);
    return ACP_OK;
}

acp_status acp_table_write(const acp_table* table, const char* path) {
    return guard([&] {
        need(table, "table");
        need(path, "path");
        io::write_text(path, table->table.csv());
    });
}

acp_status acp_table_cell(const acp_table* table, size_t row, const char* column, const char** out) {
    return guard([&] {
        need(table, "table");
        need(column, "column");
        need(out, "out");
        require(row < table->table.rows().size(), ErrorCode::out_of_range, "row index out of range");
        *out = table->table.cell(row, column).c_str();
    });
}

acp_status acp_plan_table(const acp_plan* plan, acp_table** out) {
    return guard([&] {
        need(plan, "plan");
        emit(out, record_table(io::to_record(from_c(*plan))));
    });
}

acp_status acp_clocked_plan_table(const acp_clocked_plan* plan, acp_table** out) {
    return guard([&] {
        need(plan, "plan");
        emit(out, record_table(io::to_record(from_c(*plan))));
    });
}

acp_status acp_lte_grid_table(double T_subframe, double T_d, acp_table** out) {
    return guard([&] { emit(out, experiments::lte_grid_table(T_subframe, T_d)); });
}

// ---- signals and spectra

acp_status acp_signal_create(const double* interleaved, size_t length, double sample_period, acp_signal** out) {
    return guard([&] { emit(out, dsp::ComplexSignal(from_interleaved(interleaved, length), sample_period)); });
}

void acp_signal_destroy(acp_signal* signal) { delete signal; }
size_t acp_signal_length(const acp_signal* signal) { return signal ? signal->signal.size() : 0; }
double acp_signal_period(const acp_signal* signal) { return signal ? signal->signal.sample_period() : 0.0; }

acp_status acp_signal_read(const acp_signal* signal, double* interleaved, size_t capacity) {
    return guard([&] {
        need(signal, "signal");
        to_interleaved(signal->signal.samples(), interleaved, capacity);
    });
}

acp_status acp_signal_write_csv(const acp_signal* signal, const char* path) {
    return guard([&] {
        need(signal, "signal");
        need(path, "path");
        io::write_text(path, io::signal_csv(signal->signal));
    });
}

acp_status acp_signal_write_binary(const acp_signal* signal, const char* path) {
    return guard([&] {
        need(signal, "signal");
        need(path, "path");
        io::write_text(path, io::signal_binary(signal->signal));
    });
}

acp_status acp_signal_load_binary(const char* path, acp_signal** out) {
    return guard([&] {
        need(path, "path");
        emit(out, io::signal_from_binary(io::read_text(path)));
    });
}

acp_status acp_spectrum_create(const double* interleaved, size_t length, acp_spectrum** out) {
    return guard([&] { emit(out, dsp::SpectrumVector(from_interleaved(interleaved, length))); });
}

void acp_spectrum_destroy(acp_spectrum* spectrum) { delete spectrum; }
size_t acp_spectrum_length(const acp_spectrum* spectrum) { return spectrum ? spectrum->spectrum.size() : 0; }

acp_status acp_spectrum_read(const acp_spectrum* spectrum, double* interleaved, size_t capacity) {
    return guard([&] {
        need(spectrum, "spectrum");
        to_interleaved(spectrum->spectrum.bins(), interleaved, capacity);
    });
}

acp_status acp_dft(const acp_signal* x, acp_spectrum** out) {
    return guard([&] {
        need(x, "x");
        emit(out, dsp::dft(x->signal));
    });
}

acp_status acp_idft(const acp_spectrum* X, double sample_period, acp_signal** out) {
    return guard([&] {
        need(X, "X");
        emit(out, dsp::idft(X->spectrum, sample_period));
    });
}

acp_status acp_fft_pow2(const acp_signal* x, acp_spectrum** out) {
    return guard([&] {
        need(x, "x");
        emit(out, dsp::fft_pow2(x->signal));
    });
}

acp_status acp_ifft_pow2(const acp_spectrum* X, double sample_period, acp_signal** out) {
    return guard([&] {
        need(X, "X");
        emit(out, dsp::ifft_pow2(X->spectrum, sample_period));
    });
}

acp_status acp_circular_convolve(const acp_signal* h, const acp_signal* d, acp_signal** out) {
    return guard([&] {
        need(h, "h");
        need(d, "d");
        emit(out, dsp::circular_convolve(h->signal, d->signal));
    });
}

acp_status acp_zero_pad_spectrum(const acp_spectrum* D, size_t N_tilde, acp_spectrum** out) {
    return guard([&] {
        need(D, "D");
        emit(out, dsp::zero_pad_spectrum(D->spectrum, N_tilde));
    });
}

acp_status acp_half_band_shift(const acp_signal* x, double ratio, int direction, acp_signal** out) {
    return guard([&] {
        need(x, "x");
        emit(out, dsp::half_band_shift(x->signal, ratio, direction));
    });
}

acp_status acp_ideal_resample(const acp_signal* x, size_t out_length, acp_signal** out) {
    return guard([&] {
        need(x, "x");
        emit(out, dsp::ideal_resample(x->signal, out_length));
    });
}

acp_status acp_max_relative_error(const acp_signal* a, const acp_signal* ref, double* out) {
    return guard([&] {
        need(a, "a");
        need(ref, "ref");
        need(out, "out");
        *out = dsp::max_relative_error(a->signal.samples(), ref->signal.samples());
    });
}

// ---- channel

acp_status acp_channel_create(const int64_t* delays, const double* gains, size_t tap_count, uint64_t seed,
                              acp_channel** out) {
    return guard([&] {
        require(tap_count == 0 || delays != nullptr, ErrorCode::invalid_argument, "delays is NULL");
        const Samples g = from_interleaved(gains, tap_count);
        std::vector<channel::Tap> taps;
        for (std::size_t i = 0; i < tap_count; ++i) {
            taps.push_back({delays[i], g[i]});
        }
        emit(out, channel::ChannelModel(std::move(taps), seed));
    });
}

acp_status acp_channel_preset(const char* name, double sample_period, acp_channel** out) {
    return guard([&] {
        need(name, "name");
        emit(out, channel::preset_profile(name).discretize(sample_period));
    });
}

acp_status acp_channel_load(const char* path, double sample_period, acp_channel** out) {
    return guard([&] {
        need(path, "path");
        emit(out, channel::parse_profile(io::read_text(path)).discretize(sample_period));
    });
}

acp_status acp_channel_random(int64_t span, double decay_samples, uint64_t seed, uint64_t stream,
                              acp_channel** out) {
    return guard([&] { emit(out, channel::random_exponential(span, decay_samples, seed, stream)); });
}

void acp_channel_destroy(acp_channel* channel) { delete channel; }
int64_t acp_channel_max_delay(const acp_channel* channel) { return channel ? channel->model.max_delay() : -1; }

acp_status acp_apply_channel(const acp_signal* x, const acp_channel* channel, int has_snr, double snr_db,
                             uint64_t trial, acp_signal** out) {
    return guard([&] {
        need(x, "x");
        need(channel, "channel");
        const std::optional<double> snr = has_snr ? std::optional<double>(snr_db) : std::nullopt;
        emit(out, channel::apply_channel(x->signal, channel->model, snr, trial));
    });
}

acp_status acp_cir_as_signal(const acp_channel* channel, size_t length, double sample_period, acp_signal** out) {
    return guard([&] {
        need(channel, "channel");
        emit(out, channel::cir_as_signal(channel->model, length, sample_period));
    });
}

acp_status acp_rms_delay_spread(const double* delays, const double* powers, size_t count, double* out) {
    return guard([&] {
        need(out, "out");
        require(count == 0 || (delays != nullptr && powers != nullptr), ErrorCode::invalid_argument,
                "PDP arrays are NULL");
        std::vector<channel::PdpEntry> entries;
        for (std::size_t i = 0; i < count; ++i) {
            entries.push_back({delays[i], powers[i]});
        }
        *out = channel::rms_delay_spread(channel::PowerDelayProfile(std::move(entries)));
    });
}

// ---- resampler

acp_status acp_prototype_design(int64_t L, int64_t p, double stopband_atten_db, acp_prototype** out) {
    return guard([&] { emit(out, resampler::design_lowpass(L, p, stopband_atten_db)); });
}

void acp_prototype_destroy(acp_prototype* proto) { delete proto; }
size_t acp_prototype_length(const acp_prototype* proto) { return proto ? proto->proto.length() : 0; }

acp_status acp_prototype_taps(const acp_prototype* proto, double* taps, size_t capacity) {
    return guard([&] {
        need(proto, "proto");
        need(taps, "taps");
        if (capacity < proto->proto.length()) {
            throw BufferTooSmall("tap buffer too small");
        }
        std::copy(proto->proto.taps.begin(), proto->proto.taps.end(), taps);
    });
}

acp_status acp_polyphase_resample(const acp_signal* x, int64_t p, int64_t q, const acp_prototype* proto,
                                  acp_signal** out) {
    return guard([&] {
        need(x, "x");
        need(proto, "proto");
        emit(out, resampler::polyphase_resample(x->signal, p, q, proto->proto));
    });
}

acp_status acp_farrow_fit(const acp_prototype* proto, int64_t alpha, acp_farrow_bank** out) {
    return guard([&] {
        need(proto, "proto");
        emit(out, std::make_shared<const resampler::FarrowBank>(resampler::fit_farrow(proto->proto, alpha)));
    });
}

void acp_farrow_bank_destroy(acp_farrow_bank* bank) { delete bank; }

acp_status acp_farrow_bank_info(const acp_farrow_bank* bank, acp_farrow_info* out) {
    return guard([&] {
        need(bank, "bank");
        need(out, "out");
        const auto& b = *bank->bank;
        *out = {b.p, b.alpha, b.prototype_length, static_cast<int64_t>(b.row_count()), b.group_delay,
                b.fit_residual};
    });
}

acp_status acp_farrow_bank_save(const acp_farrow_bank* bank, const char* path) {
    return guard([&] {
        need(bank, "bank");
        need(path, "path");
        io::write_text(path, resampler::serialize(*bank->bank));
    });
}

acp_status acp_farrow_bank_load(const char* path, acp_farrow_bank** out) {
    return guard([&] {
        need(path, "path");
        emit(out, std::make_shared<const resampler::FarrowBank>(resampler::deserialize_bank(io::read_text(path))));
    });
}

acp_status acp_farrow_resample(const acp_signal* x, int64_t q_num, int64_t q_den, const acp_farrow_bank* bank,
                               acp_signal** out) {
    return guard([&] {
        need(x, "x");
        need(bank, "bank");
        const auto ratio = resampler::make_ratio(bank->bank->p, q_num, q_den);
        emit(out, resampler::farrow_resample(x->signal, ratio, *bank->bank));
    });
}

acp_status acp_multiplications_per_sample(int64_t L, int64_t p, int64_t alpha, int64_t N, int64_t N_tilde,
                                          double* out) {
    return guard([&] {
        need(out, "out");
        *out = resampler::multiplications_per_sample(L, p, alpha, N, N_tilde);
    });
}

acp_status acp_direct_idft_cost(int64_t N, int64_t* out) {
    return guard([&] {
        need(out, "out");
        *out = resampler::direct_idft_cost(N);
    });
}

// ---- transceiver

acp_status acp_link_create(const acp_link_config* config, acp_link** out) {
    return guard([&] {
        need(config, "config");
        using namespace transceiver;
        TxConfig cfg;
        cfg.waveform = waveform_from(config->waveform);
        switch (config->backend) {
        case ACP_BACKEND_DIRECT:
            cfg.backend = Backend::direct;
            break;
        case ACP_BACKEND_CLOCK_CHANGE:
            cfg.backend = Backend::clock_change;
            break;
        case ACP_BACKEND_FARROW:
            cfg.backend = Backend::farrow;
            break;
        default:
            fail(ErrorCode::invalid_argument, "unknown backend");
        }
        cfg.plan = from_c(config->plan);
        if (config->clocked != nullptr) {
            cfg.clocked = from_c(*config->clocked);
        }
        cfg.map = config->map_mode == ACP_MAP_DISTRIBUTED
                      ? SubcarrierMap::distributed(cfg.plan.N, cfg.plan.M, config->map_offset, config->map_stride)
                      : SubcarrierMap::localized(cfg.plan.N, cfg.plan.M, config->map_offset);
        if (config->farrow != nullptr) {
            cfg.farrow = FarrowSetup{config->farrow_N_tilde, config->farrow->bank};
        }
        cfg.equalizer = config->equalizer == ACP_EQ_MMSE ? Equalizer::mmse : Equalizer::zero_forcing;
        cfg.noise_variance = config->noise_variance;
        cfg.validate();
        emit(out, std::move(cfg));
    });
}

void acp_link_destroy(acp_link* link) { delete link; }
int64_t acp_link_cp_samples(const acp_link* link) { return link ? link->config.cp_samples() : -1; }
int64_t acp_link_data_samples(const acp_link* link) { return link ? link->config.data_samples() : -1; }

acp_status acp_tx_chain(const acp_link* link, const double* u, size_t M, acp_signal** out) {
    return guard([&] {
        need(link, "link");
        emit(out, transceiver::tx_chain(from_interleaved(u, M), link->config));
    });
}

acp_status acp_rx_chain(const acp_link* link, const acp_signal* y, const acp_signal* h, double* u_hat,
                        size_t capacity) {
    return guard([&] {
        need(link, "link");
        need(y, "y");
        need(h, "h");
        to_interleaved(transceiver::rx_chain(y->signal.samples(), link->config, h->signal.samples()), u_hat,
                       capacity);
    });
}

acp_status acp_measure(const double* u, const double* u_hat, size_t count, acp_modulation modulation,
                       const acp_signal* x_ref, const acp_signal* x_test, acp_link_metrics* out) {
    return guard([&] {
        need(out, "out");
        const Samples a = from_interleaved(u, count);
        const Samples b = from_interleaved(u_hat, count);
        const transceiver::Constellation c(modulation_from(modulation));
        transceiver::LinkMetrics m;
        if (x_ref != nullptr && x_test != nullptr) {
            m = transceiver::measure(a, b, c, x_ref->signal.samples(), x_test->signal.samples());
        } else {
            m = transceiver::measure(a, b, c);
        }
        *out = {m.evm_db, m.ber, m.rel_mse_db, m.overhead};
    });
}

acp_status acp_random_symbols(acp_modulation modulation, size_t count, uint64_t seed, uint64_t stream,
                              double* interleaved) {
    return guard([&] {
        channel::Rng rng(seed, stream);
        const transceiver::Constellation c(modulation_from(modulation));
        to_interleaved(c.random_block(count, rng), interleaved, 2 * count);
    });
}

// ---- experiments

acp_status acp_run_sweep(const acp_sweep_config* config, acp_table** out) {
    return guard([&] {
        need(config, "config");
        require(config->tau_count == 0 || config->taus != nullptr, ErrorCode::invalid_argument, "taus is NULL");
        scenario::SweepConfig cfg;
        cfg.taus.assign(config->taus, config->taus + config->tau_count);
        cfg.T = config->T;
        cfg.B = config->B;
        cfg.cp_multiple = config->cp_multiple;
        cfg.M = config->M;
        if (config->has_snr) {
            cfg.snr_db = config->snr_db;
        }
        cfg.trials = config->trials;
        cfg.seed = config->seed;
        if (config->has_fixed_Td) {
            cfg.fixed_Td = config->fixed_Td;
        }
        cfg.waveform = waveform_from(config->waveform);
        cfg.modulation = modulation_from(config->modulation);
        emit(out, scenario::run_single_user_sweep(cfg));
    });
}

void acp_two_user_defaults(acp_two_user_config* config) {
    if (config == nullptr) {
        return;
    }
    const scenario::TwoUserScenario d;
    *config = acp_two_user_config{};
    config->T = 10e-6;
    config->B = 32e6;
    config->cp_user1 = d.cp_user1;
    config->cp_user2 = d.cp_user2;
    config->M1 = 48;
    config->offset1 = 8;
    config->M2 = 48;
    config->offset2 = 120;
    config->symbols = d.symbols;
    config->user1_active = 1;
    config->seed = 1;
}

acp_status acp_run_two_user(const acp_two_user_config* config, int64_t trials, acp_two_user_result* result,
                            acp_table** table) {
    return guard([&] {
        need(config, "config");
        need(result, "result");
        using transceiver::SubcarrierMap;
        auto sc = scenario::TwoUserScenario::defaults(config->seed);
        sc.cp_user1 = config->cp_user1;
        sc.cp_user2 = config->cp_user2;
        sc.plan_common =
            numerology::plan_from_cp(config->T, config->B, config->cp_user2, std::max(config->M1, config->M2));
        sc.map1 = SubcarrierMap::localized(sc.plan_common.N, config->M1, config->offset1);
        sc.map2 = SubcarrierMap::localized(sc.plan_common.N, config->M2, config->offset2);
        if (config->channel1 != nullptr) {
            sc.channel1 = config->channel1->model;
        }
        if (config->channel2 != nullptr) {
            sc.channel2 = config->channel2->model;
        }
        sc.initial_offset = config->initial_offset;
        sc.symbols = config->symbols;
        if (config->has_snr) {
            sc.snr_db = config->snr_db;
        }
        sc.user1_active = config->user1_active != 0;
        const auto r = scenario::run_two_user(sc, trials);
        *result = {r.evm_user2_mismatched, r.evm_user2_common, r.common_cp};
        if (table != nullptr) {
            emit(table, scenario::two_user_table(sc, r));
        }
    });
}

acp_status acp_run_theorem1(int64_t pairs, int64_t max_N_tilde, uint64_t seed, double* max_rel_error,
                            acp_table** table) {
    return guard([&] {
        need(max_rel_error, "max_rel_error");
        auto r = experiments::run_theorem1({pairs, max_N_tilde, seed});
        *max_rel_error = r.max_rel_error;
        if (table != nullptr) {
            emit(table, std::move(r.table));
        }
    });
}

void acp_farrow_bench_defaults(acp_farrow_bench_config* config) {
    if (config == nullptr) {
        return;
    }
    const experiments::FarrowBenchConfig d;
    *config = {d.N, d.N_tilde, d.L, d.p, d.alpha, d.stopband_atten, d.compare_samples, d.seed};
}

acp_status acp_run_farrow_bench(const acp_farrow_bench_config* config, acp_farrow_bench_result* result,
                                acp_table** summary, acp_table** samples) {
    return guard([&] {
        need(config, "config");
        need(result, "result");
        experiments::FarrowBenchConfig cfg;
        cfg.N = config->N;
        cfg.N_tilde = config->N_tilde;
        cfg.L = config->L;
        cfg.p = config->p;
        cfg.alpha = config->alpha;
        cfg.stopband_atten = config->stopband_atten_db;
        cfg.compare_samples = config->compare_samples;
        cfg.seed = config->seed;
        auto r = experiments::run_farrow_bench(cfg);
        *result = {r.rel_mse_db, r.rel_mse_all_db, r.mults_farrow, r.mults_direct,
                   experiments::published_mults_per_sample, r.fit_residual};
        if (summary != nullptr) {
            emit(summary, std::move(r.summary));
        }
        if (samples != nullptr) {
            emit(samples, std::move(r.samples));
        }
    });
}

} // extern "C"
