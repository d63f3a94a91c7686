/* SPDX-License-Identifier: Apache-2.0 */
/* Copyright 2026 The adaptive-cp authors */

/*
 * C interface to the adaptive-CP link simulation library.
 *
 * Conventions:
 *   - Every fallible call returns acp_status; ACP_OK is 0. On failure the
 *     thread-local message from acp_last_error() explains the cause.
 *   - Objects are opaque handles created by acp_*_create / producing calls and
 *     released with the matching acp_*_destroy (NULL is accepted).
 *   - Complex samples cross the boundary as interleaved doubles (re, im).
 *   - Durations are seconds, rates hertz, counts int64_t.
 *   - Handles are immutable after creation and may be shared between threads.
 */

#ifndef ACP_ACP_H
#define ACP_ACP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(ACP_BUILDING_LIBRARY)
#define ACP_API __declspec(dllexport)
#else
#define ACP_API __declspec(dllimport)
#endif
#else
#define ACP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum acp_status {
    ACP_OK = 0,
    ACP_ERR_INVALID_ARGUMENT = 1,
    ACP_ERR_CP_EXCEEDS_SYMBOL = 2,
    ACP_ERR_BLOCK_TOO_LARGE = 3,
    ACP_ERR_NO_FEASIBLE_CLOCK = 4,
    ACP_ERR_EMPTY_GROUP = 5,
    ACP_ERR_OUT_OF_RANGE = 6,
    ACP_ERR_NOT_POWER_OF_TWO = 7,
    ACP_ERR_LENGTH_MISMATCH = 8,
    ACP_ERR_SHRINK = 9,
    ACP_ERR_ALIAS = 10,
    ACP_ERR_ZERO_POWER = 11,
    ACP_ERR_LENGTH_TOO_SHORT = 12,
    ACP_ERR_INFEASIBLE_FILTER = 13,
    ACP_ERR_MISMATCHED_PROTOTYPE = 14,
    ACP_ERR_RANK_DEFICIENT = 15,
    ACP_ERR_CONFIG_MISMATCH = 16,
    ACP_ERR_ZERO_CHANNEL_BIN = 17,
    ACP_ERR_OVERLAPPING_SUBCARRIERS = 18,
    ACP_ERR_IO = 19,
    ACP_ERR_PARSE = 20,
    ACP_ERR_BUFFER_TOO_SMALL = 21, /* caller buffer shorter than the result */
    ACP_ERR_INTERNAL = 99          /* unexpected failure inside the library */
} acp_status;

/* Message of the last failure on the calling thread ("" if none). */
ACP_API const char* acp_last_error(void);
/* Static name of a status code, e.g. "no feasible clock". */
ACP_API const char* acp_status_string(acp_status status);
ACP_API const char* acp_version(void);

/* Parses "80us", "32MHz", "-3dB", "1.5e-6" into SI base units. */
ACP_API acp_status acp_parse_quantity(const char* text, double* out);

/* ---- numerology ------------------------------------------------------- */

typedef struct acp_plan {
    double T;
    double T_c;
    double T_d;
    double T_s;
    int64_t N;
    int64_t M;
    int64_t K;
    double delta_f;
    double B;
} acp_plan;

typedef struct acp_clocked_plan {
    acp_plan base;
    int64_t N_tilde;
    double Ts_tilde;
    double Fs_tilde;
    int64_t K_tilde;
    double B_tilde;
    double symbol_time_residual;
} acp_clocked_plan;

typedef struct acp_grid_entry {
    int64_t n;
    double T_c;
    double overhead;
} acp_grid_entry;

ACP_API acp_status acp_plan_from_delay_spread(double T, double B, double tau, double cp_multiple, int64_t M,
                                              acp_plan* out);
ACP_API acp_status acp_plan_from_cp(double T, double B, double T_c, int64_t M, acp_plan* out);
ACP_API acp_status acp_overhead_fixed_data_portion(double T_d, double tau, double cp_multiple, double* out);
/* Writes up to `capacity` entries; `*count` receives the full number available. */
ACP_API acp_status acp_enumerate_fixed_grid_cp(double T_subframe, double T_d, acp_grid_entry* entries,
                                               size_t capacity, size_t* count);
/* M = 0 selects M = N. */
ACP_API acp_status acp_plan_from_clock_rates(double T, double T_s, int64_t N_tilde, const double* clock_periods,
                                             size_t clock_count, double tau, double cp_multiple, int64_t M,
                                             acp_clocked_plan* out);
/* Max of cp_multiples[i] * taus[i]. */
ACP_API acp_status acp_common_cp_for_group(const double* taus, const double* cp_multiples, size_t count,
                                           double* out);
/* group_of[i] receives the index of user i's bin in bin_edges (its common CP is bin_edges[group_of[i]]). */
ACP_API acp_status acp_group_users_by_cp(const double* taus, const double* cp_multiples, size_t count,
                                         const double* bin_edges, size_t edge_count, size_t* group_of);

/* ---- tables (CSV results) --------------------------------------------- */

typedef struct acp_table acp_table;

ACP_API void acp_table_destroy(acp_table* table);
ACP_API size_t acp_table_rows(const acp_table* table);
ACP_API size_t acp_table_columns(const acp_table* table);
/* Copies the CSV text (NUL-terminated) when it fits; `*needed` receives its size including the NUL. */
ACP_API acp_status acp_table_csv(const acp_table* table, char* buffer, size_t capacity, size_t* needed);
ACP_API acp_status acp_table_write(const acp_table* table, const char* path);
/* Cell text by row and column name; the pointer stays valid while the table lives. */
ACP_API acp_status acp_table_cell(const acp_table* table, size_t row, const char* column, const char** out);

/* One-row tables of plan fields, named exactly as the plan members. */
ACP_API acp_status acp_plan_table(const acp_plan* plan, acp_table** out);
ACP_API acp_status acp_clocked_plan_table(const acp_clocked_plan* plan, acp_table** out);
ACP_API acp_status acp_lte_grid_table(double T_subframe, double T_d, acp_table** out);

/* ---- signals and spectra ---------------------------------------------- */

typedef struct acp_signal acp_signal;
typedef struct acp_spectrum acp_spectrum;

ACP_API acp_status acp_signal_create(const double* interleaved, size_t length, double sample_period,
                                     acp_signal** out);
ACP_API void acp_signal_destroy(acp_signal* signal);
ACP_API size_t acp_signal_length(const acp_signal* signal);
ACP_API double acp_signal_period(const acp_signal* signal);
/* Copies 2 * length doubles; `capacity` counts doubles. */
ACP_API acp_status acp_signal_read(const acp_signal* signal, double* interleaved, size_t capacity);
ACP_API acp_status acp_signal_write_csv(const acp_signal* signal, const char* path);
ACP_API acp_status acp_signal_write_binary(const acp_signal* signal, const char* path);
ACP_API acp_status acp_signal_load_binary(const char* path, acp_signal** out);

ACP_API acp_status acp_spectrum_create(const double* interleaved, size_t length, acp_spectrum** out);
ACP_API void acp_spectrum_destroy(acp_spectrum* spectrum);
ACP_API size_t acp_spectrum_length(const acp_spectrum* spectrum);
ACP_API acp_status acp_spectrum_read(const acp_spectrum* spectrum, double* interleaved, size_t capacity);

/* Unscaled transforms: idft(dft(x)) == N * x. */
ACP_API acp_status acp_dft(const acp_signal* x, acp_spectrum** out);
ACP_API acp_status acp_idft(const acp_spectrum* X, double sample_period, acp_signal** out);
ACP_API acp_status acp_fft_pow2(const acp_signal* x, acp_spectrum** out);
ACP_API acp_status acp_ifft_pow2(const acp_spectrum* X, double sample_period, acp_signal** out);
ACP_API acp_status acp_circular_convolve(const acp_signal* h, const acp_signal* d, acp_signal** out);
ACP_API acp_status acp_zero_pad_spectrum(const acp_spectrum* D, size_t N_tilde, acp_spectrum** out);
/* Multiplies sample n by exp(direction * j * pi * n * ratio). */
ACP_API acp_status acp_half_band_shift(const acp_signal* x, double ratio, int direction, acp_signal** out);
ACP_API acp_status acp_ideal_resample(const acp_signal* x, size_t out_length, acp_signal** out);
/* Max |a - ref| / max |ref| over equal-length signals. */
ACP_API acp_status acp_max_relative_error(const acp_signal* a, const acp_signal* ref, double* out);

/* ---- channel ---------------------------------------------------------- */

typedef struct acp_channel acp_channel;

/* delays in samples (strictly increasing), gains interleaved. */
ACP_API acp_status acp_channel_create(const int64_t* delays, const double* gains, size_t tap_count, uint64_t seed,
                                      acp_channel** out);
/* "mmw73-min", "mmw73-avg", "mmw73-max" discretized at sample_period. */
ACP_API acp_status acp_channel_preset(const char* name, double sample_period, acp_channel** out);
/* Profile file: "seed <n>" and "tap <delay_ns> <re> <im>" lines. */
ACP_API acp_status acp_channel_load(const char* path, double sample_period, acp_channel** out);
/* Rayleigh taps on 0..span with exponential power decay, unit total power. */
ACP_API acp_status acp_channel_random(int64_t span, double decay_samples, uint64_t seed, uint64_t stream,
                                      acp_channel** out);
ACP_API void acp_channel_destroy(acp_channel* channel);
ACP_API int64_t acp_channel_max_delay(const acp_channel* channel);
/* snr_db is ignored when has_snr is 0. */
ACP_API acp_status acp_apply_channel(const acp_signal* x, const acp_channel* channel, int has_snr, double snr_db,
                                     uint64_t trial, acp_signal** out);
ACP_API acp_status acp_cir_as_signal(const acp_channel* channel, size_t length, double sample_period,
                                     acp_signal** out);
ACP_API acp_status acp_rms_delay_spread(const double* delays, const double* powers, size_t count, double* out);

/* ---- resampler -------------------------------------------------------- */

typedef struct acp_prototype acp_prototype;
typedef struct acp_farrow_bank acp_farrow_bank;

typedef struct acp_farrow_info {
    int64_t p;
    int64_t alpha;
    int64_t prototype_length;
    int64_t rows;
    double group_delay;
    double fit_residual;
} acp_farrow_info;

ACP_API acp_status acp_prototype_design(int64_t L, int64_t p, double stopband_atten_db, acp_prototype** out);
ACP_API void acp_prototype_destroy(acp_prototype* proto);
ACP_API size_t acp_prototype_length(const acp_prototype* proto);
ACP_API acp_status acp_prototype_taps(const acp_prototype* proto, double* taps, size_t capacity);
ACP_API acp_status acp_polyphase_resample(const acp_signal* x, int64_t p, int64_t q, const acp_prototype* proto,
                                          acp_signal** out);
ACP_API acp_status acp_farrow_fit(const acp_prototype* proto, int64_t alpha, acp_farrow_bank** out);
ACP_API void acp_farrow_bank_destroy(acp_farrow_bank* bank);
ACP_API acp_status acp_farrow_bank_info(const acp_farrow_bank* bank, acp_farrow_info* out);
ACP_API acp_status acp_farrow_bank_save(const acp_farrow_bank* bank, const char* path);
ACP_API acp_status acp_farrow_bank_load(const char* path, acp_farrow_bank** out);
/* Stride q = q_num / q_den high-rate samples per output. */
ACP_API acp_status acp_farrow_resample(const acp_signal* x, int64_t q_num, int64_t q_den,
                                       const acp_farrow_bank* bank, acp_signal** out);
ACP_API acp_status acp_multiplications_per_sample(int64_t L, int64_t p, int64_t alpha, int64_t N, int64_t N_tilde,
                                                  double* out);
ACP_API acp_status acp_direct_idft_cost(int64_t N, int64_t* out);

/* ---- transceiver ------------------------------------------------------ */

typedef enum acp_waveform { ACP_WAVEFORM_DFTS_OFDM = 0, ACP_WAVEFORM_OFDM = 1 } acp_waveform;
typedef enum acp_backend { ACP_BACKEND_DIRECT = 0, ACP_BACKEND_CLOCK_CHANGE = 1, ACP_BACKEND_FARROW = 2 } acp_backend;
typedef enum acp_map_mode { ACP_MAP_LOCALIZED = 0, ACP_MAP_DISTRIBUTED = 1 } acp_map_mode;
typedef enum acp_equalizer { ACP_EQ_ZERO_FORCING = 0, ACP_EQ_MMSE = 1 } acp_equalizer;
typedef enum acp_modulation { ACP_MOD_QPSK = 0, ACP_MOD_QAM16 = 1 } acp_modulation;

typedef struct acp_link_config {
    acp_waveform waveform;
    acp_backend backend;
    acp_plan plan;
    const acp_clocked_plan* clocked; /* clock-change backend only, else NULL */
    acp_map_mode map_mode;
    int64_t map_offset;
    int64_t map_stride;              /* distributed only */
    const acp_farrow_bank* farrow;   /* farrow backend only, else NULL */
    int64_t farrow_N_tilde;          /* farrow backend only */
    acp_equalizer equalizer;
    double noise_variance;           /* MMSE only */
} acp_link_config;

typedef struct acp_link acp_link;

typedef struct acp_link_metrics {
    double evm_db;
    double ber;
    double rel_mse_db;
    double overhead;
} acp_link_metrics;

/* Validates and copies the configuration (the Farrow bank is shared, not copied). */
ACP_API acp_status acp_link_create(const acp_link_config* config, acp_link** out);
ACP_API void acp_link_destroy(acp_link* link);
ACP_API int64_t acp_link_cp_samples(const acp_link* link);
ACP_API int64_t acp_link_data_samples(const acp_link* link);
/* `u` holds M interleaved symbols. */
ACP_API acp_status acp_tx_chain(const acp_link* link, const double* u, size_t M, acp_signal** out);
/* Writes M interleaved symbols to u_hat (capacity counts doubles). */
ACP_API acp_status acp_rx_chain(const acp_link* link, const acp_signal* y, const acp_signal* h, double* u_hat,
                                size_t capacity);
/* x_ref / x_test may be NULL; then rel_mse_db is 0. */
ACP_API acp_status acp_measure(const double* u, const double* u_hat, size_t count, acp_modulation modulation,
                               const acp_signal* x_ref, const acp_signal* x_test, acp_link_metrics* out);
/* Random unit-energy constellation block drawn from (seed, stream). */
ACP_API acp_status acp_random_symbols(acp_modulation modulation, size_t count, uint64_t seed, uint64_t stream,
                                      double* interleaved);

/* ---- experiments ------------------------------------------------------ */

typedef struct acp_sweep_config {
    const double* taus;
    size_t tau_count;
    double T;
    double B;
    double cp_multiple;
    int64_t M;
    int has_snr;
    double snr_db;
    int64_t trials;
    uint64_t seed;
    int has_fixed_Td;
    double fixed_Td;
    acp_waveform waveform;
    acp_modulation modulation;
} acp_sweep_config;

ACP_API acp_status acp_run_sweep(const acp_sweep_config* config, acp_table** out);

typedef struct acp_two_user_config {
    double T;
    double B;
    double cp_user1;
    double cp_user2;
    int64_t M1;
    int64_t offset1;
    int64_t M2;
    int64_t offset2;
    const acp_channel* channel1; /* NULL: default random channel spanning the user-2 CP */
    const acp_channel* channel2; /* NULL: default random channel spanning 30 samples */
    int64_t initial_offset;
    int64_t symbols;
    int has_snr;
    double snr_db;
    int user1_active;
    uint64_t seed;
} acp_two_user_config;

typedef struct acp_two_user_result {
    double evm_user2_mismatched;
    double evm_user2_common;
    double common_cp;
} acp_two_user_result;

/* Fills `config` with the default scenario (T = 10 us, B = 32 MHz, CPs 0.5 us / 2 us). */
ACP_API void acp_two_user_defaults(acp_two_user_config* config);
/* `table` may be NULL. */
ACP_API acp_status acp_run_two_user(const acp_two_user_config* config, int64_t trials, acp_two_user_result* result,
                                    acp_table** table);

ACP_API acp_status acp_run_theorem1(int64_t pairs, int64_t max_N_tilde, uint64_t seed, double* max_rel_error,
                                    acp_table** table);

typedef struct acp_farrow_bench_config {
    int64_t N;
    int64_t N_tilde;
    int64_t L;
    int64_t p;
    int64_t alpha;
    double stopband_atten_db;
    int64_t compare_samples;
    uint64_t seed;
} acp_farrow_bench_config;

typedef struct acp_farrow_bench_result {
    double rel_mse_db;
    double rel_mse_all_db;
    double mults_farrow;
    int64_t mults_direct;
    double published_mults;
    double fit_residual;
} acp_farrow_bench_result;

/* Fills `config` with N = 1543, N_tilde = 2048, L = 231, p = 9, alpha = 4, 60 dB, 100 samples. */
ACP_API void acp_farrow_bench_defaults(acp_farrow_bench_config* config);
/* `summary` and `samples` may be NULL. */
ACP_API acp_status acp_run_farrow_bench(const acp_farrow_bench_config* config, acp_farrow_bench_result* result,
                                        acp_table** summary, acp_table** samples);

#ifdef __cplusplus
}
#endif

#endif /* ACP_ACP_H */
