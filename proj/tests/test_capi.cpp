// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

// Exercises the shared library through its C interface only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "acp/acp.h"
#include "oracles.hpp"

namespace {

std::vector<double> interleave(const oracle::Samples& x) {
    std::vector<double> out;
    for (const auto& v : x) {
        out.push_back(v.real());
        out.push_back(v.imag());
    }
    return out;
}

oracle::Samples deinterleave(const std::vector<double>& v) {
    oracle::Samples out;
    for (std::size_t i = 0; i + 1 < v.size(); i += 2) {
        out.emplace_back(v[i], v[i + 1]);
    }
    return out;
}

oracle::Samples read(const acp_signal* s) {
    std::vector<double> buf(2 * acp_signal_length(s));
    REQUIRE(acp_signal_read(s, buf.data(), buf.size()) == ACP_OK);
    return deinterleave(buf);
}

oracle::Samples read(const acp_spectrum* s) {
    std::vector<double> buf(2 * acp_spectrum_length(s));
    REQUIRE(acp_spectrum_read(s, buf.data(), buf.size()) == ACP_OK);
    return deinterleave(buf);
}

std::string csv(const acp_table* t) {
    std::size_t needed = 0;
    REQUIRE(acp_table_csv(t, nullptr, 0, &needed) == ACP_ERR_BUFFER_TOO_SMALL);
    std::string text(needed, '\0');
    REQUIRE(acp_table_csv(t, text.data(), text.size(), &needed) == ACP_OK);
    text.resize(needed - 1);
    return text;
}

} // namespace

TEST_CASE("status strings and quantities") {
    CHECK(std::strcmp(acp_status_string(ACP_OK), "ok") == 0);
    CHECK(std::strcmp(acp_status_string(ACP_ERR_NO_FEASIBLE_CLOCK), "no feasible clock") == 0);
    CHECK(std::strlen(acp_version()) > 0);
    double v = 0.0;
    CHECK(acp_parse_quantity("80us", &v) == ACP_OK);
    CHECK(v == doctest::Approx(80e-6));
    CHECK(acp_parse_quantity("80 furlongs", &v) == ACP_ERR_PARSE);
    CHECK(std::strlen(acp_last_error()) > 0);
    CHECK(acp_parse_quantity(nullptr, &v) == ACP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("numerology through the C API") {
    acp_plan plan{};
    REQUIRE(acp_plan_from_delay_spread(80e-6, 32e6, 16e-6 / 6.0, 6.0, 64, &plan) == ACP_OK);
    CHECK(plan.K == 512);
    CHECK(plan.N == 2048);

    double overhead = 0.0;
    REQUIRE(acp_overhead_fixed_data_portion(2e-6, 200.3e-9, 6.0, &overhead) == ACP_OK);
    CHECK(overhead == doctest::Approx(0.37535).epsilon(1e-4));

    std::size_t count = 0;
    acp_grid_entry entries[2];
    REQUIRE(acp_enumerate_fixed_grid_cp(500e-6, 66.7e-6, entries, 2, &count) == ACP_OK);
    CHECK(count == 7);
    CHECK(entries[0].n == 7);
    CHECK(entries[1].T_c == doctest::Approx(16.633e-6).epsilon(1e-4));

    const double periods[] = {30e-9, 31.25e-9};
    acp_clocked_plan cp{};
    REQUIRE(acp_plan_from_clock_rates(10e-6, 31.25e-9, 256, periods, 2, 100e-9, 6.0, 0, &cp) == ACP_OK);
    CHECK(cp.base.N == 256);
    CHECK(cp.base.M == 256);
    CHECK(acp_plan_from_clock_rates(10e-6, 31.25e-9, 256, periods, 1, 100e-9, 6.0, 0, &cp) ==
          ACP_ERR_NO_FEASIBLE_CLOCK);

    const double taus[] = {12.1e-9, 200.3e-9};
    const double mults[] = {6.0, 6.0};
    double common = 0.0;
    REQUIRE(acp_common_cp_for_group(taus, mults, 2, &common) == ACP_OK);
    CHECK(common == doctest::Approx(1.2018e-6));
    CHECK(acp_common_cp_for_group(taus, mults, 0, &common) == ACP_ERR_EMPTY_GROUP);
    const double edges[] = {0.5e-6, 2e-6};
    std::size_t group_of[2];
    REQUIRE(acp_group_users_by_cp(taus, mults, 2, edges, 2, group_of) == ACP_OK);
    CHECK(group_of[0] == 0);
    CHECK(group_of[1] == 1);
}

TEST_CASE("tables") {
    acp_plan plan{};
    REQUIRE(acp_plan_from_cp(10e-6, 32e6, 2e-6, 48, &plan) == ACP_OK);
    acp_table* t = nullptr;
    REQUIRE(acp_plan_table(&plan, &t) == ACP_OK);
    CHECK(acp_table_rows(t) == 1);
    const char* cell = nullptr;
    REQUIRE(acp_table_cell(t, 0, "N", &cell) == ACP_OK);
    CHECK(std::string(cell) == "256");
    CHECK(acp_table_cell(t, 1, "N", &cell) == ACP_ERR_OUT_OF_RANGE);
    CHECK(csv(t).rfind("T,T_c,T_d", 0) == 0);
    const auto path = std::filesystem::temp_directory_path() / "acp_capi_plan.csv";
    REQUIRE(acp_table_write(t, path.string().c_str()) == ACP_OK);
    CHECK(std::filesystem::file_size(path) == csv(t).size());
    std::filesystem::remove(path);
    acp_table_destroy(t);
}

TEST_CASE("transforms match the oracle") {
    std::mt19937_64 gen(51);
    const auto x = oracle::random_samples(64, gen);
    const auto xi = interleave(x);
    acp_signal* s = nullptr;
    REQUIRE(acp_signal_create(xi.data(), 64, 1e-6, &s) == ACP_OK);
    acp_spectrum* fast = nullptr;
    acp_spectrum* slow = nullptr;
    REQUIRE(acp_fft_pow2(s, &fast) == ACP_OK);
    REQUIRE(acp_dft(s, &slow) == ACP_OK);
    const auto ref = oracle::dft(x);
    CHECK(oracle::max_abs_diff(read(fast), ref) <= 1e-10 * oracle::max_abs(ref));
    CHECK(oracle::max_abs_diff(read(slow), ref) <= 1e-10 * oracle::max_abs(ref));

    acp_signal* back = nullptr;
    REQUIRE(acp_ifft_pow2(fast, 1e-6, &back) == ACP_OK);
    const auto b = read(back);
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(std::abs(b[i] - 64.0 * x[i]) <= 1e-10);
    }
    acp_spectrum* padded = nullptr;
    REQUIRE(acp_zero_pad_spectrum(fast, 128, &padded) == ACP_OK);
    CHECK(acp_spectrum_length(padded) == 128);
    acp_spectrum* bad = nullptr;
    CHECK(acp_zero_pad_spectrum(fast, 32, &bad) == ACP_ERR_SHRINK);

    acp_signal* seven = nullptr;
    acp_spectrum* none = nullptr;
    REQUIRE(acp_signal_create(xi.data(), 7, 1e-6, &seven) == ACP_OK);
    CHECK(acp_fft_pow2(seven, &none) == ACP_ERR_NOT_POWER_OF_TWO);
    CHECK(none == nullptr);

    acp_signal* conv = nullptr;
    REQUIRE(acp_circular_convolve(seven, s, &conv) == ACP_OK);
    const auto h = oracle::Samples(x.begin(), x.begin() + 7);
    CHECK(oracle::max_abs_diff(read(conv), oracle::circular(h, x)) <= 1e-12);

    double err = 1.0;
    REQUIRE(acp_max_relative_error(s, s, &err) == ACP_OK);
    CHECK(err == 0.0);

    for (auto* p : {s, back, seven, conv}) {
        acp_signal_destroy(p);
    }
    for (auto* p : {fast, slow, padded}) {
        acp_spectrum_destroy(p);
    }
}

TEST_CASE("binary signal files") {
    const std::vector<double> xi{1.0, 2.0, -3.0, 0.5};
    acp_signal* s = nullptr;
    REQUIRE(acp_signal_create(xi.data(), 2, 5e-9, &s) == ACP_OK);
    const auto path = std::filesystem::temp_directory_path() / "acp_capi_signal.bin";
    REQUIRE(acp_signal_write_binary(s, path.string().c_str()) == ACP_OK);
    acp_signal* back = nullptr;
    REQUIRE(acp_signal_load_binary(path.string().c_str(), &back) == ACP_OK);
    CHECK(acp_signal_period(back) == 5e-9);
    std::vector<double> got(4);
    REQUIRE(acp_signal_read(back, got.data(), got.size()) == ACP_OK);
    CHECK(got == xi);
    CHECK(acp_signal_read(back, got.data(), 3) == ACP_ERR_BUFFER_TOO_SMALL);
    std::filesystem::remove(path);
    acp_signal* missing = nullptr;
    CHECK(acp_signal_load_binary(path.string().c_str(), &missing) == ACP_ERR_IO);
    acp_signal_destroy(s);
    acp_signal_destroy(back);
}

TEST_CASE("resampler handles") {
    acp_prototype* proto = nullptr;
    REQUIRE(acp_prototype_design(231, 9, 60.0, &proto) == ACP_OK);
    CHECK(acp_prototype_length(proto) == 231);
    acp_farrow_bank* bank = nullptr;
    REQUIRE(acp_farrow_fit(proto, 4, &bank) == ACP_OK);
    acp_farrow_info info{};
    REQUIRE(acp_farrow_bank_info(bank, &info) == ACP_OK);
    CHECK(info.p == 9);
    CHECK(info.alpha == 4);
    CHECK(info.rows == 26);

    const auto path = std::filesystem::temp_directory_path() / "acp_capi_bank.txt";
    REQUIRE(acp_farrow_bank_save(bank, path.string().c_str()) == ACP_OK);
    acp_farrow_bank* loaded = nullptr;
    REQUIRE(acp_farrow_bank_load(path.string().c_str(), &loaded) == ACP_OK);
    std::filesystem::remove(path);

    std::vector<double> xi(2 * 2048, 0.0);
    xi[0] = 1.0;
    acp_signal* x = nullptr;
    REQUIRE(acp_signal_create(xi.data(), 2048, 1.0, &x) == ACP_OK);
    acp_signal* y = nullptr;
    REQUIRE(acp_farrow_resample(x, 9 * 2048, 1543, loaded, &y) == ACP_OK);
    CHECK(acp_signal_length(y) == 1543);

    double mults = 0.0;
    int64_t direct = 0;
    REQUIRE(acp_multiplications_per_sample(231, 9, 4, 1543, 2048, &mults) == ACP_OK);
    REQUIRE(acp_direct_idft_cost(1543, &direct) == ACP_OK);
    CHECK(mults == doctest::Approx(139.30).epsilon(1e-4));
    CHECK(direct == 1543);

    acp_farrow_bank* deficient = nullptr;
    CHECK(acp_farrow_fit(proto, 9, &deficient) == ACP_ERR_RANK_DEFICIENT);

    acp_signal_destroy(x);
    acp_signal_destroy(y);
    acp_farrow_bank_destroy(bank);
    acp_farrow_bank_destroy(loaded);
    acp_prototype_destroy(proto);
}

TEST_CASE("links on every backend") {
    acp_plan plan{};
    REQUIRE(acp_plan_from_cp(60e-6, 1e6, 12e-6, 48, &plan) == ACP_OK);
    const double period = 48e-6 / 64.0;
    acp_clocked_plan clocked{};
    REQUIRE(acp_plan_from_clock_rates(60e-6, 1e-6, 64, &period, 1, 0.0, 6.0, 48, &clocked) == ACP_OK);
    acp_prototype* proto = nullptr;
    acp_farrow_bank* bank = nullptr;
    REQUIRE(acp_prototype_design(361, 3, 140.0, &proto) == ACP_OK);
    REQUIRE(acp_farrow_fit(proto, 2, &bank) == ACP_OK);

    for (const auto backend : {ACP_BACKEND_DIRECT, ACP_BACKEND_CLOCK_CHANGE, ACP_BACKEND_FARROW}) {
        acp_link_config cfg{};
        cfg.waveform = ACP_WAVEFORM_OFDM;
        cfg.backend = backend;
        cfg.plan = backend == ACP_BACKEND_CLOCK_CHANGE ? clocked.base : plan;
        cfg.clocked = backend == ACP_BACKEND_CLOCK_CHANGE ? &clocked : nullptr;
        cfg.map_mode = ACP_MAP_LOCALIZED;
        cfg.map_stride = 1;
        cfg.farrow = backend == ACP_BACKEND_FARROW ? bank : nullptr;
        cfg.farrow_N_tilde = 64;
        acp_link* link = nullptr;
        REQUIRE(acp_link_create(&cfg, &link) == ACP_OK);
        CHECK(acp_link_data_samples(link) == (backend == ACP_BACKEND_CLOCK_CHANGE ? 64 : 48));

        std::vector<double> u(96);
        std::vector<double> u_hat(96);
        REQUIRE(acp_random_symbols(ACP_MOD_QAM16, 48, 3, 0, u.data()) == ACP_OK);
        acp_signal* x = nullptr;
        acp_signal* y = nullptr;
        acp_signal* h = nullptr;
        acp_channel* ch = nullptr;
        REQUIRE(acp_tx_chain(link, u.data(), 48, &x) == ACP_OK);
        REQUIRE(acp_channel_random(acp_link_cp_samples(link), 4.0, 3, 1, &ch) == ACP_OK);
        REQUIRE(acp_apply_channel(x, ch, 0, 0.0, 0, &y) == ACP_OK);
        REQUIRE(acp_cir_as_signal(ch, static_cast<std::size_t>(acp_channel_max_delay(ch) + 1),
                                  acp_signal_period(x), &h) == ACP_OK);
        REQUIRE(acp_rx_chain(link, y, h, u_hat.data(), u_hat.size()) == ACP_OK);
        acp_link_metrics m{};
        REQUIRE(acp_measure(u.data(), u_hat.data(), 48, ACP_MOD_QAM16, nullptr, nullptr, &m) == ACP_OK);
        CHECK(m.evm_db <= -100.0);
        CHECK(m.ber == 0.0);
        for (auto* p : {x, y, h}) {
            acp_signal_destroy(p);
        }
        acp_channel_destroy(ch);
        acp_link_destroy(link);
    }

    acp_link_config broken{};
    broken.plan = plan;
    broken.backend = ACP_BACKEND_FARROW;
    broken.map_stride = 1;
    acp_link* link = nullptr;
    CHECK(acp_link_create(&broken, &link) == ACP_ERR_CONFIG_MISMATCH);
    acp_farrow_bank_destroy(bank);
    acp_prototype_destroy(proto);
}

TEST_CASE("channels") {
    acp_channel* ch = nullptr;
    REQUIRE(acp_channel_preset("mmw73-max", 31.25e-9, &ch) == ACP_OK);
    CHECK(acp_channel_max_delay(ch) == 13);
    acp_channel_destroy(ch);
    CHECK(acp_channel_preset("mars", 31.25e-9, &ch) == ACP_ERR_INVALID_ARGUMENT);

    const int64_t delays[] = {0, 3};
    const double gains[] = {1.0, 0.0, 0.0, 0.0};
    CHECK(acp_channel_create(delays, gains, 2, 1, &ch) == ACP_OK);
    acp_signal* h = nullptr;
    CHECK(acp_cir_as_signal(ch, 2, 1.0, &h) == ACP_ERR_LENGTH_TOO_SHORT);
    acp_channel_destroy(ch);
    const double zeros[] = {0.0, 0.0};
    CHECK(acp_channel_create(delays, zeros, 1, 1, &ch) == ACP_ERR_ZERO_POWER);

    const double d[] = {0.0, 400.6e-9};
    const double p[] = {0.5, 0.5};
    double rms = 0.0;
    REQUIRE(acp_rms_delay_spread(d, p, 2, &rms) == ACP_OK);
    CHECK(rms == doctest::Approx(200.3e-9));
}

TEST_CASE("experiments") {
    const double taus[] = {0.0, 200.3e-9};
    acp_sweep_config sweep{};
    sweep.taus = taus;
    sweep.tau_count = 2;
    sweep.T = 10e-6;
    sweep.B = 32e6;
    sweep.cp_multiple = 6.0;
    sweep.M = 64;
    sweep.trials = 1;
    sweep.seed = 1;
    acp_table* t = nullptr;
    REQUIRE(acp_run_sweep(&sweep, &t) == ACP_OK);
    const char* k = nullptr;
    REQUIRE(acp_table_cell(t, 1, "K_samples", &k) == ACP_OK);
    CHECK(std::string(k) == "39");
    acp_table_destroy(t);
    sweep.trials = 0;
    CHECK(acp_run_sweep(&sweep, &t) == ACP_ERR_INVALID_ARGUMENT);
    CHECK(std::string(acp_last_error()).find("trials must be >= 1") != std::string::npos);

    acp_two_user_config users{};
    acp_two_user_defaults(&users);
    acp_two_user_result r{};
    REQUIRE(acp_run_two_user(&users, 1, &r, nullptr) == ACP_OK);
    CHECK(r.evm_user2_common <= -100.0);
    CHECK(r.evm_user2_mismatched - r.evm_user2_common >= 30.0);
    users.offset1 = users.offset2;
    CHECK(acp_run_two_user(&users, 1, &r, nullptr) == ACP_ERR_OVERLAPPING_SUBCARRIERS);

    double max_err = 1.0;
    REQUIRE(acp_run_theorem1(5, 256, 1, &max_err, nullptr) == ACP_OK);
    CHECK(max_err <= 1e-9);

    acp_farrow_bench_config bench{};
    acp_farrow_bench_defaults(&bench);
    acp_farrow_bench_result br{};
    acp_table* summary = nullptr;
    REQUIRE(acp_run_farrow_bench(&bench, &br, &summary, nullptr) == ACP_OK);
    CHECK(br.rel_mse_db <= -40.0);
    CHECK(br.published_mults == 146.0);
    CHECK(br.mults_farrow == doctest::Approx(139.30).epsilon(1e-4));
    acp_table_destroy(summary);
}
