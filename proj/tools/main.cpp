// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

// acp-sim: command-line front end over the C API.
// Exit codes: 0 ok, 1 internal or I/O error, 2 invalid configuration.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acp/acp.h"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_internal = 1;
constexpr int exit_config = 2;

// Failure carrying the exit code it maps to.
struct CommandError {
    int code;
    std::string message;
};

void check(acp_status status) {
    if (status == ACP_OK) {
        return;
    }
    const int code = (status == ACP_ERR_INTERNAL || status == ACP_ERR_IO) ? exit_internal : exit_config;
    throw CommandError{code, std::string(acp_status_string(status)) + ": " + acp_last_error()};
}

struct TableDeleter {
    void operator()(acp_table* t) const { acp_table_destroy(t); }
};
using TablePtr = std::unique_ptr<acp_table, TableDeleter>;

struct ChannelDeleter {
    void operator()(acp_channel* c) const { acp_channel_destroy(c); }
};
using ChannelPtr = std::unique_ptr<acp_channel, ChannelDeleter>;

std::string csv_of(const acp_table* table) {
    std::size_t needed = 0;
    acp_status s = acp_table_csv(table, nullptr, 0, &needed);
    if (s != ACP_ERR_BUFFER_TOO_SMALL) {
        check(s);
    }
    std::string text(needed, '\0');
    check(acp_table_csv(table, text.data(), text.size(), &needed));
    text.resize(needed - 1);
    return text;
}

std::string format_si(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Accepts "80us", "32MHz", "1.5e-6" and rewrites the value in SI base units.
const CLI::Validator quantity = CLI::Validator(
    [](std::string& text) -> std::string {
        double v = 0.0;
        if (acp_parse_quantity(text.c_str(), &v) != ACP_OK) {
            return acp_last_error();
        }
        text = format_si(v);
        return {};
    },
    "QUANTITY", "quantity");

// Comma-separated quantities, rewritten in SI base units.
const CLI::Validator quantity_list = CLI::Validator(
    [](std::string& text) -> std::string {
        std::stringstream in(text);
        std::string item;
        std::string out;
        while (std::getline(in, item, ',')) {
            double v = 0.0;
            if (acp_parse_quantity(item.c_str(), &v) != ACP_OK) {
                return acp_last_error();
            }
            out += (out.empty() ? "" : ",") + format_si(v);
        }
        if (out.empty()) {
            return "empty list";
        }
        text = out;
        return {};
    },
    "LIST", "quantity list");

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        double v = 0.0;
        check(acp_parse_quantity(item.c_str(), &v));
        out.push_back(v);
    }
    return out;
}

// A clock list is either a file (one period per line, '#' comments) or an inline comma list.
std::vector<double> load_clocks(const std::string& arg) {
    if (!std::filesystem::is_regular_file(arg)) {
        return parse_list(arg);
    }
    std::ifstream in(arg);
    std::vector<double> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::stringstream ls(line);
        std::string word;
        while (ls >> word) {
            for (const double v : parse_list(word)) {
                out.push_back(v);
            }
        }
    }
    return out;
}

struct Output {
    std::string out;  ///< --out
    std::string dump; ///< secondary CSV (farrow-bench samples)
};

std::optional<std::filesystem::path> resolve(const std::string& requested, const std::string& fallback_name) {
    const char* dir = std::getenv("ACP_OUTPUT_DIR");
    if (!requested.empty()) {
        std::filesystem::path p(requested);
        if (p.is_relative() && dir != nullptr && *dir != '\0') {
            p = std::filesystem::path(dir) / p;
        }
        return p;
    }
    if (dir != nullptr && *dir != '\0' && !fallback_name.empty()) {
        return std::filesystem::path(dir) / fallback_name;
    }
    return std::nullopt;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) {
        throw CommandError{exit_internal, "cannot write " + path.string()};
    }
}

// Writes the CSV to --out (or ACP_OUTPUT_DIR/<command>.csv) with a sidecar of the resolved config,
// or to stdout when neither is set.
void emit(const CLI::App& app, const Output& output, const std::string& command, const acp_table* table) {
    const std::string csv = csv_of(table);
    const auto path = resolve(output.out, command + ".csv");
    if (!path) {
        std::cout << csv;
        return;
    }
    write_file(*path, csv);
    // loadable again through --config
    const CLI::App* sub = app.get_subcommands().front();
    std::istringstream lines(sub->config_to_str(true, false));
    std::string sidecar = "[" + sub->get_name() + "]\n";
    for (std::string line; std::getline(lines, line);) {
        // options left unset have no value to record
        if (!line.ends_with("=\"\"")) {
            sidecar += line + "\n";
        }
    }
    write_file(path->string() + ".config", sidecar);
}

acp_waveform parse_waveform(const std::string& s) {
    return s == "ofdm" ? ACP_WAVEFORM_OFDM : ACP_WAVEFORM_DFTS_OFDM;
}

acp_modulation parse_modulation(const std::string& s) { return s == "16qam" ? ACP_MOD_QAM16 : ACP_MOD_QPSK; }

// Preset name ("mmw73-max") or profile file path.
ChannelPtr load_channel(const std::string& spec, double sample_period) {
    acp_channel* ch = nullptr;
    if (std::filesystem::is_regular_file(spec)) {
        check(acp_channel_load(spec.c_str(), sample_period, &ch));
    } else {
        check(acp_channel_preset(spec.c_str(), sample_period, &ch));
    }
    return ChannelPtr(ch);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive cyclic-prefix link simulation"};
    app.set_config("--config", "", "key = value configuration file (sections per command)");
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();
    Output output;
    app.add_option("--out", output.out, "CSV output path (stdout if unset; relative to ACP_OUTPUT_DIR if set)");

    // plan
    auto* plan = app.add_subcommand("plan", "Symbol numerology: delay-spread plan, fixed grid or clock-rate plan");
    double T = 80e-6;
    double B = 32e6;
    double tau = 0.0;
    double mult = 6.0;
    double Tc = -1.0;
    std::int64_t M = 0;
    bool lte = false;
    double subframe = 500e-6;
    double Td = 66.7e-6;
    std::string clocks;
    double Ts = 0.0;
    std::int64_t N_tilde = 2048;
    plan->add_option("--T", T, "overall symbol time")->transform(quantity);
    plan->add_option("--B", B, "bandwidth")->transform(quantity);
    plan->add_option("--tau", tau, "RMS delay spread")->transform(quantity);
    plan->add_option("--mult", mult, "CP multiple of the delay spread");
    plan->add_option("--Tc", Tc, "CP duration (overrides --tau)")->transform(quantity);
    plan->add_option("--M", M, "QAM block length (0 = N)");
    plan->add_flag("--lte-grid", lte, "enumerate CPs on a fixed data portion");
    plan->add_option("--subframe", subframe, "subframe duration for --lte-grid")->transform(quantity);
    plan->add_option("--Td", Td, "data portion for --lte-grid")->transform(quantity);
    plan->add_option("--clocks", clocks, "clock periods: file or comma list (work backwards to the CP)");
    plan->add_option("--Ts", Ts, "base sample period for --clocks (default 1/B)")->transform(quantity);
    plan->add_option("--N-tilde", N_tilde, "power-of-two transform size for --clocks");

    // lte-grid
    auto* grid = app.add_subcommand("lte-grid", "CP solutions when the data portion is fixed");
    grid->add_option("--subframe", subframe, "subframe duration")->transform(quantity);
    grid->add_option("--Td", Td, "data portion duration")->transform(quantity);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Single-user adaptive-CP sweep over delay spreads");
    std::string taus = "0,12.1ns,200.3ns";
    double sweep_T = 10e-6;
    double snr = 0.0;
    std::int64_t trials = 1;
    std::uint64_t seed = 0;
    double fixed_Td = 0.0;
    std::int64_t sweep_M = 64;
    std::string waveform = "dfts-ofdm";
    std::string modulation = "qpsk";
    sweep->add_option("--taus", taus, "delay spreads")->transform(quantity_list);
    sweep->add_option("--T", sweep_T, "overall symbol time")->transform(quantity);
    sweep->add_option("--B", B, "bandwidth")->transform(quantity);
    sweep->add_option("--mult", mult, "CP multiple of the delay spread");
    sweep->add_option("--M", sweep_M, "QAM block length");
    auto* sweep_snr = sweep->add_option("--snr", snr, "per-sample SNR in dB (noiseless if unset)")
                         ->transform(quantity)
                         ->default_str("");
    sweep->add_option("--trials", trials, "Monte-Carlo trials per delay spread");
    sweep->add_option("--seed", seed, "random seed")->required();
    auto* sweep_td = sweep->add_option("--fixed-Td", fixed_Td, "data portion for the fixed-T_d overhead column")
                         ->transform(quantity)
                         ->default_str("");
    sweep->add_option("--waveform", waveform)->check(CLI::IsMember({"dfts-ofdm", "ofdm"}));
    sweep->add_option("--modulation", modulation)->check(CLI::IsMember({"qpsk", "16qam"}));

    // farrow-bench
    auto* bench = app.add_subcommand("farrow-bench", "Farrow data portion against the direct IDFT");
    acp_farrow_bench_config bcfg{};
    acp_farrow_bench_defaults(&bcfg);
    bench->add_option("--N", bcfg.N, "data-portion samples");
    bench->add_option("--N-tilde", bcfg.N_tilde, "power-of-two IFFT size");
    bench->add_option("--L", bcfg.L, "prototype length");
    bench->add_option("--p", bcfg.p, "interpolation factor");
    bench->add_option("--alpha", bcfg.alpha, "polynomial order");
    bench->add_option("--atten", bcfg.stopband_atten_db, "prototype stopband attenuation in dB");
    bench->add_option("--samples", bcfg.compare_samples, "leading samples compared and dumped");
    bench->add_option("--seed", bcfg.seed, "random seed")->required();
    bench->add_option("--dump", output.dump, "CSV path for the per-sample dump");

    // theorem1
    auto* thm = app.add_subcommand("theorem1", "Clock-change data portion against the direct IDFT");
    std::int64_t pairs = 20;
    std::int64_t max_N_tilde = 4096;
    std::uint64_t thm_seed = 0;
    thm->add_option("--pairs", pairs, "random (N, N_tilde) pairs");
    thm->add_option("--max-N-tilde", max_N_tilde, "largest N_tilde");
    thm->add_option("--seed", thm_seed, "random seed")->required();

    // multiuser
    auto* multi = app.add_subcommand("multiuser", "Two users with different CPs received at user 2");
    acp_two_user_config ucfg{};
    acp_two_user_defaults(&ucfg);
    std::int64_t mu_trials = 4;
    double mu_snr = 0.0;
    bool user1_silent = false;
    std::string channel1;
    std::string channel2;
    multi->add_option("--T", ucfg.T, "overall symbol time")->transform(quantity);
    multi->add_option("--B", ucfg.B, "bandwidth")->transform(quantity);
    multi->add_option("--cp1", ucfg.cp_user1, "user-1 CP")->transform(quantity);
    multi->add_option("--cp2", ucfg.cp_user2, "user-2 CP")->transform(quantity);
    multi->add_option("--M1", ucfg.M1, "user-1 block length");
    multi->add_option("--offset1", ucfg.offset1, "user-1 first subcarrier");
    multi->add_option("--M2", ucfg.M2, "user-2 block length");
    multi->add_option("--offset2", ucfg.offset2, "user-2 first subcarrier");
    multi->add_option("--symbols", ucfg.symbols, "back-to-back symbols per trial");
    multi->add_option("--initial-offset", ucfg.initial_offset, "samples by which user 1 lags user 2");
    multi->add_option("--trials", mu_trials, "trials");
    auto* mu_snr_opt = multi->add_option("--snr", mu_snr, "per-sample SNR in dB")
                           ->transform(quantity)
                           ->default_str("");
    multi->add_flag("--user1-silent", user1_silent, "user 1 does not transmit");
    multi->add_option("--channel1", channel1, "user-1 channel: preset name or profile file");
    multi->add_option("--channel2", channel2, "user-2 channel: preset name or profile file");
    multi->add_option("--seed", ucfg.seed, "random seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }

    try {
        if (plan->parsed()) {
            TablePtr table;
            acp_table* t = nullptr;
            if (lte) {
                check(acp_lte_grid_table(subframe, Td, &t));
            } else if (!clocks.empty()) {
                const auto periods = load_clocks(clocks);
                const double base = Ts > 0.0 ? Ts : 1.0 / B;
                acp_clocked_plan cp{};
                check(acp_plan_from_clock_rates(T, base, N_tilde, periods.data(), periods.size(), tau, mult, M, &cp));
                check(acp_clocked_plan_table(&cp, &t));
            } else {
                acp_plan p{};
                const std::int64_t block = M > 0 ? M : 1;
                if (Tc >= 0.0) {
                    check(acp_plan_from_cp(T, B, Tc, block, &p));
                } else {
                    check(acp_plan_from_delay_spread(T, B, tau, mult, block, &p));
                }
                if (M == 0) {
                    p.M = p.N;
                }
                check(acp_plan_table(&p, &t));
            }
            table.reset(t);
            emit(app, output, "plan", table.get());
        } else if (grid->parsed()) {
            acp_table* t = nullptr;
            check(acp_lte_grid_table(subframe, Td, &t));
            TablePtr table(t);
            emit(app, output, "lte-grid", table.get());
        } else if (sweep->parsed()) {
            const auto tau_list = parse_list(taus);
            acp_sweep_config cfg{};
            cfg.taus = tau_list.data();
            cfg.tau_count = tau_list.size();
            cfg.T = sweep_T;
            cfg.B = B;
            cfg.cp_multiple = mult;
            cfg.M = sweep_M;
            cfg.has_snr = sweep_snr->count() > 0 ? 1 : 0;
            cfg.snr_db = snr;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.has_fixed_Td = sweep_td->count() > 0 ? 1 : 0;
            cfg.fixed_Td = fixed_Td;
            cfg.waveform = parse_waveform(waveform);
            cfg.modulation = parse_modulation(modulation);
            acp_table* t = nullptr;
            check(acp_run_sweep(&cfg, &t));
            TablePtr table(t);
            emit(app, output, "sweep", table.get());
        } else if (bench->parsed()) {
            acp_farrow_bench_result r{};
            acp_table* s = nullptr;
            acp_table* d = nullptr;
            check(acp_run_farrow_bench(&bcfg, &r, &s, &d));
            TablePtr summary(s);
            TablePtr samples(d);
            emit(app, output, "farrow-bench", summary.get());
            if (const auto path = resolve(output.dump, ""); path) {
                write_file(*path, csv_of(samples.get()));
            }
        } else if (thm->parsed()) {
            double max_err = 0.0;
            acp_table* t = nullptr;
            check(acp_run_theorem1(pairs, max_N_tilde, thm_seed, &max_err, &t));
            TablePtr table(t);
            emit(app, output, "theorem1", table.get());
            std::cerr << "max_rel_error " << format_si(max_err) << "\n";
        } else if (multi->parsed()) {
            ChannelPtr ch1;
            ChannelPtr ch2;
            const double period = 1.0 / ucfg.B;
            if (!channel1.empty()) {
                ch1 = load_channel(channel1, period);
                ucfg.channel1 = ch1.get();
            }
            if (!channel2.empty()) {
                ch2 = load_channel(channel2, period);
                ucfg.channel2 = ch2.get();
            }
            ucfg.has_snr = mu_snr_opt->count() > 0 ? 1 : 0;
            ucfg.snr_db = mu_snr;
            ucfg.user1_active = user1_silent ? 0 : 1;
            acp_two_user_result r{};
            acp_table* t = nullptr;
            check(acp_run_two_user(&ucfg, mu_trials, &r, &t));
            TablePtr table(t);
            emit(app, output, "multiuser", table.get());
        }
    } catch (const CommandError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_ok;
}
