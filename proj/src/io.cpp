// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#include "acp/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "acp/error.hpp"

namespace acp::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

struct Unit {
    std::string_view suffix;
    double scale;
};

// longer suffixes first so "ms" is not read as "s"
constexpr std::array<Unit, 13> units{{
    {"GHz", 1e9}, {"MHz", 1e6}, {"kHz", 1e3}, {"Hz", 1.0},
    {"\xC2\xB5s", 1e-6}, {"us", 1e-6}, {"ns", 1e-9}, {"ps", 1e-12}, {"ms", 1e-3},
    {"dB", 1.0}, {"s", 1.0}, {"%", 1e-2}, {"", 1.0},
}};

double parse_plain(std::string_view text) {
    double value = 0.0;
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        fail(ErrorCode::parse, fmt::format("'{}' is not a number", text));
    }
    return value;
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
    }
}

std::uint64_t get_u64(std::string_view bytes, std::size_t offset) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[offset + static_cast<std::size_t>(i)]))
             << (8 * i);
    }
    return v;
}

} // namespace

double parse_quantity(std::string_view text) {
    text = trim(text);
    require(!text.empty(), ErrorCode::parse, "empty quantity");
    if (text == "inf" || text == "none") {
        fail(ErrorCode::parse, fmt::format("'{}' is not a finite quantity", text));
    }
    for (const auto& unit : units) {
        if (text.size() > unit.suffix.size() && text.ends_with(unit.suffix)) {
            const auto number = trim(text.substr(0, text.size() - unit.suffix.size()));
            // "1e-6s" style; a bare exponent marker means the suffix belongs to the number
            if (!number.empty() && (number.back() == 'e' || number.back() == 'E')) {
                continue;
            }
            return parse_plain(number) * unit.scale;
        }
    }
    return parse_plain(text);
}

std::vector<double> parse_quantity_list(std::string_view text) {
    std::vector<double> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        out.push_back(parse_quantity(text.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    require(!out.empty(), ErrorCode::parse, "empty list");
    return out;
}

std::string format_exact(double value) { return fmt::format("{}", value); }

std::string format_cell(double value) {
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    return fmt::format("{:.10g}", value);
}

KeyValueRecord KeyValueRecord::parse(std::string_view text) {
    KeyValueRecord record;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        auto line = trim(text.substr(0, nl));
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(ErrorCode::parse, fmt::format("line {}: expected 'key = value'", line_no));
        }
        const auto key = trim(line.substr(0, eq));
        require(!key.empty(), ErrorCode::parse, fmt::format("line {}: empty key", line_no));
        record.set(std::string(key), std::string(trim(line.substr(eq + 1))));
    }
    return record;
}

KeyValueRecord KeyValueRecord::load(const std::filesystem::path& path) { return parse(read_text(path)); }

void KeyValueRecord::set(const std::string& key, std::string value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    entries_.emplace_back(key, std::move(value));
}

void KeyValueRecord::set(const std::string& key, double value) { set(key, format_exact(value)); }
void KeyValueRecord::set(const std::string& key, long long value) { set(key, std::to_string(value)); }

bool KeyValueRecord::contains(std::string_view key) const { return find(key).has_value(); }

std::optional<std::string> KeyValueRecord::find(std::string_view key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) {
            return v;
        }
    }
    return std::nullopt;
}

const std::string& KeyValueRecord::at(std::string_view key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) {
            return v;
        }
    }
    fail(ErrorCode::parse, fmt::format("missing key '{}'", key));
}

double KeyValueRecord::number(std::string_view key) const { return parse_quantity(at(key)); }

long long KeyValueRecord::integer(std::string_view key) const {
    const auto& text = at(key);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        fail(ErrorCode::parse, fmt::format("key '{}': '{}' is not an integer", key, text));
    }
    return value;
}

std::string KeyValueRecord::str() const {
    std::string out;
    for (const auto& [k, v] : entries_) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

KeyValueRecord to_record(const numerology::NumerologyPlan& plan) {
    KeyValueRecord r;
    r.set("T", plan.T);
    r.set("T_c", plan.T_c);
    r.set("T_d", plan.T_d);
    r.set("T_s", plan.T_s);
    r.set("N", static_cast<long long>(plan.N));
    r.set("M", static_cast<long long>(plan.M));
    r.set("K", static_cast<long long>(plan.K));
    r.set("delta_f", plan.delta_f);
    r.set("B", plan.B);
    return r;
}

KeyValueRecord to_record(const numerology::ClockedPlan& plan) {
    KeyValueRecord r = to_record(plan.base);
    r.set("N_tilde", static_cast<long long>(plan.N_tilde));
    r.set("Ts_tilde", plan.Ts_tilde);
    r.set("Fs_tilde", plan.Fs_tilde);
    r.set("K_tilde", static_cast<long long>(plan.K_tilde));
    r.set("B_tilde", plan.B_tilde);
    r.set("symbol_time_residual", plan.symbol_time_residual);
    return r;
}

numerology::NumerologyPlan plan_from_record(const KeyValueRecord& r) {
    numerology::NumerologyPlan plan;
    plan.T = r.number("T");
    plan.T_c = r.number("T_c");
    plan.T_d = r.number("T_d");
    plan.T_s = r.number("T_s");
    plan.N = r.integer("N");
    plan.M = r.integer("M");
    plan.K = r.integer("K");
    plan.delta_f = r.number("delta_f");
    plan.B = r.number("B");
    return plan;
}

numerology::ClockedPlan clocked_plan_from_record(const KeyValueRecord& r) {
    numerology::ClockedPlan plan;
    plan.base = plan_from_record(r);
    plan.N_tilde = r.integer("N_tilde");
    plan.Ts_tilde = r.number("Ts_tilde");
    plan.Fs_tilde = r.number("Fs_tilde");
    plan.K_tilde = r.integer("K_tilde");
    plan.B_tilde = r.number("B_tilde");
    plan.symbol_time_residual = r.number("symbol_time_residual");
    return plan;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
    require(!columns_.empty(), ErrorCode::invalid_argument, "table needs at least one column");
}

void Table::add_row(std::vector<std::string> cells) {
    require(cells.size() == columns_.size(), ErrorCode::length_mismatch,
            fmt::format("row has {} cells, table has {} columns", cells.size(), columns_.size()));
    rows_.push_back(std::move(cells));
}

std::size_t Table::column_index(std::string_view name) const {
    const auto it = std::find(columns_.begin(), columns_.end(), name);
    require(it != columns_.end(), ErrorCode::invalid_argument, fmt::format("no column '{}'", name));
    return static_cast<std::size_t>(it - columns_.begin());
}

const std::string& Table::cell(std::size_t row, std::string_view column) const {
    require(row < rows_.size(), ErrorCode::out_of_range, fmt::format("row {} out of range", row));
    return rows_[row][column_index(column)];
}

std::string Table::csv() const {
    std::string out;
    auto emit = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += cells[i];
        }
        out += '\n';
    };
    emit(columns_);
    for (const auto& row : rows_) {
        emit(row);
    }
    return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), ErrorCode::io, fmt::format("cannot open '{}' for writing", path.string()));
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    require(static_cast<bool>(out), ErrorCode::io, fmt::format("failed writing '{}'", path.string()));
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorCode::io, fmt::format("cannot open '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string signal_csv(const dsp::ComplexSignal& signal) {
    std::string out = "index,re,im\n";
    for (std::size_t i = 0; i < signal.size(); ++i) {
        out += fmt::format("{},{},{}\n", i, format_exact(signal[i].real()), format_exact(signal[i].imag()));
    }
    return out;
}

std::string signal_binary(const dsp::ComplexSignal& signal) {
    std::string out(signal_magic);
    out.reserve(24 + 16 * signal.size());
    put_u64(out, signal.size());
    put_u64(out, std::bit_cast<std::uint64_t>(signal.sample_period()));
    for (const auto& v : signal.samples()) {
        put_u64(out, std::bit_cast<std::uint64_t>(v.real()));
        put_u64(out, std::bit_cast<std::uint64_t>(v.imag()));
    }
    return out;
}

dsp::ComplexSignal signal_from_binary(std::string_view bytes) {
    require(bytes.size() >= 24 && bytes.substr(0, 8) == signal_magic, ErrorCode::parse,
            "not a binary signal (bad magic)");
    const std::uint64_t n = get_u64(bytes, 8);
    require(n <= (bytes.size() - 24) / 16 && bytes.size() == 24 + 16 * n, ErrorCode::parse,
            "binary signal length does not match its header");
    const double period = std::bit_cast<double>(get_u64(bytes, 16));
    dsp::Samples samples(n);
    for (std::size_t i = 0; i < n; ++i) {
        samples[i] = {std::bit_cast<double>(get_u64(bytes, 24 + 16 * i)),
                      std::bit_cast<double>(get_u64(bytes, 32 + 16 * i))};
    }
    return dsp::ComplexSignal(std::move(samples), period);
}

} // namespace acp::io
