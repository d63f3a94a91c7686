// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "acp/dsp.hpp"
#include "acp/numerology.hpp"

namespace acp::io {

/// Parse "80us", "32MHz", "1.5e-6", "20dB" into SI base units (dB stays dB).
[[nodiscard]] double parse_quantity(std::string_view text);

/// Comma-separated list of quantities.
[[nodiscard]] std::vector<double> parse_quantity_list(std::string_view text);

/// Shortest text that parses back to the same double.
[[nodiscard]] std::string format_exact(double value);
/// Fixed-format number for CSV cells.
[[nodiscard]] std::string format_cell(double value);

/// Ordered flat `key = value` record. Lines starting with '#' are comments.
class KeyValueRecord {
public:
    KeyValueRecord() = default;

    [[nodiscard]] static KeyValueRecord parse(std::string_view text);
    [[nodiscard]] static KeyValueRecord load(const std::filesystem::path& path);

    void set(const std::string& key, std::string value);
    void set(const std::string& key, double value);
    void set(const std::string& key, long long value);

    [[nodiscard]] bool contains(std::string_view key) const;
    [[nodiscard]] std::optional<std::string> find(std::string_view key) const;
    [[nodiscard]] const std::string& at(std::string_view key) const;
    [[nodiscard]] double number(std::string_view key) const;
    [[nodiscard]] long long integer(std::string_view key) const;
    [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    [[nodiscard]] std::string str() const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

[[nodiscard]] KeyValueRecord to_record(const numerology::NumerologyPlan& plan);
[[nodiscard]] KeyValueRecord to_record(const numerology::ClockedPlan& plan);
[[nodiscard]] numerology::NumerologyPlan plan_from_record(const KeyValueRecord& record);
[[nodiscard]] numerology::ClockedPlan clocked_plan_from_record(const KeyValueRecord& record);

/// Column-oriented result table rendered as CSV (header row first).
class Table {
public:
    explicit Table(std::vector<std::string> columns);

    void add_row(std::vector<std::string> cells);
    [[nodiscard]] const std::vector<std::string>& columns() const { return columns_; }
    [[nodiscard]] const std::vector<std::vector<std::string>>& rows() const { return rows_; }
    [[nodiscard]] std::size_t column_index(std::string_view name) const;
    [[nodiscard]] const std::string& cell(std::size_t row, std::string_view column) const;

    [[nodiscard]] std::string csv() const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

void write_text(const std::filesystem::path& path, std::string_view text);
[[nodiscard]] std::string read_text(const std::filesystem::path& path);

/// CSV with columns (index, re, im).
[[nodiscard]] std::string signal_csv(const dsp::ComplexSignal& signal);

// Binary signal layout, all little-endian:
//   8 bytes magic "ACPSIG01", u64 length, f64 sample_period, then length x (f64 re, f64 im).
inline constexpr std::string_view signal_magic = "ACPSIG01";
[[nodiscard]] std::string signal_binary(const dsp::ComplexSignal& signal);
[[nodiscard]] dsp::ComplexSignal signal_from_binary(std::string_view bytes);

} // namespace acp::io
