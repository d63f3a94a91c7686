// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The adaptive-cp authors

#pragma once

#include <stdexcept>
#include <string>

namespace acp {

/// Failure categories shared by the C++ core and the C API (values match acp_status).
enum class ErrorCode : int {
    invalid_argument = 1,
    cp_exceeds_symbol = 2,
    block_too_large = 3,
    no_feasible_clock = 4,
    empty_group = 5,
    out_of_range = 6,
    not_power_of_two = 7,
    length_mismatch = 8,
    shrink = 9,
    alias = 10,
    zero_power = 11,
    length_too_short = 12,
    infeasible_filter = 13,
    mismatched_prototype = 14,
    rank_deficient = 15,
    config_mismatch = 16,
    zero_channel_bin = 17,
    overlapping_subcarriers = 18,
    io = 19,
    parse = 20,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
    if (!condition) {
        fail(code, what);
    }
}

} // namespace acp
