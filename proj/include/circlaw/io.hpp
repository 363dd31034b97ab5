// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "circlaw/common.hpp"

namespace circlaw {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

/// "a", "a+bi" or "a-bi" with shortest round-trip parts.
std::string format_complex(Complex z);

/// Accepts "a", "a+bi", "a-bi", "bi" (and "i"/"-i").
Complex parse_complex(const std::string& text);

/// Comma-separated lists of the above.
std::vector<double> parse_double_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
std::vector<Complex> parse_complex_list(const std::string& text);

/// Minimal CSV emitter with a fixed numeric formatting policy (bit-stable
/// outputs are part of the determinism contract).
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(const std::vector<std::string>& cells);
    std::string str() const;
    void write(const std::filesystem::path& path) const;

  private:
    std::size_t columns_;
    std::string body_;
};

}  // namespace circlaw
