// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#include "circlaw/io.hpp"

#include <algorithm>
#include <charconv>
#include <string_view>
#include <fstream>
#include <sstream>

namespace circlaw {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_complex(Complex z) {
    if (z.imag() == 0.0) return format_double(z.real());
    std::string out = format_double(z.real());
    if (z.imag() >= 0.0) out += "+";
    out += format_double(z.imag()) + "i";
    return out;
}

namespace {

// from_chars does not accept a leading '+'
double parse_double_strict(std::string_view s, const std::string& context) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ValidationError("bad number in '" + context + "'");
    return v;
}

}  // namespace

Complex parse_complex(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    if (s.empty()) throw ValidationError("empty complex literal");

    const bool has_i = s.back() == 'i' || s.back() == 'j';
    if (!has_i) return {parse_double_strict(s, text), 0.0};

    s.pop_back();  // strip the i
    // find the sign splitting re and im (skip a leading sign and exponent signs)
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) {
        // pure imaginary: "bi", "i", "-i"
        if (s.empty() || s == "+") return {0.0, 1.0};
        if (s == "-") return {0.0, -1.0};
        return {0.0, parse_double_strict(s, text)};
    }
    const std::string re_part = s.substr(0, split);
    std::string im_part = s.substr(split);
    if (im_part == "+") im_part = "1";
    if (im_part == "-") im_part = "-1";
    return {parse_double_strict(re_part, text), parse_double_strict(im_part, text)};
}

namespace {

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    return parts;
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const std::string& part : split_commas(text)) out.push_back(parse_double_strict(part, text));
    if (out.empty()) throw ValidationError("empty number list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const std::string& part : split_commas(text)) {
        int v = 0;
        const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
        if (res.ec != std::errc{} || res.ptr != part.data() + part.size())
            throw ValidationError("bad integer '" + part + "'");
        out.push_back(v);
    }
    if (out.empty()) throw ValidationError("empty integer list");
    return out;
}

std::vector<Complex> parse_complex_list(const std::string& text) {
    std::vector<Complex> out;
    for (const std::string& part : split_commas(text)) out.push_back(parse_complex(part));
    if (out.empty()) throw ValidationError("empty complex list");
    return out;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) body_ += ',';
        body_ += header[i];
    }
    body_ += '\n';
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw ValidationError("CSV row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) body_ += ',';
        body_ += cells[i];
    }
    body_ += '\n';
}

std::string CsvWriter::str() const { return body_; }

void CsvWriter::write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file " + path.string());
    out << body_;
}

}  // namespace circlaw
