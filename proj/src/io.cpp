#include "ocm/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "ocm/errors.hpp"

namespace ocm::cli {

namespace {

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return std::isspace(c) == 0; };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool parse_double(const std::string& field, double& out) {
    const std::string f = trim(field);
    const char* begin = f.data();
    const char* end = begin + f.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && !f.empty();
}

int log_threshold() {
    static const int level = [] {
        const char* env = std::getenv("OCM_LOG");
        if (env == nullptr) {
            return 1;  // warn
        }
        const std::string v = lower(env);
        if (v == "error") return 0;
        if (v == "warn") return 1;
        if (v == "info") return 2;
        if (v == "debug") return 3;
        return 1;
    }();
    return level;
}

}  // namespace

IngestReport ingest(const std::filesystem::path& path, InputSchema schema) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("ingest: cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ValidationError("ingest: empty file " + path.string());
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    const std::string header = lower(trim(line));
    const std::string expected = schema == InputSchema::kWidthHeight ? "width,height" : "z,h";
    if (header != expected) {
        throw ValidationError("ingest: header '" + header + "' does not match schema '" +
                              expected + "'");
    }

    std::vector<Observation> rows;
    std::vector<std::size_t> bad_lines;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        const std::size_t comma = line.find(',');
        bool ok = comma != std::string::npos && line.find(',', comma + 1) == std::string::npos;
        double first = 0.0;
        double second = 0.0;
        ok = ok && parse_double(line.substr(0, comma), first) &&
             parse_double(line.substr(comma + 1), second);
        if (ok) {
            double z = schema == InputSchema::kWidthHeight ? (first / 2.0) * (first / 2.0) : first;
            ok = std::isfinite(z) && z > 0.0 && std::isfinite(second) && second > 0.0;
            if (ok) {
                rows.push_back(Observation{z, second});
                continue;
            }
        }
        bad_lines.push_back(line_no);
    }
    if (rows.empty()) {
        throw ValidationError("ingest: no valid rows in " + path.string());
    }
    return IngestReport{ObservationSet(std::move(rows)), bad_lines.size(), std::move(bad_lines)};
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) {
        throw NumericalError("format_double: conversion failed");
    }
    return std::string(buf, ptr);
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ValidationError("write_text_atomic: cannot open " + tmp.string());
        }
        out << content;
        out.flush();
        if (!out) {
            throw ValidationError("write_text_atomic: write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

void log_warn(const std::string& message) {
    if (log_threshold() >= 1) {
        std::cerr << "[warn] " << message << "\n";
    }
}

void log_info(const std::string& message) {
    if (log_threshold() >= 2) {
        std::cerr << "[info] " << message << "\n";
    }
}

}  // namespace ocm::cli
