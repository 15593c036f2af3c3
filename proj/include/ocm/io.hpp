#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ocm/observations.hpp"

namespace ocm::cli {

enum class InputSchema {
    kWidthHeight,  // columns width,height; z = (width/2)^2
    kZH,           // columns z,h
};

struct IngestReport {
    ObservationSet set;
    std::size_t rejected;
    std::vector<std::size_t> rejected_lines;  // 1-based file line numbers
};

/// Reads a comma-separated file with a header matching the schema
/// ("width,height" or "z,h"). Invalid rows are dropped and reported with
/// their line numbers. Throws ValidationError on a header/schema mismatch
/// or when no valid rows remain.
IngestReport ingest(const std::filesystem::path& path, InputSchema schema);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// Writes content to a sibling temp file and renames it into place.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

/// Minimal stderr logger; level comes from the OCM_LOG environment
/// variable (error, warn, info, debug; default warn).
void log_warn(const std::string& message);
void log_info(const std::string& message);

}  // namespace ocm::cli
