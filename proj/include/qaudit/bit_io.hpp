#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "qaudit/bit_sequence.hpp"

namespace qaudit {

// Sidecar metadata for a `.bits` file. Raw packed files cannot express bit
// counts that are not a multiple of 8, so the exact count travels next to the
// payload in `<path>.meta`.
struct StreamMetadata {
    std::uint64_t bit_count = 0;
    std::string source_descriptor;
    std::string created_at;    // ISO-8601 UTC
    std::string config_digest; // fnv1a64 of the generating configuration, "-" if none

    std::string to_json() const;
    static StreamMetadata from_json(const std::string& text);
};

// Writes `<path>` (raw packed bytes, MSB-first, zero-padded tail) and
// `<path>.meta`. Both writes are temp-then-rename so no partial file survives
// a failure.
StreamMetadata write_packed(const BitSequence& seq, const std::filesystem::path& path,
                            const std::string& source_descriptor = "",
                            const std::string& config_digest = "-");

// Reads a packed file using its sidecar for the exact bit count. Throws
// ExplicitLengthRequiredError when the sidecar is missing and
// CorruptStreamError when sizes disagree.
BitSequence read_packed(const std::filesystem::path& path);

// Sidecar-free variant for callers that know the exact bit count.
BitSequence read_packed(const std::filesystem::path& path, std::uint64_t bit_count);

StreamMetadata read_metadata(const std::filesystem::path& bits_path);

// Writes `text` to `path` atomically (temp file in the same directory, then
// rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

std::string fnv1a64_hex(const std::string& text);

std::string iso8601_now();

} // namespace qaudit
