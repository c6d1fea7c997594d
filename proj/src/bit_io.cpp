#include "qaudit/bit_io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <nlohmann/json.hpp>

#include "qaudit/errors.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace qaudit {

std::string fnv1a64_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file_atomic(const fs::path& path, const std::string& text) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) throw IoError("short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("rename " + tmp.string() + " -> " + path.string() + ": " + ec.message());
}

std::string StreamMetadata::to_json() const {
    ordered_json j;
    j["bit_count"] = bit_count;
    j["source_descriptor"] = source_descriptor;
    j["created_at"] = created_at;
    j["config_digest"] = config_digest;
    return j.dump(2) + "\n";
}

StreamMetadata StreamMetadata::from_json(const std::string& text) {
    StreamMetadata m;
    try {
        auto j = ordered_json::parse(text);
        m.bit_count = j.at("bit_count").get<std::uint64_t>();
        m.source_descriptor = j.value("source_descriptor", "");
        m.created_at = j.value("created_at", "");
        m.config_digest = j.value("config_digest", "-");
    } catch (const nlohmann::json::exception& e) {
        throw CorruptStreamError(std::string("bad stream metadata: ") + e.what());
    }
    return m;
}

static fs::path meta_path_for(const fs::path& bits_path) {
    fs::path p = bits_path;
    p += ".meta";
    return p;
}

StreamMetadata write_packed(const BitSequence& seq, const fs::path& path,
                            const std::string& source_descriptor,
                            const std::string& config_digest) {
    std::string payload(reinterpret_cast<const char*>(seq.data()), seq.byte_len());
    write_file_atomic(path, payload);

    StreamMetadata meta;
    meta.bit_count = seq.bit_len();
    meta.source_descriptor = source_descriptor;
    meta.created_at = iso8601_now();
    meta.config_digest = config_digest;
    write_file_atomic(meta_path_for(path), meta.to_json());
    return meta;
}

StreamMetadata read_metadata(const fs::path& bits_path) {
    const fs::path mp = meta_path_for(bits_path);
    std::ifstream in(mp, std::ios::binary);
    if (!in)
        throw ExplicitLengthRequiredError("no sidecar " + mp.string() +
                                          "; pass an explicit bit count to read this file");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return StreamMetadata::from_json(text);
}

BitSequence read_packed(const fs::path& path, std::uint64_t bit_count) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (bytes.size() != (bit_count + 7) / 8)
        throw CorruptStreamError(path.string() + ": file has " + std::to_string(bytes.size()) +
                                 " bytes but metadata claims " + std::to_string(bit_count) +
                                 " bits");
    return BitSequence::from_packed(std::move(bytes), bit_count);
}

BitSequence read_packed(const fs::path& path) {
    const StreamMetadata meta = read_metadata(path);
    return read_packed(path, meta.bit_count);
}

} // namespace qaudit
