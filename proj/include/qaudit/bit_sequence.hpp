#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace qaudit {

// Immutable packed bit container. Bits are packed MSB-first within each byte:
// bit k of the sequence lives in byte k/8 at bit position 7-(k%8). Pad bits in
// the last byte are always zero. Copies share the payload, so passing
// BitSequence by value is cheap and safe across threads.
class BitSequence {
public:
    BitSequence() : bytes_(std::make_shared<std::vector<std::uint8_t>>()), bit_len_(0) {}

    // Takes ownership of packed bytes. Pad bits must already be zero.
    static BitSequence from_packed(std::vector<std::uint8_t> bytes, std::uint64_t bit_len);

    // Builds from a 0/1 ASCII string, for tests and tiny fixtures.
    static BitSequence from_string(const std::string& zeros_and_ones);

    std::uint64_t bit_len() const { return bit_len_; }
    std::uint64_t byte_len() const { return bytes_->size(); }
    bool empty() const { return bit_len_ == 0; }

    int bit(std::uint64_t i) const {
        return ((*bytes_)[i >> 3] >> (7 - (i & 7))) & 1;
    }

    std::span<const std::uint8_t> bytes() const { return {bytes_->data(), bytes_->size()}; }
    const std::uint8_t* data() const { return bytes_->data(); }

    std::uint64_t popcount() const;

    std::string to_string() const;

    bool operator==(const BitSequence& other) const;

private:
    BitSequence(std::shared_ptr<const std::vector<std::uint8_t>> bytes, std::uint64_t bit_len)
        : bytes_(std::move(bytes)), bit_len_(bit_len) {}

    std::shared_ptr<const std::vector<std::uint8_t>> bytes_;
    std::uint64_t bit_len_;

    friend class BitBuilder;
};

// Single-writer append buffer used to assemble sequences incrementally
// (stream generation, CSV ingestion, concatenation).
class BitBuilder {
public:
    BitBuilder() = default;
    explicit BitBuilder(std::uint64_t reserve_bits) { bytes_.reserve((reserve_bits + 7) / 8); }

    void push_bit(int b);
    void append(const BitSequence& seq);
    void append_bytes(std::span<const std::uint8_t> bytes, std::uint64_t nbits);

    std::uint64_t bit_len() const { return bit_len_; }

    // Finalizes the buffer; the builder is left empty.
    BitSequence take();

private:
    std::vector<std::uint8_t> bytes_;
    std::uint64_t bit_len_ = 0;
};

// In-order concatenation; bit k of the result is the k-th bit of the parts
// laid end to end.
BitSequence concat(const std::vector<BitSequence>& parts);

// Population count of bits [bit_lo, bit_hi) of a packed buffer.
std::uint64_t popcount_range(const std::uint8_t* data, std::uint64_t bit_lo, std::uint64_t bit_hi);

} // namespace qaudit
