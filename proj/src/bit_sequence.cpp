#include "qaudit/bit_sequence.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

#include "qaudit/errors.hpp"

namespace qaudit {

BitSequence BitSequence::from_packed(std::vector<std::uint8_t> bytes, std::uint64_t bit_len) {
    if (bytes.size() != (bit_len + 7) / 8)
        throw CorruptStreamError("packed byte count " + std::to_string(bytes.size()) +
                                 " does not match bit count " + std::to_string(bit_len));
    if (bit_len % 8 != 0 && !bytes.empty()) {
        const std::uint8_t pad_mask = static_cast<std::uint8_t>(0xFF >> (bit_len % 8));
        if (bytes.back() & pad_mask)
            throw CorruptStreamError("nonzero pad bits in final byte");
    }
    auto shared = std::make_shared<std::vector<std::uint8_t>>(std::move(bytes));
    return BitSequence(std::move(shared), bit_len);
}

BitSequence BitSequence::from_string(const std::string& s) {
    BitBuilder b(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') throw Error("bit string may contain only '0' and '1'");
        b.push_bit(c == '1');
    }
    return b.take();
}

std::uint64_t BitSequence::popcount() const {
    return popcount_range(bytes_->data(), 0, bit_len_);
}

std::string BitSequence::to_string() const {
    std::string s;
    s.reserve(bit_len_);
    for (std::uint64_t i = 0; i < bit_len_; ++i) s.push_back(bit(i) ? '1' : '0');
    return s;
}

bool BitSequence::operator==(const BitSequence& other) const {
    return bit_len_ == other.bit_len_ && *bytes_ == *other.bytes_;
}

void BitBuilder::push_bit(int b) {
    if ((bit_len_ & 7) == 0) bytes_.push_back(0);
    if (b) bytes_.back() |= static_cast<std::uint8_t>(1u << (7 - (bit_len_ & 7)));
    ++bit_len_;
}

void BitBuilder::append_bytes(std::span<const std::uint8_t> src, std::uint64_t nbits) {
    if (nbits == 0) return;
    const std::uint64_t offset = bit_len_ & 7;
    const std::uint64_t full_bytes = nbits / 8;
    if (offset == 0) {
        // Byte-aligned fast path.
        bytes_.insert(bytes_.end(), src.begin(), src.begin() + static_cast<std::ptrdiff_t>(full_bytes));
        bit_len_ += full_bytes * 8;
        const std::uint64_t tail = nbits % 8;
        if (tail) {
            const std::uint8_t last = src[full_bytes];
            for (std::uint64_t i = 0; i < tail; ++i) push_bit((last >> (7 - i)) & 1);
        }
        return;
    }
    // Unaligned: shift every source byte across the boundary.
    const std::uint64_t shift = offset;
    std::uint64_t remaining = nbits;
    std::size_t i = 0;
    while (remaining >= 8) {
        const std::uint8_t byte = src[i++];
        bytes_.back() |= static_cast<std::uint8_t>(byte >> shift);
        bytes_.push_back(static_cast<std::uint8_t>(byte << (8 - shift)));
        bit_len_ += 8;
        remaining -= 8;
    }
    if (remaining) {
        const std::uint8_t byte = src[i];
        for (std::uint64_t k = 0; k < remaining; ++k) push_bit((byte >> (7 - k)) & 1);
    }
}

void BitBuilder::append(const BitSequence& seq) {
    append_bytes(seq.bytes(), seq.bit_len());
}

BitSequence BitBuilder::take() {
    // Clear pad bits so the invariant holds regardless of append history.
    if ((bit_len_ & 7) != 0 && !bytes_.empty())
        bytes_.back() &= static_cast<std::uint8_t>(0xFF << (8 - (bit_len_ & 7)));
    auto shared = std::make_shared<std::vector<std::uint8_t>>(std::move(bytes_));
    BitSequence out(std::move(shared), bit_len_);
    bytes_ = {};
    bit_len_ = 0;
    return out;
}

BitSequence concat(const std::vector<BitSequence>& parts) {
    std::uint64_t total = 0;
    for (const auto& p : parts) total += p.bit_len();
    BitBuilder b(total);
    for (const auto& p : parts) b.append(p);
    return b.take();
}

std::uint64_t popcount_range(const std::uint8_t* data, std::uint64_t bit_lo, std::uint64_t bit_hi) {
    if (bit_hi <= bit_lo) return 0;
    std::uint64_t count = 0;
    std::uint64_t byte_lo = bit_lo >> 3;
    const std::uint64_t byte_hi = (bit_hi + 7) >> 3;

    std::uint8_t first_mask = static_cast<std::uint8_t>(0xFF >> (bit_lo & 7));
    std::uint8_t last_mask =
        (bit_hi & 7) ? static_cast<std::uint8_t>(0xFF << (8 - (bit_hi & 7))) : 0xFF;
    if (byte_hi - byte_lo == 1) {
        return std::popcount(static_cast<unsigned>(data[byte_lo] & first_mask & last_mask));
    }
    count += std::popcount(static_cast<unsigned>(data[byte_lo] & first_mask));
    ++byte_lo;

    std::uint64_t i = byte_lo;
    const std::uint64_t last = byte_hi - 1;
    // Word-at-a-time over the aligned middle.
    for (; i + 8 <= last; i += 8) {
        std::uint64_t w;
        std::memcpy(&w, data + i, 8);
        count += std::popcount(w);
    }
    for (; i < last; ++i) count += std::popcount(static_cast<unsigned>(data[i]));
    count += std::popcount(static_cast<unsigned>(data[last] & last_mask));
    return count;
}

} // namespace qaudit
