#include "satlab/bitstring.hpp"

#include <bit>

#include "satlab/errors.hpp"

namespace satlab {

BitString::BitString(std::size_t size, bool value)
    : size_(size), words_((size + 63) / 64, value ? ~0ULL : 0ULL) {
  trim_tail();
}

BitString BitString::from_string(std::string_view text) {
  BitString out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      out.set(i, true);
    } else if (text[i] != '0') {
      throw PreconditionError("bit string contains '" + std::string(1, text[i]) + "' at offset " +
                              std::to_string(i));
    }
  }
  return out;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes, std::size_t size) {
  if (size > bytes.size() * 8) throw PreconditionError("bit length exceeds byte buffer");
  BitString out(size);
  for (std::size_t i = 0; i < size; ++i) out.set(i, (bytes[i >> 3] >> (7 - (i & 7))) & 1u);
  return out;
}

void BitString::set(std::size_t i, bool value) noexcept {
  const std::uint64_t mask = 1ULL << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

void BitString::push_back(bool value) {
  if ((size_ & 63) == 0) words_.push_back(0);
  ++size_;
  set(size_ - 1, value);
}

void BitString::append(const BitString& other) {
  words_.reserve((size_ + other.size_ + 63) / 64);
  for (std::size_t i = 0; i < other.size_; ++i) push_back(other.get(i));
}

std::size_t BitString::popcount() const noexcept {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

void BitString::trim_tail() noexcept {
  if (const std::size_t rem = size_ & 63; rem != 0 && !words_.empty()) {
    words_.back() &= (1ULL << rem) - 1;
  }
}

std::string BitString::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) out[i] = '1';
  }
  return out;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
  std::vector<std::uint8_t> out((size_ + 7) / 8, 0);
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) out[i >> 3] |= static_cast<std::uint8_t>(0x80u >> (i & 7));
  }
  return out;
}

}  // namespace satlab
