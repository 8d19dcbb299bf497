#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace satlab {

/// Packed sequence of bits. Bit i lives in word i/64 at position i%64; unused
/// high bits of the last word are always zero.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t size, bool value = false);

  /// Parses ASCII '0'/'1'; index 0 is the first character.
  static BitString from_string(std::string_view text);
  /// Unpacks bytes MSB-first, the order used by `to_bytes`.
  static BitString from_bytes(std::span<const std::uint8_t> bytes, std::size_t size);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  bool operator[](std::size_t i) const noexcept { return get(i); }
  void set(std::size_t i, bool value) noexcept;
  void push_back(bool value);
  void append(const BitString& other);

  std::size_t popcount() const noexcept;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> mutable_words() noexcept { return words_; }
  /// Clears the bits past size() in the last word after bulk word writes.
  void trim_tail() noexcept;

  std::string to_string() const;
  std::vector<std::uint8_t> to_bytes() const;

  friend bool operator==(const BitString& a, const BitString& b) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace satlab
