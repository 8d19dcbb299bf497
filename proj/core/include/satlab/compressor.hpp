#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "satlab/bitstring.hpp"

namespace satlab {

/// Lossless bit-string compressor standing in for a universal machine.
/// Compressed size (container header included) upper-bounds the Kolmogorov
/// complexity of the input up to a machine constant. Implementations are
/// stateless and safe to call concurrently.
class Compressor {
 public:
  virtual ~Compressor() = default;

  virtual std::string_view name() const = 0;
  virtual std::vector<std::uint8_t> compress(const BitString& input) const = 0;
  /// Throws FormatError on a corrupt stream.
  virtual BitString decompress(std::span<const std::uint8_t> stream) const = 0;
};

/// Binary arithmetic coder driven by Krichevsky-Trofimov counts. With
/// `context_bits` = 0 this is an order-0 model whose cost on an i.i.d.
/// Bernoulli string is L H(gamma) + (1/2) log2 L + O(1) bits. A positive
/// value conditions each bit on the previous `context_bits` bits.
class KtArithmeticCompressor final : public Compressor {
 public:
  explicit KtArithmeticCompressor(unsigned context_bits = 0);

  std::string_view name() const override { return name_; }
  std::vector<std::uint8_t> compress(const BitString& input) const override;
  BitString decompress(std::span<const std::uint8_t> stream) const override;

 private:
  unsigned context_bits_;
  std::string name_;
};

/// zlib deflate (level 9) over the MSB-first packed bytes.
class DeflateCompressor final : public Compressor {
 public:
  std::string_view name() const override { return "deflate"; }
  std::vector<std::uint8_t> compress(const BitString& input) const override;
  BitString decompress(std::span<const std::uint8_t> stream) const override;
};

/// Names accepted by make_compressor: "kt", "kt-o8", "deflate".
std::vector<std::string> compressor_names();

/// Throws PreconditionError for an unknown name.
std::unique_ptr<Compressor> make_compressor(std::string_view name);

}  // namespace satlab
