#include "satlab/compressor.hpp"

#include <zlib.h>

#include "satlab/errors.hpp"

namespace satlab {
namespace {

void put_varint(std::vector<std::uint8_t>& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint64_t get_varint(std::span<const std::uint8_t> in, std::size_t& pos) {
  std::uint64_t v = 0;
  for (unsigned shift = 0; shift < 64; shift += 7) {
    if (pos >= in.size()) throw FormatError("truncated length header");
    const std::uint8_t b = in[pos++];
    v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
    if ((b & 0x80) == 0) return v;
  }
  throw FormatError("length header overflows 64 bits");
}

// Probability of a 1 under KT counts, scaled to (0, 2^32).
std::uint32_t kt_probability(std::uint32_t ones, std::uint32_t total) {
  // Counts stay below 2^30 (see Counts::update), so the shift fits in 64 bits.
  const std::uint64_t num = (2 * static_cast<std::uint64_t>(ones) + 1) << 32;
  const std::uint64_t den = 2 * static_cast<std::uint64_t>(total) + 2;
  std::uint64_t p = num / den;
  if (p < 1) p = 1;
  if (p > 0xffffffffULL) p = 0xffffffffULL;
  return static_cast<std::uint32_t>(p);
}

struct Counts {
  std::uint32_t ones = 0;
  std::uint32_t total = 0;

  void update(bool bit) {
    ones += bit;
    ++total;
    // Halving keeps counts in range on very long inputs.
    if (total == 0x40000000u) {
      ones = (ones + 1) / 2;
      total /= 2;
    }
  }
};

class KtModel {
 public:
  explicit KtModel(unsigned context_bits)
      : mask_((1u << context_bits) - 1), counts_(std::size_t{1} << context_bits) {}

  std::uint32_t p1() const { return kt_probability(counts_[ctx_].ones, counts_[ctx_].total); }
  void update(bool bit) {
    counts_[ctx_].update(bit);
    ctx_ = ((ctx_ << 1) | static_cast<std::uint32_t>(bit)) & mask_;
  }

 private:
  std::uint32_t mask_;
  std::uint32_t ctx_ = 0;
  std::vector<Counts> counts_;
};

// Carry-less binary arithmetic coder over a 32-bit interval [x1, x2].
class Encoder {
 public:
  explicit Encoder(std::vector<std::uint8_t>& out) : out_(out) {}

  void encode(bool bit, std::uint32_t p1) {
    const std::uint32_t mid = x1_ + static_cast<std::uint32_t>((static_cast<std::uint64_t>(x2_ - x1_) * p1) >> 32);
    if (bit) {
      x2_ = mid;
    } else {
      x1_ = mid + 1;
    }
    while (((x1_ ^ x2_) & 0xff000000u) == 0) {
      out_.push_back(static_cast<std::uint8_t>(x2_ >> 24));
      x1_ <<= 8;
      x2_ = (x2_ << 8) | 0xffu;
    }
  }
  // One byte suffices: the decoder pads with 0xff, which lands inside [x1, x2].
  void flush() { out_.push_back(static_cast<std::uint8_t>(x1_ >> 24)); }

 private:
  std::vector<std::uint8_t>& out_;
  std::uint32_t x1_ = 0;
  std::uint32_t x2_ = 0xffffffffu;
};

class Decoder {
 public:
  Decoder(std::span<const std::uint8_t> in, std::size_t pos) : in_(in), pos_(pos) {
    for (int i = 0; i < 4; ++i) x_ = (x_ << 8) | next();
  }

  bool decode(std::uint32_t p1) {
    const std::uint32_t mid = x1_ + static_cast<std::uint32_t>((static_cast<std::uint64_t>(x2_ - x1_) * p1) >> 32);
    const bool bit = x_ <= mid;
    if (bit) {
      x2_ = mid;
    } else {
      x1_ = mid + 1;
    }
    while (((x1_ ^ x2_) & 0xff000000u) == 0) {
      x1_ <<= 8;
      x2_ = (x2_ << 8) | 0xffu;
      x_ = (x_ << 8) | next();
    }
    return bit;
  }

 private:
  std::uint32_t next() { return pos_ < in_.size() ? in_[pos_++] : 0xffu; }

  std::span<const std::uint8_t> in_;
  std::size_t pos_;
  std::uint32_t x1_ = 0;
  std::uint32_t x2_ = 0xffffffffu;
  std::uint32_t x_ = 0;
};

}  // namespace

KtArithmeticCompressor::KtArithmeticCompressor(unsigned context_bits)
    : context_bits_(context_bits), name_(context_bits == 0 ? "kt" : "kt-o" + std::to_string(context_bits)) {
  if (context_bits > 20) throw PreconditionError("context order must be <= 20");
}

std::vector<std::uint8_t> KtArithmeticCompressor::compress(const BitString& input) const {
  std::vector<std::uint8_t> out;
  put_varint(out, input.size());
  if (input.empty()) return out;
  KtModel model(context_bits_);
  Encoder enc(out);
  for (std::size_t i = 0; i < input.size(); ++i) {
    const bool bit = input.get(i);
    enc.encode(bit, model.p1());
    model.update(bit);
  }
  enc.flush();
  return out;
}

BitString KtArithmeticCompressor::decompress(std::span<const std::uint8_t> stream) const {
  std::size_t pos = 0;
  const std::uint64_t size = get_varint(stream, pos);
  // Bounds the allocation below when the header is corrupt.
  if (size > (std::uint64_t{1} << 40)) throw FormatError("declared length too large");
  BitString out(size);
  if (size == 0) return out;
  KtModel model(context_bits_);
  Decoder dec(stream, pos);
  for (std::size_t i = 0; i < size; ++i) {
    const bool bit = dec.decode(model.p1());
    out.set(i, bit);
    model.update(bit);
  }
  return out;
}

std::vector<std::uint8_t> DeflateCompressor::compress(const BitString& input) const {
  const std::vector<std::uint8_t> raw = input.to_bytes();
  std::vector<std::uint8_t> out;
  put_varint(out, input.size());
  const std::size_t header = out.size();
  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  out.resize(header + bound);
  if (::compress2(out.data() + header, &bound, raw.data(), static_cast<uLong>(raw.size()), 9) != Z_OK) {
    throw ContractViolation("zlib compress2 failed");
  }
  out.resize(header + bound);
  return out;
}

BitString DeflateCompressor::decompress(std::span<const std::uint8_t> stream) const {
  std::size_t pos = 0;
  const std::uint64_t size = get_varint(stream, pos);
  if (size > (std::uint64_t{1} << 40)) throw FormatError("declared length too large");
  std::vector<std::uint8_t> raw((size + 7) / 8);
  uLongf len = static_cast<uLongf>(raw.size());
  const int rc = ::uncompress(raw.data(), &len, stream.data() + pos, static_cast<uLong>(stream.size() - pos));
  if (rc != Z_OK || len != raw.size()) throw FormatError("corrupt deflate stream");
  return BitString::from_bytes(raw, size);
}

std::vector<std::string> compressor_names() { return {"kt", "kt-o8", "deflate"}; }

std::unique_ptr<Compressor> make_compressor(std::string_view name) {
  if (name == "kt") return std::make_unique<KtArithmeticCompressor>(0);
  if (name == "kt-o8") return std::make_unique<KtArithmeticCompressor>(8);
  if (name == "deflate") return std::make_unique<DeflateCompressor>();
  throw PreconditionError("unknown compressor '" + std::string(name) + "' (expected kt, kt-o8 or deflate)");
}

}  // namespace satlab
