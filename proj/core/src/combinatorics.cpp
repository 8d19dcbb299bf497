#include "satlab/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>

#include "satlab/errors.hpp"

namespace satlab {
namespace {

constexpr double kLn2 = 0.693147180559945309417232121458;

// Exact (c * a) / b where the quotient is known to be an integer.
std::uint64_t mul_div(std::uint64_t c, std::uint64_t a, std::uint64_t b) {
  std::uint64_t product = 0;
  if (!__builtin_mul_overflow(c, a, &product)) return product / b;
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(c) * a / b);
}
BigInt mul_div(const BigInt& c, std::uint64_t a, std::uint64_t b) { return c * a / b; }

// Walks the string left to right keeping c = C(r, j) for the r remaining
// positions and j remaining ones. The count of completions with a '0' at the
// current position is C(r-1, j) = c (r - j) / r.
template <typename Int>
BitString unrank_impl(std::uint64_t length, std::uint64_t ones, Int count, Int index) {
  BitString out(length);
  std::uint64_t r = length;
  std::uint64_t j = ones;
  std::uint64_t pos = 0;
  while (r > 0) {
    if (j == 0) break;
    if (j == r) {
      for (; pos < length; ++pos) out.set(pos, true);
      break;
    }
    Int zeros_first = mul_div(count, r - j, r);
    if (index <= zeros_first) {
      count = std::move(zeros_first);
    } else {
      index -= zeros_first;
      out.set(pos, true);
      count = mul_div(count, j, r);
      --j;
    }
    --r;
    ++pos;
  }
  return out;
}

template <typename Int>
Int rank_impl(const BitString& s, std::uint64_t ones, Int count) {
  Int index = 1;
  std::uint64_t r = s.size();
  std::uint64_t j = ones;
  for (std::uint64_t pos = 0; pos < s.size() && j > 0 && j < r; ++pos, --r) {
    Int zeros_first = mul_div(count, r - j, r);
    if (s.get(pos)) {
      index += zeros_first;
      count = mul_div(count, j, r);
      --j;
    } else {
      count = std::move(zeros_first);
    }
  }
  return index;
}

bool fits_u64(const BigInt& v) { return v < (BigInt(1) << 63); }

// C(n, j) for values known to stay below 2^63.
std::uint64_t small_binomial(std::uint64_t n, std::uint64_t j) {
  if (j > n) return 0;
  j = std::min(j, n - j);
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= j; ++i) c = mul_div(c, n - j + i, i);
  return c;
}

// For few ones the walk above spends most of its time on zeros. Here each one
// is placed directly: with j ones left, a one at position pos skips the
// C(L - pos - 1, j) strings that have a zero there, and the first position
// where the index exceeds that count is found by binary search.
bool prefer_sparse(std::uint64_t length, std::uint64_t ones) {
  const auto log_len = static_cast<std::uint64_t>(std::bit_width(length));
  return ones * ones * (log_len + 1) < length;
}

BitString unrank_sparse(std::uint64_t length, std::uint64_t ones, std::uint64_t index) {
  BitString out(length);
  std::uint64_t cur = 0;
  for (std::uint64_t j = ones; j > 0; --j) {
    std::uint64_t lo = cur;
    std::uint64_t hi = length - j;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (index > small_binomial(length - mid - 1, j)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    index -= small_binomial(length - lo - 1, j);
    out.set(lo, true);
    cur = lo + 1;
  }
  return out;
}

std::uint64_t rank_sparse(const BitString& s, std::uint64_t ones) {
  std::uint64_t index = 1;
  std::uint64_t j = ones;
  const auto words = s.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    for (std::uint64_t bits = words[w]; bits != 0; bits &= bits - 1) {
      const std::uint64_t pos = w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits));
      index += small_binomial(s.size() - pos - 1, j);
      --j;
    }
  }
  return index;
}

BitString complement(BitString s) {
  for (auto& w : s.mutable_words()) w = ~w;
  s.trim_tail();
  return s;
}

// 64-bit entry points. Complementing reverses lexicographic order, so strings
// with few zeros reuse the sparse path on their complement.
BitString unrank_u64(std::uint64_t length, std::uint64_t ones, std::uint64_t count, std::uint64_t index) {
  if (prefer_sparse(length, ones)) return unrank_sparse(length, ones, index);
  if (prefer_sparse(length, length - ones)) {
    return complement(unrank_sparse(length, length - ones, count - index + 1));
  }
  return unrank_impl<std::uint64_t>(length, ones, count, index);
}

std::uint64_t rank_u64(const BitString& s, std::uint64_t ones, std::uint64_t count) {
  if (prefer_sparse(s.size(), ones)) return rank_sparse(s, ones);
  if (prefer_sparse(s.size(), s.size() - ones)) {
    return count - rank_sparse(complement(s), s.size() - ones) + 1;
  }
  return rank_impl<std::uint64_t>(s, ones, count);
}

}  // namespace

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("binary_entropy needs p in [0, 1], got " + std::to_string(p));
  if (p == 0.0 || p == 1.0) return 0.0;
  return (-p * std::log(p) - (1.0 - p) * std::log1p(-p)) / kLn2;
}

double scaled_entropy_bits(double k, unsigned n) {
  const double total = std::ldexp(1.0, static_cast<int>(n));
  if (!(k >= 0.0 && k <= total)) throw PreconditionError("k must lie in [0, 2^n]");
  // H is symmetric, so work with the smaller side for accuracy.
  const double small = std::min(k, total - k);
  if (small == 0.0) return 0.0;
  const double p = std::ldexp(small, -static_cast<int>(n));
  const double rest = total - small;
  return (small * (static_cast<double>(n) - std::log2(small)) - rest * std::log1p(-p) / kLn2);
}

BigInt binomial(std::uint64_t length, std::uint64_t ones) {
  if (ones > length) {
    throw PreconditionError("binomial needs k <= L, got L=" + std::to_string(length) + " k=" + std::to_string(ones));
  }
  const std::uint64_t k = std::min(ones, length - ones);
  // Each partial product is C(L - k + i, i), so the division is exact. Stay in
  // 128-bit arithmetic until the value leaves 64 bits.
  std::uint64_t small = 1;
  std::uint64_t i = 1;
  for (; i <= k; ++i) {
    const unsigned __int128 next = static_cast<unsigned __int128>(small) * (length - k + i) / i;
    if (next > std::numeric_limits<std::uint64_t>::max()) break;
    small = static_cast<std::uint64_t>(next);
  }
  BigInt c = small;
  for (; i <= k; ++i) c = c * (length - k + i) / i;
  return c;
}

double log2_big(const BigInt& value) {
  if (value <= 0) throw PreconditionError("log2 of a non-positive integer");
  const std::size_t msb = boost::multiprecision::msb(value);
  if (msb < 62) return std::log2(value.convert_to<double>());
  const std::size_t shift = msb - 60;
  const BigInt top = value >> shift;
  return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

KOnesIndex KOnesIndex::make(std::uint64_t length, std::uint64_t ones, BigInt index) {
  if (ones > length) {
    throw PreconditionError("ones count " + std::to_string(ones) + " exceeds length " + std::to_string(length));
  }
  const BigInt count = binomial(length, ones);
  if (index < 1 || index > count) {
    throw PreconditionError("index " + index.str() + " out of range [1, " + count.str() + "] for L=" +
                            std::to_string(length) + " k=" + std::to_string(ones));
  }
  return KOnesIndex{length, ones, std::move(index)};
}

BitString unrank_k_ones(const KOnesIndex& where) {
  const BigInt count = binomial(where.length, where.ones);
  if (fits_u64(count)) {
    return unrank_u64(where.length, where.ones, count.convert_to<std::uint64_t>(),
                      where.index.convert_to<std::uint64_t>());
  }
  return unrank_impl<BigInt>(where.length, where.ones, count, where.index);
}

BitString unrank_k_ones(std::uint64_t length, std::uint64_t ones, const BigInt& index) {
  return unrank_k_ones(KOnesIndex::make(length, ones, index));
}

BigInt rank_k_ones(const BitString& s) {
  const std::uint64_t ones = s.popcount();
  const BigInt count = binomial(s.size(), ones);
  if (fits_u64(count)) return BigInt(rank_u64(s, ones, count.convert_to<std::uint64_t>()));
  return rank_impl<BigInt>(s, ones, count);
}

BoundReport program1_length_bound(double formula_bits, unsigned n) {
  if (!(formula_bits >= 0.0)) throw PreconditionError("formula size must be non-negative");
  return {static_cast<double>(n) + formula_bits, true};
}

BoundReport program2_length_bound(std::uint64_t length, std::uint64_t ones) {
  if (length == 0) throw PreconditionError("length must be positive");
  return {std::log2(static_cast<double>(length)) + log2_big(binomial(length, ones)), true};
}

BoundReport k_complexity_bound(unsigned n, std::uint64_t ones) {
  if (n > 63) throw PreconditionError("n must be <= 63");
  if (ones > (std::uint64_t{1} << n)) throw PreconditionError("k exceeds 2^n");
  return {scaled_entropy_bits(static_cast<double>(ones), n) + 0.5 * n, true};
}

std::vector<CurvePoint> figure1_curve(std::uint64_t ones, unsigned n_min, unsigned n_max) {
  if (ones == 0) throw PreconditionError("figure1_curve needs k >= 1");
  if (n_min > n_max) throw PreconditionError("n_min must not exceed n_max");
  if (n_max > 63) throw PreconditionError("n_max must be <= 63");
  if (n_min < 4 || ones > (std::uint64_t{1} << (n_min - 4))) {
    throw PreconditionError("figure1_curve needs k <= 2^(n_min - 4)");
  }
  std::vector<CurvePoint> curve;
  curve.reserve(n_max - n_min + 1);
  for (unsigned n = n_min; n <= n_max; ++n) curve.push_back({n, scaled_entropy_bits(static_cast<double>(ones), n)});
  return curve;
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << "n,y\n" << std::setprecision(6);
  for (const auto& pt : curve) out << pt.n << ',' << pt.y << '\n';
  out.flags(flags);
  out.precision(prec);
}

}  // namespace satlab
