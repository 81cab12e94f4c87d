#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "errors.hpp"

namespace clo {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Builds num/den as a reduced rational with positive denominator.
Rational make_rational(const BigInt& num, const BigInt& den);

// Always renders "num/den", even for integers ("3" -> "3/1").
std::string fraction_string(const Rational& q);

// Accepts "num/den", plain integers, and exact decimal literals ("0.25").
Rational parse_fraction(const std::string& text);

BigInt binomial(std::uint64_t n, std::uint64_t k);

// base * (base-1) * ... * (base-count+1); count == 0 gives 1.
BigInt falling_factorial(std::uint64_t base, std::uint64_t count);

BigInt integer_pow(const BigInt& base, std::uint64_t exp);

// Number of ways to partition an n-element set into between min_parts and
// max_parts nonempty unlabeled blocks.
BigInt partition_count(std::uint64_t n, std::uint64_t min_parts, std::uint64_t max_parts);

std::uint64_t splitmix64(std::uint64_t x);

// Order-sensitive combination of several seeds into one.
std::uint64_t mix64(std::initializer_list<std::uint64_t> parts);

// Uniform draw from [0, n) by rejection; stable across platforms for any
// engine producing uniform uint64 values.
template <typename Rng>
std::uint64_t bounded_draw(Rng& rng, std::uint64_t n) {
  if (n == 0) fail(ErrorKind::invalid_argument, "bounded_draw: empty range");
  std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

class DynBitset {
public:
  DynBitset() = default;
  explicit DynBitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i, bool value = true) {
    std::uint64_t mask = std::uint64_t(1) << (i & 63);
    if (value)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }
  std::size_t count() const;
  bool any() const;
  void clear();

  DynBitset& operator|=(const DynBitset& other);
  DynBitset& operator&=(const DynBitset& other);
  bool subset_of(const DynBitset& other) const;
  bool intersects(const DynBitset& other) const;
  bool operator==(const DynBitset& other) const = default;

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace clo
