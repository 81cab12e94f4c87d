#include "basics.hpp"

#include <bit>
#include <cctype>

namespace clo {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(ErrorKind::invalid_argument, "rational with zero denominator");
  Rational q(num);
  q /= Rational(den);
  return q;
}

std::string fraction_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_fraction(const std::string& text) {
  auto bad = [&]() -> Rational {
    fail(ErrorKind::schema, "cannot parse fraction: '" + text + "'");
  };
  if (text.empty()) bad();
  auto digits = [](const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  // strip leading zeros so the BigInt constructor never sees an octal prefix
  auto from_digits = [](const std::string& s) {
    std::size_t i = 0;
    while (i + 1 < s.size() && s[i] == '0') ++i;
    return BigInt(s.substr(i));
  };
  std::string body = text;
  bool neg = false;
  if (body[0] == '-' || body[0] == '+') {
    neg = body[0] == '-';
    body = body.substr(1);
  }
  Rational q;
  auto slash = body.find('/');
  auto dot = body.find('.');
  if (slash != std::string::npos) {
    std::string n = body.substr(0, slash), d = body.substr(slash + 1);
    if (!digits(n) || !digits(d)) bad();
    BigInt den = from_digits(d);
    if (den == 0) bad();
    q = make_rational(from_digits(n), den);
  } else if (dot != std::string::npos) {
    std::string whole = body.substr(0, dot), frac = body.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!digits(whole) || !digits(frac)) bad();
    q = make_rational(from_digits(whole + frac), integer_pow(10, frac.size()));
  } else {
    if (!digits(body)) bad();
    q = Rational(from_digits(body));
  }
  return neg ? -q : q;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r *= BigInt(n - i);
    r /= BigInt(i + 1);
  }
  return r;
}

BigInt falling_factorial(std::uint64_t base, std::uint64_t count) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (i > base) return 0;
    r *= BigInt(base - i);
  }
  return r;
}

BigInt integer_pow(const BigInt& base, std::uint64_t exp) {
  BigInt r = 1, b = base;
  while (exp) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

BigInt partition_count(std::uint64_t n, std::uint64_t min_parts, std::uint64_t max_parts) {
  if (max_parts > n) max_parts = n;
  if (min_parts > max_parts) return 0;
  // Stirling numbers of the second kind, rows up to n.
  std::vector<std::vector<BigInt>> s(n + 1, std::vector<BigInt>(max_parts + 1, 0));
  s[0][0] = 1;
  for (std::uint64_t i = 1; i <= n; ++i)
    for (std::uint64_t j = 1; j <= max_parts && j <= i; ++j)
      s[i][j] = s[i - 1][j - 1] + BigInt(j) * s[i - 1][j];
  BigInt total = 0;
  for (std::uint64_t j = min_parts; j <= max_parts; ++j) total += s[n][j];
  return total;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix64(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p));
  return h;
}

std::size_t DynBitset::count() const {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += std::popcount(w);
  return c;
}

bool DynBitset::any() const {
  for (std::uint64_t w : words_)
    if (w) return true;
  return false;
}

void DynBitset::clear() {
  for (auto& w : words_) w = 0;
}

DynBitset& DynBitset::operator|=(const DynBitset& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

DynBitset& DynBitset::operator&=(const DynBitset& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

bool DynBitset::subset_of(const DynBitset& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

bool DynBitset::intersects(const DynBitset& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

}  // namespace clo
