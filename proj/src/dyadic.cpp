#include "thompson/dyadic.hpp"

#include <cmath>
#include <utility>

#include "thompson/errors.hpp"

namespace thompson {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty integer in '" + std::string(whole) + "'");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw ParseError("bad integer in '" + std::string(whole) + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw ParseError("bad integer in '" + std::string(whole) + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

// log2 of a positive power of two, or -1.
long exact_log2(const Integer& value) {
  if (value <= 0) return -1;
  long bit = static_cast<long>(mpz_scan1(value.get_mpz_t(), 0));
  if (mpz_sizeinbase(value.get_mpz_t(), 2) != static_cast<std::size_t>(bit) + 1) return -1;
  return bit;
}

}  // namespace

Dyadic::Dyadic(Integer numerator, std::uint64_t exponent)
    : num_(std::move(numerator)), exp_(exponent) {
  canonicalize();
}

void Dyadic::canonicalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  if (exp_ == 0) return;
  std::uint64_t twos = mpz_scan1(num_.get_mpz_t(), 0);
  std::uint64_t drop = twos < exp_ ? twos : exp_;
  if (drop > 0) {
    mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), drop);
    exp_ -= drop;
  }
}

Dyadic Dyadic::pow2(long power) {
  if (power >= 0) {
    Integer n = 1;
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(power));
    return Dyadic(n, 0);
  }
  return Dyadic(Integer(1), static_cast<std::uint64_t>(-power));
}

Dyadic Dyadic::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Dyadic(parse_integer(text, text), 0);
  Integer num = parse_integer(text.substr(0, slash), text);
  std::string_view den = text.substr(slash + 1);
  if (den.size() > 2 && den.substr(0, 2) == "2^") {
    Integer e = parse_integer(den.substr(2), text);
    if (e < 0 || !e.fits_ulong_p()) throw ParseError("bad exponent in '" + std::string(text) + "'");
    return Dyadic(num, e.get_ui());
  }
  Integer d = parse_integer(den, text);
  long e = exact_log2(d);
  if (e < 0) throw ParseError("denominator is not a power of two in '" + std::string(text) + "'");
  return Dyadic(num, static_cast<std::uint64_t>(e));
}

Dyadic Dyadic::from_rational(const Rational& value) {
  long e = exact_log2(value.get_den());
  if (e < 0) throw NotThompson("non-dyadic value " + value.get_str());
  return Dyadic(value.get_num(), static_cast<std::uint64_t>(e));
}

Rational Dyadic::to_rational() const {
  Integer den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), exp_);
  Rational r(num_, den);
  r.canonicalize();
  return r;
}

double Dyadic::to_double() const {
  // mpz_get_d_2exp keeps precision for huge numerators.
  long e = 0;
  double mant = mpz_get_d_2exp(&e, num_.get_mpz_t());
  return std::ldexp(mant, static_cast<int>(e - static_cast<long>(exp_)));
}

Integer Dyadic::floor() const {
  Integer out;
  mpz_fdiv_q_2exp(out.get_mpz_t(), num_.get_mpz_t(), exp_);
  return out;
}

std::string Dyadic::to_string() const {
  if (exp_ == 0) return num_.get_str();
  Integer den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), exp_);
  return num_.get_str() + "/" + den.get_str();
}

std::string Dyadic::to_power_string() const {
  return num_.get_str() + "/2^" + std::to_string(exp_);
}

Dyadic Dyadic::operator-() const {
  Dyadic out = *this;
  out.num_ = -out.num_;
  return out;
}

namespace {

// Numerators of a and b over the common denominator 2^max(exp).
std::pair<Integer, Integer> aligned(const Dyadic& a, const Dyadic& b, std::uint64_t& exp) {
  exp = a.exponent() > b.exponent() ? a.exponent() : b.exponent();
  Integer x = a.numerator();
  Integer y = b.numerator();
  mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), exp - a.exponent());
  mpz_mul_2exp(y.get_mpz_t(), y.get_mpz_t(), exp - b.exponent());
  return {x, y};
}

}  // namespace

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  std::uint64_t exp = 0;
  auto [x, y] = aligned(a, b, exp);
  return Dyadic(x + y, exp);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  std::uint64_t exp = 0;
  auto [x, y] = aligned(a, b, exp);
  return Dyadic(x - y, exp);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
}

Dyadic Dyadic::scaled(long power) const {
  if (power <= 0) return Dyadic(num_, exp_ + static_cast<std::uint64_t>(-power));
  auto up = static_cast<std::uint64_t>(power);
  if (up <= exp_) return Dyadic(num_, exp_ - up);
  Integer n = num_;
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), up - exp_);
  return Dyadic(n, 0);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  std::uint64_t exp = 0;
  auto [x, y] = aligned(a, b, exp);
  int c = cmp(x, y);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

void to_json(nlohmann::json& j, const Dyadic& d) {
  // Numerators can exceed 64 bits; keep them as decimal strings.
  j = nlohmann::json{{"num", d.numerator().get_str()}, {"exp", d.exponent()}};
}

void from_json(const nlohmann::json& j, Dyadic& d) {
  const auto& num = j.at("num");
  Integer n = num.is_string() ? Integer(num.get<std::string>(), 10) : Integer(num.get<long>());
  d = Dyadic(n, j.at("exp").get<std::uint64_t>());
}

BinaryAddress::BinaryAddress(std::string_view bits) : bits_(bits) {
  for (char c : bits_) {
    if (c != 'L' && c != 'R') throw ParseError("address must be over {L,R}: '" + bits_ + "'");
  }
}

BinaryAddress BinaryAddress::child(Half h) const {
  BinaryAddress out = *this;
  out.bits_.push_back(static_cast<char>(h));
  return out;
}

BinaryAddress BinaryAddress::parent() const {
  BinaryAddress out = *this;
  out.bits_.pop_back();
  return out;
}

BinaryAddress BinaryAddress::sibling() const {
  BinaryAddress out = *this;
  out.bits_.back() = out.bits_.back() == 'L' ? 'R' : 'L';
  return out;
}

BinaryAddress BinaryAddress::concat(const BinaryAddress& suffix) const {
  BinaryAddress out = *this;
  out.bits_ += suffix.bits_;
  return out;
}

BinaryAddress BinaryAddress::suffix_after(const BinaryAddress& prefix) const {
  BinaryAddress out;
  out.bits_ = bits_.substr(prefix.bits_.size());
  return out;
}

bool BinaryAddress::is_prefix_of(const BinaryAddress& other) const {
  return other.bits_.size() >= bits_.size() &&
         other.bits_.compare(0, bits_.size(), bits_) == 0;
}

Integer BinaryAddress::index() const {
  Integer k = 0;
  for (char c : bits_) {
    k <<= 1;
    if (c == 'R') k += 1;
  }
  return k;
}

BinaryAddress BinaryAddress::from_index(std::size_t depth, const Integer& index) {
  BinaryAddress out;
  out.bits_.assign(depth, 'L');
  for (std::size_t i = 0; i < depth; ++i) {
    if (mpz_tstbit(index.get_mpz_t(), depth - 1 - i)) out.bits_[i] = 'R';
  }
  return out;
}

DyadicInterval::DyadicInterval(Dyadic lo_, Dyadic hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (!(lo < hi)) throw Malformed("interval needs lo < hi, got [" + lo.to_string() + ", " + hi.to_string() + "]");
}

bool DyadicInterval::is_standard() const {
  Dyadic w = width();
  if (w.numerator() != 1) return false;
  if (lo.sign() < 0 || hi > Dyadic(1)) return false;
  // lo must be a multiple of the width.
  return lo.exponent() <= w.exponent();
}

std::string DyadicInterval::to_string() const {
  return "[" + lo.to_string() + ", " + hi.to_string() + "]";
}

DyadicInterval interval_of_address(const BinaryAddress& a) {
  Dyadic lo(a.index(), a.depth());
  return {lo, lo + Dyadic(Integer(1), a.depth())};
}

BinaryAddress address_of_interval(const DyadicInterval& interval) {
  if (!interval.is_standard()) throw NotStandard(interval.to_string());
  std::uint64_t depth = interval.width().exponent();
  Integer k = interval.lo.numerator();
  mpz_mul_2exp(k.get_mpz_t(), k.get_mpz_t(), depth - interval.lo.exponent());
  return BinaryAddress::from_index(depth, k);
}

}  // namespace thompson
