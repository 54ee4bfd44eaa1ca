#include "thompson/cantor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <cctype>

#include "thompson/errors.hpp"
#include "thompson/numeric.hpp"

namespace thompson {

namespace {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto ok = !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= '0' && c <= '9') || c == '/' || c == '-';
  });
  mpq_class r;
  if (!ok || r.set_str(s, 10) != 0 || r.get_den() == 0) throw ParseError("bad rational '" + s + "'");
  r.canonicalize();
  return r;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Rational pow_rational(const Rational& base, std::uint64_t e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// |I_k| = 2^-k prod (1 - q_i), by iterating the construction one level at a time.
Rational length_at_depth(const CantorParams& w, std::uint64_t k) {
  Rational len = 1;
  for (std::uint64_t i = 1; i <= k; ++i) len = (len - w.q(i) * len) / 2;
  return len;
}

constexpr std::uint64_t kMaxIndexedDepth = 62;

void check_index(std::uint64_t k, std::uint64_t j) {
  if (k > kMaxIndexedDepth) throw IndexOutOfRange("depth " + std::to_string(k) + " too large");
  if (j < 1 || j > (std::uint64_t{1} << k)) {
    throw IndexOutOfRange("index " + std::to_string(j) + " at depth " + std::to_string(k));
  }
}

}  // namespace

CantorParams CantorParams::explicit_sequence(std::vector<Rational> prefix, bool repeat_last,
                                             std::optional<Rational> delta) {
  if (prefix.empty()) throw Malformed("explicit sequence needs at least one term");
  CantorParams w;
  w.family_ = OmegaFamily::Explicit;
  for (auto& q : prefix) q.canonicalize();
  w.prefix_ = std::move(prefix);
  w.repeat_last_ = repeat_last;
  w.delta_ = delta ? *delta : *std::min_element(w.prefix_.begin(), w.prefix_.end());
  w.check();
  return w;
}

CantorParams CantorParams::geometric(Rational scale, Rational ratio) {
  CantorParams w;
  w.family_ = OmegaFamily::Geometric;
  w.scale_ = scale;
  w.ratio_ = ratio;
  if (scale <= 0 || ratio <= 0 || ratio > 1 || scale * ratio >= 1) {
    throw Malformed("geometric family needs scale > 0, 0 < ratio <= 1, scale*ratio < 1");
  }
  w.delta_ = 1 - scale * ratio;
  w.check();
  return w;
}

CantorParams CantorParams::omega_k(int k) {
  if (k < 1) throw Malformed("omega_k needs k >= 1");
  CantorParams w;
  w.family_ = OmegaFamily::OmegaK;
  w.k_ = k;
  // q_n >= 1/2 with equality on an initial stretch; keep delta just below.
  w.delta_ = Rational(1, 2) - Rational(1, 1 << 20);
  w.check();
  return w;
}

void CantorParams::check() const {
  if (delta_ <= 0 || delta_ >= 1) throw Malformed("delta must lie in (0,1)");
  if (family_ == OmegaFamily::Explicit) {
    for (const auto& q : prefix_) {
      if (q <= 0 || q >= 1) throw Malformed("q_n must lie in (0,1), got " + q.get_str());
      if (q < delta_) throw Malformed("delta " + delta_.get_str() + " exceeds q_n = " + q.get_str());
    }
  } else if (family_ == OmegaFamily::Geometric) {
    if (delta_ > 1 - scale_ * ratio_) throw Malformed("delta exceeds q_1");
  } else if (delta_ > Rational(1, 2)) {
    throw Malformed("delta exceeds inf q_n = 1/2");
  }
}

CantorParams CantorParams::parse(std::string_view spec) {
  if (!spec.empty() && spec.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(spec);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("omega JSON: ") + e.what());
    }
    return cantor_params_from_json(j);
  }
  std::optional<Rational> delta;
  auto at = spec.find('@');
  if (at != std::string_view::npos) {
    delta = parse_rational(spec.substr(at + 1));
    spec = spec.substr(0, at);
  }
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw ParseError("omega spec needs family:params, got '" + std::string(spec) + "'");
  std::string_view family = spec.substr(0, colon);
  std::string_view params = spec.substr(colon + 1);
  CantorParams w;
  if (family == "omega_k") {
    std::string digits(params);
    if (digits.empty() || digits.size() > 3 || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      throw ParseError("omega_k needs a positive integer k");
    }
    w = omega_k(std::stoi(digits));
  } else if (family == "geometric") {
    auto parts = split(params, ',');
    if (parts.size() != 2) throw ParseError("geometric needs scale,ratio");
    w = geometric(parse_rational(parts[0]), parse_rational(parts[1]));
  } else if (family == "explicit") {
    auto parts = split(params, ',');
    bool repeat = false;
    if (!parts.empty() && parts.back() == "...") {
      repeat = true;
      parts.pop_back();
    }
    std::vector<Rational> prefix;
    for (auto p : parts) prefix.push_back(parse_rational(p));
    return explicit_sequence(std::move(prefix), repeat, delta);
  } else {
    throw ParseError("unknown omega family '" + std::string(family) + "'");
  }
  if (delta) {
    w.delta_ = *delta;
    w.check();
  }
  return w;
}

Rational CantorParams::q(std::uint64_t n) const {
  if (n < 1) throw IndexOutOfRange("q_n is 1-based");
  switch (family_) {
    case OmegaFamily::Explicit:
      if (n <= prefix_.size()) return prefix_[n - 1];
      if (repeat_last_) return prefix_.back();
      throw IndexOutOfRange("q_" + std::to_string(n) + " beyond the explicit prefix");
    case OmegaFamily::Geometric:
      return 1 - scale_ * pow_rational(ratio_, n);
    case OmegaFamily::OmegaK:
      return Rational(q_double(n));
  }
  return 0;
}

double CantorParams::q_double(std::uint64_t n) const {
  if (family_ == OmegaFamily::OmegaK) {
    if (n < 1) throw IndexOutOfRange("q_n is 1-based");
    return 1.0 - 0.5 / iterated_log(k_, static_cast<double>(n));
  }
  return q(n).get_d();
}

double CantorParams::one_minus_q_double(std::uint64_t n) const {
  return std::exp(log_one_minus_q(n));
}

double CantorParams::log_one_minus_q(std::uint64_t n) const {
  switch (family_) {
    case OmegaFamily::OmegaK:
      if (n < 1) throw IndexOutOfRange("q_n is 1-based");
      return -std::log(2.0 * iterated_log(k_, static_cast<double>(n)));
    case OmegaFamily::Geometric:
      return log_rational(scale_) + static_cast<double>(n) * log_rational(ratio_);
    case OmegaFamily::Explicit:
      return log_rational(1 - q(n));
  }
  return 0.0;
}

std::optional<std::uint64_t> CantorParams::length() const {
  if (family_ == OmegaFamily::Explicit && !repeat_last_) return prefix_.size();
  return std::nullopt;
}

bool CantorParams::nondecreasing_certified() const {
  if (family_ != OmegaFamily::Explicit) return true;
  return std::is_sorted(prefix_.begin(), prefix_.end());
}

std::string CantorParams::describe() const {
  std::string out;
  switch (family_) {
    case OmegaFamily::OmegaK:
      out = "omega_k:" + std::to_string(k_);
      break;
    case OmegaFamily::Geometric:
      out = "geometric:" + scale_.get_str() + "," + ratio_.get_str();
      break;
    case OmegaFamily::Explicit:
      out = "explicit:";
      for (std::size_t i = 0; i < prefix_.size(); ++i) out += (i ? "," : "") + prefix_[i].get_str();
      if (repeat_last_) out += ",...";
      break;
  }
  return out + "@" + delta_.get_str();
}

void to_json(nlohmann::json& j, const CantorParams& w) {
  switch (w.family()) {
    case OmegaFamily::OmegaK:
      j = {{"family", "omega_k"}, {"k", w.k()}};
      break;
    case OmegaFamily::Geometric:
      j = {{"family", "geometric"}, {"scale", w.scale().get_str()}, {"ratio", w.ratio().get_str()}};
      break;
    case OmegaFamily::Explicit: {
      std::vector<std::string> q;
      for (const auto& v : w.prefix()) q.push_back(v.get_str());
      j = {{"family", "explicit"}, {"q", q}, {"repeat_last", w.repeats_last()}};
      break;
    }
  }
  j["delta"] = w.delta().get_str();
}

CantorParams cantor_params_from_json(const nlohmann::json& j) {
  try {
    std::string family = j.at("family").get<std::string>();
    std::optional<Rational> delta;
    if (j.contains("delta")) delta = parse_rational(j.at("delta").get<std::string>());
    std::string spec;
    if (family == "omega_k") {
      spec = "omega_k:" + std::to_string(j.at("k").get<int>());
    } else if (family == "geometric") {
      spec = "geometric:" + j.at("scale").get<std::string>() + "," + j.at("ratio").get<std::string>();
    } else if (family == "explicit") {
      std::vector<Rational> prefix;
      for (const auto& q : j.at("q")) prefix.push_back(parse_rational(q.get<std::string>()));
      return CantorParams::explicit_sequence(std::move(prefix), j.value("repeat_last", false), delta);
    } else {
      throw ParseError("unknown omega family '" + family + "'");
    }
    if (delta) spec += "@" + delta->get_str();
    return CantorParams::parse(spec);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("omega JSON: ") + e.what());
  }
}

CantorInterval interval(const CantorParams& w, std::uint64_t k, std::uint64_t j) {
  check_index(k, j);
  Rational lo = 0, hi = 1;
  std::uint64_t path = j - 1;
  for (std::uint64_t level = 1; level <= k; ++level) {
    Rational len = hi - lo;
    Rational child = (len - w.q(level) * len) / 2;
    bool right = (path >> (k - level)) & 1U;
    if (right) {
      lo = hi - child;
    } else {
      hi = lo + child;
    }
  }
  return {k, j, lo, hi};
}

std::vector<CantorInterval> intervals_at_depth(const CantorParams& w, std::uint64_t k) {
  if (k > 24) throw IndexOutOfRange("refusing to list 2^" + std::to_string(k) + " intervals");
  std::vector<CantorInterval> level{{0, 1, Rational(0), Rational(1)}};
  for (std::uint64_t d = 1; d <= k; ++d) {
    std::vector<CantorInterval> next;
    next.reserve(level.size() * 2);
    Rational q = w.q(d);
    for (const auto& parent : level) {
      Rational len = parent.hi - parent.lo;
      Rational child = (len - q * len) / 2;
      next.push_back({d, 2 * parent.index - 1, parent.lo, parent.lo + child});
      next.push_back({d, 2 * parent.index, parent.hi - child, parent.hi});
    }
    level = std::move(next);
  }
  return level;
}

OpenInterval gap(const CantorParams& w, std::uint64_t k, std::uint64_t j) {
  if (k < 1) throw IndexOutOfRange("no gap at depth 0");
  CantorInterval parent = interval(w, k - 1, j);
  Rational len = parent.length();
  Rational child = (len - w.q(k) * len) / 2;
  return {parent.lo + child, parent.hi - child};
}

Rational gap_bound_margin(const CantorParams& w, std::uint64_t k) {
  if (k < 1) throw IndexOutOfRange("no gap at depth 0");
  Rational parent = length_at_depth(w, k - 1);
  Rational gap_len = w.q(k) * parent;
  Rational child = (parent - gap_len) / 2;
  return gap_len - 2 * w.delta() * child;
}

Circle circle(const CantorParams& w, std::uint64_t k, std::uint64_t i) {
  if (k < 1) throw IndexOutOfRange("pants circles start at depth 1");
  CantorInterval I = interval(w, k, i);
  return {(I.lo + I.hi) / 2, (1 + w.delta()) / 2 * I.length()};
}

bool circles_disjoint(const Circle& a, const Circle& b) {
  Rational d = abs(a.center - b.center);
  return d > a.radius + b.radius || d < abs(a.radius - b.radius);
}

std::string to_string(BrdVerdict v) {
  switch (v) {
    case BrdVerdict::HoldsUpToHorizon: return "holds_up_to_horizon";
    case BrdVerdict::Fails: return "fails";
    case BrdVerdict::NotTendingToOne: return "not_tending_to_1";
  }
  return "?";
}

std::pair<Rational, Rational> exp_enclosure(const Rational& x, unsigned bits) {
  if (x < 0) throw Malformed("exp_enclosure needs x >= 0");
  Rational sum = 1, term = 1;
  Rational tol(1);
  mpz_mul_2exp(tol.get_den_mpz_t(), tol.get_den_mpz_t(), bits + 2);
  for (unsigned long k = 1;; ++k) {
    term = term * x / static_cast<unsigned long>(k);
    sum += term;
    // Remaining tail is at most term * x/(k+1) * 1/(1 - x/(k+2)) <= 2 term x/(k+1)
    // once x/(k+2) <= 1/2.
    Rational tail = 2 * term * x / static_cast<unsigned long>(k + 1);
    if (2 * x <= static_cast<unsigned long>(k + 2) && tail < tol) {
      // Round outward to 2^-bits grid to keep the numbers small.
      mpz_class scale = 1;
      mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
      mpz_class lo_num, hi_num;
      Rational lo_val = sum * scale;
      Rational hi_val = (sum + tail) * scale;
      mpz_fdiv_q(lo_num.get_mpz_t(), lo_val.get_num_mpz_t(), lo_val.get_den_mpz_t());
      mpz_cdiv_q(hi_num.get_mpz_t(), hi_val.get_num_mpz_t(), hi_val.get_den_mpz_t());
      Rational lo(lo_num, scale), hi(hi_num, scale);
      lo.canonicalize();
      hi.canonicalize();
      return {lo, hi};
    }
  }
}

BrdReport brd_check(const CantorParams& w, std::uint64_t horizon, const Rational& bound) {
  if (horizon < 2) throw Malformed("brd_check needs a horizon N >= 2");
  if (bound <= 0) throw Malformed("brd_check needs M > 0");
  BrdReport report;
  report.horizon = horizon;
  unsigned bits = 64;
  auto enclosure = exp_enclosure(bound, bits);
  Rational prev_gap = 1 - w.q(1);
  for (std::uint64_t n = 1; n < horizon; ++n) {
    Rational next_gap = 1 - w.q(n + 1);
    Rational ratio = prev_gap / next_gap;
    Rational worst = ratio >= 1 ? ratio : Rational(1 / ratio);
    report.max_abs_log_ratio = std::max(report.max_abs_log_ratio, log_rational(worst));
    while (worst >= enclosure.first && worst <= enclosure.second && bits < 1024) {
      bits *= 2;
      enclosure = exp_enclosure(bound, bits);
    }
    if (worst >= enclosure.first) {
      report.verdict = BrdVerdict::Fails;
      report.witness = n;
      return report;
    }
    prev_gap = std::move(next_gap);
  }
  Rational first = w.q(1), previous = first;
  for (std::uint64_t n = 2; n <= horizon; ++n) {
    Rational current = w.q(n);
    if (current < previous) {
      report.verdict = BrdVerdict::NotTendingToOne;
      report.witness = n - 1;
      return report;
    }
    previous = std::move(current);
  }
  if (!(previous > first)) {
    report.verdict = BrdVerdict::NotTendingToOne;
    report.witness = horizon;
  }
  return report;
}

double iterated_log_threshold(int k) {
  static const std::array<double, 8> table = [] {
    std::array<double, 8> t{};
    t[0] = std::exp(1.0);
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = std::exp(t[i - 1]);
    return t;
  }();
  if (k < 0) throw Malformed("threshold index must be >= 0");
  if (static_cast<std::size_t>(k) >= table.size()) return std::numeric_limits<double>::infinity();
  return table[static_cast<std::size_t>(k)];
}

double iterated_log(int k, double x) {
  if (k < 1) throw Malformed("iterated_log needs k >= 1");
  if (!(x > 0)) throw Malformed("iterated_log needs x > 0");
  if (x <= iterated_log_threshold(k - 1)) return 1.0;
  if (k == 1) return std::log(x);
  return std::log(iterated_log(k - 1, x));
}

OmegaRatio omega_ratio(int k1, int k2, std::uint64_t n) {
  if (n < 1) throw Malformed("omega_ratio needs n >= 1");
  if (k1 < 1 || k2 <= k1) throw Malformed("omega_ratio needs 1 <= k < k'");
  auto x = static_cast<double>(n);
  // log(1 - q_n^(k)) = -log(2 log^(k) n)
  double num = std::log(2.0 * iterated_log(k2, x));
  double den = std::log(2.0 * iterated_log(k1, x));
  return {n, num / den, iterated_log(k2 + 1, x) / iterated_log(k1 + 1, x)};
}

}  // namespace thompson
