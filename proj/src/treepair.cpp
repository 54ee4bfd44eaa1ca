#include "thompson/treepair.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "thompson/errors.hpp"

namespace thompson {

namespace {

using LeafIter = std::vector<BinaryAddress>::const_iterator;

// Leaves in [first, last) all extend `prefix`; check they tile it exactly.
bool tiles(const BinaryAddress& prefix, LeafIter first, LeafIter last) {
  if (first == last) return false;
  if (*first == prefix) return std::next(first) == last;
  if (!prefix.is_prefix_of(*first)) return false;
  BinaryAddress left = prefix.child(Half::L);
  auto split = std::partition_point(first, last, [&](const BinaryAddress& a) { return left.is_prefix_of(a); });
  return tiles(left, first, split) && tiles(prefix.child(Half::R), split, last);
}

void write_preorder(const BinaryAddress& prefix, LeafIter first, LeafIter last, std::string& out) {
  if (*first == prefix) {
    out.push_back('l');
    return;
  }
  out.push_back('c');
  BinaryAddress left = prefix.child(Half::L);
  auto split = std::partition_point(first, last, [&](const BinaryAddress& a) { return left.is_prefix_of(a); });
  write_preorder(left, first, split, out);
  write_preorder(prefix.child(Half::R), split, last, out);
}

void read_preorder(std::string_view text, std::size_t& pos, const BinaryAddress& at,
                   std::vector<BinaryAddress>& leaves) {
  if (pos >= text.size()) throw ParseError("tree string ends early: '" + std::string(text) + "'");
  char c = text[pos++];
  if (c == 'l') {
    leaves.push_back(at);
  } else if (c == 'c') {
    read_preorder(text, pos, at.child(Half::L), leaves);
    read_preorder(text, pos, at.child(Half::R), leaves);
  } else {
    throw ParseError("tree string must be over {c,l}: '" + std::string(text) + "'");
  }
}

std::vector<BinaryAddress> sorted_complete(std::vector<BinaryAddress> leaves) {
  std::sort(leaves.begin(), leaves.end());
  if (!tiles(BinaryAddress{}, leaves.begin(), leaves.end())) {
    throw Malformed("leaves do not form an ordered rooted binary tree");
  }
  return leaves;
}

}  // namespace

BinaryTree::BinaryTree() : leaves_{BinaryAddress{}} {}

BinaryTree::BinaryTree(std::vector<BinaryAddress> leaves) : leaves_(sorted_complete(std::move(leaves))) {}

BinaryTree BinaryTree::parse(std::string_view preorder) {
  std::vector<BinaryAddress> leaves;
  std::size_t pos = 0;
  read_preorder(preorder, pos, BinaryAddress{}, leaves);
  if (pos != preorder.size()) throw ParseError("trailing characters in tree string '" + std::string(preorder) + "'");
  return BinaryTree(std::move(leaves));
}

std::string BinaryTree::to_string() const {
  std::string out;
  write_preorder(BinaryAddress{}, leaves_.begin(), leaves_.end(), out);
  return out;
}

std::vector<DyadicInterval> BinaryTree::leaf_intervals() const {
  std::vector<DyadicInterval> out;
  out.reserve(leaves_.size());
  for (const auto& a : leaves_) out.push_back(interval_of_address(a));
  return out;
}

std::size_t BinaryTree::max_depth() const {
  std::size_t d = 0;
  for (const auto& a : leaves_) d = std::max(d, a.depth());
  return d;
}

BinaryTree tree_from_partition(const std::vector<Dyadic>& points) {
  if (points.size() < 2 || points.front() != Dyadic(0) || points.back() != Dyadic(1)) {
    throw NotStandardPartition("partition must run from 0 to 1");
  }
  std::vector<BinaryAddress> leaves;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i] < points[i + 1])) throw NotStandardPartition("points must increase");
    DyadicInterval piece(points[i], points[i + 1]);
    if (!piece.is_standard()) throw NotStandardPartition(piece.to_string() + " is not standard dyadic");
    leaves.push_back(address_of_interval(piece));
  }
  return BinaryTree(std::move(leaves));
}

BinaryTree tree_from_partition(const std::vector<Rational>& points) {
  std::vector<Dyadic> dyadic;
  dyadic.reserve(points.size());
  for (const auto& p : points) {
    try {
      dyadic.push_back(Dyadic::from_rational(p));
    } catch (const NotThompson&) {
      throw NotStandardPartition(p.get_str() + " is not dyadic");
    }
  }
  return tree_from_partition(dyadic);
}

std::string to_string(ThompsonClass c) {
  switch (c) {
    case ThompsonClass::F: return "F";
    case ThompsonClass::T: return "T";
    case ThompsonClass::V: return "V";
  }
  return "?";
}

TreePair::TreePair() : matches_{LeafMatch{}} {}

TreePair::TreePair(const BinaryTree& domain, const BinaryTree& range, const std::vector<std::size_t>& perm) {
  std::size_t n = domain.leaf_count();
  if (range.leaf_count() != n || perm.size() != n) throw Malformed("leaf counts and perm size must agree");
  std::vector<bool> seen(n, false);
  matches_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (perm[i] >= n || seen[perm[i]]) throw Malformed("perm is not a bijection");
    seen[perm[i]] = true;
    matches_.push_back({domain.leaves()[i], range.leaves()[perm[i]]});
  }
}

TreePair::TreePair(std::vector<LeafMatch> matches) : matches_(std::move(matches)) {
  std::sort(matches_.begin(), matches_.end(),
            [](const LeafMatch& x, const LeafMatch& y) { return x.domain < y.domain; });
  std::vector<BinaryAddress> dom, ran;
  for (const auto& m : matches_) {
    dom.push_back(m.domain);
    ran.push_back(m.range);
  }
  sorted_complete(std::move(dom));
  sorted_complete(std::move(ran));
}

BinaryTree TreePair::domain() const {
  std::vector<BinaryAddress> leaves;
  for (const auto& m : matches_) leaves.push_back(m.domain);
  return BinaryTree(std::move(leaves));
}

BinaryTree TreePair::range() const {
  std::vector<BinaryAddress> leaves;
  for (const auto& m : matches_) leaves.push_back(m.range);
  return BinaryTree(std::move(leaves));
}

std::vector<std::size_t> TreePair::perm() const {
  std::vector<BinaryAddress> ran;
  for (const auto& m : matches_) ran.push_back(m.range);
  std::vector<BinaryAddress> sorted = ran;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> out;
  out.reserve(ran.size());
  for (const auto& r : ran) {
    out.push_back(static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), r) - sorted.begin()));
  }
  return out;
}

bool TreePair::is_identity() const {
  return matches_.size() == 1 && matches_[0].domain.is_root();
}

Dyadic TreePair::operator()(const Dyadic& x) const {
  if (x.sign() < 0 || !(x < Dyadic(1))) throw OutOfDomain(x.to_string() + " is not in [0,1)");
  std::size_t depth = 0;
  for (const auto& m : matches_) depth = std::max(depth, m.domain.depth());
  // First `depth` binary digits of x.
  Integer k = x.numerator();
  if (x.exponent() > depth) {
    mpz_fdiv_q_2exp(k.get_mpz_t(), k.get_mpz_t(), x.exponent() - depth);
  } else {
    mpz_mul_2exp(k.get_mpz_t(), k.get_mpz_t(), depth - x.exponent());
  }
  BinaryAddress digits = BinaryAddress::from_index(depth, k);
  auto it = std::upper_bound(matches_.begin(), matches_.end(), digits,
                             [](const BinaryAddress& a, const LeafMatch& m) { return a < m.domain; });
  const LeafMatch& m = *std::prev(it);
  Dyadic dom_lo(m.domain.index(), m.domain.depth());
  Dyadic ran_lo(m.range.index(), m.range.depth());
  long shift = static_cast<long>(m.domain.depth()) - static_cast<long>(m.range.depth());
  return ran_lo + (x - dom_lo).scaled(shift);
}

bool is_reduced(const TreePair& p) { return reduce(p).leaf_count() == p.leaf_count(); }

TreePair reduce(const TreePair& p) {
  // Shift-reduce over domain leaves in left-to-right order: cancel whenever
  // the top two entries are sibling leaves on both sides, in order.
  std::vector<LeafMatch> stack;
  stack.reserve(p.leaf_count());
  for (const auto& m : p.matches()) {
    stack.push_back(m);
    while (stack.size() >= 2) {
      const LeafMatch& right = stack[stack.size() - 1];
      const LeafMatch& left = stack[stack.size() - 2];
      bool cancels = !right.domain.is_root() && right.domain.last() == Half::R &&
                     left.domain == right.domain.sibling() && !right.range.is_root() &&
                     right.range.last() == Half::R && left.range == right.range.sibling();
      if (!cancels) break;
      LeafMatch merged{right.domain.parent(), right.range.parent()};
      stack.pop_back();
      stack.back() = std::move(merged);
    }
  }
  return TreePair(std::move(stack));
}

TreePair compose(const TreePair& a, const TreePair& b) { return reduce(compose_unreduced(a, b)); }

TreePair compose_unreduced(const TreePair& a, const TreePair& b) {
  // Common refinement of b's range tree and a's domain tree.
  std::vector<LeafMatch> bv = b.matches();
  std::sort(bv.begin(), bv.end(), [](const LeafMatch& x, const LeafMatch& y) { return x.range < y.range; });
  const auto& av = a.matches();
  std::vector<LeafMatch> out;
  out.reserve(av.size() + bv.size());
  std::size_t i = 0, j = 0;
  while (i < bv.size() && j < av.size()) {
    const BinaryAddress& r = bv[i].range;
    const BinaryAddress& d = av[j].domain;
    if (r == d) {
      out.push_back({bv[i].domain, av[j].range});
      ++i;
      ++j;
    } else if (r.is_prefix_of(d)) {
      for (; j < av.size() && r.is_prefix_of(av[j].domain); ++j) {
        out.push_back({bv[i].domain.concat(av[j].domain.suffix_after(r)), av[j].range});
      }
      ++i;
    } else {
      for (; i < bv.size() && d.is_prefix_of(bv[i].range); ++i) {
        out.push_back({bv[i].domain, av[j].range.concat(bv[i].range.suffix_after(d))});
      }
      ++j;
    }
  }
  return TreePair(std::move(out));
}

TreePair inverse(const TreePair& a) {
  std::vector<LeafMatch> out;
  out.reserve(a.leaf_count());
  for (const auto& m : a.matches()) out.push_back({m.range, m.domain});
  return TreePair(std::move(out));
}

ThompsonClass classify(const TreePair& a) {
  auto p = a.perm();
  std::size_t n = p.size();
  bool identity = true;
  bool cyclic = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] != i) identity = false;
    if (p[i] != (i + p[0]) % n) cyclic = false;
  }
  if (identity) return ThompsonClass::F;
  if (cyclic) return ThompsonClass::T;
  return ThompsonClass::V;
}

std::string PLPiece::formula() const {
  std::string out;
  if (slope_log2 == 0) {
    out = "x";
  } else if (slope_log2 > 0) {
    out = Dyadic::pow2(slope_log2).to_string() + "x";
  } else {
    out = "x/" + Dyadic::pow2(-slope_log2).to_string();
  }
  if (offset.sign() > 0) out += " + " + offset.to_string();
  if (offset.sign() < 0) out += " - " + (-offset).to_string();
  return out;
}

namespace {

void check_partition(std::vector<std::pair<Dyadic, Dyadic>> spans, const char* what) {
  std::sort(spans.begin(), spans.end());
  Dyadic at(0);
  for (const auto& [lo, hi] : spans) {
    if (lo != at || !(lo < hi)) throw Malformed(std::string(what) + " do not partition [0,1)");
    at = hi;
  }
  if (at != Dyadic(1)) throw Malformed(std::string(what) + " do not partition [0,1)");
}

}  // namespace

PLMap::PLMap(std::vector<PLPiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Malformed("a PL map needs at least one piece");
  std::sort(pieces_.begin(), pieces_.end(), [](const PLPiece& x, const PLPiece& y) { return x.lo < y.lo; });
  std::vector<std::pair<Dyadic, Dyadic>> src, img;
  for (const auto& p : pieces_) {
    src.emplace_back(p.lo, p.hi);
    img.emplace_back(p.apply(p.lo), p.apply(p.hi));
  }
  check_partition(std::move(src), "source pieces");
  check_partition(std::move(img), "image pieces");
}

PLMap PLMap::from_affine(const std::vector<AffinePiece>& pieces) {
  std::vector<PLPiece> out;
  for (const auto& p : pieces) {
    if (p.slope <= 0) throw NotThompson("slope " + p.slope.get_str() + " is not a power of two");
    const Integer& num = p.slope.get_num();
    const Integer& den = p.slope.get_den();
    long log2 = 0;
    if (den == 1 && mpz_popcount(num.get_mpz_t()) == 1) {
      log2 = static_cast<long>(mpz_scan1(num.get_mpz_t(), 0));
    } else if (num == 1 && mpz_popcount(den.get_mpz_t()) == 1) {
      log2 = -static_cast<long>(mpz_scan1(den.get_mpz_t(), 0));
    } else {
      throw NotThompson("slope " + p.slope.get_str() + " is not a power of two");
    }
    out.push_back({Dyadic::from_rational(p.lo), Dyadic::from_rational(p.hi), log2, Dyadic::from_rational(p.offset)});
  }
  return PLMap(std::move(out));
}

Dyadic PLMap::operator()(const Dyadic& x) const {
  if (x.sign() < 0 || !(x < Dyadic(1))) throw OutOfDomain(x.to_string() + " is not in [0,1)");
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Dyadic& v, const PLPiece& p) { return v < p.lo; });
  return std::prev(it)->apply(x);
}

PLMap PLMap::normalized() const {
  std::vector<PLPiece> out;
  for (const auto& p : pieces_) {
    if (!out.empty() && out.back().hi == p.lo && out.back().slope_log2 == p.slope_log2 &&
        out.back().offset == p.offset) {
      out.back().hi = p.hi;
    } else {
      out.push_back(p);
    }
  }
  return PLMap(std::move(out));
}

bool operator==(const PLMap& a, const PLMap& b) {
  return a.normalized().pieces_ == b.normalized().pieces_;
}

Dyadic eval(const PLMap& m, const Dyadic& x) { return m(x); }

PLMap to_pl_map(const TreePair& a) {
  std::vector<PLPiece> pieces;
  pieces.reserve(a.leaf_count());
  for (const auto& m : a.matches()) {
    DyadicInterval src = interval_of_address(m.domain);
    Dyadic ran_lo = interval_of_address(m.range).lo;
    long slope = static_cast<long>(m.domain.depth()) - static_cast<long>(m.range.depth());
    pieces.push_back({src.lo, src.hi, slope, ran_lo - src.lo.scaled(slope)});
  }
  return PLMap(std::move(pieces));
}

namespace {

void match_piece(const PLPiece& piece, const BinaryAddress& addr, std::vector<LeafMatch>& out) {
  DyadicInterval src = interval_of_address(addr);
  DyadicInterval img(piece.apply(src.lo), piece.apply(src.hi));
  if (img.is_standard()) {
    out.push_back({addr, address_of_interval(img)});
    return;
  }
  match_piece(piece, addr.child(Half::L), out);
  match_piece(piece, addr.child(Half::R), out);
}

}  // namespace

TreePair from_pl_map(const PLMap& m) {
  std::vector<LeafMatch> matches;
  for (const auto& piece : m.pieces()) {
    // Greedy split of [lo, hi) into maximal standard dyadic intervals.
    Dyadic at = piece.lo;
    while (at < piece.hi) {
      std::uint64_t depth = at.exponent();
      while (piece.hi < at + Dyadic(Integer(1), depth)) ++depth;
      Dyadic next = at + Dyadic(Integer(1), depth);
      match_piece(piece, address_of_interval(DyadicInterval(at, next)), matches);
      at = next;
    }
  }
  return reduce(TreePair(std::move(matches)));
}

Dyadic circle_lift(const TreePair& a, const Dyadic& x) {
  if (classify(reduce(a)) == ThompsonClass::V) throw Malformed("circle lift needs an element of T");
  Integer n = x.floor();
  Dyadic whole(n, 0);
  Dyadic frac = x - whole;
  auto p = a.perm();
  Dyadic y = a(frac) + whole;
  // Pieces after the wrap point land one period higher.
  std::size_t leaf = 0;
  for (std::size_t i = 0; i < a.leaf_count(); ++i) {
    if (!(frac < interval_of_address(a.matches()[i].domain).lo)) leaf = i;
  }
  if (p[leaf] < p[0]) y += Dyadic(1);
  return y;
}

TreePair generator(std::string_view name) {
  auto t = [](const char* s) { return BinaryTree::parse(s); };
  if (name == "f0") return TreePair(t("clcll"), t("cclll"), {0, 1, 2});
  if (name == "f1") return TreePair(t("clclcll"), t("clcclll"), {0, 1, 2, 3});
  if (name == "f2") return TreePair(t("clcll"), t("clcll"), {2, 0, 1});
  if (name == "f3") return TreePair(t("clcll"), t("clcll"), {1, 0, 2});
  throw ParseError("unknown generator '" + std::string(name) + "'");
}

Word parse_word(std::string_view text) {
  Word out;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  while (pos < text.size()) {
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    std::string token(text.substr(start, pos - start));
    if (token.size() < 2 || token[0] != 'f' || token[1] < '0' || token[1] > '3') {
      throw ParseError("bad word letter '" + token + "'");
    }
    WordLetter letter{token[1] - '0', 1};
    if (token.size() > 2) {
      if (token[2] != '^' || token.size() == 3) throw ParseError("bad word letter '" + token + "'");
      std::string exp = token.substr(3);
      std::size_t digits = (exp[0] == '-') ? 1 : 0;
      if (digits == exp.size()) throw ParseError("bad exponent in '" + token + "'");
      for (std::size_t k = digits; k < exp.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(exp[k]))) throw ParseError("bad exponent in '" + token + "'");
      }
      if (exp.size() > 12) throw ParseError("exponent too large in '" + token + "'");
      letter.exponent = std::strtol(exp.c_str(), nullptr, 10);
    }
    out.push_back(letter);
    skip();
  }
  return out;
}

TreePair power(const TreePair& a, long exponent) {
  TreePair base = exponent < 0 ? inverse(a) : a;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
  TreePair result;
  while (e > 0) {
    if (e & 1UL) result = compose(result, base);
    e >>= 1;
    if (e > 0) base = compose(base, base);
  }
  return result;
}

TreePair word_eval(const Word& word) {
  static const char* names[] = {"f0", "f1", "f2", "f3"};
  TreePair result;
  for (const auto& letter : word) {
    result = compose(result, power(generator(names[letter.generator]), letter.exponent));
  }
  return result;
}

void to_json(nlohmann::json& j, const TreePair& p) {
  auto perm = p.perm();
  for (auto& v : perm) ++v;
  j = nlohmann::json{{"domain", p.domain().to_string()}, {"range", p.range().to_string()}, {"perm", perm}};
}

void from_json(const nlohmann::json& j, TreePair& p) {
  auto perm = j.at("perm").get<std::vector<std::size_t>>();
  for (auto& v : perm) {
    if (v == 0) throw Malformed("perm entries are 1-based");
    --v;
  }
  p = TreePair(BinaryTree::parse(j.at("domain").get<std::string>()),
               BinaryTree::parse(j.at("range").get<std::string>()), perm);
}

}  // namespace thompson
