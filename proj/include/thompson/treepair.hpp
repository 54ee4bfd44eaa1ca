#pragma once

// Thompson's groups F, T and V as tree-pair diagrams.
//
// A tree is stored as its leaf set: a complete prefix code of binary
// addresses kept in left-to-right order. A tree pair is stored as the list
// of (domain leaf, range leaf) matches sorted by domain leaf, which carries
// the domain tree, the range tree and the leaf bijection at once.
//
// Composition convention: compose(a, b) is the function a∘b, so b acts
// first. word_eval multiplies left to right in the same sense.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "thompson/dyadic.hpp"

namespace thompson {

class BinaryTree {
 public:
  // The trivial tree, a single leaf at the root.
  BinaryTree();
  // Fails with Malformed unless the leaves form a complete prefix code.
  explicit BinaryTree(std::vector<BinaryAddress> leaves);

  // Preorder over {c, l}: c = caret followed by its left and right subtrees,
  // l = leaf. "l" is the trivial tree, "clcll" has leaves L, RL, RR.
  static BinaryTree parse(std::string_view preorder);
  std::string to_string() const;

  std::size_t leaf_count() const { return leaves_.size(); }
  const std::vector<BinaryAddress>& leaves() const { return leaves_; }
  std::vector<DyadicInterval> leaf_intervals() const;
  std::size_t max_depth() const;

  friend bool operator==(const BinaryTree&, const BinaryTree&) = default;

 private:
  std::vector<BinaryAddress> leaves_;
};

// Fails with NotStandardPartition unless points run 0 = x0 < ... < xn = 1
// and every [x_i, x_{i+1}] is a standard dyadic interval.
BinaryTree tree_from_partition(const std::vector<Dyadic>& points);
BinaryTree tree_from_partition(const std::vector<Rational>& points);

enum class ThompsonClass { F, T, V };
std::string to_string(ThompsonClass c);

struct LeafMatch {
  BinaryAddress domain;
  BinaryAddress range;
  friend bool operator==(const LeafMatch&, const LeafMatch&) = default;
};

class PLMap;

class TreePair {
 public:
  // The identity element (Leaf, Leaf, id).
  TreePair();
  // perm is 0-based: domain leaf i goes to range leaf perm[i].
  // Fails with Malformed on mismatched leaf counts or a non-bijective perm.
  TreePair(const BinaryTree& domain, const BinaryTree& range, const std::vector<std::size_t>& perm);
  // Fails with Malformed unless both sides form complete prefix codes.
  explicit TreePair(std::vector<LeafMatch> matches);

  static TreePair identity() { return {}; }

  BinaryTree domain() const;
  BinaryTree range() const;
  std::vector<std::size_t> perm() const;
  const std::vector<LeafMatch>& matches() const { return matches_; }
  std::size_t leaf_count() const { return matches_.size(); }
  bool is_identity() const;

  // Exact image of x in [0,1); OutOfDomain otherwise.
  Dyadic operator()(const Dyadic& x) const;

  friend bool operator==(const TreePair&, const TreePair&) = default;

 private:
  std::vector<LeafMatch> matches_;  // sorted by domain leaf
};

TreePair reduce(const TreePair& p);
bool is_reduced(const TreePair& p);
TreePair compose(const TreePair& a, const TreePair& b);
// a∘b over the common refinement of b's range and a's domain, not reduced.
TreePair compose_unreduced(const TreePair& a, const TreePair& b);
TreePair inverse(const TreePair& a);
// Smallest class containing the element; expects a reduced pair.
ThompsonClass classify(const TreePair& a);

// One affine piece x -> 2^slope_log2 * x + offset on [lo, hi).
struct PLPiece {
  Dyadic lo;
  Dyadic hi;
  long slope_log2 = 0;
  Dyadic offset;

  Dyadic slope() const { return Dyadic::pow2(slope_log2); }
  Dyadic apply(const Dyadic& x) const { return x.scaled(slope_log2) + offset; }
  std::string formula() const;  // e.g. "x/2 + 1/4"
  friend bool operator==(const PLPiece&, const PLPiece&) = default;
};

// A general rational affine piece, used to validate user input before it
// becomes a PLMap.
struct AffinePiece {
  Rational lo;
  Rational hi;
  Rational slope;
  Rational offset;
};

// A right-continuous bijection of [0,1) that is affine with power-of-two
// slope on each of finitely many half-open dyadic pieces.
class PLMap {
 public:
  // Fails with Malformed unless pieces partition [0,1) and so do the images.
  explicit PLMap(std::vector<PLPiece> pieces);
  // Fails with NotThompson on non-dyadic data or a slope that is not a power
  // of two, Malformed on a non-bijective layout.
  static PLMap from_affine(const std::vector<AffinePiece>& pieces);

  const std::vector<PLPiece>& pieces() const { return pieces_; }
  Dyadic operator()(const Dyadic& x) const;
  // Adjacent pieces with the same affine formula merged; equal maps have
  // equal normal forms.
  PLMap normalized() const;

  friend bool operator==(const PLMap& a, const PLMap& b);

 private:
  std::vector<PLPiece> pieces_;
};

Dyadic eval(const PLMap& m, const Dyadic& x);
PLMap to_pl_map(const TreePair& a);
TreePair from_pl_map(const PLMap& m);

// Lift of a T-element to the increasing map of R with f(x+n) = f(x)+n and
// f(0) in [0,1). Fails with Malformed unless classify(a) is F or T.
Dyadic circle_lift(const TreePair& a, const Dyadic& x);

// The four named generators f0..f3.
TreePair generator(std::string_view name);

struct WordLetter {
  int generator = 0;  // 0..3
  long exponent = 1;
};
using Word = std::vector<WordLetter>;

// Whitespace-separated letters f[0-3](^-?N)?; ParseError otherwise.
Word parse_word(std::string_view text);
TreePair word_eval(const Word& word);
TreePair power(const TreePair& a, long exponent);

void to_json(nlohmann::json& j, const TreePair& p);
void from_json(const nlohmann::json& j, TreePair& p);

}  // namespace thompson
