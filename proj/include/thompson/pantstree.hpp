#pragma once

// The canonical pants decomposition of the Cantor set complement as a rooted
// binary tree. The curve gamma_d^j surrounds I_d^j; its two children surround
// I_{d+1}^{2j-1} and I_{d+1}^{2j}. The root v_inf is the boundary at infinity
// and is not a curve.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "thompson/dyadic.hpp"
#include "thompson/treepair.hpp"

namespace thompson {

class CurveAddress {
 public:
  // Fails with IndexOutOfRange unless d >= 1 and 1 <= j <= 2^d.
  CurveAddress(std::size_t d, const Integer& j);
  // The curve whose iota_C image has this address; it must not be the root.
  static CurveAddress from_address(const BinaryAddress& a);
  // "g:d/j".
  static CurveAddress parse(std::string_view text);

  std::size_t depth() const { return addr_.depth(); }
  Integer index() const { return addr_.index() + 1; }
  const BinaryAddress& address() const { return addr_; }

  CurveAddress left_child() const { return from_address(addr_.child(Half::L)); }
  CurveAddress right_child() const { return from_address(addr_.child(Half::R)); }

  std::string to_string() const;

  friend auto operator<=>(const CurveAddress&, const CurveAddress&) = default;

 private:
  explicit CurveAddress(BinaryAddress a) : addr_(std::move(a)) {}
  BinaryAddress addr_;
};

// [(j-1)/2^d, j/2^d].
DyadicInterval iota_C(const CurveAddress& a);

// The 2^d curves of depth d, left to right.
std::vector<CurveAddress> boundary_of_Wd(std::size_t d);

// A finite subtree of the pants tree containing v_inf, in which every
// included vertex has both children or none. Stored through its leaf curves.
class PantsSubtree {
 public:
  // The subtree whose leaves are the 2^d depth-d curves.
  static PantsSubtree of_depth(std::size_t d);
  // Fails with NotAPartition unless the tree is nontrivial.
  static PantsSubtree from_tree(const BinaryTree& tree);

  const std::vector<CurveAddress>& boundary() const { return leaves_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  std::size_t max_depth() const;
  BinaryTree tree() const;

  friend bool operator==(const PantsSubtree&, const PantsSubtree&) = default;

 private:
  PantsSubtree() = default;
  friend PantsSubtree subtree_from_boundary(const std::vector<CurveAddress>& curves);
  std::vector<CurveAddress> leaves_;  // left to right
};

// Fails with NotAPartition unless the iota_C intervals tile [0,1].
PantsSubtree subtree_from_boundary(const std::vector<CurveAddress>& curves);

// Boundary of the pair of pants below a vertex. outer is empty for v_inf.
struct PantsTriple {
  std::optional<CurveAddress> outer;
  CurveAddress left;
  CurveAddress right;
  std::string to_string() const;
};
PantsTriple pants_of(const CurveAddress& a);
PantsTriple pants_of_root();

void to_json(nlohmann::json& j, const CurveAddress& a);

}  // namespace thompson
