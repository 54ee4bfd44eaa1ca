#pragma once

// Combinatorial mapping classes: which boundary curve of a pants subtree
// goes to which boundary curve of another. Theta reads such a class as a
// tree pair through iota_C.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "thompson/pantstree.hpp"
#include "thompson/treepair.hpp"

namespace thompson {

// OP = order preserving, PO = positively ordered (cyclic), POP = piecewise
// order preserving (any bijection).
enum class ClassTag { OP, PO, POP };
std::string to_string(ClassTag t);

class CombinatorialMappingClass {
 public:
  // perm is 0-based: domain boundary curve i goes to range boundary curve
  // perm[i]. Malformed on mismatched counts or a non-bijective perm.
  CombinatorialMappingClass(PantsSubtree domain, PantsSubtree range, std::vector<std::size_t> perm);

  const PantsSubtree& domain() const { return domain_; }
  const PantsSubtree& range() const { return range_; }
  const std::vector<std::size_t>& perm() const { return perm_; }
  // Deepest boundary curve on either side.
  std::size_t depth() const;
  ClassTag tag() const;

  friend bool operator==(const CombinatorialMappingClass&, const CombinatorialMappingClass&) = default;

 private:
  PantsSubtree domain_;
  PantsSubtree range_;
  std::vector<std::size_t> perm_;
};

TreePair theta(const CombinatorialMappingClass& mc);
// The class whose boundary curves are the leaves of g; the trivial pair is
// expanded to the depth-1 identity class.
CombinatorialMappingClass realize(const TreePair& g);
// Every matched curve replaced by its two children, left to left and right
// to right.
CombinatorialMappingClass depth_stabilize(const CombinatorialMappingClass& mc);
// a after b, over the common refinement of b's range and a's domain.
CombinatorialMappingClass compose_classes(const CombinatorialMappingClass& a, const CombinatorialMappingClass& b);
CombinatorialMappingClass inverse_class(const CombinatorialMappingClass& mc);
bool kernel_test(const CombinatorialMappingClass& mc);

// Phi0..Phi3 with Theta(Phi_i) = f_i.
CombinatorialMappingClass witness(std::string_view name);

void to_json(nlohmann::json& j, const CombinatorialMappingClass& mc);
// Accepts {depth?, domain_leaves, range_leaves, perm (1-based)}. A depth
// field, when present, must equal the deepest boundary curve.
CombinatorialMappingClass class_from_json(const nlohmann::json& j);

}  // namespace thompson
