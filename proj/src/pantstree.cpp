#include "thompson/pantstree.hpp"

#include <algorithm>
#include <cctype>

#include "thompson/errors.hpp"

namespace thompson {

CurveAddress::CurveAddress(std::size_t d, const Integer& j) {
  if (d < 1) throw IndexOutOfRange("curve depth must be >= 1");
  Integer count;
  mpz_ui_pow_ui(count.get_mpz_t(), 2, d);
  if (j < 1 || j > count) {
    throw IndexOutOfRange("curve index " + j.get_str() + " at depth " + std::to_string(d));
  }
  addr_ = BinaryAddress::from_index(d, j - 1);
}

CurveAddress CurveAddress::from_address(const BinaryAddress& a) {
  if (a.is_root()) throw IndexOutOfRange("the root is v_inf, not a curve");
  return CurveAddress(a);
}

CurveAddress CurveAddress::parse(std::string_view text) {
  auto fail = [&] { return ParseError("curve address must look like g:d/j, got '" + std::string(text) + "'"); };
  if (text.substr(0, 2) != "g:") throw fail();
  auto body = text.substr(2);
  auto slash = body.find('/');
  if (slash == std::string_view::npos || slash == 0 || slash + 1 == body.size()) throw fail();
  auto ds = body.substr(0, slash), js = body.substr(slash + 1);
  auto digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  if (!digits(ds) || !digits(js) || ds.size() > 6) throw fail();
  return CurveAddress(std::stoul(std::string(ds)), Integer(std::string(js)));
}

std::string CurveAddress::to_string() const {
  return "g:" + std::to_string(depth()) + "/" + index().get_str();
}

DyadicInterval iota_C(const CurveAddress& a) { return interval_of_address(a.address()); }

std::vector<CurveAddress> boundary_of_Wd(std::size_t d) {
  if (d < 1) throw IndexOutOfRange("W_d needs d >= 1");
  if (d > 24) throw IndexOutOfRange("depth " + std::to_string(d) + " too large to list");
  std::vector<CurveAddress> out;
  out.reserve(std::size_t{1} << d);
  for (std::size_t j = 1; j <= (std::size_t{1} << d); ++j) out.emplace_back(d, Integer(static_cast<unsigned long>(j)));
  return out;
}

PantsSubtree PantsSubtree::of_depth(std::size_t d) { return subtree_from_boundary(boundary_of_Wd(d)); }

PantsSubtree PantsSubtree::from_tree(const BinaryTree& tree) {
  if (tree.leaf_count() < 2) throw NotAPartition("the trivial tree has no boundary curves");
  PantsSubtree s;
  for (const auto& a : tree.leaves()) s.leaves_.push_back(CurveAddress::from_address(a));
  return s;
}

std::size_t PantsSubtree::max_depth() const {
  std::size_t d = 0;
  for (const auto& c : leaves_) d = std::max(d, c.depth());
  return d;
}

BinaryTree PantsSubtree::tree() const {
  std::vector<BinaryAddress> leaves;
  leaves.reserve(leaves_.size());
  for (const auto& c : leaves_) leaves.push_back(c.address());
  return BinaryTree(std::move(leaves));
}

PantsSubtree subtree_from_boundary(const std::vector<CurveAddress>& curves) {
  if (curves.empty()) throw NotAPartition("no curves");
  std::vector<CurveAddress> sorted = curves;
  std::sort(sorted.begin(), sorted.end(),
            [](const CurveAddress& a, const CurveAddress& b) { return iota_C(a).lo < iota_C(b).lo; });
  Dyadic at(0);
  for (const auto& c : sorted) {
    auto I = iota_C(c);
    if (I.lo < at) throw NotAPartition(c.to_string() + " overlaps another curve's interval");
    if (at < I.lo) throw NotAPartition("gap [" + at.to_string() + ", " + I.lo.to_string() + "]");
    at = I.hi;
  }
  if (at != Dyadic(1)) throw NotAPartition("gap [" + at.to_string() + ", 1]");
  PantsSubtree s;
  s.leaves_ = std::move(sorted);
  return s;
}

std::string PantsTriple::to_string() const {
  return (outer ? outer->to_string() : std::string("v_inf")) + " " + left.to_string() + " " + right.to_string();
}

PantsTriple pants_of(const CurveAddress& a) { return {a, a.left_child(), a.right_child()}; }

PantsTriple pants_of_root() {
  return {std::nullopt, CurveAddress(1, Integer(1)), CurveAddress(1, Integer(2))};
}

void to_json(nlohmann::json& j, const CurveAddress& a) { j = a.to_string(); }

}  // namespace thompson
