#include "thompson/theta.hpp"

#include <algorithm>

#include "thompson/errors.hpp"

namespace thompson {

std::string to_string(ClassTag t) {
  switch (t) {
    case ClassTag::OP: return "OP";
    case ClassTag::PO: return "PO";
    case ClassTag::POP: return "POP";
  }
  return "?";
}

CombinatorialMappingClass::CombinatorialMappingClass(PantsSubtree domain, PantsSubtree range,
                                                     std::vector<std::size_t> perm)
    : domain_(std::move(domain)), range_(std::move(range)), perm_(std::move(perm)) {
  const std::size_t n = domain_.leaf_count();
  if (range_.leaf_count() != n || perm_.size() != n) throw Malformed("boundary curve counts differ");
  std::vector<bool> seen(n, false);
  for (auto p : perm_) {
    if (p >= n || seen[p]) throw Malformed("leaf matching is not a bijection");
    seen[p] = true;
  }
}

std::size_t CombinatorialMappingClass::depth() const {
  return std::max(domain_.max_depth(), range_.max_depth());
}

ClassTag CombinatorialMappingClass::tag() const {
  const std::size_t n = perm_.size();
  bool cyclic = true;
  for (std::size_t i = 0; i < n && cyclic; ++i) cyclic = perm_[i] == (perm_[0] + i) % n;
  if (!cyclic) return ClassTag::POP;
  return perm_[0] == 0 ? ClassTag::OP : ClassTag::PO;
}

namespace {

std::vector<LeafMatch> matches_of(const CombinatorialMappingClass& mc) {
  std::vector<LeafMatch> out;
  const auto& d = mc.domain().boundary();
  const auto& r = mc.range().boundary();
  for (std::size_t i = 0; i < d.size(); ++i) out.push_back({d[i].address(), r[mc.perm()[i]].address()});
  return out;
}

CombinatorialMappingClass class_of_matches(const std::vector<LeafMatch>& m) {
  TreePair p(m);
  return CombinatorialMappingClass(PantsSubtree::from_tree(p.domain()), PantsSubtree::from_tree(p.range()), p.perm());
}

}  // namespace

TreePair theta(const CombinatorialMappingClass& mc) {
  // Both sides tile [0,1] by construction of PantsSubtree; the TreePair
  // constructor re-checks it.
  return reduce(TreePair(matches_of(mc)));
}

CombinatorialMappingClass realize(const TreePair& g) {
  TreePair r = reduce(g);
  if (r.leaf_count() == 1) {
    auto d1 = PantsSubtree::of_depth(1);
    return CombinatorialMappingClass(d1, d1, {0, 1});
  }
  return class_of_matches(r.matches());
}

CombinatorialMappingClass depth_stabilize(const CombinatorialMappingClass& mc) {
  std::vector<LeafMatch> out;
  for (const auto& m : matches_of(mc)) {
    out.push_back({m.domain.child(Half::L), m.range.child(Half::L)});
    out.push_back({m.domain.child(Half::R), m.range.child(Half::R)});
  }
  return class_of_matches(out);
}

CombinatorialMappingClass compose_classes(const CombinatorialMappingClass& a, const CombinatorialMappingClass& b) {
  TreePair p = compose_unreduced(TreePair(matches_of(a)), TreePair(matches_of(b)));
  return class_of_matches(p.matches());
}

CombinatorialMappingClass inverse_class(const CombinatorialMappingClass& mc) {
  std::vector<LeafMatch> out;
  for (const auto& m : matches_of(mc)) out.push_back({m.range, m.domain});
  return class_of_matches(out);
}

bool kernel_test(const CombinatorialMappingClass& mc) { return theta(mc).is_identity(); }

CombinatorialMappingClass witness(std::string_view name) {
  auto subtree = [](std::initializer_list<const char*> curves) {
    std::vector<CurveAddress> v;
    for (auto c : curves) v.push_back(CurveAddress::parse(c));
    return subtree_from_boundary(v);
  };
  auto w3 = subtree({"g:1/1", "g:2/3", "g:2/4"});
  if (name == "Phi0") return CombinatorialMappingClass(w3, subtree({"g:2/1", "g:2/2", "g:1/2"}), {0, 1, 2});
  if (name == "Phi1") {
    return CombinatorialMappingClass(subtree({"g:1/1", "g:2/3", "g:3/7", "g:3/8"}),
                                     subtree({"g:1/1", "g:3/5", "g:3/6", "g:2/4"}), {0, 1, 2, 3});
  }
  if (name == "Phi2") return CombinatorialMappingClass(w3, w3, {2, 0, 1});
  if (name == "Phi3") return CombinatorialMappingClass(w3, w3, {1, 0, 2});
  throw ParseError("unknown witness '" + std::string(name) + "', expected Phi0..Phi3");
}

void to_json(nlohmann::json& j, const CombinatorialMappingClass& mc) {
  std::vector<std::string> d, r;
  for (const auto& c : mc.domain().boundary()) d.push_back(c.to_string());
  for (const auto& c : mc.range().boundary()) r.push_back(c.to_string());
  std::vector<std::size_t> perm;
  for (auto p : mc.perm()) perm.push_back(p + 1);
  j = {{"depth", mc.depth()}, {"domain_leaves", d}, {"range_leaves", r}, {"perm", perm},
       {"tag", to_string(mc.tag())}};
}

CombinatorialMappingClass class_from_json(const nlohmann::json& j) {
  try {
    auto curves = [&](const char* key) {
      std::vector<CurveAddress> v;
      for (const auto& s : j.at(key)) v.push_back(CurveAddress::parse(s.get<std::string>()));
      return v;
    };
    auto dom = curves("domain_leaves");
    auto ran = curves("range_leaves");
    std::vector<std::size_t> perm;
    for (const auto& p : j.at("perm")) {
      auto v = p.get<long long>();
      if (v < 1) throw Malformed("perm entries are 1-based");
      perm.push_back(static_cast<std::size_t>(v - 1));
    }
    if (perm.size() != dom.size() || ran.size() != dom.size()) throw Malformed("boundary curve counts differ");
    // perm refers to the order in which the curves are listed.
    std::vector<LeafMatch> m;
    for (std::size_t i = 0; i < dom.size(); ++i) {
      if (perm[i] >= ran.size()) throw Malformed("perm entry out of range");
      m.push_back({dom[i].address(), ran[perm[i]].address()});
    }
    subtree_from_boundary(dom);
    subtree_from_boundary(ran);
    auto mc = class_of_matches(m);
    if (j.contains("depth") && j.at("depth").get<std::size_t>() != mc.depth()) {
      throw Malformed("depth field " + j.at("depth").dump() + " does not match the deepest curve");
    }
    return mc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("class JSON: ") + e.what());
  }
}

}  // namespace thompson
