#include <random>

#include "doctest.h"
#include "support.hpp"
#include "thompson/errors.hpp"
#include "thompson/pantstree.hpp"

using namespace thompson;

namespace {

CurveAddress g(const char* s) { return CurveAddress::parse(s); }

}  // namespace

TEST_CASE("curve addresses") {
  CHECK(g("g:2/3").depth() == 2);
  CHECK(g("g:2/3").index() == 3);
  CHECK(g("g:2/3").to_string() == "g:2/3");
  CHECK(g("g:2/3").left_child() == g("g:3/5"));
  CHECK(g("g:2/3").right_child() == g("g:3/6"));
  CHECK_THROWS_AS(g("g:2/5"), IndexOutOfRange);
  CHECK_THROWS_AS(g("g:0/1"), IndexOutOfRange);
  CHECK_THROWS_AS(g("2/3"), ParseError);
  CHECK_THROWS_AS(g("g:2/"), ParseError);
  CHECK(g("g:70/1180591620717411303424").index().get_str() == "1180591620717411303424");
}

TEST_CASE("iota_C") {
  CHECK(iota_C(g("g:1/1")).to_string() == "[0, 1/2]");
  CHECK(iota_C(g("g:1/2")).to_string() == "[1/2, 1]");
  CHECK(iota_C(g("g:3/5")).to_string() == "[1/2, 5/8]");
}

TEST_CASE("iota_C is a tree isomorphism") {
  for (std::size_t d = 1; d <= 10; ++d) {
    for (const auto& c : boundary_of_Wd(d)) {
      auto I = iota_C(c);
      Dyadic mid = (I.lo + I.hi).scaled(-1);
      REQUIRE(iota_C(c.left_child()) == DyadicInterval(I.lo, mid));
      REQUIRE(iota_C(c.right_child()) == DyadicInterval(mid, I.hi));
      REQUIRE(I.lo == Dyadic((c.index() - 1), d));
    }
  }
}

TEST_CASE("boundary of W_d") {
  auto b1 = boundary_of_Wd(1);
  REQUIRE(b1.size() == 2);
  CHECK(b1[0] == g("g:1/1"));
  CHECK(b1[1] == g("g:1/2"));
  CHECK(boundary_of_Wd(2).size() == 4);
  CHECK(boundary_of_Wd(5).size() == 32);
  CHECK_THROWS_AS(boundary_of_Wd(0), IndexOutOfRange);
}

TEST_CASE("subtree from boundary") {
  CHECK(subtree_from_boundary({g("g:1/1"), g("g:1/2")}).tree().to_string() == "cll");
  auto f0d = subtree_from_boundary({g("g:1/1"), g("g:2/3"), g("g:2/4")});
  CHECK(f0d.tree() == generator("f0").domain());
  CHECK(f0d.leaf_count() == 3);
  CHECK_THROWS_AS(subtree_from_boundary({g("g:1/1"), g("g:2/3")}), NotAPartition);
  CHECK_THROWS_AS(subtree_from_boundary({g("g:1/1"), g("g:2/1"), g("g:1/2")}), NotAPartition);
  CHECK_THROWS_AS(subtree_from_boundary({}), NotAPartition);
  // Order of the input does not matter.
  CHECK(subtree_from_boundary({g("g:2/4"), g("g:1/1"), g("g:2/3")}) == f0d);
  CHECK_THROWS_AS(PantsSubtree::from_tree(BinaryTree()), NotAPartition);
}

TEST_CASE("every tree arises from its boundary") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(2, 64)(rng);
    auto tree = support::random_tree(rng, n);
    std::vector<CurveAddress> curves;
    for (const auto& a : tree.leaves()) curves.push_back(CurveAddress::from_address(a));
    std::shuffle(curves.begin(), curves.end(), rng);
    auto s = subtree_from_boundary(curves);
    REQUIRE(s.tree() == tree);
    REQUIRE(subtree_from_boundary(s.boundary()) == s);
  }
}

TEST_CASE("pants") {
  auto p = pants_of(g("g:1/1"));
  CHECK(p.outer == g("g:1/1"));
  CHECK(p.left == g("g:2/1"));
  CHECK(p.right == g("g:2/2"));
  auto r = pants_of_root();
  CHECK_FALSE(r.outer.has_value());
  CHECK(r.to_string() == "v_inf g:1/1 g:1/2");
  CHECK(pants_of(g("g:2/3")).to_string() == "g:2/3 g:3/5 g:3/6");
}
