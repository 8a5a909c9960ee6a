#include "sysk/groups.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sysk;

namespace {

// C2 = {1, -1} is encoded by table indices 0 and 1
GroupElement zc2(const Group& g, std::int64_t n, int sign) {
  return g.pair(GroupElement{n}, GroupElement{sign == 1 ? 0 : 1});
}

std::vector<Group> sample_groups() {
  return {Group::free_abelian(2),
          Group::cyclic(6),
          Group::semidirect(Group::free_abelian(1), Group::cyclic(2), "inversion"),
          Group::semidirect(Group::free_abelian(2), Group::cyclic(2), "swap"),
          Group::direct_product(Group::free_abelian(1), Group::cyclic(3)),
          Group::extension(3, {{0, 2, 0}, {0, 0, 1}})};
}

}  // namespace

TEST_CASE("compose in Z^2 is componentwise") {
  Group g = Group::free_abelian(2);
  CHECK(g.compose(GroupElement{1, 2}, GroupElement{3, 4}) == GroupElement{4, 6});
  CHECK(g.invert(GroupElement{1, -3}) == GroupElement{-1, 3});
  CHECK(g.compose(GroupElement{5, -7}, g.identity()) == GroupElement{5, -7});
}

TEST_CASE("inversion action on Z x| C2") {
  Group g = Group::semidirect(Group::free_abelian(1), Group::cyclic(2), "inversion");
  CHECK(g.compose(zc2(g, 2, -1), zc2(g, 3, 1)) == zc2(g, -1, -1));
  CHECK(g.invert(zc2(g, 2, -1)) == zc2(g, 2, -1));
  CHECK(g.compose(zc2(g, 2, -1), g.invert(zc2(g, 2, -1))) == g.identity());
  CHECK(g.invert(g.identity()) == g.identity());
}

TEST_CASE("group axioms on sampled triples") {
  Rng rng(17);
  for (const Group& g : sample_groups()) {
    INFO(g.describe());
    for (int i = 0; i < 100; ++i) {
      GroupElement a = random_element(g, rng, 4), b = random_element(g, rng, 4), c = random_element(g, rng, 4);
      CHECK(g.compose(g.compose(a, b), c) == g.compose(a, g.compose(b, c)));
      CHECK(g.compose(g.identity(), a) == a);
      CHECK(g.compose(a, g.invert(a)) == g.identity());
      CHECK(g.left_quotient(a, b) == g.compose(g.invert(a), b));
    }
  }
}

TEST_CASE("finite tables are validated") {
  CHECK_THROWS_AS(Group::finite_table({{0, 1}, {1, 1}}), ConfigError);
  CHECK_THROWS_AS(Group::finite_table({}), ConfigError);
  Group c3 = Group::finite_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  CHECK(c3.order() == 3);
  CHECK(c3.compose(GroupElement{2}, GroupElement{2}) == GroupElement{1});
}

TEST_CASE("semidirect action is a homomorphism into Aut(N)") {
  Group g = Group::semidirect(Group::free_abelian(2), Group::cyclic(2), "swap");
  const Group& h = g.acting_factor();
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    GroupElement n = random_element(g.normal_factor(), rng, 5), m = random_element(g.normal_factor(), rng, 5);
    for (const auto& x : h.elements())
      for (const auto& y : h.elements()) {
        CHECK(g.act(h.compose(x, y), n) == g.act(x, g.act(y, n)));
        CHECK(g.act(x, g.normal_factor().compose(n, m)) ==
              g.normal_factor().compose(g.act(x, n), g.act(x, m)));
      }
  }
}

TEST_CASE("cone orders") {
  OrderSpec z(Group::free_abelian(1), {{1}});
  CHECK(z.leq(GroupElement{0}, GroupElement{3}));
  CHECK_FALSE(z.leq(GroupElement{3}, GroupElement{0}));

  OrderSpec quadrant(Group::free_abelian(2), {{1, 0}, {0, 1}});
  CHECK_FALSE(quadrant.leq(GroupElement{0, 0}, GroupElement{1, -1}));

  // cone spanned by (1,0) and (1,1): y >= 0 and x - y >= 0
  OrderSpec wedge(Group::free_abelian(2), {{0, 1}, {1, -1}});
  CHECK(wedge.leq(GroupElement{0, 0}, GroupElement{2, 1}));
  CHECK(wedge.identity_in_cone());
}

TEST_CASE("order is transitive and translation invariant on samples") {
  OrderSpec o(Group::free_abelian(2), {{0, 1}, {1, -1}});
  const Group& g = o.owner();
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    GroupElement a = random_element(g, rng, 3), b = random_element(g, rng, 3), c = random_element(g, rng, 3);
    if (o.leq(a, b) && o.leq(b, c)) CHECK(o.leq(a, c));
    GroupElement x = random_element(g, rng, 3), y = random_element(g, rng, 3);
    CHECK(o.leq(a, b) == o.leq(g.compose(g.compose(x, a), y), g.compose(g.compose(x, b), y)));
  }
}

TEST_CASE("H-invariance of cone orders") {
  Group g = Group::semidirect(Group::free_abelian(2), Group::cyclic(2), "swap");
  OrderSpec product(g.normal_factor(), {{1, 0}, {0, 1}});
  OrderSpec lex_like(g.normal_factor(), {{1, 0}});
  std::vector<GroupElement> ns{{0, 0}, {1, 0}, {0, 1}, {2, 3}, {3, -1}};
  CHECK(product.invariant_under(g, g.acting_factor().elements(), ns));
  CHECK_FALSE(lex_like.invariant_under(g, g.acting_factor().elements(), ns));
}

TEST_CASE("project and section for Z^2 over Z x {0}") {
  Group g = Group::extension(2, {{1, 0}});
  auto d = project_and_section(g, GroupElement{3, 5});
  CHECK(d.h == GroupElement{5});
  CHECK(d.n == GroupElement{3, 0});
  CHECK(g.compose(g.section(d.h), d.n) == GroupElement{3, 5});

  auto k = project_and_section(g, GroupElement{-4, 0});
  CHECK(k.h == g.quotient().identity());
  CHECK(k.n == GroupElement{-4, 0});
}

TEST_CASE("project and section for a split extension") {
  Group g = Group::semidirect(Group::free_abelian(1), Group::cyclic(2), "inversion");
  GroupElement x = zc2(g, 4, -1);
  auto d = project_and_section(g, x);
  CHECK(d.h == GroupElement{1});
  // sigma(h)^-1 x with sigma(h) = (0, h): the action flips n
  CHECK(d.n == zc2(g, -4, 1));
  CHECK(g.compose(g.pair(GroupElement{0}, d.h), d.n) == x);

  Group trivial = Group::direct_product(Group::free_abelian(1), Group::cyclic(2));
  auto e = project_and_section(trivial, trivial.pair(GroupElement{4}, GroupElement{1}));
  CHECK(e.n == trivial.pair(GroupElement{4}, GroupElement{0}));
}

TEST_CASE("extension sections and projections") {
  Group g = Group::extension(3, {{0, 2, 0}, {1, 1, 1}});
  const Group& h = g.quotient();
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    GroupElement q = random_element(h, rng, 4);
    CHECK(g.project(g.section(q)) == q);
    GroupElement a = random_element(g, rng, 4), b = random_element(g, rng, 4);
    CHECK(g.project(g.compose(a, b)) == h.compose(g.project(a), g.project(b)));
    auto n = random_element(g.kernel(), rng, 3);
    CHECK(g.project(g.embed_kernel(n)) == h.identity());
  }
}

TEST_CASE("linear extensions put larger elements first") {
  OrderSpec o(Group::free_abelian(2), {{1, 0}, {0, 1}});
  std::vector<GroupElement> elems{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}};
  auto l = linear_extension(o, elems);
  REQUIRE(l.size() == elems.size());
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = i + 1; j < l.size(); ++j) CHECK_FALSE(o.less(l[i], l[j]));
  // deterministic tie-break on encodings
  CHECK(l == linear_extension(o, {{2, 0}, {1, 1}, {0, 1}, {1, 0}, {0, 0}}));
}

TEST_CASE("functional kernels") {
  auto n = functional_kernel({{1, 0}}, 2);
  REQUIRE(n.size() == 1);
  CHECK((n[0] == lattice::IntVector{0, 1} || n[0] == lattice::IntVector{0, -1}));
  CHECK(functional_kernel({{1, 0}, {0, 1}}, 2).empty());
}

TEST_CASE("subgroup inclusions are homomorphisms") {
  Group g = Group::semidirect(Group::free_abelian(2), Group::cyclic(2), "swap");
  Rng rng(2);
  for (const auto& hom : {GroupHom::normal_inclusion(g), GroupHom::acting_inclusion(g)}) {
    for (int i = 0; i < 30; ++i) {
      GroupElement a = random_element(hom.source, rng, 3), b = random_element(hom.source, rng, 3);
      CHECK(hom.map(hom.source.compose(a, b)) == g.compose(hom.map(a), hom.map(b)));
      CHECK(hom.preimage(hom.map(a)) == a);
    }
  }
}
