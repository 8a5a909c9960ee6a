#include "sysk/rings.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <memory>

using namespace sysk;

namespace {

using Cone = std::vector<std::vector<std::int64_t>>;

std::shared_ptr<const MonoidRing> f2t() {
  return std::make_shared<const MonoidRing>(Coefficients::parse("F2"), Group::free_abelian(1), Cone{{1}});
}

std::shared_ptr<const MonoidRing> laurent() {
  return std::make_shared<const MonoidRing>(Coefficients::parse("F2"), Group::free_abelian(1), Cone{});
}

RingElem t(const SystematicRing& r, std::int64_t k) { return RingElem::monomial(r.algebra(), GroupElement{k}); }

}  // namespace

TEST_CASE("polynomial arithmetic over F2") {
  auto r = f2t();
  RingElem x = r->one() + t(*r, 1);
  CHECK(x * x == r->one() + t(*r, 2));
  CHECK(x + r->zero() == x);
  CHECK((x - x).is_zero());
}

TEST_CASE("fractions in Z[1/2]") {
  PowerLocalization k(2);
  CHECK(k.element(Rational(3, 4)) * k.element(2) == k.element(Rational(3, 2)));
  CHECK_THROWS_AS(k.element(Rational(1, 3)), InvalidElement);
}

TEST_CASE("component membership") {
  auto r = f2t();
  CHECK(r->member(t(*r, 2), GroupElement{2}));
  CHECK_FALSE(r->member(t(*r, 2), GroupElement{1}));
  CHECK_FALSE(r->member(t(*r, -1), GroupElement{-1}));

  PowerLocalization k(2);
  CHECK(k.member(k.element(Rational(3, 4)), GroupElement{-2}));
  CHECK_FALSE(k.member(k.element(Rational(3, 4)), GroupElement{-1}));
  for (std::int64_t g = -3; g <= 3; ++g) {
    CHECK(k.member(k.zero(), GroupElement{g}));
    CHECK(r->member(r->zero(), GroupElement{g}));
  }
}

TEST_CASE("mixing algebras is rejected") {
  auto a = f2t();
  auto b = std::make_shared<const MonoidRing>(Coefficients::parse("Z/4"), Group::free_abelian(1), Cone{{1}});
  CHECK_THROWS_AS(a->one() + b->one(), SpecMismatch);
  // F2[t] and F2[Z] share one ambient algebra
  CHECK(a->one() + laurent()->one() == a->zero());
}

TEST_CASE("strong systematicity at single degrees") {
  PowerLocalization k(2);
  CHECK(is_strongly_systematic_at(k, GroupElement{1}));
  CHECK_FALSE(is_strongly_systematic_at(*f2t(), GroupElement{1}));
  for (std::int64_t g = -5; g <= 5; ++g) CHECK(is_strongly_systematic_at(*laurent(), GroupElement{g}));
}

TEST_CASE("dual bases") {
  PowerLocalization k(2);
  DualBasis d = dual_basis(k, GroupElement{1});
  REQUIRE(d.pairs.size() == 1);
  CHECK(k.value(d.pairs[0].first) == 2);
  CHECK(k.value(d.pairs[0].second) == Rational(1, 2));
  CHECK(d.rho(0, k.element(6)) == k.element(3));

  auto l = laurent();
  DualBasis e = dual_basis(*l, GroupElement{1});
  REQUIRE(e.pairs.size() == 1);
  CHECK(e.pairs[0].first == t(*l, 1));
  CHECK(e.pairs[0].second == t(*l, -1));

  CHECK_THROWS_AS(dual_basis(*f2t(), GroupElement{1}), NotStronglySystematic);
}

TEST_CASE("dual basis identity on sampled elements") {
  PowerLocalization k(2);
  Rng rng(31);
  for (std::int64_t a = -4; a <= 4; ++a) {
    DualBasis d = dual_basis(k, GroupElement{a});
    CHECK(d.sums_to_one(k));
    CHECK(d.degrees_valid(k));
    for (int i = 0; i < 100; ++i) {
      RingElem r = random_component_element(k, GroupElement{a}, rng);
      CHECK(d.reconstruct(r) == r);
    }
  }
}

TEST_CASE("SR axioms on windows") {
  Rng rng(4);
  std::vector<std::shared_ptr<const SystematicRing>> rings{f2t(), laurent(), std::make_shared<const PowerLocalization>(3)};
  for (const auto& r : rings) {
    INFO(r->name());
    CHECK(check_sr3(*r));
    for (std::int64_t g = -3; g <= 3; ++g)
      for (std::int64_t h = -3; h <= 3; ++h) CHECK(check_sr2(*r, GroupElement{g}, GroupElement{h}));
    std::vector<GroupElement> window;
    for (std::int64_t g = -3; g <= 3; ++g) window.push_back(GroupElement{g});
    for (int i = 0; i < 50; ++i) CHECK(check_sr1(*r, random_ring_element(*r, window, rng)));
  }
}

TEST_CASE("strong at every degree iff components multiply onto") {
  std::vector<std::shared_ptr<const SystematicRing>> rings{f2t(), laurent(), std::make_shared<const PowerLocalization>(2)};
  for (const auto& r : rings) {
    bool strong = true, onto = true;
    for (std::int64_t g = -3; g <= 3; ++g) strong = strong && is_strongly_systematic_at(*r, GroupElement{g});
    for (std::int64_t g = -3; g <= 3; ++g)
      for (std::int64_t h = -3; h <= 3; ++h)
        onto = onto && components_multiply_onto(*r, GroupElement{g}, GroupElement{h});
    CHECK(strong == onto);
  }
}

TEST_CASE("subrings over subgroups") {
  Group z2 = Group::free_abelian(2);
  RingPtr r = std::make_shared<const MonoidRing>(Coefficients::parse("F2"), z2, Cone{{1, 0}, {0, 1}});
  RingPtr x = subring_over_subgroup(r, GroupHom::coordinate_inclusion(z2, {0}));
  CHECK(x->grading().encoding_size() == 1);
  auto g3 = x->gens(GroupElement{3});
  REQUIRE(g3.size() == 1);
  CHECK(g3[0] == RingElem::monomial(r->algebra(), GroupElement{3, 0}));
  CHECK(x->gens(GroupElement{-1}).empty());
  CHECK_FALSE(x->member(RingElem::monomial(r->algebra(), GroupElement{0, 1}), GroupElement{0}));

  CHECK(subring_over_subgroup(r, GroupHom::identity(z2)) == r);
}

TEST_CASE("skew monoid ring: H-part is the group ring of C2") {
  Group g = Group::semidirect(Group::free_abelian(2), Group::cyclic(2), "swap");
  RingPtr r = std::make_shared<const MonoidRing>(Coefficients::parse("F2"), g, Cone{{1, 0}, {0, 1}});
  RingPtr rh = subring_over_subgroup(r, GroupHom::acting_inclusion(g));
  for (const auto& h : g.acting_factor().elements()) {
    auto gens = rh->gens(h);
    REQUIRE(gens.size() == 1);
    CHECK(gens[0] == RingElem::monomial(r->algebra(), g.pair(GroupElement{0, 0}, h)));
    CHECK(is_strongly_systematic_at(*rh, h));
  }
  // [h] x = [theta(h) x] [h]
  RingElem h = RingElem::monomial(r->algebra(), g.pair(GroupElement{0, 0}, GroupElement{1}));
  RingElem x = RingElem::monomial(r->algebra(), g.pair(GroupElement{1, 0}, GroupElement{0}));
  RingElem y = RingElem::monomial(r->algebra(), g.pair(GroupElement{0, 1}, GroupElement{0}));
  CHECK(h * x == y * h);
  CHECK_FALSE(h * x == x * h);
}

TEST_CASE("filtered rule") {
  RingPtr r = std::make_shared<const MonoidRing>(Coefficients::parse("F2"), Group::free_abelian(1), Cone{{1}},
                                                 MonoidRing::Rule::Filtered);
  CHECK(r->gens(GroupElement{2}).size() == 3);
  CHECK(r->gens(GroupElement{-1}).empty());
  CHECK(r->member(r->one() + t(*r, 2), GroupElement{2}));
  CHECK_FALSE(r->member(t(*r, 3), GroupElement{2}));
  for (std::int64_t g = 0; g <= 3; ++g)
    for (std::int64_t h = 0; h <= 3; ++h) CHECK(check_sr2(*r, GroupElement{g}, GroupElement{h}));
  // F^0 = F2
  auto g0 = r->gens(GroupElement{0});
  REQUIRE(g0.size() == 1);
  CHECK(g0[0] == r->one());
}

TEST_CASE("filtered window too small") {
  RingPtr r = std::make_shared<const MonoidRing>(Coefficients::parse("F2"), Group::free_abelian(1), Cone{},
                                                 MonoidRing::Rule::Filtered);
  CHECK_THROWS_AS(r->gens(GroupElement{0}, Window{4}), WindowTooSmall);
}

TEST_CASE("component enumeration over finite bases") {
  RingPtr r = std::make_shared<const MonoidRing>(Coefficients::parse("Z/4"), Group::free_abelian(1), Cone{{1}},
                                                 MonoidRing::Rule::Filtered);
  CHECK(enumerate_component(*r, GroupElement{1}).size() == 16);
  CHECK(enumerate_component(*r, GroupElement{-1}).size() == 1);
}
