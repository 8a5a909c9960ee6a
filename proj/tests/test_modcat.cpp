#include "sysk/modcat.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <memory>

using namespace sysk;

namespace {

using Cone = std::vector<std::vector<std::int64_t>>;

RingPtr poly(const char* base = "F2") {
  return std::make_shared<const MonoidRing>(Coefficients::parse(base), Group::free_abelian(1), Cone{{1}});
}

RingPtr laurent() {
  return std::make_shared<const MonoidRing>(Coefficients::parse("F2"), Group::free_abelian(1), Cone{});
}

RingElem t(const RingPtr& r, std::int64_t k) { return RingElem::monomial(r->algebra(), GroupElement{k}); }

FreeSysModule free_on(const RingPtr& r, std::initializer_list<std::int64_t> ds) {
  std::vector<GroupElement> d;
  for (auto x : ds) d.push_back(GroupElement{x});
  return FreeSysModule(r, d);
}

LTShape shape(std::vector<std::int64_t> b1, std::vector<std::int64_t> b2) {
  LTShape s;
  for (auto x : b1) s.degrees.push_back(GroupElement{x});
  for (auto x : b2) s.degrees.push_back(GroupElement{x});
  s.sizes = {b1.size(), b2.size()};
  return s;
}

}  // namespace

TEST_CASE("shift functor on free modules") {
  auto r = poly();
  FreeSysModule m = free_on(r, {0, 1});
  CHECK(shift_module(GroupElement{2}, m) == free_on(r, {2, 3}));
  CHECK(shift_module(GroupElement{0}, m) == m);
  CHECK(shift_module(GroupElement{-1}, shift_module(GroupElement{3}, m)) == shift_module(GroupElement{2}, m));
}

TEST_CASE("morphism degree constraints") {
  auto r = poly();
  RMatrix m = zero_matrix(*r, 1, 1);
  m(0, 0) = t(r, 2);
  SysMorphism ok(free_on(r, {2}), free_on(r, {0}), m);
  CHECK(ok.is_valid());

  RMatrix bad_m = zero_matrix(*r, 1, 1);
  bad_m(0, 0) = t(r, 1);
  SysMorphism bad(free_on(r, {0}), free_on(r, {2}), bad_m);
  auto v = bad.validate();
  REQUIRE(v.size() == 1);
  CHECK(v[0].row == 0);
  CHECK(v[0].col == 0);
  CHECK(v[0].required == GroupElement{-2});

  CHECK(SysMorphism::zero(free_on(r, {0}), free_on(r, {2})).is_valid());
  CHECK_THROWS_AS(SysMorphism(free_on(r, {0, 1}), free_on(r, {0}), zero_matrix(*r, 2, 2)), SpecMismatch);
}

TEST_CASE("hom components") {
  auto r = poly();
  auto h = hom_component_basis(*r, GroupElement{3}, GroupElement{1});
  REQUIRE(h.size() == 1);
  CHECK(h[0] == t(r, 2));
  CHECK(hom_component_basis(*r, GroupElement{1}, GroupElement{3}).empty());
  CHECK(hom_component_basis(*laurent(), GroupElement{1}, GroupElement{3}).size() == 1);
}

TEST_CASE("idempotent objects are validated") {
  auto z4 = poly("Z/4");
  RMatrix two = zero_matrix(*z4, 1, 1);
  two(0, 0) = z4->one() + z4->one();
  CHECK_THROWS_AS(IdemObject(free_on(z4, {0}), two), NotIdempotent);

  auto r = poly();

  FreeSysModule up = free_on(r, {1, 0});
  RMatrix p = zero_matrix(*r, 2, 2);
  p(0, 0) = r->one();
  p(0, 1) = t(r, 1);  // would need degree -1
  CHECK_THROWS_AS(IdemObject(up, p), InvalidMorphism);
}

TEST_CASE("split of a block diagonal idempotent") {
  auto r = poly();
  FreeSysModule m = free_on(r, {1, 0});
  RMatrix p = identity_matrix(*r, 2);
  SplitData s = idem_split_lt(IdemObject(m, p), 1);
  CHECK(all_passed(verify_split(s)));
  CHECK(s.Q == IdemObject::free(free_on(r, {1})));
  CHECK(s.S == IdemObject::free(free_on(r, {0})));
  CHECK(s.raw.M == identity_matrix(*r, 2));
  CHECK(s.raw.pi_rho == identity_matrix(*r, 2));
}

TEST_CASE("split with a nonzero corner") {
  auto r = poly();
  FreeSysModule m = free_on(r, {1, 0});
  RMatrix p = zero_matrix(*r, 2, 2);
  p(0, 0) = r->one();
  p(1, 0) = t(r, 1);  // p21 p11 + p22 p21 = p21 with p22 = 0
  SplitData s = idem_split_lt(IdemObject(m, p), 1);
  CHECK(all_passed(verify_split(s)));
  CHECK(s.raw.rho.is_zero());
  CHECK(s.raw.M(1, 0) == t(r, 1));
}

TEST_CASE("split rejects upper entries") {
  auto r = laurent();
  RMatrix p = zero_matrix(*r, 2, 2);
  p(0, 0) = r->one();
  p(0, 1) = t(r, 1);
  CHECK_THROWS_AS(split_lower_triangular(p, 1), NotLowerTriangular);
}

TEST_CASE("split identities on random objects over Z/4[t]") {
  auto r = poly("Z/4");
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    IdemObject x = random_lt_idempotent(r, shape({2, 3}, {0, 1}), rng);
    CHECK(all_passed(verify_split(idem_split_lt(x, 2))));
  }
}

TEST_CASE("T_k agrees with the recursive split") {
  auto r = poly();
  Rng rng(12);
  LTShape s;
  for (std::int64_t d : {5, 4, 2, 2, 0}) s.degrees.push_back(GroupElement{d});
  s.sizes = {2, 2, 1};
  for (int i = 0; i < 50; ++i) {
    IdemObject x = random_lt_idempotent(r, s, rng);
    for (std::size_t k = 0; k < 3; ++k) CHECK(lt_block(x, s.sizes, k) == lt_block_recursive(x, s.sizes, k));
  }
}

TEST_CASE("T_k after epsilon_k is the identity") {
  auto r = poly();
  Rng rng(13);
  IdemObject x = random_lt_idempotent(r, shape({1}, {1}), rng);
  for (std::size_t k = 0; k < 3; ++k) {
    auto [y, sizes] = epsilon(x, 3, k);
    CHECK(lt_block(y, sizes, k) == x);
    for (std::size_t j = 0; j < 3; ++j)
      if (j != k) CHECK(lt_block(y, sizes, j).size() == 0);
  }
}

TEST_CASE("direct sums in LT are biproducts") {
  auto r = poly();
  Rng rng(14);
  for (int i = 0; i < 30; ++i) {
    LTShape sx = shape({3}, {0, 1}), sy = shape({2, 2}, {1});
    IdemObject x = random_lt_idempotent(r, sx, rng);
    IdemObject y = random_lt_idempotent(r, sy, rng);
    LTSum s = lt_direct_sum(x, sx.sizes, y, sy.sizes);
    CHECK(s.sizes == BlockSizes{3, 3});
    CHECK(all_passed(verify_biproduct(s)));
  }
}

TEST_CASE("short exact sequence is natural in random morphisms") {
  auto r = poly();
  Rng rng(15);
  for (int i = 0; i < 50; ++i) {
    LTShape sa = shape({2, 3}, {0}), sb = shape({3}, {0, 1});
    IdemObject a = random_lt_idempotent(r, sa, rng);
    IdemObject b = random_lt_idempotent(r, sb, rng);
    IdemMorphism f = random_idem_morphism(a, sa.sizes, b, sb.sizes, rng);
    CHECK(naturality_check_ses(f, 2, 1));
  }
}

TEST_CASE("rho fails to be natural over F2[t] and F2[Z]") {
  auto w = rho_not_natural_witness(poly(), shape({1}, {0}), 500, 7);
  REQUIRE(w.found);
  CHECK(w.status == "found");
  CHECK_FALSE(w.rho_then_f == w.f_then_rho);

  auto l = rho_not_natural_witness(laurent(), shape({1}, {0}), 500, 7);
  CHECK(l.found);
}

TEST_CASE("rho is natural when everything is block diagonal") {
  RingPtr r = std::make_shared<const MonoidRing>(Coefficients::parse("F2"), Group::free_abelian(2),
                                                 Cone{{1, 0}, {0, 1}});
  LTShape s;
  s.degrees = {GroupElement{1, 0}, GroupElement{0, 1}};
  s.sizes = {1, 1};
  auto w = rho_not_natural_witness(r, s, 200, 3, true);
  CHECK_FALSE(w.found);
  CHECK(w.status == "SearchExhausted");
  CHECK(w.attempts == 200);
}

TEST_CASE("additive functors extend to Idem") {
  auto r = poly();
  Rng rng(16);
  LTShape s = shape({2}, {1, 0});
  std::vector<std::pair<SysMorphism, SysMorphism>> pairs;
  for (int i = 0; i < 20; ++i) {
    FreeSysModule m(r, s.degrees);
    pairs.emplace_back(SysMorphism(m, m, random_degree_matrix(*r, s.degrees, s.degrees, rng)),
                       SysMorphism(m, m, random_degree_matrix(*r, s.degrees, s.degrees, rng)));
  }
  for (const auto& phi : {AdditiveFunctor::identity(), AdditiveFunctor::shift(GroupElement{3}),
                          AdditiveFunctor::reverse()})
    CHECK_NOTHROW(check_additive(phi, pairs));

  IdemObject x = random_lt_idempotent(r, s, rng);
  IdemObject shifted = AdditiveFunctor::shift(GroupElement{3}).apply(x);
  CHECK(shifted.p() == x.p());
  CHECK(shifted.carrier() == shift_module(GroupElement{3}, x.carrier()));

  AdditiveFunctor broken{"broken", [](const FreeSysModule& m) { return m; },
                         [](const SysMorphism& f) { return f.matrix() * f.matrix(); }};
  CHECK_THROWS_AS(check_additive(broken, pairs), NonAdditiveFunctor);
}

TEST_CASE("block functor T_k") {
  auto r = poly();
  SlotPartition slots{{{GroupElement{2}}, {GroupElement{1}, GroupElement{0}}}};
  Rng rng(17);
  LTShape s = shape({2}, {1, 0});
  IdemObject x = random_lt_idempotent(r, s, rng);
  CHECK(AdditiveFunctor::block(slots, 1).apply(x) == lt_block(x, s.sizes, 1));
  CHECK(AdditiveFunctor::block(slots, 0).apply(x) == lt_block(x, s.sizes, 0));
}

TEST_CASE("transformations extend to Idem") {
  auto r = poly();
  Rng rng(18);
  LTShape s = shape({2, 1}, {0});
  IdemObject x = random_lt_idempotent(r, s, rng);
  auto id = NaturalTransformation::identity();
  CHECK(id.hat(x).matrix() == x.p());

  auto u = NaturalTransformation::unreverse();
  CHECK(u.hat(x) * u.hat_inverse(x) == IdemMorphism::identity(x));
  CHECK(u.hat_inverse(x) * u.hat(x) == IdemMorphism::identity(AdditiveFunctor::reverse().apply(x)));
  for (int i = 0; i < 30; ++i) {
    IdemObject a = random_lt_idempotent(r, s, rng);
    IdemObject b = random_lt_idempotent(r, s, rng);
    IdemMorphism f = random_idem_morphism(a, s.sizes, b, s.sizes, rng);
    CHECK(naturality_square(u, f));
    CHECK(naturality_square(id, f));
  }
}

TEST_CASE("morphisms must satisfy q f p = f") {
  auto r = poly();
  FreeSysModule m = free_on(r, {0, 0});
  RMatrix p = zero_matrix(*r, 2, 2);
  p(0, 0) = r->one();
  IdemObject x(m, p);
  RMatrix f = zero_matrix(*r, 2, 2);
  f(1, 1) = r->one();
  CHECK_THROWS_AS(IdemMorphism(x, x, f), InvalidMorphism);
  CHECK_NOTHROW(IdemMorphism(x, x, p));
}

TEST_CASE("slot coefficients") {
  CHECK(slot_coefficients(*poly("Z/4")).name() == Coefficients::parse("Z/4").name());
  PowerLocalization k(2);
  CHECK_NOTHROW(slot_coefficients(k));
}

TEST_CASE("presentations over K_1 and extension to K") {
  auto k = std::make_shared<const PowerLocalization>(2);
  // Z/2 over Z, killed by extending to Z[1/2]
  PresentedModule l = presented_over_k1(k, 1, {{Rational(2)}});
  CHECK(l.summary().torsion == std::vector<Int>{2});
  CHECK(tensor_extend(l).summary().is_zero());
  // Z/3 survives
  PresentedModule m = presented_over_k1(k, 1, {{Rational(3)}});
  CHECK(tensor_extend(m).summary().torsion == std::vector<Int>{3});
  CHECK_THROWS_AS(presented_over_k1(k, 1, {{Rational(1, 2)}}), InvalidElement);
}

TEST_CASE("cokernels over several domains") {
  CHECK(cokernel(Coefficients::parse("Z"), {{Rational(2), Rational(0)}, {Rational(0), Rational(6)}}, 2).torsion ==
        std::vector<Int>{2, 6});
  CHECK(cokernel(Coefficients::parse("Q"), {{Rational(2)}, {Rational(0)}}, 2).free_rank == 1);
  CHECK(cokernel(Coefficients::parse("F2"), {{Rational(1), Rational(1)}, {Rational(1), Rational(1)}}, 2).free_rank ==
        1);
  CHECK(cokernel(Coefficients::parse("Z"), {}, 3).free_rank == 3);
}

TEST_CASE("nu and tau over F2[Z] with a = 3") {
  RingPtr l = laurent();
  NuTau nt(l, GroupElement{3});
  Rng rng(19);
  std::vector<GroupElement> w;
  for (std::int64_t g = -3; g <= 3; ++g) w.push_back(GroupElement{g});
  for (int i = 0; i < 50; ++i) {
    RingElem x = random_ring_element(*l, w, rng);
    CHECK(nt.nu(nt.tau(x)) == x);
    Tensor tt;
    tt.terms.emplace_back(random_component_element(*l, GroupElement{-3}, rng), random_ring_element(*l, w, rng));
    CHECK(nt.equal(nt.tau(nt.nu(tt)), tt));
  }
  Tensor bad;
  bad.terms.emplace_back(t(l, 1), l->one());
  CHECK_THROWS_AS(nt.nu(bad), InvalidElement);
}

TEST_CASE("module components multiply onto exactly for strong rings") {
  auto k = std::make_shared<const PowerLocalization>(2);
  FreeSysModule m(k, {GroupElement{1}, GroupElement{-2}});
  FreeSysModule n = free_on(poly(), {0});
  bool all_k = true;
  for (std::int64_t g = -2; g <= 2; ++g)
    for (std::int64_t h = -2; h <= 2; ++h)
      all_k = all_k && module_components_multiply_onto(m, GroupElement{g}, GroupElement{h});
  CHECK(all_k);
  CHECK_FALSE(module_components_multiply_onto(n, GroupElement{1}, GroupElement{-1}));
}
