#pragma once

// The nine acceptance criteria as callable suites. Each returns its named
// checks; the runner adds timing against the per-criterion budget.

#include "sysk/checks.hpp"
#include "sysk/kzero.hpp"
#include "sysk/modcat.hpp"
#include "sysk/rings.hpp"

#include <chrono>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace sysk::acceptance {

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<std::vector<Check>(std::uint64_t seed)> run;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0;
  double budget_seconds = 0;
  std::vector<Check> checks;

  std::string first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return c.name + (c.detail.empty() ? "" : " (" + c.detail + ")") + " seed=" + std::to_string(c.seed);
    if (seconds >= budget_seconds) return "over time budget";
    return "";
  }
};

inline RingPtr f2t() {
  return std::make_shared<const MonoidRing>(Coefficients::parse("F2"), Group::free_abelian(1),
                                            std::vector<std::vector<std::int64_t>>{{1}});
}

inline std::vector<GroupElement> range1(std::int64_t lo, std::int64_t hi) {
  std::vector<GroupElement> out;
  for (std::int64_t k = lo; k <= hi; ++k) out.push_back(GroupElement{k});
  return out;
}

// 1. split identities and naturality of the short exact sequence
inline std::vector<Check> lt_identity_suite(std::uint64_t seed, std::size_t objects = 500, std::size_t morphisms = 200) {
  std::vector<Check> out;
  for (const char* base : {"F2", "Z/4"}) {
    RingPtr r = std::make_shared<const MonoidRing>(Coefficients::parse(base), Group::free_abelian(1),
                                                   std::vector<std::vector<std::int64_t>>{{1}});
    Rng rng(seed);
    auto shape = [&] {
      LTShape s;
      const auto n1 = static_cast<std::size_t>(uniform_int(rng, 1, 2));
      const auto n2 = static_cast<std::size_t>(uniform_int(rng, 1, 2));
      for (std::size_t i = 0; i < n1; ++i) s.degrees.push_back(GroupElement{uniform_int(rng, 2, 3)});
      for (std::size_t i = 0; i < n2; ++i) s.degrees.push_back(GroupElement{uniform_int(rng, 0, 1)});
      s.sizes = {n1, n2};
      return s;
    };
    std::size_t good = 0;
    std::string failed;
    for (std::size_t i = 0; i < objects; ++i) {
      LTShape s = shape();
      IdemObject x = random_lt_idempotent(r, s, rng);
      auto checks = verify_split(idem_split_lt(x, s.sizes[0]));
      if (all_passed(checks))
        ++good;
      else if (failed.empty())
        for (const auto& c : checks)
          if (!c.passed) failed = c.name + " on instance " + std::to_string(i);
    }
    out.push_back({std::string("split identities over ") + base + "[t]", good == objects,
                   std::to_string(good) + "/" + std::to_string(objects) + (failed.empty() ? "" : ", " + failed), seed});
    std::size_t natural = 0;
    for (std::size_t i = 0; i < morphisms; ++i) {
      LTShape sa = shape(), sb = shape();
      IdemObject a = random_lt_idempotent(r, sa, rng);
      IdemObject b = random_lt_idempotent(r, sb, rng);
      IdemMorphism f = random_idem_morphism(a, sa.sizes, b, sb.sizes, rng);
      if (naturality_check_ses(f, sa.sizes[0], sb.sizes[0])) ++natural;
    }
    out.push_back({std::string("ses naturality over ") + base + "[t]", natural == morphisms,
                   std::to_string(natural) + "/" + std::to_string(morphisms), seed});
  }
  return out;
}

// 2. window K_0 of F2[t] against the exhaustive oracle
inline std::vector<Check> window_shadow_suite(std::uint64_t seed, std::size_t samples = 100) {
  std::vector<Check> out;
  RingPtr r = f2t();
  const Group& z = r->grading();
  OrderSpec order(z, {{1}});
  Rng rng(seed);
  IdemClassTable f2 = k0_bruteforce(Coefficients::parse("F2"), 2);
  for (std::int64_t k = 1; k <= 4; ++k) {
    auto s = range1(0, k);
    WindowK0 w(r, degree_window(z, order, s));
    std::vector<Label> shifts;
    for (const auto& d : linear_extension(order, s)) shifts.push_back(Label::degree(d));
    bool free = w.group().rank() == s.size() && w.group().torsion().empty() && w.group().relations().empty() &&
                w.group().labels() == shifts;
    out.push_back({"S={0.." + std::to_string(k) + "} is free on the shifts", free, w.group().summary(), seed});

    IdemClassTable t = classify_finite_category(r, s, 2);
    MapCheck m = oracle_window_check(t, w);
    out.push_back({"oracle classes biject with window classes, k=" + std::to_string(k), m.iso(),
                   std::to_string(t.representatives.size()) + " oracle classes", seed});
    if (k != 4) continue;

    std::size_t agree = 0, slot_agree = 0, slot_total = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      IdemObject x = random_window_object(w, 1 + i % 2, rng);
      auto idx = t.locate(x.carrier().degrees, x.p());
      if (idx && w.group().equal(w.classify(x), w.classify(t.representative(t.class_of[*idx])))) ++agree;
      // slot blocks reduced to F2 matrices, looked up in the base oracle
      IdemObject y = w.arrange(x);
      auto sizes = w.partition().block_sizes(y.carrier());
      for (std::size_t b = 0; b < sizes.size(); ++b) {
        if (sizes[b] == 0) continue;
        ++slot_total;
        IdemObject blk = lt_block(y, sizes, b);
        auto c = w.reduce_block(w.window().slots[b], blk.carrier().degrees, blk.p());
        RMatrix m0 = zero_matrix(*f2.ring, sizes[b], sizes[b]);
        for (std::size_t p = 0; p < sizes[b]; ++p)
          for (std::size_t q = 0; q < sizes[b]; ++q) m0(p, q) = RingElem::scalar(f2.ring->algebra(), c[p][q]);
        std::vector<GroupElement> d(sizes[b], GroupElement{});
        auto j = f2.locate(d, m0);
        if (!j) continue;
        // rank of the oracle's representative for the same class
        const auto& ro = f2.objects[f2.representatives[f2.class_of[*j]]];
        lattice::RatMatrix rm(ro.p.rows(), lattice::RatVector(ro.p.cols(), 0));
        for (std::size_t p = 0; p < ro.p.rows(); ++p)
          for (std::size_t q = 0; q < ro.p.cols(); ++q) rm[p][q] = ro.p(p, q).coefficient(GroupElement{});
        if (w.slot_rank(b, blk) == class_rank(Coefficients::parse("F2"), rm)) ++slot_agree;
      }
    }
    out.push_back({"random window idempotents match oracle classes", agree == samples,
                   std::to_string(agree) + "/" + std::to_string(samples), seed});
    out.push_back({"slot blocks match the F2 oracle", slot_agree == slot_total,
                   std::to_string(slot_agree) + "/" + std::to_string(slot_total), seed});
  }
  return out;
}

// 3. strong systematicity, dual bases and nu/tau
inline std::vector<Check> strong_suite(std::uint64_t seed) {
  std::vector<Check> out;
  auto k = std::make_shared<const PowerLocalization>(2);
  bool strong = true;
  for (std::int64_t g = -4; g <= 4; ++g) strong = strong && is_strongly_systematic_at(*k, GroupElement{g});
  out.push_back({"Z[1/2] strongly systematic for |k| <= 4", strong, "", seed});

  Rng rng(seed);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    GroupElement a{uniform_int(rng, -4, 4)};
    DualBasis d = dual_basis(*k, a);
    RingElem r = random_component_element(*k, a, rng);
    if (d.sums_to_one(*k) && d.degrees_valid(*k) && d.reconstruct(r) == r) ++ok;
  }
  out.push_back({"dual basis reconstructs sampled elements", ok == 100, std::to_string(ok) + "/100", seed});

  RingPtr laurent = std::make_shared<const MonoidRing>(Coefficients::parse("F2"), Group::free_abelian(1),
                                                       std::vector<std::vector<std::int64_t>>{});
  for (const RingPtr& ring : {RingPtr(k), laurent}) {
    std::size_t good = 0;
    for (std::size_t i = 0; i < 200; ++i) {
      GroupElement a{uniform_int(rng, -3, 3)};
      NuTau nt(ring, a);
      RingElem x = random_ring_element(*ring, range1(-3, 3), rng);
      GroupElement ainv = ring->grading().invert(a);
      Tensor t;
      for (int j = 0; j < 2; ++j)
        t.terms.emplace_back(random_component_element(*ring, ainv, rng), random_ring_element(*ring, range1(-2, 2), rng));
      if (nt.nu(nt.tau(x)) == x && nt.equal(nt.tau(nt.nu(t)), t)) ++good;
    }
    out.push_back({"nu tau = id and tau nu = id over " + ring->name(), good == 200, std::to_string(good) + "/200", seed});
  }
  return out;
}

// 4. counterexample regression
inline std::vector<Check> counterexample_suite(std::uint64_t) { return counterexamples(2).checks; }

// 5. hom vanishing outside the positive cone
inline std::vector<Check> hom_vanishing_suite(std::uint64_t seed) {
  RingPtr r = std::make_shared<const MonoidRing>(Coefficients::parse("F2"), Group::free_abelian(2),
                                                 std::vector<std::vector<std::int64_t>>{{1, 0}, {0, 1}});
  OrderSpec cone(r->grading(), {{1, 0}, {0, 1}});
  const Group& g = r->grading();
  Rng rng(seed);
  std::size_t outside = 0, inside = 0, empty = 0, nonempty = 0;
  while (outside < 100 || inside < 100) {
    GroupElement src = random_element(g, rng, 5), tgt = random_element(g, rng, 5);
    bool positive = cone.in_cone(g.left_quotient(tgt, src));
    bool has = !hom_component_basis(*r, src, tgt).empty();
    if (!positive && outside < 100) {
      ++outside;
      if (!has) ++empty;
    } else if (positive && inside < 100) {
      ++inside;
      if (has) ++nonempty;
    }
  }
  return {{"hom vanishes outside G+", empty == 100, std::to_string(empty) + "/100", seed},
          {"hom is nonzero inside G+", nonempty == 100, std::to_string(nonempty) + "/100", seed}};
}

// 6. semidirect decomposition on windows
inline std::vector<Check> semidirect_suite(std::uint64_t seed) {
  std::vector<Check> out;
  const Coefficients f2 = Coefficients::parse("F2");
  {
    Group g = Group::direct_product(Group::free_abelian(1), Group::cyclic(2));
    RingPtr r = std::make_shared<const MonoidRing>(f2, g, std::vector<std::vector<std::int64_t>>{{1}});
    OrderSpec order(Group::free_abelian(1), {{1}});
    auto s = range1(0, 3);
    auto res = theorem_semidirect_iso(r, order, s, 2, seed);
    for (auto c : res.checks) {
      c.name = "Z x C2: " + c.name;
      out.push_back(c);
    }
    out.push_back({"Z x C2: H-side group is Z", res.h_group.rank() == 1 && res.h_group.torsion().empty(),
                   res.h_group.summary(), seed});
    out.push_back({"Z x C2: window rank |S|", res.rhs.rank() == s.size(), res.rhs.summary(), seed});
  }
  {
    Group g = Group::semidirect(Group::free_abelian(2), Group::cyclic(2), "swap");
    RingPtr r = std::make_shared<const MonoidRing>(f2, g, std::vector<std::vector<std::int64_t>>{{1, 0}, {0, 1}});
    OrderSpec order(Group::free_abelian(2), {{1, 0}, {0, 1}});
    std::vector<GroupElement> s;
    for (std::int64_t a = 0; a <= 1; ++a)
      for (std::int64_t b = 0; b <= 1; ++b) s.push_back(GroupElement{a, b});
    auto res = theorem_semidirect_iso(r, order, s, 2, seed);
    for (auto c : res.checks) {
      c.name = "Z^2 x| C2: " + c.name;
      out.push_back(c);
    }
  }
  return out;
}

// 7. toric monoid rings
inline std::vector<Check> toric_suite(std::uint64_t seed) {
  std::vector<Check> out;
  const Coefficients f2 = Coefficients::parse("F2");
  {
    ToricSetup t = make_toric(f2, {{1, 0}, {0, 1}}, 2);
    std::vector<GroupElement> hw;
    for (std::int64_t a = 0; a <= 2; ++a)
      for (std::int64_t b = 0; b <= 2; ++b) hw.push_back(GroupElement{a, b});
    auto res = theorem_quotient_iso(t.ring, t.order_h, hw, {t.group.kernel().identity()}, hnf_section(t.group), seed);
    for (auto c : res.checks) {
      c.name = "N^2: " + c.name;
      out.push_back(c);
    }
    out.push_back({"N^2: window K_0 is free of rank |window|",
                   res.rhs.rank() == hw.size() && res.rhs.torsion().empty(), res.rhs.summary(), seed});
  }
  {
    ToricSetup t = make_toric(f2, {{1, 0}}, 2);
    out.push_back({"N x Z: N = {0} x Z", t.group.n_basis() == lattice::IntMatrix{{0, 1}}, "", seed});
    auto hw = range1(0, 3);
    auto nw = range1(-1, 1);
    auto cor = corollary_strong_reduction(t.ring, t.order_h, hw, nw, seed);
    for (auto c : cor.checks) {
      c.name = "N x Z: " + c.name;
      out.push_back(c);
    }
    out.push_back({"N x Z: coset group rank", cor.group.rank() == hw.size(), cor.group.summary(), seed});
    auto alt = theorem_quotient_iso(t.ring, t.order_h, hw, nw, shifted_section(t.group), seed);
    out.push_back({"N x Z: another section gives the same rank", alt.map.iso() && alt.rhs.rank() == cor.quotient.rhs.rank(),
                   alt.rhs.summary(), seed});
  }
  return out;
}

// 8. filtered against associated graded
inline std::vector<Check> filtered_suite(std::uint64_t seed) {
  return filtered_graded_agreement(Coefficients::parse("F2"), 3, 50, seed).checks;
}

// 9. oracle self-consistency
inline std::vector<Check> oracle_suite(std::uint64_t seed) {
  std::vector<Check> out;
  for (const char* base : {"F2", "Z/4"}) {
    IdemClassTable t = k0_bruteforce(Coefficients::parse(base), 2);
    out.push_back({std::string("oracle group over ") + base + " is Z",
                   t.group.rank() == 1 && t.group.torsion().empty(), t.group.summary(), seed});
    out.push_back({std::string("class = rank over ") + base, oracle_rank_check(t).iso(),
                   std::to_string(t.representatives.size()) + " classes, " + std::to_string(t.objects.size()) +
                       " idempotents",
                   seed});
  }
  return out;
}

inline std::vector<Criterion> criteria() {
  return {
      {1, "LT identity suite", 30, [](std::uint64_t s) { return lt_identity_suite(s); }},
      {2, "window K_0 of F2[t] and the oracle", 60, [](std::uint64_t s) { return window_shadow_suite(s); }},
      {3, "strongly systematic suite", 30, strong_suite},
      {4, "counterexample regression", 5, counterexample_suite},
      {5, "hom vanishing", 10, hom_vanishing_suite},
      {6, "semidirect decomposition", 60, semidirect_suite},
      {7, "toric K_0", 60, toric_suite},
      {8, "filtered and graded agree", 30, filtered_suite},
      {9, "oracle self-consistency", 60, oracle_suite},
  };
}

inline CriterionResult run_criterion(const Criterion& c, std::uint64_t seed) {
  CriterionResult r{c.id, c.title, false, 0, c.budget_seconds, {}};
  auto t0 = std::chrono::steady_clock::now();
  try {
    r.checks = c.run(seed);
  } catch (const std::exception& e) {
    r.checks.push_back({"threw", false, e.what(), seed});
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.passed = all_passed(r.checks) && !r.checks.empty() && r.seconds < r.budget_seconds;
  return r;
}

}  // namespace sysk::acceptance
