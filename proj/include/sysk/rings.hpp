#pragma once

// Concrete G-systematic rings. Every ring lives inside an Algebra: a free
// B-module on the elements of a monomial group, multiplied by composing
// monomials. Components R_g are B-submodules carved out by a per-variant
// membership rule.

#include "sysk/coefficients.hpp"
#include "sysk/errors.hpp"
#include "sysk/groups.hpp"
#include "sysk/lattice.hpp"
#include "sysk/numeric.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sysk {

struct Algebra {
  Coefficients coeffs;
  Group monomials;
  std::string name;
};
using AlgebraPtr = std::shared_ptr<const Algebra>;

inline AlgebraPtr make_algebra(Coefficients c, Group g, std::string name) {
  return std::make_shared<const Algebra>(Algebra{c, std::move(g), std::move(name)});
}

class RingElem {
 public:
  using Term = std::pair<GroupElement, Rational>;

  RingElem() = default;
  explicit RingElem(AlgebraPtr a) : alg_(std::move(a)) {}

  static RingElem monomial(AlgebraPtr a, GroupElement m, const Rational& c = 1) {
    RingElem x(std::move(a));
    x.alg_->monomials.check(m);
    Rational v = x.alg_->coeffs.normalize(c);
    if (v != 0) x.terms_.emplace_back(std::move(m), v);
    return x;
  }

  static RingElem scalar(AlgebraPtr a, const Rational& c) {
    GroupElement e = a->monomials.identity();
    return monomial(std::move(a), std::move(e), c);
  }

  static RingElem from_terms(AlgebraPtr a, const std::vector<Term>& terms) {
    std::map<GroupElement, Rational> acc;
    for (const auto& [m, c] : terms) {
      a->monomials.check(m);
      acc[m] += c;
    }
    RingElem x(std::move(a));
    x.absorb(acc);
    return x;
  }

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const GroupElement& m) const {
    for (const auto& [mm, c] : terms_)
      if (mm == m) return c;
    return 0;
  }

  RingElem scaled(const Rational& c) const {
    std::map<GroupElement, Rational> acc;
    for (const auto& [m, v] : terms_) acc[m] = v * c;
    RingElem x(alg_);
    x.absorb(acc);
    return x;
  }

  RingElem operator-() const { return scaled(-1); }

  friend RingElem operator+(const RingElem& a, const RingElem& b) {
    same(a, b);
    std::map<GroupElement, Rational> acc;
    for (const auto& [m, c] : a.terms_) acc[m] += c;
    for (const auto& [m, c] : b.terms_) acc[m] += c;
    RingElem x(a.alg_ ? a.alg_ : b.alg_);
    x.absorb(acc);
    return x;
  }

  friend RingElem operator-(const RingElem& a, const RingElem& b) { return a + (-b); }

  friend RingElem operator*(const RingElem& a, const RingElem& b) {
    same(a, b);
    const AlgebraPtr& alg = a.alg_ ? a.alg_ : b.alg_;
    RingElem x(alg);
    if (a.is_zero() || b.is_zero()) return x;
    std::map<GroupElement, Rational> acc;
    for (const auto& [m1, c1] : a.terms_)
      for (const auto& [m2, c2] : b.terms_) acc[alg->monomials.compose(m1, m2)] += c1 * c2;
    x.absorb(acc);
    return x;
  }

  RingElem& operator+=(const RingElem& b) { return *this = *this + b; }

  friend bool operator==(const RingElem& a, const RingElem& b) {
    same(a, b);
    return a.terms_ == b.terms_;
  }

  friend bool operator<(const RingElem& a, const RingElem& b) { return a.terms_ < b.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    const GroupElement e = alg_->monomials.identity();
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& [m, c] = terms_[i];
      if (i) s += " + ";
      if (m == e) {
        s += sysk::to_string(c);
        continue;
      }
      if (c != 1) s += sysk::to_string(c) + "*";
      s += "x^" + m.to_string();
    }
    return s;
  }

 private:
  static void same(const RingElem& a, const RingElem& b) {
    if (!a.alg_ || !b.alg_ || a.alg_ == b.alg_) return;
    if (!(a.alg_->coeffs == b.alg_->coeffs) || !a.alg_->monomials.same_as(b.alg_->monomials))
      throw SpecMismatch("ring elements from different rings: " + a.alg_->name + " and " +
                         b.alg_->name);
  }

  void absorb(const std::map<GroupElement, Rational>& acc) {
    terms_.clear();
    for (const auto& [m, c] : acc) {
      Rational v = alg_->coeffs.normalize(c);
      if (v != 0) terms_.emplace_back(m, v);
    }
  }

  AlgebraPtr alg_;
  std::vector<Term> terms_;
};

/// Box radius bounding enumerations of infinite components.
struct Window {
  std::int64_t box = 16;
};

class SystematicRing {
 public:
  virtual ~SystematicRing() = default;

  virtual const Group& grading() const = 0;
  virtual const AlgebraPtr& algebra() const = 0;
  /// Components R_g are modules over this ring; spans are taken over it.
  virtual const Coefficients& span_base() const = 0;
  virtual bool member(const RingElem& x, const GroupElement& g) const = 0;
  /// Finite additive generating set of R_g over span_base().
  virtual std::vector<RingElem> gens(const GroupElement& g, const Window& w = {}) const = 0;
  /// Writes x as a sum of elements of components.
  virtual std::vector<std::pair<GroupElement, RingElem>> decompose(const RingElem& x) const = 0;
  virtual std::string name() const = 0;
  virtual std::string kind() const = 0;

  RingElem zero() const { return RingElem(algebra()); }
  RingElem one() const { return RingElem::scalar(algebra(), 1); }

  bool contains(const RingElem& x) const {
    try {
      decompose(x);
      return true;
    } catch (const InvalidElement&) {
      return false;
    }
  }
};
using RingPtr = std::shared_ptr<const SystematicRing>;

// ------------------------------------------------------------ monoid rings

/// B[A] for a monoid A in G cut out by linear functionals on the leading
/// coordinates of the encoding (the N part for semidirect gradings). With
/// no functionals A = G and B[A] is the group ring. The graded rule puts
/// R_g = B[g] for g in A; the filtered rule puts R_g = span{[m] : m in A,
/// g - m in A}.
class MonoidRing : public SystematicRing {
 public:
  enum class Rule { Graded, Filtered };

  MonoidRing(Coefficients base, Group g, std::vector<std::vector<std::int64_t>> support,
             Rule rule = Rule::Graded, std::string label = "")
      : grading_(g), support_(std::move(support)), rule_(rule) {
    if (base.kind() == Coefficients::Kind::Localized)
      throw ConfigError("monoid rings over " + base.name() + " are not supported");
    for (const auto& f : support_)
      if (f.size() > g.encoding_size()) throw ConfigError("support functional too long");
    if (!support_.empty() && g.kind() == Group::Kind::FiniteTable)
      throw ConfigError("support cones need lattice coordinates");
    if (rule_ == Rule::Filtered && g.kind() != Group::Kind::FreeAbelian &&
        g.kind() != Group::Kind::Extension)
      throw ConfigError("filtered monoid rings need a lattice grading");
    if (label.empty()) {
      label = base.name() + "[" + g.describe() + (support_.empty() ? "" : "+") + "]";
      if (rule_ == Rule::Filtered) label += " filtered";
    }
    base_ = base;
    alg_ = make_algebra(base, g, label);
  }

  const Group& grading() const override { return grading_; }
  const AlgebraPtr& algebra() const override { return alg_; }
  const Coefficients& span_base() const override { return base_; }
  std::string name() const override { return alg_->name; }
  std::string kind() const override { return "monoid_ring"; }
  Rule rule() const { return rule_; }
  const std::vector<std::vector<std::int64_t>>& support() const { return support_; }

  bool in_support(const GroupElement& m) const {
    for (const auto& f : support_) {
      Int s = 0;
      for (std::size_t i = 0; i < f.size(); ++i) s += Int(f[i]) * m[i];
      if (s < 0) return false;
    }
    return true;
  }

  bool member(const RingElem& x, const GroupElement& g) const override {
    grading_.check(g);
    for (const auto& [m, c] : x.terms()) {
      if (rule_ == Rule::Graded) {
        if (m != g || !in_support(m)) return false;
      } else if (!in_support(m) || !in_support(grading_.compose(g, grading_.invert(m)))) {
        return false;
      }
    }
    return true;
  }

  std::vector<RingElem> gens(const GroupElement& g, const Window& w = {}) const override {
    grading_.check(g);
    if (rule_ == Rule::Graded) {
      if (!in_support(g)) return {};
      return {RingElem::monomial(alg_, g)};
    }
    std::int64_t radius = w.box;
    for (auto x : g.coords) radius = std::max(radius, (x < 0 ? -x : x) + w.box / 2);
    const std::size_t r = g.size();
    std::vector<RingElem> out;
    std::vector<std::int64_t> m(r, -radius);
    bool boundary_hit = false;
    while (true) {
      GroupElement mm(m);
      if (in_support(mm) && in_support(grading_.compose(g, grading_.invert(mm)))) {
        for (auto v : m)
          if (v == radius || v == -radius) boundary_hit = true;
        out.push_back(RingElem::monomial(alg_, mm));
      }
      std::size_t i = 0;
      while (i < r && m[i] == radius) m[i++] = -radius;
      if (i == r) break;
      ++m[i];
    }
    if (boundary_hit)
      throw WindowTooSmall("component " + g.to_string() + " of " + name() +
                           " reaches the enumeration box");
    return out;
  }

  std::vector<std::pair<GroupElement, RingElem>> decompose(const RingElem& x) const override {
    std::vector<std::pair<GroupElement, RingElem>> out;
    for (const auto& [m, c] : x.terms()) {
      if (!in_support(m))
        throw InvalidElement("monomial " + m.to_string() + " lies outside the support of " + name());
      out.emplace_back(m, RingElem::monomial(alg_, m, c));
    }
    return out;
  }

 private:
  Group grading_;
  std::vector<std::vector<std::int64_t>> support_;
  Rule rule_;
  Coefficients base_ = Coefficients::integers();
  AlgebraPtr alg_;
};

/// Z[1/s] graded by Z with R_k = s^k Z.
class PowerLocalization : public SystematicRing {
 public:
  explicit PowerLocalization(std::int64_t s)
      : s_(s),
        grading_(Group::free_abelian(1)),
        alg_(make_algebra(Coefficients::localized(s), Group::free_abelian(0),
                          "Z[1/" + std::to_string(s) + "]")) {}

  const Group& grading() const override { return grading_; }
  const AlgebraPtr& algebra() const override { return alg_; }
  const Coefficients& span_base() const override { return base_; }
  std::string name() const override { return alg_->name; }
  std::string kind() const override { return "power_localization"; }
  std::int64_t inverted() const { return s_; }

  Rational power(std::int64_t k) const {
    Rational p = 1;
    for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) p *= s_;
    return k < 0 ? Rational(1) / p : p;
  }

  Rational value(const RingElem& x) const { return x.coefficient(GroupElement{}); }

  RingElem element(const Rational& v) const { return RingElem::scalar(alg_, v); }

  bool member(const RingElem& x, const GroupElement& g) const override {
    grading_.check(g);
    return is_integral(value(x) / power(g[0]));
  }

  std::vector<RingElem> gens(const GroupElement& g, const Window& = {}) const override {
    grading_.check(g);
    return {element(power(g[0]))};
  }

  std::vector<std::pair<GroupElement, RingElem>> decompose(const RingElem& x) const override {
    if (x.is_zero()) return {};
    std::int64_t k = 0;
    while (!is_integral(value(x) * power(k))) ++k;
    return {{GroupElement{-k}, x}};
  }

 private:
  std::int64_t s_;
  Group grading_;
  Coefficients base_ = Coefficients::integers();
  AlgebraPtr alg_;
};

/// R_N = sum of R_n over a subgroup N, graded by N through an embedding.
class Subring : public SystematicRing {
 public:
  Subring(RingPtr parent, GroupHom embed) : parent_(std::move(parent)), embed_(std::move(embed)) {}

  const Group& grading() const override { return embed_.source; }
  const AlgebraPtr& algebra() const override { return parent_->algebra(); }
  const Coefficients& span_base() const override { return parent_->span_base(); }
  std::string name() const override { return parent_->name() + "|" + embed_.description; }
  std::string kind() const override { return "subring"; }
  const RingPtr& parent() const { return parent_; }
  const GroupHom& embedding() const { return embed_; }

  bool member(const RingElem& x, const GroupElement& n) const override {
    return parent_->member(x, embed_(n));
  }

  std::vector<RingElem> gens(const GroupElement& n, const Window& w = {}) const override {
    embed_.source.check(n);
    return parent_->gens(embed_(n), w);
  }

  std::vector<std::pair<GroupElement, RingElem>> decompose(const RingElem& x) const override {
    std::vector<std::pair<GroupElement, RingElem>> out;
    for (auto& [g, y] : parent_->decompose(x)) {
      auto n = embed_.preimage(g);
      if (!n) throw InvalidElement("degree " + g.to_string() + " is outside the subgroup");
      out.emplace_back(*n, y);
    }
    return out;
  }

 private:
  RingPtr parent_;
  GroupHom embed_;
};

inline RingPtr subring_over_subgroup(const RingPtr& r, const GroupHom& embed) {
  if (embed.description == "identity") return r;
  return std::make_shared<const Subring>(r, embed);
}

// ----------------------------------------------------------- span helpers

/// Coordinates of ring elements over the union of their monomials.
struct CoordinateSystem {
  std::vector<GroupElement> monomials;

  explicit CoordinateSystem(const std::vector<RingElem>& elems) {
    std::set<GroupElement> all;
    for (const auto& x : elems)
      for (const auto& t : x.terms()) all.insert(t.first);
    monomials.assign(all.begin(), all.end());
  }

  lattice::RatVector coords(const RingElem& x) const {
    lattice::RatVector v(monomials.size(), 0);
    for (const auto& [m, c] : x.terms()) {
      auto it = std::lower_bound(monomials.begin(), monomials.end(), m);
      if (it == monomials.end() || *it != m) throw SpecMismatch("monomial outside coordinate system");
      v[static_cast<std::size_t>(it - monomials.begin())] = c;
    }
    return v;
  }
};

/// Coefficients c over the span base with sum c_i gens[i] == x, if any.
inline std::optional<lattice::RatVector> span_coefficients(const SystematicRing& r,
                                                           const std::vector<RingElem>& gens,
                                                           const RingElem& x) {
  std::vector<RingElem> all = gens;
  all.push_back(x);
  CoordinateSystem cs(all);
  lattice::RatMatrix rows;
  for (const auto& g : gens) rows.push_back(cs.coords(g));
  return solve_span(r.span_base(), rows, cs.coords(x));
}

inline RingElem combine(const SystematicRing& r, const std::vector<RingElem>& gens,
                        const lattice::RatVector& c) {
  RingElem out = r.zero();
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (c[i] != 0) out += gens[i].scaled(c[i]);
  return out;
}

inline bool in_span(const SystematicRing& r, const std::vector<RingElem>& gens, const RingElem& x) {
  return span_coefficients(r, gens, x).has_value();
}

inline std::vector<RingElem> products(const std::vector<RingElem>& a, const std::vector<RingElem>& b) {
  std::vector<RingElem> out;
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

/// 1 in R_{g^{-1}} R_g.
inline bool is_strongly_systematic_at(const SystematicRing& r, const GroupElement& g,
                                      const Window& w = {}) {
  const Group& G = r.grading();
  auto prods = products(r.gens(G.invert(g), w), r.gens(g, w));
  return in_span(r, prods, r.one());
}

/// 1 = sum_j alpha_j beta_j with alpha_j in R_a and beta_j in R_{a^{-1}}.
struct DualBasis {
  GroupElement degree;
  std::vector<std::pair<RingElem, RingElem>> pairs;

  /// rho_j(x) = beta_j x
  RingElem rho(std::size_t j, const RingElem& x) const { return pairs[j].second * x; }

  RingElem reconstruct(const RingElem& x) const {
    RingElem out(x.algebra());
    for (std::size_t j = 0; j < pairs.size(); ++j) out += pairs[j].first * rho(j, x);
    return out;
  }

  bool sums_to_one(const SystematicRing& r) const {
    RingElem s = r.zero();
    for (const auto& [a, b] : pairs) s += a * b;
    return s == r.one();
  }

  bool degrees_valid(const SystematicRing& r) const {
    const GroupElement inv = r.grading().invert(degree);
    for (const auto& [a, b] : pairs)
      if (!r.member(a, degree) || !r.member(b, inv)) return false;
    return true;
  }
};

inline DualBasis dual_basis(const SystematicRing& r, const GroupElement& a, const Window& w = {}) {
  const GroupElement ainv = r.grading().invert(a);
  auto ga = r.gens(a, w);
  auto gb = r.gens(ainv, w);
  auto prods = products(ga, gb);
  auto c = span_coefficients(r, prods, r.one());
  if (!c)
    throw NotStronglySystematic("1 is not in R_" + a.to_string() + " R_" + ainv.to_string() +
                                " of " + r.name());
  DualBasis d{a, {}};
  for (std::size_t i = 0; i < ga.size(); ++i)
    for (std::size_t j = 0; j < gb.size(); ++j) {
      const Rational& cij = (*c)[i * gb.size() + j];
      if (cij != 0) d.pairs.emplace_back(ga[i].scaled(cij), gb[j]);
    }
  return d;
}

/// Every element of a component over a finite span base.
inline std::vector<RingElem> enumerate_component(const SystematicRing& r, const GroupElement& g,
                                                 std::size_t limit = 1u << 16,
                                                 const Window& w = {}) {
  const auto& b = r.span_base();
  auto gens = r.gens(g, w);
  std::set<RingElem> seen{r.zero()};
  std::vector<RingElem> frontier{r.zero()};
  for (const auto& x : gens) {
    std::vector<RingElem> next;
    for (const auto& y : frontier)
      for (const auto& c : b.elements()) {
        RingElem z = y + x.scaled(c);
        next.push_back(z);
      }
    frontier.clear();
    std::set<RingElem> uniq;
    for (auto& z : next)
      if (uniq.insert(z).second) frontier.push_back(z);
    if (frontier.size() > limit) throw BudgetExceeded("component too large to enumerate");
  }
  std::sort(frontier.begin(), frontier.end());
  return frontier;
}

inline RingElem random_component_element(const SystematicRing& r, const GroupElement& g, Rng& rng,
                                         const Window& w = {}) {
  RingElem out = r.zero();
  for (const auto& x : r.gens(g, w)) out += x.scaled(r.span_base().random(rng));
  return out;
}

/// Random element supported on the listed degrees.
inline RingElem random_ring_element(const SystematicRing& r, const std::vector<GroupElement>& degrees,
                                    Rng& rng, const Window& w = {}) {
  RingElem out = r.zero();
  for (const auto& g : degrees) out += random_component_element(r, g, rng, w);
  return out;
}

// ------------------------------------------------------ axiom spot checks

/// SR1 on canonical forms: the pieces lie in their components and sum to x.
inline bool check_sr1(const SystematicRing& r, const RingElem& x) {
  RingElem s = r.zero();
  for (const auto& [g, y] : r.decompose(x)) {
    if (!r.member(y, g)) return false;
    s += y;
  }
  return s == x;
}

inline bool check_sr2(const SystematicRing& r, const GroupElement& g, const GroupElement& h,
                      const Window& w = {}) {
  const GroupElement gh = r.grading().compose(g, h);
  for (const auto& x : r.gens(g, w))
    for (const auto& y : r.gens(h, w))
      if (!r.member(x * y, gh)) return false;
  return true;
}

inline bool check_sr3(const SystematicRing& r) { return r.member(r.one(), r.grading().identity()); }

/// R_{gh} is spanned by R_g R_h.
inline bool components_multiply_onto(const SystematicRing& r, const GroupElement& g,
                                     const GroupElement& h, const Window& w = {}) {
  auto prods = products(r.gens(g, w), r.gens(h, w));
  for (const auto& z : r.gens(r.grading().compose(g, h), w))
    if (!in_span(r, prods, z)) return false;
  return true;
}

}  // namespace sysk
