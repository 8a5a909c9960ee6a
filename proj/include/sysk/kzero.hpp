#pragma once

// K_0 of window categories P_G[S]: presented abelian groups on slot
// labels, classification of idempotent objects through the diagonal
// blocks, an exhaustive classification oracle for finite hom sets, and the
// decomposition isomorphisms for semidirect products and extensions.

#include "sysk/checks.hpp"
#include "sysk/coefficients.hpp"
#include "sysk/errors.hpp"
#include "sysk/groups.hpp"
#include "sysk/lattice.hpp"
#include "sysk/modcat.hpp"
#include "sysk/rings.hpp"

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

// ------------------------------------------------------------ K_0 groups

/// Basis label: a degree <s>, a pair such as (h, n), or an oracle class.
struct Label {
  std::vector<GroupElement> parts;
  std::int64_t index = 0;

  static Label degree(const GroupElement& g) { return {{g}, 0}; }
  static Label pair(const GroupElement& a, const GroupElement& b) { return {{a, b}, 0}; }
  static Label tagged(const GroupElement& g, std::int64_t c) { return {{g}, c}; }
  static Label oracle_class(std::int64_t c) { return {{}, c}; }

  auto operator<=>(const Label&) const = default;

  std::string to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ";" : "") + parts[i].to_string();
    s += ">";
    if (parts.empty() || index != 0) s += "#" + std::to_string(index);
    return s;
  }
};

struct K0Element {
  std::map<Label, Int> coeffs;

  K0Element() = default;
  K0Element(const Label& l, const Int& c = 1) { add(l, c); }

  void add(const Label& l, const Int& c) {
    if (c == 0) return;
    Int& v = coeffs[l];
    v += c;
    if (v == 0) coeffs.erase(l);
  }

  bool is_zero() const { return coeffs.empty(); }

  friend K0Element operator+(K0Element a, const K0Element& b) {
    for (const auto& [l, c] : b.coeffs) a.add(l, c);
    return a;
  }
  friend K0Element operator-(K0Element a, const K0Element& b) {
    for (const auto& [l, c] : b.coeffs) a.add(l, -c);
    return a;
  }
  K0Element scaled(const Int& k) const {
    K0Element out;
    for (const auto& [l, c] : coeffs) out.add(l, c * k);
    return out;
  }
  friend bool operator==(const K0Element& a, const K0Element& b) { return a.coeffs == b.coeffs; }

  std::string to_string() const {
    if (coeffs.empty()) return "0";
    std::string s;
    for (const auto& [l, c] : coeffs) s += (s.empty() ? "" : " + ") + c.str() + "*" + l.to_string();
    return s;
  }
};

/// Free abelian group on labels modulo the row span of the relations.
class K0Group {
 public:
  K0Group() = default;
  K0Group(std::vector<Label> labels, lattice::IntMatrix relations)
      : labels_(std::move(labels)), relations_(std::move(relations)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) index_[labels_[i]] = i;
    if (index_.size() != labels_.size()) throw SpecMismatch("duplicate K_0 labels");
    for (const auto& r : relations_)
      if (r.size() != labels_.size()) throw SpecMismatch("relation has wrong length");
  }

  const std::vector<Label>& labels() const { return labels_; }
  const lattice::IntMatrix& relations() const { return relations_; }

  std::optional<std::size_t> index_of(const Label& l) const {
    auto it = index_.find(l);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  lattice::IntVector vector(const K0Element& x) const {
    lattice::IntVector v(labels_.size(), 0);
    for (const auto& [l, c] : x.coeffs) {
      auto i = index_of(l);
      if (!i) throw SpecMismatch("label " + l.to_string() + " is not a generator");
      v[*i] = c;
    }
    return v;
  }

  K0Element element(const lattice::IntVector& v) const {
    K0Element x;
    for (std::size_t i = 0; i < v.size(); ++i) x.add(labels_[i], v[i]);
    return x;
  }

  std::size_t rank() const { return labels_.size() - lattice::rank_int(relations_, labels_.size()); }

  std::vector<Int> invariants() const { return lattice::smith_invariants(relations_, labels_.size()); }

  std::vector<Int> torsion() const {
    std::vector<Int> out;
    for (const auto& d : invariants())
      if (d > 1) out.push_back(d);
    return out;
  }

  bool is_zero(const K0Element& x) const {
    return lattice::solve_rows(relations_, vector(x)).has_value();
  }
  bool equal(const K0Element& a, const K0Element& b) const { return is_zero(a - b); }

  /// Hermite form of the relation lattice; equal presentations have equal
  /// labels and equal canonical relations.
  lattice::IntMatrix canonical_relations() const {
    if (relations_.empty()) return {};
    auto h = lattice::hermite(relations_, labels_.size());
    return lattice::IntMatrix(h.form.begin(), h.form.begin() + static_cast<std::ptrdiff_t>(h.rank()));
  }

  bool same_presentation(const K0Group& o) const {
    return labels_ == o.labels_ && canonical_relations() == o.canonical_relations();
  }

  std::string summary() const {
    std::string s = "Z^" + std::to_string(rank());
    for (const auto& t : torsion()) s += " + Z/" + t.str();
    return s;
  }

 private:
  std::vector<Label> labels_;
  lattice::IntMatrix relations_;
  std::map<Label, std::size_t> index_;
};

struct MapCheck {
  bool well_defined = false;
  bool surjective = false;
  bool injective = false;
  bool iso() const { return well_defined && surjective && injective; }
};

/// Homomorphism A -> B given by the images of A's generators.
inline MapCheck induced_map_is_isomorphism(const K0Group& a, const K0Group& b,
                                           const std::vector<K0Element>& images) {
  using lattice::IntMatrix;
  using lattice::IntVector;
  if (images.size() != a.labels().size()) throw SpecMismatch("one image per generator expected");
  const std::size_t nb = b.labels().size();
  IntMatrix f;
  for (const auto& x : images) f.push_back(b.vector(x));
  MapCheck out;

  out.well_defined = true;
  for (const auto& r : a.relations()) {
    IntVector img(nb, 0);
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] != 0)
        for (std::size_t j = 0; j < nb; ++j) img[j] += r[i] * f[i][j];
    if (!lattice::solve_rows(b.relations(), img)) out.well_defined = false;
  }

  IntMatrix stacked = f;
  stacked.insert(stacked.end(), b.relations().begin(), b.relations().end());
  out.surjective = true;
  for (std::size_t j = 0; j < nb && out.surjective; ++j) {
    IntVector e(nb, 0);
    e[j] = 1;
    if (!lattice::solve_rows(stacked, e)) out.surjective = false;
  }

  out.injective = true;
  for (const auto& k : lattice::left_kernel(stacked, nb)) {
    IntVector ka(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(a.labels().size()));
    if (!lattice::solve_rows(a.relations(), ka)) {
      out.injective = false;
      break;
    }
  }
  return out;
}

/// Label s -> g s on degree labels.
inline K0Element shift_action(const Group& g_group, const GroupElement& g, const K0Element& x) {
  K0Element out;
  for (const auto& [l, c] : x.coeffs) {
    if (l.parts.size() != 1) throw SpecMismatch("shift acts on degree labels");
    Label m = l;
    m.parts[0] = g_group.compose(g, l.parts[0]);
    out.add(m, c);
  }
  return out;
}

// ---------------------------------------------------------------- windows

/// A slot groups the degrees base * m for m in a subgroup window. Homs
/// inside a slot live in R_{m_i^{-1} m_j}.
struct Slot {
  GroupElement base;
  std::vector<GroupElement> members;

  std::vector<GroupElement> degrees(const Group& g) const {
    std::vector<GroupElement> out;
    for (const auto& m : members) out.push_back(g.compose(base, m));
    return out;
  }
};

struct WindowSpec {
  std::vector<Slot> slots;  // largest first

  SlotPartition partition(const Group& g) const {
    SlotPartition p;
    for (const auto& s : slots) p.slots.push_back(s.degrees(g));
    return p;
  }

  std::vector<GroupElement> degrees(const Group& g) const {
    std::vector<GroupElement> out;
    for (const auto& s : slots)
      for (const auto& d : s.degrees(g)) out.push_back(d);
    return out;
  }
};

/// One slot per degree, ordered by a linear extension of the cone order.
inline WindowSpec degree_window(const Group& g, const OrderSpec& order, const std::vector<GroupElement>& degrees) {
  WindowSpec w;
  for (const auto& d : linear_extension(order, degrees)) {
    g.check(d);
    w.slots.push_back({d, {g.identity()}});
  }
  return w;
}

/// Slots s x| H for s in an N-window, ordered by the order on N.
inline WindowSpec semidirect_window(const Group& g, const OrderSpec& order_n, const std::vector<GroupElement>& s_window) {
  const Group& h = g.acting_factor();
  WindowSpec w;
  for (const auto& s : linear_extension(order_n, s_window)) {
    Slot slot{g.pair(s, h.identity()), {}};
    for (const auto& x : h.elements()) slot.members.push_back(g.pair(g.normal_factor().identity(), x));
    w.slots.push_back(slot);
  }
  return w;
}

using Section = std::function<GroupElement(const GroupElement& h)>;

/// Slots sigma(h) N_window for h in an H-window, ordered by the order on H.
inline WindowSpec coset_window(const Group& g, const OrderSpec& order_h, const std::vector<GroupElement>& h_window,
                               const std::vector<GroupElement>& n_window, const Section& section) {
  WindowSpec w;
  for (const auto& h : linear_extension(order_h, h_window)) {
    Slot slot{section(h), {}};
    for (const auto& n : n_window) slot.members.push_back(g.embed_kernel(n));
    w.slots.push_back(slot);
  }
  return w;
}

/// K_0 of P_G[S] for a window S, with the classification of objects.
class WindowK0 {
 public:
  WindowK0(RingPtr ring, WindowSpec window, const Window& w = {})
      : ring_(std::move(ring)), window_(std::move(window)), box_(w) {
    const SystematicRing& r = *ring_;
    const Group& G = r.grading();
    partition_ = window_.partition(G);
    check_support();
    base_ = slot_coefficients(r);
    std::vector<Label> labels;
    lattice::IntMatrix rel;
    const std::size_t total = window_.degrees(G).size();
    std::size_t offset = 0;
    for (const auto& slot : window_.slots) {
      check_slot_strong(slot);
      lattice::IntMatrix column;
      std::vector<GroupElement> ds = slot.degrees(G);
      for (std::size_t i = 0; i < ds.size(); ++i) {
        labels.push_back(Label::degree(ds[i]));
        column.push_back({classify_block(slot, {ds[i]}, identity_matrix(r, 1))});
      }
      for (const auto& k : lattice::left_kernel(column, 1)) {
        lattice::IntVector row(total, 0);
        for (std::size_t i = 0; i < k.size(); ++i) row[offset + i] = k[i];
        rel.push_back(row);
      }
      reps_.push_back(Label::degree(ds.front()));
      offset += ds.size();
    }
    group_ = K0Group(labels, rel);
  }

  const K0Group& group() const { return group_; }
  const WindowSpec& window() const { return window_; }
  const SlotPartition& partition() const { return partition_; }
  const RingPtr& ring() const { return ring_; }
  const Coefficients& slot_base() const { return base_; }
  const Label& slot_label(std::size_t k) const { return reps_[k]; }

  /// Generators grouped by slot; the object is isomorphic to the input.
  IdemObject arrange(const IdemObject& x) const { return permute_object(x, partition_.sorting_permutation(x.carrier())); }

  /// sum_k [T_k(X)] with each slot class read off through K_1.
  K0Element classify(const IdemObject& x) const {
    IdemObject y = arrange(x);
    BlockSizes sizes = partition_.block_sizes(y.carrier());
    require_lower_triangular(y.p(), sizes, sizes);
    K0Element out;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      if (sizes[k] == 0) continue;
      IdemObject t = lt_block(y, sizes, k);
      out.add(reps_[k], classify_block(window_.slots[k], t.carrier().degrees, t.p()));
    }
    return out;
  }

  /// The class of one slot block in K_0(K_1) = Z.
  Int slot_rank(std::size_t k, const IdemObject& block) const {
    return classify_block(window_.slots[k], block.carrier().degrees, block.p());
  }

  /// C with p_ij u_j = u_i c_ij, u_i the generator of R_{m_i^{-1}}.
  lattice::RatMatrix reduce_block(const Slot& slot, const std::vector<GroupElement>& degrees,
                                  const RMatrix& p) const {
    const SystematicRing& r = *ring_;
    const Group& G = r.grading();
    std::vector<RingElem> u;
    for (const auto& d : degrees) {
      GroupElement m = G.left_quotient(slot.base, d);
      auto gens = r.gens(G.invert(m), box_);
      if (gens.size() != 1)
        throw UnclassifiableSlot("component " + G.invert(m).to_string() + " is not free of rank one over K_1");
      u.push_back(gens.front());
    }
    const std::size_t n = degrees.size();
    lattice::RatMatrix c(n, lattice::RatVector(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        RingElem x = p(i, j) * u[j];
        auto sol = span_coefficients(r, {u[i]}, x);
        if (!sol) throw SpecMismatch("block entry does not reduce to K_1");
        c[i][j] = (*sol)[0];
      }
    return c;
  }

 private:
  Int classify_block(const Slot& slot, const std::vector<GroupElement>& degrees, const RMatrix& p) const {
    return class_rank(base_, reduce_block(slot, degrees, p));
  }

  void check_support() const {
    const SystematicRing& r = *ring_;
    const auto& s = partition_.slots;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j)
        for (const auto& tgt : s[i])
          for (const auto& src : s[j])
            if (!hom_component_basis(r, src, tgt, box_).empty())
              throw SupportViolation("Hom(<" + src.to_string() + ">R, <" + tgt.to_string() +
                                     ">R) is nonzero against the slot order");
  }

  void check_slot_strong(const Slot& slot) const {
    if (slot.members.size() < 2) return;
    const Group& G = ring_->grading();
    for (const auto& a : slot.members)
      for (const auto& b : slot.members)
        if (!is_strongly_systematic_at(*ring_, G.left_quotient(a, b), box_))
          throw NotStronglySystematic("slot ring is not strongly systematic at " +
                                      G.left_quotient(a, b).to_string());
  }

  RingPtr ring_;
  WindowSpec window_;
  Window box_;
  SlotPartition partition_;
  Coefficients base_ = Coefficients::integers();
  K0Group group_;
  std::vector<Label> reps_;
};

inline WindowK0 k0_of_window(const RingPtr& ring, const WindowSpec& window, const Window& w = {}) {
  return WindowK0(ring, window, w);
}

inline K0Element k0_class(const IdemObject& x, const WindowK0& ctx) { return ctx.classify(x); }

/// Random object of the window with the given number of generators.
inline IdemObject random_window_object(const WindowK0& ctx, std::size_t n, Rng& rng) {
  const Group& G = ctx.ring()->grading();
  auto all = ctx.window().degrees(G);
  std::vector<GroupElement> picked;
  for (std::size_t i = 0; i < n; ++i)
    picked.push_back(all[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(all.size()) - 1))]);
  FreeSysModule m(ctx.ring(), picked);
  auto perm = ctx.partition().sorting_permutation(m);
  LTShape shape;
  for (auto i : perm) shape.degrees.push_back(picked[i]);
  shape.sizes = ctx.partition().block_sizes(FreeSysModule(ctx.ring(), shape.degrees));
  return random_lt_idempotent(ctx.ring(), shape, rng);
}

/// S subset T: labels of S map to themselves in T, injectively, and
/// classes computed in either window agree on sampled objects of S.
inline std::vector<Check> window_inclusion_check(const WindowK0& small, const WindowK0& big, std::size_t samples,
                                                 std::uint64_t seed) {
  std::vector<Check> out;
  std::vector<K0Element> images;
  for (const auto& l : small.group().labels()) images.emplace_back(l);
  MapCheck m = induced_map_is_isomorphism(small.group(), big.group(), images);
  out.push_back({"window inclusion is well defined", m.well_defined, "", seed});
  out.push_back({"window inclusion is injective", m.injective, "", seed});
  Rng rng(seed);
  bool agree = true;
  for (std::size_t i = 0; i < samples && agree; ++i) {
    IdemObject x = random_window_object(small, 1 + i % 3, rng);
    agree = big.group().equal(small.classify(x), big.classify(x));
  }
  out.push_back({"classes agree across the inclusion", agree, std::to_string(samples) + " samples", seed});
  return out;
}

// ------------------------------------------------------------------ oracle

struct OracleObject {
  std::vector<GroupElement> degrees;
  RMatrix p;
};

/// Exhaustive classification of idempotents over a category with finite
/// hom sets, up to n_max generators.
struct IdemClassTable {
  RingPtr ring;
  std::vector<GroupElement> window;
  std::size_t n_max = 0;
  std::vector<OracleObject> objects;
  std::vector<std::size_t> class_of;
  std::vector<std::size_t> representatives;
  K0Group group;
  std::size_t witness_searches = 0;
  std::map<std::pair<std::vector<GroupElement>, RMatrix>, std::size_t> index;

  std::optional<std::size_t> find(const std::vector<GroupElement>& degrees, const RMatrix& p) const {
    auto it = index.find({degrees, p});
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  /// Object index of (degrees, p) after sorting generators canonically.
  std::optional<std::size_t> locate(const std::vector<GroupElement>& degrees, const RMatrix& p) const {
    std::vector<std::size_t> perm(degrees.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return degrees[a] < degrees[b]; });
    std::vector<GroupElement> d;
    for (auto i : perm) d.push_back(degrees[i]);
    return find(d, p.permuted(perm));
  }

  K0Element class_element(std::size_t object) const {
    return K0Element(Label::oracle_class(static_cast<std::int64_t>(class_of[object])));
  }

  IdemObject representative(std::size_t cls) const {
    const auto& o = objects[representatives[cls]];
    return IdemObject(FreeSysModule(ring, o.degrees), o.p);
  }
};

namespace detail {

class HomEnumerator {
 public:
  HomEnumerator(const SystematicRing& r, std::size_t limit) : r_(r), limit_(limit) {}

  const std::vector<RingElem>& component(const GroupElement& g) {
    auto it = cache_.find(g);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(g, enumerate_component(r_, g)).first->second;
  }

  /// Every degree-valid matrix tgt <- src.
  std::vector<RMatrix> all(const std::vector<GroupElement>& tgt, const std::vector<GroupElement>& src) {
    const Group& G = r_.grading();
    std::vector<const std::vector<RingElem>*> entries;
    std::size_t count = 1;
    for (const auto& t : tgt)
      for (const auto& s : src) {
        entries.push_back(&component(G.left_quotient(t, s)));
        count *= entries.back()->size();
        if (count > limit_) throw BudgetExceeded("hom set exceeds the enumeration budget");
      }
    std::vector<RMatrix> out;
    std::vector<std::size_t> idx(entries.size(), 0);
    while (true) {
      RMatrix m(tgt.size(), src.size(), r_.zero());
      for (std::size_t k = 0; k < entries.size(); ++k) m(k / src.size(), k % src.size()) = (*entries[k])[idx[k]];
      out.push_back(std::move(m));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == entries[k]->size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
    return out;
  }

 private:
  const SystematicRing& r_;
  std::size_t limit_;
  std::map<GroupElement, std::vector<RingElem>> cache_;
};

inline void sequences(const std::vector<GroupElement>& window, std::size_t len, std::size_t start,
                      std::vector<GroupElement>& cur, std::vector<std::vector<GroupElement>>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < window.size(); ++i) {
    cur.push_back(window[i]);
    sequences(window, len, i, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// u : (A,p) -> (B,q), v : (B,q) -> (A,p) with v u = p and u v = q.
inline bool iso_witness_exists(detail::HomEnumerator& homs, const OracleObject& a, const OracleObject& b) {
  std::set<RMatrix> us, vs;
  for (const auto& f : homs.all(b.degrees, a.degrees)) us.insert(b.p * f * a.p);
  for (const auto& g : homs.all(a.degrees, b.degrees)) vs.insert(a.p * g * b.p);
  for (const auto& u : us)
    for (const auto& v : vs)
      if (v * u == a.p && u * v == b.p) return true;
  return false;
}

inline IdemClassTable classify_finite_category(const RingPtr& ring, std::vector<GroupElement> window,
                                               std::size_t n_max, std::size_t matrix_budget = 1u << 20) {
  if (n_max > 3) throw BudgetExceeded("n_max above 3");
  if (!ring->span_base().is_finite()) throw BudgetExceeded("oracle needs a finite base ring");
  if (ring->span_base().cardinality() > 16) throw BudgetExceeded("base ring larger than 16 elements");
  std::sort(window.begin(), window.end());
  window.erase(std::unique(window.begin(), window.end()), window.end());
  IdemClassTable t;
  t.ring = ring;
  t.window = window;
  t.n_max = n_max;
  detail::HomEnumerator homs(*ring, matrix_budget);
  std::size_t enumerated = 0;
  for (std::size_t len = 0; len <= n_max; ++len) {
    std::vector<std::vector<GroupElement>> seqs;
    std::vector<GroupElement> cur;
    detail::sequences(window, len, 0, cur, seqs);
    for (const auto& d : seqs) {
      auto all = homs.all(d, d);
      enumerated += all.size();
      if (enumerated > matrix_budget) throw BudgetExceeded("too many matrices to enumerate");
      for (auto& m : all)
        if (m * m == m) {
          t.index[{d, m}] = t.objects.size();
          t.objects.push_back({d, std::move(m)});
        }
    }
  }
  for (std::size_t i = 0; i < t.objects.size(); ++i) {
    std::optional<std::size_t> cls;
    for (std::size_t c = 0; c < t.representatives.size() && !cls; ++c) {
      ++t.witness_searches;
      if (iso_witness_exists(homs, t.objects[t.representatives[c]], t.objects[i])) cls = c;
    }
    if (!cls) {
      cls = t.representatives.size();
      t.representatives.push_back(i);
    }
    t.class_of.push_back(*cls);
  }
  // [a (+) b] - [a] - [b] for representatives within the size bound
  const std::size_t nc = t.representatives.size();
  lattice::IntMatrix rel;
  for (std::size_t a = 0; a < nc; ++a)
    for (std::size_t b = 0; b < nc; ++b) {
      const auto& x = t.objects[t.representatives[a]];
      const auto& y = t.objects[t.representatives[b]];
      if (x.degrees.size() + y.degrees.size() > n_max) continue;
      auto d = x.degrees;
      d.insert(d.end(), y.degrees.begin(), y.degrees.end());
      RMatrix s = (x.degrees.empty() && y.degrees.empty())
                      ? RMatrix(0, 0, ring->zero())
                      : RMatrix::block_diag(x.p.rows() ? x.p : RMatrix(0, 0, ring->zero()),
                                            y.p.rows() ? y.p : RMatrix(0, 0, ring->zero()));
      auto k = t.locate(d, s);
      if (!k) throw SpecMismatch("direct sum missing from the enumeration");
      lattice::IntVector row(nc, 0);
      row[t.class_of[*k]] += 1;
      row[a] -= 1;
      row[b] -= 1;
      rel.push_back(row);
    }
  std::vector<Label> labels;
  for (std::size_t c = 0; c < nc; ++c) labels.push_back(Label::oracle_class(static_cast<std::int64_t>(c)));
  t.group = K0Group(labels, rel);
  return t;
}

/// Oracle over the base ring itself (trivial grading, one degree).
inline IdemClassTable k0_bruteforce(const Coefficients& base, std::size_t n_max) {
  if (!base.is_finite()) throw BudgetExceeded("oracle needs a finite base ring");
  if (base.cardinality() > 16 || n_max > 3) throw BudgetExceeded("oracle budget is |base| <= 16, n_max <= 3");
  auto ring = std::make_shared<const MonoidRing>(base, Group::free_abelian(0),
                                                 std::vector<std::vector<std::int64_t>>{});
  return classify_finite_category(ring, {GroupElement{}}, n_max);
}

/// class -> rank(rep) into Z, checked to be an isomorphism.
inline MapCheck oracle_rank_check(const IdemClassTable& t) {
  const Coefficients& b = t.ring->span_base();
  K0Group z({Label::oracle_class(-1)}, {});
  std::vector<K0Element> images;
  for (std::size_t c = 0; c < t.representatives.size(); ++c) {
    const auto& o = t.objects[t.representatives[c]];
    lattice::RatMatrix m(o.p.rows(), lattice::RatVector(o.p.cols(), 0));
    for (std::size_t i = 0; i < o.p.rows(); ++i)
      for (std::size_t j = 0; j < o.p.cols(); ++j) m[i][j] = o.p(i, j).coefficient(GroupElement{});
    images.push_back(K0Element(Label::oracle_class(-1), class_rank(b, m)));
  }
  return induced_map_is_isomorphism(t.group, z, images);
}

/// class -> classify(rep) into the window group.
inline MapCheck oracle_window_check(const IdemClassTable& t, const WindowK0& ctx) {
  std::vector<K0Element> images;
  for (std::size_t c = 0; c < t.representatives.size(); ++c) images.push_back(ctx.classify(t.representative(c)));
  return induced_map_is_isomorphism(t.group, ctx.group(), images);
}

// ------------------------------------------------------- semidirect products

struct SemidirectTheoremResult {
  K0Group h_group;  // K_0^{Sy H}(R^H) from the oracle
  K0Group lhs;      // Z[N x| H] (x)_{Z[H]} K_0^{Sy H}(R^H) on the window
  K0Group rhs;      // K_0^{Sy(N x| H)}(R) on the window
  MapCheck map;     // omega beta
  std::vector<Check> checks;
};

/// Degrees (n, h) with n outside the cone carry no component of R.
inline void check_semidirect_support(const SystematicRing& r, const OrderSpec& order_n, std::int64_t radius,
                                     const Window& w = {}) {
  const Group& G = r.grading();
  const Group& N = G.normal_factor();
  const std::size_t k = N.encoding_size();
  std::vector<std::int64_t> c(k, -radius);
  while (true) {
    GroupElement n(c);
    if (!order_n.in_cone(n))
      for (const auto& h : G.acting_factor().elements())
        if (!r.gens(G.pair(n, h), w).empty())
          throw SupportViolation("R has a component at " + G.pair(n, h).to_string() + " outside N+ x| H");
    std::size_t i = 0;
    while (i < k && c[i] == radius) c[i++] = -radius;
    if (i == k) break;
    ++c[i];
  }
}

inline SemidirectTheoremResult theorem_semidirect_iso(const RingPtr& ring, const OrderSpec& order_n,
                                                      const std::vector<GroupElement>& s_window,
                                                      std::size_t n_max, std::uint64_t seed) {
  const Group& G = ring->grading();
  if (G.kind() != Group::Kind::Semidirect) throw ConfigError("grading must be a semidirect product");
  const Group& N = G.normal_factor();
  const Group& H = G.acting_factor();
  if (!H.is_finite()) throw ConfigError("the acting group must be finite for the oracle");
  SemidirectTheoremResult res;
  Rng rng(seed);

  // H-invariance of the cone on sampled elements
  std::vector<GroupElement> cone;
  for (const auto& s : s_window)
    if (order_n.in_cone(s)) cone.push_back(s);
  for (int i = 0; i < 64; ++i) {
    GroupElement n = random_element(N, rng, 5);
    if (order_n.in_cone(n)) cone.push_back(n);
  }
  if (!order_n.invariant_under(G, H.elements(), cone)) throw OrderNotHInvariant("cone order is not H-invariant");
  res.checks.push_back({"order is H-invariant", true, std::to_string(cone.size()) + " cone samples", seed});
  check_semidirect_support(*ring, order_n, 3);
  res.checks.push_back({"support in N+ x| H", true, "box radius 3", seed});

  // K_0^{Sy H}(R^H) and its H-action
  RingPtr rh = subring_over_subgroup(ring, GroupHom::acting_inclusion(G));
  IdemClassTable th = classify_finite_category(rh, H.elements(), n_max);
  res.h_group = th.group;
  const std::size_t nc = th.representatives.size();
  auto act = [&](const GroupElement& h, std::size_t c) {
    const auto& o = th.objects[th.representatives[c]];
    std::vector<GroupElement> d;
    for (const auto& g : o.degrees) d.push_back(H.compose(h, g));
    auto k = th.locate(d, o.p);
    if (!k) throw SpecMismatch("shifted representative missing from the enumeration");
    return th.class_of[*k];
  };

  const auto hs = H.elements();
  auto lhs_label = [&](const GroupElement& s, const GroupElement& h, std::size_t c) {
    return Label::tagged(G.pair(s, h), static_cast<std::int64_t>(c));
  };
  std::vector<Label> labels;
  for (const auto& s : s_window)
    for (const auto& h : hs)
      for (std::size_t c = 0; c < nc; ++c) labels.push_back(lhs_label(s, h, c));
  K0Group free_lhs(labels, {});
  lattice::IntMatrix rel;
  for (const auto& s : s_window)
    for (const auto& h : hs) {
      for (std::size_t c = 0; c < nc; ++c) {
        K0Element r = K0Element(lhs_label(s, h, c)) - K0Element(lhs_label(s, H.identity(), act(h, c)));
        if (!r.is_zero()) rel.push_back(free_lhs.vector(r));
      }
      for (const auto& hr : th.group.relations()) {
        K0Element r;
        for (std::size_t c = 0; c < nc; ++c) r.add(lhs_label(s, h, c), hr[c]);
        if (!r.is_zero()) rel.push_back(free_lhs.vector(r));
      }
    }
  res.lhs = K0Group(labels, rel);

  WindowK0 rhs(ring, semidirect_window(G, order_n, s_window));
  res.rhs = rhs.group();

  // omega beta : (s,h) (x) (degrees g_i, p) -> (degrees (s, h g_i), p)
  std::vector<K0Element> images;
  for (const auto& l : labels) {
    auto [s, h] = G.split(l.parts[0]);
    const auto& o = th.objects[th.representatives[static_cast<std::size_t>(l.index)]];
    std::vector<GroupElement> d;
    for (const auto& g : o.degrees) d.push_back(G.pair(s, H.compose(h, g)));
    images.push_back(rhs.classify(IdemObject(FreeSysModule(ring, d), o.p)));
  }
  res.map = induced_map_is_isomorphism(res.lhs, res.rhs, images);
  res.checks.push_back({"omega beta is well defined", res.map.well_defined, "", seed});
  res.checks.push_back({"omega beta is bijective on the window", res.map.surjective && res.map.injective, "", seed});
  res.checks.push_back({"window ranks agree", res.lhs.rank() == res.rhs.rank(),
                        std::to_string(res.lhs.rank()) + " vs " + std::to_string(res.rhs.rank()), seed});

  // alpha : Z[N] (x) K -> Z[N x| H] (x)_{Z[H]} K and beta back
  std::vector<Label> dlabels;
  lattice::IntMatrix drel;
  for (const auto& s : s_window)
    for (std::size_t c = 0; c < nc; ++c) dlabels.push_back(Label::tagged(s, static_cast<std::int64_t>(c)));
  K0Group free_d(dlabels, {});
  for (const auto& s : s_window)
    for (const auto& hr : th.group.relations()) {
      K0Element r;
      for (std::size_t c = 0; c < nc; ++c) r.add(Label::tagged(s, static_cast<std::int64_t>(c)), hr[c]);
      if (!r.is_zero()) drel.push_back(free_d.vector(r));
    }
  K0Group dgroup(dlabels, drel);
  auto alpha = [&](const Label& l) { return K0Element(lhs_label(l.parts[0], H.identity(), static_cast<std::size_t>(l.index))); };
  auto beta = [&](const Label& l) {
    auto [s, h] = G.split(l.parts[0]);
    return K0Element(Label::tagged(s, static_cast<std::int64_t>(act(h, static_cast<std::size_t>(l.index)))));
  };
  bool ba = true;
  std::vector<K0Element> alpha_images;
  for (const auto& l : dlabels) {
    alpha_images.push_back(alpha(l));
    const auto& a = alpha_images.back();
    ba = ba && dgroup.equal(beta(a.coeffs.begin()->first), K0Element(l));
  }
  bool ab = true;
  for (const auto& l : labels) {
    K0Element b = beta(l);
    ab = ab && res.lhs.equal(alpha(b.coeffs.begin()->first), K0Element(l));
  }
  res.checks.push_back({"beta alpha = id", ba, "", seed});
  res.checks.push_back({"alpha beta = id", ab, "", seed});
  res.checks.push_back({"alpha is an isomorphism", induced_map_is_isomorphism(dgroup, res.lhs, alpha_images).iso(), "", seed});

  // semilinearity on labels: image of (s',h') x equals the shift of the image of x
  bool semilinear = true;
  for (int i = 0; i < 64; ++i) {
    GroupElement a = random_element(G, rng, 4);
    GroupElement x = random_element(G, rng, 4);
    GroupElement g = random_element(H, rng, 4);
    GroupElement ax = G.compose(a, x);
    auto [s1, h1] = G.split(ax);
    GroupElement lhs_deg = G.pair(s1, H.compose(h1, g));
    auto [s0, h0] = G.split(x);
    GroupElement rhs_deg = G.compose(a, G.pair(s0, H.compose(h0, g)));
    semilinear = semilinear && lhs_deg == rhs_deg;
  }
  res.checks.push_back({"semilinear label transport", semilinear, "64 samples", seed});
  res.checks.push_back({"H-oracle class count", nc > 0, th.group.summary(), seed});
  return res;
}

// ---------------------------------------------------------------- extensions

/// Degrees g with pi(g) outside H+ carry no component of R.
inline void check_quotient_support(const SystematicRing& r, const OrderSpec& order_h, std::int64_t radius,
                                   const Window& w = {}) {
  const Group& G = r.grading();
  const std::size_t k = G.encoding_size();
  std::vector<std::int64_t> c(k, -radius);
  while (true) {
    GroupElement g(c);
    if (!order_h.in_cone(G.project(g)) && !r.gens(g, w).empty())
      throw SupportViolation("R has a component at " + g.to_string() + " outside pi^{-1}(H+)");
    std::size_t i = 0;
    while (i < k && c[i] == radius) c[i++] = -radius;
    if (i == k) break;
    ++c[i];
  }
}

struct QuotientTheoremResult {
  K0Group lhs;  // (+)_H K_0^{Sy N}(R_N) on the window
  K0Group rhs;  // K_0^{Sy G}(R) on the window
  MapCheck map;
  std::vector<Check> checks;
};

inline Section hnf_section(const Group& g) {
  return [g](const GroupElement& h) { return g.section(h); };
}

/// sigma'(h) = sigma(h) n_0(h) with n_0(h) = (sum of h's coordinates) times
/// the first basis vector of N.
inline Section shifted_section(const Group& g) {
  return [g](const GroupElement& h) {
    GroupElement s = g.section(h);
    if (g.n_basis().empty()) return s;
    std::int64_t t = 0;
    for (auto x : h.coords) t += x;
    std::vector<std::int64_t> n(g.kernel().encoding_size(), 0);
    n[0] = t;
    return g.compose(s, g.embed_kernel(GroupElement(n)));
  };
}

inline QuotientTheoremResult theorem_quotient_iso(const RingPtr& ring, const OrderSpec& order_h,
                                                  const std::vector<GroupElement>& h_window,
                                                  const std::vector<GroupElement>& n_window, const Section& section,
                                                  std::uint64_t seed) {
  const Group& G = ring->grading();
  if (G.kind() != Group::Kind::Extension) throw ConfigError("grading must be a lattice extension");
  QuotientTheoremResult res;
  check_quotient_support(*ring, order_h, 3);
  res.checks.push_back({"support in pi^{-1}(H+)", true, "box radius 3", seed});
  bool sect = true;
  for (const auto& h : h_window) sect = sect && G.project(section(h)) == h;
  res.checks.push_back({"pi sigma = id on the window", sect, "", seed});

  // K_0^{Sy N}(R_N) on the N-window, one copy per coset
  RingPtr rn = subring_over_subgroup(ring, GroupHom::kernel_inclusion(G));
  WindowSpec nw;
  nw.slots.push_back({G.kernel().identity(), n_window});
  WindowK0 nk(rn, nw);
  std::vector<Label> labels;
  for (const auto& h : h_window)
    for (const auto& n : n_window) labels.push_back(Label::pair(h, n));
  lattice::IntMatrix rel;
  const std::size_t nn = n_window.size();
  for (std::size_t a = 0; a < h_window.size(); ++a)
    for (const auto& r : nk.group().relations()) {
      lattice::IntVector row(labels.size(), 0);
      for (std::size_t i = 0; i < nn; ++i) row[a * nn + i] = r[i];
      rel.push_back(row);
    }
  res.lhs = K0Group(labels, rel);

  WindowK0 rhs(ring, coset_window(G, order_h, h_window, n_window, section));
  res.rhs = rhs.group();

  // Psi : <n>R_N in the h-summand -> <sigma(h) n>R
  std::vector<K0Element> images;
  for (const auto& l : labels)
    images.push_back(K0Element(Label::degree(G.compose(section(l.parts[0]), G.embed_kernel(l.parts[1])))));
  res.map = induced_map_is_isomorphism(res.lhs, res.rhs, images);
  res.checks.push_back({"Psi is well defined", res.map.well_defined, "", seed});
  res.checks.push_back({"Psi is bijective on the window", res.map.surjective && res.map.injective, "", seed});

  // free objects: classification agrees with the label map
  bool agree = true;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& d = images[i].coeffs.begin()->first.parts[0];
    agree = agree && rhs.group().equal(rhs.classify(IdemObject::free(FreeSysModule(ring, {d}))), images[i]);
  }
  res.checks.push_back({"classes of free objects match Psi", agree, "", seed});
  return res;
}

struct CorollaryResult {
  K0Group group;  // (+)_{H-window} K_0(R_1)
  MapCheck cross_check;
  QuotientTheoremResult quotient;
  std::vector<Check> checks;
};

inline CorollaryResult corollary_strong_reduction(const RingPtr& ring, const OrderSpec& order_h,
                                                  const std::vector<GroupElement>& h_window,
                                                  const std::vector<GroupElement>& n_window, std::uint64_t seed) {
  const Group& G = ring->grading();
  if (G.kind() != Group::Kind::Extension) throw ConfigError("grading must be a lattice extension");
  CorollaryResult res;
  RingPtr rn = subring_over_subgroup(ring, GroupHom::kernel_inclusion(G));
  for (const auto& n : n_window) {
    if (!is_strongly_systematic_at(*rn, n) || !is_strongly_systematic_at(*rn, G.kernel().invert(n)))
      throw NotStronglySystematic("R_N is not strongly systematic at " + n.to_string());
  }
  res.checks.push_back({"R_N strongly systematic on the window", true, std::to_string(n_window.size()) + " degrees", seed});
  Coefficients b = slot_coefficients(*ring);
  bool unit_class = class_rank(b, {{Rational(1)}}) == 1;
  res.checks.push_back({"K_0(R_1) generated by [R_1]", unit_class, b.name(), seed});

  std::vector<Label> labels;
  for (const auto& h : h_window) labels.push_back(Label::degree(h));
  res.group = K0Group(labels, {});

  res.quotient = theorem_quotient_iso(ring, order_h, h_window, n_window, hnf_section(G), seed);
  std::vector<K0Element> images;
  for (const auto& h : h_window) images.push_back(K0Element(Label::degree(G.section(h))).scaled(1));
  // the representative of each coset slot is its first member
  std::vector<K0Element> fixed;
  for (const auto& h : h_window)
    fixed.push_back(K0Element(Label::degree(G.compose(G.section(h), G.embed_kernel(n_window.front())))));
  res.cross_check = induced_map_is_isomorphism(res.group, res.quotient.rhs, fixed);
  res.checks.push_back({"agrees with the quotient decomposition", res.cross_check.iso(),
                        res.group.summary() + " vs " + res.quotient.rhs.summary(), seed});
  append(res.checks, res.quotient.checks);
  return res;
}

// -------------------------------------------------------------------- toric

struct ToricSetup {
  Group group;        // Z^r with N = A cap (-A)
  RingPtr ring;       // B[A]
  OrderSpec order_h;  // induced cone order on Z^r / N
};

inline ToricSetup make_toric(const Coefficients& base, const std::vector<std::vector<std::int64_t>>& functionals,
                             std::size_t rank) {
  auto n = functional_kernel(functionals, rank);
  Group g = Group::extension(rank, n);
  auto ring = std::make_shared<const MonoidRing>(base, g, functionals);
  return {g, ring, OrderSpec::induced_on_quotient(g, functionals)};
}

// ------------------------------------------------------ filtered vs graded

struct FilteredGradedResult {
  K0Group filtered;
  K0Group graded;
  std::vector<Check> checks;
};

/// F^k = monomials of degree <= k in B[t] against its associated graded B[t].
inline FilteredGradedResult filtered_graded_agreement(const Coefficients& base, std::int64_t top, std::size_t samples,
                                                      std::uint64_t seed) {
  const Group z = Group::free_abelian(1);
  const std::vector<std::vector<std::int64_t>> cone{{1}};
  RingPtr filt = std::make_shared<const MonoidRing>(base, z, cone, MonoidRing::Rule::Filtered);
  RingPtr gr = std::make_shared<const MonoidRing>(base, z, cone, MonoidRing::Rule::Graded);
  OrderSpec order(z, cone);
  std::vector<GroupElement> degrees;
  for (std::int64_t k = 0; k <= top; ++k) degrees.push_back(GroupElement{k});
  WindowK0 wf(filt, degree_window(z, order, degrees));
  WindowK0 wg(gr, degree_window(z, order, degrees));
  FilteredGradedResult res{wf.group(), wg.group(), {}};
  res.checks.push_back({"identical presentations", wf.group().same_presentation(wg.group()),
                        wf.group().summary() + " / " + wg.group().summary(), seed});
  Rng rng(seed);
  bool additive = true;
  for (std::size_t i = 0; i < samples && additive; ++i) {
    IdemObject x = random_window_object(wf, 1 + i % 3, rng);
    IdemObject y = random_window_object(wf, 1 + (i + 1) % 3, rng);
    auto sx = wf.partition().block_sizes(x.carrier());
    auto sy = wf.partition().block_sizes(y.carrier());
    LTSum s = lt_direct_sum(x, sx, y, sy);
    additive = wf.classify(s.sum) == wf.classify(x) + wf.classify(y);
  }
  res.checks.push_back({"filtered classes are additive", additive, std::to_string(samples) + " samples", seed});
  return res;
}

// ------------------------------------------------------------ counterexamples

struct CounterexampleReport {
  CokernelSummary l_over_k1;
  CokernelSummary tau_l;
  bool rho_surjective = true;
  bool bijective_over_k = false;
  std::string witness;
  std::vector<Check> checks;
};

/// First generator of R_g outside r R_g, if multiplication by r is not onto R_g.
inline std::optional<RingElem> component_cokernel_witness(const SystematicRing& r, const RingElem& x,
                                                          const GroupElement& g) {
  auto gens = r.gens(g);
  std::vector<RingElem> images;
  for (const auto& y : gens) images.push_back(x * y);
  for (const auto& z : gens)
    if (!in_span(r, images, z)) return z;
  return std::nullopt;
}

inline CounterexampleReport counterexamples(std::int64_t s) {
  auto k = std::make_shared<const PowerLocalization>(s);
  CounterexampleReport rep;
  PresentedModule l = presented_over_k1(k, 1, {{Rational(s)}});
  rep.l_over_k1 = l.summary();
  rep.tau_l = tensor_extend(l).summary();
  rep.checks.push_back({"L = Z/" + std::to_string(s) + " is nonzero over K_0", !rep.l_over_k1.is_zero(),
                        rep.l_over_k1.to_string(), 0});
  rep.checks.push_back({"tau(L) = 0", rep.tau_l.is_zero(), rep.tau_l.to_string(), 0});

  // multiplication by s as a systematic endomorphism of <0>K
  FreeSysModule m(k, {GroupElement{0}});
  RMatrix mat = identity_matrix(*k, 1);
  mat(0, 0) = k->element(s);
  SysMorphism f(m, m, mat);
  rep.checks.push_back({"multiplication by s is systematic", f.is_valid(), "", 0});
  auto w = component_cokernel_witness(*k, f(0, 0), GroupElement{0});
  rep.rho_surjective = !w.has_value();
  if (w) rep.witness = w->to_string() + " is not in the image of rho(s)";
  rep.checks.push_back({"rho(s) is not onto the degree-0 component", !rep.rho_surjective, rep.witness, 0});

  RingElem inv = k->element(Rational(1) / s);
  rep.bijective_over_k = (f(0, 0) * inv == k->one()) && !f(0, 0).is_zero();
  rep.checks.push_back({"multiplication by s is bijective on K", rep.bijective_over_k, "inverse 1/" + std::to_string(s), 0});
  return rep;
}

}  // namespace sysk
