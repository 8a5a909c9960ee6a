#pragma once

// Grading groups: free abelian lattices, finite groups given by a
// multiplication table, semidirect products N x| H, and lattice extensions
// 1 -> N -> Z^r -> Z^r/N -> 1 with a Hermite-normal-form section.

#include "sysk/errors.hpp"
#include "sysk/lattice.hpp"
#include "sysk/numeric.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sysk {

/// Canonical encoding of a group element. How the coordinates are read
/// depends on the owning Group: lattice coordinates, a table index, or the
/// concatenation (n | h) for semidirect products.
struct GroupElement {
  std::vector<std::int64_t> coords;

  GroupElement() = default;
  GroupElement(std::initializer_list<std::int64_t> c) : coords(c) {}
  explicit GroupElement(std::vector<std::int64_t> c) : coords(std::move(c)) {}

  std::size_t size() const { return coords.size(); }
  std::int64_t operator[](std::size_t i) const { return coords[i]; }

  auto operator<=>(const GroupElement&) const = default;

  std::string to_string() const {
    if (coords.size() == 1) return std::to_string(coords[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(coords[i]);
    }
    return s + ")";
  }
};

class Group;

/// theta : H -> Aut(N), evaluated as apply(h, n) = theta(h)(n).
struct Action {
  std::string name = "trivial";
  std::function<GroupElement(const GroupElement& h, const GroupElement& n)> apply;
};

class Group {
 public:
  enum class Kind { FreeAbelian, FiniteTable, Semidirect, Extension, LatticeQuotient };

  /// Slot of a LatticeQuotient encoding: the ambient column it reads and
  /// its modulus (0 for a free coordinate).
  struct QuotientCoord {
    std::size_t column;
    std::int64_t modulus;
  };

  Group() : Group(free_abelian(0)) {}

  static Group free_abelian(std::size_t rank) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::FreeAbelian;
    impl->rank = rank;
    return Group(std::move(impl));
  }

  /// Finite group from its multiplication table; table[a][b] = a*b.
  static Group finite_table(std::vector<std::vector<std::size_t>> table) {
    const std::size_t m = table.size();
    if (m == 0) throw ConfigError("finite group table is empty");
    for (const auto& row : table) {
      if (row.size() != m) throw ConfigError("finite group table is not square");
      for (auto x : row)
        if (x >= m) throw ConfigError("finite group table entry out of range");
    }
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::FiniteTable;
    impl->table = std::move(table);
    // identity: the element e with e*x = x for all x
    std::optional<std::size_t> e;
    for (std::size_t a = 0; a < m && !e; ++a) {
      bool ok = true;
      for (std::size_t x = 0; x < m && ok; ++x)
        ok = impl->table[a][x] == x && impl->table[x][a] == x;
      if (ok) e = a;
    }
    if (!e) throw ConfigError("finite group table has no identity");
    impl->identity_index = *e;
    impl->inverse.assign(m, m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (impl->table[a][b] == *e && impl->table[b][a] == *e) impl->inverse[a] = b;
    for (std::size_t a = 0; a < m; ++a)
      if (impl->inverse[a] == m) throw ConfigError("finite group table: element without inverse");
    return Group(std::move(impl));
  }

  /// Z/m with element k standing for g^k.
  static Group cyclic(std::size_t order) {
    if (order == 0) throw ConfigError("cyclic group of order 0");
    std::vector<std::vector<std::size_t>> t(order, std::vector<std::size_t>(order));
    for (std::size_t a = 0; a < order; ++a)
      for (std::size_t b = 0; b < order; ++b) t[a][b] = (a + b) % order;
    return finite_table(std::move(t));
  }

  static Group semidirect(Group n, Group h, Action action) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Semidirect;
    impl->factors = {std::move(n), std::move(h)};
    if (!action.apply) action = trivial_action();
    impl->action = std::move(action);
    return Group(std::move(impl));
  }

  static Group direct_product(Group n, Group h) {
    return semidirect(std::move(n), std::move(h), trivial_action());
  }

  /// N x| H with a named action: "trivial", "swap" (exchange the first two
  /// coordinates of N) or "inversion" (n -> n^{-1}). The non-identity
  /// automorphism is applied to n whenever chi(h) is odd, where chi is the
  /// coordinate sum mod 2 on a lattice H and the sign of the left regular
  /// permutation on a finite H.
  static Group semidirect(Group n, Group h, const std::string& action_name) {
    if (action_name == "trivial") return direct_product(std::move(n), std::move(h));
    if (n.kind() != Kind::FreeAbelian)
      throw ConfigError("named actions need a free abelian normal factor");
    if (action_name == "swap" && n.encoding_size() < 2)
      throw ConfigError("swap action needs rank >= 2");
    if (action_name != "swap" && action_name != "inversion")
      throw ConfigError("unknown action '" + action_name + "'");
    Group hcopy = h;
    auto parity = [hcopy](const GroupElement& x) { return hcopy.parity(x); };
    Action act;
    act.name = action_name;
    if (action_name == "swap") {
      act.apply = [parity](const GroupElement& hh, const GroupElement& nn) {
        if (!parity(hh)) return nn;
        GroupElement out = nn;
        std::swap(out.coords[0], out.coords[1]);
        return out;
      };
    } else {
      act.apply = [parity](const GroupElement& hh, const GroupElement& nn) {
        if (!parity(hh)) return nn;
        GroupElement out = nn;
        for (auto& x : out.coords) x = -x;
        return out;
      };
    }
    return semidirect(std::move(n), std::move(h), std::move(act));
  }

  /// G = Z^rank with the sublattice N spanned by the rows of n_basis.
  static Group extension(std::size_t rank, const lattice::IntMatrix& n_basis) {
    for (const auto& row : n_basis)
      if (row.size() != rank) throw ConfigError("n_basis row has wrong length");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Extension;
    impl->rank = rank;
    auto h = lattice::hermite(n_basis, rank);
    lattice::IntMatrix basis(h.form.begin(), h.form.begin() + static_cast<std::ptrdiff_t>(h.rank()));
    impl->n_basis = basis;

    auto q = std::make_shared<Impl>();
    q->kind = Kind::LatticeQuotient;
    q->rank = rank;
    q->n_basis = basis;
    q->pivot_cols = h.pivot_cols;
    for (std::size_t c = 0; c < rank; ++c) {
      auto it = std::find(h.pivot_cols.begin(), h.pivot_cols.end(), c);
      if (it == h.pivot_cols.end()) {
        q->layout.push_back({c, 0});
      } else {
        const auto row = static_cast<std::size_t>(it - h.pivot_cols.begin());
        const auto d = to_i64(basis[row][c]);
        if (d > 1) q->layout.push_back({c, d});
      }
    }
    impl->factors = {free_abelian(basis.size()), Group(std::move(q))};
    return Group(std::move(impl));
  }

  Kind kind() const { return impl_->kind; }

  std::size_t encoding_size() const {
    switch (impl_->kind) {
      case Kind::FreeAbelian:
      case Kind::Extension: return impl_->rank;
      case Kind::FiniteTable: return 1;
      case Kind::Semidirect:
        return impl_->factors[0].encoding_size() + impl_->factors[1].encoding_size();
      case Kind::LatticeQuotient: return impl_->layout.size();
    }
    return 0;
  }

  bool contains(const GroupElement& a) const {
    if (a.size() != encoding_size()) return false;
    switch (impl_->kind) {
      case Kind::FreeAbelian:
      case Kind::Extension: return true;
      case Kind::FiniteTable:
        return a[0] >= 0 && static_cast<std::size_t>(a[0]) < impl_->table.size();
      case Kind::Semidirect: {
        auto [n, h] = split(a);
        return impl_->factors[0].contains(n) && impl_->factors[1].contains(h);
      }
      case Kind::LatticeQuotient:
        for (std::size_t i = 0; i < impl_->layout.size(); ++i)
          if (impl_->layout[i].modulus > 0 && (a[i] < 0 || a[i] >= impl_->layout[i].modulus))
            return false;
        return true;
    }
    return false;
  }

  void check(const GroupElement& a) const {
    if (!contains(a))
      throw SpecMismatch("element " + a.to_string() + " does not belong to " + describe());
  }

  GroupElement identity() const {
    switch (impl_->kind) {
      case Kind::FiniteTable: return GroupElement{static_cast<std::int64_t>(impl_->identity_index)};
      case Kind::Semidirect:
        return pair(impl_->factors[0].identity(), impl_->factors[1].identity());
      default: return GroupElement(std::vector<std::int64_t>(encoding_size(), 0));
    }
  }

  GroupElement compose(const GroupElement& a, const GroupElement& b) const {
    check(a);
    check(b);
    switch (impl_->kind) {
      case Kind::FreeAbelian:
      case Kind::Extension: {
        GroupElement c = a;
        for (std::size_t i = 0; i < c.size(); ++i) c.coords[i] += b[i];
        return c;
      }
      case Kind::FiniteTable:
        return GroupElement{static_cast<std::int64_t>(
            impl_->table[static_cast<std::size_t>(a[0])][static_cast<std::size_t>(b[0])])};
      case Kind::Semidirect: {
        // (n,h)(n',h') = (n . h n', h h')
        auto [n1, h1] = split(a);
        auto [n2, h2] = split(b);
        const Group& nf = impl_->factors[0];
        const Group& hf = impl_->factors[1];
        return pair(nf.compose(n1, impl_->action.apply(h1, n2)), hf.compose(h1, h2));
      }
      case Kind::LatticeQuotient: {
        auto x = lift(a);
        auto y = lift(b);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
        return compress(reduce(std::move(x)));
      }
    }
    return {};
  }

  GroupElement invert(const GroupElement& a) const {
    check(a);
    switch (impl_->kind) {
      case Kind::FreeAbelian:
      case Kind::Extension: {
        GroupElement c = a;
        for (auto& x : c.coords) x = -x;
        return c;
      }
      case Kind::FiniteTable:
        return GroupElement{
            static_cast<std::int64_t>(impl_->inverse[static_cast<std::size_t>(a[0])])};
      case Kind::Semidirect: {
        // (n,h)^{-1} = (h^{-1} n^{-1}, h^{-1})
        auto [n, h] = split(a);
        const Group& nf = impl_->factors[0];
        const Group& hf = impl_->factors[1];
        GroupElement hinv = hf.invert(h);
        return pair(impl_->action.apply(hinv, nf.invert(n)), hinv);
      }
      case Kind::LatticeQuotient: {
        auto x = lift(a);
        for (auto& v : x) v = -v;
        return compress(reduce(std::move(x)));
      }
    }
    return {};
  }

  /// b^{-1} a, the degree of the component that holds homs <a>R -> <b>R.
  GroupElement left_quotient(const GroupElement& b, const GroupElement& a) const {
    return compose(invert(b), a);
  }

  GroupElement power(const GroupElement& a, std::int64_t k) const {
    GroupElement base = k < 0 ? invert(a) : a;
    GroupElement out = identity();
    for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out = compose(out, base);
    return out;
  }

  bool is_finite() const {
    switch (impl_->kind) {
      case Kind::FiniteTable: return true;
      case Kind::FreeAbelian: return impl_->rank == 0;
      case Kind::Semidirect: return impl_->factors[0].is_finite() && impl_->factors[1].is_finite();
      case Kind::Extension: return impl_->rank == 0;
      case Kind::LatticeQuotient:
        return std::all_of(impl_->layout.begin(), impl_->layout.end(),
                           [](const QuotientCoord& c) { return c.modulus > 0; });
    }
    return false;
  }

  /// All elements of a finite group, in encoding order.
  std::vector<GroupElement> elements() const {
    if (!is_finite()) throw SpecMismatch(describe() + " is infinite");
    switch (impl_->kind) {
      case Kind::FiniteTable: {
        std::vector<GroupElement> out;
        for (std::size_t i = 0; i < impl_->table.size(); ++i)
          out.push_back(GroupElement{static_cast<std::int64_t>(i)});
        return out;
      }
      case Kind::Semidirect: {
        std::vector<GroupElement> out;
        for (const auto& n : impl_->factors[0].elements())
          for (const auto& h : impl_->factors[1].elements()) out.push_back(pair(n, h));
        std::sort(out.begin(), out.end());
        return out;
      }
      case Kind::LatticeQuotient: {
        std::vector<GroupElement> out{GroupElement(std::vector<std::int64_t>(impl_->layout.size(), 0))};
        for (std::size_t i = 0; i < impl_->layout.size(); ++i) {
          std::vector<GroupElement> next;
          for (const auto& e : out)
            for (std::int64_t v = 0; v < impl_->layout[i].modulus; ++v) {
              GroupElement f = e;
              f.coords[i] = v;
              next.push_back(f);
            }
          out = std::move(next);
        }
        return out;
      }
      default: return {identity()};
    }
  }

  std::optional<std::size_t> order() const {
    if (!is_finite()) return std::nullopt;
    return elements().size();
  }

  // -------------------------------------------------------- semidirect parts

  const Group& normal_factor() const {
    require(Kind::Semidirect, "normal_factor");
    return impl_->factors[0];
  }
  const Group& acting_factor() const {
    require(Kind::Semidirect, "acting_factor");
    return impl_->factors[1];
  }
  const Action& action() const {
    require(Kind::Semidirect, "action");
    return impl_->action;
  }

  GroupElement pair(const GroupElement& n, const GroupElement& h) const {
    require(Kind::Semidirect, "pair");
    GroupElement out = n;
    out.coords.insert(out.coords.end(), h.coords.begin(), h.coords.end());
    return out;
  }

  std::pair<GroupElement, GroupElement> split(const GroupElement& g) const {
    require(Kind::Semidirect, "split");
    const auto k = static_cast<std::ptrdiff_t>(impl_->factors[0].encoding_size());
    return {GroupElement(std::vector<std::int64_t>(g.coords.begin(), g.coords.begin() + k)),
            GroupElement(std::vector<std::int64_t>(g.coords.begin() + k, g.coords.end()))};
  }

  GroupElement act(const GroupElement& h, const GroupElement& n) const {
    require(Kind::Semidirect, "act");
    return impl_->action.apply(h, n);
  }

  // ----------------------------------------------------------- extensions

  /// The quotient H = Z^r / N of an extension.
  const Group& quotient() const {
    require(Kind::Extension, "quotient");
    return impl_->factors[1];
  }
  /// N as an abstract lattice, coordinates with respect to n_basis().
  const Group& kernel() const {
    require(Kind::Extension, "kernel");
    return impl_->factors[0];
  }
  const lattice::IntMatrix& n_basis() const {
    require(Kind::Extension, "n_basis");
    return impl_->n_basis;
  }

  GroupElement project(const GroupElement& g) const {
    require(Kind::Extension, "project");
    check(g);
    return quotient().compress(quotient().reduce(to_int(g)));
  }

  /// Hermite-normal-form coset representative of h.
  GroupElement section(const GroupElement& h) const {
    require(Kind::Extension, "section");
    quotient().check(h);
    return from_int(quotient().lift(h));
  }

  GroupElement embed_kernel(const GroupElement& n) const {
    require(Kind::Extension, "embed_kernel");
    kernel().check(n);
    lattice::IntVector v(impl_->rank, 0);
    for (std::size_t i = 0; i < n.size(); ++i)
      for (std::size_t c = 0; c < impl_->rank; ++c) v[c] += Int(n[i]) * impl_->n_basis[i][c];
    return from_int(v);
  }

  std::optional<GroupElement> kernel_coordinates(const GroupElement& g) const {
    require(Kind::Extension, "kernel_coordinates");
    auto c = lattice::solve_rows(impl_->n_basis, to_int(g));
    if (!c) return std::nullopt;
    std::vector<std::int64_t> out;
    for (const auto& x : *c) out.push_back(to_i64(x));
    return GroupElement(std::move(out));
  }

  // ------------------------------------------------------ lattice quotients

  const std::vector<QuotientCoord>& quotient_layout() const {
    require(Kind::LatticeQuotient, "quotient_layout");
    return impl_->layout;
  }

  lattice::IntVector lift(const GroupElement& h) const {
    require(Kind::LatticeQuotient, "lift");
    lattice::IntVector v(impl_->rank, 0);
    for (std::size_t i = 0; i < impl_->layout.size(); ++i) v[impl_->layout[i].column] = h[i];
    return v;
  }

  lattice::IntVector reduce(lattice::IntVector v) const {
    require(Kind::LatticeQuotient, "reduce");
    for (std::size_t i = 0; i < impl_->pivot_cols.size(); ++i) {
      const std::size_t c = impl_->pivot_cols[i];
      const Int q = floor_div(v[c], impl_->n_basis[i][c]);
      if (q != 0) lattice::axpy_row(v, q, impl_->n_basis[i]);
    }
    return v;
  }

  GroupElement compress(const lattice::IntVector& v) const {
    require(Kind::LatticeQuotient, "compress");
    std::vector<std::int64_t> out;
    for (const auto& c : impl_->layout) out.push_back(to_i64(v[c.column]));
    return GroupElement(std::move(out));
  }

  // --------------------------------------------------------------- misc

  /// Homomorphism to Z/2 used by the named involutive actions.
  bool parity(const GroupElement& h) const {
    switch (impl_->kind) {
      case Kind::FreeAbelian: {
        std::int64_t s = 0;
        for (auto x : h.coords) s += x;
        return (s % 2) != 0;
      }
      case Kind::FiniteTable: {
        // sign of x -> h*x
        const std::size_t m = impl_->table.size();
        std::vector<bool> seen(m, false);
        std::size_t cycles = 0;
        for (std::size_t x = 0; x < m; ++x) {
          if (seen[x]) continue;
          ++cycles;
          for (std::size_t y = x; !seen[y]; y = impl_->table[static_cast<std::size_t>(h[0])][y])
            seen[y] = true;
        }
        return ((m - cycles) % 2) != 0;
      }
      default: throw ConfigError("named actions need a lattice or finite acting group");
    }
  }

  bool same_as(const Group& other) const {
    if (impl_ == other.impl_) return true;
    return describe() == other.describe();
  }

  std::string describe() const {
    switch (impl_->kind) {
      case Kind::FreeAbelian: return "Z^" + std::to_string(impl_->rank);
      case Kind::FiniteTable: return "Finite(" + std::to_string(impl_->table.size()) + ")";
      case Kind::Semidirect:
        return impl_->factors[0].describe() + " x|" + impl_->action.name + " " +
               impl_->factors[1].describe();
      case Kind::Extension: {
        std::string s = "Z^" + std::to_string(impl_->rank) + " > N<";
        for (std::size_t i = 0; i < impl_->n_basis.size(); ++i) {
          if (i) s += ";";
          for (std::size_t c = 0; c < impl_->rank; ++c) s += (c ? "," : "") + to_string(impl_->n_basis[i][c]);
        }
        return s + ">";
      }
      case Kind::LatticeQuotient: {
        std::string s = "Z^" + std::to_string(impl_->rank) + "/<";
        for (std::size_t i = 0; i < impl_->n_basis.size(); ++i) {
          if (i) s += ";";
          for (std::size_t c = 0; c < impl_->rank; ++c) s += (c ? "," : "") + to_string(impl_->n_basis[i][c]);
        }
        return s + ">";
      }
    }
    return "?";
  }

  static Action trivial_action() {
    return Action{"trivial", [](const GroupElement&, const GroupElement& n) { return n; }};
  }

 private:
  struct Impl {
    Kind kind = Kind::FreeAbelian;
    std::size_t rank = 0;
    std::vector<std::vector<std::size_t>> table;
    std::vector<std::size_t> inverse;
    std::size_t identity_index = 0;
    std::vector<Group> factors;
    Action action;
    lattice::IntMatrix n_basis;
    std::vector<std::size_t> pivot_cols;
    std::vector<QuotientCoord> layout;
  };

  explicit Group(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  void require(Kind k, const char* what) const {
    if (impl_->kind != k) throw SpecMismatch(std::string(what) + " is not defined for " + describe());
  }

  static lattice::IntVector to_int(const GroupElement& g) {
    lattice::IntVector v;
    for (auto x : g.coords) v.emplace_back(x);
    return v;
  }
  static GroupElement from_int(const lattice::IntVector& v) {
    std::vector<std::int64_t> out;
    for (const auto& x : v) out.push_back(to_i64(x));
    return GroupElement(std::move(out));
  }

  std::shared_ptr<const Impl> impl_;
};

/// h = pi(g) and n = sigma(h)^{-1} g, with n returned as an element of G.
struct CosetDecomposition {
  GroupElement h;
  GroupElement n;
};

inline CosetDecomposition project_and_section(const Group& g_group, const GroupElement& g) {
  if (g_group.kind() == Group::Kind::Extension) {
    GroupElement h = g_group.project(g);
    GroupElement n = g_group.compose(g_group.invert(g_group.section(h)), g);
    return {h, n};
  }
  if (g_group.kind() == Group::Kind::Semidirect) {
    g_group.check(g);
    auto [nn, h] = g_group.split(g);
    GroupElement sigma = g_group.pair(g_group.normal_factor().identity(), h);
    return {h, g_group.compose(g_group.invert(sigma), g)};
  }
  throw SpecMismatch("project_and_section needs an extension or a semidirect product");
}

/// Embedding of a subgroup; the subring constructions restrict along it.
struct GroupHom {
  Group source;
  Group target;
  std::function<GroupElement(const GroupElement&)> map;
  std::function<std::optional<GroupElement>(const GroupElement&)> preimage;
  std::string description;

  GroupElement operator()(const GroupElement& x) const { return map(x); }

  static GroupHom identity(const Group& g) {
    return {g, g, [](const GroupElement& x) { return x; },
            [](const GroupElement& x) { return std::optional<GroupElement>(x); }, "identity"};
  }

  /// N -> N x| H, n -> (n, 1).
  static GroupHom normal_inclusion(const Group& g) {
    const Group n = g.normal_factor();
    return {n, g, [g](const GroupElement& x) { return g.pair(x, g.acting_factor().identity()); },
            [g](const GroupElement& x) -> std::optional<GroupElement> {
              auto [nn, h] = g.split(x);
              if (h != g.acting_factor().identity()) return std::nullopt;
              return nn;
            },
            "normal_factor"};
  }

  /// H -> N x| H, h -> (1, h).
  static GroupHom acting_inclusion(const Group& g) {
    const Group h = g.acting_factor();
    return {h, g, [g](const GroupElement& x) { return g.pair(g.normal_factor().identity(), x); },
            [g](const GroupElement& x) -> std::optional<GroupElement> {
              auto [nn, hh] = g.split(x);
              if (nn != g.normal_factor().identity()) return std::nullopt;
              return hh;
            },
            "acting_factor"};
  }

  /// N -> Z^r for an extension, in n_basis coordinates.
  static GroupHom kernel_inclusion(const Group& g) {
    return {g.kernel(), g, [g](const GroupElement& x) { return g.embed_kernel(x); },
            [g](const GroupElement& x) { return g.kernel_coordinates(x); }, "kernel"};
  }

  /// Coordinate sublattice Z^k -> Z^r on the listed columns.
  static GroupHom coordinate_inclusion(const Group& g, std::vector<std::size_t> columns) {
    const Group src = Group::free_abelian(columns.size());
    const std::size_t r = g.encoding_size();
    return {src, g,
            [columns, r](const GroupElement& x) {
              std::vector<std::int64_t> v(r, 0);
              for (std::size_t i = 0; i < columns.size(); ++i) v[columns[i]] = x[i];
              return GroupElement(std::move(v));
            },
            [columns, r](const GroupElement& x) -> std::optional<GroupElement> {
              std::vector<std::int64_t> v;
              for (std::size_t c = 0; c < r; ++c) {
                auto it = std::find(columns.begin(), columns.end(), c);
                if (it == columns.end() && x[c] != 0) return std::nullopt;
              }
              for (auto c : columns) v.push_back(x[c]);
              return GroupElement(std::move(v));
            },
            "coordinates"};
  }
};

// ------------------------------------------------------------------ orders

/// Polyhedral cone order: n >= 1 iff every functional is nonnegative at n.
class OrderSpec {
 public:
  OrderSpec() = default;
  OrderSpec(Group owner, std::vector<std::vector<std::int64_t>> functionals)
      : owner_(std::move(owner)), functionals_(std::move(functionals)) {
    const auto k = owner_.kind();
    if (k != Group::Kind::FreeAbelian && k != Group::Kind::LatticeQuotient)
      throw ConfigError("cone orders live on lattices, not on " + owner_.describe());
    for (const auto& f : functionals_)
      if (f.size() != owner_.encoding_size()) throw ConfigError("functional has wrong length");
    if (k == Group::Kind::LatticeQuotient) {
      const auto& layout = owner_.quotient_layout();
      for (const auto& f : functionals_)
        for (std::size_t i = 0; i < layout.size(); ++i)
          if (layout[i].modulus > 0 && f[i] != 0)
            throw ConfigError("functional must vanish on torsion coordinates");
    }
  }

  /// Order on H = Z^r / N induced by functionals on Z^r that vanish on N.
  static OrderSpec induced_on_quotient(const Group& extension,
                                       const std::vector<std::vector<std::int64_t>>& ambient) {
    const Group& h = extension.quotient();
    for (const auto& f : ambient)
      for (const auto& b : extension.n_basis()) {
        Int s = 0;
        for (std::size_t c = 0; c < f.size(); ++c) s += Int(f[c]) * b[c];
        if (s != 0) throw ConfigError("functional does not vanish on N");
      }
    std::vector<std::vector<std::int64_t>> fs;
    for (const auto& f : ambient) {
      std::vector<std::int64_t> g;
      for (const auto& c : h.quotient_layout()) g.push_back(c.modulus > 0 ? 0 : f[c.column]);
      fs.push_back(std::move(g));
    }
    return OrderSpec(h, std::move(fs));
  }

  const Group& owner() const { return owner_; }
  const std::vector<std::vector<std::int64_t>>& functionals() const { return functionals_; }

  Int evaluate(std::size_t i, const GroupElement& n) const {
    Int s = 0;
    for (std::size_t c = 0; c < n.size(); ++c) s += Int(functionals_[i][c]) * n[c];
    return s;
  }

  bool in_cone(const GroupElement& n) const {
    owner_.check(n);
    for (std::size_t i = 0; i < functionals_.size(); ++i)
      if (evaluate(i, n) < 0) return false;
    return true;
  }

  /// a <= b iff b a^{-1} lies in the positive cone.
  bool leq(const GroupElement& a, const GroupElement& b) const {
    return in_cone(owner_.compose(b, owner_.invert(a)));
  }

  bool less(const GroupElement& a, const GroupElement& b) const { return a != b && leq(a, b); }

  bool identity_in_cone() const { return in_cone(owner_.identity()); }

  /// theta(h)(n) stays in the cone for every sampled h and cone element n.
  bool invariant_under(const Group& semidirect, const std::vector<GroupElement>& hs,
                       const std::vector<GroupElement>& ns) const {
    for (const auto& h : hs)
      for (const auto& n : ns)
        if (in_cone(n) && !in_cone(semidirect.act(h, n))) return false;
    return true;
  }

 private:
  Group owner_;
  std::vector<std::vector<std::int64_t>> functionals_;
};

/// Linear extension with larger elements first: s_i > s_j implies i < j.
/// Ties are broken by the smallest canonical encoding.
inline std::vector<GroupElement> linear_extension(const OrderSpec& order,
                                                  std::vector<GroupElement> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  std::vector<GroupElement> out;
  std::vector<bool> used(elems.size(), false);
  for (std::size_t step = 0; step < elems.size(); ++step) {
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (used[i]) continue;
      bool maximal = true;
      for (std::size_t j = 0; j < elems.size() && maximal; ++j)
        if (!used[j] && j != i && order.less(elems[i], elems[j])) maximal = false;
      if (maximal) {
        used[i] = true;
        out.push_back(elems[i]);
        break;
      }
    }
  }
  return out;
}

/// Integer kernel { x in Z^r : F x = 0 } of a list of functionals.
inline lattice::IntMatrix functional_kernel(const std::vector<std::vector<std::int64_t>>& f,
                                            std::size_t rank) {
  lattice::IntMatrix transposed(rank, lattice::IntVector(f.size(), 0));
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t c = 0; c < rank; ++c) transposed[c][i] = f[i][c];
  if (f.empty()) return lattice::identity_int(rank);
  return lattice::left_kernel(transposed, f.size());
}

inline GroupElement random_element(const Group& g, Rng& rng, std::int64_t radius) {
  switch (g.kind()) {
    case Group::Kind::FreeAbelian:
    case Group::Kind::Extension: {
      std::vector<std::int64_t> v(g.encoding_size());
      for (auto& x : v) x = uniform_int(rng, -radius, radius);
      return GroupElement(std::move(v));
    }
    case Group::Kind::FiniteTable: {
      const auto m = static_cast<std::int64_t>(*g.order());
      return GroupElement{uniform_int(rng, 0, m - 1)};
    }
    case Group::Kind::Semidirect:
      return g.pair(random_element(g.normal_factor(), rng, radius),
                    random_element(g.acting_factor(), rng, radius));
    case Group::Kind::LatticeQuotient: {
      lattice::IntVector v(g.lift(g.identity()).size());
      for (auto& x : v) x = uniform_int(rng, -radius, radius);
      return g.compress(g.reduce(v));
    }
  }
  return g.identity();
}

}  // namespace sysk
