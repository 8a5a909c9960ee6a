#pragma once

// Finitely generated systematically free based modules, degree-constrained
// morphism matrices, the idempotent completion, lower triangular splitting
// and tensor extension along K_1 -> K.

#include "sysk/checks.hpp"
#include "sysk/errors.hpp"
#include "sysk/groups.hpp"
#include "sysk/matrix.hpp"
#include "sysk/rings.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sysk {

using RMatrix = Matrix<RingElem>;

inline RMatrix zero_matrix(const SystematicRing& r, std::size_t m, std::size_t n) {
  return RMatrix(m, n, r.zero());
}

inline RMatrix identity_matrix(const SystematicRing& r, std::size_t n) {
  return RMatrix::identity(n, r.zero(), r.one());
}

// ------------------------------------------------------------------ modules

/// (+)_i <g_i>R with the preferred generator of <g>R sitting in degree g.
struct FreeSysModule {
  RingPtr ring;
  std::vector<GroupElement> degrees;

  FreeSysModule() = default;
  FreeSysModule(RingPtr r, std::vector<GroupElement> d) : ring(std::move(r)), degrees(std::move(d)) {
    for (const auto& g : degrees) ring->grading().check(g);
  }

  std::size_t rank() const { return degrees.size(); }

  FreeSysModule sub(std::size_t start, std::size_t count) const {
    return FreeSysModule(ring, std::vector<GroupElement>(degrees.begin() + static_cast<std::ptrdiff_t>(start),
                                                         degrees.begin() + static_cast<std::ptrdiff_t>(start + count)));
  }

  bool operator==(const FreeSysModule& o) const {
    return ring.get() == o.ring.get() && degrees == o.degrees;
  }

  std::string to_string() const {
    if (degrees.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < degrees.size(); ++i) s += (i ? "+<" : "<") + degrees[i].to_string() + ">";
    return s;
  }
};

inline FreeSysModule shift_module(const GroupElement& a, const FreeSysModule& m) {
  std::vector<GroupElement> d;
  for (const auto& g : m.degrees) d.push_back(m.ring->grading().compose(a, g));
  return FreeSysModule(m.ring, std::move(d));
}

inline FreeSysModule direct_sum(const FreeSysModule& a, const FreeSysModule& b) {
  if (a.ring.get() != b.ring.get()) throw SpecMismatch("direct sum over different rings");
  auto d = a.degrees;
  d.insert(d.end(), b.degrees.begin(), b.degrees.end());
  return FreeSysModule(a.ring, std::move(d));
}

struct DegreeViolation {
  std::size_t row;
  std::size_t col;
  GroupElement required;
};

/// Matrix (f_ij) with f_ij in R_{g_i^{-1} g'_j}; g target degrees, g' source.
class SysMorphism {
 public:
  SysMorphism(FreeSysModule source, FreeSysModule target, RMatrix m)
      : source_(std::move(source)), target_(std::move(target)), m_(std::move(m)) {
    if (source_.ring.get() != target_.ring.get()) throw SpecMismatch("morphism between rings");
    if (m_.rows() != target_.rank() || m_.cols() != source_.rank())
      throw SpecMismatch("matrix " + m_.shape() + " does not fit " + source_.to_string() + " -> " +
                         target_.to_string());
  }

  static SysMorphism zero(const FreeSysModule& s, const FreeSysModule& t) {
    return SysMorphism(s, t, zero_matrix(*s.ring, t.rank(), s.rank()));
  }
  static SysMorphism identity(const FreeSysModule& m) {
    return SysMorphism(m, m, identity_matrix(*m.ring, m.rank()));
  }

  const FreeSysModule& source() const { return source_; }
  const FreeSysModule& target() const { return target_; }
  const RMatrix& matrix() const { return m_; }
  const RingElem& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  GroupElement required_degree(std::size_t i, std::size_t j) const {
    return source_.ring->grading().left_quotient(target_.degrees[i], source_.degrees[j]);
  }

  std::vector<DegreeViolation> validate() const {
    std::vector<DegreeViolation> out;
    for (std::size_t i = 0; i < m_.rows(); ++i)
      for (std::size_t j = 0; j < m_.cols(); ++j) {
        if (m_(i, j).is_zero()) continue;
        GroupElement d = required_degree(i, j);
        if (!source_.ring->member(m_(i, j), d)) out.push_back({i, j, d});
      }
    return out;
  }

  bool is_valid() const { return validate().empty(); }

  friend SysMorphism operator*(const SysMorphism& f, const SysMorphism& g) {
    if (!(g.target_ == f.source_))
      throw SpecMismatch("cannot compose " + g.target_.to_string() + " with " + f.source_.to_string());
    return SysMorphism(g.source_, f.target_, f.m_ * g.m_);
  }
  friend SysMorphism operator+(const SysMorphism& f, const SysMorphism& g) {
    f.same_ends(g);
    return SysMorphism(f.source_, f.target_, f.m_ + g.m_);
  }
  friend SysMorphism operator-(const SysMorphism& f, const SysMorphism& g) {
    f.same_ends(g);
    return SysMorphism(f.source_, f.target_, f.m_ - g.m_);
  }
  friend bool operator==(const SysMorphism& f, const SysMorphism& g) {
    return f.source_ == g.source_ && f.target_ == g.target_ && f.m_ == g.m_;
  }

 private:
  void same_ends(const SysMorphism& g) const {
    if (!(source_ == g.source_) || !(target_ == g.target_)) throw SpecMismatch("morphisms not parallel");
  }

  FreeSysModule source_;
  FreeSysModule target_;
  RMatrix m_;
};

/// Additive generators of Hom(<g_src>R, <g_tgt>R) = R_{g_tgt^{-1} g_src}.
inline std::vector<RingElem> hom_component_basis(const SystematicRing& r, const GroupElement& g_src,
                                                 const GroupElement& g_tgt, const Window& w = {}) {
  return r.gens(r.grading().left_quotient(g_tgt, g_src), w);
}

// -------------------------------------------------------- idempotent completion

class IdemObject {
 public:
  IdemObject(FreeSysModule carrier, RMatrix p) : p_(carrier, carrier, std::move(p)) {
    if (!p_.is_valid()) throw InvalidMorphism("idempotent violates degree constraints");
    if (!(p_.matrix() * p_.matrix() == p_.matrix())) throw NotIdempotent("p*p != p");
  }
  explicit IdemObject(const SysMorphism& p) : IdemObject(p.source(), p.matrix()) {
    if (!(p.source() == p.target())) throw SpecMismatch("idempotent must be an endomorphism");
  }

  static IdemObject free(const FreeSysModule& m) { return IdemObject(m, identity_matrix(*m.ring, m.rank())); }

  const FreeSysModule& carrier() const { return p_.source(); }
  const SysMorphism& idempotent() const { return p_; }
  const RMatrix& p() const { return p_.matrix(); }
  const RingPtr& ring() const { return p_.source().ring; }
  std::size_t size() const { return p_.source().rank(); }

  bool operator==(const IdemObject& o) const { return p_ == o.p_; }

 private:
  SysMorphism p_;
};

/// f : (A,p) -> (B,q) with q f p = f.
class IdemMorphism {
 public:
  IdemMorphism(IdemObject source, IdemObject target, RMatrix f)
      : source_(std::move(source)), target_(std::move(target)),
        f_(source_.carrier(), target_.carrier(), std::move(f)) {
    if (!f_.is_valid()) throw InvalidMorphism("morphism violates degree constraints");
    if (!(target_.p() * f_.matrix() * source_.p() == f_.matrix())) throw InvalidMorphism("q f p != f");
  }

  static IdemMorphism identity(const IdemObject& x) { return IdemMorphism(x, x, x.p()); }

  const IdemObject& source() const { return source_; }
  const IdemObject& target() const { return target_; }
  const SysMorphism& morphism() const { return f_; }
  const RMatrix& matrix() const { return f_.matrix(); }

  friend IdemMorphism operator*(const IdemMorphism& f, const IdemMorphism& g) {
    if (!(g.target_ == f.source_)) throw SpecMismatch("idempotent morphisms do not compose");
    return IdemMorphism(g.source_, f.target_, f.matrix() * g.matrix());
  }
  friend IdemMorphism operator+(const IdemMorphism& f, const IdemMorphism& g) {
    return IdemMorphism(f.source_, f.target_, f.matrix() + g.matrix());
  }
  friend bool operator==(const IdemMorphism& f, const IdemMorphism& g) {
    return f.source_ == g.source_ && f.target_ == g.target_ && f.matrix() == g.matrix();
  }

 private:
  IdemObject source_;
  IdemObject target_;
  SysMorphism f_;
};

// --------------------------------------------------------- lower triangular

using BlockSizes = std::vector<std::size_t>;

inline std::vector<std::size_t> block_offsets(const BlockSizes& sizes) {
  std::vector<std::size_t> off(sizes.size() + 1, 0);
  for (std::size_t k = 0; k < sizes.size(); ++k) off[k + 1] = off[k] + sizes[k];
  return off;
}

/// Block (i,j) with i < j must vanish.
template <RingValue T>
bool is_lower_triangular(const Matrix<T>& m, const BlockSizes& rows, const BlockSizes& cols) {
  auto ro = block_offsets(rows);
  auto co = block_offsets(cols);
  if (ro.back() != m.rows() || co.back() != m.cols() || rows.size() != cols.size()) return false;
  for (std::size_t bi = 0; bi < rows.size(); ++bi)
    for (std::size_t bj = bi + 1; bj < cols.size(); ++bj)
      if (!m.block(ro[bi], co[bj], rows[bi], cols[bj]).is_zero()) return false;
  return true;
}

template <RingValue T>
void require_lower_triangular(const Matrix<T>& m, const BlockSizes& rows, const BlockSizes& cols) {
  if (!is_lower_triangular(m, rows, cols)) throw NotLowerTriangular("matrix is not block lower triangular");
}

/// sigma, pi, rho, <pi;rho> and M for p = [[p11,0],[p21,p22]].
template <RingValue T>
struct SplitMatrices {
  Matrix<T> p, p11, p21, p22;
  Matrix<T> sigma;   // [0; p22]
  Matrix<T> pi;      // [p11 0]
  Matrix<T> rho;     // [p22 p21, p22]
  Matrix<T> pi_rho;  // [[p11,0],[p22 p21,p22]]
  Matrix<T> M;       // [[p11,0],[p21 p11,p22]]
  Matrix<T> diag;    // diag(p11, p22)
};

template <RingValue T>
SplitMatrices<T> split_lower_triangular(const Matrix<T>& p, std::size_t n1) {
  const std::size_t n = p.rows();
  if (p.cols() != n || n1 > n) throw SpecMismatch("split needs a square matrix");
  const std::size_t n2 = n - n1;
  require_lower_triangular(p, {n1, n2}, {n1, n2});
  if (!(p * p == p)) throw NotIdempotent("p*p != p");
  SplitMatrices<T> s;
  const T& z = p.zero();
  s.p = p;
  s.p11 = p.block(0, 0, n1, n1);
  s.p21 = p.block(n1, 0, n2, n1);
  s.p22 = p.block(n1, n1, n2, n2);
  const Matrix<T> z12(n1, n2, z);
  const Matrix<T> z21(n2, n1, z);
  s.sigma = Matrix<T>::vstack(Matrix<T>(n1, n2, z), s.p22);
  s.pi = Matrix<T>::hstack(s.p11, z12);
  s.rho = Matrix<T>::hstack(s.p22 * s.p21, s.p22);
  s.pi_rho = Matrix<T>::vstack(s.pi, s.rho);
  s.M = Matrix<T>::vstack(Matrix<T>::hstack(s.p11, z12), Matrix<T>::hstack(s.p21 * s.p11, s.p22));
  s.diag = Matrix<T>::block_diag(s.p11, s.p22);
  return s;
}

template <RingValue T>
std::vector<Check> verify_split(const SplitMatrices<T>& s) {
  const auto& [p, p11, p21, p22, sigma, pi, rho, pi_rho, M, diag] = s;
  std::vector<Check> out;
  auto add = [&](const char* name, bool ok) { out.push_back({name, ok, "", 0}); };
  add("p11^2 = p11", p11 * p11 == p11);
  add("p22^2 = p22", p22 * p22 == p22);
  add("p21 p11 + p22 p21 = p21", p21 * p11 + p22 * p21 == p21);
  add("p22 p21 p11 = 0", (p22 * p21 * p11).is_zero());
  add("M <pi;rho> = p", M * pi_rho == p);
  add("<pi;rho> M = diag(p11,p22)", pi_rho * M == diag);
  add("pi sigma = 0", (pi * sigma).is_zero());
  add("rho sigma = p22", rho * sigma == p22);
  add("sigma is a morphism", p * sigma * p22 == sigma);
  add("pi is a morphism", p11 * pi * p == pi);
  add("rho is a morphism", p22 * rho * p == rho);
  add("<pi;rho> is a morphism", diag * pi_rho * p == pi_rho);
  add("M is a morphism", p * M * diag == M);
  return out;
}

/// The split short exact sequence 0 -> S(A) -> A -> Q(A) -> 0 in Idem.
struct SplitData {
  IdemObject A;
  IdemObject Q;  // (A1, p11)
  IdemObject S;  // (A2, p22)
  IdemObject D;  // Q(A) (+) S(A) = (A1 (+) A2, diag(p11, p22))
  IdemMorphism sigma, pi, rho, pi_rho, M;
  SplitMatrices<RingElem> raw;
};

inline SplitData idem_split_lt(const IdemObject& x, std::size_t n1) {
  auto raw = split_lower_triangular(x.p(), n1);
  const std::size_t n2 = x.size() - n1;
  IdemObject q(x.carrier().sub(0, n1), raw.p11);
  IdemObject s(x.carrier().sub(n1, n2), raw.p22);
  IdemObject d(x.carrier(), raw.diag);
  IdemMorphism sigma(s, x, raw.sigma);
  IdemMorphism pi(x, q, raw.pi);
  IdemMorphism rho(x, s, raw.rho);
  IdemMorphism pi_rho(x, d, raw.pi_rho);
  IdemMorphism m(d, x, raw.M);
  return SplitData{x, q, s, d, sigma, pi, rho, pi_rho, m, raw};
}

inline std::vector<Check> verify_split(const SplitData& s) {
  auto out = verify_split(s.raw);
  out.push_back({"M <pi;rho> = id_A", s.M * s.pi_rho == IdemMorphism::identity(s.A), "", 0});
  out.push_back({"<pi;rho> M = id_D", s.pi_rho * s.M == IdemMorphism::identity(s.D), "", 0});
  return out;
}

/// T_k(X) = (P_k, p_kk).
inline IdemObject lt_block(const IdemObject& x, const BlockSizes& sizes, std::size_t k) {
  if (k >= sizes.size()) throw SpecMismatch("block index out of range");
  require_lower_triangular(x.p(), sizes, sizes);
  auto off = block_offsets(sizes);
  return IdemObject(x.carrier().sub(off[k], sizes[k]), x.p().block(off[k], off[k], sizes[k], sizes[k]));
}

inline RMatrix lt_block_morphism(const RMatrix& f, const BlockSizes& rows, const BlockSizes& cols,
                                 std::size_t k) {
  require_lower_triangular(f, rows, cols);
  auto ro = block_offsets(rows);
  auto co = block_offsets(cols);
  return f.block(ro[k], co[k], rows[k], cols[k]);
}

/// T_k through LT(A_1..A_r) = LT(LT(A_1..A_{r-1}), A_r): T_r is S of the
/// two-block split, T_k for k < r is T_k of Q.
inline IdemObject lt_block_recursive(const IdemObject& x, const BlockSizes& sizes, std::size_t k) {
  if (k >= sizes.size()) throw SpecMismatch("block index out of range");
  if (sizes.size() == 1) return x;
  const std::size_t last = sizes.back();
  const std::size_t n1 = x.size() - last;
  SplitData s = idem_split_lt(x, n1);
  if (k + 1 == sizes.size()) return s.S;
  BlockSizes head(sizes.begin(), sizes.end() - 1);
  return lt_block_recursive(s.Q, head, k);
}

/// epsilon_k: X placed in block k of an r-block object.
inline std::pair<IdemObject, BlockSizes> epsilon(const IdemObject& x, std::size_t r, std::size_t k) {
  if (k >= r) throw SpecMismatch("block index out of range");
  BlockSizes sizes(r, 0);
  sizes[k] = x.size();
  return {x, sizes};
}

/// Direct sum in LT: blocks interleaved as (X_1 (+) Y_1) (+) ... (+) (X_r (+) Y_r).
struct LTSum {
  IdemObject sum;
  BlockSizes sizes;
  BlockSizes sizes_x, sizes_y;
  IdemMorphism inc_x, inc_y, proj_x, proj_y;
};

inline LTSum lt_direct_sum(const IdemObject& x, const BlockSizes& sx, const IdemObject& y,
                           const BlockSizes& sy) {
  if (sx.size() != sy.size()) throw SpecMismatch("block counts differ");
  const SystematicRing& r = *x.ring();
  auto ox = block_offsets(sx);
  auto oy = block_offsets(sy);
  std::vector<GroupElement> degrees;
  std::vector<std::size_t> pos_x(x.size()), pos_y(y.size());
  BlockSizes sizes;
  for (std::size_t k = 0; k < sx.size(); ++k) {
    for (std::size_t i = 0; i < sx[k]; ++i) {
      pos_x[ox[k] + i] = degrees.size();
      degrees.push_back(x.carrier().degrees[ox[k] + i]);
    }
    for (std::size_t i = 0; i < sy[k]; ++i) {
      pos_y[oy[k] + i] = degrees.size();
      degrees.push_back(y.carrier().degrees[oy[k] + i]);
    }
    sizes.push_back(sx[k] + sy[k]);
  }
  FreeSysModule carrier(x.ring(), degrees);
  const std::size_t n = degrees.size();
  RMatrix p = zero_matrix(r, n, n);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) p(pos_x[i], pos_x[j]) = x.p()(i, j);
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) p(pos_y[i], pos_y[j]) = y.p()(i, j);
  IdemObject sum(carrier, p);
  RMatrix ix = zero_matrix(r, n, x.size()), px = zero_matrix(r, x.size(), n);
  RMatrix iy = zero_matrix(r, n, y.size()), py = zero_matrix(r, y.size(), n);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      ix(pos_x[i], j) = x.p()(i, j);
      px(i, pos_x[j]) = x.p()(i, j);
    }
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) {
      iy(pos_y[i], j) = y.p()(i, j);
      py(i, pos_y[j]) = y.p()(i, j);
    }
  return LTSum{sum, sizes, sx, sy, IdemMorphism(x, sum, ix), IdemMorphism(y, sum, iy), IdemMorphism(sum, x, px),
               IdemMorphism(sum, y, py)};
}

inline std::vector<Check> verify_biproduct(const LTSum& s) {
  std::vector<Check> out;
  const auto& x = s.proj_x.target();
  const auto& y = s.proj_y.target();
  out.push_back({"proj_x inc_x = id", s.proj_x * s.inc_x == IdemMorphism::identity(x), "", 0});
  out.push_back({"proj_y inc_y = id", s.proj_y * s.inc_y == IdemMorphism::identity(y), "", 0});
  out.push_back({"proj_y inc_x = 0", (s.proj_y * s.inc_x).matrix().is_zero(), "", 0});
  out.push_back({"proj_x inc_y = 0", (s.proj_x * s.inc_y).matrix().is_zero(), "", 0});
  out.push_back({"inc_x proj_x + inc_y proj_y = id",
                 s.inc_x * s.proj_x + s.inc_y * s.proj_y == IdemMorphism::identity(s.sum), "", 0});
  out.push_back({"structure maps are lower triangular",
                 is_lower_triangular(s.inc_x.matrix(), s.sizes, s.sizes_x) &&
                     is_lower_triangular(s.inc_y.matrix(), s.sizes, s.sizes_y) &&
                     is_lower_triangular(s.proj_x.matrix(), s.sizes_x, s.sizes) &&
                     is_lower_triangular(s.proj_y.matrix(), s.sizes_y, s.sizes),
                 "", 0});
  return out;
}

// -------------------------------------------------------------- slot layout

/// Ordered slots (largest first); block k of an object holds the
/// generators whose degrees lie in slot k.
struct SlotPartition {
  std::vector<std::vector<GroupElement>> slots;

  std::optional<std::size_t> slot_of(const GroupElement& g) const {
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (std::find(slots[k].begin(), slots[k].end(), g) != slots[k].end()) return k;
    return std::nullopt;
  }

  BlockSizes block_sizes(const FreeSysModule& m) const {
    BlockSizes sizes(slots.size(), 0);
    std::size_t last = 0;
    for (const auto& g : m.degrees) {
      auto k = slot_of(g);
      if (!k) throw SpecMismatch("degree " + g.to_string() + " is outside the window");
      if (*k < last) throw NotLowerTriangular("generators are not grouped by slot");
      last = *k;
      ++sizes[*k];
    }
    return sizes;
  }

  /// Stable permutation grouping generators by slot.
  std::vector<std::size_t> sorting_permutation(const FreeSysModule& m) const {
    std::vector<std::size_t> perm(m.rank());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> key;
    for (const auto& g : m.degrees) {
      auto k = slot_of(g);
      if (!k) throw SpecMismatch("degree " + g.to_string() + " is outside the window");
      key.push_back(*k);
    }
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
    return perm;
  }
};

/// (A,p) with generators reordered by a permutation; isomorphic to (A,p).
inline IdemObject permute_object(const IdemObject& x, const std::vector<std::size_t>& perm) {
  std::vector<GroupElement> d;
  for (auto i : perm) d.push_back(x.carrier().degrees[i]);
  return IdemObject(FreeSysModule(x.ring(), d), x.p().permuted(perm));
}

// -------------------------------------------------------- random generators

/// Degrees listed block by block, largest block first.
struct LTShape {
  std::vector<GroupElement> degrees;
  BlockSizes sizes;
};

inline RMatrix random_degree_matrix(const SystematicRing& r, const std::vector<GroupElement>& tgt,
                                    const std::vector<GroupElement>& src, Rng& rng) {
  RMatrix m = zero_matrix(r, tgt.size(), src.size());
  for (std::size_t i = 0; i < tgt.size(); ++i)
    for (std::size_t j = 0; j < src.size(); ++j)
      m(i, j) = random_component_element(r, r.grading().left_quotient(tgt[i], src[j]), rng);
  return m;
}

/// W E D E^{-1} W^{-1} with D diagonal 0/1, E a product of elementary
/// matrices between equal degrees and W lower unitriangular with
/// degree-valid entries. Idempotent and lower triangular by construction.
inline IdemObject random_lt_idempotent(const RingPtr& ring, const LTShape& shape, Rng& rng,
                                       bool block_diagonal_only = false) {
  const SystematicRing& r = *ring;
  const std::size_t n = shape.degrees.size();
  const auto off = block_offsets(shape.sizes);
  auto block_of = [&](std::size_t i) {
    std::size_t k = 0;
    while (off[k + 1] <= i) ++k;
    return k;
  };
  const GroupElement e = r.grading().identity();
  RMatrix d = zero_matrix(r, n, n);
  for (std::size_t i = 0; i < n; ++i)
    if (uniform_int(rng, 0, 1)) d(i, i) = r.one();

  RMatrix e_fwd = identity_matrix(r, n), e_inv = identity_matrix(r, n);
  for (std::size_t step = 0; step < 2 * n; ++step) {
    const auto i = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(n) - 1));
    const auto j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(n) - 1));
    if (i == j || shape.degrees[i] != shape.degrees[j]) continue;
    RingElem c = random_component_element(r, e, rng);
    RMatrix el = identity_matrix(r, n), el_inv = identity_matrix(r, n);
    el(i, j) = c;
    el_inv(i, j) = -c;
    e_fwd = e_fwd * el;
    e_inv = el_inv * e_inv;
  }

  RMatrix nil = zero_matrix(r, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (block_diagonal_only && block_of(i) != block_of(j)) continue;
      nil(i, j) = random_component_element(r, r.grading().left_quotient(shape.degrees[i], shape.degrees[j]), rng);
    }
  RMatrix w = identity_matrix(r, n) + nil;
  RMatrix w_inv = identity_matrix(r, n);
  RMatrix term = identity_matrix(r, n);
  RMatrix neg_nil = zero_matrix(r, n, n) - nil;
  for (std::size_t k = 1; k < n; ++k) {
    term = term * neg_nil;
    w_inv = w_inv + term;
  }
  RMatrix p = w * e_fwd * d * e_inv * w_inv;
  FreeSysModule carrier(ring, shape.degrees);
  IdemObject x(carrier, p);
  require_lower_triangular(x.p(), shape.sizes, shape.sizes);
  return x;
}

/// f = q g p for a random degree-valid lower triangular g.
inline IdemMorphism random_idem_morphism(const IdemObject& a, const BlockSizes& sa, const IdemObject& b,
                                         const BlockSizes& sb, Rng& rng, bool block_diagonal_only = false) {
  const SystematicRing& r = *a.ring();
  RMatrix g = random_degree_matrix(r, b.carrier().degrees, a.carrier().degrees, rng);
  auto ob = block_offsets(sb);
  auto oa = block_offsets(sa);
  for (std::size_t bi = 0; bi < sb.size(); ++bi)
    for (std::size_t bj = 0; bj < sa.size(); ++bj) {
      if (bi > bj && !block_diagonal_only) continue;
      if (bi == bj) continue;
      for (std::size_t i = 0; i < sb[bi]; ++i)
        for (std::size_t j = 0; j < sa[bj]; ++j) g(ob[bi] + i, oa[bj] + j) = r.zero();
    }
  return IdemMorphism(a, b, b.p() * g * a.p());
}

/// Both squares of the ladder between the sequences for A and B commute.
inline bool naturality_check_ses(const IdemMorphism& f, std::size_t n1_src, std::size_t n1_tgt) {
  const std::size_t n2_src = f.source().size() - n1_src;
  const std::size_t n2_tgt = f.target().size() - n1_tgt;
  require_lower_triangular(f.matrix(), {n1_tgt, n2_tgt}, {n1_src, n2_src});
  auto a = split_lower_triangular(f.source().p(), n1_src);
  auto b = split_lower_triangular(f.target().p(), n1_tgt);
  RMatrix f11 = f.matrix().block(0, 0, n1_tgt, n1_src);
  RMatrix f22 = f.matrix().block(n1_tgt, n1_src, n2_tgt, n2_src);
  bool sigma_square = f.matrix() * a.sigma == b.sigma * f22;
  bool pi_square = b.pi * f.matrix() == f11 * a.pi;
  return sigma_square && pi_square;
}

struct RhoWitness {
  bool found = false;
  std::size_t attempts = 0;
  std::string status;
  std::optional<IdemMorphism> f;
  RMatrix rho_then_f;  // rho_B f
  RMatrix f_then_rho;  // f22 rho_A
};

/// Searches for f : A -> B with rho_B f != f22 rho_A.
inline RhoWitness rho_not_natural_witness(const RingPtr& ring, const LTShape& shape, std::size_t budget,
                                          std::uint64_t seed, bool block_diagonal_only = false) {
  if (shape.sizes.size() != 2) throw SpecMismatch("rho is defined for two blocks");
  Rng rng(seed);
  RhoWitness w;
  const std::size_t n1 = shape.sizes[0];
  for (w.attempts = 1; w.attempts <= budget; ++w.attempts) {
    IdemObject a = random_lt_idempotent(ring, shape, rng, block_diagonal_only);
    IdemObject b = random_lt_idempotent(ring, shape, rng, block_diagonal_only);
    IdemMorphism f = random_idem_morphism(a, shape.sizes, b, shape.sizes, rng, block_diagonal_only);
    auto sa = split_lower_triangular(a.p(), n1);
    auto sb = split_lower_triangular(b.p(), n1);
    RMatrix f22 = f.matrix().block(n1, n1, shape.sizes[1], shape.sizes[1]);
    RMatrix lhs = sb.rho * f.matrix();
    RMatrix rhs = f22 * sa.rho;
    if (!(lhs == rhs)) {
      w.found = true;
      w.status = "found";
      w.f = f;
      w.rho_then_f = lhs;
      w.f_then_rho = rhs;
      return w;
    }
  }
  w.attempts = budget;
  w.status = "SearchExhausted";
  return w;
}

// ------------------------------------------------- functors and transformations

struct AdditiveFunctor {
  std::string name;
  std::function<FreeSysModule(const FreeSysModule&)> on_object;
  std::function<RMatrix(const SysMorphism&)> on_morphism;

  SysMorphism apply(const SysMorphism& f) const {
    return SysMorphism(on_object(f.source()), on_object(f.target()), on_morphism(f));
  }
  /// (Phi(A), Phi(p))
  IdemObject apply(const IdemObject& x) const { return IdemObject(apply(x.idempotent())); }
  IdemMorphism apply(const IdemMorphism& f) const {
    return IdemMorphism(apply(f.source()), apply(f.target()), apply(f.morphism()).matrix());
  }

  static AdditiveFunctor identity() {
    return {"identity", [](const FreeSysModule& m) { return m; },
            [](const SysMorphism& f) { return f.matrix(); }};
  }

  static AdditiveFunctor shift(const GroupElement& a) {
    return {"shift" + a.to_string(), [a](const FreeSysModule& m) { return shift_module(a, m); },
            [](const SysMorphism& f) { return f.matrix(); }};
  }

  /// Generators in reverse order.
  static AdditiveFunctor reverse() {
    auto rev = [](std::size_t n) {
      std::vector<std::size_t> p(n);
      for (std::size_t i = 0; i < n; ++i) p[i] = n - 1 - i;
      return p;
    };
    return {"reverse",
            [](const FreeSysModule& m) {
              auto d = m.degrees;
              std::reverse(d.begin(), d.end());
              return FreeSysModule(m.ring, d);
            },
            [rev](const SysMorphism& f) {
              const RMatrix& m = f.matrix();
              auto pr = rev(m.rows());
              auto pc = rev(m.cols());
              RMatrix out(m.rows(), m.cols(), m.zero());
              for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(pr[i], pc[j]);
              return out;
            }};
  }

  /// T_k relative to a slot partition.
  static AdditiveFunctor block(const SlotPartition& slots, std::size_t k) {
    return {"T" + std::to_string(k + 1),
            [slots, k](const FreeSysModule& m) {
              auto sizes = slots.block_sizes(m);
              auto off = block_offsets(sizes);
              return m.sub(off[k], sizes[k]);
            },
            [slots, k](const SysMorphism& f) {
              return lt_block_morphism(f.matrix(), slots.block_sizes(f.target()), slots.block_sizes(f.source()), k);
            }};
  }
};

/// Phi(f + g) = Phi(f) + Phi(g) on the sampled pairs.
inline void check_additive(const AdditiveFunctor& phi,
                           const std::vector<std::pair<SysMorphism, SysMorphism>>& samples) {
  for (const auto& [f, g] : samples)
    if (!(phi.apply(f + g) == phi.apply(f) + phi.apply(g)))
      throw NonAdditiveFunctor(phi.name + " is not additive on a sampled pair");
}

struct NaturalTransformation {
  std::string name;
  AdditiveFunctor from;
  AdditiveFunctor to;
  std::function<SysMorphism(const FreeSysModule&)> component;
  std::function<SysMorphism(const FreeSysModule&)> inverse_component;

  /// Psi(p) tau_A : Phi^(A,p) -> Psi^(A,p)
  IdemMorphism hat(const IdemObject& x) const {
    SysMorphism t = component(x.carrier());
    SysMorphism psi_p = to.apply(x.idempotent());
    return IdemMorphism(from.apply(x), to.apply(x), (psi_p * t).matrix());
  }

  /// (tau^{-1})^ = Phi(p) tau^{-1}_A
  IdemMorphism hat_inverse(const IdemObject& x) const {
    if (!inverse_component) throw SpecMismatch(name + " has no inverse");
    SysMorphism t = inverse_component(x.carrier());
    SysMorphism phi_p = from.apply(x.idempotent());
    return IdemMorphism(to.apply(x), from.apply(x), (phi_p * t).matrix());
  }

  static NaturalTransformation identity() {
    return {"identity", AdditiveFunctor::identity(), AdditiveFunctor::identity(),
            [](const FreeSysModule& m) { return SysMorphism::identity(m); },
            [](const FreeSysModule& m) { return SysMorphism::identity(m); }};
  }

  /// reverse -> identity, given by the reversing permutation.
  static NaturalTransformation unreverse() {
    auto perm = [](const FreeSysModule& from, const FreeSysModule& to) {
      const std::size_t n = to.rank();
      RMatrix m = zero_matrix(*to.ring, n, n);
      for (std::size_t i = 0; i < n; ++i) m(i, n - 1 - i) = to.ring->one();
      return SysMorphism(from, to, m);
    };
    auto rev = AdditiveFunctor::reverse();
    return {"unreverse", rev, AdditiveFunctor::identity(),
            [perm, rev](const FreeSysModule& m) { return perm(rev.on_object(m), m); },
            [perm, rev](const FreeSysModule& m) { return perm(m, rev.on_object(m)); }};
  }
};

/// Psi^(f) tau^_X = tau^_Y Phi^(f).
inline bool naturality_square(const NaturalTransformation& t, const IdemMorphism& f) {
  return t.to.apply(f) * t.hat(f.source()) == t.hat(f.target()) * t.from.apply(f);
}

// ------------------------------------------------------------ K_1 and K

/// K_1 as a base ring when R_1 = B * 1; otherwise no slot rule applies.
inline Coefficients slot_coefficients(const SystematicRing& r) {
  auto g = r.gens(r.grading().identity());
  if (g.size() != 1 || !(g.front() == r.one()))
    throw UnclassifiableSlot("degree-one component of " + r.name() + " is not B*1");
  return r.span_base();
}

/// Scalars of the whole ring, for presentations with entries in K_1.
inline Coefficients scalar_domain(const SystematicRing& r) {
  if (auto pl = dynamic_cast<const PowerLocalization*>(&r)) return Coefficients::localized(pl->inverted());
  return r.span_base();
}

struct CokernelSummary {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    if (free_rank) s = "Z^" + std::to_string(free_rank);
    for (const auto& t : torsion) s += (s.empty() ? "" : " + ") + ("Z/" + t.str());
    return s;
  }
};

/// coker(P : D^n -> D^m), P an m x n matrix over the scalar domain D.
inline CokernelSummary cokernel(const Coefficients& domain, const lattice::RatMatrix& p, std::size_t m) {
  CokernelSummary out;
  const std::size_t n = p.empty() ? 0 : p.front().size();
  for (const auto& row : p)
    for (const auto& x : row)
      if (!domain.contains(x)) throw InvalidElement(to_string(x) + " is not in " + domain.name());
  if (domain.kind() == Coefficients::Kind::Rationals) {
    out.free_rank = m - lattice::rank_rational(p, n);
    return out;
  }
  if (domain.kind() == Coefficients::Kind::Modular) {
    if (!Coefficients::is_prime(domain.parameter())) throw ConfigError("cokernels over " + domain.name());
    lattice::IntMatrix a;
    for (const auto& row : p) {
      lattice::IntVector v;
      for (const auto& x : row) v.push_back(numerator_of(x));
      a.push_back(v);
    }
    out.free_rank = m - lattice::rank_mod_prime(a, n, domain.parameter());
    return out;
  }
  // Z or Z[1/s]: clear denominators column by column (units in Z[1/s]).
  lattice::IntMatrix a(m, lattice::IntVector(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    Int den = 1;
    for (std::size_t i = 0; i < m; ++i) den = lcm_int(den, denominator_of(p[i][j]));
    for (std::size_t i = 0; i < m; ++i) a[i][j] = numerator_of(p[i][j] * den);
  }
  auto inv = lattice::smith_invariants(a, n);
  out.free_rank = m - inv.size();
  for (Int d : inv) {
    if (domain.kind() == Coefficients::Kind::Localized) {
      const Int s = domain.parameter();
      for (Int g = gcd_int(d, s); g > 1; g = gcd_int(d, s)) d /= g;
    }
    if (d != 1) out.torsion.push_back(d);
  }
  return out;
}

/// A module over K_1 given by generators and relations.
struct PresentedModule {
  RingPtr ring;
  Coefficients domain;
  std::size_t generators = 0;
  lattice::RatMatrix relations;  // generators x relation count

  CokernelSummary summary() const { return cokernel(domain, relations, generators); }
};

inline PresentedModule presented_over_k1(const RingPtr& k, std::size_t generators, lattice::RatMatrix rel) {
  Coefficients c = slot_coefficients(*k);
  for (const auto& row : rel)
    for (const auto& x : row)
      if (!k->member(RingElem::scalar(k->algebra(), x), k->grading().identity()))
        throw InvalidElement(to_string(x) + " is not in K_1");
  return PresentedModule{k, c, generators, std::move(rel)};
}

/// L (x)_{K_1} K: the same presentation read over K.
inline PresentedModule tensor_extend(const PresentedModule& l) {
  return PresentedModule{l.ring, scalar_domain(*l.ring), l.generators, l.relations};
}

/// Element of K_{a^{-1}} (x)_{K_1} K as a list of primitive tensors.
struct Tensor {
  std::vector<std::pair<RingElem, RingElem>> terms;
};

/// nu(s (x) r) = s r and tau(x) = sum_j alpha_j (x) beta_j x for <a>K, built
/// from 1 = sum_j alpha_j beta_j with alpha_j in K_{a^{-1}}, beta_j in K_a.
class NuTau {
 public:
  NuTau(RingPtr k, GroupElement a, const Window& w = {})
      : k_(std::move(k)), a_(std::move(a)), basis_(dual_basis(*k_, k_->grading().invert(a_), w)) {}

  const DualBasis& basis() const { return basis_; }
  const GroupElement& shift() const { return a_; }

  RingElem nu(const Tensor& t) const {
    RingElem out = k_->zero();
    for (const auto& [s, r] : t.terms) {
      if (!k_->member(s, k_->grading().invert(a_))) throw InvalidElement("left factor outside K_{a^-1}");
      out += s * r;
    }
    return out;
  }

  Tensor tau(const RingElem& x) const {
    Tensor t;
    for (const auto& [alpha, beta] : basis_.pairs) t.terms.emplace_back(alpha, beta * x);
    return t;
  }

  /// Injective coordinates: s (x) r -> (beta_j s r)_j.
  std::vector<RingElem> coordinates(const Tensor& t) const {
    std::vector<RingElem> out(basis_.pairs.size(), k_->zero());
    for (const auto& [s, r] : t.terms)
      for (std::size_t j = 0; j < basis_.pairs.size(); ++j) out[j] += basis_.pairs[j].second * s * r;
    return out;
  }

  bool equal(const Tensor& x, const Tensor& y) const { return coordinates(x) == coordinates(y); }

 private:
  RingPtr k_;
  GroupElement a_;
  DualBasis basis_;
};

/// span(M_g gens(K_h)) = span(M_{gh}) for a free module M.
inline bool module_components_multiply_onto(const FreeSysModule& m, const GroupElement& g,
                                            const GroupElement& h, const Window& w = {}) {
  const SystematicRing& r = *m.ring;
  const Group& G = r.grading();
  const GroupElement gh = G.compose(g, h);
  auto kh = r.gens(h, w);
  for (std::size_t i = 0; i < m.rank(); ++i) {
    // coordinate i of M_g is K_{g_i^{-1} g}
    auto mg = r.gens(G.left_quotient(m.degrees[i], g), w);
    auto prods = products(mg, kh);
    const GroupElement target = G.left_quotient(m.degrees[i], gh);
    for (const auto& x : prods)
      if (!r.member(x, target)) return false;
    for (const auto& z : r.gens(target, w))
      if (!in_span(r, prods, z)) return false;
  }
  return true;
}

}  // namespace sysk
