#pragma once

// Base rings B for monoid algebras and the span/rank routines that run
// over them. Values are stored as exact rationals and normalised per ring.

#include "sysk/errors.hpp"
#include "sysk/lattice.hpp"
#include "sysk/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sysk {

class Coefficients {
 public:
  enum class Kind { Integers, Rationals, Modular, Localized };

  static Coefficients integers() { return Coefficients(Kind::Integers, 0); }
  static Coefficients rationals() { return Coefficients(Kind::Rationals, 0); }
  static Coefficients modular(std::int64_t n) {
    if (n < 2) throw ConfigError("modulus must be at least 2");
    return Coefficients(Kind::Modular, n);
  }
  /// Z[1/s]
  static Coefficients localized(std::int64_t s) {
    if (s < 2) throw ConfigError("inverted integer must be at least 2");
    return Coefficients(Kind::Localized, s);
  }

  /// "Z", "Q", "F2", "Z/4", "Z[1/2]", ...
  static Coefficients parse(const std::string& name) {
    if (name == "Z") return integers();
    if (name == "Q") return rationals();
    if (name.size() > 1 && name[0] == 'F') return modular(parse_int(name.substr(1), name));
    if (name.rfind("Z/", 0) == 0) return modular(parse_int(name.substr(2), name));
    if (name.rfind("Z[1/", 0) == 0 && name.back() == ']')
      return localized(parse_int(name.substr(4, name.size() - 5), name));
    throw ConfigError("unknown base ring '" + name + "'");
  }

  Kind kind() const { return kind_; }
  std::int64_t parameter() const { return param_; }

  std::string name() const {
    switch (kind_) {
      case Kind::Integers: return "Z";
      case Kind::Rationals: return "Q";
      case Kind::Modular:
        return is_prime(param_) ? "F" + std::to_string(param_) : "Z/" + std::to_string(param_);
      case Kind::Localized: return "Z[1/" + std::to_string(param_) + "]";
    }
    return "?";
  }

  bool operator==(const Coefficients& o) const { return kind_ == o.kind_ && param_ == o.param_; }

  bool is_finite() const { return kind_ == Kind::Modular; }

  bool contains(const Rational& x) const {
    switch (kind_) {
      case Kind::Integers:
      case Kind::Modular: return is_integral(x);
      case Kind::Rationals: return true;
      case Kind::Localized: {
        Int d = denominator_of(x);
        const Int s = param_;
        for (Int g = gcd_int(d, s); g > 1; g = gcd_int(d, s)) d /= g;
        return d == 1;
      }
    }
    return false;
  }

  Rational normalize(const Rational& x) const {
    if (!contains(x)) throw InvalidElement(to_string(x) + " is not an element of " + name());
    if (kind_ == Kind::Modular) return Rational(mod_floor(numerator_of(x), Int(param_)));
    return x;
  }

  /// All elements of a finite base ring.
  std::vector<Rational> elements() const {
    if (!is_finite()) throw BudgetExceeded(name() + " is infinite");
    std::vector<Rational> out;
    for (std::int64_t i = 0; i < param_; ++i) out.emplace_back(i);
    return out;
  }

  std::size_t cardinality() const {
    if (!is_finite()) throw BudgetExceeded(name() + " is infinite");
    return static_cast<std::size_t>(param_);
  }

  Rational random(Rng& rng, std::int64_t radius = 3) const {
    switch (kind_) {
      case Kind::Modular: return Rational(uniform_int(rng, 0, param_ - 1));
      case Kind::Integers: return Rational(uniform_int(rng, -radius, radius));
      case Kind::Rationals:
        return Rational(uniform_int(rng, -radius, radius)) / Rational(uniform_int(rng, 1, radius));
      case Kind::Localized: {
        Rational d = 1;
        for (std::int64_t k = uniform_int(rng, 0, 2); k > 0; --k) d *= param_;
        return Rational(uniform_int(rng, -radius, radius)) / d;
      }
    }
    return 0;
  }

  static bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  /// p with n = p^k, if n is a prime power.
  static std::optional<std::int64_t> prime_power_base(std::int64_t n) {
    for (std::int64_t p = 2; p <= n; ++p) {
      if (n % p != 0) continue;
      while (n % p == 0) n /= p;
      if (n == 1) return p;
      return std::nullopt;
    }
    return std::nullopt;
  }

 private:
  Coefficients(Kind k, std::int64_t p) : kind_(k), param_(p) {}

  static std::int64_t parse_int(const std::string& s, const std::string& whole) {
    try {
      std::size_t pos = 0;
      auto v = std::stoll(s, &pos);
      if (pos != s.size()) throw ConfigError("bad base ring '" + whole + "'");
      return v;
    } catch (const std::logic_error&) {
      throw ConfigError("bad base ring '" + whole + "'");
    }
  }

  Kind kind_;
  std::int64_t param_;
};

/// Coefficients c in B with sum_i c_i rows[i] == target, for rows and
/// target given as rational coordinate vectors of B-module elements.
inline std::optional<lattice::RatVector> solve_span(const Coefficients& b,
                                                    const lattice::RatMatrix& rows,
                                                    const lattice::RatVector& target) {
  using namespace lattice;
  const std::size_t n = target.size();
  switch (b.kind()) {
    case Coefficients::Kind::Rationals: return solve_rows_rational(rows, target);
    case Coefficients::Kind::Integers: {
      Int den = 1;
      for (const auto& r : rows)
        for (const auto& x : r) den = lcm_int(den, denominator_of(x));
      for (const auto& x : target) den = lcm_int(den, denominator_of(x));
      IntMatrix a;
      for (const auto& r : rows) {
        IntVector v;
        for (const auto& x : r) v.push_back(numerator_of(x * den));
        a.push_back(std::move(v));
      }
      IntVector t;
      for (const auto& x : target) t.push_back(numerator_of(x * den));
      auto c = solve_rows(a, t);
      if (!c) return std::nullopt;
      RatVector out;
      for (const auto& x : *c) out.emplace_back(x);
      return out;
    }
    case Coefficients::Kind::Modular: {
      const Int m = b.parameter();
      IntMatrix a;
      for (const auto& r : rows) {
        IntVector v;
        for (const auto& x : r) v.push_back(mod_floor(numerator_of(b.normalize(x)), m));
        a.push_back(std::move(v));
      }
      for (std::size_t k = 0; k < n; ++k) {
        IntVector e(n, 0);
        e[k] = m;
        a.push_back(std::move(e));
      }
      IntVector t;
      for (const auto& x : target) t.push_back(mod_floor(numerator_of(b.normalize(x)), m));
      auto c = solve_rows(a, t);
      if (!c) return std::nullopt;
      RatVector out;
      for (std::size_t i = 0; i < rows.size(); ++i) out.emplace_back(mod_floor((*c)[i], m));
      return out;
    }
    case Coefficients::Kind::Localized:
      throw ConfigError("span computations over " + b.name() + " are not supported");
  }
  return std::nullopt;
}

/// Class of the projective module im(C) in K_0(B) = Z, for an idempotent
/// matrix C over B.
inline Int class_rank(const Coefficients& b, const lattice::RatMatrix& c) {
  const std::size_t cols = c.empty() ? 0 : c.front().size();
  switch (b.kind()) {
    case Coefficients::Kind::Rationals:
    case Coefficients::Kind::Integers:
    case Coefficients::Kind::Localized: return Int(lattice::rank_rational(c, cols));
    case Coefficients::Kind::Modular: {
      auto p = Coefficients::prime_power_base(b.parameter());
      if (!p) throw UnclassifiableSlot("no K_0 rule registered for " + b.name());
      lattice::IntMatrix a;
      for (const auto& row : c) {
        lattice::IntVector v;
        for (const auto& x : row) v.push_back(numerator_of(b.normalize(x)));
        a.push_back(std::move(v));
      }
      return Int(lattice::rank_mod_prime(a, cols, *p));
    }
  }
  throw UnclassifiableSlot("no K_0 rule registered for " + b.name());
}

}  // namespace sysk
