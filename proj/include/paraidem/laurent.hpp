#pragma once

// Multivariate Laurent polynomials over an exact scalar ring.
//
// A polynomial stores its variable names (VarSet) and a sparse map from
// exponent vectors to nonzero coefficients. Binary operations unify the two
// VarSets by name: the left operand's order is kept and unseen names from the
// right operand are appended.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paraidem/scalar.hpp"

namespace paraidem {

class VarSet {
 public:
  VarSet();
  explicit VarSet(std::vector<std::string> names);

  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return *names_; }
  [[nodiscard]] std::size_t size() const noexcept { return names_->size(); }
  [[nodiscard]] bool empty() const noexcept { return names_->empty(); }
  [[nodiscard]] std::optional<std::size_t> index_of(const std::string& name) const;
  [[nodiscard]] bool contains(const std::string& name) const { return index_of(name).has_value(); }

  /// Names of *this followed by names of other not already present.
  [[nodiscard]] VarSet unite(const VarSet& other) const;

  friend bool operator==(const VarSet& a, const VarSet& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

using Exponents = std::vector<int>;

class LaurentPoly {
 public:
  using TermMap = std::map<Exponents, Scalar>;

  /// Rational zero with no variables.
  LaurentPoly() = default;
  LaurentPoly(Ring ring, VarSet vars) : ring_(std::move(ring)), vars_(std::move(vars)) {}

  static LaurentPoly zero(const Ring& ring, const VarSet& vars = {}) { return {ring, vars}; }
  static LaurentPoly constant(const Scalar& c, const VarSet& vars = {});
  static LaurentPoly monomial(const Scalar& c, const VarSet& vars, Exponents exps);
  /// The single variable `name` (a VarSet of just that name).
  static LaurentPoly variable(const Ring& ring, const std::string& name);

  [[nodiscard]] const Ring& ring() const noexcept { return ring_; }
  [[nodiscard]] const VarSet& vars() const noexcept { return vars_; }
  [[nodiscard]] const TermMap& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] bool is_one() const;
  /// True when the only term (if any) has all-zero exponents.
  [[nodiscard]] bool is_constant() const;
  /// Constant coefficient (zero when absent).
  [[nodiscard]] Scalar constant_term() const;
  [[nodiscard]] Scalar coefficient(const Exponents& exps) const;

  /// Re-expresses the polynomial over a superset of its variables.
  [[nodiscard]] LaurentPoly lift(const VarSet& target) const;
  /// Drops variables that occur in no term.
  [[nodiscard]] LaurentPoly compact() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  LaurentPoly& operator*=(const Scalar& c);
  /// *this += a * b without the intermediate product; all three must share vars.
  LaurentPoly& add_product(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Scalar& c) { return a *= c; }
  friend LaurentPoly operator*(const Scalar& c, LaurentPoly a) { return a *= c; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

  /// Multiplies by the monomial x^shift (shift aligned with vars()).
  [[nodiscard]] LaurentPoly shifted(const Exponents& shift) const;
  /// Componentwise minimum exponent over all terms (zeros when empty).
  [[nodiscard]] Exponents min_exponents() const;
  /// Componentwise maximum exponent over all terms (zeros when empty).
  [[nodiscard]] Exponents max_exponents() const;
  [[nodiscard]] bool has_negative_exponent() const;

  /// Exact quotient f / g for polynomials with non-negative exponents;
  /// throws InternalError if g does not divide f.
  [[nodiscard]] LaurentPoly exact_div(const LaurentPoly& g) const;

  [[nodiscard]] std::string to_string() const;
  static LaurentPoly parse(const Ring& ring, const std::string& text, const VarSet& vars = {});

 private:
  void add_term(const Exponents& e, const Scalar& c);

  Ring ring_;
  VarSet vars_;
  TermMap terms_;
};

/// Conjugates every coefficient and negates every exponent.
LaurentPoly star(const LaurentPoly& f);

/// Value assigned to a variable during substitution.
struct Assignment {
  std::map<std::string, LaurentPoly> values;

  Assignment& set(const std::string& var, const Scalar& value);
  Assignment& set(const std::string& var, const LaurentPoly& value);
};

/// Replaces assigned variables; each assigned value must be a unit monomial
/// or a nonzero scalar. Throws ZeroAssigned for zero scalars.
LaurentPoly substitute(const LaurentPoly& f, const Assignment& assignment);

struct UnitMonomial {
  Scalar coefficient;
  Exponents exponents;
};

/// The single term of f when f is one unit-modulus monomial.
std::optional<UnitMonomial> is_unit_monomial(const LaurentPoly& f);

}  // namespace paraidem
