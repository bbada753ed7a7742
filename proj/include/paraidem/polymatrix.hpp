#pragma once

// Matrices of Laurent polynomials. All entries share one ring and one VarSet;
// a matrix whose VarSet is empty (or whose entries are all constants) is a
// scalar matrix.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "paraidem/laurent.hpp"

namespace paraidem {

class PolyMatrix {
 public:
  PolyMatrix() = default;
  /// Zero matrix.
  PolyMatrix(Ring ring, std::size_t rows, std::size_t cols, VarSet vars = {});

  static PolyMatrix identity(const Ring& ring, std::size_t n);
  static PolyMatrix from_scalars(const Ring& ring, const std::vector<std::vector<Scalar>>& rows);
  static PolyMatrix from_polys(const Ring& ring, const std::vector<std::vector<LaurentPoly>>& rows);
  static PolyMatrix parse(const Ring& ring, const std::vector<std::vector<std::string>>& rows);
  /// Blocks of uniform size laid out as a grid.
  static PolyMatrix from_blocks(const std::vector<std::vector<PolyMatrix>>& blocks);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
  [[nodiscard]] const Ring& ring() const noexcept { return ring_; }
  [[nodiscard]] const VarSet& vars() const noexcept { return vars_; }
  [[nodiscard]] const LaurentPoly& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const LaurentPoly& value);
  /// True when every entry is a constant.
  [[nodiscard]] bool is_scalar() const;
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_identity() const;
  /// Constant term of entry (i,j); throws NotScalar if the entry is not constant.
  [[nodiscard]] Scalar scalar_at(std::size_t i, std::size_t j) const;

  [[nodiscard]] PolyMatrix lift(const VarSet& target) const;
  /// Drops variables that occur in no entry.
  [[nodiscard]] PolyMatrix compact() const;
  [[nodiscard]] PolyMatrix transpose() const;
  [[nodiscard]] PolyMatrix block(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const;
  /// Row i of the result is row perm[i] of *this.
  [[nodiscard]] PolyMatrix permute_rows(const std::vector<std::size_t>& perm) const;
  [[nodiscard]] PolyMatrix permute_cols(const std::vector<std::size_t>& perm) const;

  PolyMatrix operator-() const;
  PolyMatrix& operator+=(const PolyMatrix& other);
  PolyMatrix& operator-=(const PolyMatrix& other);
  PolyMatrix& operator*=(const LaurentPoly& f);
  PolyMatrix& operator*=(const Scalar& c);
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(PolyMatrix a, const LaurentPoly& f) { return a *= f; }
  friend PolyMatrix operator*(const LaurentPoly& f, PolyMatrix a) { return a *= f; }
  friend PolyMatrix operator*(PolyMatrix a, const Scalar& c) { return a *= c; }
  friend PolyMatrix operator*(const Scalar& c, PolyMatrix a) { return a *= c; }
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

  /// Entry strings, row-major.
  [[nodiscard]] std::vector<std::vector<std::string>> entry_strings() const;
  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] nlohmann::json to_json() const;
  static PolyMatrix from_json(const nlohmann::json& j);

 private:
  void unify_vars(const VarSet& other);

  Ring ring_;
  VarSet vars_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<LaurentPoly> entries_;
};

PolyMatrix adjoint(const PolyMatrix& m);
PolyMatrix tensor(const PolyMatrix& a, const PolyMatrix& b);
/// Sum of K_i * L_i^* over two rows of equally sized blocks.
PolyMatrix block_inner_product(const std::vector<PolyMatrix>& k, const std::vector<PolyMatrix>& l);
PolyMatrix substitute(const PolyMatrix& m, const Assignment& assignment);
PolyMatrix map_entries(const PolyMatrix& m, const Ring& target);

struct VerificationReport {
  bool ok = true;
  /// The product under test (M * M^* for paraunitarity checks).
  std::optional<PolyMatrix> product;
  /// product minus its expected value.
  std::optional<PolyMatrix> residual;
  std::vector<std::pair<std::size_t, std::size_t>> offending;
  std::vector<std::string> failures;

  void fail(std::string why) {
    ok = false;
    failures.push_back(std::move(why));
  }
  [[nodiscard]] nlohmann::json to_json() const;
};

VerificationReport is_paraunitary(const PolyMatrix& m);

/// p when product == p * I for a unit monomial p.
std::optional<LaurentPoly> scalar_monomial_multiple(const PolyMatrix& product);
/// p when m * adjoint(m) == p * I for a unit monomial p (p = 1 allowed).
std::optional<LaurentPoly> is_pseudo_paraunitary(const PolyMatrix& m);
/// For q = clearing * W: the monomial p with q * (clearing * adjoint(W)) == p * I.
/// The second factor is adjoint(W) with its negative exponents cleared by the
/// same monomial, which turns the pair into polynomial matrices.
std::optional<LaurentPoly> is_pseudo_paraunitary(const PolyMatrix& q, const LaurentPoly& clearing);

LaurentPoly determinant(const PolyMatrix& m);
std::size_t rank(const PolyMatrix& m);
Scalar trace(const PolyMatrix& m);

/// Ordered complete family of symmetric orthogonal idempotents.
struct IdempotentSet {
  Ring ring;
  std::size_t n = 0;
  std::vector<PolyMatrix> members;
  std::vector<std::string> labels;

  [[nodiscard]] std::size_t size() const noexcept { return members.size(); }
  [[nodiscard]] nlohmann::json to_json() const;
  static IdempotentSet from_json(const nlohmann::json& j);
};

/// Sum of coeffs[i]^-1 * E_i; throws ZeroCoefficient if some coefficient is zero.
PolyMatrix idempotent_inverse(const std::vector<Scalar>& coeffs, const IdempotentSet& set);
/// Sum of coeffs[i] * E_i.
PolyMatrix linear_combination(const std::vector<LaurentPoly>& coeffs, const IdempotentSet& set);

}  // namespace paraidem
