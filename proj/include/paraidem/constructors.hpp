#pragma once

// Paraunitary and pseudo-paraunitary constructions. Every constructor checks
// its own output and throws InternalError if the check fails.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paraidem/group.hpp"
#include "paraidem/idempotents.hpp"

namespace paraidem {

/// W = sum w_i E_i; each weight is a unit monomial with non-negative exponents.
/// Throws NotUnitModulus, NegativeExponent, SizeMismatch.
PolyMatrix monomial_sum(const IdempotentSet& set, const std::vector<LaurentPoly>& weights);

/// H(z) = I - v v^* + z v v^* for a unit column v. Throws NotUnitVector.
PolyMatrix belevitch_block(const PolyMatrix& v, const std::string& var);

/// U = sum alpha_i adjoint(v_i) v_i over orthonormal rows v_i.
/// Throws NotOrthonormal, NotUnitModulus.
PolyMatrix spectral_unitary(const PolyMatrix& rows, const std::vector<Scalar>& units);

struct ArrangementPlan {
  /// k x k grid of member indices.
  std::vector<std::vector<std::size_t>> grid;
  /// k x k grid of unit monomials multiplying each block.
  std::vector<std::vector<LaurentPoly>> cells;

  /// grid[r][c] = index of g_r^-1 g_c; cyclic gives (c - r) mod k, C_2^k gives r xor c.
  static std::vector<std::vector<std::size_t>> group_grid(const GroupTable& table);
  static std::vector<std::vector<std::size_t>> circulant_grid(std::size_t k);
  /// Cells holding the monomial assigned to the member in that position.
  static std::vector<std::vector<LaurentPoly>> cells_by_member(const std::vector<std::vector<std::size_t>>& grid,
                                                               const std::vector<LaurentPoly>& per_member);
};

/// Block matrix with block (r,c) = cells[r][c] * E_grid[r][c].
/// Throws NotLatinSquare, NotUnitModulus, SizeMismatch.
PolyMatrix block_arrangement(const IdempotentSet& set, const ArrangementPlan& plan);

struct TangleVariant {
  enum class Base { rows, columns };           // (A B; A -B) or (A A; B -B)
  enum class Swap { none, block_rows, block_columns };
  Base base = Base::rows;
  Swap swap = Swap::none;
  bool transpose = false;
  bool reverse = false;  // tangle of {B, A}

  [[nodiscard]] std::string to_string() const;
  static TangleVariant parse(const std::string& text);
  /// All 24 combinations.
  static std::vector<TangleVariant> all();
};

/// (1/sqrt 2) times the selected block form. Throws SizeMismatch, NoSquareRoot.
PolyMatrix tangle(const PolyMatrix& a, const PolyMatrix& b, const TangleVariant& variant = {});

/// W = sum w_i adjoint(v_i) v_i over the rows v_i of P (P P^* = I).
/// Throws NotParaunitary, NotUnitModulus, VariableCollision.
PolyMatrix pseudo_from_rows(const PolyMatrix& p, const std::vector<LaurentPoly>& weights);

struct ClearedForm {
  PolyMatrix q;         // m * W, free of negative exponents
  LaurentPoly m;        // minimal monomial clearing W
  LaurentPoly p;        // Q Q^* = p I
  LaurentPoly cleared;  // Q * (m * adjoint(W)) = cleared * I
};
/// Throws NotPseudoParaunitary.
ClearedForm monomial_clear(const PolyMatrix& w);
/// Smallest monomial m with m * M free of negative exponents.
LaurentPoly clearing_monomial(const PolyMatrix& m);

struct HadamardReport {
  PolyMatrix h;             // the specialized matrix
  bool unitary = false;     // H H^* = I
  Scalar scale;             // H' = scale * H
  PolyMatrix h_int;         // H'
  bool unit_entries = false;
  bool hadamard = false;    // unit entries and H' H'^* = n I
  std::optional<std::int64_t> butson_q;

  [[nodiscard]] nlohmann::json to_json() const;
};
/// Throws NotFullyAssigned, NotUnitModulus.
HadamardReport specialize_hadamard(const PolyMatrix& w, const Assignment& assignment);

enum class ComposeMode { product, tensor };
/// Throws DimensionMismatch; with check, throws NotParaunitary if the result is not.
PolyMatrix compose(const std::vector<PolyMatrix>& parts, ComposeMode mode, bool check = false);

}  // namespace paraidem
