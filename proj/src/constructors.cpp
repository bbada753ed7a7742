#include "paraidem/constructors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace paraidem {

namespace {

constexpr std::int64_t kButsonCap = 240;

void require_unit_monomial(const LaurentPoly& w, const std::string& what, bool non_negative) {
  const auto um = is_unit_monomial(w);
  if (!um) throw Error(ErrorCode::NotUnitModulus, what + " " + w.to_string() + " is not a unit-modulus monomial");
  if (non_negative) {
    for (int e : um->exponents) {
      if (e < 0) throw Error(ErrorCode::NegativeExponent, what + " " + w.to_string() + " has a negative exponent");
    }
  }
}

PolyMatrix assert_paraunitary(PolyMatrix m, const std::string& who) {
  if (!is_paraunitary(m).ok) throw Error(ErrorCode::InternalError, who + " produced a matrix that is not paraunitary");
  return m;
}

}  // namespace

PolyMatrix monomial_sum(const IdempotentSet& set, const std::vector<LaurentPoly>& weights) {
  if (weights.size() != set.size()) {
    throw Error(ErrorCode::SizeMismatch, std::to_string(weights.size()) + " weights for " + std::to_string(set.size()) + " members");
  }
  for (const auto& w : weights) require_unit_monomial(w, "weight", true);
  return assert_paraunitary(linear_combination(weights, set).compact(), "monomial_sum");
}

PolyMatrix belevitch_block(const PolyMatrix& v, const std::string& var) {
  if (v.cols() != 1) throw Error(ErrorCode::DimensionMismatch, "v must be a column vector");
  if (!(adjoint(v) * v).is_identity()) throw Error(ErrorCode::NotUnitVector, "v^* v != 1");
  const PolyMatrix f1 = v * adjoint(v);
  const PolyMatrix id = PolyMatrix::identity(v.ring(), v.rows());
  return assert_paraunitary((id - f1 + LaurentPoly::variable(v.ring(), var) * f1).compact(), "belevitch_block");
}

PolyMatrix spectral_unitary(const PolyMatrix& rows, const std::vector<Scalar>& units) {
  if (units.size() != rows.rows()) throw Error(ErrorCode::SizeMismatch, "one unit per row required");
  for (const auto& a : units) {
    if (!is_unit_modulus(a)) throw Error(ErrorCode::NotUnitModulus, a.to_string() + " is not of modulus 1");
  }
  const IdempotentSet s = from_orthonormal_basis(rows);
  std::vector<LaurentPoly> coeffs;
  for (const auto& a : units) coeffs.push_back(LaurentPoly::constant(a));
  return assert_paraunitary(linear_combination(coeffs, s).compact(), "spectral_unitary");
}

std::vector<std::vector<std::size_t>> ArrangementPlan::group_grid(const GroupTable& table) {
  const std::size_t k = table.order();
  std::vector<std::vector<std::size_t>> grid(k, std::vector<std::size_t>(k));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) grid[r][c] = table.mul(table.inv(r), c);
  }
  return grid;
}

std::vector<std::vector<std::size_t>> ArrangementPlan::circulant_grid(std::size_t k) { return group_grid(GroupTable::cyclic(k)); }

std::vector<std::vector<LaurentPoly>> ArrangementPlan::cells_by_member(const std::vector<std::vector<std::size_t>>& grid,
                                                                       const std::vector<LaurentPoly>& per_member) {
  std::vector<std::vector<LaurentPoly>> cells;
  for (const auto& row : grid) {
    std::vector<LaurentPoly> out;
    for (std::size_t idx : row) {
      if (idx >= per_member.size()) throw Error(ErrorCode::SizeMismatch, "no monomial for member " + std::to_string(idx + 1));
      out.push_back(per_member[idx]);
    }
    cells.push_back(std::move(out));
  }
  return cells;
}

PolyMatrix block_arrangement(const IdempotentSet& set, const ArrangementPlan& plan) {
  const std::size_t k = set.size();
  if (plan.grid.size() != k || plan.cells.size() != k) {
    throw Error(ErrorCode::SizeMismatch, "plan must be " + std::to_string(k) + " x " + std::to_string(k));
  }
  for (std::size_t r = 0; r < k; ++r) {
    if (plan.grid[r].size() != k || plan.cells[r].size() != k) throw Error(ErrorCode::SizeMismatch, "ragged plan");
  }
  for (std::size_t r = 0; r < k; ++r) {
    std::vector<int> row_seen(k, 0), col_seen(k, 0);
    for (std::size_t c = 0; c < k; ++c) {
      if (plan.grid[r][c] >= k || plan.grid[c][r] >= k) throw Error(ErrorCode::NotLatinSquare, "member index out of range");
      ++row_seen[plan.grid[r][c]];
      ++col_seen[plan.grid[c][r]];
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (row_seen[i] != 1) throw Error(ErrorCode::NotLatinSquare, "row " + std::to_string(r + 1) + " does not hold each member once");
      if (col_seen[i] != 1) throw Error(ErrorCode::NotLatinSquare, "column " + std::to_string(r + 1) + " does not hold each member once");
    }
  }
  std::vector<std::vector<PolyMatrix>> blocks(k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      require_unit_monomial(plan.cells[r][c], "cell", false);
      blocks[r].push_back(plan.cells[r][c] * set.members[plan.grid[r][c]]);
    }
  }
  return assert_paraunitary(PolyMatrix::from_blocks(blocks).compact(), "block_arrangement");
}

std::string TangleVariant::to_string() const {
  std::string out = base == Base::rows ? "rows" : "columns";
  if (swap == Swap::block_rows) out += ",swap-rows";
  if (swap == Swap::block_columns) out += ",swap-columns";
  if (transpose) out += ",transpose";
  if (reverse) out += ",reverse";
  return out;
}

TangleVariant TangleVariant::parse(const std::string& text) {
  TangleVariant v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "rows") v.base = Base::rows;
    else if (tok == "columns") v.base = Base::columns;
    else if (tok == "swap-rows") v.swap = Swap::block_rows;
    else if (tok == "swap-columns") v.swap = Swap::block_columns;
    else if (tok == "transpose") v.transpose = true;
    else if (tok == "reverse") v.reverse = true;
    else if (!tok.empty()) throw Error(ErrorCode::ParseError, "unknown tangle option '" + tok + "'");
  }
  return v;
}

std::vector<TangleVariant> TangleVariant::all() {
  std::vector<TangleVariant> out;
  for (Base b : {Base::rows, Base::columns}) {
    for (Swap s : {Swap::none, Swap::block_rows, Swap::block_columns}) {
      for (bool t : {false, true}) {
        for (bool r : {false, true}) out.push_back({b, s, t, r});
      }
    }
  }
  return out;
}

PolyMatrix tangle(const PolyMatrix& a_in, const PolyMatrix& b_in, const TangleVariant& variant) {
  if (!a_in.is_square() || !b_in.is_square() || a_in.rows() != b_in.rows()) {
    throw Error(ErrorCode::SizeMismatch, "tangle needs square matrices of the same size");
  }
  if (!(a_in.ring() == b_in.ring())) throw Error(ErrorCode::IncompatibleRings, "tangle inputs over different rings");
  const Scalar inv_root2 = sqrt2(a_in.ring()).inverse();
  const PolyMatrix& a = variant.reverse ? b_in : a_in;
  const PolyMatrix& b = variant.reverse ? a_in : b_in;
  std::vector<std::vector<PolyMatrix>> blocks;
  if (variant.base == TangleVariant::Base::rows) blocks = {{a, b}, {a, -b}};
  else blocks = {{a, a}, {b, -b}};
  if (variant.swap == TangleVariant::Swap::block_rows) std::swap(blocks[0], blocks[1]);
  if (variant.swap == TangleVariant::Swap::block_columns) {
    std::swap(blocks[0][0], blocks[0][1]);
    std::swap(blocks[1][0], blocks[1][1]);
  }
  PolyMatrix w = PolyMatrix::from_blocks(blocks) * inv_root2;
  if (variant.transpose) w = w.transpose();
  return assert_paraunitary(w.compact(), "tangle");
}

PolyMatrix pseudo_from_rows(const PolyMatrix& p, const std::vector<LaurentPoly>& weights) {
  if (!p.is_square()) throw Error(ErrorCode::NotSquare, "pseudo_from_rows needs a square matrix");
  if (weights.size() != p.rows()) throw Error(ErrorCode::SizeMismatch, "one weight per row required");
  const PolyMatrix pc = p.compact();
  for (const auto& w : weights) {
    require_unit_monomial(w, "weight", false);
    const LaurentPoly wc = w.compact();
    for (const auto& name : wc.vars().names()) {
      if (pc.vars().contains(name)) throw Error(ErrorCode::VariableCollision, "weight variable " + name + " already occurs in P");
    }
  }
  if (!is_paraunitary(p).ok) throw Error(ErrorCode::NotParaunitary, "P P^* != I");
  const IdempotentSet rows = from_matrix_rows(p);
  PolyMatrix w = linear_combination(weights, rows).compact();
  const auto mult = is_pseudo_paraunitary(w);
  if (!mult || !mult->is_one()) throw Error(ErrorCode::InternalError, "pseudo_from_rows produced W W^* != I");
  return w;
}

LaurentPoly clearing_monomial(const PolyMatrix& m) {
  const PolyMatrix c = m.compact();
  Exponents shift(c.vars().size(), 0);
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) {
      if (c.at(i, j).is_zero()) continue;
      const Exponents lo = c.at(i, j).lift(c.vars()).min_exponents();
      for (std::size_t k = 0; k < shift.size(); ++k) shift[k] = std::max(shift[k], -lo[k]);
    }
  }
  return LaurentPoly::monomial(Scalar::one(m.ring()), c.vars(), shift).compact();
}

ClearedForm monomial_clear(const PolyMatrix& w) {
  if (!w.is_square()) throw Error(ErrorCode::NotSquare, "monomial_clear needs a square matrix");
  if (!is_pseudo_paraunitary(w)) throw Error(ErrorCode::NotPseudoParaunitary, "W W^* is not a monomial multiple of I");
  ClearedForm out;
  out.m = clearing_monomial(w);
  out.q = (out.m * w).compact();
  const auto p = is_pseudo_paraunitary(out.q);
  const auto cleared = is_pseudo_paraunitary(out.q, out.m);
  if (!p || !cleared) throw Error(ErrorCode::InternalError, "cleared form lost the monomial identity");
  out.p = p->compact();
  out.cleared = cleared->compact();
  return out;
}

nlohmann::json HadamardReport::to_json() const {
  nlohmann::json j = {{"h", h.to_json()},           {"unitary", unitary},   {"scale", scale.to_json()},
                      {"h_int", h_int.to_json()},   {"unit_entries", unit_entries}, {"hadamard", hadamard}};
  j["butson_q"] = butson_q ? nlohmann::json(*butson_q) : nlohmann::json(nullptr);
  return j;
}

namespace {

// Smallest positive rational c making every power-basis coefficient of c*H integral.
Scalar rational_clearing(const PolyMatrix& h) {
  mpz_class l = 1;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = 0; j < h.cols(); ++j) {
      const Scalar x = h.scalar_at(i, j);
      for (const auto& q : x.coefficients()) l = lcm(l, mpz_class(q.get_den()));
    }
  }
  mpz_class g = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = 0; j < h.cols(); ++j) {
      const Scalar x = h.scalar_at(i, j);
      for (const auto& q : x.coefficients()) {
        mpq_class scaled = q * l;
        g = gcd(g, mpz_class(scaled.get_num()));
      }
    }
  }
  if (g == 0) g = 1;
  mpq_class c(l, g);
  c.canonicalize();
  return Scalar::from_rational(h.ring(), c);
}

bool all_unit(const PolyMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_unit_modulus(m.scalar_at(i, j))) return false;
    }
  }
  return true;
}

}  // namespace

HadamardReport specialize_hadamard(const PolyMatrix& w, const Assignment& assignment) {
  for (const auto& [name, value] : assignment.values) {
    if (!value.is_constant() || !is_unit_modulus(value.constant_term())) {
      throw Error(ErrorCode::NotUnitModulus, "value for " + name + " is not a unit-modulus scalar");
    }
  }
  HadamardReport r;
  r.h = substitute(w, assignment).compact();
  if (!r.h.is_scalar()) throw Error(ErrorCode::NotFullyAssigned, "variables remain after substitution");
  if (!r.h.is_square()) throw Error(ErrorCode::NotSquare, "Hadamard matrices are square");
  const std::size_t n = r.h.rows();
  r.unitary = is_paraunitary(r.h).ok;
  r.scale = r.h.ring().kind() == RingKind::prime_field ? Scalar::one(r.h.ring()) : rational_clearing(r.h);
  r.h_int = r.h * r.scale;
  if (!all_unit(r.h_int)) {
    // irrational normalizations such as 1/sqrt(2)
    if (auto root = try_sqrt(Scalar::from_int(r.h.ring(), static_cast<long>(n)))) {
      const PolyMatrix alt = r.h * *root;
      if (all_unit(alt)) {
        r.scale = *root;
        r.h_int = alt;
      }
    }
  }
  r.unit_entries = all_unit(r.h_int);
  const PolyMatrix gram = r.h_int * adjoint(r.h_int);
  r.hadamard = r.unit_entries && gram == PolyMatrix::identity(r.h.ring(), n) * Scalar::from_int(r.h.ring(), static_cast<long>(n));
  if (r.unit_entries && r.h.ring().kind() != RingKind::prime_field) {
    std::int64_t q = 1;
    for (std::size_t i = 0; i < n && q > 0; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto ord = root_of_unity_order(r.h_int.scalar_at(i, j), kButsonCap);
        if (!ord) {
          q = 0;
          break;
        }
        q = lcm(q, *ord);
        if (q > kButsonCap) {
          q = 0;
          break;
        }
      }
    }
    if (q > 0) r.butson_q = q;
  }
  return r;
}

PolyMatrix compose(const std::vector<PolyMatrix>& parts, ComposeMode mode, bool check) {
  if (parts.empty()) throw Error(ErrorCode::DimensionMismatch, "nothing to compose");
  PolyMatrix out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (mode == ComposeMode::product) {
      if (out.cols() != parts[i].rows()) throw Error(ErrorCode::DimensionMismatch, "factors are not conformable");
      out = out * parts[i];
    } else {
      out = tensor(out, parts[i]);
    }
  }
  out = out.compact();
  if (check && !is_paraunitary(out).ok) throw Error(ErrorCode::NotParaunitary, "composite is not paraunitary");
  return out;
}

}  // namespace paraidem
