#include "paraidem/polymatrix.hpp"

#include <algorithm>
#include <sstream>

namespace paraidem {

namespace {

void require_ring(const Ring& a, const Ring& b) {
  if (!(a == b)) throw Error(ErrorCode::IncompatibleRings, a.to_string() + " vs " + b.to_string());
}

}  // namespace

PolyMatrix::PolyMatrix(Ring ring, std::size_t rows, std::size_t cols, VarSet vars)
    : ring_(std::move(ring)), vars_(std::move(vars)), rows_(rows), cols_(cols) {
  entries_.assign(rows * cols, LaurentPoly::zero(ring_, vars_));
}

PolyMatrix PolyMatrix::identity(const Ring& ring, std::size_t n) {
  PolyMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = LaurentPoly::constant(Scalar::one(ring));
  return m;
}

PolyMatrix PolyMatrix::from_scalars(const Ring& ring, const std::vector<std::vector<Scalar>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows[0].size();
  PolyMatrix m(ring, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorCode::DimensionMismatch, "ragged rows");
    for (std::size_t j = 0; j < c; ++j) {
      require_ring(ring, rows[i][j].ring());
      m.entries_[i * c + j] = LaurentPoly::constant(rows[i][j]);
    }
  }
  return m;
}

PolyMatrix PolyMatrix::from_polys(const Ring& ring, const std::vector<std::vector<LaurentPoly>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows[0].size();
  VarSet vars;
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(ErrorCode::DimensionMismatch, "ragged rows");
    for (const auto& f : row) {
      require_ring(ring, f.ring());
      vars = vars.unite(f.vars());
    }
  }
  PolyMatrix m(ring, r, c, vars);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m.entries_[i * c + j] = rows[i][j].lift(vars);
  }
  return m;
}

PolyMatrix PolyMatrix::parse(const Ring& ring, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<LaurentPoly>> polys;
  VarSet seen;
  for (const auto& row : rows) {
    auto& out = polys.emplace_back();
    for (const auto& text : row) {
      out.push_back(LaurentPoly::parse(ring, text, seen));
      seen = out.back().vars();
    }
  }
  return from_polys(ring, polys);
}

PolyMatrix PolyMatrix::from_blocks(const std::vector<std::vector<PolyMatrix>>& blocks) {
  if (blocks.empty() || blocks[0].empty()) throw Error(ErrorCode::DimensionMismatch, "empty block grid");
  const std::size_t h = blocks[0][0].rows();
  const std::size_t w = blocks[0][0].cols();
  const Ring& ring = blocks[0][0].ring();
  VarSet vars;
  for (const auto& row : blocks) {
    if (row.size() != blocks[0].size()) throw Error(ErrorCode::DimensionMismatch, "ragged block grid");
    for (const auto& b : row) {
      if (b.rows() != h || b.cols() != w) throw Error(ErrorCode::DimensionMismatch, "blocks differ in size");
      require_ring(ring, b.ring());
      vars = vars.unite(b.vars());
    }
  }
  PolyMatrix m(ring, h * blocks.size(), w * blocks[0].size(), vars);
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    for (std::size_t bj = 0; bj < blocks[bi].size(); ++bj) {
      const PolyMatrix b = blocks[bi][bj].lift(vars);
      for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < w; ++j) m.entries_[(bi * h + i) * m.cols_ + bj * w + j] = b.at(i, j);
      }
    }
  }
  return m;
}

void PolyMatrix::unify_vars(const VarSet& other) {
  if (vars_ == other) return;
  const VarSet u = vars_.unite(other);
  if (u == vars_) return;
  for (auto& e : entries_) e = e.lift(u);
  vars_ = u;
}

void PolyMatrix::set(std::size_t i, std::size_t j, const LaurentPoly& value) {
  require_ring(ring_, value.ring());
  unify_vars(value.vars());
  entries_[i * cols_ + j] = value.lift(vars_);
}

bool PolyMatrix::is_scalar() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const LaurentPoly& f) { return f.is_constant(); });
}

bool PolyMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const LaurentPoly& f) { return f.is_zero(); });
}

bool PolyMatrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const auto& f = at(i, j);
      if (i == j ? !f.is_one() : !f.is_zero()) return false;
    }
  }
  return true;
}

Scalar PolyMatrix::scalar_at(std::size_t i, std::size_t j) const {
  const auto& f = at(i, j);
  if (!f.is_constant()) throw Error(ErrorCode::NotScalar, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + f.to_string());
  return f.constant_term();
}

PolyMatrix PolyMatrix::lift(const VarSet& target) const {
  if (target == vars_) return *this;
  PolyMatrix m = *this;
  m.vars_ = target;
  for (auto& e : m.entries_) e = e.lift(target);
  return m;
}

PolyMatrix PolyMatrix::compact() const {
  std::vector<std::string> used;
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    const bool occurs = std::any_of(entries_.begin(), entries_.end(), [v](const LaurentPoly& f) {
      return std::any_of(f.terms().begin(), f.terms().end(), [v](const auto& t) { return t.first[v] != 0; });
    });
    if (occurs) used.push_back(vars_.names()[v]);
  }
  if (used.size() == vars_.size()) return *this;
  return lift(VarSet(std::move(used)));
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix m(ring_, cols_, rows_, vars_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m.entries_[j * rows_ + i] = at(i, j);
  }
  return m;
}

PolyMatrix PolyMatrix::block(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const {
  if (r0 + h > rows_ || c0 + w > cols_) throw Error(ErrorCode::DimensionMismatch, "block out of range");
  PolyMatrix m(ring_, h, w, vars_);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) m.entries_[i * w + j] = at(r0 + i, c0 + j);
  }
  return m;
}

PolyMatrix PolyMatrix::permute_rows(const std::vector<std::size_t>& perm) const {
  if (perm.size() != rows_) throw Error(ErrorCode::DimensionMismatch, "permutation length");
  PolyMatrix m(ring_, rows_, cols_, vars_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m.entries_[i * cols_ + j] = at(perm[i], j);
  }
  return m;
}

PolyMatrix PolyMatrix::permute_cols(const std::vector<std::size_t>& perm) const {
  if (perm.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "permutation length");
  PolyMatrix m(ring_, rows_, cols_, vars_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m.entries_[i * cols_ + j] = at(i, perm[j]);
  }
  return m;
}

PolyMatrix PolyMatrix::operator-() const {
  PolyMatrix m = *this;
  for (auto& e : m.entries_) e = -e;
  return m;
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& other) {
  require_ring(ring_, other.ring_);
  if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorCode::DimensionMismatch, "sum of differently sized matrices");
  unify_vars(other.vars_);
  const PolyMatrix rhs = other.lift(vars_);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& other) { return *this += -other; }

PolyMatrix& PolyMatrix::operator*=(const LaurentPoly& f) {
  require_ring(ring_, f.ring());
  unify_vars(f.vars());
  const LaurentPoly g = f.lift(vars_);
  for (auto& e : entries_) e *= g;
  return *this;
}

PolyMatrix& PolyMatrix::operator*=(const Scalar& c) {
  require_ring(ring_, c.ring());
  for (auto& e : entries_) e *= c;
  return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  require_ring(a.ring_, b.ring_);
  if (a.cols_ != b.rows_) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " times " +
                                                  std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  }
  const VarSet u = a.vars_.unite(b.vars_);
  const PolyMatrix la = a.lift(u);
  const PolyMatrix lb = b.lift(u);
  PolyMatrix m(a.ring_, a.rows_, b.cols_, u);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const LaurentPoly& x = la.at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const LaurentPoly& y = lb.at(k, j);
        if (y.is_zero()) continue;
        m.entries_[i * m.cols_ + j].add_product(x, y);
      }
    }
  }
  return m;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  if (!(a.ring_ == b.ring_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t k = 0; k < a.entries_.size(); ++k) {
    if (!(a.entries_[k] == b.entries_[k])) return false;
  }
  return true;
}

std::vector<std::vector<std::string>> PolyMatrix::entry_strings() const {
  const PolyMatrix c = compact();
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i].push_back(c.at(i, j).to_string());
  }
  return out;
}

std::string PolyMatrix::to_string() const {
  std::ostringstream os;
  const auto cells = entry_strings();
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ",\n ";
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << cells[i][j];
    os << ']';
  }
  os << ']';
  return os.str();
}

nlohmann::json PolyMatrix::to_json() const {
  const PolyMatrix c = compact();
  return {{"ring", ring_.to_json()},
          {"vars", c.vars_.names()},
          {"rows", rows_},
          {"cols", cols_},
          {"entries", c.entry_strings()}};
}

PolyMatrix PolyMatrix::from_json(const nlohmann::json& j) {
  try {
    const Ring ring = Ring::from_json(j.at("ring"));
    const VarSet vars(j.value("vars", std::vector<std::string>{}));
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (entries.size() != rows) throw Error(ErrorCode::ParseError, "row count differs from 'rows'");
    PolyMatrix m(ring, rows, cols, vars);
    for (std::size_t i = 0; i < rows; ++i) {
      if (entries[i].size() != cols) throw Error(ErrorCode::ParseError, "column count differs from 'cols'");
      for (std::size_t k = 0; k < cols; ++k) {
        const auto& cell = entries[i][k];
        if (cell.is_string()) {
          m.set(i, k, LaurentPoly::parse(ring, cell.get<std::string>(), m.vars()));
        } else {
          m.set(i, k, LaurentPoly::constant(Scalar::from_json(ring, cell)));
        }
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("matrix JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

PolyMatrix adjoint(const PolyMatrix& m) {
  PolyMatrix t(m.ring(), m.cols(), m.rows(), m.vars());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) t.set(j, i, star(m.at(i, j)));
  }
  return t;
}

PolyMatrix tensor(const PolyMatrix& a, const PolyMatrix& b) {
  require_ring(a.ring(), b.ring());
  std::vector<std::vector<PolyMatrix>> blocks(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) blocks[i].push_back(a.at(i, j) * b);
  }
  return PolyMatrix::from_blocks(blocks);
}

PolyMatrix block_inner_product(const std::vector<PolyMatrix>& k, const std::vector<PolyMatrix>& l) {
  if (k.size() != l.size() || k.empty()) throw Error(ErrorCode::DimensionMismatch, "block rows differ in length");
  PolyMatrix sum = k[0] * adjoint(l[0]);
  for (std::size_t i = 1; i < k.size(); ++i) sum += k[i] * adjoint(l[i]);
  return sum;
}

PolyMatrix substitute(const PolyMatrix& m, const Assignment& assignment) {
  std::vector<std::vector<LaurentPoly>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i].push_back(substitute(m.at(i, j), assignment));
  }
  return PolyMatrix::from_polys(m.ring(), rows).compact();
}

PolyMatrix map_entries(const PolyMatrix& m, const Ring& target) {
  std::vector<std::vector<LaurentPoly>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      LaurentPoly f = LaurentPoly::zero(target, m.vars());
      for (const auto& [e, c] : m.at(i, j).terms()) f += LaurentPoly::monomial(map_cyclotomic(c, target), m.vars(), e);
      rows[i].push_back(std::move(f));
    }
  }
  return PolyMatrix::from_polys(target, rows);
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j{{"ok", ok}};
  if (!offending.empty()) {
    auto& list = j["offending"] = nlohmann::json::array();
    for (const auto& [r, c] : offending) list.push_back({r, c});
  }
  if (!failures.empty()) j["failures"] = failures;
  if (!ok && residual) j["residual"] = residual->to_json();
  return j;
}

VerificationReport is_paraunitary(const PolyMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NotSquare, "paraunitarity needs a square matrix");
  VerificationReport report;
  report.product = m * adjoint(m);
  report.residual = *report.product - PolyMatrix::identity(m.ring(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!report.residual->at(i, j).is_zero()) report.offending.emplace_back(i, j);
    }
  }
  if (!report.offending.empty()) report.fail(std::to_string(report.offending.size()) + " entries of M*M^* - I are nonzero");
  return report;
}

std::optional<LaurentPoly> scalar_monomial_multiple(const PolyMatrix& product) {
  if (!product.is_square()) throw Error(ErrorCode::NotSquare, "expected a square product");
  if (product.rows() == 0) return LaurentPoly::constant(Scalar::one(product.ring()));
  const LaurentPoly p = product.at(0, 0).compact();
  if (!is_unit_monomial(p)) return std::nullopt;
  for (std::size_t i = 0; i < product.rows(); ++i) {
    for (std::size_t j = 0; j < product.cols(); ++j) {
      const auto& f = product.at(i, j);
      if (i == j ? !(f == p) : !f.is_zero()) return std::nullopt;
    }
  }
  return p;
}

std::optional<LaurentPoly> is_pseudo_paraunitary(const PolyMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NotSquare, "pseudo-paraunitarity needs a square matrix");
  return scalar_monomial_multiple(m * adjoint(m));
}

std::optional<LaurentPoly> is_pseudo_paraunitary(const PolyMatrix& q, const LaurentPoly& clearing) {
  if (!q.is_square()) throw Error(ErrorCode::NotSquare, "pseudo-paraunitarity needs a square matrix");
  if (!is_unit_monomial(clearing)) throw Error(ErrorCode::NotPseudoParaunitary, "clearing factor is not a unit monomial");
  // clearing * adjoint(W) with W = q / clearing equals clearing^2 * adjoint(q)
  return scalar_monomial_multiple(q * (clearing * clearing * adjoint(q)));
}

// ---------------------------------------------------------------------------
// determinant, rank, trace

namespace {

using ScalarGrid = std::vector<std::vector<Scalar>>;

ScalarGrid scalar_grid(const PolyMatrix& m) {
  ScalarGrid g(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) g[i].push_back(m.scalar_at(i, j));
  }
  return g;
}

// Row-reduces g in place with first-nonzero pivoting; returns the rank and
// accumulates the determinant of the leading square part when requested.
std::size_t eliminate(ScalarGrid& g, const Ring& ring, Scalar* det) {
  const std::size_t rows = g.size();
  const std::size_t cols = rows == 0 ? 0 : g[0].size();
  std::size_t r = 0;
  if (det) *det = Scalar::one(ring);
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && g[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) {
      if (det) *det = Scalar::zero(ring);
      continue;
    }
    if (pivot != r) {
      std::swap(g[pivot], g[r]);
      if (det) *det = -*det;
    }
    const Scalar inv = g[r][c].inverse();
    if (det) *det *= g[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (g[i][c].is_zero()) continue;
      const Scalar factor = g[i][c] * inv;
      for (std::size_t j = c; j < cols; ++j) g[i][j] -= factor * g[r][j];
    }
    ++r;
  }
  return r;
}

LaurentPoly bareiss(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  const Ring& ring = m.ring();
  const VarSet& vars = m.vars();
  // clear each row's minimal monomial so that all entries are polynomials
  Exponents extracted(vars.size(), 0);
  std::vector<std::vector<LaurentPoly>> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    Exponents low(vars.size(), 0);
    bool first = true;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& f = m.at(i, j);
      if (f.is_zero()) continue;
      const Exponents lo = f.min_exponents();
      for (std::size_t v = 0; v < low.size(); ++v) low[v] = first ? lo[v] : std::min(low[v], lo[v]);
      first = false;
    }
    if (first) return LaurentPoly::zero(ring, vars);
    Exponents shift(vars.size());
    for (std::size_t v = 0; v < low.size(); ++v) {
      shift[v] = -low[v];
      extracted[v] += low[v];
    }
    for (std::size_t j = 0; j < n; ++j) a[i].push_back(m.at(i, j).shifted(shift));
  }
  bool negate = false;
  LaurentPoly prev = LaurentPoly::constant(Scalar::one(ring), vars);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return LaurentPoly::zero(ring, vars);
      std::swap(a[k], a[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        LaurentPoly num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        a[i][j] = prev.is_one() ? std::move(num) : num.exact_div(prev);
      }
    }
    prev = a[k][k];
  }
  LaurentPoly det = a[n - 1][n - 1];
  if (negate) det = -det;
  return det.shifted(extracted);
}

}  // namespace

LaurentPoly determinant(const PolyMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NotSquare, "determinant of a non-square matrix");
  if (m.rows() == 0) return LaurentPoly::constant(Scalar::one(m.ring()));
  if (m.is_scalar()) {
    ScalarGrid g = scalar_grid(m);
    Scalar det;
    eliminate(g, m.ring(), &det);
    return LaurentPoly::constant(det, m.vars()).compact();
  }
  return bareiss(m).compact();
}

std::size_t rank(const PolyMatrix& m) {
  if (!m.is_scalar()) throw Error(ErrorCode::NotScalar, "rank needs constant entries");
  ScalarGrid g = scalar_grid(m);
  return eliminate(g, m.ring(), nullptr);
}

Scalar trace(const PolyMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NotSquare, "trace of a non-square matrix");
  Scalar t = Scalar::zero(m.ring());
  for (std::size_t i = 0; i < m.rows(); ++i) t += m.scalar_at(i, i);
  return t;
}

// ---------------------------------------------------------------------------

nlohmann::json IdempotentSet::to_json() const {
  nlohmann::json members_json = nlohmann::json::array();
  for (const auto& m : members) members_json.push_back(m.to_json());
  nlohmann::json j{{"ring", ring.to_json()}, {"n", n}, {"members", members_json}};
  j["labels"] = labels;
  return j;
}

IdempotentSet IdempotentSet::from_json(const nlohmann::json& j) {
  try {
    IdempotentSet s;
    s.ring = Ring::from_json(j.at("ring"));
    s.n = j.at("n").get<std::size_t>();
    for (const auto& m : j.at("members")) {
      nlohmann::json mj = m;
      if (!mj.contains("ring")) mj["ring"] = j.at("ring");
      s.members.push_back(PolyMatrix::from_json(mj));
      if (s.members.back().rows() != s.n || s.members.back().cols() != s.n) {
        throw Error(ErrorCode::DimensionMismatch, "member size differs from n");
      }
    }
    s.labels = j.value("labels", std::vector<std::string>{});
    if (!s.labels.empty() && s.labels.size() != s.members.size()) throw Error(ErrorCode::ParseError, "label count differs from member count");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("idempotent set JSON: ") + e.what());
  }
}

PolyMatrix linear_combination(const std::vector<LaurentPoly>& coeffs, const IdempotentSet& set) {
  if (coeffs.size() != set.size()) throw Error(ErrorCode::SizeMismatch, "one coefficient per member expected");
  PolyMatrix sum(set.ring, set.n, set.n);
  for (std::size_t i = 0; i < coeffs.size(); ++i) sum += coeffs[i] * set.members[i];
  return sum;
}

PolyMatrix idempotent_inverse(const std::vector<Scalar>& coeffs, const IdempotentSet& set) {
  if (coeffs.size() != set.size()) throw Error(ErrorCode::SizeMismatch, "one coefficient per member expected");
  std::vector<LaurentPoly> forward;
  std::vector<LaurentPoly> backward;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) throw Error(ErrorCode::ZeroCoefficient, "coefficient " + std::to_string(i) + " is zero");
    forward.push_back(LaurentPoly::constant(coeffs[i]));
    backward.push_back(LaurentPoly::constant(coeffs[i].inverse()));
  }
  PolyMatrix inv = linear_combination(backward, set);
  if (!(linear_combination(forward, set) * inv).is_identity()) throw Error(ErrorCode::InternalError, "A * A^-1 is not the identity");
  return inv;
}

}  // namespace paraidem
