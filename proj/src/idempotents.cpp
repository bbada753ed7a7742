#include "paraidem/idempotents.hpp"

#include <algorithm>
#include <memory>

namespace paraidem {

namespace {

PolyMatrix row_of(const PolyMatrix& m, std::size_t i) { return m.block(i, 0, 1, m.cols()); }

std::string join(const std::vector<std::string>& labels, const std::vector<std::size_t>& idx, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) out += sep;
    out += idx[k] < labels.size() ? labels[idx[k]] : std::to_string(idx[k] + 1);
  }
  return out;
}

std::vector<std::string> default_labels(std::size_t k, const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= k; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

void check_partition(const Partition& groups, std::size_t k) {
  std::vector<int> seen(k, 0);
  for (const auto& g : groups) {
    if (g.empty()) throw Error(ErrorCode::DimensionMismatch, "empty group in partition");
    for (std::size_t i : g) {
      if (i >= k) throw Error(ErrorCode::DimensionMismatch, "partition index " + std::to_string(i + 1) + " out of range");
      ++seen[i];
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (seen[i] != 1) throw Error(ErrorCode::DimensionMismatch, "partition must cover each index exactly once");
  }
}

PolyMatrix conj_entries(const PolyMatrix& m) {
  PolyMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      LaurentPoly f = LaurentPoly::zero(m.ring(), m.vars());
      for (const auto& [e, c] : m.at(i, j).terms()) f += LaurentPoly::monomial(conj(c), m.vars(), e);
      out.set(i, j, f);
    }
  }
  return out;
}

IdempotentSet checked(IdempotentSet s) {
  VerificationReport r = verify_set(s);
  if (!r.ok) throw Error(ErrorCode::InternalError, "constructed set fails verification: " + r.failures.front());
  return s;
}

}  // namespace

VerificationReport verify_set(const IdempotentSet& set) {
  VerificationReport r;
  const std::size_t k = set.members.size();
  if (k == 0) {
    r.fail("empty set");
    return r;
  }
  for (std::size_t i = 0; i < k; ++i) {
    const PolyMatrix& e = set.members[i];
    if (e.rows() != set.n || e.cols() != set.n || !(e.ring() == set.ring)) {
      r.fail("member " + std::to_string(i + 1) + " has wrong shape or ring");
      return r;
    }
  }
  PolyMatrix sum(set.ring, set.n, set.n);
  for (std::size_t i = 0; i < k; ++i) {
    const PolyMatrix& e = set.members[i];
    const std::string name = "member " + std::to_string(i + 1);
    if (e.is_zero()) r.fail(name + " is zero");
    if (!(e * e == e)) r.fail(name + " is not idempotent");
    if (!(adjoint(e) == e)) r.fail(name + " is not symmetric");
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j && !(e * set.members[j]).is_zero()) {
        r.fail("members " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are not orthogonal");
        r.offending.emplace_back(i, j);
      }
    }
    sum += e;
  }
  r.product = sum;
  r.residual = sum - PolyMatrix::identity(set.ring, set.n);
  if (!r.residual->is_zero()) r.fail("members do not sum to the identity");
  return r;
}

IdempotentSet from_orthonormal_basis(const PolyMatrix& rows, const Partition& groups) {
  const std::size_t k = rows.rows();
  const PolyMatrix gram = rows * adjoint(rows);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const LaurentPoly& g = gram.at(i, j);
      if (i == j ? !g.is_one() : !g.is_zero()) {
        throw Error(ErrorCode::NotOrthonormal, "v" + std::to_string(i + 1) + " v" + std::to_string(j + 1) + "^* = " + g.to_string());
      }
    }
  }
  Partition parts = groups;
  if (parts.empty()) {
    for (std::size_t i = 0; i < k; ++i) parts.push_back({i});
  }
  check_partition(parts, k);
  IdempotentSet s{rows.ring(), rows.cols(), {}, {}};
  for (const auto& g : parts) {
    PolyMatrix m(rows.ring(), rows.cols(), rows.cols());
    for (std::size_t i : g) {
      const PolyMatrix v = row_of(rows, i);
      m += adjoint(v) * v;
    }
    s.members.push_back(m.compact());
    s.labels.push_back(join(default_labels(k, "P"), g, "+"));
  }
  return checked(std::move(s));
}

IdempotentSet from_orthogonal_basis(const PolyMatrix& rows) {
  const std::size_t k = rows.rows();
  const PolyMatrix gram = rows * adjoint(rows);
  IdempotentSet s{rows.ring(), rows.cols(), {}, default_labels(k, "P")};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j && !gram.at(i, j).is_zero()) {
        throw Error(ErrorCode::NotOrthogonal, "v" + std::to_string(i + 1) + " v" + std::to_string(j + 1) + "^* = " + gram.at(i, j).to_string());
      }
    }
    const LaurentPoly& t = gram.at(i, i);
    if (t.is_zero()) throw Error(ErrorCode::IsotropicVector, "v" + std::to_string(i + 1) + " has zero norm");
    if (!t.is_constant()) throw Error(ErrorCode::NotOrthogonal, "norm of v" + std::to_string(i + 1) + " is not a scalar");
    const PolyMatrix v = row_of(rows, i);
    s.members.push_back((adjoint(v) * v * t.constant_term().inverse()).compact());
  }
  return checked(std::move(s));
}

IdempotentSet from_matrix_rows(const PolyMatrix& u) {
  if (!u.is_square()) throw Error(ErrorCode::NotSquare, "rows must form a square matrix");
  if (!is_paraunitary(u).ok) throw Error(ErrorCode::NotParaunitary, "input is not paraunitary");
  IdempotentSet s{u.ring(), u.cols(), {}, default_labels(u.rows(), "P")};
  for (std::size_t i = 0; i < u.rows(); ++i) {
    const PolyMatrix v = row_of(u, i);
    s.members.push_back((adjoint(v) * v).compact());
  }
  return checked(std::move(s));
}

IdempotentSet diagonal_set(const Ring& ring, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "n must be positive");
  IdempotentSet s{ring, n, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    PolyMatrix e(ring, n, n);
    e.set(i, i, LaurentPoly::constant(Scalar::one(ring)));
    s.members.push_back(e);
    s.labels.push_back("E" + std::to_string(i + 1) + std::to_string(i + 1));
  }
  return s;
}

IdempotentSet embed_set(const std::vector<GroupRingElement>& idempotents, const std::vector<std::string>& labels) {
  if (idempotents.empty()) throw Error(ErrorCode::NotCompleteSet, "no idempotents");
  IdempotentSet s{idempotents.front().ring(), idempotents.front().table().order(), {}, labels};
  for (const auto& e : idempotents) s.members.push_back(embed_group_ring(e));
  return checked(std::move(s));
}

IdempotentSet group_set(const GroupTable& table, const Ring& ring, bool real) {
  auto ptr = std::make_shared<const GroupTable>(table);
  // real idempotents over Q are built in Q(zeta_|G|) and mapped down
  const Ring work = real && ring.kind() == RingKind::rational ? Ring::cyclotomic(static_cast<std::int64_t>(table.order())) : ring;
  const CharacterTable chars = builtin_characters(table, work);
  const auto elems = group_ring_idempotents(ptr, chars);
  if (!real) return embed_set(elems, chars.labels);
  std::vector<GroupRingElement> merged;
  std::vector<std::string> labels;
  for (const auto& g : conjugate_pairing(elems)) {
    GroupRingElement sum = elems[g[0]];
    for (std::size_t t = 1; t < g.size(); ++t) sum += elems[g[t]];
    if (work != ring) {
      std::vector<Scalar> c;
      for (const auto& x : sum.coeffs()) c.push_back(map_cyclotomic(x, ring));
      sum = GroupRingElement(ptr, std::move(c));
    }
    merged.push_back(std::move(sum));
    labels.push_back(join(chars.labels, g, "+"));
  }
  return embed_set(merged, labels);
}

IdempotentSet realify(const IdempotentSet& set) {
  const std::size_t k = set.size();
  std::vector<bool> used(k, false);
  Partition groups;
  for (std::size_t i = 0; i < k; ++i) {
    if (used[i]) continue;
    used[i] = true;
    const PolyMatrix c = conj_entries(set.members[i]);
    if (c == set.members[i]) {
      groups.push_back({i});
      continue;
    }
    std::size_t j = i + 1;
    while (j < k && (used[j] || !(set.members[j] == c))) ++j;
    if (j == k) throw Error(ErrorCode::NotCompleteSet, "member " + std::to_string(i + 1) + " has no conjugate partner");
    used[j] = true;
    groups.push_back({i, j});
  }
  return merge(set, groups);
}

IdempotentSet merge(const IdempotentSet& set, const Partition& groups) {
  check_partition(groups, set.size());
  IdempotentSet s{set.ring, set.n, {}, {}};
  for (const auto& g : groups) {
    PolyMatrix m(set.ring, set.n, set.n);
    for (std::size_t i : g) m += set.members[i];
    s.members.push_back(m.compact());
    s.labels.push_back(join(set.labels, g, "+"));
  }
  return s;
}

IdempotentSet tensor_sets(const IdempotentSet& a, const IdempotentSet& b) {
  if (!(a.ring == b.ring)) throw Error(ErrorCode::IncompatibleRings, "sets over different rings");
  IdempotentSet s{a.ring, a.n * b.n, {}, {}};
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      s.members.push_back(tensor(a.members[i], b.members[j]));
      const std::string la = i < a.labels.size() ? a.labels[i] : std::to_string(i + 1);
      const std::string lb = j < b.labels.size() ? b.labels[j] : std::to_string(j + 1);
      s.labels.push_back(la + "*" + lb);
    }
  }
  return s;
}

IdempotentSet conjugate_set(const IdempotentSet& set, const PolyMatrix& p) {
  if (!p.is_square() || p.rows() != set.n) throw Error(ErrorCode::DimensionMismatch, "conjugating matrix has wrong size");
  if (!is_paraunitary(p).ok) throw Error(ErrorCode::NotParaunitary, "conjugating matrix is not paraunitary");
  const PolyMatrix pa = adjoint(p);
  IdempotentSet s{set.ring, set.n, {}, set.labels};
  for (const auto& e : set.members) s.members.push_back((pa * e * p).compact());
  return checked(std::move(s));
}

PolyMatrix factor_rank1(const PolyMatrix& p) {
  if (!p.is_square()) throw Error(ErrorCode::NotSquare, "factor_rank1 needs a square matrix");
  if (!p.is_scalar()) throw Error(ErrorCode::NotScalar, "factor_rank1 needs a scalar matrix");
  if (!(adjoint(p) == p) || !(p * p == p) || rank(p) != 1) {
    throw Error(ErrorCode::NotRankOne, "not a symmetric idempotent of rank 1");
  }
  const std::size_t n = p.rows();
  std::size_t k = 0;
  while (k < n && p.scalar_at(k, k).is_zero()) ++k;
  const Scalar root = sqrt(p.scalar_at(k, k));
  const Scalar inv = root.inverse();
  std::vector<std::vector<Scalar>> col(n);
  for (std::size_t i = 0; i < n; ++i) col[i].push_back(p.scalar_at(i, k) * inv);
  // sign normalization on the first nonzero coordinate
  for (const auto& c : col) {
    const Scalar& x = c[0];
    if (x.is_zero()) continue;
    bool negative = false;
    if (x.ring().kind() == RingKind::prime_field) {
      negative = x.residue() > (x.ring().characteristic() - 1) / 2;
    } else {
      for (const auto& q : x.coefficients()) {
        if (q != 0) {
          negative = q < 0;
          break;
        }
      }
    }
    if (negative) {
      for (auto& d : col) d[0] = -d[0];
    }
    break;
  }
  PolyMatrix v = PolyMatrix::from_scalars(p.ring(), col);
  if (!(v * adjoint(v) == p) || !(adjoint(v) * v).is_identity()) {
    throw Error(ErrorCode::InternalError, "rank-1 factor does not reproduce the input");
  }
  return v;
}

std::vector<std::size_t> rank_profile(const IdempotentSet& set) {
  std::vector<std::size_t> out;
  for (const auto& e : set.members) {
    if (e.is_scalar() || set.ring.characteristic() != 0) {
      out.push_back(rank(e));
      continue;
    }
    // Laurent entries: the rank of an idempotent is its trace
    LaurentPoly t = LaurentPoly::zero(set.ring, e.vars());
    for (std::size_t i = 0; i < e.rows(); ++i) t += e.at(i, i);
    if (!t.is_constant() || !t.constant_term().is_rational() || t.constant_term().rational_value().get_den() != 1 ||
        t.constant_term().rational_value() < 0) {
      throw Error(ErrorCode::NotScalar, "trace of " + set.labels.at(out.size()) + " is not a non-negative integer");
    }
    out.push_back(t.constant_term().rational_value().get_num().get_ui());
  }
  return out;
}

}  // namespace paraidem
