#pragma once

// Constructors and checks for complete symmetric orthogonal sets of
// idempotents. Vectors are passed as the rows of a matrix; the member built
// from a row v is adjoint(v) * v.

#include <cstddef>
#include <string>
#include <vector>

#include "paraidem/group.hpp"
#include "paraidem/polymatrix.hpp"

namespace paraidem {

using Partition = std::vector<std::vector<std::size_t>>;

/// Checks nonzero members, E_i^2 = E_i, E_i E_j = 0, sum = I and adjoint(E_i) = E_i.
VerificationReport verify_set(const IdempotentSet& set);

/// One member per group: the sum of adjoint(v_j) v_j over the group.
/// An empty partition means singleton groups. Throws NotOrthonormal.
IdempotentSet from_orthonormal_basis(const PolyMatrix& rows, const Partition& groups = {});
/// Members t_i^-1 adjoint(v_i) v_i with t_i = v_i adjoint(v_i); no square roots needed.
/// Throws NotOrthogonal or IsotropicVector.
IdempotentSet from_orthogonal_basis(const PolyMatrix& rows);
inline IdempotentSet from_orthogonal_basis_finite(const PolyMatrix& rows) { return from_orthogonal_basis(rows); }
/// The rank-1 members adjoint(row_i) row_i of a paraunitary U. Throws NotParaunitary.
IdempotentSet from_matrix_rows(const PolyMatrix& u);
IdempotentSet diagonal_set(const Ring& ring, std::size_t n);

/// Embeds group ring idempotents as G-matrices.
IdempotentSet embed_set(const std::vector<GroupRingElement>& idempotents, const std::vector<std::string>& labels);
/// The character idempotents of a built-in group, optionally realified.
IdempotentSet group_set(const GroupTable& table, const Ring& ring, bool real = false);

/// Sums complex-conjugate pairs (entrywise conj). Throws NotCompleteSet.
IdempotentSet realify(const IdempotentSet& set);
/// Sums members per group; labels joined with "+".
IdempotentSet merge(const IdempotentSet& set, const Partition& groups);
/// All E_i (x) F_j, i-major.
IdempotentSet tensor_sets(const IdempotentSet& a, const IdempotentSet& b);
/// Members adjoint(P) E_i P. Throws NotParaunitary.
IdempotentSet conjugate_set(const IdempotentSet& set, const PolyMatrix& p);

/// Column v with adjoint(v) v = 1 and v adjoint(v) = P, for a symmetric rank-1
/// idempotent P. Anchored at the first nonzero diagonal entry; the sign makes
/// the first nonzero coordinate positive (in F_p: at most (p-1)/2).
/// Throws NotRankOne or NoSquareRoot.
PolyMatrix factor_rank1(const PolyMatrix& p);

std::vector<std::size_t> rank_profile(const IdempotentSet& set);

}  // namespace paraidem
