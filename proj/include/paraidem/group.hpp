#pragma once

// Small finite groups given by a multiplication table, their group rings,
// and the hardcoded character tables of the built-in families.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "paraidem/polymatrix.hpp"

namespace paraidem {

class GroupTable {
 public:
  /// Validates the group axioms (identity at index 0, inverses, and
  /// associativity exhaustively for order <= 64) and computes classes.
  static GroupTable from_table(std::string name, std::vector<std::string> elements, std::vector<std::vector<std::size_t>> mul);

  static GroupTable cyclic(std::size_t n);
  /// C_2^k listed by bitmask: 1, a, b, ab, c, ...
  static GroupTable elementary_abelian_2(std::size_t k);
  /// Dihedral group of the given order 2n: r^0..r^(n-1), then s, sr, ..., sr^(n-1).
  static GroupTable dihedral(std::size_t order);
  /// S_3 listed as 1, (1,2), (1,3), (2,3), (1,2,3), (1,3,2), composed right to left.
  static GroupTable symmetric_3();

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  /// "cyclic", "elementary_abelian_2", "dihedral", "s3" or "custom".
  [[nodiscard]] const std::string& family() const noexcept { return family_; }
  /// n for cyclic(n), k for elementary_abelian_2(k), the order for dihedral.
  [[nodiscard]] std::size_t parameter() const noexcept { return parameter_; }
  [[nodiscard]] std::size_t order() const noexcept { return elements_.size(); }
  [[nodiscard]] const std::vector<std::string>& elements() const noexcept { return elements_; }
  [[nodiscard]] std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a][b]; }
  [[nodiscard]] std::size_t inv(std::size_t a) const { return inv_[a]; }
  [[nodiscard]] const std::vector<std::vector<std::size_t>>& classes() const noexcept { return classes_; }
  [[nodiscard]] std::size_t index_of(const std::string& element) const;

  [[nodiscard]] nlohmann::json to_json() const;
  static GroupTable from_json(const nlohmann::json& j);

  friend bool operator==(const GroupTable& a, const GroupTable& b) { return a.elements_ == b.elements_ && a.mul_ == b.mul_; }

 private:
  std::string name_;
  std::vector<std::string> elements_;
  std::vector<std::vector<std::size_t>> mul_;
  std::vector<std::size_t> inv_;
  std::vector<std::vector<std::size_t>> classes_;
  std::string family_ = "custom";
  std::size_t parameter_ = 0;
};

/// Irreducible characters, one row per character, indexed by element.
struct CharacterTable {
  Ring ring;
  std::vector<std::vector<Scalar>> values;
  std::vector<std::string> labels;
};

/// Character table of a built-in group, with values mapped into `ring`.
/// Cyclic characters are listed so that the j-th idempotent is
/// (1/n) sum_m w^(jm) a^m with w = root_of_unity(ring, n).
CharacterTable builtin_characters(const GroupTable& table, const Ring& ring);

class GroupRingElement {
 public:
  GroupRingElement(std::shared_ptr<const GroupTable> table, std::vector<Scalar> coeffs);
  static GroupRingElement zero(std::shared_ptr<const GroupTable> table, const Ring& ring);
  static GroupRingElement one(std::shared_ptr<const GroupTable> table, const Ring& ring);

  [[nodiscard]] const GroupTable& table() const noexcept { return *table_; }
  [[nodiscard]] const std::shared_ptr<const GroupTable>& table_ptr() const noexcept { return table_; }
  [[nodiscard]] const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] const Ring& ring() const { return coeffs_.front().ring(); }

  GroupRingElement& operator+=(const GroupRingElement& other);
  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b);
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
  friend GroupRingElement operator*(const Scalar& c, GroupRingElement a);
  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b);

  /// sum a_g g^-1
  [[nodiscard]] GroupRingElement transpose() const;
  /// sum conj(a_g) g^-1
  [[nodiscard]] GroupRingElement star() const;
  /// sum conj(a_g) g
  [[nodiscard]] GroupRingElement conj_coeffs() const;

  [[nodiscard]] std::string to_string() const;

 private:
  std::shared_ptr<const GroupTable> table_;
  std::vector<Scalar> coeffs_;
};

/// The G-matrix image: entry (i,j) is the coefficient of g_i^-1 g_j.
PolyMatrix embed_group_ring(const GroupRingElement& w);

/// Primitive central idempotents e(chi) = chi(1)/|G| sum chi(g^-1) g.
/// Throws BadCharacteristic when char(ring) divides |G|.
std::vector<GroupRingElement> group_ring_idempotents(std::shared_ptr<const GroupTable> table, const CharacterTable& characters);

/// Merges complex-conjugate pairs; self-conjugate members stay. Order of
/// first occurrence is kept. Throws NotCompleteSet if the pairing fails.
std::vector<GroupRingElement> realify(const std::vector<GroupRingElement>& idempotents);
/// The index groups realify() sums: {i} or {i, j} with j the conjugate of i.
std::vector<std::vector<std::size_t>> conjugate_pairing(const std::vector<GroupRingElement>& idempotents);

}  // namespace paraidem
