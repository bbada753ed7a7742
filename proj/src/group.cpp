#include "paraidem/group.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

namespace paraidem {

GroupTable GroupTable::from_table(std::string name, std::vector<std::string> elements, std::vector<std::vector<std::size_t>> mul) {
  const std::size_t n = elements.size();
  if (n == 0) throw Error(ErrorCode::InvalidGroup, "empty group");
  if (mul.size() != n) throw Error(ErrorCode::InvalidGroup, "table has wrong number of rows");
  for (const auto& row : mul) {
    if (row.size() != n) throw Error(ErrorCode::InvalidGroup, "table has a row of wrong length");
    for (std::size_t x : row) {
      if (x >= n) throw Error(ErrorCode::InvalidGroup, "table entry out of range");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (mul[0][a] != a || mul[a][0] != a) throw Error(ErrorCode::InvalidGroup, "element 0 is not the identity");
  }
  GroupTable g;
  g.name_ = std::move(name);
  g.elements_ = std::move(elements);
  g.inv_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (mul[a][b] == 0 && mul[b][a] == 0) {
        g.inv_[a] = b;
        break;
      }
    }
    if (g.inv_[a] == n) throw Error(ErrorCode::InvalidGroup, "element " + g.elements_[a] + " has no inverse");
  }
  if (n <= 64) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) throw Error(ErrorCode::InvalidGroup, "multiplication is not associative");
        }
      }
    }
  }
  g.mul_ = std::move(mul);
  std::vector<bool> seen(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    if (seen[a]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t c = g.mul_[g.mul_[x][a]][g.inv_[x]];
      if (!seen[c]) {
        seen[c] = true;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    g.classes_.push_back(std::move(cls));
  }
  return g;
}

namespace {

std::string power_name(const std::string& base, std::size_t k) {
  if (k == 0) return "1";
  if (k == 1) return base;
  return base + "^" + std::to_string(k);
}

}  // namespace

GroupTable GroupTable::cyclic(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidGroup, "cyclic group of order 0");
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> mul(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back(power_name("a", a));
    for (std::size_t b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
  }
  GroupTable g = from_table("C" + std::to_string(n), std::move(names), std::move(mul));
  g.family_ = "cyclic";
  g.parameter_ = n;
  return g;
}

GroupTable GroupTable::elementary_abelian_2(std::size_t k) {
  if (k == 0 || k > 6) throw Error(ErrorCode::InvalidGroup, "elementary abelian 2-group rank must be 1..6");
  const std::size_t n = std::size_t{1} << k;
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> mul(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    std::string name;
    for (std::size_t bit = 0; bit < k; ++bit) {
      if (a >> bit & 1) name += static_cast<char>('a' + bit);
    }
    names.push_back(name.empty() ? "1" : name);
    for (std::size_t b = 0; b < n; ++b) mul[a][b] = a ^ b;
  }
  GroupTable g = from_table(k == 1 ? "C2" : "C2^" + std::to_string(k), std::move(names), std::move(mul));
  g.family_ = "elementary_abelian_2";
  g.parameter_ = k;
  return g;
}

GroupTable GroupTable::dihedral(std::size_t order) {
  if (order < 2 || order % 2 != 0) throw Error(ErrorCode::InvalidGroup, "dihedral order must be even and >= 2");
  const std::size_t n = order / 2;
  // index k < n is r^k; index n + k is s r^k = r^(-k) s
  auto decode = [n](std::size_t idx) -> std::array<std::size_t, 2> {
    if (idx < n) return {idx, 0};
    return {(n - (idx - n)) % n, 1};
  };
  auto encode = [n](std::size_t a, std::size_t b) -> std::size_t { return b == 0 ? a : n + (n - a) % n; };
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) names.push_back(power_name("r", k));
  for (std::size_t k = 0; k < n; ++k) names.push_back(k == 0 ? "s" : "s" + power_name("r", k));
  std::vector<std::vector<std::size_t>> mul(order, std::vector<std::size_t>(order));
  for (std::size_t x = 0; x < order; ++x) {
    for (std::size_t y = 0; y < order; ++y) {
      const auto [a, b] = decode(x);
      const auto [c, d] = decode(y);
      // r^a s^b r^c s^d = r^(a +- c) s^(b+d)
      const std::size_t rot = b == 0 ? (a + c) % n : (a + n - c) % n;
      mul[x][y] = encode(rot, (b + d) % 2);
    }
  }
  GroupTable g = from_table("D" + std::to_string(order), std::move(names), std::move(mul));
  g.family_ = "dihedral";
  g.parameter_ = order;
  return g;
}

GroupTable GroupTable::symmetric_3() {
  using Perm = std::array<int, 3>;
  // images of 1,2,3 (0-based)
  const std::vector<Perm> perms = {Perm{0, 1, 2}, Perm{1, 0, 2}, Perm{2, 1, 0}, Perm{0, 2, 1}, Perm{1, 2, 0}, Perm{2, 0, 1}};
  const std::vector<std::string> names = {"1", "(1,2)", "(1,3)", "(2,3)", "(1,2,3)", "(1,3,2)"};
  std::vector<std::vector<std::size_t>> mul(6, std::vector<std::size_t>(6));
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      Perm c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[i][perms[j][x]];
      mul[i][j] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  GroupTable g = from_table("S3", names, std::move(mul));
  g.family_ = "s3";
  g.parameter_ = 6;
  return g;
}

std::size_t GroupTable::index_of(const std::string& element) const {
  auto it = std::find(elements_.begin(), elements_.end(), element);
  if (it == elements_.end()) throw Error(ErrorCode::InvalidGroup, "unknown element " + element);
  return static_cast<std::size_t>(it - elements_.begin());
}

nlohmann::json GroupTable::to_json() const {
  return {{"name", name_}, {"family", family_}, {"parameter", parameter_}, {"elements", elements_}, {"mul", mul_}};
}

GroupTable GroupTable::from_json(const nlohmann::json& j) {
  try {
    GroupTable g = from_table(j.value("name", std::string("G")), j.at("elements").get<std::vector<std::string>>(),
                              j.at("mul").get<std::vector<std::vector<std::size_t>>>());
    const std::string family = j.value("family", std::string("custom"));
    const std::size_t parameter = j.value("parameter", std::size_t{0});
    if (family != "custom") {
      // built-in character tables are only trusted for genuine built-in tables
      GroupTable ref;
      if (family == "cyclic") ref = cyclic(parameter);
      else if (family == "elementary_abelian_2") ref = elementary_abelian_2(parameter);
      else if (family == "dihedral") ref = dihedral(parameter);
      else if (family == "s3") ref = symmetric_3();
      else throw Error(ErrorCode::InvalidGroup, "unknown family " + family);
      if (!(ref == g)) throw Error(ErrorCode::InvalidGroup, "table does not match family " + family);
      g.family_ = family;
      g.parameter_ = parameter;
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("group JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

CharacterTable builtin_characters(const GroupTable& table, const Ring& ring) {
  CharacterTable ct{ring, {}, {}};
  const std::size_t n = table.order();
  auto rational = [&ring](long v) { return Scalar::from_int(ring, v); };
  if (table.family() == "cyclic") {
    const Ring k = Ring::cyclotomic(static_cast<std::int64_t>(n));
    const Scalar zeta = Scalar::zeta(k);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Scalar> row;
      for (std::size_t m = 0; m < n; ++m) row.push_back(map_cyclotomic(zeta.pow(-static_cast<long>((j * m) % n)), ring));
      ct.values.push_back(std::move(row));
      ct.labels.push_back("e" + std::to_string(j));
    }
  } else if (table.family() == "elementary_abelian_2") {
    // Gray-code order of the sign characters
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t s = i ^ (i >> 1);
      std::vector<Scalar> row;
      for (std::size_t g = 0; g < n; ++g) row.push_back(rational(std::popcount(s & g) % 2 == 0 ? 1 : -1));
      ct.values.push_back(std::move(row));
      ct.labels.push_back("f" + std::to_string(i + 1));
    }
  } else if (table.family() == "dihedral") {
    const std::size_t half = n / 2;
    auto push_linear = [&](int r_sign, int s_sign) {
      std::vector<Scalar> row;
      for (std::size_t k = 0; k < half; ++k) row.push_back(rational(r_sign == 1 || k % 2 == 0 ? 1 : -1));
      for (std::size_t k = 0; k < half; ++k) row.push_back(rational(s_sign * (r_sign == 1 || k % 2 == 0 ? 1 : -1)));
      ct.values.push_back(std::move(row));
      ct.labels.push_back("e" + std::to_string(ct.labels.size() + 1));
    };
    push_linear(1, 1);
    push_linear(1, -1);
    if (half % 2 == 0) {
      push_linear(-1, 1);
      push_linear(-1, -1);
    }
    const Ring k = Ring::cyclotomic(static_cast<std::int64_t>(half));
    const Scalar zeta = Scalar::zeta(k);
    for (std::size_t j = 1; 2 * j < half; ++j) {
      std::vector<Scalar> row;
      for (std::size_t m = 0; m < half; ++m) {
        const long e = static_cast<long>((j * m) % half);
        row.push_back(map_cyclotomic(zeta.pow(e) + zeta.pow(-e), ring));
      }
      for (std::size_t m = 0; m < half; ++m) row.push_back(Scalar::zero(ring));
      ct.values.push_back(std::move(row));
      ct.labels.push_back("e" + std::to_string(ct.labels.size() + 1));
    }
  } else if (table.family() == "s3") {
    const std::vector<std::vector<long>> v = {{1, 1, 1, 1, 1, 1}, {1, -1, -1, -1, 1, 1}, {2, 0, 0, 0, -1, -1}};
    for (const auto& row : v) {
      std::vector<Scalar> out;
      for (long x : row) out.push_back(rational(x));
      ct.values.push_back(std::move(out));
      ct.labels.push_back("e" + std::to_string(ct.labels.size() + 1));
    }
  } else {
    throw Error(ErrorCode::InvalidGroup, "no built-in character table for " + table.name());
  }
  return ct;
}

// ---------------------------------------------------------------------------

GroupRingElement::GroupRingElement(std::shared_ptr<const GroupTable> table, std::vector<Scalar> coeffs)
    : table_(std::move(table)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != table_->order()) throw Error(ErrorCode::DimensionMismatch, "coefficient count differs from group order");
  for (const auto& c : coeffs_) {
    if (!(c.ring() == coeffs_.front().ring())) throw Error(ErrorCode::IncompatibleRings, "mixed coefficient rings");
  }
}

GroupRingElement GroupRingElement::zero(std::shared_ptr<const GroupTable> table, const Ring& ring) {
  const std::size_t n = table->order();
  return {std::move(table), std::vector<Scalar>(n, Scalar::zero(ring))};
}

GroupRingElement GroupRingElement::one(std::shared_ptr<const GroupTable> table, const Ring& ring) {
  GroupRingElement e = zero(std::move(table), ring);
  e.coeffs_[0] = Scalar::one(ring);
  return e;
}

namespace {

void require_same_group(const GroupRingElement& a, const GroupRingElement& b) {
  if (a.table_ptr() != b.table_ptr() && !(a.table() == b.table())) throw Error(ErrorCode::InvalidGroup, "elements of different groups");
}

}  // namespace

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& other) {
  require_same_group(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
  return a + Scalar::from_int(b.ring(), -1) * b;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  require_same_group(a, b);
  GroupRingElement out = GroupRingElement::zero(a.table_, a.ring());
  for (std::size_t x = 0; x < a.coeffs_.size(); ++x) {
    if (a.coeffs_[x].is_zero()) continue;
    for (std::size_t y = 0; y < b.coeffs_.size(); ++y) {
      if (b.coeffs_[y].is_zero()) continue;
      out.coeffs_[a.table_->mul(x, y)] += a.coeffs_[x] * b.coeffs_[y];
    }
  }
  return out;
}

GroupRingElement operator*(const Scalar& c, GroupRingElement a) {
  for (auto& x : a.coeffs_) x *= c;
  return a;
}

bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
  return (a.table_ptr() == b.table_ptr() || a.table() == b.table()) && a.coeffs_ == b.coeffs_;
}

GroupRingElement GroupRingElement::transpose() const {
  GroupRingElement out = *this;
  for (std::size_t g = 0; g < coeffs_.size(); ++g) out.coeffs_[table_->inv(g)] = coeffs_[g];
  return out;
}

GroupRingElement GroupRingElement::star() const {
  GroupRingElement out = *this;
  for (std::size_t g = 0; g < coeffs_.size(); ++g) out.coeffs_[table_->inv(g)] = conj(coeffs_[g]);
  return out;
}

GroupRingElement GroupRingElement::conj_coeffs() const {
  GroupRingElement out = *this;
  for (auto& c : out.coeffs_) c = conj(c);
  return out;
}

std::string GroupRingElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t g = 0; g < coeffs_.size(); ++g) {
    const Scalar& c = coeffs_[g];
    if (c.is_zero()) continue;
    // reuse the polynomial printer for the coefficient and sign handling
    std::string term = LaurentPoly::constant(c).to_string();
    bool negative = !term.empty() && term[0] == '-';
    if (negative) term.erase(0, 1);
    if (g != 0) {
      if (term == "1") term.clear();
      else term += "*";
      term += table_->elements()[g];
    }
    if (first) os << (negative ? "-" : "");
    else os << (negative ? " - " : " + ");
    os << term;
    first = false;
  }
  return first ? "0" : os.str();
}

PolyMatrix embed_group_ring(const GroupRingElement& w) {
  const GroupTable& t = w.table();
  const std::size_t n = t.order();
  std::vector<std::vector<Scalar>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i].push_back(w.coeffs()[t.mul(t.inv(i), j)]);
  }
  return PolyMatrix::from_scalars(w.ring(), rows);
}

std::vector<GroupRingElement> group_ring_idempotents(std::shared_ptr<const GroupTable> table, const CharacterTable& characters) {
  const Ring& ring = characters.ring;
  const std::size_t n = table->order();
  const std::int64_t p = ring.characteristic();
  if (p != 0 && static_cast<std::int64_t>(n) % p == 0) {
    throw Error(ErrorCode::BadCharacteristic, "characteristic " + std::to_string(p) + " divides |G| = " + std::to_string(n));
  }
  const Scalar order_inv = Scalar::from_int(ring, static_cast<long>(n)).inverse();
  std::vector<GroupRingElement> out;
  GroupRingElement total = GroupRingElement::zero(table, ring);
  for (const auto& chi : characters.values) {
    if (chi.size() != n) throw Error(ErrorCode::DimensionMismatch, "character length differs from group order");
    std::vector<Scalar> coeffs(n);
    for (std::size_t g = 0; g < n; ++g) coeffs[g] = chi[0] * order_inv * chi[table->inv(g)];
    GroupRingElement e(table, std::move(coeffs));
    if (!(e * e == e) || !(e.star() == e)) throw Error(ErrorCode::InternalError, "e(chi) is not a symmetric idempotent");
    total += e;
    out.push_back(std::move(e));
  }
  if (!(total == GroupRingElement::one(table, ring))) throw Error(ErrorCode::InternalError, "idempotents do not sum to 1");
  return out;
}

std::vector<std::vector<std::size_t>> conjugate_pairing(const std::vector<GroupRingElement>& idempotents) {
  const std::size_t k = idempotents.size();
  std::vector<bool> used(k, false);
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < k; ++i) {
    if (used[i]) continue;
    const GroupRingElement c = idempotents[i].conj_coeffs();
    used[i] = true;
    if (c == idempotents[i]) {
      groups.push_back({i});
      continue;
    }
    std::size_t j = i + 1;
    while (j < k && (used[j] || !(idempotents[j] == c))) ++j;
    if (j == k) throw Error(ErrorCode::NotCompleteSet, "member " + std::to_string(i) + " has no conjugate partner");
    used[j] = true;
    groups.push_back({i, j});
  }
  return groups;
}

std::vector<GroupRingElement> realify(const std::vector<GroupRingElement>& idempotents) {
  std::vector<GroupRingElement> out;
  for (const auto& group : conjugate_pairing(idempotents)) {
    GroupRingElement sum = idempotents[group[0]];
    for (std::size_t t = 1; t < group.size(); ++t) sum += idempotents[group[t]];
    out.push_back(std::move(sum));
  }
  return out;
}

}  // namespace paraidem
