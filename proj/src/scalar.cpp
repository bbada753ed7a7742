#include "paraidem/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace paraidem {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IncompatibleRings: return "IncompatibleRings";
    case ErrorCode::NoSquareRoot: return "NoSquareRoot";
    case ErrorCode::NoSuchRoot: return "NoSuchRoot";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NonInvertibleValue: return "NonInvertibleValue";
    case ErrorCode::ZeroAssigned: return "ZeroAssigned";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotScalar: return "NotScalar";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::IsotropicVector: return "IsotropicVector";
    case ErrorCode::NotParaunitary: return "NotParaunitary";
    case ErrorCode::BadCharacteristic: return "BadCharacteristic";
    case ErrorCode::NotCompleteSet: return "NotCompleteSet";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::NotRankOne: return "NotRankOne";
    case ErrorCode::NotUnitModulus: return "NotUnitModulus";
    case ErrorCode::NegativeExponent: return "NegativeExponent";
    case ErrorCode::NotUnitVector: return "NotUnitVector";
    case ErrorCode::NotLatinSquare: return "NotLatinSquare";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::VariableCollision: return "VariableCollision";
    case ErrorCode::NotPseudoParaunitary: return "NotPseudoParaunitary";
    case ErrorCode::NotFullyAssigned: return "NotFullyAssigned";
    case ErrorCode::InvalidPipeline: return "InvalidPipeline";
    case ErrorCode::UnknownBinding: return "UnknownBinding";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// number theory

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::int64_t lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

namespace {

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % p);
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t p) {
  std::int64_t result = 1 % p;
  base %= p;
  if (base < 0) base += p;
  while (exp > 0) {
    if (exp & 1) result = mod_mul(result, base, p);
    base = mod_mul(base, base, p);
    exp >>= 1;
  }
  return result;
}

std::int64_t mod_reduce(const mpz_class& z, std::int64_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return r.get_si();
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  if (a % p == 0) throw Error(ErrorCode::DivisionByZero, "zero has no inverse in F_" + std::to_string(p));
  return mod_pow(a, p - 2, p);
}

// Tables for Q(zeta_N): the monic minimal polynomial Phi_N and zeta^m for m < N.
struct CyclotomicData {
  std::int64_t conductor = 1;
  std::size_t phi = 1;
  std::vector<mpq_class> minpoly;                 // ascending, length phi + 1
  std::vector<long> minpoly_int;                  // same, as machine integers
  std::vector<std::vector<mpq_class>> power;      // power[m] = zeta^m reduced
};

std::vector<mpz_class> poly_divide_exact(std::vector<mpz_class> num, const std::vector<mpz_class>& den) {
  // den monic
  std::size_t dn = den.size() - 1;
  std::vector<mpz_class> quot(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    mpz_class c = num[k];
    if (c == 0) continue;
    quot[k - dn] = c;
    for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
  }
  return quot;
}

std::recursive_mutex g_cyclo_mutex;
std::map<std::int64_t, std::vector<mpz_class>> g_minpolys;
std::map<std::int64_t, std::shared_ptr<const CyclotomicData>> g_cyclo;

const std::vector<mpz_class>& cyclotomic_polynomial(std::int64_t n) {
  std::lock_guard lock(g_cyclo_mutex);
  if (auto it = g_minpolys.find(n); it != g_minpolys.end()) return it->second;
  std::vector<mpz_class> poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d == 0) poly = poly_divide_exact(poly, cyclotomic_polynomial(d));
  }
  return g_minpolys.emplace(n, std::move(poly)).first->second;
}

void reduce_in_place(std::vector<mpq_class>& c, const CyclotomicData& data) {
  const std::size_t phi = data.phi;
  for (std::size_t k = c.size(); k-- > phi;) {
    if (c[k] == 0) continue;
    const mpq_class lead = c[k];
    for (std::size_t i = 0; i < phi; ++i) {
      const mpq_class& m = data.minpoly[i];
      if (m == 0) continue;
      if (m == 1) {
        c[k - phi + i] -= lead;
      } else if (m == -1) {
        c[k - phi + i] += lead;
      } else {
        c[k - phi + i] -= lead * m;
      }
    }
    c[k] = 0;
  }
  c.resize(phi, 0);
}

// Index of the only nonzero coefficient; 0 also for zero; npos when several.
std::size_t single_term(const std::vector<mpq_class>& c) {
  std::size_t at = 0;
  bool seen = false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (seen) return std::string::npos;
    seen = true;
    at = i;
  }
  return at;
}

const CyclotomicData& cyclotomic_data(std::int64_t n) {
  // entries are never erased, so a per-thread pointer to the last one stays valid
  thread_local const CyclotomicData* last = nullptr;
  if (last && last->conductor == n) return *last;
  std::lock_guard lock(g_cyclo_mutex);
  if (auto it = g_cyclo.find(n); it != g_cyclo.end()) {
    last = it->second.get();
    return *last;
  }
  auto data = std::make_shared<CyclotomicData>();
  data->conductor = n;
  const auto& poly = cyclotomic_polynomial(n);
  data->phi = poly.size() - 1;
  for (const auto& c : poly) {
    data->minpoly.emplace_back(c);
    data->minpoly_int.push_back(c.get_si());
  }
  data->power.reserve(static_cast<std::size_t>(n));
  for (std::int64_t m = 0; m < n; ++m) {
    std::vector<mpq_class> v(static_cast<std::size_t>(std::max<std::int64_t>(m + 1, 1)), 0);
    v[static_cast<std::size_t>(m)] = 1;
    reduce_in_place(v, *data);
    data->power.push_back(std::move(v));
  }
  last = g_cyclo.emplace(n, std::move(data)).first->second.get();
  return *last;
}

void require_same(const Ring& a, const Ring& b) {
  if (!(a == b)) throw Error(ErrorCode::IncompatibleRings, a.to_string() + " vs " + b.to_string());
}

std::string rational_text(const mpq_class& q) { return q.get_str(); }

}  // namespace

// ---------------------------------------------------------------------------
// Ring

Ring Ring::cyclotomic(std::int64_t conductor) {
  if (conductor < 1) throw Error(ErrorCode::IncompatibleRings, "cyclotomic conductor must be >= 1");
  return Ring(RingKind::cyclotomic, conductor);
}

Ring Ring::prime_field(std::int64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (p > (std::int64_t{1} << 62)) throw Error(ErrorCode::NotPrime, "prime too large");
  return Ring(RingKind::prime_field, p);
}

std::size_t Ring::degree() const {
  return kind_ == RingKind::cyclotomic ? cyclotomic_data(modulus_).phi : 1;
}

std::string Ring::to_string() const {
  switch (kind_) {
    case RingKind::rational: return "Q";
    case RingKind::cyclotomic: return "Q(zeta_" + std::to_string(modulus_) + ")";
    case RingKind::prime_field: return "F_" + std::to_string(modulus_);
  }
  return "?";
}

nlohmann::json Ring::to_json() const {
  switch (kind_) {
    case RingKind::rational: return {{"kind", "rational"}};
    case RingKind::cyclotomic: return {{"kind", "cyclotomic"}, {"conductor", modulus_}};
    case RingKind::prime_field: return {{"kind", "prime_field"}, {"p", modulus_}};
  }
  return {};
}

Ring Ring::from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rational") return rational();
    if (kind == "cyclotomic") return cyclotomic(j.at("conductor").get<std::int64_t>());
    if (kind == "prime_field") return prime_field(j.at("p").get<std::int64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad ring descriptor: ") + e.what());
  }
  throw Error(ErrorCode::ParseError, "unknown ring kind in " + j.dump());
}

std::ostream& operator<<(std::ostream& os, const Ring& ring) { return os << ring.to_string(); }

// ---------------------------------------------------------------------------
// Scalar

struct ScalarAccess {
  static Scalar make(const Ring& ring) {
    Scalar s;
    s.ring_ = ring;
    switch (ring.kind()) {
      case RingKind::rational: s.q_.assign(1, 0); break;
      case RingKind::cyclotomic: s.q_.assign(ring.degree(), 0); break;
      case RingKind::prime_field: s.q_.clear(); break;
    }
    return s;
  }
  static std::vector<mpq_class>& q(Scalar& s) { return s.q_; }
  static std::int64_t& r(Scalar& s) { return s.r_; }
};

Scalar Scalar::zero(const Ring& ring) { return ScalarAccess::make(ring); }

Scalar Scalar::one(const Ring& ring) { return from_int(ring, 1); }

Scalar Scalar::from_int(const Ring& ring, long value) { return from_rational(ring, mpq_class(value)); }

Scalar Scalar::from_rational(const Ring& ring, const mpq_class& raw) {
  if (raw.get_den() == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  mpq_class value = raw;
  value.canonicalize();
  Scalar s = ScalarAccess::make(ring);
  if (ring.kind() == RingKind::prime_field) {
    const std::int64_t p = ring.characteristic();
    const std::int64_t den = mod_reduce(value.get_den(), p);
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "denominator " + value.get_den().get_str() + " vanishes in F_" + std::to_string(p));
    s.r_ = mod_mul(mod_reduce(value.get_num(), p), mod_inverse(den, p), p);
  } else {
    s.q_[0] = value;
  }
  return s;
}

Scalar Scalar::zeta(const Ring& ring) {
  if (ring.kind() != RingKind::cyclotomic) throw Error(ErrorCode::NoSuchRoot, "zeta requires a cyclotomic ring");
  Scalar s = ScalarAccess::make(ring);
  const auto& data = cyclotomic_data(ring.conductor());
  s.q_ = data.power[static_cast<std::size_t>(1 % ring.conductor())];
  return s;
}

Scalar Scalar::from_zeta_powers(const Ring& ring, const std::vector<mpq_class>& raw) {
  std::vector<mpq_class> coeffs = raw;
  for (auto& c : coeffs) {
    if (c.get_den() == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    c.canonicalize();
  }
  if (ring.kind() != RingKind::cyclotomic) {
    if (coeffs.size() > 1 && std::any_of(coeffs.begin() + 1, coeffs.end(), [](const mpq_class& c) { return c != 0; })) {
      throw Error(ErrorCode::IncompatibleRings, "zeta powers require a cyclotomic ring");
    }
    return from_rational(ring, coeffs.empty() ? mpq_class(0) : coeffs[0]);
  }
  const auto& data = cyclotomic_data(ring.conductor());
  Scalar s = ScalarAccess::make(ring);
  const std::size_t n = static_cast<std::size_t>(ring.conductor());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    const auto& pw = data.power[k % n];
    for (std::size_t i = 0; i < data.phi; ++i) {
      if (pw[i] != 0) s.q_[i] += coeffs[k] * pw[i];
    }
  }
  return s;
}

bool Scalar::is_zero() const {
  if (ring_.kind() == RingKind::prime_field) return r_ == 0;
  return std::all_of(q_.begin(), q_.end(), [](const mpq_class& c) { return c == 0; });
}

bool Scalar::is_one() const {
  if (ring_.kind() == RingKind::prime_field) return r_ == 1;
  if (q_[0] != 1) return false;
  return std::all_of(q_.begin() + 1, q_.end(), [](const mpq_class& c) { return c == 0; });
}

bool Scalar::is_rational() const {
  if (ring_.kind() != RingKind::cyclotomic) return true;
  return std::all_of(q_.begin() + 1, q_.end(), [](const mpq_class& c) { return c == 0; });
}

mpq_class Scalar::rational_value() const {
  if (ring_.kind() == RingKind::prime_field) return mpq_class(static_cast<long>(r_));
  if (!is_rational()) throw Error(ErrorCode::IncompatibleRings, "value " + to_string() + " is not rational");
  return q_[0];
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (ring_.kind() == RingKind::prime_field) {
    s.r_ = r_ == 0 ? 0 : ring_.characteristic() - r_;
  } else {
    for (auto& c : s.q_) c = -c;
  }
  return s;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  require_same(ring_, other.ring_);
  if (ring_.kind() == RingKind::prime_field) {
    r_ += other.r_;
    if (r_ >= ring_.characteristic()) r_ -= ring_.characteristic();
  } else {
    for (std::size_t i = 0; i < q_.size(); ++i) {
      if (sgn(other.q_[i]) != 0) q_[i] += other.q_[i];
    }
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  require_same(ring_, other.ring_);
  if (ring_.kind() == RingKind::prime_field) {
    r_ -= other.r_;
    if (r_ < 0) r_ += ring_.characteristic();
  } else {
    for (std::size_t i = 0; i < q_.size(); ++i) {
      if (sgn(other.q_[i]) != 0) q_[i] -= other.q_[i];
    }
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  require_same(ring_, other.ring_);
  switch (ring_.kind()) {
    case RingKind::prime_field: r_ = mod_mul(r_, other.r_, ring_.characteristic()); break;
    case RingKind::rational: q_[0] *= other.q_[0]; break;
    case RingKind::cyclotomic: {
      const std::size_t single_a = single_term(q_);
      const std::size_t single_b = single_term(other.q_);
      if (single_b == 0) {  // other is rational
        if (other.q_[0] == 0) {
          for (auto& x : q_) x = 0;
        } else {
          for (auto& x : q_) {
            if (x != 0) x *= other.q_[0];
          }
        }
        break;
      }
      if (single_a == 0) {
        const mpq_class a = q_[0];
        q_ = other.q_;
        if (a == 0) {
          for (auto& x : q_) x = 0;
        } else {
          for (auto& x : q_) {
            if (x != 0) x *= a;
          }
        }
        break;
      }
      const auto& data = cyclotomic_data(ring_.conductor());
      const std::size_t phi = data.phi;
      thread_local std::vector<mpq_class> prod;
      thread_local mpq_class t;
      if (prod.size() < 2 * phi - 1) prod.resize(2 * phi - 1);
      for (std::size_t k = 0; k < 2 * phi - 1; ++k) mpq_set_ui(prod[k].get_mpq_t(), 0, 1);
      for (std::size_t i = 0; i < phi; ++i) {
        if (sgn(q_[i]) == 0) continue;
        for (std::size_t j = 0; j < phi; ++j) {
          if (sgn(other.q_[j]) == 0) continue;
          mpq_mul(t.get_mpq_t(), q_[i].get_mpq_t(), other.q_[j].get_mpq_t());
          mpq_add(prod[i + j].get_mpq_t(), prod[i + j].get_mpq_t(), t.get_mpq_t());
        }
      }
      // reduce mod Phi_N (monic, integer coefficients)
      for (std::size_t k = 2 * phi - 1; k-- > phi;) {
        if (sgn(prod[k]) == 0) continue;
        for (std::size_t i = 0; i < phi; ++i) {
          const long m = data.minpoly_int[i];
          if (m == 0) continue;
          const mpq_ptr dst = prod[k - phi + i].get_mpq_t();
          if (m == 1) {
            mpq_sub(dst, dst, prod[k].get_mpq_t());
          } else if (m == -1) {
            mpq_add(dst, dst, prod[k].get_mpq_t());
          } else {
            mpq_set_si(t.get_mpq_t(), m, 1);
            mpq_mul(t.get_mpq_t(), t.get_mpq_t(), prod[k].get_mpq_t());
            mpq_sub(dst, dst, t.get_mpq_t());
          }
        }
      }
      for (std::size_t i = 0; i < phi; ++i) mpq_swap(q_[i].get_mpq_t(), prod[i].get_mpq_t());
      break;
    }
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) { return *this *= other.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (!(a.ring_ == b.ring_)) return false;
  if (a.ring_.kind() == RingKind::prime_field) return a.r_ == b.r_;
  return a.q_ == b.q_;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  Scalar s = ScalarAccess::make(ring_);
  switch (ring_.kind()) {
    case RingKind::prime_field: s.r_ = mod_inverse(r_, ring_.characteristic()); return s;
    case RingKind::rational: s.q_[0] = 1 / q_[0]; return s;
    case RingKind::cyclotomic: break;
  }
  // Solve (multiplication by *this) x = 1 over Q; column j is (*this) * zeta^j.
  const std::size_t phi = q_.size();
  std::vector<std::vector<mpq_class>> m(phi, std::vector<mpq_class>(phi + 1, 0));
  Scalar basis = Scalar::one(ring_);
  const Scalar z = Scalar::zeta(ring_);
  for (std::size_t j = 0; j < phi; ++j) {
    const Scalar col = *this * basis;
    for (std::size_t i = 0; i < phi; ++i) m[i][j] = col.q_[i];
    basis *= z;
  }
  m[0][phi] = 1;
  for (std::size_t c = 0; c < phi; ++c) {
    std::size_t piv = c;
    while (piv < phi && m[piv][c] == 0) ++piv;
    if (piv == phi) throw Error(ErrorCode::InternalError, "singular multiplication matrix");
    std::swap(m[piv], m[c]);
    const mpq_class inv = 1 / m[c][c];
    for (std::size_t k = c; k <= phi; ++k) m[c][k] *= inv;
    for (std::size_t r = 0; r < phi; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const mpq_class f = m[r][c];
      for (std::size_t k = c; k <= phi; ++k) m[r][k] -= f * m[c][k];
    }
  }
  for (std::size_t i = 0; i < phi; ++i) s.q_[i] = m[i][phi];
  return s;
}

Scalar Scalar::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  Scalar result = Scalar::one(ring_);
  Scalar base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

std::string Scalar::to_string() const {
  if (ring_.kind() == RingKind::prime_field) return std::to_string(r_);
  if (is_rational()) return rational_text(q_[0]);
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < q_.size(); ++k) {
    const mpq_class& c = q_[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const mpq_class mag = abs(c);
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      out << rational_text(mag);
      continue;
    }
    if (mag != 1) out << rational_text(mag) << '*';
    out << "zeta";
    if (k > 1) out << '^' << k;
  }
  return out.str();
}

nlohmann::json Scalar::to_json() const {
  switch (ring_.kind()) {
    case RingKind::rational: return rational_text(q_[0]);
    case RingKind::prime_field: return {{"p", ring_.characteristic()}, {"v", r_}};
    case RingKind::cyclotomic: {
      nlohmann::json coeffs = nlohmann::json::array();
      for (const auto& c : q_) coeffs.push_back(rational_text(c));
      return {{"conductor", ring_.conductor()}, {"coeffs", coeffs}};
    }
  }
  return {};
}

Scalar Scalar::from_json(const Ring& ring, const nlohmann::json& j) {
  if (j.is_string()) return parse(ring, j.get<std::string>());
  if (j.is_number_integer()) return from_int(ring, j.get<long>());
  if (j.is_object() && j.contains("conductor")) {
    const auto n = j.at("conductor").get<std::int64_t>();
    const Ring source = Ring::cyclotomic(n);
    std::vector<mpq_class> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.emplace_back(parse(Ring::rational(), c.get<std::string>()).rational_value());
    if (coeffs.size() != source.degree()) throw Error(ErrorCode::ParseError, "coefficient vector length must be phi(N)");
    Scalar s = ScalarAccess::make(source);
    ScalarAccess::q(s) = coeffs;
    return embed(s, ring);
  }
  if (j.is_object() && j.contains("p")) {
    const Ring source = Ring::prime_field(j.at("p").get<std::int64_t>());
    require_same(source, ring);
    const auto v = j.at("v").get<std::int64_t>();
    if (v < 0 || v >= source.characteristic()) throw Error(ErrorCode::ParseError, "residue out of range");
    Scalar s = ScalarAccess::make(ring);
    ScalarAccess::r(s) = v;
    return s;
  }
  throw Error(ErrorCode::ParseError, "cannot read scalar from " + j.dump());
}

namespace {

class ScalarParser {
 public:
  ScalarParser(const Ring& ring, std::string_view text) : ring_(ring), text_(text) {}

  Scalar run() {
    std::vector<mpq_class> powers;
    skip();
    bool first = true;
    while (true) {
      skip();
      if (pos_ >= text_.size()) break;
      int sign = 1;
      if (text_[pos_] == '+' || text_[pos_] == '-') {
        sign = text_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected + or -");
      }
      first = false;
      skip();
      mpq_class coeff = 1;
      bool have_number = false;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        coeff = number();
        have_number = true;
        skip();
        if (peek('/')) {
          ++pos_;
          skip();
          const mpq_class den = number();
          if (den == 0) fail("zero denominator");
          coeff /= den;
        }
        skip();
      }
      std::size_t k = 0;
      if (have_number && peek('*')) {
        ++pos_;
        skip();
        if (!keyword("zeta")) fail("expected zeta after *");
        k = exponent();
      } else if (keyword("zeta")) {
        k = exponent();
      } else if (!have_number) {
        fail("expected a number or zeta");
      }
      if (powers.size() <= k) powers.resize(k + 1, 0);
      powers[k] += sign * coeff;
      skip();
    }
    if (first) fail("empty scalar");
    return Scalar::from_zeta_powers(ring_, powers);
  }

 private:
  void skip() {
    while (pos_ < text_.size() && (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '(' || text_[pos_] == ')')) ++pos_;
  }
  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
  bool keyword(std::string_view word) {
    if (text_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }
  mpq_class number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return mpq_class(mpz_class(std::string(text_.substr(start, pos_ - start))));
  }
  std::size_t exponent() {
    skip();
    if (!peek('^')) return 1;
    ++pos_;
    skip();
    const mpq_class e = number();
    return e.get_num().get_ui();
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError, why + " in scalar '" + std::string(text_) + "'");
  }

  Ring ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::parse(const Ring& ring, const std::string& text) { return ScalarParser(ring, text).run(); }

std::ostream& operator<<(std::ostream& os, const Scalar& a) { return os << a.to_string(); }

// ---------------------------------------------------------------------------
// free operations

Scalar conj(const Scalar& a) {
  if (a.ring().kind() != RingKind::cyclotomic || a.is_rational()) return a;
  const auto& data = cyclotomic_data(a.ring().conductor());
  const auto n = static_cast<std::size_t>(a.ring().conductor());
  Scalar s = Scalar::zero(a.ring());
  auto& out = ScalarAccess::q(s);
  const auto& in = a.coefficients();
  for (std::size_t k = 0; k < in.size(); ++k) {
    if (in[k] == 0) continue;
    const auto& pw = data.power[(n - k % n) % n];
    for (std::size_t i = 0; i < data.phi; ++i) {
      if (pw[i] != 0) out[i] += in[k] * pw[i];
    }
  }
  return s;
}

bool is_unit_modulus(const Scalar& a) { return (a * conj(a)).is_one(); }

namespace {

std::optional<std::int64_t> prime_sqrt(std::int64_t a, std::int64_t p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  if (p == 2) return a;
  std::int64_t root = -1;
  if (p < 1000000) {
    for (std::int64_t x = 1; x <= p / 2; ++x) {
      if (mod_mul(x, x, p) == a) {
        root = x;
        break;
      }
    }
  } else {
    if (mod_pow(a, (p - 1) / 2, p) != 1) return std::nullopt;
    // Tonelli-Shanks
    std::int64_t q = p - 1;
    std::int64_t s = 0;
    while (q % 2 == 0) {
      q /= 2;
      ++s;
    }
    std::int64_t z = 2;
    while (mod_pow(z, (p - 1) / 2, p) != p - 1) ++z;
    std::int64_t m = s;
    std::int64_t c = mod_pow(z, q, p);
    std::int64_t t = mod_pow(a, q, p);
    std::int64_t r = mod_pow(a, (q + 1) / 2, p);
    while (t != 1) {
      std::int64_t i = 0;
      std::int64_t tt = t;
      while (tt != 1) {
        tt = mod_mul(tt, tt, p);
        ++i;
      }
      std::int64_t b = c;
      for (std::int64_t k = 0; k < m - i - 1; ++k) b = mod_mul(b, b, p);
      m = i;
      c = mod_mul(b, b, p);
      t = mod_mul(t, c, p);
      r = mod_mul(r, b, p);
    }
    root = std::min(r, p - r);
  }
  if (root < 0) return std::nullopt;
  return root;
}

// sqrt of a squarefree integer m inside Q(zeta_N), or nullopt.
std::optional<Scalar> cyclotomic_sqrt_squarefree(const Ring& ring, std::int64_t m) {
  const std::int64_t n = ring.conductor();
  Scalar root = Scalar::one(ring);
  std::int64_t rest = m < 0 ? -m : m;
  std::int64_t produced = 1;  // root^2 == produced
  if (rest % 2 == 0) {
    if (n % 8 != 0) return std::nullopt;
    const Scalar z8 = root_of_unity(ring, 8);
    root *= z8 + z8.pow(7);
    produced *= 2;
    rest /= 2;
  }
  for (std::int64_t q = 3; rest > 1; q += 2) {
    if (rest % q != 0) continue;
    if (n % q != 0) return std::nullopt;
    // Gauss sum: sum_a (a/q) zeta_q^a squares to (-1)^((q-1)/2) q.
    const Scalar zq = root_of_unity(ring, q);
    Scalar gauss = Scalar::zero(ring);
    for (std::int64_t a = 1; a < q; ++a) {
      const bool residue = mod_pow(a, (q - 1) / 2, q) == 1;
      const Scalar term = zq.pow(a);
      if (residue) gauss += term; else gauss -= term;
    }
    root *= gauss;
    produced *= (q % 4 == 1) ? q : -q;
    rest /= q;
  }
  if (produced != m) {
    // produced == -m; multiply by sqrt(-1)
    if (n % 4 != 0) return std::nullopt;
    root *= root_of_unity(ring, 4);
  }
  return root;
}

}  // namespace

std::optional<Scalar> try_sqrt(const Scalar& a) {
  const Ring& ring = a.ring();
  if (a.is_zero()) return a;
  if (ring.kind() == RingKind::prime_field) {
    auto r = prime_sqrt(a.residue(), ring.characteristic());
    if (!r) return std::nullopt;
    return Scalar::from_int(ring, static_cast<long>(*r));
  }
  if (!a.is_rational()) return std::nullopt;
  const mpq_class value = a.rational_value();
  // value = num/den = num*den / den^2; split num*den into square * squarefree.
  mpz_class prod = value.get_num() * value.get_den();
  const int sign = prod < 0 ? -1 : 1;
  if (sign < 0) prod = -prod;
  mpz_class square_part = 1;
  mpz_class squarefree = 1;
  for (mpz_class p = 2; p * p <= prod; ++p) {
    while (prod % (p * p) == 0) {
      prod /= p * p;
      square_part *= p;
    }
    if (prod % p == 0) {
      prod /= p;
      squarefree *= p;
    }
  }
  squarefree *= prod;
  const mpq_class rational_factor(square_part, value.get_den());
  Scalar factor = Scalar::from_rational(ring, mpq_class(rational_factor));
  if (squarefree == 1 && sign > 0) return factor;
  if (ring.kind() == RingKind::rational) return std::nullopt;
  if (!squarefree.fits_slong_p()) return std::nullopt;
  auto root = cyclotomic_sqrt_squarefree(ring, sign * squarefree.get_si());
  if (!root) return std::nullopt;
  return factor * *root;
}

Scalar sqrt(const Scalar& a) {
  auto r = try_sqrt(a);
  if (!r) throw Error(ErrorCode::NoSquareRoot, a.to_string() + " has no square root in " + a.ring().to_string());
  return *r;
}

Scalar sqrt2(const Ring& ring) {
  if (ring.kind() == RingKind::cyclotomic) {
    if (ring.conductor() % 8 != 0) throw Error(ErrorCode::NoSquareRoot, "2 has no square root in " + ring.to_string());
    const Scalar z8 = root_of_unity(ring, 8);
    return z8 + z8.pow(7);
  }
  return sqrt(Scalar::from_int(ring, 2));
}

Scalar root_of_unity(const Ring& ring, std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::NoSuchRoot, "order must be positive");
  if (n == 1) return Scalar::one(ring);
  if (n == 2) {
    if (ring.characteristic() == 2) throw Error(ErrorCode::NoSuchRoot, "no element of order 2 in F_2");
    return -Scalar::one(ring);
  }
  switch (ring.kind()) {
    case RingKind::rational: break;
    case RingKind::cyclotomic:
      if (ring.conductor() % n == 0) {
        Scalar s = Scalar::zero(ring);
        ScalarAccess::q(s) = cyclotomic_data(ring.conductor()).power[static_cast<std::size_t>(ring.conductor() / n)];
        return s;
      }
      break;
    case RingKind::prime_field: {
      const std::int64_t p = ring.characteristic();
      if ((p - 1) % n != 0) break;
      std::vector<std::int64_t> prime_factors;
      for (std::int64_t m = n, d = 2; m > 1; ++d) {
        if (d * d > m) {
          prime_factors.push_back(m);
          break;
        }
        if (m % d == 0) {
          prime_factors.push_back(d);
          while (m % d == 0) m /= d;
        }
      }
      for (std::int64_t x = 2; x < p; ++x) {
        if (mod_pow(x, n, p) != 1) continue;
        const bool primitive = std::all_of(prime_factors.begin(), prime_factors.end(),
                                           [&](std::int64_t q) { return mod_pow(x, n / q, p) != 1; });
        if (primitive) return Scalar::from_int(ring, static_cast<long>(x));
      }
      break;
    }
  }
  throw Error(ErrorCode::NoSuchRoot, "no primitive " + std::to_string(n) + "-th root of unity in " + ring.to_string());
}

std::optional<std::int64_t> root_of_unity_order(const Scalar& a, std::int64_t limit) {
  if (a.is_zero()) return std::nullopt;
  Scalar power = a;
  for (std::int64_t k = 1; k <= limit; ++k) {
    if (power.is_one()) return k;
    power *= a;
  }
  return std::nullopt;
}

Scalar embed(const Scalar& a, const Ring& target) {
  const Ring& source = a.ring();
  if (source == target) return a;
  if (source.kind() == RingKind::rational) return Scalar::from_rational(target, a.rational_value());
  if (source.kind() == RingKind::cyclotomic && target.kind() == RingKind::cyclotomic &&
      target.conductor() % source.conductor() == 0) {
    const std::int64_t step = target.conductor() / source.conductor();
    std::vector<mpq_class> powers(static_cast<std::size_t>(step) * a.coefficients().size(), 0);
    for (std::size_t k = 0; k < a.coefficients().size(); ++k) powers[k * static_cast<std::size_t>(step)] = a.coefficients()[k];
    return Scalar::from_zeta_powers(target, powers);
  }
  throw Error(ErrorCode::IncompatibleRings, "cannot embed " + source.to_string() + " into " + target.to_string());
}

Scalar map_cyclotomic(const Scalar& a, const Ring& target) {
  if (a.ring() == target) return a;
  if (a.is_rational()) return Scalar::from_rational(target, a.rational_value());
  if (target.kind() == RingKind::cyclotomic) return embed(a, target);
  if (target.kind() == RingKind::prime_field && a.ring().kind() == RingKind::cyclotomic) {
    const Scalar omega = root_of_unity(target, a.ring().conductor());
    Scalar result = Scalar::zero(target);
    Scalar power = Scalar::one(target);
    for (const auto& c : a.coefficients()) {
      if (c != 0) result += Scalar::from_rational(target, c) * power;
      power *= omega;
    }
    return result;
  }
  throw Error(ErrorCode::NoSuchRoot, "cannot map " + a.to_string() + " into " + target.to_string());
}

}  // namespace paraidem
