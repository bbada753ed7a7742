#pragma once

// Exact scalars: rationals, elements of the cyclotomic field Q(zeta_N) in the
// power basis 1, zeta, ..., zeta^(phi(N)-1), and residues modulo a prime p.
// Every scalar carries its ring; arithmetic between different rings throws
// IncompatibleRings (use embed() to move values between rings explicitly).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "paraidem/error.hpp"

namespace paraidem {

enum class RingKind { rational, cyclotomic, prime_field };

class Ring {
 public:
  static Ring rational() { return Ring(RingKind::rational, 1); }
  static Ring cyclotomic(std::int64_t conductor);
  static Ring prime_field(std::int64_t p);

  Ring() = default;

  [[nodiscard]] RingKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::int64_t conductor() const noexcept { return kind_ == RingKind::cyclotomic ? modulus_ : 1; }
  [[nodiscard]] std::int64_t characteristic() const noexcept { return kind_ == RingKind::prime_field ? modulus_ : 0; }
  /// Dimension over the prime field: phi(N) for Q(zeta_N), 1 otherwise.
  [[nodiscard]] std::size_t degree() const;

  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] nlohmann::json to_json() const;
  static Ring from_json(const nlohmann::json& j);

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  Ring(RingKind kind, std::int64_t modulus) : kind_(kind), modulus_(modulus) {}

  RingKind kind_ = RingKind::rational;
  std::int64_t modulus_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Ring& ring);

class Scalar {
 public:
  /// Rational zero.
  Scalar() : q_(1) {}

  static Scalar zero(const Ring& ring);
  static Scalar one(const Ring& ring);
  static Scalar from_int(const Ring& ring, long value);
  static Scalar from_rational(const Ring& ring, const mpq_class& value);
  /// The generator zeta_N of Q(zeta_N).
  static Scalar zeta(const Ring& ring);
  /// Cyclotomic element from arbitrary-length coefficients sum c_k zeta^k.
  static Scalar from_zeta_powers(const Ring& ring, const std::vector<mpq_class>& coeffs);

  [[nodiscard]] const Ring& ring() const noexcept { return ring_; }
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_one() const;
  /// True when the value lies in the prime subfield (Q or F_p).
  [[nodiscard]] bool is_rational() const;
  /// Valid only when is_rational(); for F_p returns the residue.
  [[nodiscard]] mpq_class rational_value() const;
  [[nodiscard]] std::int64_t residue() const { return r_; }
  /// Power-basis coefficients (length 1 for Q, phi(N) for cyclotomics).
  [[nodiscard]] const std::vector<mpq_class>& coefficients() const { return q_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  [[nodiscard]] Scalar inverse() const;
  [[nodiscard]] Scalar pow(long exponent) const;

  /// Canonical text form; cyclotomic values are written in the symbol `zeta`.
  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] nlohmann::json to_json() const;
  static Scalar from_json(const Ring& ring, const nlohmann::json& j);
  /// Parses "n", "n/d", or a zeta expression such as "1/2 - 1/2*zeta^2".
  static Scalar parse(const Ring& ring, const std::string& text);

 private:
  friend struct ScalarAccess;

  Ring ring_;
  std::vector<mpq_class> q_;
  std::int64_t r_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& a);

/// Involution: complex conjugation on cyclotomics, identity elsewhere.
Scalar conj(const Scalar& a);
/// a * conj(a) == 1.
bool is_unit_modulus(const Scalar& a);
/// A square root of 2, or NoSquareRoot.
Scalar sqrt2(const Ring& ring);
/// A square root of a, or NoSquareRoot. Cyclotomic support covers rational
/// radicands (built from Gauss sums); F_p returns the root in [0, p/2].
Scalar sqrt(const Scalar& a);
std::optional<Scalar> try_sqrt(const Scalar& a);
/// A primitive n-th root of unity in the ring, or NoSuchRoot.
Scalar root_of_unity(const Ring& ring, std::int64_t n);
/// Multiplicative order of a root of unity, or nullopt if a is not one
/// (search bounded by `limit`).
std::optional<std::int64_t> root_of_unity_order(const Scalar& a, std::int64_t limit);
/// Canonical inclusion: Q -> anything, Q(zeta_N) -> Q(zeta_M) for N | M.
Scalar embed(const Scalar& a, const Ring& target);
/// Ring map Q(zeta_n) -> target sending zeta_n to root_of_unity(target, n).
/// Rational values are mapped even when target has no n-th roots.
Scalar map_cyclotomic(const Scalar& a, const Ring& target);

// number theory helpers shared across modules
bool is_prime(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
std::int64_t lcm(std::int64_t a, std::int64_t b);

}  // namespace paraidem
