#include "paraidem/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace paraidem {

// ---------------------------------------------------------------------------
// VarSet

VarSet::VarSet() : names_(std::make_shared<const std::vector<std::string>>()) {}

VarSet::VarSet(std::vector<std::string> names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (names[i] == names[j]) throw Error(ErrorCode::ParseError, "duplicate variable " + names[i]);
    }
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<std::size_t> VarSet::index_of(const std::string& name) const {
  const auto& n = *names_;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] == name) return i;
  }
  return std::nullopt;
}

VarSet VarSet::unite(const VarSet& other) const {
  if (*this == other || other.empty()) return *this;
  if (empty()) return other;
  std::vector<std::string> merged = *names_;
  bool grew = false;
  for (const auto& name : other.names()) {
    if (!contains(name)) {
      merged.push_back(name);
      grew = true;
    }
  }
  return grew ? VarSet(std::move(merged)) : *this;
}

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly LaurentPoly::constant(const Scalar& c, const VarSet& vars) {
  LaurentPoly f(c.ring(), vars);
  if (!c.is_zero()) f.terms_.emplace(Exponents(vars.size(), 0), c);
  return f;
}

LaurentPoly LaurentPoly::monomial(const Scalar& c, const VarSet& vars, Exponents exps) {
  if (exps.size() != vars.size()) throw Error(ErrorCode::DimensionMismatch, "exponent vector length differs from VarSet");
  LaurentPoly f(c.ring(), vars);
  if (!c.is_zero()) f.terms_.emplace(std::move(exps), c);
  return f;
}

LaurentPoly LaurentPoly::variable(const Ring& ring, const std::string& name) {
  return monomial(Scalar::one(ring), VarSet({name}), {1});
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(), [](int e) { return e == 0; }) &&
         terms_.begin()->second.is_one();
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Scalar LaurentPoly::constant_term() const { return coefficient(Exponents(vars_.size(), 0)); }

Scalar LaurentPoly::coefficient(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Scalar::zero(ring_) : it->second;
}

LaurentPoly LaurentPoly::lift(const VarSet& target) const {
  if (target == vars_) return *this;
  std::vector<std::size_t> position(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto idx = target.index_of(vars_.names()[i]);
    if (!idx) {
      // variable absent from target: allowed only if it never occurs
      for (const auto& [e, c] : terms_) {
        if (e[i] != 0) throw Error(ErrorCode::DimensionMismatch, "cannot drop occurring variable " + vars_.names()[i]);
      }
      position[i] = target.size();
    } else {
      position[i] = *idx;
    }
  }
  LaurentPoly out(ring_, target);
  for (const auto& [e, c] : terms_) {
    Exponents lifted(target.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (position[i] < target.size()) lifted[position[i]] = e[i];
    }
    out.terms_.emplace(std::move(lifted), c);
  }
  return out;
}

LaurentPoly LaurentPoly::compact() const {
  std::vector<std::string> used;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const bool occurs = std::any_of(terms_.begin(), terms_.end(), [i](const auto& t) { return t.first[i] != 0; });
    if (occurs) used.push_back(vars_.names()[i]);
  }
  if (used.size() == vars_.size()) return *this;
  return lift(VarSet(std::move(used)));
}

void LaurentPoly::add_term(const Exponents& e, const Scalar& c) {
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  } else if (c.is_zero()) {
    terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

namespace {

void require_ring(const Ring& a, const Ring& b) {
  if (!(a == b)) throw Error(ErrorCode::IncompatibleRings, a.to_string() + " vs " + b.to_string());
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  require_ring(ring_, other.ring_);
  if (!(vars_ == other.vars_)) {
    const VarSet u = vars_.unite(other.vars_);
    *this = lift(u);
    const LaurentPoly rhs = other.lift(u);
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
  }
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) { return *this += -other; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  require_ring(a.ring_, b.ring_);
  if (!(a.vars_ == b.vars_)) {
    const VarSet u = a.vars_.unite(b.vars_);
    return a.lift(u) * b.lift(u);
  }
  LaurentPoly out(a.ring_, a.vars_);
  out.add_product(a, b);
  return out;
}

LaurentPoly& LaurentPoly::add_product(const LaurentPoly& a, const LaurentPoly& b) {
  require_ring(ring_, a.ring_);
  require_ring(ring_, b.ring_);
  if (!(a.vars_ == vars_) || !(b.vars_ == vars_)) return *this += a * b;
  const std::size_t k = vars_.size();
  Exponents e(k);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < k; ++i) e[i] = ea[i] + eb[i];
      thread_local Scalar c;
      c = ca;  // reuses c's storage
      c *= cb;
      auto it = terms_.find(e);
      if (it == terms_.end()) {
        terms_.emplace(e, c);
      } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
      }
    }
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) { return *this = *this * other; }

LaurentPoly& LaurentPoly::operator*=(const Scalar& c) {
  require_ring(ring_, c.ring());
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (!(a.ring_ == b.ring_)) return false;
  if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
  if (a.terms_.size() != b.terms_.size()) return false;
  const VarSet u = a.vars_.unite(b.vars_);
  return a.lift(u).terms_ == b.lift(u).terms_;
}

LaurentPoly LaurentPoly::shifted(const Exponents& shift) const {
  LaurentPoly out(ring_, vars_);
  for (const auto& [e, c] : terms_) {
    Exponents moved = e;
    for (std::size_t i = 0; i < moved.size(); ++i) moved[i] += shift[i];
    out.terms_.emplace(std::move(moved), c);
  }
  return out;
}

Exponents LaurentPoly::min_exponents() const {
  Exponents m(vars_.size(), 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
    first = false;
  }
  return m;
}

Exponents LaurentPoly::max_exponents() const {
  Exponents m(vars_.size(), 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) m[i] = first ? e[i] : std::max(m[i], e[i]);
    first = false;
  }
  return m;
}

bool LaurentPoly::has_negative_exponent() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) {
    return std::any_of(t.first.begin(), t.first.end(), [](int x) { return x < 0; });
  });
}

LaurentPoly LaurentPoly::exact_div(const LaurentPoly& g) const {
  require_ring(ring_, g.ring_);
  if (g.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (!(vars_ == g.vars_)) {
    const VarSet u = vars_.unite(g.vars_);
    return lift(u).exact_div(g.lift(u));
  }
  LaurentPoly remainder = *this;
  LaurentPoly quotient(ring_, vars_);
  const auto& [lead_e, lead_c] = *g.terms_.rbegin();
  const Scalar lead_inv = lead_c.inverse();
  while (!remainder.is_zero()) {
    const auto& [re, rc] = *remainder.terms_.rbegin();
    Exponents shift(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
      shift[i] = re[i] - lead_e[i];
      if (shift[i] < 0) throw Error(ErrorCode::InternalError, "inexact polynomial division");
    }
    const Scalar factor = rc * lead_inv;
    quotient.terms_.emplace(shift, factor);
    LaurentPoly step = g.shifted(shift);
    step *= factor;
    remainder -= step;
  }
  return quotient;
}

namespace {

bool is_integer_text(const Scalar& c) {
  return c.ring().kind() == RingKind::prime_field || (c.is_rational() && c.rational_value().get_den() == 1);
}

}  // namespace

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool is_const = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    Scalar mag = c;
    bool negative = false;
    if (c.ring().kind() != RingKind::prime_field && c.is_rational() && c.rational_value() < 0) {
      negative = true;
      mag = -c;
    }
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    std::string coeff;
    if (is_integer_text(mag)) {
      coeff = mag.to_string();
    } else {
      coeff = "(" + mag.to_string() + ")";
    }
    if (is_const) {
      out << coeff;
      continue;
    }
    bool need_star = false;
    if (!mag.is_one()) {
      out << coeff;
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) out << '*';
      out << vars_.names()[i];
      if (e[i] != 1) out << '^' << e[i];
      need_star = true;
    }
  }
  return out.str();
}

namespace {

class PolyParser {
 public:
  PolyParser(Ring ring, std::string_view text) : ring_(std::move(ring)), text_(text) {}

  LaurentPoly run(const VarSet& vars) {
    // collect terms as (coefficient, var -> exponent)
    std::vector<std::pair<Scalar, std::vector<std::pair<std::string, int>>>> terms;
    std::vector<std::string> names = vars.names();
    skip();
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek('+') || peek('-')) {
        sign = peek('-') ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected + or -");
      }
      first = false;
      Scalar coeff = Scalar::from_int(ring_, sign);
      std::vector<std::pair<std::string, int>> powers;
      while (true) {
        factor(coeff, powers);
        skip();
        if (!peek('*')) break;
        ++pos_;
        skip();
      }
      for (const auto& [name, exp] : powers) {
        if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
      }
      terms.emplace_back(std::move(coeff), std::move(powers));
      skip();
    }
    if (first) fail("empty polynomial");
    const VarSet all(names);
    LaurentPoly result(ring_, all);
    for (const auto& [coeff, powers] : terms) {
      Exponents e(all.size(), 0);
      for (const auto& [name, exp] : powers) e[*all.index_of(name)] += exp;
      result += LaurentPoly::monomial(coeff, all, e);
    }
    return result;
  }

 private:
  void factor(Scalar& coeff, std::vector<std::pair<std::string, int>>& powers) {
    if (peek('(')) {
      const std::size_t close = text_.find(')', pos_);
      if (close == std::string_view::npos) fail("unbalanced parenthesis");
      coeff *= Scalar::parse(ring_, std::string(text_.substr(pos_ + 1, close - pos_ - 1)));
      pos_ = close + 1;
      return;
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) ++pos_;
      coeff *= Scalar::parse(ring_, std::string(text_.substr(start, pos_ - start)));
      return;
    }
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      int exp = 1;
      skip();
      if (peek('^')) {
        ++pos_;
        skip();
        int s = 1;
        if (peek('-')) {
          s = -1;
          ++pos_;
        }
        const std::size_t ds = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (ds == pos_) fail("expected exponent");
        exp = s * std::stoi(std::string(text_.substr(ds, pos_ - ds)));
      }
      if (name == "zeta") {
        coeff *= Scalar::zeta(ring_).pow(exp);
      } else {
        powers.emplace_back(name, exp);
      }
      return;
    }
    fail("unexpected character");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError, why + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  Ring ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly LaurentPoly::parse(const Ring& ring, const std::string& text, const VarSet& vars) {
  return PolyParser(ring, text).run(vars);
}

// ---------------------------------------------------------------------------
// free operations

LaurentPoly star(const LaurentPoly& f) {
  LaurentPoly out(f.ring(), f.vars());
  for (const auto& [e, c] : f.terms()) {
    Exponents neg = e;
    for (auto& x : neg) x = -x;
    out += LaurentPoly::monomial(conj(c), f.vars(), std::move(neg));
  }
  return out;
}

Assignment& Assignment::set(const std::string& var, const Scalar& value) {
  values.insert_or_assign(var, LaurentPoly::constant(value));
  return *this;
}

Assignment& Assignment::set(const std::string& var, const LaurentPoly& value) {
  values.insert_or_assign(var, value);
  return *this;
}

namespace {

LaurentPoly power_of(const LaurentPoly& value, int exp, const std::string& var) {
  if (exp >= 0) {
    LaurentPoly result = LaurentPoly::constant(Scalar::one(value.ring()), value.vars());
    for (int i = 0; i < exp; ++i) result *= value;
    return result;
  }
  if (value.terms().size() != 1) {
    throw Error(ErrorCode::NonInvertibleValue, "value for " + var + " is not invertible but occurs with a negative exponent");
  }
  const auto& [e, c] = *value.terms().begin();
  Exponents inv = e;
  for (auto& x : inv) x = -x;
  const LaurentPoly inverse = LaurentPoly::monomial(c.inverse(), value.vars(), inv);
  return power_of(inverse, -exp, var);
}

}  // namespace

LaurentPoly substitute(const LaurentPoly& f, const Assignment& assignment) {
  std::vector<std::string> keep;
  for (const auto& name : f.vars().names()) {
    if (!assignment.values.contains(name)) keep.push_back(name);
  }
  for (const auto& [name, value] : assignment.values) {
    if (!(value.ring() == f.ring())) throw Error(ErrorCode::IncompatibleRings, "value for " + name + " lives in " + value.ring().to_string());
    if (value.is_zero()) throw Error(ErrorCode::ZeroAssigned, "zero assigned to " + name);
  }
  const VarSet rest(keep);
  LaurentPoly result(f.ring(), rest);
  for (const auto& [e, c] : f.terms()) {
    Exponents base(rest.size(), 0);
    LaurentPoly term = LaurentPoly::constant(c, rest);
    for (std::size_t i = 0; i < e.size(); ++i) {
      const std::string& name = f.vars().names()[i];
      auto it = assignment.values.find(name);
      if (it == assignment.values.end()) {
        base[*rest.index_of(name)] = e[i];
      } else if (e[i] != 0) {
        term *= power_of(it->second, e[i], name);
      }
    }
    result += term * LaurentPoly::monomial(Scalar::one(f.ring()), rest, base);
  }
  return result;
}

std::optional<UnitMonomial> is_unit_monomial(const LaurentPoly& f) {
  if (f.terms().size() != 1) return std::nullopt;
  const auto& [e, c] = *f.terms().begin();
  if (!is_unit_modulus(c)) return std::nullopt;
  return UnitMonomial{c, e};
}

}  // namespace paraidem
