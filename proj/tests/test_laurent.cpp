#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "paraidem/laurent.hpp"

using namespace paraidem;

TEST_CASE("parse and print round trip") {
  const Ring q = Ring::rational();
  const auto f = LaurentPoly::parse(q, "(1/2) + (1/2)*z^-1");
  CHECK(f.to_string() == "(1/2) + (1/2)*z^-1");
  CHECK(LaurentPoly::parse(q, f.to_string()) == f);
  CHECK(LaurentPoly::parse(q, "x*y - 3*x^2").to_string() == "-3*x^2 + x*y");
}

TEST_CASE("star is an involution and reverses products") {
  const Ring k = Ring::cyclotomic(8);
  const auto f = LaurentPoly::parse(k, "(1 + zeta)*x + y^-2");
  const auto g = LaurentPoly::parse(k, "zeta^3*y - 2");
  CHECK(star(star(f)) == f);
  CHECK(star(f * g) == star(g) * star(f));
}

TEST_CASE("unit monomial has trivial norm") {
  const Ring k = Ring::cyclotomic(4);
  const auto f = LaurentPoly::parse(k, "zeta*x^2*y^-1");
  CHECK((f * star(f)).is_one());
  CHECK(is_unit_monomial(f).has_value());
  CHECK_FALSE(is_unit_monomial(LaurentPoly::parse(k, "2*x")).has_value());
}

TEST_CASE("substitution") {
  const Ring q = Ring::rational();
  const auto f = LaurentPoly::parse(q, "x + x^-1*y");
  Assignment a;
  a.set("x", Scalar::from_int(q, -1));
  CHECK(substitute(f, a) == LaurentPoly::parse(q, "-1 - y"));
  Assignment z;
  z.set("x", Scalar::zero(q));
  CHECK_THROWS_AS(substitute(f, z), Error);
  Assignment bad;
  bad.set("x", LaurentPoly::parse(q, "1 + y"));
  CHECK_THROWS_AS(substitute(f, bad), Error);
}

TEST_CASE("exact division") {
  const Ring q = Ring::rational();
  const auto a = LaurentPoly::parse(q, "x + y");
  const auto b = LaurentPoly::parse(q, "x - 2*y^3 + 1");
  CHECK((a * b).exact_div(b) == a);
  CHECK_THROWS_AS((void)LaurentPoly::parse(q, "x + 1").exact_div(LaurentPoly::parse(q, "y")), Error);
}

#include "support/random.hpp"

namespace {

LaurentPoly random_poly(const Ring& r, const VarSet& vars, std::mt19937_64& rng) {
  LaurentPoly f = LaurentPoly::zero(r, vars);
  const int terms = gen::uniform(rng, 0, 4);
  for (int t = 0; t < terms; ++t) {
    Exponents e(vars.size());
    for (auto& x : e) x = gen::uniform(rng, -2, 2);
    f += LaurentPoly::monomial(gen::scalar(r, rng), vars, e);
  }
  return f;
}

}  // namespace

TEST_CASE("star and substitution laws on random polynomials (seeded)") {
  std::mt19937_64 rng(gen::seed() + 2);
  const VarSet vars({"x", "y"});
  int cases = 0;
  for (const Ring& r : {Ring::rational(), Ring::cyclotomic(8), Ring::prime_field(7)}) {
    for (int i = 0; i < 70; ++i) {
      const auto f = random_poly(r, vars, rng);
      const auto g = random_poly(r, vars, rng);
      CHECK(star(star(f)) == f);
      CHECK(star(f + g) == star(f) + star(g));
      CHECK(star(f * g) == star(f) * star(g));
      CHECK(f * (g + f) == f * g + f * f);
      CHECK(LaurentPoly::parse(r, f.to_string(), vars) == f);

      Assignment a;
      a.set("x", gen::unit(r, rng));
      const Scalar yv = gen::scalar(r, rng, false);
      a.set("y", yv);
      CHECK(substitute(f * g, a) == substitute(f, a) * substitute(g, a));
      CHECK(substitute(f + g, a) == substitute(f, a) + substitute(g, a));

      Assignment partial;
      partial.set("x", LaurentPoly::parse(r, "y^2"));
      CHECK(substitute(f * g, partial) == substitute(f, partial) * substitute(g, partial));
      ++cases;
    }
  }
  CHECK(cases >= 200);
}
