// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic throughout.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "paraidem/catalog.hpp"
#include "paraidem/constructors.hpp"
#include "support/oracle.hpp"
#include "support/random.hpp"

using namespace paraidem;

namespace {

// Collects failures; a criterion passes when nothing was recorded.
struct Tally {
  int cases = 0;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    ++cases;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() >= 5) failures.back() = what + " (and more)";
  }
  void expect_code(const std::function<void()>& f, ErrorCode want, const std::string& what) {
    try {
      f();
    } catch (const Error& e) {
      check(e.code() == want, what + ": got " + std::string(to_string(e.code())));
      return;
    }
    check(false, what + ": no error raised");
  }
};

const Ring Q = Ring::rational();

PolyMatrix mat(const Ring& r, const std::string& scale, const std::vector<std::vector<std::string>>& rows) {
  return PolyMatrix::parse(r, rows) * Scalar::parse(r, scale);
}

LaurentPoly poly(const Ring& r, const std::string& s) { return LaurentPoly::parse(r, s); }

std::vector<LaurentPoly> polys(const Ring& r, const std::vector<std::string>& s) {
  std::vector<LaurentPoly> out;
  for (const auto& x : s) out.push_back(poly(r, x));
  return out;
}

// byte-exact: equal values and identical serializations
void same(Tally& t, const PolyMatrix& got, const PolyMatrix& want, const std::string& what) {
  t.check(got == want && got.to_json().dump() == want.to_json().dump() && got.to_string() == want.to_string(), what);
}

void same_set(Tally& t, const IdempotentSet& got, const std::vector<PolyMatrix>& want, const std::string& what) {
  if (got.size() != want.size()) {
    t.check(false, what + ": size");
    return;
  }
  for (std::size_t i = 0; i < want.size(); ++i) same(t, got.members[i], want[i], what + " member " + std::to_string(i + 1));
}

IdempotentSet reduce_set(const IdempotentSet& s, const Ring& target) {
  IdempotentSet out = s;
  for (auto& m : out.members) m = map_entries(m, target);
  return out;
}

PolyMatrix basis_413(const Ring& r) { return PolyMatrix::parse(r, {{"2", "1", "2"}, {"1", "2", "-2"}, {"2", "-2", "-1"}}); }

// 1
Tally printed_matrices() {
  Tally t;
  const auto p = from_orthonormal_basis(basis_413(Q) * Scalar::parse(Q, "1/3"));
  same_set(t, p,
           {mat(Q, "1/9", {{"4", "2", "4"}, {"2", "1", "2"}, {"4", "2", "4"}}),
            mat(Q, "1/9", {{"1", "2", "-2"}, {"2", "4", "-4"}, {"-2", "-4", "4"}}),
            mat(Q, "1/9", {{"4", "-4", "-2"}, {"-4", "4", "2"}, {"-2", "2", "1"}})},
           "P1,P2,P3");

  const auto c2 = group_set(GroupTable::cyclic(2), Q);
  same_set(t, c2, {mat(Q, "1/2", {{"1", "1"}, {"1", "1"}}), mat(Q, "1/2", {{"1", "-1"}, {"-1", "1"}})}, "C2 E0,E1");
  same(t, monomial_sum(c2, polys(Q, {"1", "z"})), mat(Q, "1/2", {{"1 + z", "1 - z"}, {"1 - z", "1 + z"}}), "C2 W(z)");

  const auto s3 = group_set(GroupTable::symmetric_3(), Q);
  same_set(t, s3,
           {mat(Q, "1/6", std::vector<std::vector<std::string>>(6, std::vector<std::string>(6, "1"))),
            mat(Q, "1/6",
                {{"1", "-1", "-1", "-1", "1", "1"}, {"-1", "1", "1", "1", "-1", "-1"}, {"-1", "1", "1", "1", "-1", "-1"},
                 {"-1", "1", "1", "1", "-1", "-1"}, {"1", "-1", "-1", "-1", "1", "1"}, {"1", "-1", "-1", "-1", "1", "1"}}),
            mat(Q, "1/3",
                {{"2", "0", "0", "0", "-1", "-1"}, {"0", "2", "-1", "-1", "0", "0"}, {"0", "-1", "2", "-1", "0", "0"},
                 {"0", "-1", "-1", "2", "0", "0"}, {"-1", "0", "0", "0", "2", "-1"}, {"-1", "0", "0", "0", "-1", "2"}})},
           "S3 E1,E2,E3");
  t.check(s3.labels == std::vector<std::string>{"e1", "e2", "e3"}, "S3 labels");

  const Ring f5 = Ring::prime_field(5);
  same_set(t, from_orthogonal_basis(basis_413(f5)),
           {PolyMatrix::parse(f5, {{"1", "3", "1"}, {"3", "4", "3"}, {"1", "3", "1"}}),
            PolyMatrix::parse(f5, {{"4", "3", "2"}, {"3", "1", "4"}, {"2", "4", "1"}}),
            PolyMatrix::parse(f5, {{"1", "4", "2"}, {"4", "1", "3"}, {"2", "3", "4"}})},
           "F5 set");
  same_set(t, reduce_set(p, f5),
           {PolyMatrix::parse(f5, {{"1", "3", "1"}, {"3", "4", "3"}, {"1", "3", "1"}}),
            PolyMatrix::parse(f5, {{"4", "3", "2"}, {"3", "1", "4"}, {"2", "4", "1"}}),
            PolyMatrix::parse(f5, {{"1", "4", "2"}, {"4", "1", "3"}, {"2", "3", "4"}})},
           "F5 set by reduction of P1,P2,P3");

  const Ring f7 = Ring::prime_field(7);
  same_set(t, from_orthogonal_basis(basis_413(f7)),
           {PolyMatrix::parse(f7, {{"2", "1", "2"}, {"1", "4", "1"}, {"2", "1", "2"}}),
            PolyMatrix::parse(f7, {{"4", "1", "6"}, {"1", "2", "5"}, {"6", "5", "2"}}),
            PolyMatrix::parse(f7, {{"2", "5", "6"}, {"5", "2", "1"}, {"6", "1", "4"}})},
           "first F7 set");
  same_set(t, from_orthogonal_basis(PolyMatrix::parse(f7, {{"1", "2", "1"}, {"1", "-1", "1"}, {"1", "0", "-1"}})),
           {PolyMatrix::parse(f7, {{"6", "5", "6"}, {"5", "3", "5"}, {"6", "5", "6"}}),
            PolyMatrix::parse(f7, {{"5", "2", "5"}, {"2", "5", "2"}, {"5", "2", "5"}}),
            PolyMatrix::parse(f7, {{"4", "0", "3"}, {"0", "0", "0"}, {"3", "0", "4"}})},
           "second F7 set");

  const auto lp = from_matrix_rows(monomial_sum(c2, polys(Q, {"x", "y"})));
  same_set(t, lp,
           {mat(Q, "1/4", {{"2 + x^-1*y + x*y^-1", "x*y^-1 - x^-1*y"}, {"x^-1*y - x*y^-1", "2 - x^-1*y - x*y^-1"}}),
            mat(Q, "1/4", {{"2 - x^-1*y - x*y^-1", "x^-1*y - x*y^-1"}, {"x*y^-1 - x^-1*y", "2 + x^-1*y + x*y^-1"}})},
           "Laurent P1,P2");
  return t;
}

// 2
Tally catalog_verification() {
  Tally t;
  for (const auto& o : run_catalog()) {
    std::string why;
    for (const auto& m : o.mismatches) why += " " + m.where;
    t.check(o.ok, o.id + ":" + why);
  }
  const auto c2 = group_set(GroupTable::cyclic(2), Q);
  const auto w = pseudo_from_rows(monomial_sum(c2, polys(Q, {"x", "y"})), polys(Q, {"z", "t"}));
  const auto c = monomial_clear(w);
  t.check(c.q.to_string().find("^-") == std::string::npos, "Q is a polynomial matrix");
  t.check(c.q * (c.m * adjoint(w)) == PolyMatrix::identity(Q, 2) * poly(Q, "x^2*y^2"), "Q (xy W)^* cleared = x^2 y^2 I");
  t.check(is_pseudo_paraunitary(c.q, c.m).has_value() && *is_pseudo_paraunitary(c.q, c.m) == poly(Q, "x^2*y^2"),
          "Q Q^* = x^2 y^2 I");
  t.check(is_pseudo_paraunitary(w)->is_one(), "W W^* = I");
  return t;
}

// 3
Tally rank_and_determinant() {
  Tally t;
  const auto s3 = group_set(GroupTable::symmetric_3(), Q);
  t.check(rank_profile(s3) == std::vector<std::size_t>{1, 1, 4}, "S3 ranks");
  for (const auto& e : s3.members) t.check(trace(e).rational_value() == mpq_class(static_cast<long>(rank(e))), "rank = trace");
  const auto m = linear_combination(polys(Q, {"2", "3", "5"}), s3);
  t.check(determinant(m).to_string() == "3750", "det(2E1 + 3E2 + 5E3) = 3750");
  t.check(oracle::cofactor_det(m).to_string() == "3750", "cofactor oracle 3750");

  std::vector<IdempotentSet> sets;
  for (std::size_t n = 2; n <= 9; ++n) sets.push_back(group_set(GroupTable::cyclic(n), Ring::cyclotomic(static_cast<std::int64_t>(n))));
  // real sets are rational only where cos(2 pi / n) is
  for (std::size_t n : {2, 3, 4, 6}) sets.push_back(group_set(GroupTable::cyclic(n), Q, true));
  for (std::size_t n : {5, 7, 8, 9}) sets.push_back(group_set(GroupTable::cyclic(n), Ring::cyclotomic(static_cast<std::int64_t>(n)), true));
  for (std::size_t k = 1; k <= 3; ++k) sets.push_back(group_set(GroupTable::elementary_abelian_2(k), Q));
  sets.push_back(group_set(GroupTable::dihedral(6), Q));
  sets.push_back(group_set(GroupTable::dihedral(8), Ring::cyclotomic(4)));
  sets.push_back(group_set(GroupTable::symmetric_3(), Ring::prime_field(7)));
  sets.push_back(from_orthonormal_basis(basis_413(Q) * Scalar::parse(Q, "1/3")));
  sets.push_back(from_orthogonal_basis(basis_413(Ring::prime_field(5))));
  sets.push_back(from_orthogonal_basis(basis_413(Ring::prime_field(7))));
  sets.push_back(diagonal_set(Q, 7));

  std::mt19937_64 rng(gen::seed() + 30);
  for (int round = 0; round < 50; ++round) {
    const auto& s = sets[static_cast<std::size_t>(round) % sets.size()];
    const Ring& r = s.members.front().ring();
    const auto ranks = rank_profile(s);
    std::vector<LaurentPoly> coeffs;
    LaurentPoly expected = LaurentPoly::constant(Scalar::one(r));
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto c = LaurentPoly::constant(gen::scalar(r, rng, false));
      coeffs.push_back(c);
      for (std::size_t k = 0; k < ranks[i]; ++k) expected = expected * c;
    }
    const auto cm = linear_combination(coeffs, s);
    const auto d = determinant(cm);
    const std::string tag = "random pair " + std::to_string(round) + " (n=" + std::to_string(s.n) + ")";
    t.check(d == expected.lift(d.vars()), tag + ": product of powers");
    t.check(d == oracle::cofactor_det(cm), tag + ": cofactor oracle");
  }
  return t;
}

// 4
Tally hadamard() {
  Tally t;
  const Ring k3 = Ring::cyclotomic(3);
  const auto c3 = group_set(GroupTable::cyclic(3), k3);
  ArrangementPlan plan;
  plan.grid = ArrangementPlan::circulant_grid(3);
  plan.cells = ArrangementPlan::cells_by_member(plan.grid, polys(k3, {"x", "y", "z"}));
  const auto w = block_arrangement(c3, plan);
  t.check(is_paraunitary(w).ok, "9x9 arrangement paraunitary");
  Assignment a;
  a.set("x", Scalar::one(k3)).set("y", Scalar::zeta(k3)).set("z", Scalar::zeta(k3).pow(2));
  const auto h = specialize_hadamard(w, a);
  t.check(h.hadamard, "H(3,9) detected");
  t.check(h.h_int * adjoint(h.h_int) == PolyMatrix::identity(k3, 9) * Scalar::from_int(k3, 9), "H' H'^* = 9 I");
  t.check(h.butson_q && *h.butson_q == 3, "Butson q = 3");

  const auto c2 = group_set(GroupTable::cyclic(2), Q);
  ArrangementPlan cells;
  cells.grid = ArrangementPlan::circulant_grid(2);
  cells.cells = {polys(Q, {"x", "y"}), polys(Q, {"z", "t"})};
  const auto wr = block_arrangement(c2, cells);
  same(t, wr, mat(Q, "1/2", {{"x", "x", "y", "-y"}, {"x", "x", "-y", "y"}, {"z", "-z", "t", "t"}, {"-z", "z", "t", "t"}}), "real 4x4 W");
  Assignment ones;
  for (const char* v : {"x", "y", "z", "t"}) ones.set(v, Scalar::one(Q));
  const auto hr = specialize_hadamard(wr, ones);
  same(t, hr.h_int, PolyMatrix::parse(Q, {{"1", "1", "1", "-1"}, {"1", "1", "-1", "1"}, {"1", "-1", "1", "1"}, {"-1", "1", "1", "1"}}), "real 4x4 H");
  t.check(hr.hadamard, "real 4x4 is Hadamard");

  const Ring k4 = Ring::cyclotomic(4);
  IdempotentSet qs;
  qs.ring = k4;
  qs.n = 2;
  qs.members = {mat(k4, "1/2", {{"1", "zeta"}, {"-zeta", "1"}}), mat(k4, "1/2", {{"1", "-zeta"}, {"zeta", "1"}})};
  qs.labels = {"Q0", "Q1"};
  t.check(verify_set(qs).ok, "complex Q0,Q1 complete");
  ArrangementPlan cc;
  cc.grid = ArrangementPlan::circulant_grid(2);
  cc.cells = {polys(k4, {"x", "y"}), polys(k4, {"z", "t"})};
  Assignment ones4;
  for (const char* v : {"x", "y", "z", "t"}) ones4.set(v, Scalar::one(k4));
  const auto hc = specialize_hadamard(block_arrangement(qs, cc), ones4);
  same(t, hc.h_int,
       PolyMatrix::parse(k4, {{"1", "zeta", "1", "-zeta"}, {"-zeta", "1", "zeta", "1"}, {"1", "-zeta", "1", "zeta"}, {"zeta", "1", "-zeta", "1"}}),
       "complex 4x4 H");
  t.check(hc.hadamard && hc.butson_q && *hc.butson_q == 4, "complex 4x4 is H(4,4)");
  return t;
}

// 5
Tally finite_field_tangles() {
  Tally t;
  const Ring f7 = Ring::prime_field(7);
  t.check(sqrt(Scalar::from_int(f7, 2)).to_string() == "3", "sqrt 2 = 3 in F7");
  const auto a = monomial_sum(from_orthogonal_basis(basis_413(f7)), polys(f7, {"x", "y", "z"}));
  const auto b = monomial_sum(from_orthogonal_basis(PolyMatrix::parse(f7, {{"1", "2", "1"}, {"1", "-1", "1"}, {"1", "0", "-1"}})),
                              polys(f7, {"t", "r", "s"}));
  for (const auto& v : TangleVariant::all()) t.check(is_paraunitary(tangle(a, b, v)).ok, "F7 tangle " + v.to_string());

  t.check(TangleVariant::all().size() == 24, "24 variants");
  std::mt19937_64 rng(gen::seed() + 50);
  for (int seed = 0; seed < 20; ++seed) {
    const Ring r = seed % 2 ? Ring::cyclotomic(8) : f7;
    const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
    const auto pa = gen::random_paraunitary(r, n, rng, {"x", "y"});
    const auto pb = gen::random_paraunitary(r, n, rng, {"y", "z"});
    for (const auto& v : TangleVariant::all()) {
      t.check(is_paraunitary(tangle(pa, pb, v)).ok, "seed " + std::to_string(seed) + " variant " + v.to_string());
    }
  }
  return t;
}

// 6
Tally property_suites(std::ostringstream& counts) {
  Tally t;
  std::mt19937_64 rng(gen::seed() + 60);
  auto report = [&](const char* name, int before) { counts << " " << name << "=" << (t.cases - before); };

  // closure of paraunitarity
  int mark = t.cases;
  for (int round = 0; round < 200; ++round) {
    const Ring r = round % 2 ? Ring::cyclotomic(8) : Ring::prime_field(7);
    const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    const auto a = gen::random_paraunitary(r, n, rng, {"x", "y"});
    const auto b = gen::random_paraunitary(r, n, rng, {"y", "z"});
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    t.check(is_paraunitary(a * b).ok && is_paraunitary(tensor(a, b)).ok && is_paraunitary(adjoint(a)).ok &&
                is_paraunitary(a.transpose()).ok && is_paraunitary(a.permute_rows(perm)).ok,
            "closure round " + std::to_string(round));
  }
  report("closure", mark);

  // verify_set on constructor outputs
  mark = t.cases;
  const Ring k = Ring::cyclotomic(4);
  const std::vector<IdempotentSet> base = {group_set(GroupTable::cyclic(2), k), group_set(GroupTable::cyclic(4), k),
                                           group_set(GroupTable::elementary_abelian_2(2), k),
                                           from_orthonormal_basis(basis_413(k) * Scalar::parse(k, "1/3")),
                                           from_orthogonal_basis(PolyMatrix::parse(k, {{"1", "zeta"}, {"1", "-zeta"}})), diagonal_set(k, 3)};
  for (int round = 0; round < 200; ++round) {
    const auto& a = base[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(base.size()) - 1))];
    IdempotentSet s;
    switch (round % 5) {
      case 0: s = realify(a); break;
      case 1: s = tensor_sets(a, base[static_cast<std::size_t>(gen::uniform(rng, 0, 2))]); break;
      case 2: {
        std::vector<std::size_t> perm(a.n);
        for (std::size_t i = 0; i < a.n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        s = conjugate_set(a, PolyMatrix::identity(k, a.n).permute_rows(perm));
        break;
      }
      case 3: {
        std::vector<LaurentPoly> w;
        for (std::size_t i = 0; i < a.size(); ++i) w.push_back(LaurentPoly::monomial(gen::unit(k, rng), VarSet({"z"}), {gen::uniform(rng, 0, 2)}));
        s = from_matrix_rows(monomial_sum(a, w));
        break;
      }
      default: {
        Partition groups = {{0}, {}};
        for (std::size_t i = 1; i < a.size(); ++i) groups[1].push_back(i);
        s = merge(a, groups);
      }
    }
    t.check(verify_set(s).ok, "constructor output round " + std::to_string(round));
  }
  report("verify_set", mark);

  // embed_group_ring is a homomorphism
  mark = t.cases;
  const std::vector<std::pair<GroupTable, Ring>> groups = {{GroupTable::cyclic(3), Ring::cyclotomic(3)},
                                                           {GroupTable::elementary_abelian_2(2), Ring::prime_field(5)},
                                                           {GroupTable::dihedral(8), Ring::cyclotomic(4)},
                                                           {GroupTable::symmetric_3(), Q}};
  for (int round = 0; round < 200; ++round) {
    const auto& [table, ring] = groups[static_cast<std::size_t>(round) % groups.size()];
    auto tp = std::make_shared<const GroupTable>(table);
    auto element = [&] {
      std::vector<Scalar> c;
      for (std::size_t i = 0; i < tp->order(); ++i) c.push_back(gen::scalar(ring, rng));
      return GroupRingElement(tp, c);
    };
    const auto u = element();
    const auto v = element();
    t.check(embed_group_ring(u * v) == embed_group_ring(u) * embed_group_ring(v) &&
                embed_group_ring(u + v) == embed_group_ring(u) + embed_group_ring(v) &&
                embed_group_ring(u.star()) == adjoint(embed_group_ring(u)),
            "homomorphism round " + std::to_string(round));
  }
  report("embedding", mark);

  // ranks add up and merging adds ranks
  mark = t.cases;
  const std::vector<IdempotentSet> rsets = {group_set(GroupTable::cyclic(5), Ring::cyclotomic(5)), group_set(GroupTable::elementary_abelian_2(3), Q),
                                            group_set(GroupTable::dihedral(6), Q), group_set(GroupTable::symmetric_3(), Ring::prime_field(7)),
                                            from_orthogonal_basis(basis_413(Ring::prime_field(5))), diagonal_set(Q, 4)};
  for (int round = 0; round < 200; ++round) {
    const auto& s = rsets[static_cast<std::size_t>(round) % rsets.size()];
    Partition parts;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto g = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(parts.size())));
      if (g == parts.size()) parts.push_back({i});
      else parts[g].push_back(i);
    }
    const auto ranks = rank_profile(s);
    const auto merged = rank_profile(merge(s, parts));
    bool ok = true;
    std::size_t total = 0;
    for (std::size_t g = 0; g < parts.size(); ++g) {
      std::size_t sum = 0;
      for (auto i : parts[g]) sum += ranks[i];
      ok = ok && merged[g] == sum;
      total += merged[g];
    }
    t.check(ok && total == s.n, "rank additivity round " + std::to_string(round));
  }
  report("ranks", mark);

  // det(W) det(W)^* = 1
  mark = t.cases;
  for (int round = 0; round < 200; ++round) {
    const Ring r = round % 2 ? Ring::cyclotomic(8) : Ring::prime_field(7);
    const auto w = gen::random_paraunitary(r, static_cast<std::size_t>(gen::uniform(rng, 1, 4)), rng, {"x", "y"});
    const auto d = determinant(w);
    t.check((d * star(d)).is_one(), "unit determinant round " + std::to_string(round));
  }
  report("determinant", mark);

  // star and substitution laws
  mark = t.cases;
  const VarSet xy({"x", "y"});
  auto random_poly = [&](const Ring& r) {
    LaurentPoly f = LaurentPoly::zero(r, xy);
    for (int i = gen::uniform(rng, 0, 4); i > 0; --i) {
      Exponents e(2);
      for (auto& x : e) x = gen::uniform(rng, -2, 2);
      f += LaurentPoly::monomial(gen::scalar(r, rng), xy, e);
    }
    return f;
  };
  for (int round = 0; round < 200; ++round) {
    const Ring r = round % 3 == 0 ? Q : round % 3 == 1 ? Ring::cyclotomic(8) : Ring::prime_field(7);
    const auto f = random_poly(r);
    const auto g = random_poly(r);
    Assignment a;
    a.set("x", gen::unit(r, rng)).set("y", gen::scalar(r, rng, false));
    t.check(star(star(f)) == f && star(f * g) == star(f) * star(g) && star(f + g) == star(f) + star(g) &&
                substitute(f * g, a) == substitute(f, a) * substitute(g, a) && substitute(f + g, a) == substitute(f, a) + substitute(g, a),
            "laurent laws round " + std::to_string(round));
  }
  report("laurent", mark);
  return t;
}

// 7
Tally negatives() {
  Tally t;
  const auto c2 = group_set(GroupTable::cyclic(2), Q);
  const auto s3 = group_set(GroupTable::symmetric_3(), Q);
  for (const char* bad : {"2*z", "1 + z", "1/2", "z - z^2"}) {
    t.check(!is_paraunitary(linear_combination(polys(Q, {bad, "1"}), c2)).ok, std::string("C2 with ") + bad);
    t.check(!is_paraunitary(linear_combination(polys(Q, {"z", bad, "1"}), s3)).ok, std::string("S3 with ") + bad);
  }
  const Ring f3 = Ring::prime_field(3);
  t.expect_code([&] { (void)factor_rank1(PolyMatrix::parse(f3, {{"2", "1"}, {"1", "2"}})); }, ErrorCode::NoSquareRoot, "F3 rank-1 factorization");
  const auto w = monomial_sum(c2, polys(Q, {"1", "z"}));
  t.expect_code([&] { (void)tangle(w, w); }, ErrorCode::NoSquareRoot, "tangle over Q");
  const Ring f5 = Ring::prime_field(5);
  t.expect_code([&] { (void)from_orthogonal_basis(PolyMatrix::parse(f5, {{"1", "2"}, {"2", "-1"}})); }, ErrorCode::IsotropicVector,
                "isotropic basis over F5");
  return t;
}

int run(int number, const char* title, double limit_s, const std::function<Tally(std::ostringstream&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream extra;
  Tally t;
  std::string error;
  try {
    t = body(extra);
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = error.empty() && t.failures.empty() && secs < limit_s;
  std::printf("%s criterion %d: %s (%d checks%s, %.2f s, limit %.0f s)\n", ok ? "PASS" : "FAIL", number, title, t.cases,
              extra.str().c_str(), secs, limit_s);
  if (!error.empty()) std::printf("    error: %s\n", error.c_str());
  for (const auto& f : t.failures) std::printf("    failed: %s\n", f.c_str());
  if (secs >= limit_s) std::printf("    over the time limit\n");
  std::fflush(stdout);
  return ok ? 0 : 1;
}

}  // namespace

int main() {
  std::printf("seed %llu\n", static_cast<unsigned long long>(gen::seed()));
  int failed = 0;
  failed += run(1, "printed matrices reproduced exactly", 1, [](auto&) { return printed_matrices(); });
  failed += run(2, "catalog verification and the cleared form", 5, [](auto&) { return catalog_verification(); });
  failed += run(3, "ranks via trace and determinant of combinations", 30, [](auto&) { return rank_and_determinant(); });
  failed += run(4, "Hadamard specializations", 2, [](auto&) { return hadamard(); });
  failed += run(5, "tangles over F7 and all variants of random pairs", 30, [](auto&) { return finite_field_tangles(); });
  failed += run(6, "seeded property suites", 120, [](auto& counts) { return property_suites(counts); });
  failed += run(7, "negative cases", 1, [](auto&) { return negatives(); });
  return failed;
}
