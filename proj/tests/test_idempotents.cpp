#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "paraidem/idempotents.hpp"
#include "support/random.hpp"

using namespace paraidem;

namespace {

const Ring Q = Ring::rational();

PolyMatrix scaled(const Ring& r, const std::string& factor, const std::vector<std::vector<std::string>>& rows) {
  return PolyMatrix::parse(r, rows) * Scalar::parse(r, factor);
}

PolyMatrix basis_413(const Ring& r) { return PolyMatrix::parse(r, {{"2", "1", "2"}, {"1", "2", "-2"}, {"2", "-2", "-1"}}); }

GroupRingElement random_element(const std::shared_ptr<const GroupTable>& t, const Ring& r, std::mt19937_64& rng) {
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < t->order(); ++i) c.push_back(gen::uniform(rng, 0, 2) == 0 ? Scalar::zero(r) : gen::scalar(r, rng));
  return {t, c};
}

}  // namespace

TEST_CASE("group tables") {
  const auto s3 = GroupTable::symmetric_3();
  CHECK(s3.order() == 6);
  CHECK(s3.classes().size() == 3);
  // G-matrix row of (1,2): g_2^-1 g_j
  const std::vector<std::string> row2 = {"(1,2)", "1", "(1,3,2)", "(1,2,3)", "(2,3)", "(1,3)"};
  for (std::size_t j = 0; j < 6; ++j) CHECK(s3.elements()[s3.mul(s3.inv(1), j)] == row2[j]);
  // the last row of the G-matrix
  const std::vector<std::string> row6 = {"(1,2,3)", "(1,3)", "(2,3)", "(1,2)", "(1,3,2)", "1"};
  for (std::size_t j = 0; j < 6; ++j) CHECK(s3.elements()[s3.mul(s3.inv(5), j)] == row6[j]);

  CHECK(GroupTable::dihedral(8).classes().size() == 5);
  CHECK(GroupTable::elementary_abelian_2(2).elements() == std::vector<std::string>{"1", "a", "b", "ab"});
  CHECK(GroupTable::from_json(GroupTable::cyclic(5).to_json()) == GroupTable::cyclic(5));
  CHECK_THROWS_AS(GroupTable::from_table("bad", {"1", "x"}, {{0, 1}, {1, 1}}), Error);
}

TEST_CASE("S3 idempotents reproduce the printed matrices") {
  const auto s = group_set(GroupTable::symmetric_3(), Q);
  REQUIRE(s.size() == 3);
  std::vector<std::vector<std::string>> ones(6, std::vector<std::string>(6, "1"));
  CHECK(s.members[0] == scaled(Q, "1/6", ones));
  const auto e2 = scaled(Q, "1/6", {{"1", "-1", "-1", "-1", "1", "1"},
                                    {"-1", "1", "1", "1", "-1", "-1"},
                                    {"-1", "1", "1", "1", "-1", "-1"},
                                    {"-1", "1", "1", "1", "-1", "-1"},
                                    {"1", "-1", "-1", "-1", "1", "1"},
                                    {"1", "-1", "-1", "-1", "1", "1"}});
  CHECK(s.members[1] == e2);
  const auto e3 = scaled(Q, "1/3", {{"2", "0", "0", "0", "-1", "-1"},
                                    {"0", "2", "-1", "-1", "0", "0"},
                                    {"0", "-1", "2", "-1", "0", "0"},
                                    {"0", "-1", "-1", "2", "0", "0"},
                                    {"-1", "0", "0", "0", "2", "-1"},
                                    {"-1", "0", "0", "0", "-1", "2"}});
  CHECK(s.members[2] == e3);
  CHECK(s.members[2].entry_strings()[0][4] == "-(1/3)");
  CHECK(rank_profile(s) == std::vector<std::size_t>{1, 1, 4});
  CHECK(s.labels == std::vector<std::string>{"e1", "e2", "e3"});
}

TEST_CASE("cyclic and elementary abelian idempotents") {
  auto c2 = group_set(GroupTable::cyclic(2), Q);
  CHECK(c2.members[0] == scaled(Q, "1/2", {{"1", "1"}, {"1", "1"}}));
  CHECK(c2.members[1] == scaled(Q, "1/2", {{"1", "-1"}, {"-1", "1"}}));

  const Ring k4 = Ring::cyclotomic(4);
  auto t4 = std::make_shared<const GroupTable>(GroupTable::cyclic(4));
  auto e = group_ring_idempotents(t4, builtin_characters(*t4, k4));
  const Scalar w = root_of_unity(k4, 4);
  const Scalar q = Scalar::parse(k4, "1/4");
  CHECK(e[1].coeffs() == std::vector<Scalar>{q, q * w, q * w * w, q * w * w * w});
  auto re = realify(e);
  REQUIRE(re.size() == 3);
  CHECK(re[1].to_string() == "(1/2) - (1/2)*a^2");
  CHECK_THROWS_AS(group_set(GroupTable::cyclic(4), Q), Error);

  auto c6 = group_set(GroupTable::cyclic(6), Ring::cyclotomic(6), true);
  CHECK(c6.labels == std::vector<std::string>{"e0", "e1+e5", "e2+e4", "e3"});
  for (const auto& m : c6.members) {
    for (const auto& row : m.entry_strings()) {
      for (const auto& x : row) CHECK(x.find("zeta") == std::string::npos);
    }
  }

  auto v4 = std::make_shared<const GroupTable>(GroupTable::elementary_abelian_2(2));
  auto f = group_ring_idempotents(v4, builtin_characters(*v4, Q));
  CHECK(f[0].to_string() == "(1/4) + (1/4)*a + (1/4)*b + (1/4)*ab");
  CHECK(realify(f).size() == 4);

  // tensor of two C2 sets is the C2 x C2 set up to order
  auto tens = tensor_sets(c2, c2);
  auto v4set = group_set(*v4, Q);
  for (const auto& m : tens.members) {
    CHECK(std::count(v4set.members.begin(), v4set.members.end(), m) == 1);
  }
  CHECK_THROWS_AS(group_set(GroupTable::cyclic(3), Ring::prime_field(3)), Error);
}

TEST_CASE("dihedral sets have ranks chi(1)^2") {
  for (std::size_t order : {4u, 6u, 8u, 10u, 12u}) {
    const std::size_t half = order / 2;
    const Ring r = half <= 2 ? Q : Ring::cyclotomic(static_cast<std::int64_t>(half));
    const auto s = group_set(GroupTable::dihedral(order), r);
    std::size_t total = 0;
    for (std::size_t rk : rank_profile(s)) {
      CHECK((rk == 1 || rk == 4));
      total += rk;
    }
    CHECK(total == order);
  }
}

TEST_CASE("orthonormal and orthogonal bases") {
  const auto rows = basis_413(Q) * Scalar::parse(Q, "1/3");
  const auto s = from_orthonormal_basis(rows);
  CHECK(s.members[0] == scaled(Q, "1/9", {{"4", "2", "4"}, {"2", "1", "2"}, {"4", "2", "4"}}));
  CHECK(s.members[1] == scaled(Q, "1/9", {{"1", "2", "-2"}, {"2", "4", "-4"}, {"-2", "-4", "4"}}));
  CHECK(s.members[2] == scaled(Q, "1/9", {{"4", "-4", "-2"}, {"-4", "4", "2"}, {"-2", "2", "1"}}));
  const auto hat = from_orthonormal_basis(rows, {{0}, {1, 2}});
  CHECK(rank_profile(hat) == std::vector<std::size_t>{1, 2});
  CHECK(hat.labels == std::vector<std::string>{"P1", "P2+P3"});
  CHECK(merge(s, {{0}, {1, 2}}).members == hat.members);
  CHECK(merge(s, {{0, 1, 2}}).members[0].is_identity());
  CHECK_THROWS_AS(from_orthonormal_basis(basis_413(Q)), Error);

  const Ring f5 = Ring::prime_field(5);
  const auto s5 = from_orthogonal_basis_finite(basis_413(f5));
  CHECK(s5.members[0] == PolyMatrix::parse(f5, {{"1", "3", "1"}, {"3", "4", "3"}, {"1", "3", "1"}}));
  CHECK(s5.members[1] == PolyMatrix::parse(f5, {{"4", "3", "2"}, {"3", "1", "4"}, {"2", "4", "1"}}));
  CHECK(s5.members[2] == PolyMatrix::parse(f5, {{"1", "4", "2"}, {"4", "1", "3"}, {"2", "3", "4"}}));

  const Ring f7 = Ring::prime_field(7);
  const auto s7 = from_orthogonal_basis(basis_413(f7));
  CHECK(s7.members[0] == PolyMatrix::parse(f7, {{"2", "1", "2"}, {"1", "4", "1"}, {"2", "1", "2"}}));
  CHECK(s7.members[1] == PolyMatrix::parse(f7, {{"4", "1", "6"}, {"1", "2", "5"}, {"6", "5", "2"}}));
  CHECK(s7.members[2] == PolyMatrix::parse(f7, {{"2", "5", "6"}, {"5", "2", "1"}, {"6", "1", "4"}}));
  const auto t7 = from_orthogonal_basis(PolyMatrix::parse(f7, {{"1", "2", "1"}, {"1", "-1", "1"}, {"1", "0", "-1"}}));
  CHECK(t7.members[0] == PolyMatrix::parse(f7, {{"6", "5", "6"}, {"5", "3", "5"}, {"6", "5", "6"}}));
  CHECK(t7.members[1] == PolyMatrix::parse(f7, {{"5", "2", "5"}, {"2", "5", "2"}, {"5", "2", "5"}}));
  CHECK(t7.members[2] == PolyMatrix::parse(f7, {{"4", "0", "3"}, {"0", "0", "0"}, {"3", "0", "4"}}));

  const Ring f2 = Ring::prime_field(2);
  try {
    (void)from_orthogonal_basis(PolyMatrix::parse(f2, {{"1", "1"}, {"1", "-1"}}));
    FAIL("expected IsotropicVector");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::IsotropicVector);
  }
  CHECK(from_orthogonal_basis(PolyMatrix::identity(f7, 3)).members == diagonal_set(f7, 3).members);

  // complex pair over Q(zeta_8)
  const Ring k8 = Ring::cyclotomic(8);
  const Scalar inv_r2 = sqrt2(k8).inverse();
  const auto cpx = from_orthonormal_basis(PolyMatrix::parse(k8, {{"-zeta^2", "1"}, {"zeta^2", "1"}}) * inv_r2);
  CHECK(cpx.members[0] == scaled(k8, "1/2", {{"1", "-(zeta^2)"}, {"zeta^2", "1"}}).transpose());
  CHECK(cpx.members[1] == scaled(k8, "1/2", {{"1", "-(zeta^2)"}, {"zeta^2", "1"}}));
}

TEST_CASE("paraunitary rows give Laurent idempotents") {
  const auto u = PolyMatrix::parse(Q, {{"(1/2)*x + (1/2)*y", "(1/2)*x - (1/2)*y"}, {"(1/2)*x - (1/2)*y", "(1/2)*x + (1/2)*y"}});
  const auto s = from_matrix_rows(u);
  const auto p1 = PolyMatrix::parse(Q, {{"1/2 + (1/4)*x^-1*y + (1/4)*x*y^-1", "(1/4)*x*y^-1 - (1/4)*x^-1*y"},
                                        {"(1/4)*x^-1*y - (1/4)*x*y^-1", "1/2 - (1/4)*x^-1*y - (1/4)*x*y^-1"}});
  CHECK(s.members[0] == p1);
  CHECK(verify_set(s).ok);
  CHECK_THROWS_AS(from_matrix_rows(PolyMatrix::parse(Q, {{"1", "1"}, {"0", "1"}})), Error);
}

TEST_CASE("verify_set reports violations") {
  const auto s = from_orthonormal_basis(basis_413(Q) * Scalar::parse(Q, "1/3"));
  IdempotentSet partial{Q, 3, {s.members[0]}, {"P1"}};
  const auto r = verify_set(partial);
  CHECK_FALSE(r.ok);
  CHECK(r.failures.back() == "members do not sum to the identity");
  IdempotentSet dup{Q, 3, {s.members[0], s.members[0], s.members[1]}, {}};
  CHECK_FALSE(verify_set(dup).ok);
}

TEST_CASE("conjugated sets") {
  const Ring k8 = Ring::cyclotomic(8);
  const Scalar h = sqrt2(k8).inverse();
  const auto haar = PolyMatrix::parse(k8, {{"1", "1"}, {"1", "-1"}}) * h;
  const auto cs = conjugate_set(diagonal_set(k8, 2), haar);
  CHECK(cs.members[0] == scaled(k8, "1/2", {{"1", "1"}, {"1", "1"}}));
  const auto perm = PolyMatrix::parse(Q, {{"0", "1", "0"}, {"0", "0", "1"}, {"1", "0", "0"}});
  const auto pd = conjugate_set(diagonal_set(Q, 3), perm);
  CHECK(verify_set(pd).ok);
  CHECK(pd.members[0] == diagonal_set(Q, 3).members[1]);
  CHECK_THROWS_AS(conjugate_set(diagonal_set(Q, 2), PolyMatrix::parse(Q, {{"1", "1"}, {"0", "1"}})), Error);
}

TEST_CASE("rank-one factorization") {
  const auto s = from_orthonormal_basis(basis_413(Q) * Scalar::parse(Q, "1/3"));
  const auto v = factor_rank1(s.members[0]);
  CHECK(v == PolyMatrix::parse(Q, {{"2/3"}, {"1/3"}, {"2/3"}}));
  const auto v2 = factor_rank1(s.members[1]);
  CHECK(v2 == PolyMatrix::parse(Q, {{"1/3"}, {"2/3"}, {"-2/3"}}));
  CHECK(factor_rank1(diagonal_set(Q, 2).members[0]) == PolyMatrix::parse(Q, {{"1"}, {"0"}}));
  try {
    (void)factor_rank1(PolyMatrix::parse(Ring::prime_field(3), {{"2", "1"}, {"1", "2"}}));
    FAIL("expected NoSquareRoot");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NoSquareRoot);
  }
  try {
    (void)factor_rank1(s.members[0] + s.members[1]);
    FAIL("expected NotRankOne");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotRankOne);
  }
}

TEST_CASE("embedding is a ring homomorphism (seeded)") {
  std::mt19937_64 rng(gen::seed());
  const std::vector<std::pair<GroupTable, Ring>> groups = {
      {GroupTable::cyclic(3), Ring::cyclotomic(3)}, {GroupTable::cyclic(4), Q},
      {GroupTable::elementary_abelian_2(2), Ring::prime_field(5)}, {GroupTable::dihedral(8), Ring::cyclotomic(4)},
      {GroupTable::symmetric_3(), Q}};
  int cases = 0;
  for (int round = 0; round < 50; ++round) {
    for (const auto& [table, ring] : groups) {
      auto t = std::make_shared<const GroupTable>(table);
      const auto u = random_element(t, ring, rng);
      const auto v = random_element(t, ring, rng);
      INFO(table.name(), " ", ring.to_string());
      CHECK(embed_group_ring(u * v) == embed_group_ring(u) * embed_group_ring(v));
      CHECK(embed_group_ring(u + v) == embed_group_ring(u) + embed_group_ring(v));
      CHECK(embed_group_ring(u.transpose()) == embed_group_ring(u).transpose());
      CHECK(embed_group_ring(u.star()) == adjoint(embed_group_ring(u)));
      ++cases;
    }
  }
  CHECK(cases >= 200);
}

TEST_CASE("every built-in set verifies and ranks add up (seeded merges)") {
  std::mt19937_64 rng(gen::seed() + 1);
  std::vector<IdempotentSet> sets = {
      group_set(GroupTable::cyclic(2), Q),
      group_set(GroupTable::cyclic(3), Ring::cyclotomic(3)),
      group_set(GroupTable::cyclic(5), Ring::cyclotomic(5), true),
      group_set(GroupTable::elementary_abelian_2(3), Q),
      group_set(GroupTable::dihedral(6), Q),
      group_set(GroupTable::symmetric_3(), Ring::prime_field(7)),
      from_orthogonal_basis(basis_413(Ring::prime_field(5))),
      diagonal_set(Q, 4),
  };
  int cases = 0;
  for (const auto& s : sets) {
    REQUIRE(verify_set(s).ok);
    for (int round = 0; round < 30; ++round) {
      // random partition
      Partition groups;
      for (std::size_t i = 0; i < s.size(); ++i) {
        const std::size_t g = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(groups.size())));
        if (g == groups.size()) groups.push_back({i});
        else groups[g].push_back(i);
      }
      const auto m = merge(s, groups);
      CHECK(verify_set(m).ok);
      std::size_t total = 0;
      const auto ranks = rank_profile(s);
      const auto merged_ranks = rank_profile(m);
      for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        std::size_t sum = 0;
        for (std::size_t i : groups[gi]) sum += ranks[i];
        CHECK(merged_ranks[gi] == sum);
        total += merged_ranks[gi];
      }
      CHECK(total == s.n);
      ++cases;
    }
  }
  CHECK(cases >= 200);
}

TEST_CASE("set constructors keep completeness (seeded)") {
  std::mt19937_64 rng(gen::seed() + 2);
  const Ring k = Ring::cyclotomic(4);
  const std::vector<IdempotentSet> base = {
      group_set(GroupTable::cyclic(2), k),
      group_set(GroupTable::cyclic(4), k),
      group_set(GroupTable::elementary_abelian_2(2), k),
      from_orthonormal_basis(scaled(k, "1/3", {{"2", "1", "2"}, {"1", "2", "-2"}, {"2", "-2", "-1"}})),
      from_orthogonal_basis(PolyMatrix::parse(k, {{"1", "zeta"}, {"1", "-zeta"}})),
      diagonal_set(k, 2),
  };
  int cases = 0;
  for (int round = 0; round < 200; ++round) {
    const auto& a = base[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(base.size()) - 1))];
    IdempotentSet s = a;
    switch (gen::uniform(rng, 0, 4)) {
      case 0: {
        const std::size_t orders[] = {2, 3, 4, 6, 8};
        s = realify(group_set(GroupTable::cyclic(orders[gen::uniform(rng, 0, 4)]), Ring::cyclotomic(24)));
        break;
      }
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
        s = from_matrix_rows(linear_combination(w, a));
        break;
      }
      default: {
        Partition groups = {{0}, {}};
        for (std::size_t i = 1; i < a.size(); ++i) groups[1].push_back(i);
        s = merge(a, groups);
      }
    }
    INFO("round ", round);
    CHECK(verify_set(s).ok);
    std::size_t total = 0;
    for (auto r : rank_profile(s)) total += r;
    CHECK(total == s.n);
    ++cases;
  }
  CHECK(cases >= 200);
}
