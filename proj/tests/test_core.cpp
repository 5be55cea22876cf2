#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "strata/cyclotomic.hpp"
#include "strata/stratum.hpp"

using namespace strata;

TEST_CASE("rational parse/print round trip") {
  CHECK(rat_str(rat_parse("-6/4")) == "-3/2");
  CHECK(rat_str(rat_parse("7")) == "7");
  CHECK(rat_parse("1/3") + rat_parse("1/6") == Rat(1, 2));
  CHECK_THROWS(rat_parse("x"));
}

TEST_CASE("cyclotomic field basics") {
  for (long k : {1L, 2L, 3L, 4L, 6L, 8L, 12L}) {
    const auto& F = CyclotomicField::get(k);
    auto z = F.zeta_pow(1);
    // zeta^k = 1
    auto p = F.one();
    for (long i = 0; i < k; ++i) p = F.mul(p, z);
    CHECK(p == F.one());
    // sum of all k-th roots counts to 0 for k > 1
    auto s = F.zero();
    for (long i = 0; i < k; ++i) s = F.add(s, F.zeta_pow(i));
    if (k > 1)
      CHECK(F.is_zero(s));
    else
      CHECK(s == F.one());
    // inverse of 1 + zeta (nonzero for these k)
    auto a = F.add(F.one(), z);
    if (!F.is_zero(a)) CHECK(F.mul(a, F.inv(a)) == F.one());
  }
  CHECK(CyclotomicField::get(12).degree() == 4);
  CHECK(CyclotomicField::get(1).degree() == 1);
}

TEST_CASE("cyclotomic rank") {
  const auto& F = CyclotomicField::get(4);  // Q(i)
  auto i = F.zeta_pow(1);
  // rows (1, i), (i, -1) are dependent: i*(1, i) = (i, -1)
  std::vector<std::vector<CyclotomicField::Elem>> rows = {
      {F.one(), i}, {i, F.neg(F.one())}};
  CHECK(F.rank(rows) == 1);
  rows.push_back({F.one(), F.one()});
  CHECK(F.rank(rows) == 2);
}

TEST_CASE("validate and degree condition") {
  auto st = make_stratum(3, {{-1, -1, -1, -1, -2}});
  CHECK(st.num_legs() == 5);
  CHECK(st.dimension() == 2);
  CHECK_THROWS_AS(make_stratum(2, {{0, -2, -1}}), DegreeMismatch);
  CHECK_THROWS_AS(make_stratum(1, {{-1, -1}}), Unstable);
  auto ok = make_stratum(1, {{2, -1, -1, -1, -1}});
  CHECK(ok.dimension() == 2);
}

TEST_CASE("power datum") {
  CHECK(make_stratum(2, {{0, -2, -2}}).power_datum() == 2);
  CHECK(make_stratum(3, {{-1, -1, -1, -1, -2}}).power_datum() == 1);
  CHECK(make_stratum(6, {{-2, -2, -2, -6}}).power_datum() == 2);
}

TEST_CASE("dimension bookkeeping") {
  CHECK(make_stratum(3, {{-1, -1, -1, -1, -2}}).dimension() == 2);
  CHECK(make_stratum(1, {{0, -1, -1}}).dimension() == 0);
  // two components, three legs each, no condition
  CHECK(make_stratum(2, {{0, -2, -2}, {0, -2, -2}}).dimension() == 1);
  CHECK(make_stratum(3, {{-1, -1, -1, -1, -2}}).encode() ==
        "3;(-2,-1,-1,-1,-1)");
}

TEST_CASE("dimension invariant under relabeling") {
  auto a = make_stratum(2, {{2, -2, -4}, {0, -2, -2}});
  auto b = make_stratum(2, {{0, -2, -2}, {-4, 2, -2}});
  CHECK(a.dimension() == b.dimension());
  CHECK(a.encode() == b.encode());
}

TEST_CASE("residue rank drop") {
  // single pole of order < -k, condition on that pole alone: already
  // forced to zero by the residue theorem
  {
    auto st = Stratum::parse("2;(2,0,-6);R:{{3}}");
    CHECK(st.residue_rank_drop() == 0);
  }
  // two poles on one component, condition pairing them: equivalent to the
  // residue theorem
  {
    auto st = Stratum::parse("2;(2,2,-4,-4);R:{{3,4}}");
    CHECK(st.residue_rank_drop() == 0);
  }
  // two poles on different components, pairing them: one new condition
  {
    auto st = Stratum::parse("2;(2,-2,-4);(2,-2,-4);R:{{3,6}}");
    CHECK(st.residue_rank_drop() == 1);
    CHECK(st.dimension() == 0);
  }
}

TEST_CASE("residue rank drop is idempotent under implied conditions") {
  // On one sheet the two fiber points of the -6 pole carry residues r, -r;
  // the residue theorem is vacuous and the single-leg condition cuts rank 1.
  auto st3 = Stratum::parse("2;(1,1,-6);R:{{3}}");
  long d0 = st3.residue_rank_drop();
  CHECK(d0 == 1);
  auto st4 = st3;
  st4.residue_parts.insert(st4.residue_parts.end(), st3.residue_parts.begin(),
                           st3.residue_parts.end());
  CHECK(st4.residue_rank_drop() == d0);
}

TEST_CASE("emptiness via forced simple pole residue") {
  // (-2, 0, -2) for k=2: each cover sheet carries two simple poles whose
  // residues cancel; nonempty.
  CHECK_FALSE(make_stratum(2, {{-2, 0, -2}}).empty());
  CHECK_FALSE(make_stratum(2, {{-2, -1, -1}}).empty());
  // Pairing the two big poles across components keeps a valid stratum.
  CHECK_FALSE(Stratum::parse("2;(2,-2,-4);(2,-2,-4);R:{{3,6}}").empty());
  // Forcing each big residue to vanish starves the simple poles: empty.
  CHECK(Stratum::parse("2;(2,-2,-4);(2,-2,-4);R:{{3},{6}}").empty());
}

TEST_CASE("stratum parse round trip") {
  auto st = Stratum::parse("3;(-1,-1,-1,-1,-2)");
  CHECK(st.k == 3);
  CHECK(st.num_legs() == 5);
  auto st2 = Stratum::parse(st.encode());
  CHECK(st2.encode() == st.encode());
  CHECK_THROWS_AS(Stratum::parse("3;(-1,-1"), ParseError);
}
