// Truncated n-adic series: the left-multiplication cross rule against the
// straightening oracle, horizon bookkeeping, inverses, and matrices.
#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "jacquet/series.hpp"

using namespace jacquet;

namespace {

Rat binom(unsigned n, unsigned k) {
  Rat r(1);
  for (unsigned i = 0; i < k; ++i) r *= rat(n - i, i + 1);
  return r;
}

// sum over multi-indices j <= q of prod C(q_i, j_i) * E^(q-j) * chain(X),
// where chain applies -ad(E_1) j_1 times, then -ad(E_2), and so on. This is
// the closed form for moving a generator left across an ordered E-monomial.
Noe cross_rule(const PbwEngine& eng, size_t x_idx, const Mono& q) {
  const LieAlgebra& g = eng.algebra();
  Noe out;
  Mono j = mono_one();
  while (true) {
    Noe op = eng.gen(x_idx);
    Rat coeff(1);
    for (size_t i = 0; i < g.n_count && !op.empty(); ++i) {
      coeff *= binom(q[i], j[i]);
      for (uint8_t t = 0; t < j[i] && !op.empty(); ++t)
        op = noe_scale(rat(-1), eng.commutator(eng.gen(i), op));
    }
    if (!op.empty() && coeff != 0) {
      Mono rest = mono_one();
      for (size_t i = 0; i < g.n_count; ++i) rest[i] = static_cast<uint8_t>(q[i] - j[i]);
      noe_axpy(out, coeff, eng.mul(Noe{{rest, Rat(1)}}, op));
    }
    // advance j through the box [0, q] on the first n_count slots
    size_t pos = 0;
    while (pos < g.n_count && j[pos] == q[pos]) {
      j[pos] = 0;
      ++pos;
    }
    if (pos == g.n_count) break;
    ++j[pos];
  }
  return out;
}

TruncatedSeries random_series(const EnginePair& p, std::mt19937& rng, const Rat& horizon,
                              bool with_unit) {
  const LieAlgebra& g = p.alg;
  std::uniform_int_distribution<int> ecount(0, 2), epow(0, 2), hpow(0, 2), coef(-4, 4);
  Noe terms;
  if (with_unit) noe_add(terms, mono_one(), rat(1));
  int nterms = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < nterms; ++t) {
    Mono m = mono_one();
    for (size_t i = 0; i < g.n_count; ++i) m[g.e_index(i)] = static_cast<uint8_t>(epow(rng));
    for (size_t j = 0; j < g.rank; ++j) m[g.h_index(j)] = static_cast<uint8_t>(hpow(rng));
    if (with_unit && mono_degree(m) == 0) continue;
    bool pure_a = true;
    for (size_t i = 0; i < g.n_count; ++i)
      if (m[g.e_index(i)] > 0) pure_a = false;
    if (with_unit && pure_a) continue;  // keep level-0 part scalar so inverses exist
    int c = coef(rng);
    if (c != 0) noe_add(terms, m, rat(c));
  }
  return TruncatedSeries::from_noe(&p, terms, horizon);
}

}  // namespace

TEST_CASE("worked products of tails across E-powers") {
  auto p = make_engines("sl2r");
  const PbwEngine& eng = *p.wt;
  auto h = TruncatedSeries::from_noe(&p, eng.gen(1), rat(10));
  auto e2 = TruncatedSeries::from_noe(&p, eng.gen(0, 2), rat(10));
  auto prod = h * e2;
  Noe expect = eng.gen(0, 2);
  expect = eng.mul(expect, eng.gen(1));
  noe_axpy(expect, rat(4), eng.gen(0, 2));
  CHECK(prod.terms() == expect);
  CHECK(prod.horizon() == rat(10));  // both factors have nonnegative levels

  auto f = TruncatedSeries::from_noe(&p, eng.gen(2), rat(10));
  auto e1 = TruncatedSeries::from_noe(&p, eng.gen(0), rat(10));
  auto fe = f * e1;
  Noe expect2 = eng.mul(eng.gen(0), eng.gen(2));
  noe_axpy(expect2, rat(-1), eng.gen(1));
  CHECK(fe.terms() == expect2);
  CHECK(fe.horizon() == rat(9));  // the conjugate factor sits at level -1
}

TEST_CASE("cross rule agrees with the straightening oracle") {
  std::mt19937 rng(20240817);
  for (const auto& name : catalog_names()) {
    auto p = make_engines(name);
    const PbwEngine& eng = *p.wt;
    const LieAlgebra& g = p.alg;
    for (int iter = 0; iter < 8; ++iter) {
      Mono q = mono_one();
      for (size_t i = 0; i < g.n_count; ++i) q[i] = static_cast<uint8_t>(rng() % 3);
      for (size_t x = 0; x < g.dim; ++x) {
        Noe direct = eng.mul(eng.gen(x), Noe{{q, Rat(1)}});
        CHECK(cross_rule(eng, x, q) == direct);
      }
    }
  }
}

TEST_CASE("truncation commutes with multiplication") {
  std::mt19937 rng(20240818);
  auto p = make_engines("sl3r");
  for (int iter = 0; iter < 20; ++iter) {
    auto a = random_series(p, rng, rat(10), false);
    auto b = random_series(p, rng, rat(10), false);
    // With both factors at nonnegative levels, the product through level 5
    // only sees factor terms through level 5.
    auto big = (a * b).truncated(rat(5));
    auto small = (a.truncated(rat(5)) * b.truncated(rat(5))).truncated(rat(5));
    CHECK(big.terms() == small.terms());
    CHECK(small.horizon() == rat(5));
  }
}

TEST_CASE("products associate") {
  std::mt19937 rng(20240819);
  for (const auto& name : {"sl2r", "sp4r"}) {
    auto p = make_engines(name);
    for (int iter = 0; iter < 12; ++iter) {
      auto a = random_series(p, rng, rat(8), true);
      auto b = random_series(p, rng, rat(8), true);
      auto c = random_series(p, rng, rat(8), true);
      CHECK((a * b) * c == a * (b * c));
    }
  }
}

TEST_CASE("two-sided inverses up to the horizon") {
  std::mt19937 rng(20240820);
  for (const auto& name : catalog_names()) {
    auto p = make_engines(name);
    auto id = TruncatedSeries::one(&p, rat(8));
    for (int iter = 0; iter < 10; ++iter) {
      auto l = random_series(p, rng, rat(8), true);
      auto linv = l.inverse();
      CHECK(l * linv == id);
      CHECK(linv * l == id);
    }
  }
}

TEST_CASE("inverses require an invertible level-zero part") {
  auto p = make_engines("sl2r");
  const PbwEngine& eng = *p.wt;
  auto no_unit = TruncatedSeries::from_noe(&p, eng.gen(0), rat(6));
  CHECK_THROWS_WITH(no_unit.inverse(), "series inverse: no scalar term");
  Noe bad = eng.one();
  noe_axpy(bad, rat(1), eng.gen(1));  // 1 + H: level-0 tail beyond the scalar
  CHECK_THROWS_WITH(TruncatedSeries::from_noe(&p, bad, rat(6)).inverse(),
                    "series inverse: non-scalar term at level <= 0");
}

TEST_CASE("weight and level components partition a series") {
  auto p = make_engines("sl2r");
  const PbwEngine& eng = *p.wt;
  Noe mix = eng.gen(0, 2);                     // E^2, level 2
  noe_axpy(mix, rat(3), eng.gen(1));           // H, level 0
  noe_axpy(mix, rat(-2), eng.mul(eng.gen(0), eng.gen(2)));  // EF, level 0
  auto s = TruncatedSeries::from_noe(&p, mix, rat(9));

  auto two = s.weight_component(Weight{{rat(2)}});
  CHECK(two.terms() == eng.gen(0, 2));
  auto zero = s.level_component(rat(0));
  Noe expect_zero = noe_scale(rat(3), eng.gen(1));
  noe_axpy(expect_zero, rat(-2), eng.mul(eng.gen(0), eng.gen(2)));
  CHECK(zero.terms() == expect_zero);
  CHECK((two + zero).terms() == s.terms());
}

TEST_CASE("series matrices multiply and invert blockwise") {
  auto p = make_engines("sl2r");
  const PbwEngine& eng = *p.wt;
  Rat k(8);
  auto id = SeriesMatrix::identity(&p, 2, k);

  SeriesMatrix l(&p, 2, 2, k);
  l.at(0, 0) = TruncatedSeries::one(&p, k);
  l.at(1, 1) = TruncatedSeries::one(&p, k);
  l.at(1, 0) = TruncatedSeries::from_noe(&p, noe_scale(rat(1, 4), eng.gen(0, 2)), k);

  auto prod = l * id;
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) CHECK(prod.at(i, j).terms() == l.at(i, j).terms());

  // inverse of a unitriangular series matrix by Neumann series on entries
  SeriesMatrix n(&p, 2, 2, k);
  n.at(1, 0) = l.at(1, 0);
  auto linv = id - n;  // since n^2 = 0 here
  auto check = l * linv;
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j)
      CHECK(check.at(i, j).terms() == id.at(i, j).terms());

  auto sc = SeriesMatrix::scalar(&p, RatMat::identity(2), k);
  auto same = sc * l;
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) CHECK(same.at(i, j).terms() == l.at(i, j).terms());
}
