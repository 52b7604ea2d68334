// Boundary transport: the homogeneous level solver, the series conjugation,
// and the full map at frozen reference parameters, including resonant ones.
#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "jacquet/boundary.hpp"

using namespace jacquet;

namespace {

Rat coeff_at(const TruncatedSeries& s, const Mono& m) {
  auto it = s.terms().find(m);
  return it == s.terms().end() ? Rat(0) : it->second;
}

Mono e_power(const LieAlgebra& g, size_t slot, uint8_t k) {
  Mono m = mono_one();
  m[g.e_index(slot)] = k;
  return m;
}

RatMat diag2(const Rat& a, const Rat& b) {
  RatMat m(2, 2);
  m.at(0, 0) = a;
  m.at(1, 1) = b;
  return m;
}

bool series_one(const TruncatedSeries& s) {
  return s.terms().size() == 1 && coeff_at(s, mono_one()) == 1;
}

}  // namespace

TEST_CASE("level solver resolves the frozen corner cases") {
  SECTION("single subdiagonal entry") {
    RatMat r(2, 2);
    r.at(1, 0) = 1;
    auto sol = solve_lt_level(Rat(2), diag2(Rat(3), Rat(1)), r);
    CHECK(sol.l.at(1, 0) == rat(1, 4));
    CHECK(sol.l.at(0, 0) == 0);
    CHECK(sol.l.at(0, 1) == 0);
    CHECK(sol.l.at(1, 1) == 0);
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) CHECK(sol.t.at(i, j) == 0);
  }
  SECTION("fully resonant diagonal") {
    RatMat r(2, 2);
    r.at(0, 0) = 1;
    r.at(1, 1) = 1;
    auto sol = solve_lt_level(Rat(0), diag2(Rat(2), Rat(5)), r);
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) {
        CHECK(sol.l.at(i, j) == 0);
        CHECK(sol.t.at(i, j) == (i == j ? Rat(-1) : Rat(0)));
      }
  }
  SECTION("rejects a lower-triangular form") {
    RatMat q0(2, 2);
    q0.at(1, 0) = 1;
    CHECK_THROWS_WITH(solve_lt_level(Rat(1), q0, RatMat(2, 2)),
                      Catch::Matchers::ContainsSubstring("upper triangular"));
  }
}

TEST_CASE("level solver satisfies its defining identity on random data") {
  std::mt19937 rng(20240517);
  auto pick = [&]() { return Rat(static_cast<int>(rng() % 9) - 4); };
  for (int iter = 0; iter < 40; ++iter) {
    const size_t n = 2 + rng() % 3;
    RatMat q0(n, n), r(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        if (j >= i) q0.at(i, j) = pick();
        r.at(i, j) = pick();
      }
    const Rat lambda = pick();
    const auto sol = solve_lt_level(lambda, q0, r);
    const RatMat lhs = lambda * sol.l - (q0 * sol.l - sol.l * q0);
    const RatMat rhs = sol.t + r;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        CHECK(lhs.at(i, j) == rhs.at(i, j));
        const bool resonant = (lambda - q0.at(i, i) + q0.at(j, j)) == 0;
        if (resonant)
          CHECK(sol.l.at(i, j) == 0);
        else
          CHECK(sol.t.at(i, j) == 0);
      }
  }
}

TEST_CASE("conjugation with no perturbation is the identity transport") {
  auto p = make_engines("sl2r");
  auto bt = construct_lt(p, diag2(rat(5, 4), rat(-1, 4)), {}, {rat(1, 2)}, 10);
  CHECK(series_one(bt.l.at(0, 0)));
  CHECK(series_one(bt.l.at(1, 1)));
  CHECK(bt.l.at(0, 1).terms().empty());
  CHECK(bt.l.at(1, 0).terms().empty());
  CHECK(detail::series_matrix_is_zero(bt.t));
  CHECK(series_one(bt.linv.at(0, 0)));
  CHECK(detail::series_matrix_is_zero(bt.residual));
}

TEST_CASE("transport at a generic rank-one parameter") {
  auto p = make_engines("sl2r");
  const LieAlgebra& g = p.alg;
  SphericalModule mod(&p, Weight{{rat(3, 4)}});
  BoundaryValue bv = boundary_map(mod, 10);

  // Level-zero data: eigenbasis rows descending, forms diagonal.
  REQUIRE(bv.exponents.size() == 2);
  CHECK(bv.exponents[0] == Weight{{rat(5, 4)}});
  CHECK(bv.exponents[1] == Weight{{rat(-1, 4)}});
  CHECK(bv.bbar.at(0, 0) == rat(1, 2));
  CHECK(bv.bbar.at(0, 1) == 1);
  CHECK(bv.bbar.at(1, 0) == rat(-5, 2));
  CHECK(bv.bbar.at(1, 1) == 1);
  CHECK(bv.abar.at(0, 0) == rat(1, 3));
  CHECK(bv.abar.at(0, 1) == rat(-1, 3));
  CHECK(bv.abar.at(1, 0) == rat(5, 6));
  CHECK(bv.abar.at(1, 1) == rat(1, 6));
  CHECK(bv.qbar[0].at(0, 0) == rat(5, 2));
  CHECK(bv.qbar[0].at(1, 1) == rat(-1, 2));
  CHECK(bv.qbar[0].at(0, 1) == 0);
  CHECK(bv.separating == std::vector<long>{1});
  CHECK(bv.x_coords == std::vector<Rat>{rat(1, 2)});
  CHECK(bv.q0.at(0, 0) == rat(5, 4));
  CHECK(bv.q0.at(1, 1) == rat(-1, 4));

  // No resonances at this parameter: the transport is tame and the normal
  // forms stay scalar diagonal.
  CHECK(detail::series_matrix_is_zero(bv.t));
  for (const auto& tp : bv.tprime) CHECK(detail::series_matrix_is_zero(tp));
  CHECK(coeff_at(bv.q[0].at(0, 0), mono_one()) == rat(5, 2));
  CHECK(coeff_at(bv.q[0].at(1, 1), mono_one()) == rat(-1, 2));
  CHECK(bv.q[0].at(0, 1).terms().empty());
  CHECK(bv.q[0].at(1, 0).terms().empty());

  // The first correction layer of L, solved by hand from the level-two
  // perturbation and the eigenvalue gaps 2, 1/2, 7/2, 2.
  const Mono e2 = e_power(g, 0, 2);
  CHECK(coeff_at(bv.l.at(0, 0), e2) == rat(1, 3));
  CHECK(coeff_at(bv.l.at(0, 1), e2) == rat(-4, 3));
  CHECK(coeff_at(bv.l.at(1, 0), e2) == rat(4, 21));
  CHECK(coeff_at(bv.l.at(1, 1), e2) == rat(-1, 3));

  // Spherical vector coordinates start at the inverse eigenbasis row.
  CHECK(coeff_at(bv.a[0], mono_one()) == rat(1, 3));
  CHECK(coeff_at(bv.a[1], mono_one()) == rat(-1, 3));

  // Generators carry their level-zero eigenvectors.
  Mono h1 = mono_one();
  h1[g.h_index(0)] = 1;
  CHECK(bv.v[0].level_component(Rat(0)).terms() == Noe{{mono_one(), rat(1, 2)}, {h1, rat(1)}});
  CHECK_NOTHROW(verify_boundary(bv, mod));
}

TEST_CASE("resonance at the first even level leaves one line") {
  auto p = make_engines("sl2r");
  const LieAlgebra& g = p.alg;
  SphericalModule mod(&p, Weight{{rat(1)}});
  BoundaryValue bv = boundary_map(mod, 8);
  CHECK(bv.bbar.at(0, 0) == 1);
  CHECK(bv.bbar.at(1, 0) == -3);
  CHECK(bv.q0.at(0, 0) == rat(3, 2));
  CHECK(bv.q0.at(1, 1) == rat(-1, 2));

  const Mono e2 = e_power(g, 0, 2);
  CHECK(bv.tprime[0].at(0, 0).terms().empty());
  CHECK(bv.tprime[0].at(1, 0).terms().empty());
  CHECK(bv.tprime[0].at(1, 1).terms().empty());
  CHECK(bv.tprime[0].at(0, 1).terms() == Noe{{e2, rat(1)}});
  CHECK(bv.q[0].at(0, 1).terms() == Noe{{e2, rat(1)}});
  // The scalar transport carries half of the coroot line, since X = H/2.
  CHECK(bv.t.at(0, 1).terms() == Noe{{e2, rat(1, 2)}});
  CHECK_NOTHROW(verify_boundary(bv, mod));
}

TEST_CASE("resonance skips to the matching even level") {
  auto p = make_engines("sl2r");
  const LieAlgebra& g = p.alg;
  SphericalModule mod(&p, Weight{{rat(2)}});
  BoundaryValue bv = boundary_map(mod, 10);
  const Mono e2 = e_power(g, 0, 2);
  const Mono e4 = e_power(g, 0, 4);
  const auto& line = bv.tprime[0].at(0, 1);
  CHECK(coeff_at(line, e2) == 0);
  CHECK(coeff_at(line, e4) != 0);
  CHECK(line.terms().size() == 1);
  // Linearity of the transport in the separating element: X = H/2.
  CHECK(coeff_at(bv.t.at(0, 1), e4) * 2 == coeff_at(line, e4));
  CHECK(bv.tprime[0].at(1, 0).terms().empty());
  CHECK_NOTHROW(verify_boundary(bv, mod));
}

TEST_CASE("non-integral parameter keeps the normal form diagonal") {
  auto p = make_engines("sl2r");
  SphericalModule mod(&p, Weight{{rat(1, 2)}});
  BoundaryValue bv = boundary_map(mod, 8);
  CHECK(detail::series_matrix_is_zero(bv.t));
  for (const auto& tp : bv.tprime) CHECK(detail::series_matrix_is_zero(tp));
  CHECK(coeff_at(bv.q[0].at(0, 0), mono_one()) == rat(2));
  CHECK(bv.q[0].at(1, 1).terms().empty());  // zero eigenvalue stores no term
  CHECK_NOTHROW(verify_boundary(bv, mod));
}

TEST_CASE("rank-two transport verifies and is deterministic") {
  auto p = make_engines("sl3r");
  SphericalModule mod(&p, Weight{{rat(5, 2), rat(7, 3)}});
  BoundaryValue bv = boundary_map(mod, 4);
  REQUIRE(bv.exponents.size() == 6);
  for (size_t i = 0; i + 1 < bv.exponents.size(); ++i)
    CHECK(weight_compare(bv.exponents[i], bv.exponents[i + 1]) > 0);
  for (const auto& tp : bv.tprime) CHECK(detail::series_matrix_is_zero(tp));
  CHECK_NOTHROW(verify_boundary(bv, mod));

  BoundaryValue again = boundary_map(mod, 4);
  CHECK(again.bbar == bv.bbar);
  CHECK(again.separating == bv.separating);
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = 0; j < 6; ++j) {
      CHECK(again.l.at(i, j).terms() == bv.l.at(i, j).terms());
      CHECK(again.q[0].at(i, j).terms() == bv.q[0].at(i, j).terms());
    }
}

TEST_CASE("complex and symplectic transports verify") {
  {
    auto p = make_engines("sl2c");
    SphericalModule mod(&p, Weight{{rat(3, 4)}});
    BoundaryValue bv = boundary_map(mod, 6);
    REQUIRE(bv.v.size() == 2);
    CHECK_NOTHROW(verify_boundary(bv, mod));
  }
  {
    auto p = make_engines("sp4r");
    SphericalModule mod(&p, Weight{{rat(5, 2), rat(7, 3)}});
    BoundaryValue bv = boundary_map(mod, 4);
    REQUIRE(bv.v.size() == 8);
    CHECK_NOTHROW(verify_boundary(bv, mod));
  }
}
