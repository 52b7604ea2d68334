// End-to-end acceptance drill: nine numbered checks covering the frozen
// rank-one values, the splitting verdicts, the rank-two direct sum, the
// invariant suite, randomized kernel batteries, the complex-case certificate,
// and the unit solver example. Prints one PASS/FAIL line per check and exits
// with the number of failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "jacquet/jacquet.hpp"

using namespace jacquet;

namespace {

int failures = 0;

struct Check {
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error("check failed: " + what);
  }
};

void criterion(int n, const std::string& desc, long budget_ms,
               const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string why;
  try {
    body(c);
  } catch (const std::exception& e) {
    ok = false;
    why = e.what();
  }
  const long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  if (ok && budget_ms > 0 && ms > budget_ms) {
    ok = false;
    why = "time budget exceeded: " + std::to_string(ms) + " ms > " + std::to_string(budget_ms);
  }
  if (ok) {
    std::printf("PASS  %d  %s (%ld ms)%s%s\n", n, desc.c_str(), ms,
                c.detail.str().empty() ? "" : " — ", c.detail.str().c_str());
  } else {
    ++failures;
    std::printf("FAIL  %d  %s (%ld ms): %s\n", n, desc.c_str(), ms, why.c_str());
  }
  std::fflush(stdout);
}

Rat diag_scalar(const SeriesMatrix& q, size_t i) {
  const auto& t = q.at(i, i).terms();
  if (t.size() != 1 || t.begin()->first != mono_one())
    throw std::runtime_error("normal form entry is not scalar");
  return t.begin()->second;
}

Mono random_mono(std::mt19937& rng, size_t ngens, unsigned maxdeg) {
  Mono m = mono_one();
  std::uniform_int_distribution<size_t> slot(0, ngens - 1);
  std::uniform_int_distribution<unsigned> deg(0, maxdeg);
  unsigned total = deg(rng);
  for (unsigned i = 0; i < total; ++i) m[slot(rng)] += 1;
  return m;
}

Noe random_noe(std::mt19937& rng, size_t ngens, unsigned maxdeg, int nterms) {
  std::uniform_int_distribution<int> coef(-5, 5);
  Noe z;
  for (int t = 0; t < nterms; ++t) {
    int c = coef(rng);
    if (c == 0) c = 1;
    noe_add(z, random_mono(rng, ngens, maxdeg), Rat(c));
  }
  return z;
}

}  // namespace

int main() {
  // 1. Rank-one reference run: exact normal form and recovery of the
  //    spherical vector from its boundary coordinates.
  criterion(1, "rank-one reference transport at lambda(H)=3/2, height 10", 30000, [](Check& c) {
    auto p = make_engines("sl2r");
    SphericalModule mod(&p, Weight{{rat(3, 4)}});
    auto bv = boundary_map(mod, 10);
    c.require(diag_scalar(bv.q[0], 0) == rat(5, 2), "Q(H) top entry is 5/2");
    c.require(diag_scalar(bv.q[0], 1) == rat(-1, 2), "Q(H) bottom entry is -1/2");
    c.require(bv.q[0].at(0, 1).terms().empty() && bv.q[0].at(1, 0).terms().empty(),
              "Q(H) is diagonal");
    verify_boundary(bv, mod);  // replays H v = Q v and u = sum a_j v_j with zero residual
    c.detail << "Q(H) = diag(5/2, -1/2), residuals empty to height 10";
  });

  // 2. Splitting at the non-integral half parameter, criterion agreement.
  criterion(2, "splitting detector and lattice criterion at lambda(H)=1", 30000, [](Check& c) {
    auto p = make_engines("sl2r");
    SphericalModule mod(&p, Weight{{rat(1, 2)}});
    auto bv = boundary_map(mod, 8);
    auto res = splitting_test(bv, mod, 0, 8);
    c.require(res.verdict == SplitVerdict::splits, "detector verdict is splits");
    auto rep = filtration_report(bv, mod);
    c.require(rep.direct_sum_by_criterion, "lattice criterion certifies the direct sum");
    c.detail << "verdict splits; criterion agrees";
  });

  // 3. Resonant coupling and non-splitting at the even integral parameter.
  criterion(3, "resonant coupling and non-splitting at lambda(H)=4", 120000, [](Check& c) {
    auto p = make_engines("sl2r");
    SphericalModule mod(&p, Weight{{rat(2)}});
    auto bv = boundary_map(mod, 12);
    const auto& coupling = bv.q[0].at(0, 1).terms();
    c.require(coupling.size() == 1, "coupling is a single monomial");
    const Mono mo = coupling.begin()->first;
    c.require(coupling.begin()->second != 0, "coupling coefficient is nonzero");
    const Weight w = p.wt->mono_weight(mo);
    c.require(w == Weight{{rat(4)}}, "coupling sits at the exponent gap 2*lambda");
    // ad-homogeneity: [H, Q01] = (2 lambda)(H) Q01 in the straightening engine
    Noe h = p.wt->gen(p.alg.h_index(0));
    Noe comm = p.wt->commutator(h, Noe{{mo, Rat(1)}});
    c.require(comm == noe_scale(p.alg.eval_at_coroot(w, 0), Noe{{mo, Rat(1)}}),
              "coupling is ad-homogeneous under the coroot");
    for (long cap : {8L, 10L, 12L}) {
      auto res = splitting_test(bv, mod, 0, cap);
      c.require(res.verdict == SplitVerdict::does_not_split_within_horizon,
                "non-splitting stable at height " + std::to_string(cap));
    }
    c.detail << "coupling = " << rat_str(coupling.begin()->second)
             << " * E^4 (ad-weight 2*lambda); no splitting at heights 8, 10, 12";
  });

  // 4. Odd integral probe: the detector runs and the report flags fire;
  //    no verdict is prescribed here, only coherence of the flags.
  criterion(4, "odd integral probe at lambda(H)=2", 120000, [](Check& c) {
    auto p = make_engines("sl2r");
    SphericalModule mod(&p, Weight{{rat(1)}});
    auto bv = boundary_map(mod, 10);
    auto rep = filtration_report(bv, mod);
    c.require(rep.rank_one && rep.r == rat(1) && rep.r_integral, "r = 1 recognized as integral");
    c.require(rep.note.find("arbitrates") != std::string::npos, "arbitration flag fires");
    c.require(rep.criterion_even == std::vector<bool>{true},
              "lattice criterion computed for the reflection");
    auto res = splitting_test(bv, mod, 0, 10);
    c.require(res.consistent_full == (res.verdict == SplitVerdict::splits),
              "verdict coheres with the system consistency");
    c.detail << "detector verdict: " << to_string(res.verdict);
  });

  // 5. Rank-two direct sum: regular pairwise gaps, diagonal normal forms,
  //    certificates for every step against both simple raising directions.
  criterion(5, "rank-two direct sum at (5/2, 7/3), height 6", 600000, [](Check& c) {
    auto p = make_engines("sl3r");
    SphericalModule mod(&p, Weight{{rat(5, 2), rat(7, 3)}});
    auto bv = boundary_map(mod, 6);
    size_t pairs = 0;
    for (size_t i = 0; i < 6; ++i)
      for (size_t j = 0; j < 6; ++j) {
        if (i == j) continue;
        c.require(!in_lattice(bv.exponents[i] + Rat(-1) * bv.exponents[j], Lattice::twoP),
                  "exponent gap escapes the even lattice");
        ++pairs;
      }
    c.require(pairs == 30, "thirty ordered exponent pairs checked");
    for (const auto& qk : bv.q)
      for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j)
          if (i != j)
            c.require(qk.at(i, j).terms().empty(), "normal forms are diagonal");
    size_t certs = 0;
    for (size_t i = 0; i < 6; ++i)
      for (size_t a = 0; a < 2; ++a) {
        relation_certificate(bv, mod, i, CompactKind::theta, a);
        ++certs;
      }
    auto rep = filtration_report(bv, mod);
    c.require(rep.steps.size() == 6, "six filtration steps");
    c.require(rep.direct_sum_by_criterion, "criterion announces the direct sum");
    verify_boundary(bv, mod);
    c.detail << certs << " certificates verified; all 30 gaps outside 2P";
  });

  // 6. Invariant suite: the center images are exactly Weyl invariant, the
  //    shift self-test selects one direction, and the staircase dimension
  //    equals the Weyl order at random regular parameters.
  criterion(6, "invariant and character-shift suite (split catalog entries)", 300000, [](Check& c) {
    std::mt19937 rng(20260819);
    size_t images = 0;
    for (auto [name, deg] : std::vector<std::pair<std::string, unsigned>>{
             {"sl2r", 2}, {"sl3r", 3}, {"sp4r", 4}}) {
      auto p = make_engines(name);
      validate_character_shift(p);
      auto inv = find_invariants(p, deg);
      c.require(!inv.empty(), "invariants found for " + name);
      for (const auto& z : inv) {
        c.require(weyl_invariant(chi_image(z, p.alg), p.alg),
                  "image exactly Weyl invariant for " + name);
        ++images;
      }
      std::uniform_int_distribution<int> num(1, 9);
      const std::vector<int> dens{2, 3, 5, 7, 11};
      for (int trial = 0; trial < 3; ++trial) {
        Weight lam = zero_weight(p.alg.rank);
        bool regular = false;
        while (!regular) {
          for (size_t k = 0; k < p.alg.rank; ++k)
            lam.c[k] = rat(num(rng), dens[static_cast<size_t>(num(rng)) % dens.size()]);
          regular = true;
          for (size_t wi = 1; wi < p.alg.weyl.size(); ++wi)
            if (p.alg.weyl[wi] * lam.c == lam.c) regular = false;
        }
        SphericalModule mod(&p, lam);
        c.require(mod.staircase().size() == p.alg.weyl.size(),
                  "staircase dimension equals the Weyl order for " + name);
      }
    }
    c.detail << images << " invariant images, all Weyl-invariant; staircase = |W| at 9 random "
                "regular parameters";
  });

  // 7. Randomized kernel batteries, every comparison exact.
  criterion(7, "kernel property batteries (100+ cases each)", 300000, [](Check& c) {
    std::mt19937 rng(424243);

    // associativity of the straightening product
    for (int t = 0; t < 100; ++t) {
      auto p = make_engines(t % 2 == 0 ? "sl2r" : "sp4r");
      const PbwEngine& e = *p.chi;
      Noe a = random_noe(rng, e.ngens(), 2, 2), b = random_noe(rng, e.ngens(), 2, 2),
          z = random_noe(rng, e.ngens(), 2, 2);
      c.require(e.mul(e.mul(a, b), z) == e.mul(a, e.mul(b, z)), "product associativity");
    }

    // Jacobi identity on every basis triple of every catalog entry
    size_t triples = 0;
    for (const std::string name : {"sl2r", "sl3r", "sp4r", "sl2c"}) {
      auto p = make_engines(name);
      const PbwEngine& e = *p.chi;
      for (size_t x = 0; x < e.ngens(); ++x)
        for (size_t y = 0; y < e.ngens(); ++y)
          for (size_t z = 0; z < e.ngens(); ++z) {
            Noe gx = e.gen(x), gy = e.gen(y), gz = e.gen(z);
            Noe s = noe_sum(noe_sum(e.commutator(e.commutator(gx, gy), gz),
                                    e.commutator(e.commutator(gy, gz), gx)),
                            e.commutator(e.commutator(gz, gx), gy));
            c.require(s.empty(), "Jacobi identity");
            ++triples;
          }
    }
    c.require(triples >= 100, "enough Jacobi triples");

    // weight-component convolution over the product
    for (int t = 0; t < 100; ++t) {
      auto p = make_engines(t % 2 == 0 ? "sl2r" : "sl3r");
      const PbwEngine& e = *p.wt;
      Noe a = random_noe(rng, e.ngens(), 2, 2), b = random_noe(rng, e.ngens(), 2, 2);
      Noe ab = e.mul(a, b);
      std::map<Weight, Noe, WeightLess> parts_a, parts_b, parts_ab;
      for (const auto& [m, co] : a) noe_add(parts_a[e.mono_weight(m)], m, co);
      for (const auto& [m, co] : b) noe_add(parts_b[e.mono_weight(m)], m, co);
      for (const auto& [m, co] : ab) noe_add(parts_ab[e.mono_weight(m)], m, co);
      for (const auto& [w, comp] : parts_ab) {
        Noe conv;
        for (const auto& [wa, pa] : parts_a)
          for (const auto& [wb, pb] : parts_b)
            if (wa + wb == w) conv = noe_sum(conv, e.mul(pa, pb));
        c.require(conv == comp, "component convolution");
      }
    }

    // two-sided series inverse
    for (int t = 0; t < 100; ++t) {
      const bool small = t % 2 == 0;
      auto p = make_engines(small ? "sl2r" : "sl3r");
      const Rat horizon(small ? 8 : 4);
      Noe body = p.wt->one();
      Noe rnd = random_noe(rng, p.wt->ngens(), 3, 3);
      for (const auto& [m, co] : rnd)
        if (mono_level(m, *p.wt) > 0) noe_add(body, m, co);
      auto s = TruncatedSeries::from_noe(&p, body, horizon);
      auto inv = s.inverse();
      c.require((s * inv - TruncatedSeries::one(&p, horizon)).terms().empty(), "right inverse");
      c.require((inv * s - TruncatedSeries::one(&p, horizon)).terms().empty(), "left inverse");
    }

    // module axiom: sequential action equals action of the product
    {
      auto p = make_engines("sl2r");
      SphericalModule mod(&p, Weight{{rat(3, 4)}});
      for (int t = 0; t < 100; ++t) {
        Noe z1 = random_noe(rng, p.chi->ngens(), 3, 2);
        Noe z2 = random_noe(rng, p.chi->ngens(), 3, 2);
        Noe v = mod.reduce(random_noe(rng, p.chi->ngens(), 3, 2));
        c.require(mod.act(z1, mod.act(z2, v)) == mod.act(p.chi->mul(z1, z2), v), "module axiom");
      }
    }

    // truncation coherence: compute high, cut low == compute low
    for (int t = 0; t < 100; ++t) {
      auto p = make_engines("sl2r");
      Noe a1 = p.wt->one(), b1 = p.wt->one();
      for (const auto& [m, co] : random_noe(rng, p.wt->ngens(), 3, 3))
        if (mono_level(m, *p.wt) > 0) noe_add(a1, m, co);
      for (const auto& [m, co] : random_noe(rng, p.wt->ngens(), 3, 3))
        if (mono_level(m, *p.wt) > 0) noe_add(b1, m, co);
      auto hi = TruncatedSeries::from_noe(&p, a1, Rat(10)) *
                TruncatedSeries::from_noe(&p, b1, Rat(10));
      auto lo = TruncatedSeries::from_noe(&p, a1, Rat(6)) *
                TruncatedSeries::from_noe(&p, b1, Rat(6));
      c.require(hi.truncated(Rat(6)).terms() == lo.terms(), "truncation coherence");
    }
    c.detail << "associativity, Jacobi, convolution, inverses, module axiom, truncation";
  });

  // 8. The complex entry: a centralizer relation certificate at a generic
  //    regular parameter, verified to height 8.
  criterion(8, "complex-case centralizer certificate at height 8", 120000, [](Check& c) {
    auto p = make_engines("sl2c");
    SphericalModule mod(&p, Weight{{rat(5, 7)}});
    auto bv = boundary_map(mod, 8);
    verify_boundary(bv, mod);
    for (size_t i = 0; i < bv.v.size(); ++i) {
      auto cert = relation_certificate(bv, mod, i, CompactKind::m, 0);
      c.require(cert.residual.terms().empty(), "centralizer certificate residual empty");
    }
    c.detail << "both generators certified against the centralizer";
  });

  // 9. The unit example of the homogeneous level solver.
  criterion(9, "level solver unit example", 5000, [](Check& c) {
    RatMat q0(2, 2);
    q0.at(0, 0) = 3;
    q0.at(1, 1) = 1;
    RatMat r(2, 2);
    r.at(1, 0) = 1;
    auto sol = solve_lt_level(Rat(2), q0, r);
    c.require(sol.l.at(1, 0) == rat(1, 4), "L(1,0) = 1/4");
    c.require(sol.l.at(0, 0) == 0 && sol.l.at(0, 1) == 0 && sol.l.at(1, 1) == 0, "L elsewhere 0");
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) c.require(sol.t.at(i, j) == 0, "T = 0");
    c.detail << "L = [[0,0],[1/4,0]], T = 0";
  });

  std::printf("%s: %d of 9 criteria passed\n", failures == 0 ? "ALL PASS" : "RESULT",
              9 - failures);
  return failures;
}
