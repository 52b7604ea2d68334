// Boundary transport for the spherical module. The staircase generators span
// the level-zero layer of the n-filtration; the coroot actions on that layer
// commute and triangularize simultaneously over the rationals, with joint
// eigenvalue tuples given by the shifted Weyl orbit of the parameter. A
// separating element X of a turns the full completed action into a single
// scalar-plus-perturbation problem: an invertible series matrix L, supported
// on the strictly positive even cone, conjugates the X-action onto its
// diagonal part plus resonance terms. Transporting each coroot action by the
// same L then leaves exactly the resonant lines, and the transported basis
// realizes the exponents of the module as honest joint eigenvectors up to
// the truncation height.
//
// Every series object stores a pointer to the engine pair, so the EnginePair
// passed in (via the module) must outlive the returned value.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jacquet/spherical.hpp"

namespace jacquet {

// One homogeneous level of the conjugation equation
//     lambda * L - [Q0, L] = T + R,
// with Q0 upper triangular. Entries are filled in increasing diagonal offset
// d = j - i, so every sum on the right only touches entries already known.
// Where the scalar delta = lambda - (Q0_ii - Q0_jj) is nonzero the T-entry is
// zero and L is determined; where delta vanishes (a resonance) L is set to
// zero and T absorbs the right-hand side.
struct LevelSolution {
  RatMat l, t;
};

inline LevelSolution solve_lt_level(const Rat& lambda, const RatMat& q0, const RatMat& r) {
  const size_t n = q0.rows();
  if (q0.cols() != n || r.rows() != n || r.cols() != n)
    throw std::invalid_argument("solve_lt_level: shape mismatch");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < i; ++j)
      if (q0.at(i, j) != 0)
        throw std::invalid_argument("solve_lt_level: Q0 must be upper triangular");
  LevelSolution out{RatMat(n, n), RatMat(n, n)};
  for (long d = -static_cast<long>(n) + 1; d < static_cast<long>(n); ++d) {
    for (size_t i = 0; i < n; ++i) {
      const long jl = static_cast<long>(i) + d;
      if (jl < 0 || jl >= static_cast<long>(n)) continue;
      const size_t j = static_cast<size_t>(jl);
      Rat s = r.at(i, j);
      for (size_t k = i + 1; k < n; ++k) s += q0.at(i, k) * out.l.at(k, j);
      for (size_t k = 0; k < j; ++k) s -= out.l.at(i, k) * q0.at(k, j);
      const Rat delta = lambda - q0.at(i, i) + q0.at(j, j);
      if (delta != 0)
        out.l.at(i, j) = s / delta;
      else
        out.t.at(i, j) = -s;
    }
  }
  return out;
}

// Coefficient layer of a series matrix: exponent monomial -> rational matrix.
using SeriesCoeffs = std::map<Mono, RatMat>;

namespace detail {

inline bool matrix_is_zero(const RatMat& m) {
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0) return false;
  return true;
}

// Convolution of two coefficient layers through the straightening engine,
// dropping everything beyond the level cap. Levels add exactly, so the cap
// prunes whole pairs at once.
inline SeriesCoeffs coeff_product(const EnginePair& p, const SeriesCoeffs& a,
                                  const SeriesCoeffs& b, const Rat& cap) {
  SeriesCoeffs out;
  for (const auto& [ma, mat_a] : a) {
    const Rat la = mono_level(ma, *p.wt);
    for (const auto& [mb, mat_b] : b) {
      if (la + mono_level(mb, *p.wt) > cap) continue;
      const RatMat prod = mat_a * mat_b;
      const Noe dist = p.wt->mul(Noe{{ma, Rat(1)}}, Noe{{mb, Rat(1)}});
      for (const auto& [m, c] : dist) {
        auto it = out.find(m);
        if (it == out.end())
          out.emplace(m, c * prod);
        else
          it->second = it->second + c * prod;
      }
    }
  }
  return out;
}

// All pure exponent monomials of strictly positive level up to the cap,
// bucketed by level in ascending order.
inline std::map<Rat, std::vector<Mono>> exponent_monomials(const EnginePair& p, const Rat& cap) {
  const LieAlgebra& g = p.alg;
  std::map<Rat, std::vector<Mono>> out;
  Mono cur = mono_one();
  std::function<void(size_t)> rec = [&](size_t pos) {
    Rat lv = mono_level(cur, *p.wt);
    if (lv > cap) return;
    if (pos == g.n_count) {
      if (lv > 0) out[lv].push_back(cur);
      return;
    }
    for (uint8_t e = 0;; ++e) {
      cur[g.e_index(pos)] = e;
      if (mono_level(cur, *p.wt) > cap) break;
      rec(pos + 1);
      if (e == 0xff) break;
    }
    cur[g.e_index(pos)] = 0;
  };
  rec(0);
  return out;
}

inline SeriesMatrix matrix_from_coeffs(const EnginePair& p, size_t n, const SeriesCoeffs& cs,
                                       const Rat& horizon, bool add_identity) {
  std::vector<Noe> ent(n * n);
  if (add_identity)
    for (size_t i = 0; i < n; ++i) noe_add(ent[i * n + i], mono_one(), Rat(1));
  for (const auto& [m, mat] : cs)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (mat.at(i, j) != 0) noe_add(ent[i * n + j], m, mat.at(i, j));
  SeriesMatrix out(&p, n, n, horizon);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      out.at(i, j) = TruncatedSeries::from_noe(&p, ent[i * n + j], horizon);
  return out;
}

inline bool series_matrix_is_zero(const SeriesMatrix& m) {
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).terms().empty()) return false;
  return true;
}

// Inverse of identity + N with N supported on strictly positive levels: the
// geometric series terminates because the powers of N climb the filtration.
inline SeriesMatrix unipotent_inverse(const EnginePair& p, size_t n, const SeriesCoeffs& ncoef,
                                      const Rat& horizon) {
  SeriesCoeffs neg;
  for (const auto& [m, mat] : ncoef) neg.emplace(m, Rat(-1) * mat);
  const SeriesMatrix step = matrix_from_coeffs(p, n, neg, horizon, false);
  SeriesMatrix acc = SeriesMatrix::identity(&p, n, horizon);
  SeriesMatrix power = SeriesMatrix::identity(&p, n, horizon);
  while (true) {
    power = power * step;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        power.at(i, j) = TruncatedSeries::from_noe(&p, power.at(i, j).terms(), horizon);
    if (series_matrix_is_zero(power)) break;
    acc = acc + power;
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      acc.at(i, j) = TruncatedSeries::from_noe(&p, acc.at(i, j).terms(), horizon);
  return acc;
}

}  // namespace detail

// The series conjugation (X - Q0 - T) L = L (X - Q0 - R), solved level by
// level over the exponent cone. R must be supported on strictly positive
// even-cone monomials; T comes out supported on resonances only. The residual
// of the defining identity is recomputed literally (with X as an honest
// element of a, so the commutators with the exponent monomials are exercised)
// and kept as a witness; it must vanish through the truncation height.
struct BoundaryTransport {
  SeriesMatrix l, linv, t, residual;
};

inline BoundaryTransport construct_lt(const EnginePair& p, const RatMat& q0,
                                      const SeriesCoeffs& rcoef, const std::vector<Rat>& x_coords,
                                      long truncation) {
  const LieAlgebra& g = p.alg;
  const size_t n = q0.rows();
  const Rat cap(truncation);
  for (const auto& [m, mat] : rcoef) {
    if (mat.rows() != n || mat.cols() != n)
      throw std::invalid_argument("construct_lt: coefficient shape mismatch");
    if (!in_lattice(p.wt->mono_weight(m), Lattice::twoPplusplus))
      throw std::invalid_argument("construct_lt: perturbation leaves the positive even cone");
  }
  const auto levels = detail::exponent_monomials(p, cap);
  SeriesCoeffs lcoef, tcoef;
  for (const auto& [lv, monos] : levels) {
    const SeriesCoeffs s_from_t = detail::coeff_product(p, tcoef, lcoef, lv);
    const SeriesCoeffs s_from_r = detail::coeff_product(p, lcoef, rcoef, lv);
    for (const Mono& mo : monos) {
      RatMat rhs(n, n);
      if (auto it = s_from_t.find(mo); it != s_from_t.end()) rhs = rhs + it->second;
      if (auto it = s_from_r.find(mo); it != s_from_r.end()) rhs = rhs - it->second;
      if (auto it = rcoef.find(mo); it != rcoef.end()) rhs = rhs - it->second;
      const Rat lam = g.eval_on_a(p.wt->mono_weight(mo), x_coords);
      LevelSolution sol = solve_lt_level(lam, q0, rhs);
      if (!detail::matrix_is_zero(sol.l)) lcoef.emplace(mo, std::move(sol.l));
      if (!detail::matrix_is_zero(sol.t)) tcoef.emplace(mo, std::move(sol.t));
    }
  }
  BoundaryTransport out{detail::matrix_from_coeffs(p, n, lcoef, cap, true),
                        detail::unipotent_inverse(p, n, lcoef, cap),
                        detail::matrix_from_coeffs(p, n, tcoef, cap, false),
                        SeriesMatrix(&p, n, n, cap)};
  Noe xnoe;
  for (size_t j = 0; j < g.rank; ++j)
    noe_axpy(xnoe, x_coords[j], p.wt->gen(g.h_index(j)));
  SeriesMatrix xs(&p, n, n, cap);
  for (size_t i = 0; i < n; ++i) xs.at(i, i) = TruncatedSeries::from_noe(&p, xnoe, cap);
  const SeriesMatrix q0s = SeriesMatrix::scalar(&p, q0, cap);
  const SeriesMatrix rs = detail::matrix_from_coeffs(p, n, rcoef, cap, false);
  const SeriesMatrix raw = (xs - q0s - out.t) * out.l - out.l * (xs - q0s - rs);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      out.residual.at(i, j) = raw.at(i, j).truncated(cap);
  if (!detail::series_matrix_is_zero(out.residual))
    throw std::runtime_error("construct_lt: conjugation identity has a nonzero residual");
  return out;
}

// Everything the transport produces, in the order it is produced. Exponents
// are the shifted Weyl orbit of the parameter, sorted descending; bbar rows
// are the matching level-zero eigenvectors; L corrects them into joint
// eigenvectors v of the coroot actions to the stated horizon, with the
// resonant lines tprime as the only off-diagonal remainder in q.
struct BoundaryValue {
  Rat horizon;
  std::vector<RatMat> level0;        // coroot actions on the staircase basis
  RatMat bbar;                       // level-zero eigenbasis, rows descending
  RatMat abar;                       // inverse of bbar
  std::vector<RatMat> qbar;          // upper-triangular level-zero forms
  std::vector<Weight> exponents;     // rho + w(lambda), descending
  std::vector<long> separating;      // alpha_k(X), the separating values
  std::vector<Rat> x_coords;         // X in coroot coordinates
  RatMat q0;                         // level-zero form of the X-action
  SeriesMatrix l, linv, t, residual; // transport, its inverse, its resonance part
  std::vector<SeriesMatrix> r;       // per-coroot perturbations, eigenbasis coords
  std::vector<SeriesMatrix> q;       // per-coroot normal forms qbar + tprime
  std::vector<SeriesMatrix> tprime;  // per-coroot resonant lines
  std::vector<TruncatedSeries> a;    // spherical vector coordinates: u0 = sum a_j v_j
  std::vector<TruncatedSeries> v;    // transported generators as module vectors
};

inline BoundaryValue boundary_map(const SphericalModule& mod, long truncation) {
  const EnginePair& p = mod.engines();
  const LieAlgebra& g = p.alg;
  const Rat cap(truncation);
  const std::vector<Noe> w = mod.u0_generators();
  const size_t m = w.size();

  // Coroot actions on the level-zero layer, column by column.
  std::vector<RatMat> level0;
  for (size_t k = 0; k < g.rank; ++k) {
    const Noe hk = p.chi->gen(g.h_index(k));
    RatMat mk(m, m);
    for (size_t j = 0; j < m; ++j) {
      const std::vector<Rat> col = mod.level0_coords(mod.act(hk, w[j]));
      for (size_t i = 0; i < m; ++i) mk.at(i, j) = col[i];
    }
    level0.push_back(std::move(mk));
  }

  // Joint triangularization, ordered descending by the recovered weights.
  const RatMat ct = g.cartan.transpose();
  auto tuple_weight = [&](const std::vector<Rat>& t) {
    auto x = solve(ct, t);
    if (!x) throw std::runtime_error("boundary_map: Cartan matrix singular");
    return Weight{*x};
  };
  std::vector<RatMat> transposed;
  std::vector<std::vector<Rat>> hints(g.rank);
  std::vector<Weight> orbit;
  for (size_t wi = 0; wi < g.weyl.size(); ++wi) {
    Weight mu = g.rho + Weight{g.weyl[wi] * mod.lambda().c};
    for (size_t k = 0; k < g.rank; ++k) hints[k].push_back(g.eval_at_coroot(mu, k));
    orbit.push_back(std::move(mu));
  }
  for (size_t k = 0; k < g.rank; ++k) transposed.push_back(level0[k].transpose());
  const Triangularization tri = triangularize_commuting(
      transposed,
      [&](const std::vector<Rat>& ta, const std::vector<Rat>& tb) {
        return weight_compare(tuple_weight(ta), tuple_weight(tb)) < 0;
      },
      hints);
  for (size_t bs : tri.block_sizes)
    if (bs != 1)
      throw std::runtime_error("boundary_map: joint eigenvalues of the level-zero actions are not simple");
  std::vector<Weight> exponents;
  for (const auto& t : tri.tuples) exponents.push_back(tuple_weight(t));
  {
    std::vector<Weight> a = exponents, b = orbit;
    auto less = [](const Weight& x, const Weight& y) { return weight_compare(x, y) < 0; };
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    for (size_t i = 0; i < m; ++i)
      if (weight_compare(a[i], b[i]) != 0)
        throw std::runtime_error(
            "boundary_map: level-zero eigenvalues differ from the shifted Weyl orbit");
  }
  const RatMat bbar = tri.basis_change;
  const RatMat abar = inverse(bbar);
  const std::vector<RatMat> qbar = tri.forms;

  // The separating element X and the level-zero form of its action.
  const std::vector<long> separating = oshima_constants(exponents, Lattice::twoPplusplus);
  std::vector<Rat> simple_values(separating.begin(), separating.end());
  const std::vector<Rat> x_coords = g.element_with_simple_values(simple_values);
  RatMat q0(m, m);
  for (size_t k = 0; k < g.rank; ++k) q0 = q0 + x_coords[k] * qbar[k];

  // Perturbations of the coroot actions past level zero, written in the
  // eigenbasis coordinates: H_k vbar_i = sum_j (qbar_k + R_k)_{ij} vbar_j.
  std::vector<Noe> vbar(m);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) noe_axpy(vbar[i], bbar.at(i, j), w[j]);
  const std::vector<PMono>& staircase = mod.staircase();
  std::vector<SeriesCoeffs> rk(g.rank);
  for (size_t k = 0; k < g.rank; ++k) {
    const Noe hk = p.chi->gen(g.h_index(k));
    for (size_t i = 0; i < m; ++i) {
      Noe y = mod.act(hk, vbar[i]);
      for (size_t j = 0; j < m; ++j) noe_axpy(y, -qbar[k].at(i, j), vbar[j]);
      for (const auto& [mono, c] : y) {
        if (!has_n_head(mono, g))
          throw std::runtime_error("boundary_map: level-zero residue in the coordinate extraction");
        Mono e = mono;
        PMono h(g.rank);
        for (size_t s = 0; s < g.rank; ++s) {
          h[s] = mono[g.h_index(s)];
          e[g.h_index(s)] = 0;
        }
        size_t si = staircase.size();
        for (size_t t = 0; t < staircase.size(); ++t)
          if (staircase[t] == h) {
            si = t;
            break;
          }
        if (si == staircase.size())
          throw std::runtime_error("boundary_map: coordinate extraction hit a non-staircase tail");
        if (!in_lattice(p.wt->mono_weight(e), Lattice::twoPplusplus))
          throw std::runtime_error("boundary_map: perturbation leaves the positive even cone");
        auto it = rk[k].find(e);
        if (it == rk[k].end()) it = rk[k].emplace(e, RatMat(m, m)).first;
        for (size_t t = 0; t < m; ++t) it->second.at(i, t) += c * abar.at(si, t);
      }
    }
  }
  SeriesCoeffs rx;
  for (size_t k = 0; k < g.rank; ++k)
    for (const auto& [mono, mat] : rk[k]) {
      auto it = rx.find(mono);
      if (it == rx.end())
        rx.emplace(mono, x_coords[k] * mat);
      else
        it->second = it->second + x_coords[k] * mat;
    }

  // Conjugate the X-action to normal form, then transport each coroot action
  // by the same L. The remainder past the level-zero form must sit on the
  // resonant lines alone; anything else means the transport failed.
  BoundaryTransport transport = construct_lt(p, q0, rx, x_coords, truncation);
  std::vector<SeriesMatrix> r, q, tprime;
  for (size_t k = 0; k < g.rank; ++k) {
    const Noe hk_wt = p.wt->gen(g.h_index(k));
    SeriesMatrix hks(&p, m, m, cap);
    for (size_t i = 0; i < m; ++i) hks.at(i, i) = TruncatedSeries::from_noe(&p, hk_wt, cap);
    const SeriesMatrix qbarks = SeriesMatrix::scalar(&p, qbar[k], cap);
    const SeriesMatrix rks = detail::matrix_from_coeffs(p, m, rk[k], cap, false);
    const SeriesMatrix tk =
        hks - qbarks - transport.l * (hks - qbarks - rks) * transport.linv;
    SeriesMatrix line(&p, m, m, cap);
    SeriesMatrix qk = qbarks;
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) {
        const TruncatedSeries cut = tk.at(i, j).truncated(cap);
        for (const auto& [mono, c] : cut.terms())
          for (size_t s = 0; s < g.rank; ++s)
            if (mono[g.h_index(s)] != 0)
              throw std::runtime_error("boundary_map: transported coroot action is not scalar");
        const Rat gap =
            g.eval_on_a(exponents[i], x_coords) - g.eval_on_a(exponents[j], x_coords);
        line.at(i, j) =
            cut.component_where([&](const Weight& nu) { return g.eval_on_a(nu, x_coords) == gap; });
        if (!(cut - line.at(i, j)).terms().empty())
          throw std::runtime_error("boundary_map: off-resonance correction survives conjugation");
        qk.at(i, j) = qk.at(i, j) + line.at(i, j);
      }
    r.push_back(rks);
    tprime.push_back(std::move(line));
    q.push_back(std::move(qk));
  }

  // The transported generators and the spherical vector's coordinates.
  const SeriesMatrix lb = transport.l * SeriesMatrix::scalar(&p, bbar, cap);
  const SeriesMatrix al = SeriesMatrix::scalar(&p, abar, cap) * transport.linv;
  std::vector<TruncatedSeries> a, v;
  for (size_t j = 0; j < m; ++j) a.push_back(al.at(0, j).truncated(cap));
  for (size_t i = 0; i < m; ++i) {
    TruncatedSeries vi(&p, cap);
    for (size_t j = 0; j < m; ++j)
      vi = vi + lb.at(i, j) * TruncatedSeries::from_noe(&p, w[j], cap);
    v.push_back(vi.truncated(cap));
  }

  return BoundaryValue{cap,
                       std::move(level0),
                       bbar,
                       abar,
                       qbar,
                       std::move(exponents),
                       separating,
                       x_coords,
                       q0,
                       std::move(transport.l),
                       std::move(transport.linv),
                       std::move(transport.t),
                       std::move(transport.residual),
                       std::move(r),
                       std::move(q),
                       std::move(tprime),
                       std::move(a),
                       std::move(v)};
}

// Replays the two defining properties of the transported data against the
// module itself: the coroot actions send each generator v_i to its q-row, and
// the spherical vector is recovered from the a-coordinates. Throws on the
// first violation.
inline void verify_boundary(const BoundaryValue& bv, const SphericalModule& mod) {
  const EnginePair& p = mod.engines();
  const LieAlgebra& g = p.alg;
  const size_t m = bv.v.size();
  for (size_t k = 0; k < g.rank; ++k) {
    const Noe hk = p.chi->gen(g.h_index(k));
    for (size_t i = 0; i < m; ++i) {
      TruncatedSeries lhs = mod.act_series(hk, bv.v[i]);
      for (size_t j = 0; j < m; ++j) lhs = lhs - bv.q[k].at(i, j) * bv.v[j];
      if (!lhs.terms().empty())
        throw std::runtime_error("verify_boundary: generator " + std::to_string(i) +
                                 " is not an eigenvector of coroot " + std::to_string(k) +
                                 " within the horizon");
    }
  }
  TruncatedSeries rec(&p, bv.horizon);
  for (size_t j = 0; j < m; ++j) rec = rec + bv.a[j] * bv.v[j];
  rec = rec - TruncatedSeries::from_noe(&p, mod.u0(), bv.horizon);
  if (!rec.terms().empty())
    throw std::runtime_error("verify_boundary: the spherical vector is not recovered from its coordinates");
}

}  // namespace jacquet
