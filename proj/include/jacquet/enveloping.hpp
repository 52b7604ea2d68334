// The spherical Harish-Chandra picture: projection to U(a) along
// nU(g) + U(g)k (a monomial filter in the chi order), the rho-shift that
// makes the image Weyl invariant on invariants, central elements via adjoint
// traces, a commutant solver for U(g)^k, and ad(a)-weight components.
#pragma once

#include <set>

#include "jacquet/groebner.hpp"
#include "jacquet/pbw.hpp"
#include "jacquet/poly.hpp"

namespace jacquet {

// True when the chi-order monomial ends in k (has a K or M factor).
inline bool has_k_tail(const Mono& m, const LieAlgebra& g) {
  for (size_t i = 0; i < g.n_count; ++i)
    if (m[g.f_index(i)] > 0) return true;
  for (size_t k = 0; k < g.m_count; ++k)
    if (m[g.m_index(k)] > 0) return true;
  return false;
}

inline bool has_n_head(const Mono& m, const LieAlgebra& g) {
  for (size_t i = 0; i < g.n_count; ++i)
    if (m[g.e_index(i)] > 0) return true;
  return false;
}

// chi_1: U(g) -> U(a), the projection along nU(g) + U(g)k. In the chi order
// a monomial survives iff it is a pure H monomial.
inline Poly chi1(const Noe& z, const LieAlgebra& g) {
  Poly p(g.rank);
  for (const auto& [m, c] : z) {
    if (has_n_head(m, g) || has_k_tail(m, g)) continue;
    PMono pm(g.rank);
    for (size_t j = 0; j < g.rank; ++j) pm[j] = m[g.h_index(j)];
    p.add_term(std::move(pm), c);
  }
  return p;
}

// p(H_1,...,H_l) -> p(H_1 + dir*rho(H_1), ...): the Harish-Chandra shift.
inline Poly rho_shift(const Poly& p, const LieAlgebra& g, int dir) {
  std::vector<Poly> images;
  for (size_t j = 0; j < g.rank; ++j)
    images.push_back(Poly::variable(g.rank, j) +
                     Poly::constant(g.rank, rat(dir) * g.eval_at_coroot(g.rho, j)));
  return p.substitute(images);
}

// chi_2 is the positive shift; validate_character_shift certifies the sign.
inline Poly chi2(const Poly& p, const LieAlgebra& g) { return rho_shift(p, g, +1); }

inline Poly chi_image(const Noe& z, const LieAlgebra& g) { return chi2(chi1(z, g), g); }

inline Rat eval_poly_at_weight(const Poly& p, const Weight& mu, const LieAlgebra& g) {
  std::vector<Rat> x;
  for (size_t j = 0; j < g.rank; ++j) x.push_back(g.eval_at_coroot(mu, j));
  return p.eval(x);
}

// chi_lambda(z) = chi(z)(lambda) = chi1(z)(lambda + rho).
inline Rat chi_lambda(const Noe& z, const Weight& lambda, const LieAlgebra& g) {
  return eval_poly_at_weight(chi1(z, g), lambda + g.rho, g);
}

// w acting on U(a) as functions on a*: (w.p)(mu) = p(w^{-1} mu). On the
// H-variables that is the substitution by C^T W^{-1} C^{-T}.
inline Poly weyl_poly_action(const Poly& p, const RatMat& w_on_roots, const LieAlgebra& g) {
  RatMat ct = g.cartan.transpose();
  RatMat s = ct * inverse(w_on_roots) * inverse(ct);
  std::vector<Poly> images;
  for (size_t j = 0; j < g.rank; ++j) {
    Poly im(g.rank);
    for (size_t k = 0; k < g.rank; ++k)
      im += s.at(j, k) * Poly::variable(g.rank, k);
    images.push_back(im);
  }
  return p.substitute(images);
}

inline bool weyl_invariant(const Poly& p, const LieAlgebra& g) {
  for (const auto& w : g.weyl)
    if (!(weyl_poly_action(p, w, g) == p)) return false;
  return true;
}

// Central elements from traces in the defining realization: for the
// trace-form dual basis Y_a, sum tr(Y_{a_1} ... Y_{a_k}) X_{a_1}...X_{a_k}
// over all words of engine generators. The defining realization matters: in
// the adjoint representation odd trace powers vanish by self-duality.
inline Noe gelfand_invariant(const PbwEngine& eng, unsigned k) {
  const LieAlgebra& g = eng.algebra();
  if (g.rep.size() != g.dim) throw std::runtime_error("algebra has no stored realization");
  size_t d = eng.ngens();
  size_t n = g.rep[0].rows();
  std::vector<RatMat> rho(d, RatMat(n, n));
  for (size_t a = 0; a < d; ++a) {
    auto& v = eng.gen_vector(a);
    for (size_t b = 0; b < g.dim; ++b)
      if (v[b] != 0) rho[a] = rho[a] + v[b] * g.rep[b];
  }
  RatMat kappa(d, d);
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) {
      Rat tr(0);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (rho[a].at(i, j) != 0) tr += rho[a].at(i, j) * rho[b].at(j, i);
      kappa.at(a, b) = tr;
    }
  RatMat kinv = inverse(kappa);
  std::vector<RatMat> dual(d, RatMat(n, n));
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b)
      if (kinv.at(b, a) != 0) dual[a] = dual[a] + kinv.at(b, a) * rho[b];

  Noe out;
  std::vector<size_t> word;
  // Walk words of generators depth-first, carrying the matrix product of the
  // prefix; dead (zero) prefixes prune whole subtrees.
  auto walk = [&](auto&& self, const RatMat& prefix) -> void {
    if (word.size() + 1 == k) {
      for (size_t last = 0; last < d; ++last) {
        Rat tr(0);
        const RatMat& tail = dual[last];
        for (size_t i = 0; i < n; ++i)
          for (size_t j = 0; j < n; ++j)
            if (prefix.at(i, j) != 0) tr += prefix.at(i, j) * tail.at(j, i);
        if (tr == 0) continue;
        Noe term = eng.one();
        for (size_t a : word) term = eng.mul(term, eng.gen(a));
        term = eng.mul(term, eng.gen(last));
        noe_axpy(out, tr, term);
      }
      return;
    }
    for (size_t a = 0; a < d; ++a) {
      RatMat next = prefix * dual[a];
      bool zero = true;
      for (size_t i = 0; i < n && zero; ++i)
        for (size_t j = 0; j < n; ++j)
          if (next.at(i, j) != 0) {
            zero = false;
            break;
          }
      if (zero) continue;
      word.push_back(a);
      self(self, next);
      word.pop_back();
    }
  };
  walk(walk, RatMat::identity(n));
  return out;
}

// The generating invariants used to cut the principal-series module, per
// algebra: degree-2 plus the higher fundamental degree where rank demands it.
inline std::vector<Noe> module_invariants(const EnginePair& p) {
  std::vector<unsigned> degrees;
  if (p.alg.name == "sl3r")
    degrees = {2, 3};
  else if (p.alg.name == "sp4r")
    degrees = {2, 4};
  else
    degrees = {2};
  std::vector<Noe> out;
  for (unsigned k : degrees) {
    Noe z = gelfand_invariant(*p.chi, k);
    // centrality is the defining property; it is cheap enough to insist on
    for (size_t j = 0; j < p.chi->ngens(); ++j)
      if (!p.chi->commutator(z, p.chi->gen(j)).empty())
        throw std::runtime_error("gelfand invariant is not central");
    out.push_back(std::move(z));
  }
  return out;
}

// The rho-shift direction is not a convention here: exactly one sign makes
// the image of a nonscalar central element Weyl invariant. Certify that the
// positive shift is that sign.
inline void validate_character_shift(const EnginePair& p) {
  Noe z = gelfand_invariant(*p.chi, 2);
  Poly base = chi1(z, p.alg);
  bool plus = weyl_invariant(rho_shift(base, p.alg, +1), p.alg);
  bool minus = weyl_invariant(rho_shift(base, p.alg, -1), p.alg);
  if (base.degree() < 2 || !plus || minus)
    throw std::runtime_error("character shift self-test failed for " + p.alg.name);
}

namespace detail {
inline void enumerate_monos(size_t ngens, unsigned maxdeg, size_t pos, Mono& cur,
                            std::vector<Mono>& out) {
  if (pos == ngens) {
    out.push_back(cur);
    return;
  }
  unsigned used = mono_degree(cur);
  for (unsigned e = 0; e + used <= maxdeg; ++e) {
    cur[pos] = static_cast<uint8_t>(e);
    enumerate_monos(ngens, maxdeg, pos + 1, cur, out);
  }
  cur[pos] = 0;
}
}  // namespace detail

// Basis of U(g)^k / (U(g)^k cap U(g)k) realized by representatives, through
// the given total degree, computed as the kernel of ad(k) on the chi-order
// monomial space followed by an echelon split that prefers k-free monomials.
// Representatives are echelonized with pivots on k-free monomials.
inline std::vector<Noe> find_invariants(const EnginePair& p, unsigned max_degree) {
  const LieAlgebra& g = p.alg;
  const PbwEngine& eng = *p.chi;
  std::vector<Mono> cands;
  {
    Mono cur{};
    detail::enumerate_monos(eng.ngens(), max_degree, 0, cur, cands);
  }
  std::sort(cands.begin(), cands.end(), [](const Mono& a, const Mono& b) {
    unsigned da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    return a < b;
  });
  std::map<Mono, size_t> cand_index;
  for (size_t i = 0; i < cands.size(); ++i) cand_index[cands[i]] = i;

  std::vector<size_t> k_gens;
  for (size_t i = 0; i < g.n_count; ++i) k_gens.push_back(g.f_index(i));
  for (size_t k = 0; k < g.m_count; ++k) k_gens.push_back(g.m_index(k));

  // rows of the condition matrix: (k-generator, result monomial)
  std::map<std::pair<size_t, Mono>, size_t> row_index;
  std::vector<std::map<size_t, Rat>> rows;  // sparse rows over candidate columns
  for (size_t ci = 0; ci < cands.size(); ++ci) {
    Noe mono_elt{{cands[ci], Rat(1)}};
    for (size_t kg : k_gens) {
      Noe comm = eng.commutator(eng.gen(kg), mono_elt);
      for (const auto& [m, c] : comm) {
        auto key = std::make_pair(kg, m);
        auto it = row_index.find(key);
        size_t r;
        if (it == row_index.end()) {
          r = rows.size();
          row_index.emplace(key, r);
          rows.emplace_back();
        } else {
          r = it->second;
        }
        rows[r][ci] = c;
      }
    }
  }
  RatMat cond(rows.size(), cands.size());
  for (size_t r = 0; r < rows.size(); ++r)
    for (const auto& [ci, c] : rows[r]) cond.at(r, ci) = c;
  auto ker = kernel(cond);

  // Echelonize the solution space over columns reordered k-free first.
  std::vector<size_t> order;
  size_t free_count = 0;
  for (size_t i = 0; i < cands.size(); ++i)
    if (!has_k_tail(cands[i], g)) {
      order.push_back(i);
      ++free_count;
    }
  for (size_t i = 0; i < cands.size(); ++i)
    if (has_k_tail(cands[i], g)) order.push_back(i);
  RatMat sol(ker.size(), cands.size());
  for (size_t r = 0; r < ker.size(); ++r)
    for (size_t c = 0; c < cands.size(); ++c) sol.at(r, c) = ker[r][order[c]];
  std::vector<size_t> piv;
  RatMat ech = rref(sol, &piv);
  std::vector<Noe> out;
  for (size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] >= free_count) continue;  // lies in U(g)k: quotient kills it
    Noe z;
    for (size_t c = 0; c < cands.size(); ++c)
      noe_add(z, cands[order[c]], ech.at(r, c));
    out.push_back(std::move(z));
  }
  return out;
}

// ad(a)-weight component of an element given in the chi order: rewrite on the
// weight order where the grading is monomial, filter, and rewrite back.
inline Noe weight_component(const Noe& z, const Weight& mu, const EnginePair& p) {
  Noe w = chi_to_weight(z, p);
  Noe filtered;
  for (const auto& [m, c] : w)
    if (p.wt->mono_weight(m) == mu) filtered.emplace(m, c);
  return weight_to_chi(filtered, p);
}

}  // namespace jacquet
