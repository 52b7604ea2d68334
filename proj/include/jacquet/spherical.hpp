// The spherical principal-series module at a regular parameter. Elements are
// spanned by E^a H^b applied to the spherical vector; the central invariants
// act by scalars, which turns their U(a) images into rewrite rules. Each
// Groebner element gamma of the character ideal carries a correction N with
// gamma . u = -N . u, where N sits strictly deeper in the n-filtration and
// strictly lower in H-degree — that pair of facts is what makes reduction
// terminate and the Jacquet filtration computable level by level.
#pragma once

#include <memory>

#include "jacquet/enveloping.hpp"
#include "jacquet/series.hpp"

namespace jacquet {

// H-polynomial as an enveloping element (pure a-monomials).
inline Noe poly_to_enveloping(const Poly& q, const LieAlgebra& g) {
  if (q.nvars() != g.rank) throw std::invalid_argument("poly arity differs from the rank");
  Noe out;
  for (const auto& [pm, c] : q.terms()) {
    Mono m = mono_one();
    for (size_t j = 0; j < g.rank; ++j) {
      if (pm[j] > 0xff) throw std::overflow_error("H-exponent too large for a PBW slot");
      m[g.h_index(j)] = static_cast<uint8_t>(pm[j]);
    }
    noe_add(out, m, c);
  }
  return out;
}

class SphericalModule {
 public:
  SphericalModule(const EnginePair* p, const Weight& lambda) : p_(p), lambda_(lambda) {
    const LieAlgebra& g = p_->alg;
    const PbwEngine& eng = *p_->chi;
    if (lambda.c.size() != g.rank)
      throw std::invalid_argument("spherical module: parameter rank mismatch");
    for (size_t wi = 1; wi < g.weyl.size(); ++wi)
      if (g.weyl[wi] * lambda.c == lambda.c)
        throw std::runtime_error(
            "spherical module: singular parameter, fixed by Weyl element #" +
            std::to_string(wi));

    invariants_ = module_invariants(*p_);
    std::vector<Poly> rels;
    std::vector<Noe> heads;
    for (const Noe& z : invariants_) {
      rels.push_back(chi1(z, g) -
                     Poly::constant(g.rank, chi_lambda(z, lambda_, g)));
      Noe head;
      for (const auto& [m, c] : z) {
        if (has_k_tail(m, g) || !has_n_head(m, g)) continue;
        Weight w = zero_weight(g.rank);
        for (size_t i = 0; i < g.n_count; ++i)
          w = w + rat(m[g.e_index(i)]) * g.weights[g.e_index(i)];
        if (!in_lattice(w, Lattice::twoPplusplus))
          throw std::runtime_error("spherical module: invariant head outside the even cone");
        noe_add(head, m, c);
      }
      heads.push_back(std::move(head));
    }
    gb_ = std::make_unique<GroebnerBasis>(rels);
    for (const auto& e : gb_->elements()) {
      Noe corr;
      for (size_t pi = 0; pi < heads.size(); ++pi)
        if (!e.rep[pi].is_zero() && !heads[pi].empty())
          noe_axpy(corr, rat(1), eng.mul(poly_to_enveloping(e.rep[pi], g), heads[pi]));
      long dg = e.g.degree();
      for (const auto& [m, c] : corr) {
        long hdeg = 0;
        for (size_t j = 0; j < g.rank; ++j) hdeg += m[g.h_index(j)];
        if (hdeg >= dg)
          throw std::runtime_error("spherical module: correction does not lower the H-degree");
      }
      corrections_.push_back(std::move(corr));
    }
    staircase_ = gb_->staircase();
    if (staircase_.size() != g.weyl.size())
      throw std::runtime_error(
          "spherical module: level-zero dimension differs from the Weyl group order");
  }

  const EnginePair& engines() const { return *p_; }
  const LieAlgebra& algebra() const { return p_->alg; }
  const Weight& lambda() const { return lambda_; }
  const std::vector<Noe>& invariants() const { return invariants_; }
  const GroebnerBasis& relations() const { return *gb_; }
  const std::vector<PMono>& staircase() const { return staircase_; }

  Noe u0() const { return p_->chi->one(); }

  // The level-zero generators: staircase H-monomials applied to the
  // spherical vector.
  std::vector<Noe> u0_generators() const {
    std::vector<Noe> out;
    for (const auto& pm : staircase_) {
      Mono m = mono_one();
      for (size_t j = 0; j < p_->alg.rank; ++j) m[p_->alg.h_index(j)] = static_cast<uint8_t>(pm[j]);
      out.push_back(Noe{{m, Rat(1)}});
    }
    return out;
  }

  // Quotient map: drop k-tails, then rewrite every H-part to the staircase,
  // feeding the corrections (which sit deeper in the filtration) back in.
  Noe reduce(const Noe& raw) const {
    const LieAlgebra& g = p_->alg;
    const PbwEngine& eng = *p_->chi;
    std::map<Mono, Poly> work;
    auto push = [&](const Noe& x, const Rat& scale) {
      for (const auto& [m, c] : x) {
        if (has_k_tail(m, g)) continue;
        Mono e = m;
        PMono h(g.rank);
        for (size_t j = 0; j < g.rank; ++j) {
          h[j] = m[g.h_index(j)];
          e[g.h_index(j)] = 0;
        }
        auto it = work.find(e);
        if (it == work.end()) it = work.emplace(e, Poly(g.rank)).first;
        it->second.add_term(std::move(h), scale * c);
      }
    };
    push(raw, rat(1));
    Noe out;
    while (!work.empty()) {
      auto it = work.begin();
      Mono e = it->first;
      Poly hp = it->second;
      work.erase(it);
      if (hp.is_zero()) continue;
      std::vector<Poly> quot;
      Poly rem = gb_->normal_form(hp, &quot);
      for (const auto& [pm, c] : rem.terms()) {
        Mono m = e;
        for (size_t j = 0; j < g.rank; ++j) m[g.h_index(j)] = static_cast<uint8_t>(pm[j]);
        noe_add(out, m, c);
      }
      for (size_t gi = 0; gi < quot.size(); ++gi) {
        if (quot[gi].is_zero() || corrections_[gi].empty()) continue;
        Noe corr = eng.mul(Noe{{e, Rat(1)}},
                           eng.mul(poly_to_enveloping(quot[gi], g), corrections_[gi]));
        push(corr, rat(-1));
      }
    }
    return out;
  }

  Noe act(const Noe& z, const Noe& v) const { return reduce(p_->chi->mul(z, v)); }

  // Coordinates of the level-zero part of a reduced vector in the staircase
  // basis; E-led terms are the deeper filtration steps and are ignored.
  std::vector<Rat> level0_coords(const Noe& v) const {
    const LieAlgebra& g = p_->alg;
    std::vector<Rat> coords(staircase_.size(), Rat(0));
    for (const auto& [m, c] : v) {
      if (has_n_head(m, g)) continue;
      PMono h(g.rank);
      for (size_t j = 0; j < g.rank; ++j) h[j] = m[g.h_index(j)];
      bool placed = false;
      for (size_t si = 0; si < staircase_.size(); ++si)
        if (staircase_[si] == h) {
          coords[si] += c;
          placed = true;
          break;
        }
      if (!placed)
        throw std::runtime_error("level0_coords: vector is not staircase-reduced");
    }
    return coords;
  }

  TruncatedSeries reduce_series(const TruncatedSeries& s) const {
    return TruncatedSeries::from_noe(p_, reduce(s.terms()), s.horizon());
  }

  // Action of an enveloping element on a truncated module vector. The
  // exactness horizon shifts by the most level-lowering monomial of z.
  TruncatedSeries act_series(const Noe& z, const TruncatedSeries& s) const {
    Noe zw = chi_to_weight(z, *p_);
    Rat shift(0);
    for (const auto& [m, c] : zw) shift = std::min(shift, mono_level(m, *p_->wt));
    Rat h = s.horizon() + shift;
    Noe acc;
    for (const auto& [m, c] : s.terms()) {
      if (mono_level(m, *p_->wt) + shift > h) continue;
      noe_axpy(acc, rat(1), act(z, Noe{{m, c}}));
    }
    return TruncatedSeries::from_noe(p_, acc, h);
  }

 private:
  const EnginePair* p_;
  Weight lambda_;
  std::vector<Noe> invariants_;
  std::unique_ptr<GroebnerBasis> gb_;
  std::vector<Noe> corrections_;
  std::vector<PMono> staircase_;
};

}  // namespace jacquet
