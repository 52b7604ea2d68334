// Buchberger's algorithm with representation tracking: every basis element
// carries its expression in the original generators, and division reports
// exact quotients. The module reduction uses those quotients to route
// nilpotent correction terms, so the bookkeeping here must be exact.
#pragma once

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <vector>

#include "jacquet/poly.hpp"

namespace jacquet {

struct GroebnerElement {
  Poly g;                 // monic
  std::vector<Poly> rep;  // g == sum_p rep[p] * generator_p, exactly
};

class GroebnerBasis {
 public:
  explicit GroebnerBasis(std::vector<Poly> gens) : gens_(std::move(gens)) {
    if (gens_.empty()) throw std::invalid_argument("GroebnerBasis: no generators");
    nvars_ = gens_[0].nvars();
    for (const auto& g : gens_)
      if (g.nvars() != nvars_) throw std::invalid_argument("GroebnerBasis: arity mismatch");
    build();
  }

  size_t nvars() const { return nvars_; }
  const std::vector<Poly>& generators() const { return gens_; }
  const std::vector<GroebnerElement>& elements() const { return basis_; }

  // Divide f by the basis: f = sum quotients[i]*elements[i].g + remainder,
  // remainder has no term divisible by any leading monomial.
  Poly normal_form(const Poly& f, std::vector<Poly>* quotients = nullptr) const {
    if (f.nvars() != nvars_) throw std::invalid_argument("normal_form arity mismatch");
    if (quotients) quotients->assign(basis_.size(), Poly(nvars_));
    Poly work = f;
    Poly rem(nvars_);
    while (!work.is_zero()) {
      auto [m, c] = work.leading();
      bool reduced = false;
      for (size_t i = 0; i < basis_.size(); ++i) {
        const PMono& lm = basis_[i].g.leading().first;
        if (!pmono_divides(lm, m)) continue;
        Poly q = Poly::monomial(pmono_quotient(m, lm), c);
        if (quotients) (*quotients)[i] += q;
        work -= q * basis_[i].g;
        reduced = true;
        break;
      }
      if (!reduced) {
        rem.add_term(m, c);
        Poly lead = Poly::monomial(m, c);
        work -= lead;
      }
    }
    return rem;
  }

  // Monomials outside the leading-term ideal, ascending in graded lex.
  // Throws if the quotient is not finite dimensional.
  std::vector<PMono> staircase() const {
    std::vector<PMono> lts;
    for (const auto& e : basis_) lts.push_back(e.g.leading().first);
    std::vector<unsigned> cap(nvars_, 0);
    for (size_t v = 0; v < nvars_; ++v) {
      bool bounded = false;
      for (const auto& m : lts) {
        bool pure = true;
        for (size_t w = 0; w < nvars_; ++w)
          if (w != v && m[w] > 0) pure = false;
        if (pure && m[v] > 0) {
          bounded = true;
          cap[v] = std::max(cap[v], unsigned(m[v]));
        }
        if (pure && m[v] == 0) {  // 1 in the ideal: zero ring
          return {};
        }
      }
      if (!bounded && nvars_ > 0)
        throw std::runtime_error("staircase: quotient is infinite dimensional");
    }
    std::vector<PMono> out;
    PMono cur(nvars_, 0);
    enumerate_box(0, cap, cur, lts, out);
    std::sort(out.begin(), out.end(), GradedLexLess{});
    return out;
  }

 private:
  void enumerate_box(size_t pos, const std::vector<unsigned>& cap, PMono& cur,
                     const std::vector<PMono>& lts, std::vector<PMono>& out) const {
    if (pos == nvars_) {
      for (const auto& m : lts)
        if (pmono_divides(m, cur)) return;
      out.push_back(cur);
      return;
    }
    for (unsigned e = 0; e < cap[pos]; ++e) {
      cur[pos] = static_cast<uint16_t>(e);
      enumerate_box(pos + 1, cap, cur, lts, out);
    }
    cur[pos] = 0;
  }

  void monic(GroebnerElement& e) const {
    Rat lc = e.g.leading().second;
    Rat inv = 1 / lc;
    e.g = inv * e.g;
    for (auto& r : e.rep) r = inv * r;
  }

  // Remainder of e.g under the current basis with representation update.
  void reduce_tracked(GroebnerElement& e, const std::vector<GroebnerElement>& basis) const {
    Poly work = e.g;
    Poly rem(nvars_);
    std::vector<Poly> q(basis.size(), Poly(nvars_));
    while (!work.is_zero()) {
      auto [m, c] = work.leading();
      bool reduced = false;
      for (size_t i = 0; i < basis.size(); ++i) {
        const PMono& lm = basis[i].g.leading().first;
        if (!pmono_divides(lm, m)) continue;
        Poly t = Poly::monomial(pmono_quotient(m, lm), c);
        q[i] += t;
        work -= t * basis[i].g;
        reduced = true;
        break;
      }
      if (!reduced) {
        rem.add_term(m, c);
        work -= Poly::monomial(m, c);
      }
    }
    e.g = rem;
    for (size_t i = 0; i < basis.size(); ++i)
      if (!q[i].is_zero())
        for (size_t p = 0; p < e.rep.size(); ++p) e.rep[p] -= q[i] * basis[i].rep[p];
  }

  void build() {
    size_t ng = gens_.size();
    for (size_t p = 0; p < ng; ++p) {
      if (gens_[p].is_zero()) continue;
      GroebnerElement e;
      e.g = gens_[p];
      e.rep.assign(ng, Poly(nvars_));
      e.rep[p] = Poly::constant(nvars_, Rat(1));
      monic(e);
      basis_.push_back(std::move(e));
    }
    if (basis_.empty()) throw std::invalid_argument("GroebnerBasis: all generators are zero");

    std::deque<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < basis_.size(); ++i)
      for (size_t j = i + 1; j < basis_.size(); ++j) pairs.emplace_back(i, j);

    while (!pairs.empty()) {
      auto [i, j] = pairs.front();
      pairs.pop_front();
      const PMono& li = basis_[i].g.leading().first;
      const PMono& lj = basis_[j].g.leading().first;
      PMono lcm = pmono_lcm(li, lj);
      // product criterion
      bool coprime = true;
      for (size_t v = 0; v < nvars_; ++v)
        if (li[v] > 0 && lj[v] > 0) coprime = false;
      if (coprime) continue;
      GroebnerElement s;
      s.rep.assign(gens_.size(), Poly(nvars_));
      Poly mi = Poly::monomial(pmono_quotient(lcm, li), Rat(1));
      Poly mj = Poly::monomial(pmono_quotient(lcm, lj), Rat(1));
      s.g = mi * basis_[i].g - mj * basis_[j].g;
      for (size_t p = 0; p < gens_.size(); ++p)
        s.rep[p] = mi * basis_[i].rep[p] - mj * basis_[j].rep[p];
      reduce_tracked(s, basis_);
      if (s.g.is_zero()) continue;
      monic(s);
      size_t idx = basis_.size();
      basis_.push_back(std::move(s));
      for (size_t t = 0; t < idx; ++t) pairs.emplace_back(t, idx);
    }

    // Minimalize: drop elements whose leading monomial another one divides.
    std::vector<GroebnerElement> kept;
    for (size_t i = 0; i < basis_.size(); ++i) {
      const PMono& li = basis_[i].g.leading().first;
      bool redundant = false;
      for (size_t j = 0; j < basis_.size(); ++j) {
        if (i == j) continue;
        const PMono& lj = basis_[j].g.leading().first;
        if (!pmono_divides(lj, li)) continue;
        if (lj == li && j > i) continue;  // keep the earlier of equal leads
        redundant = true;
        break;
      }
      if (!redundant) kept.push_back(basis_[i]);
    }
    std::sort(kept.begin(), kept.end(), [](const GroebnerElement& a, const GroebnerElement& b) {
      return GradedLexLess{}(a.g.leading().first, b.g.leading().first);
    });
    basis_ = std::move(kept);

    // Tail-reduce each element against the others.
    for (size_t i = 0; i < basis_.size(); ++i) {
      std::vector<GroebnerElement> others;
      for (size_t j = 0; j < basis_.size(); ++j)
        if (j != i) others.push_back(basis_[j]);
      GroebnerElement e = basis_[i];
      reduce_tracked(e, others);
      if (e.g.is_zero() || e.g.leading().first != basis_[i].g.leading().first)
        throw std::runtime_error("GroebnerBasis: tail reduction moved a leading term");
      basis_[i] = std::move(e);
    }
  }

  size_t nvars_;
  std::vector<Poly> gens_;
  std::vector<GroebnerElement> basis_;
};

}  // namespace jacquet
