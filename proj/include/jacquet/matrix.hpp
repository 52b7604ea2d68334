// Dense exact linear algebra: elimination, kernels, inverses, characteristic
// polynomials with rational root isolation, and simultaneous upper
// triangularization of commuting matrices ordered by an eigenvalue comparator.
#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jacquet/rational.hpp"

namespace jacquet {

class RatMat {
 public:
  RatMat() : r_(0), c_(0) {}
  RatMat(size_t r, size_t c) : r_(r), c_(c), a_(r * c, Rat(0)) {}

  static RatMat identity(size_t n) {
    RatMat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }

  Rat& at(size_t i, size_t j) { return a_[i * c_ + j]; }
  const Rat& at(size_t i, size_t j) const { return a_[i * c_ + j]; }

  bool operator==(const RatMat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

  RatMat transpose() const {
    RatMat t(c_, r_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

 private:
  size_t r_, c_;
  std::vector<Rat> a_;
};

inline RatMat operator*(const RatMat& a, const RatMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  RatMat m(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      const Rat& aik = a.at(i, k);
      if (aik == 0) continue;
      for (size_t j = 0; j < b.cols(); ++j) {
        const Rat& bkj = b.at(k, j);
        if (bkj != 0) m.at(i, j) += aik * bkj;
      }
    }
  return m;
}

inline RatMat operator+(const RatMat& a, const RatMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum shape");
  RatMat m(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j) + b.at(i, j);
  return m;
}

inline RatMat operator-(const RatMat& a, const RatMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix diff shape");
  RatMat m(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j) - b.at(i, j);
  return m;
}

inline RatMat operator*(const Rat& s, const RatMat& a) {
  RatMat m(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) m.at(i, j) = s * a.at(i, j);
  return m;
}

inline std::vector<Rat> operator*(const RatMat& a, const std::vector<Rat>& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  std::vector<Rat> r(a.rows(), Rat(0));
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != 0 && v[j] != 0) r[i] += a.at(i, j) * v[j];
  return r;
}

// Reduced row echelon form; pivots receives the pivot column of each leading row.
inline RatMat rref(RatMat m, std::vector<size_t>* pivots = nullptr) {
  size_t lead = 0;
  if (pivots) pivots->clear();
  for (size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
    size_t piv = lead;
    while (piv < m.rows() && m.at(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != lead)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(lead, j));
    Rat inv = 1 / m.at(lead, col);
    for (size_t j = col; j < m.cols(); ++j) m.at(lead, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == lead || m.at(i, col) == 0) continue;
      Rat f = m.at(i, col);
      for (size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(lead, j);
    }
    if (pivots) pivots->push_back(col);
    ++lead;
  }
  return m;
}

inline size_t rank(const RatMat& m) {
  std::vector<size_t> piv;
  rref(m, &piv);
  return piv.size();
}

// Basis of the right null space, one vector per free column, deterministic.
inline std::vector<std::vector<Rat>> kernel(const RatMat& m) {
  std::vector<size_t> piv;
  RatMat e = rref(m, &piv);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t p : piv) is_pivot[p] = true;
  std::vector<std::vector<Rat>> basis;
  for (size_t free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Rat> v(m.cols(), Rat(0));
    v[free_col] = 1;
    for (size_t row = 0; row < piv.size(); ++row) v[piv[row]] = -e.at(row, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

// One solution of Ax = b, or nullopt if inconsistent.
inline std::optional<std::vector<Rat>> solve(const RatMat& a, const std::vector<Rat>& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve shape mismatch");
  RatMat aug(a.rows(), a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  std::vector<size_t> piv;
  RatMat e = rref(aug, &piv);
  for (size_t p : piv)
    if (p == a.cols()) return std::nullopt;
  std::vector<Rat> x(a.cols(), Rat(0));
  for (size_t row = 0; row < piv.size(); ++row) x[piv[row]] = e.at(row, a.cols());
  return x;
}

inline RatMat inverse(const RatMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  size_t n = a.rows();
  RatMat aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = 1;
  }
  std::vector<size_t> piv;
  RatMat e = rref(aug, &piv);
  if (piv.size() != n || piv.back() != n - 1) throw std::runtime_error("singular matrix");
  RatMat inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv.at(i, j) = e.at(i, n + j);
  return inv;
}

// Monic char poly of A as ascending coefficients of det(xI - A),
// by Faddeev-LeVerrier.
inline std::vector<Rat> char_poly(const RatMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("char_poly of non-square matrix");
  size_t n = a.rows();
  std::vector<Rat> coef(n + 1, Rat(0));
  coef[n] = 1;
  RatMat m = RatMat(n, n);
  for (size_t k = 1; k <= n; ++k) {
    // M_k = A*(M_{k-1} + c_{n-k+1} I); first step M_1 = A.
    if (k == 1) {
      m = a;
    } else {
      RatMat t = m;
      for (size_t i = 0; i < n; ++i) t.at(i, i) += coef[n - k + 1];
      m = a * t;
    }
    Rat tr(0);
    for (size_t i = 0; i < n; ++i) tr += m.at(i, i);
    coef[n - k] = -tr / Rat(long(k));
  }
  return coef;
}

namespace detail {
inline std::vector<mpz_class> divisors_of(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> divs{1};
  if (n <= 1) return divs;
  std::vector<std::pair<mpz_class, unsigned>> fac;
  mpz_class d = 2;
  while (d * d <= n && d < 2000000) {
    if (n % d == 0) {
      unsigned e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      fac.emplace_back(d, e);
    }
    d += (d == 2) ? 1 : 2;
  }
  if (n > 1) fac.emplace_back(n, 1);  // prime or stubborn cofactor
  for (auto& [p, e] : fac) {
    size_t sz = divs.size();
    mpz_class pk = 1;
    for (unsigned t = 1; t <= e; ++t) {
      pk *= p;
      for (size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

inline Rat poly_eval(const std::vector<Rat>& coef, const Rat& x) {
  Rat v(0);
  for (size_t i = coef.size(); i-- > 0;) v = v * x + coef[i];
  return v;
}
}  // namespace detail

// All roots of a rational polynomial together with multiplicities; throws if
// the polynomial does not split over Q. Candidate roots come from the
// rational root theorem on the primitive integer form.
inline std::vector<std::pair<Rat, size_t>> rational_roots(std::vector<Rat> coef) {
  while (!coef.empty() && coef.back() == 0) coef.pop_back();
  if (coef.size() <= 1) throw std::invalid_argument("rational_roots: degenerate polynomial");
  mpz_class den_lcm = 1;
  for (const auto& c : coef) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> ic;
  for (const auto& c : coef) ic.push_back(mpz_class(c.get_num() * (den_lcm / c.get_den())));

  std::vector<std::pair<Rat, size_t>> roots;
  std::vector<Rat> cur(coef);
  auto add_root = [&](const Rat& r) {
    for (auto& [v, m] : roots)
      if (v == r) {
        ++m;
        return;
      }
    roots.emplace_back(r, 1);
  };
  // Deflate zero roots first.
  while (cur.size() > 1 && cur[0] == 0) {
    add_root(Rat(0));
    cur.erase(cur.begin());
  }
  if (cur.size() > 1) {
    size_t lead = ic.size();
    while (lead > 0 && ic[lead - 1] == 0) --lead;
    size_t low = 0;
    while (low < ic.size() && ic[low] == 0) ++low;
    auto ps = detail::divisors_of(low < ic.size() ? ic[low] : mpz_class(1));
    auto qs = detail::divisors_of(lead > 0 ? ic[lead - 1] : mpz_class(1));
    std::vector<Rat> candidates;
    for (const auto& p : ps)
      for (const auto& q : qs) {
        Rat r(p, q);
        r.canonicalize();
        candidates.push_back(r);
        candidates.push_back(-r);
      }
    for (const Rat& c : candidates) {
      while (cur.size() > 1 && detail::poly_eval(cur, c) == 0) {
        add_root(c);
        // synthetic division by (x - c)
        std::vector<Rat> next(cur.size() - 1, Rat(0));
        Rat carry(0);
        for (size_t i = cur.size(); i-- > 1;) {
          next[i - 1] = cur[i] + carry;
          carry = next[i - 1] * c;
        }
        cur = std::move(next);
      }
      if (cur.size() <= 1) break;
    }
  }
  if (cur.size() > 1) throw std::runtime_error("rational_roots: polynomial has irrational roots");
  return roots;
}

struct Triangularization {
  RatMat basis_change;           // P with P * A_k = T_k * P
  std::vector<RatMat> forms;     // T_k, upper triangular
  std::vector<std::vector<Rat>> tuples;  // joint eigenvalue tuple per basis row
  std::vector<size_t> block_sizes;       // sizes of the joint generalized eigenspaces, in row order
};

namespace detail {
// Matrix of A restricted to the invariant column span of basis B: A*B = B*A'.
inline RatMat restrict_to(const RatMat& a, const RatMat& basis) {
  size_t n = basis.rows(), d = basis.cols();
  RatMat ab = a * basis;
  RatMat rest(d, d);
  for (size_t j = 0; j < d; ++j) {
    std::vector<Rat> col(n);
    for (size_t i = 0; i < n; ++i) col[i] = ab.at(i, j);
    auto x = solve(basis, col);
    if (!x) throw std::runtime_error("restrict_to: subspace not invariant");
    for (size_t i = 0; i < d; ++i) rest.at(i, j) = (*x)[i];
  }
  return rest;
}

inline RatMat cols_from(const std::vector<std::vector<Rat>>& vs) {
  if (vs.empty()) return RatMat(0, 0);
  RatMat m(vs[0].size(), vs.size());
  for (size_t j = 0; j < vs.size(); ++j)
    for (size_t i = 0; i < vs[j].size(); ++i) m.at(i, j) = vs[j][i];
  return m;
}
}  // namespace detail

// Simultaneous upper triangularization of pairwise commuting matrices whose
// joint eigenvalues are all rational. Rows of basis_change are ordered so the
// joint eigenvalue tuples run descending in tuple_less; the trailing row of
// each block is a genuine joint eigenvector, so trailing row spans are
// invariant, matching a descending filtration. eigen_hints, when nonempty,
// short-circuits root isolation (hints[k] are candidate eigenvalues of As[k]).
inline Triangularization triangularize_commuting(
    const std::vector<RatMat>& As,
    const std::function<bool(const std::vector<Rat>&, const std::vector<Rat>&)>& tuple_less,
    const std::vector<std::vector<Rat>>& eigen_hints = {}) {
  if (As.empty()) throw std::invalid_argument("triangularize_commuting: no matrices");
  size_t n = As[0].rows();
  for (const auto& a : As)
    if (a.rows() != n || a.cols() != n)
      throw std::invalid_argument("triangularize_commuting: shape mismatch");
  for (size_t i = 0; i < As.size(); ++i)
    for (size_t j = i + 1; j < As.size(); ++j)
      if (!(As[i] * As[j] == As[j] * As[i]))
        throw std::invalid_argument("triangularize_commuting: matrices do not commute");

  // P * A = T * P with T upper triangular makes the trailing row spans of P
  // invariant under A^T, so the whole construction runs on the transposes:
  // rows of P are a joint generalized eigenbasis of the A_k^T.
  std::vector<RatMat> ats;
  for (const auto& a : As) ats.push_back(a.transpose());

  struct Block {
    RatMat basis;  // columns span the subspace
    std::vector<Rat> tuple;
  };
  std::vector<Block> blocks{{RatMat::identity(n), {}}};
  for (size_t k = 0; k < ats.size(); ++k) {
    std::vector<Block> next;
    for (auto& blk : blocks) {
      RatMat rest = detail::restrict_to(ats[k], blk.basis);
      size_t d = rest.rows();
      std::vector<Rat> eigs;
      if (k < eigen_hints.size() && !eigen_hints[k].empty()) {
        for (const Rat& c : eigen_hints[k]) {
          // Hint lists may repeat a candidate; probing it twice would double
          // up its eigenspace and corrupt the dimension count below.
          if (std::find(eigs.begin(), eigs.end(), c) != eigs.end()) continue;
          RatMat shifted = rest;
          for (size_t i = 0; i < d; ++i) shifted.at(i, i) -= c;
          if (rank(shifted) < d) eigs.push_back(c);
        }
      }
      if (eigs.empty()) {
        for (auto& [val, mult] : rational_roots(char_poly(rest))) eigs.push_back(val);
      }
      size_t consumed = 0;
      for (const Rat& c : eigs) {
        RatMat nil = rest;
        for (size_t i = 0; i < d; ++i) nil.at(i, i) -= c;
        RatMat power = RatMat::identity(d);
        for (size_t t = 0; t < d; ++t) power = power * nil;
        auto ker = kernel(power);
        if (ker.empty()) continue;
        RatMat sub = detail::cols_from(ker);           // coords within blk
        RatMat lifted = blk.basis * sub;               // coords in ambient
        Block b{lifted, blk.tuple};
        b.tuple.push_back(c);
        consumed += ker.size();
        next.push_back(std::move(b));
      }
      if (consumed != d)
        throw std::runtime_error("triangularize_commuting: eigenvalues not fully rational");
    }
    blocks = std::move(next);
  }

  std::stable_sort(blocks.begin(), blocks.end(),
                   [&](const Block& a, const Block& b) { return tuple_less(b.tuple, a.tuple); });

  // Within each block build the joint kernel chain of the shifted transposes,
  // V_1 = joint kernel, V_t = {v : N v in V_{t-1}}. Rows are emitted deepest
  // level first so the trailing row of each block is a joint eigenvector.
  std::vector<std::vector<Rat>> rows;
  std::vector<std::vector<Rat>> row_tuples;
  std::vector<size_t> block_sizes;
  for (auto& blk : blocks) {
    size_t d = blk.basis.cols();
    std::vector<RatMat> nils;
    for (size_t k = 0; k < ats.size(); ++k) {
      RatMat rest = detail::restrict_to(ats[k], blk.basis);
      for (size_t i = 0; i < d; ++i) rest.at(i, i) -= blk.tuple[k];
      nils.push_back(std::move(rest));
    }
    std::vector<std::vector<std::vector<Rat>>> levels;  // levels[t] spans V_{t+1} over V_t
    RatMat flag(d, 0);  // columns: basis of the current V_t, in block coords
    size_t covered = 0;
    while (covered < d) {
      // Extend flag to a full basis with standard vectors, greedily by rank.
      RatMat ext(d, d);
      for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < covered; ++j) ext.at(i, j) = flag.at(i, j);
      size_t have = covered;
      for (size_t s = 0; s < d && have < d; ++s) {
        ext.at(s, have) = 1;
        RatMat test(d, have + 1);
        for (size_t i = 0; i < d; ++i)
          for (size_t j = 0; j <= have; ++j) test.at(i, j) = ext.at(i, j);
        if (rank(test) == have + 1)
          ++have;
        else
          ext.at(s, have) = 0;
      }
      // v lies in V_{t+1} iff every N_k v has zero coordinates past the flag.
      RatMat coords = inverse(ext);
      RatMat stacked((d - covered) * nils.size(), d);
      for (size_t k = 0; k < nils.size(); ++k) {
        RatMat q = coords * nils[k];
        for (size_t i = covered; i < d; ++i)
          for (size_t j = 0; j < d; ++j)
            stacked.at(k * (d - covered) + (i - covered), j) = q.at(i, j);
      }
      auto ker = kernel(stacked);
      std::vector<std::vector<Rat>> fresh;
      RatMat grow(d, d);
      for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < covered; ++j) grow.at(i, j) = flag.at(i, j);
      size_t got = covered;
      for (auto& v : ker) {
        if (got == d) break;
        for (size_t i = 0; i < d; ++i) grow.at(i, got) = v[i];
        RatMat test(d, got + 1);
        for (size_t i = 0; i < d; ++i)
          for (size_t j = 0; j <= got; ++j) test.at(i, j) = grow.at(i, j);
        if (rank(test) == got + 1) {
          fresh.push_back(v);
          ++got;
        } else {
          for (size_t i = 0; i < d; ++i) grow.at(i, got) = 0;
        }
      }
      if (fresh.empty())
        throw std::runtime_error("triangularize_commuting: flag construction stalled");
      levels.push_back(fresh);
      RatMat nf(d, got);
      for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j < covered; ++j) nf.at(i, j) = flag.at(i, j);
        for (size_t j = 0; j < fresh.size(); ++j) nf.at(i, covered + j) = fresh[j][i];
      }
      flag = std::move(nf);
      covered = got;
    }
    size_t emitted = 0;
    for (size_t t = levels.size(); t-- > 0;) {
      for (auto& v : levels[t]) {
        std::vector<Rat> amb(blk.basis.rows(), Rat(0));
        for (size_t i = 0; i < blk.basis.rows(); ++i)
          for (size_t j = 0; j < d; ++j) amb[i] += blk.basis.at(i, j) * v[j];
        // normalize: last nonzero coordinate 1
        size_t last = amb.size();
        while (last > 0 && amb[last - 1] == 0) --last;
        if (last == 0) throw std::runtime_error("triangularize_commuting: zero flag vector");
        Rat inv = 1 / amb[last - 1];
        for (auto& x : amb) x *= inv;
        rows.push_back(std::move(amb));
        row_tuples.push_back(blk.tuple);
        ++emitted;
      }
    }
    block_sizes.push_back(emitted);
  }

  Triangularization out;
  out.basis_change = RatMat(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out.basis_change.at(i, j) = rows[i][j];
  RatMat pinv = inverse(out.basis_change);
  for (const auto& a : As) {
    RatMat t = out.basis_change * a * pinv;
    out.forms.push_back(std::move(t));
  }
  out.tuples = std::move(row_tuples);
  out.block_sizes = std::move(block_sizes);

  for (const auto& t : out.forms)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < i; ++j)
        if (!(t.at(i, j) == 0))
          throw std::runtime_error("triangularize_commuting: form not upper triangular");
  return out;
}

}  // namespace jacquet
