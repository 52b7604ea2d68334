// Restricted weights as exact coordinate vectors over the simple roots,
// the total order used to sort Jacquet eigenvalues, lattice membership
// tests, bounded lattice enumeration, and the resonance-separating element.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "jacquet/rational.hpp"

namespace jacquet {

// coords[i] is the coefficient of the i-th simple restricted root; evaluation
// against the dual basis H_j reads off coords[j].
struct Weight {
  std::vector<Rat> c;

  Weight() = default;
  explicit Weight(std::vector<Rat> coords) : c(std::move(coords)) {}

  size_t rank() const { return c.size(); }

  bool operator==(const Weight& o) const { return c == o.c; }
  bool operator!=(const Weight& o) const { return !(*this == o); }
};

inline Weight operator+(const Weight& a, const Weight& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("weight rank mismatch");
  Weight r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

inline Weight operator-(const Weight& a, const Weight& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("weight rank mismatch");
  Weight r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}

inline Weight operator*(const Rat& s, const Weight& a) {
  Weight r = a;
  for (auto& x : r.c) x *= s;
  return r;
}

inline Weight zero_weight(size_t rank) { return Weight(std::vector<Rat>(rank, Rat(0))); }

inline bool is_zero(const Weight& w) {
  return std::all_of(w.c.begin(), w.c.end(), [](const Rat& x) { return x == 0; });
}

// Total order: compare coordinates left to right. Returns <0, 0, >0.
inline int weight_compare(const Weight& a, const Weight& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("weight rank mismatch");
  for (size_t i = 0; i < a.c.size(); ++i) {
    int c = cmp(a.c[i], b.c[i]);
    if (c != 0) return c;
  }
  return 0;
}

struct WeightLess {
  bool operator()(const Weight& a, const Weight& b) const { return weight_compare(a, b) < 0; }
};

// Sum of simple-root coordinates. Integer on lattice points, rational in general.
inline Rat height(const Weight& w) {
  Rat h(0);
  for (const auto& x : w.c) h += x;
  return h;
}

// mu(X) where X in a is described by its simple-root values alpha_k(X).
inline Rat eval_weight(const Weight& mu, const std::vector<Rat>& simple_root_values) {
  if (mu.rank() != simple_root_values.size()) throw std::invalid_argument("eval rank mismatch");
  Rat v(0);
  for (size_t i = 0; i < mu.rank(); ++i) v += mu.c[i] * simple_root_values[i];
  return v;
}

// P is the span of the positive restricted roots over Z; for the catalog's
// root systems that is exactly integer simple-root coordinates, and the
// "plus" cones are the nonnegative-coordinate parts.
enum class Lattice { P, Pplus, Pplusplus, twoP, twoPplus, twoPplusplus };

inline bool in_lattice(const Weight& w, Lattice lat) {
  bool even_required = (lat == Lattice::twoP || lat == Lattice::twoPplus || lat == Lattice::twoPplusplus);
  bool nonneg_required = (lat != Lattice::P && lat != Lattice::twoP);
  bool nonzero_required = (lat == Lattice::Pplusplus || lat == Lattice::twoPplusplus);
  bool all_zero = true;
  for (const auto& x : w.c) {
    if (!is_integer(x)) return false;
    if (nonneg_required && x < 0) return false;
    if (even_required && mpz_odd_p(x.get_num().get_mpz_t())) return false;
    if (x != 0) all_zero = false;
  }
  if (nonzero_required && all_zero) return false;
  return true;
}

namespace detail {
inline void enumerate_rec(std::vector<long>& cur, size_t pos, long budget, long step,
                          std::vector<Weight>& out) {
  if (pos == cur.size()) {
    std::vector<Rat> c;
    c.reserve(cur.size());
    for (long v : cur) c.emplace_back(v);
    out.emplace_back(std::move(c));
    return;
  }
  for (long v = 0; v <= budget; v += step) {
    cur[pos] = v;
    enumerate_rec(cur, pos + 1, budget - v, step, out);
  }
  cur[pos] = 0;
}
}  // namespace detail

// All lattice points with height <= bound, sorted ascending in the total
// order. Only the cone lattices are enumerable.
inline std::vector<Weight> enumerate_lattice(size_t rank, Lattice lat, long height_bound) {
  if (lat == Lattice::P || lat == Lattice::twoP)
    throw std::invalid_argument("enumerate_lattice: lattice is not bounded below");
  long step = (lat == Lattice::twoPplus || lat == Lattice::twoPplusplus) ? 2 : 1;
  bool drop_zero = (lat == Lattice::Pplusplus || lat == Lattice::twoPplusplus);
  std::vector<Weight> out;
  std::vector<long> cur(rank, 0);
  if (height_bound >= 0) detail::enumerate_rec(cur, 0, height_bound, step, out);
  if (drop_zero) {
    out.erase(std::remove_if(out.begin(), out.end(), [](const Weight& w) { return is_zero(w); }),
              out.end());
  }
  std::sort(out.begin(), out.end(), WeightLess{});
  return out;
}

namespace detail {
// All alpha in the ++ cone of `lat` with alpha(X) == target, where
// alpha(X) = sum coords*C. C has strictly positive entries, so the search
// is depth-first with a shrinking budget.
inline void lattice_fiber_rec(const std::vector<long>& C, size_t pos, const Rat& remaining,
                              long step, std::vector<long>& cur, std::vector<Weight>& out) {
  if (pos == C.size()) {
    if (remaining == 0) {
      bool nonzero = std::any_of(cur.begin(), cur.end(), [](long v) { return v != 0; });
      if (nonzero) {
        std::vector<Rat> c;
        c.reserve(cur.size());
        for (long v : cur) c.emplace_back(v);
        out.emplace_back(std::move(c));
      }
    }
    return;
  }
  for (long v = 0;; v += step) {
    Rat used = Rat(v) * Rat(C[pos]);
    if (used > remaining) break;
    cur[pos] = v;
    lattice_fiber_rec(C, pos + 1, remaining - used, step, cur, out);
  }
  cur[pos] = 0;
}

inline std::vector<Weight> lattice_fiber(const std::vector<long>& C, const Rat& target,
                                         Lattice lat) {
  std::vector<Weight> out;
  if (target <= 0 || !is_integer(target)) return out;
  long step = (lat == Lattice::twoP || lat == Lattice::twoPplus || lat == Lattice::twoPplusplus)
                  ? 2
                  : 1;
  std::vector<long> cur(C.size(), 0);
  lattice_fiber_rec(C, 0, target, step, cur, out);
  return out;
}
}  // namespace detail

// Checks that X = sum C_i H_i separates resonances for the given eigenvalue
// weights: whenever alpha in the ++ cone satisfies alpha(X) = (mu_i-mu_j)(X),
// alpha must be mu_i-mu_j itself. This enumeration doubles as the post-hoc
// verifier for the search below.
inline bool oshima_verify(const std::vector<long>& C, const std::vector<Weight>& eigenvalues,
                          Lattice lat) {
  std::vector<Rat> Cr;
  Cr.reserve(C.size());
  for (long v : C) {
    if (v <= 0) return false;
    Cr.emplace_back(v);
  }
  Lattice strict = (lat == Lattice::twoP || lat == Lattice::twoPplus || lat == Lattice::twoPplusplus)
                       ? Lattice::twoPplusplus
                       : Lattice::Pplusplus;
  for (size_t i = 0; i < eigenvalues.size(); ++i) {
    for (size_t j = 0; j < eigenvalues.size(); ++j) {
      if (i == j) continue;
      Weight diff = eigenvalues[i] - eigenvalues[j];
      Rat target = eval_weight(diff, Cr);
      auto fiber = detail::lattice_fiber(C, target, strict);
      bool diff_in = in_lattice(diff, strict);
      if (diff_in) {
        if (fiber.size() != 1 || !(fiber[0] == diff)) return false;
      } else {
        if (!fiber.empty()) return false;
      }
    }
  }
  return true;
}

// Smallest (by max-norm, then lexicographic) strictly positive integer vector
// C whose X separates resonances. Throws if none exists within the cap.
inline std::vector<long> oshima_constants(const std::vector<Weight>& eigenvalues, Lattice lat,
                                          long max_norm_cap = 64) {
  if (eigenvalues.empty()) throw std::invalid_argument("oshima_constants: no eigenvalues");
  size_t rank = eigenvalues[0].rank();
  for (long m = 1; m <= max_norm_cap; ++m) {
    // All C in {1..m}^rank with max-norm exactly m, lexicographic order.
    std::vector<long> C(rank, 1);
    while (true) {
      if (*std::max_element(C.begin(), C.end()) == m && oshima_verify(C, eigenvalues, lat))
        return C;
      size_t k = rank;
      while (k > 0 && C[k - 1] == m) C[--k] = 1;
      if (k == 0) break;
      ++C[k - 1];
    }
  }
  throw std::runtime_error("oshima_constants: no separating element within cap");
}

}  // namespace jacquet
