// The algebra catalog: split and quasi-split real forms of small rank, each
// presented on the ordered basis (E_1..E_m, H_1..H_l, F_1..F_m, M_1..M_s)
// where the E's span n (one per positive restricted root, with multiplicity),
// the H's are the simple coroots spanning a, F_i = -theta(E_i), and the M's
// span m. Structure constants are computed from explicit matrix realizations,
// never entered by hand; published invariants (Cartan matrix, rho, |W|) are
// asserted against the computed data at construction time.
#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "jacquet/matrix.hpp"
#include "jacquet/rational.hpp"
#include "jacquet/weight.hpp"

namespace jacquet {

struct LieAlgebra {
  std::string name;
  size_t dim = 0;      // = 2*n_count + rank + m_count
  size_t rank = 0;     // dim a
  size_t n_count = 0;  // dim n
  size_t m_count = 0;  // dim m
  std::vector<std::string> basis_names;

  // brk[i][j][k]: coefficient of basis_k in [basis_i, basis_j]
  std::vector<std::vector<std::vector<Rat>>> brk;

  // ad(a)-weight of each basis vector, in simple restricted root coordinates
  std::vector<Weight> weights;

  RatMat cartan;  // cartan.at(i, j) = alpha_i(H_j)
  Weight rho;     // half sum of positive restricted roots with multiplicity

  std::vector<RatMat> weyl;  // little Weyl group acting on root coordinates, id first

  // Defining matrix realization of each basis vector, over the reals (a
  // complex realization is stored as the doubled real matrix). Used for
  // trace-form invariants, where the adjoint representation is too symmetric:
  // its odd trace powers vanish identically.
  std::vector<RatMat> rep;

  size_t e_index(size_t i) const { return i; }
  size_t h_index(size_t j) const { return n_count + j; }
  size_t f_index(size_t i) const { return n_count + rank + i; }
  size_t m_index(size_t k) const { return 2 * n_count + rank + k; }

  std::vector<Rat> bracket(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
    std::vector<Rat> r(dim, Rat(0));
    for (size_t i = 0; i < dim; ++i) {
      if (x[i] == 0) continue;
      for (size_t j = 0; j < dim; ++j) {
        if (y[j] == 0) continue;
        Rat c = x[i] * y[j];
        for (size_t k = 0; k < dim; ++k)
          if (brk[i][j][k] != 0) r[k] += c * brk[i][j][k];
      }
    }
    return r;
  }

  std::vector<Rat> basis_vector(size_t i) const {
    std::vector<Rat> v(dim, Rat(0));
    v[i] = 1;
    return v;
  }

  // theta on basis vectors: E_i <-> -F_i, a -> -a, m -> m.
  std::vector<Rat> theta(const std::vector<Rat>& x) const {
    std::vector<Rat> r(dim, Rat(0));
    for (size_t i = 0; i < n_count; ++i) {
      r[f_index(i)] = -x[e_index(i)];
      r[e_index(i)] = -x[f_index(i)];
    }
    for (size_t j = 0; j < rank; ++j) r[h_index(j)] = -x[h_index(j)];
    for (size_t k = 0; k < m_count; ++k) r[m_index(k)] = x[m_index(k)];
    return r;
  }

  // mu(X) for X = sum xj * H_j in coroot coordinates.
  Rat eval_on_a(const Weight& mu, const std::vector<Rat>& x) const {
    if (mu.c.size() != rank || x.size() != rank)
      throw std::invalid_argument("eval_on_a: rank mismatch");
    Rat v(0);
    for (size_t i = 0; i < rank; ++i)
      for (size_t j = 0; j < rank; ++j) v += mu.c[i] * cartan.at(i, j) * x[j];
    return v;
  }

  Rat eval_at_coroot(const Weight& mu, size_t j) const {
    std::vector<Rat> x(rank, Rat(0));
    x[j] = 1;
    return eval_on_a(mu, x);
  }

  // X in coroot coordinates with alpha_k(X) = values[k] for all simple roots.
  std::vector<Rat> element_with_simple_values(const std::vector<Rat>& values) const {
    auto x = solve(cartan, values);
    if (!x) throw std::runtime_error("element_with_simple_values: Cartan matrix singular");
    return *x;
  }
};

namespace detail {

// A basis element given as a flat rational vector of its matrix realization
// (real entries; for complexified realizations the imaginary parts are
// appended). bracket_flat computes the commutator in the same flat format.
struct RealizedBasis {
  std::vector<std::string> names;
  std::vector<std::vector<Rat>> flats;
  std::function<std::vector<Rat>(const std::vector<Rat>&, const std::vector<Rat>&)> bracket_flat;
};

inline std::vector<std::vector<std::vector<Rat>>> structure_constants(const RealizedBasis& rb) {
  size_t dim = rb.flats.size();
  size_t flat = rb.flats[0].size();
  RatMat bm(flat, dim);
  for (size_t j = 0; j < dim; ++j)
    for (size_t i = 0; i < flat; ++i) bm.at(i, j) = rb.flats[j][i];
  if (rank(bm) != dim) throw std::runtime_error("catalog: realization matrices are dependent");
  std::vector<std::vector<std::vector<Rat>>> brk(
      dim, std::vector<std::vector<Rat>>(dim, std::vector<Rat>(dim, Rat(0))));
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j) {
      auto c = rb.bracket_flat(rb.flats[i], rb.flats[j]);
      auto x = solve(bm, c);
      if (!x) throw std::runtime_error("catalog: bracket leaves the spanned algebra");
      brk[i][j] = *x;
    }
  return brk;
}

// flat layout for a real n x n matrix: row major
inline std::vector<Rat> flatten(const RatMat& m) {
  std::vector<Rat> v;
  v.reserve(m.rows() * m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
  return v;
}

inline RatMat unit(size_t n, size_t i, size_t j) {
  RatMat m(n, n);
  m.at(i, j) = 1;
  return m;
}

inline std::vector<Rat> real_commutator_flat(const std::vector<Rat>& a, const std::vector<Rat>& b,
                                             size_t n) {
  RatMat ma(n, n), mb(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      ma.at(i, j) = a[i * n + j];
      mb.at(i, j) = b[i * n + j];
    }
  return flatten(ma * mb - mb * ma);
}

// complex n x n with rational real/imaginary parts: flat = re || im
inline std::vector<Rat> complex_commutator_flat(const std::vector<Rat>& a,
                                                const std::vector<Rat>& b, size_t n) {
  size_t sz = n * n;
  auto part = [&](const std::vector<Rat>& v, size_t off) {
    RatMat m(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) m.at(i, j) = v[off + i * n + j];
    return m;
  };
  RatMat ar = part(a, 0), ai = part(a, sz), br = part(b, 0), bi = part(b, sz);
  RatMat pr = ar * br - ai * bi, pi = ar * bi + ai * br;
  RatMat qr = br * ar - bi * ai, qi = br * ai + bi * ar;
  RatMat re = pr - qr, im = pi - qi;
  auto fr = flatten(re), fi = flatten(im);
  fr.insert(fr.end(), fi.begin(), fi.end());
  return fr;
}

inline RatMat simple_reflection(const RatMat& cartan, size_t i) {
  // s_i(alpha_j) = alpha_j - alpha_j(H_i) alpha_i, expressed on coordinates.
  size_t l = cartan.rows();
  RatMat s = RatMat::identity(l);
  for (size_t j = 0; j < l; ++j) s.at(i, j) -= cartan.at(j, i);
  return s;
}

inline std::vector<RatMat> generate_weyl(const RatMat& cartan) {
  size_t l = cartan.rows();
  std::vector<RatMat> gens;
  for (size_t i = 0; i < l; ++i) gens.push_back(simple_reflection(cartan, i));
  std::vector<RatMat> group{RatMat::identity(l)};
  bool grew = true;
  while (grew) {
    grew = false;
    for (size_t gi = 0; gi < group.size(); ++gi)
      for (const auto& s : gens) {
        RatMat w = s * group[gi];
        bool known = false;
        for (const auto& g : group)
          if (g == w) {
            known = true;
            break;
          }
        if (!known) {
          group.push_back(w);
          grew = true;
          if (group.size() > 64) throw std::runtime_error("catalog: Weyl closure runaway");
        }
      }
  }
  return group;
}

inline void finalize(LieAlgebra& g, const RealizedBasis& rb, const Weight& expected_rho,
                     const RatMat& expected_cartan, size_t expected_weyl_order,
                     bool complex_realization = false) {
  g.dim = rb.flats.size();
  g.basis_names = rb.names;
  if (g.dim != 2 * g.n_count + g.rank + g.m_count)
    throw std::runtime_error("catalog: dimension bookkeeping is off");
  g.brk = structure_constants(rb);

  // Keep the defining realization as real matrices; a complex entry a+bi
  // becomes the 2x2 block [[a, -b], [b, a]] at the doubled scale.
  for (const auto& flat : rb.flats) {
    if (complex_realization) {
      size_t sz = flat.size() / 2;
      size_t n = 1;
      while (n * n < sz) ++n;
      RatMat m(2 * n, 2 * n);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
          const Rat& re = flat[i * n + j];
          const Rat& im = flat[sz + i * n + j];
          m.at(i, j) = re;
          m.at(n + i, n + j) = re;
          m.at(i, n + j) = -im;
          m.at(n + i, j) = im;
        }
      g.rep.push_back(std::move(m));
    } else {
      size_t n = 1;
      while (n * n < flat.size()) ++n;
      RatMat m(n, n);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m.at(i, j) = flat[i * n + j];
      g.rep.push_back(std::move(m));
    }
  }
  for (size_t i = 0; i < g.dim; ++i)
    for (size_t j = 0; j < g.dim; ++j) {
      RatMat lhs = g.rep[i] * g.rep[j] - g.rep[j] * g.rep[i];
      RatMat rhs(g.rep[0].rows(), g.rep[0].cols());
      for (size_t k = 0; k < g.dim; ++k)
        if (g.brk[i][j][k] != 0) rhs = rhs + g.brk[i][j][k] * g.rep[k];
      if (!(lhs == rhs))
        throw std::runtime_error("catalog: stored realization is not a homomorphism");
    }

  // Cartan matrix from [H_j, E_i] = alpha_i(H_j) E_i for simple root vectors.
  g.cartan = RatMat(g.rank, g.rank);
  for (size_t i = 0; i < g.rank; ++i)
    for (size_t j = 0; j < g.rank; ++j)
      g.cartan.at(i, j) = g.brk[g.h_index(j)][g.e_index(i)][g.e_index(i)];
  if (!(g.cartan == expected_cartan))
    throw std::runtime_error("catalog: computed Cartan matrix disagrees with the published one");

  // rho = half the sum of the E-basis weights (multiplicity included).
  Weight rho = zero_weight(g.rank);
  for (size_t i = 0; i < g.n_count; ++i) rho = rho + g.weights[g.e_index(i)];
  g.rho = rat(1, 2) * rho;
  if (!(g.rho == expected_rho))
    throw std::runtime_error("catalog: computed rho disagrees with the published one");

  g.weyl = generate_weyl(g.cartan);
  if (g.weyl.size() != expected_weyl_order)
    throw std::runtime_error("catalog: wrong little Weyl group order");
}

}  // namespace detail

inline LieAlgebra make_sl2r() {
  LieAlgebra g;
  g.name = "sl2r";
  g.rank = 1;
  g.n_count = 1;
  g.m_count = 0;
  detail::RealizedBasis rb;
  rb.names = {"E", "H", "F"};
  rb.flats = {detail::flatten(detail::unit(2, 0, 1)),
              detail::flatten(detail::unit(2, 0, 0) - detail::unit(2, 1, 1)),
              detail::flatten(detail::unit(2, 1, 0))};
  rb.bracket_flat = [](const std::vector<Rat>& a, const std::vector<Rat>& b) {
    return detail::real_commutator_flat(a, b, 2);
  };
  g.weights = {Weight{{rat(1)}}, zero_weight(1), Weight{{rat(-1)}}};
  RatMat cartan(1, 1);
  cartan.at(0, 0) = 2;
  detail::finalize(g, rb, Weight{{rat(1, 2)}}, cartan, 2);
  return g;
}

inline LieAlgebra make_sl3r() {
  LieAlgebra g;
  g.name = "sl3r";
  g.rank = 2;
  g.n_count = 3;
  g.m_count = 0;
  detail::RealizedBasis rb;
  rb.names = {"E1", "E2", "E3", "H1", "H2", "F1", "F2", "F3"};
  auto u = [](size_t i, size_t j) { return detail::flatten(detail::unit(3, i, j)); };
  rb.flats = {u(0, 1),
              u(1, 2),
              u(0, 2),
              detail::flatten(detail::unit(3, 0, 0) - detail::unit(3, 1, 1)),
              detail::flatten(detail::unit(3, 1, 1) - detail::unit(3, 2, 2)),
              u(1, 0),
              u(2, 1),
              u(2, 0)};
  rb.bracket_flat = [](const std::vector<Rat>& a, const std::vector<Rat>& b) {
    return detail::real_commutator_flat(a, b, 3);
  };
  auto w = [](long a, long b) { return Weight{{rat(a), rat(b)}}; };
  g.weights = {w(1, 0), w(0, 1), w(1, 1), w(0, 0), w(0, 0), w(-1, 0), w(0, -1), w(-1, -1)};
  RatMat cartan(2, 2);
  cartan.at(0, 0) = 2;
  cartan.at(0, 1) = -1;
  cartan.at(1, 0) = -1;
  cartan.at(1, 1) = 2;
  detail::finalize(g, rb, w(1, 1), cartan, 6);
  return g;
}

inline LieAlgebra make_sp4r() {
  LieAlgebra g;
  g.name = "sp4r";
  g.rank = 2;
  g.n_count = 4;
  g.m_count = 0;
  detail::RealizedBasis rb;
  rb.names = {"E1", "E2", "E3", "E4", "H1", "H2", "F1", "F2", "F3", "F4"};
  auto U = [](size_t i, size_t j) { return detail::unit(4, i, j); };
  // alpha1 = e1-e2 (short), alpha2 = 2e2 (long), then e1+e2 and 2e1.
  RatMat e1 = U(0, 1) - U(3, 2);
  RatMat e2 = U(1, 3);
  RatMat e3 = U(0, 3) + U(1, 2);
  RatMat e4 = U(0, 2);
  RatMat h1 = U(0, 0) - U(1, 1) - U(2, 2) + U(3, 3);
  RatMat h2 = U(1, 1) - U(3, 3);
  rb.flats = {detail::flatten(e1),
              detail::flatten(e2),
              detail::flatten(e3),
              detail::flatten(e4),
              detail::flatten(h1),
              detail::flatten(h2),
              detail::flatten(e1.transpose()),
              detail::flatten(e2.transpose()),
              detail::flatten(e3.transpose()),
              detail::flatten(e4.transpose())};
  rb.bracket_flat = [](const std::vector<Rat>& a, const std::vector<Rat>& b) {
    return detail::real_commutator_flat(a, b, 4);
  };
  auto w = [](long a, long b) { return Weight{{rat(a), rat(b)}}; };
  g.weights = {w(1, 0), w(0, 1), w(1, 1), w(2, 1), w(0, 0),
               w(0, 0), w(-1, 0), w(0, -1), w(-1, -1), w(-2, -1)};
  RatMat cartan(2, 2);
  cartan.at(0, 0) = 2;
  cartan.at(0, 1) = -1;
  cartan.at(1, 0) = -2;
  cartan.at(1, 1) = 2;
  detail::finalize(g, rb, Weight{{rat(2), rat(3, 2)}}, cartan, 8);
  return g;
}

inline LieAlgebra make_sl2c() {
  LieAlgebra g;
  g.name = "sl2c";
  g.rank = 1;
  g.n_count = 2;
  g.m_count = 1;
  detail::RealizedBasis rb;
  rb.names = {"E1", "E2", "H", "F1", "F2", "M1"};
  // Complex 2x2 realization, flat = re || im. F2 = -iF so that F_i = -theta(E_i).
  auto cm = [](const RatMat& re, const RatMat& im) {
    auto fr = detail::flatten(re), fi = detail::flatten(im);
    fr.insert(fr.end(), fi.begin(), fi.end());
    return fr;
  };
  RatMat z(2, 2);
  RatMat e = detail::unit(2, 0, 1);
  RatMat f = detail::unit(2, 1, 0);
  RatMat h = detail::unit(2, 0, 0) - detail::unit(2, 1, 1);
  rb.flats = {cm(e, z), cm(z, e), cm(h, z), cm(f, z), cm(z, rat(-1) * f), cm(z, h)};
  rb.bracket_flat = [](const std::vector<Rat>& a, const std::vector<Rat>& b) {
    return detail::complex_commutator_flat(a, b, 2);
  };
  g.weights = {Weight{{rat(1)}}, Weight{{rat(1)}}, zero_weight(1),
               Weight{{rat(-1)}}, Weight{{rat(-1)}}, zero_weight(1)};
  RatMat cartan(1, 1);
  cartan.at(0, 0) = 2;
  detail::finalize(g, rb, Weight{{rat(1)}}, cartan, 2, /*complex_realization=*/true);
  return g;
}

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"sl2r", "sl3r", "sp4r", "sl2c"};
  return names;
}

inline LieAlgebra make_algebra(const std::string& name) {
  if (name == "sl2r") return make_sl2r();
  if (name == "sl3r") return make_sl3r();
  if (name == "sp4r") return make_sp4r();
  if (name == "sl2c") return make_sl2c();
  throw std::invalid_argument("unknown algebra: " + name);
}

// Structural self-checks beyond what construction already asserts.
inline void validate_algebra(const LieAlgebra& g) {
  auto is_zero_vec = [&](const std::vector<Rat>& v) {
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  };
  // antisymmetry and Jacobi
  for (size_t i = 0; i < g.dim; ++i)
    for (size_t j = 0; j < g.dim; ++j)
      for (size_t k = 0; k < g.dim; ++k)
        if (g.brk[i][j][k] != -g.brk[j][i][k])
          throw std::runtime_error("validate: bracket not antisymmetric");
  for (size_t i = 0; i < g.dim; ++i)
    for (size_t j = i + 1; j < g.dim; ++j)
      for (size_t k = j + 1; k < g.dim; ++k) {
        auto x = g.basis_vector(i), y = g.basis_vector(j), z = g.basis_vector(k);
        auto s = g.bracket(x, g.bracket(y, z));
        auto t = g.bracket(y, g.bracket(z, x));
        auto u = g.bracket(z, g.bracket(x, y));
        for (size_t c = 0; c < g.dim; ++c) s[c] += t[c] + u[c];
        if (!is_zero_vec(s)) throw std::runtime_error("validate: Jacobi identity fails");
      }
  // theta is an involutive automorphism
  for (size_t i = 0; i < g.dim; ++i) {
    auto ti = g.theta(g.basis_vector(i));
    auto tti = g.theta(ti);
    auto bi = g.basis_vector(i);
    for (size_t c = 0; c < g.dim; ++c)
      if (tti[c] != bi[c]) throw std::runtime_error("validate: theta not involutive");
    for (size_t j = 0; j < g.dim; ++j) {
      auto lhs = g.bracket(ti, g.theta(g.basis_vector(j)));
      auto rhs = g.theta(g.bracket(bi, g.basis_vector(j)));
      for (size_t c = 0; c < g.dim; ++c)
        if (lhs[c] != rhs[c]) throw std::runtime_error("validate: theta not an automorphism");
    }
  }
  // every basis vector is an ad(a)-weight vector with the declared weight
  for (size_t j = 0; j < g.rank; ++j) {
    auto hj = g.basis_vector(g.h_index(j));
    for (size_t i = 0; i < g.dim; ++i) {
      auto br = g.bracket(hj, g.basis_vector(i));
      Rat expect = g.eval_at_coroot(g.weights[i], j);
      for (size_t c = 0; c < g.dim; ++c) {
        Rat want = (c == i) ? expect : Rat(0);
        if (br[c] != want) throw std::runtime_error("validate: weight vector check fails");
      }
    }
  }
  // simple pairs are coroot-normalized: [E_i, F_i] = H_i for simple i
  for (size_t i = 0; i < g.rank; ++i) {
    auto br = g.bracket(g.basis_vector(g.e_index(i)), g.basis_vector(g.f_index(i)));
    for (size_t c = 0; c < g.dim; ++c) {
      Rat want = (c == g.h_index(i)) ? Rat(1) : Rat(0);
      if (br[c] != want) throw std::runtime_error("validate: coroot normalization fails");
    }
  }
  // W permutes the restricted roots (weights of the E/F basis, with sign)
  {
    std::set<std::vector<Rat>, RatVecLess> roots;
    for (size_t i = 0; i < g.n_count; ++i) {
      roots.insert(g.weights[g.e_index(i)].c);
      roots.insert(g.weights[g.f_index(i)].c);
    }
    for (const auto& w : g.weyl) {
      for (const auto& r : roots) {
        std::vector<Rat> img = w * r;
        if (!roots.count(img)) throw std::runtime_error("validate: W does not permute roots");
      }
    }
  }
  // W is closed under inversion (finite group sanity)
  for (const auto& w : g.weyl) {
    RatMat winv = inverse(w);
    bool found = false;
    for (const auto& v : g.weyl)
      if (v == winv) found = true;
    if (!found) throw std::runtime_error("validate: W not closed under inverse");
  }
}

}  // namespace jacquet
