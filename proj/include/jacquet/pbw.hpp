// Poincare-Birkhoff-Witt machinery: normal-ordered elements of U(g) over an
// ordered generator list, straightening via the bracket table. Two engines
// share each algebra: the "chi" order (E.. H.. K.. M..) whose right tail
// recognizes U(g)k, and the "weight" order (E.. H.. F.. M..) whose generators
// are all ad(a)-weight vectors so weight components are monomial filters.
// K_i = E_i - F_i converts one basis into the other.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "jacquet/catalog.hpp"
#include "jacquet/rational.hpp"
#include "jacquet/weight.hpp"

namespace jacquet {

constexpr size_t kMaxGens = 16;
using Mono = std::array<uint8_t, kMaxGens>;  // exponents by generator index
using Noe = std::map<Mono, Rat>;             // normal-ordered element

inline Mono mono_one() {
  Mono m{};
  return m;
}

inline unsigned mono_degree(const Mono& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

inline Mono mono_mul(const Mono& a, const Mono& b) {
  Mono m{};
  for (size_t i = 0; i < kMaxGens; ++i) {
    unsigned s = unsigned(a[i]) + unsigned(b[i]);
    if (s > 0xff) throw std::overflow_error("PBW exponent overflow");
    m[i] = static_cast<uint8_t>(s);
  }
  return m;
}

inline void noe_add(Noe& a, const Mono& m, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = a.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) a.erase(it);
  }
}

inline void noe_axpy(Noe& a, const Rat& s, const Noe& b) {
  if (s == 0) return;
  for (const auto& [m, c] : b) noe_add(a, m, s * c);
}

inline Noe noe_scale(const Rat& s, const Noe& a) {
  Noe r;
  if (s != 0)
    for (const auto& [m, c] : a) r.emplace(m, s * c);
  return r;
}

inline Noe noe_sub(const Noe& a, const Noe& b) {
  Noe r = a;
  noe_axpy(r, Rat(-1), b);
  return r;
}

inline Noe noe_sum(const Noe& a, const Noe& b) {
  Noe r = a;
  noe_axpy(r, Rat(1), b);
  return r;
}

inline unsigned noe_degree(const Noe& a) {  // 0 for the zero element
  unsigned d = 0;
  for (const auto& [m, c] : a) d = std::max(d, mono_degree(m));
  return d;
}

class PbwEngine {
 public:
  PbwEngine(const LieAlgebra* alg, std::vector<std::vector<Rat>> gen_vecs,
            std::vector<std::string> names)
      : alg_(alg), gens_(std::move(gen_vecs)), names_(std::move(names)) {
    ng_ = gens_.size();
    if (ng_ != alg_->dim || ng_ > kMaxGens)
      throw std::invalid_argument("PbwEngine: generators must form a basis of g");
    RatMat gm(alg_->dim, ng_);
    for (size_t j = 0; j < ng_; ++j)
      for (size_t i = 0; i < alg_->dim; ++i) gm.at(i, j) = gens_[j][i];
    to_gen_ = inverse(gm);  // throws when the generators are dependent
    gbrk_.assign(ng_, std::vector<std::vector<Rat>>(ng_));
    for (size_t a = 0; a < ng_; ++a)
      for (size_t b = 0; b < ng_; ++b)
        gbrk_[a][b] = to_gen_ * alg_->bracket(gens_[a], gens_[b]);
    for (size_t j = 0; j < ng_; ++j) {
      std::optional<Weight> w;
      bool homog = true;
      for (size_t i = 0; i < alg_->dim; ++i) {
        if (gens_[j][i] == 0) continue;
        if (!w)
          w = alg_->weights[i];
        else if (!(*w == alg_->weights[i]))
          homog = false;
      }
      gen_weights_.push_back(homog ? w : std::nullopt);
    }
  }

  const LieAlgebra& algebra() const { return *alg_; }
  size_t ngens() const { return ng_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Rat>& gen_vector(size_t i) const { return gens_[i]; }
  const std::vector<Rat>& gen_bracket(size_t a, size_t b) const { return gbrk_[a][b]; }

  Noe one() const { return Noe{{mono_one(), Rat(1)}}; }

  Noe gen(size_t i, uint8_t power = 1) const {
    if (i >= ng_) throw std::invalid_argument("generator index out of range");
    Mono m{};
    m[i] = power;
    return Noe{{m, Rat(1)}};
  }

  // a Lie algebra vector as a degree-one element
  Noe embed(const std::vector<Rat>& gvec) const {
    std::vector<Rat> c = to_gen_ * gvec;
    Noe r;
    for (size_t i = 0; i < ng_; ++i) {
      Mono m{};
      m[i] = 1;
      noe_add(r, m, c[i]);
    }
    return r;
  }

  // x^m * g_j, normal ordered
  Noe mul_gen(const Noe& a, size_t j) const {
    Noe r;
    for (const auto& [m, c] : a) noe_axpy(r, c, insert(m, j));
    return r;
  }

  Noe mul(const Noe& a, const Noe& b) const {
    Noe out;
    for (const auto& [mb, cb] : b) {
      Noe cur = a;
      for (size_t j = 0; j < ng_; ++j)
        for (uint8_t e = 0; e < mb[j]; ++e) cur = mul_gen(cur, j);
      noe_axpy(out, cb, cur);
    }
    return out;
  }

  Noe commutator(const Noe& a, const Noe& b) const { return noe_sub(mul(a, b), mul(b, a)); }

  // ad(a)-weight of a monomial; all touched generators must be weight vectors.
  Weight mono_weight(const Mono& m) const {
    Weight w = zero_weight(alg_->rank);
    for (size_t i = 0; i < ng_; ++i) {
      if (m[i] == 0) continue;
      if (!gen_weights_[i])
        throw std::runtime_error("mono_weight: generator is not an ad(a)-weight vector");
      w = w + rat(long(m[i])) * (*gen_weights_[i]);
    }
    return w;
  }

  bool gens_all_weight_vectors() const {
    for (const auto& w : gen_weights_)
      if (!w) return false;
    return true;
  }

  std::string to_string(const Noe& a) const {
    if (a.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : a) {
      if (!first) os << " + ";
      first = false;
      std::vector<std::string> factors;
      if (c != 1 || mono_degree(m) == 0) factors.push_back(rat_to_string(c));
      for (size_t i = 0; i < ng_; ++i) {
        if (m[i] == 0) continue;
        std::string f = names_[i];
        if (m[i] > 1) f += "^" + std::to_string(int(m[i]));
        factors.push_back(std::move(f));
      }
      for (size_t i = 0; i < factors.size(); ++i) {
        if (i) os << "*";
        os << factors[i];
      }
    }
    return os.str();
  }

 private:
  // normal order of x^m * g_j
  const Noe& insert(const Mono& m, size_t j) const {
    auto key = std::make_pair(m, j);
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;
    Noe result;
    size_t t = ng_;
    for (size_t i = ng_; i-- > j + 1;)
      if (m[i] > 0) {
        t = i;
        break;
      }
    if (t == ng_) {
      Mono r = m;
      if (r[j] == 0xff) throw std::overflow_error("PBW exponent overflow");
      r[j] = static_cast<uint8_t>(r[j] + 1);
      result.emplace(r, Rat(1));
    } else {
      Mono mp = m;
      mp[t] = static_cast<uint8_t>(mp[t] - 1);
      // x^m g_j = x^mp g_t g_j = (x^mp g_j) g_t + x^mp [g_t, g_j]
      const Noe& head = insert(mp, j);
      result = mul_gen(head, t);
      const auto& br = gbrk_[t][j];
      for (size_t k = 0; k < ng_; ++k)
        if (br[k] != 0) noe_axpy(result, br[k], insert(mp, k));
    }
    auto [it, fresh] = memo_.emplace(std::move(key), std::move(result));
    (void)fresh;
    return it->second;
  }

  const LieAlgebra* alg_;
  std::vector<std::vector<Rat>> gens_;
  std::vector<std::string> names_;
  size_t ng_;
  RatMat to_gen_;
  std::vector<std::vector<std::vector<Rat>>> gbrk_;
  std::vector<std::optional<Weight>> gen_weights_;
  mutable std::map<std::pair<Mono, size_t>, Noe> memo_;
};

// The two engines used throughout: identical slot layout (e/h/tail/m), the
// tail being K_i = E_i - F_i in the chi order and F_i in the weight order.
struct EnginePair {
  LieAlgebra alg;
  std::unique_ptr<PbwEngine> chi;
  std::unique_ptr<PbwEngine> wt;
};

inline std::unique_ptr<PbwEngine> make_weight_engine(const LieAlgebra& alg) {
  std::vector<std::vector<Rat>> vecs;
  for (size_t i = 0; i < alg.dim; ++i) vecs.push_back(alg.basis_vector(i));
  return std::make_unique<PbwEngine>(&alg, std::move(vecs), alg.basis_names);
}

inline std::unique_ptr<PbwEngine> make_chi_engine(const LieAlgebra& alg) {
  std::vector<std::vector<Rat>> vecs;
  std::vector<std::string> names;
  for (size_t i = 0; i < alg.dim; ++i) vecs.push_back(alg.basis_vector(i));
  names = alg.basis_names;
  for (size_t i = 0; i < alg.n_count; ++i) {
    auto& v = vecs[alg.f_index(i)];
    v = alg.basis_vector(alg.e_index(i));
    v[alg.f_index(i)] = -1;  // K_i = E_i - F_i = E_i + theta(E_i)
    std::string n = alg.basis_names[alg.e_index(i)];
    if (!n.empty() && n[0] == 'E')
      n[0] = 'K';
    else
      n = "K" + std::to_string(i + 1);
    names[alg.f_index(i)] = n;
  }
  return std::make_unique<PbwEngine>(&alg, std::move(vecs), std::move(names));
}

inline EnginePair make_engines(const std::string& name) {
  EnginePair p;
  p.alg = make_algebra(name);
  p.chi = make_chi_engine(p.alg);
  p.wt = make_weight_engine(p.alg);
  return p;
}

// Rewrite an element of one engine on another engine's generators, given the
// image of each generator. Monomial order is preserved left to right.
inline Noe convert(const Noe& a, const PbwEngine& from, const PbwEngine& to,
                   const std::vector<Noe>& images) {
  if (images.size() != from.ngens()) throw std::invalid_argument("convert: image count mismatch");
  Noe out;
  for (const auto& [m, c] : a) {
    Noe acc = to.one();
    for (size_t j = 0; j < from.ngens(); ++j)
      for (uint8_t e = 0; e < m[j]; ++e) acc = to.mul(acc, images[j]);
    noe_axpy(out, c, acc);
  }
  return out;
}

// chi order -> weight order: K_i = E_i - F_i, everything else in place.
inline Noe chi_to_weight(const Noe& a, const EnginePair& p) {
  std::vector<Noe> images;
  for (size_t j = 0; j < p.alg.dim; ++j) images.push_back(p.wt->gen(j));
  for (size_t i = 0; i < p.alg.n_count; ++i)
    images[p.alg.f_index(i)] =
        noe_sub(p.wt->gen(p.alg.e_index(i)), p.wt->gen(p.alg.f_index(i)));
  return convert(a, *p.chi, *p.wt, images);
}

// weight order -> chi order: F_i = E_i - K_i.
inline Noe weight_to_chi(const Noe& a, const EnginePair& p) {
  std::vector<Noe> images;
  for (size_t j = 0; j < p.alg.dim; ++j) images.push_back(p.chi->gen(j));
  for (size_t i = 0; i < p.alg.n_count; ++i)
    images[p.alg.f_index(i)] =
        noe_sub(p.chi->gen(p.alg.e_index(i)), p.chi->gen(p.alg.f_index(i)));
  return convert(a, *p.wt, *p.chi, images);
}

}  // namespace jacquet
