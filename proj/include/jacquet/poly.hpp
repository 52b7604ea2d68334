// Commutative polynomials over Q in a small set of variables, ordered by
// graded lexicographic monomial order. These model U(a) = Sym(a) and the
// coefficient polynomials of the infinitesimal-character ideal.
#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "jacquet/rational.hpp"

namespace jacquet {

using PMono = std::vector<uint16_t>;

inline unsigned pmono_degree(const PMono& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

// Graded lex: lower total degree first, ties left-to-right by exponent.
struct GradedLexLess {
  bool operator()(const PMono& a, const PMono& b) const {
    if (a.size() != b.size()) throw std::invalid_argument("monomial arity mismatch");
    unsigned da = pmono_degree(a), db = pmono_degree(b);
    if (da != db) return da < db;
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

inline bool pmono_divides(const PMono& a, const PMono& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline PMono pmono_quotient(const PMono& b, const PMono& a) {
  PMono q(b.size());
  for (size_t i = 0; i < b.size(); ++i) {
    if (a[i] > b[i]) throw std::invalid_argument("monomial quotient underflow");
    q[i] = static_cast<uint16_t>(b[i] - a[i]);
  }
  return q;
}

inline PMono pmono_lcm(const PMono& a, const PMono& b) {
  PMono l(a.size());
  for (size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
  return l;
}

class Poly {
 public:
  explicit Poly(size_t nvars = 0) : nvars_(nvars) {}

  static Poly constant(size_t nvars, const Rat& c) {
    Poly p(nvars);
    p.add_term(PMono(nvars, 0), c);
    return p;
  }

  static Poly variable(size_t nvars, size_t i, uint16_t power = 1) {
    if (i >= nvars) throw std::invalid_argument("variable index out of range");
    Poly p(nvars);
    PMono m(nvars, 0);
    m[i] = power;
    p.add_term(m, Rat(1));
    return p;
  }

  static Poly monomial(PMono m, const Rat& c) {
    Poly p(m.size());
    p.add_term(std::move(m), c);
    return p;
  }

  size_t nvars() const { return nvars_; }
  const std::map<PMono, Rat, GradedLexLess>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add_term(PMono m, const Rat& c) {
    if (m.size() != nvars_) throw std::invalid_argument("term arity mismatch");
    if (c == 0) return;
    auto [it, fresh] = t_.emplace(std::move(m), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }

  Rat coeff(const PMono& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Rat(0) : it->second;
  }

  long degree() const {  // -1 for the zero polynomial
    return t_.empty() ? -1 : long(pmono_degree(t_.rbegin()->first));
  }

  std::pair<PMono, Rat> leading() const {
    if (t_.empty()) throw std::runtime_error("leading term of zero polynomial");
    return *t_.rbegin();
  }

  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && t_ == o.t_; }

  Poly& operator+=(const Poly& o) {
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial arity mismatch");
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial arity mismatch");
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Rat& s, const Poly& p) {
    Poly r(p.nvars_);
    if (s != 0)
      for (const auto& [m, c] : p.t_) r.t_.emplace(m, s * c);
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomial arity mismatch");
    Poly r(a.nvars_);
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) {
        PMono m(a.nvars_);
        for (size_t i = 0; i < a.nvars_; ++i) {
          unsigned s = unsigned(ma[i]) + unsigned(mb[i]);
          if (s > 0xffffu) throw std::overflow_error("monomial exponent overflow");
          m[i] = static_cast<uint16_t>(s);
        }
        r.add_term(std::move(m), ca * cb);
      }
    return r;
  }

  Rat eval(const std::vector<Rat>& x) const {
    if (x.size() != nvars_) throw std::invalid_argument("eval arity mismatch");
    Rat v(0);
    for (const auto& [m, c] : t_) {
      Rat term = c;
      for (size_t i = 0; i < nvars_; ++i)
        for (uint16_t e = 0; e < m[i]; ++e) term *= x[i];
      v += term;
    }
    return v;
  }

  Poly derivative(size_t var) const {
    if (var >= nvars_) throw std::invalid_argument("derivative variable out of range");
    Poly r(nvars_);
    for (const auto& [m, c] : t_) {
      if (m[var] == 0) continue;
      PMono d = m;
      d[var] -= 1;
      r.add_term(std::move(d), c * rat(m[var]));
    }
    return r;
  }

  // Substitute variable i -> images[i]; images share a common arity.
  Poly substitute(const std::vector<Poly>& images) const {
    if (images.size() != nvars_) throw std::invalid_argument("substitute arity mismatch");
    size_t out_vars = nvars_ == 0 ? 0 : images[0].nvars();
    for (const auto& im : images)
      if (im.nvars() != out_vars) throw std::invalid_argument("substitute image arity mismatch");
    // Precompute powers per variable.
    std::vector<uint16_t> maxe(nvars_, 0);
    for (const auto& [m, c] : t_)
      for (size_t i = 0; i < nvars_; ++i) maxe[i] = std::max(maxe[i], m[i]);
    std::vector<std::vector<Poly>> pow(nvars_);
    for (size_t i = 0; i < nvars_; ++i) {
      pow[i].push_back(Poly::constant(out_vars, Rat(1)));
      for (uint16_t e = 1; e <= maxe[i]; ++e) pow[i].push_back(pow[i].back() * images[i]);
    }
    Poly r(out_vars);
    for (const auto& [m, c] : t_) {
      Poly term = Poly::constant(out_vars, c);
      for (size_t i = 0; i < nvars_; ++i)
        if (m[i] > 0) term = term * pow[i][m[i]];
      r += term;
    }
    return r;
  }

  std::string to_string(const std::vector<std::string>& names) const {
    if (names.size() != nvars_) throw std::invalid_argument("to_string arity mismatch");
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      const auto& [m, c] = *it;
      if (!first) os << " + ";
      first = false;
      std::vector<std::string> factors;
      if (c != 1 || pmono_degree(m) == 0) factors.push_back(rat_to_string(c));
      for (size_t i = 0; i < nvars_; ++i) {
        if (m[i] == 0) continue;
        std::string f = names[i];
        if (m[i] > 1) f += "^" + std::to_string(m[i]);
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
  size_t nvars_;
  std::map<PMono, Rat, GradedLexLess> t_;
};

}  // namespace jacquet
