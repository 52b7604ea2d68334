// Truncated elements of the n-adic completion. A series is stored on the
// weight-order engine, where every monomial is an ad(a)-weight vector; its
// *level* is the height of that weight. Levels add exactly under
// multiplication, which is what makes truncation coherent: a term's level
// tells how deep into the filtration it sits, E-factors raise it, conjugate
// factors lower it, and the horizon records through which level the stored
// terms agree with the represented element.
#pragma once

#include <climits>

#include "jacquet/pbw.hpp"

namespace jacquet {

inline Rat mono_level(const Mono& m, const PbwEngine& wt_eng) {
  return height(wt_eng.mono_weight(m));
}

class TruncatedSeries {
 public:
  TruncatedSeries(const EnginePair* p, const Rat& horizon)
      : p_(p), horizon_(horizon) {}

  static TruncatedSeries from_noe(const EnginePair* p, const Noe& terms, const Rat& horizon) {
    TruncatedSeries s(p, horizon);
    s.terms_ = terms;
    s.prune();
    return s;
  }

  static TruncatedSeries one(const EnginePair* p, const Rat& horizon) {
    return from_noe(p, p->wt->one(), horizon);
  }

  const EnginePair* engines() const { return p_; }
  const Rat& horizon() const { return horizon_; }
  const Noe& terms() const { return terms_; }
  bool zero_terms() const { return terms_.empty(); }

  Rat min_level() const {
    bool first = true;
    Rat lv(0);
    for (const auto& [m, c] : terms_) {
      Rat l = mono_level(m, *p_->wt);
      if (first || l < lv) lv = l;
      first = false;
    }
    if (first) throw std::logic_error("min_level of a series without stored terms");
    return lv;
  }

  TruncatedSeries truncated(const Rat& horizon) const {
    if (horizon > horizon_)
      throw std::invalid_argument("cannot raise a series horizon without new information");
    return from_noe(p_, terms_, horizon);
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_mate(b);
    TruncatedSeries r(a.p_, std::min(a.horizon_, b.horizon_));
    r.terms_ = noe_sum(a.terms_, b.terms_);
    r.prune();
    return r;
  }

  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_mate(b);
    TruncatedSeries r(a.p_, std::min(a.horizon_, b.horizon_));
    r.terms_ = noe_sub(a.terms_, b.terms_);
    r.prune();
    return r;
  }

  friend TruncatedSeries operator*(const Rat& c, const TruncatedSeries& a) {
    TruncatedSeries r(a.p_, a.horizon_);
    r.terms_ = noe_scale(c, a.terms_);
    return r;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_mate(b);
    // Contributions of the parts beyond each factor's horizon land strictly
    // above horizon+min_level of the other factor; levels add exactly.
    Rat h = a.horizon_ + b.horizon_;
    if (!a.terms_.empty()) h = std::min(h, Rat(b.horizon_ + a.min_level()));
    if (!b.terms_.empty()) h = std::min(h, Rat(a.horizon_ + b.min_level()));
    TruncatedSeries r(a.p_, h);
    const PbwEngine& eng = *a.p_->wt;
    for (const auto& [ma, ca] : a.terms_) {
      Rat la = mono_level(ma, eng);
      for (const auto& [mb, cb] : b.terms_) {
        if (la + mono_level(mb, eng) > h) continue;
        Noe prod = eng.mul(Noe{{ma, ca}}, Noe{{mb, cb}});
        noe_axpy(r.terms_, Rat(1), prod);
      }
    }
    r.prune();
    return r;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.horizon_ == b.horizon_ && a.terms_ == b.terms_;
  }

  // Inverse by the geometric series: requires a nonzero scalar at the empty
  // monomial and every other term of strictly positive level, otherwise no
  // inverse exists in the completion picture this type represents.
  TruncatedSeries inverse() const {
    Rat c(0);
    auto it = terms_.find(mono_one());
    if (it != terms_.end()) c = it->second;
    if (c == 0) throw std::runtime_error("series inverse: no scalar term");
    Noe x = terms_;
    x.erase(mono_one());
    for (const auto& [m, cc] : x)
      if (mono_level(m, *p_->wt) <= 0)
        throw std::runtime_error("series inverse: non-scalar term at level <= 0");
    TruncatedSeries xs = from_noe(p_, noe_scale(-1 / c, x), horizon_);
    TruncatedSeries acc = one(p_, horizon_);
    TruncatedSeries power = one(p_, horizon_);
    while (true) {
      power = power * xs;
      power = TruncatedSeries::from_noe(p_, power.terms_, horizon_);
      if (power.terms_.empty()) break;
      acc = TruncatedSeries::from_noe(p_, noe_sum(acc.terms_, power.terms_), horizon_);
    }
    return from_noe(p_, noe_scale(1 / c, acc.terms_), horizon_);
  }

  // Terms whose ad(a)-weight satisfies the predicate; the horizon carries over.
  template <typename Pred>
  TruncatedSeries component_where(Pred&& pred) const {
    TruncatedSeries r(p_, horizon_);
    for (const auto& [m, c] : terms_)
      if (pred(p_->wt->mono_weight(m))) r.terms_.emplace(m, c);
    return r;
  }

  TruncatedSeries weight_component(const Weight& mu) const {
    return component_where([&](const Weight& w) { return w == mu; });
  }

  TruncatedSeries level_component(const Rat& l) const {
    return component_where([&](const Weight& w) { return height(w) == l; });
  }

  std::string to_string() const {
    return p_->wt->to_string(terms_) + "  (through level " + rat_to_string(horizon_) + ")";
  }

 private:
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (mono_level(it->first, *p_->wt) > horizon_)
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  void check_mate(const TruncatedSeries& b) const {
    if (p_ != b.p_) throw std::invalid_argument("series over different engines");
  }

  const EnginePair* p_;
  Rat horizon_;
  Noe terms_;
};

// A matrix with truncated-series entries, used for the boundary calculus.
class SeriesMatrix {
 public:
  SeriesMatrix(const EnginePair* p, size_t rows, size_t cols, const Rat& horizon)
      : p_(p), rows_(rows), cols_(cols) {
    entries_.reserve(rows * cols);
    for (size_t i = 0; i < rows * cols; ++i) entries_.emplace_back(p, horizon);
  }

  static SeriesMatrix identity(const EnginePair* p, size_t n, const Rat& horizon) {
    SeriesMatrix m(p, n, n, horizon);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = TruncatedSeries::one(p, horizon);
    return m;
  }

  static SeriesMatrix scalar(const EnginePair* p, const RatMat& a, const Rat& horizon) {
    SeriesMatrix m(p, a.rows(), a.cols(), horizon);
    for (size_t i = 0; i < a.rows(); ++i)
      for (size_t j = 0; j < a.cols(); ++j)
        if (a.at(i, j) != 0)
          m.at(i, j) = TruncatedSeries::from_noe(p, noe_scale(a.at(i, j), p->wt->one()), horizon);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  TruncatedSeries& at(size_t i, size_t j) { return entries_[i * cols_ + j]; }
  const TruncatedSeries& at(size_t i, size_t j) const { return entries_[i * cols_ + j]; }

  friend SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("series matrix shape mismatch");
    SeriesMatrix r(a.p_, a.rows_, a.cols_, Rat(0));
    for (size_t i = 0; i < a.entries_.size(); ++i) r.entries_[i] = a.entries_[i] + b.entries_[i];
    return r;
  }

  friend SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("series matrix shape mismatch");
    SeriesMatrix r(a.p_, a.rows_, a.cols_, Rat(0));
    for (size_t i = 0; i < a.entries_.size(); ++i) r.entries_[i] = a.entries_[i] - b.entries_[i];
    return r;
  }

  friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("series matrix shape mismatch");
    SeriesMatrix r(a.p_, a.rows_, b.cols_, Rat(0));
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t j = 0; j < b.cols_; ++j) {
        TruncatedSeries acc = a.at(i, 0) * b.at(0, j);
        for (size_t k = 1; k < a.cols_; ++k) acc = acc + a.at(i, k) * b.at(k, j);
        r.at(i, j) = acc;
      }
    return r;
  }

 private:
  const EnginePair* p_;
  size_t rows_, cols_;
  std::vector<TruncatedSeries> entries_;
};

}  // namespace jacquet
