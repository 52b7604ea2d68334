// JSON serialization of the engine's exact data: rationals as strings,
// weights as coordinate arrays, operators keyed by readable monomial labels.
// Every emitter here is deterministic, so identical computations produce
// byte-identical documents.
#pragma once

#include <string>

#include "json.hpp"

#include "jacquet/analysis.hpp"

namespace jacquet {

using Json = nlohmann::json;

constexpr int kSchemaVersion = 1;

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline Rat rat_parse(const std::string& s) {
  Rat r(s);
  r.canonicalize();
  return r;
}

inline Json weight_json(const Weight& w) {
  Json a = Json::array();
  for (const auto& c : w.c) a.push_back(rat_str(c));
  return a;
}

inline Json ratmat_json(const RatMat& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(rat_str(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// A readable, collision-free label for a straightened monomial: generator
// names joined by dots, powers marked with a caret.
inline std::string mono_label(const Mono& m, const LieAlgebra& g) {
  std::string out;
  for (size_t i = 0; i < g.dim; ++i) {
    if (i >= m.size() || m[i] == 0) continue;
    if (!out.empty()) out += '.';
    out += g.basis_names[i];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

inline Json noe_json(const Noe& z, const LieAlgebra& g) {
  Json o = Json::object();
  for (const auto& [m, c] : z) o[mono_label(m, g)] = rat_str(c);
  return o;
}

inline Json series_json(const TruncatedSeries& s, const LieAlgebra& g) {
  return Json{{"horizon", rat_str(s.horizon())}, {"terms", noe_json(s.terms(), g)}};
}

inline Json series_matrix_json(const SeriesMatrix& m, const LieAlgebra& g) {
  Json entries = Json::array();
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).terms().empty())
        entries.push_back(Json{{"row", i}, {"col", j}, {"terms", noe_json(m.at(i, j).terms(), g)}});
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline Json boundary_json(const BoundaryValue& bv, const SphericalModule& mod) {
  const LieAlgebra& g = mod.algebra();
  Json exps = Json::array();
  Json verma = Json::array();
  for (const auto& e : bv.exponents) {
    exps.push_back(weight_json(e));
    verma.push_back(weight_json(e + Rat(-1) * g.rho));
  }
  Json xq = Json::array();
  for (const auto& x : bv.x_coords) xq.push_back(rat_str(x));
  Json qs = Json::array();
  for (const auto& qk : bv.q) qs.push_back(series_matrix_json(qk, g));
  Json tps = Json::array();
  for (const auto& tk : bv.tprime) tps.push_back(series_matrix_json(tk, g));
  Json as = Json::array();
  for (const auto& aj : bv.a) as.push_back(series_json(aj, g));
  Json seps = Json::array();
  for (long s : bv.separating) seps.push_back(s);
  return Json{{"horizon", rat_str(bv.horizon)},
              {"exponents", std::move(exps)},
              {"verma_highest", std::move(verma)},
              {"level0_change_of_basis", ratmat_json(bv.bbar)},
              {"level0_inverse", ratmat_json(bv.abar)},
              {"normal_form_level0", ratmat_json(bv.q0)},
              {"separating_coroot_coeffs", std::move(seps)},
              {"x_coords", std::move(xq)},
              {"coroot_normal_forms", std::move(qs)},
              {"resonant_lines", std::move(tps)},
              {"spherical_coordinates", std::move(as)}};
}

inline Json certificate_json(const RelationCertificate& c, const SphericalModule& mod,
                             CompactKind kind, size_t gen) {
  const LieAlgebra& g = mod.algebra();
  Json ps = Json::array();
  for (size_t j = 0; j < c.p.size(); ++j)
    if (!c.p[j].empty()) ps.push_back(Json{{"target", j}, {"operator", noe_json(c.p[j], g)}});
  Json support = Json::array();
  Json coupled = Json::array();
  for (size_t j : c.support) {
    support.push_back(j);
    if (j != c.index) coupled.push_back(j);
  }
  return Json{{"index", c.index},
              {"kind", kind == CompactKind::theta ? "theta" : "m"},
              {"generator", gen},
              {"acting_element", noe_json(c.x, g)},
              {"support", std::move(support)},
              {"coupled", std::move(coupled)},
              {"operators", std::move(ps)},
              {"residual_empty", c.residual.terms().empty()}};
}

inline Json filtration_json(const FiltrationReport& r) {
  Json steps = Json::array();
  for (const auto& st : r.steps) {
    Json sup = Json::array();
    for (size_t j : st.support) sup.push_back(j);
    steps.push_back(Json{{"index", st.index},
                         {"exponent", weight_json(st.exponent)},
                         {"verma_highest", weight_json(st.verma_highest)},
                         {"support", std::move(sup)}});
  }
  Json crit = Json::array();
  for (bool b : r.criterion_even) crit.push_back(b);
  Json o{{"steps", std::move(steps)},
         {"criterion_even_lattice", std::move(crit)},
         {"direct_sum_by_criterion", r.direct_sum_by_criterion},
         {"q_upper_triangular", r.q_upper_triangular}};
  if (r.rank_one) {
    o["rank_one"] = Json{{"r", rat_str(r.r)}, {"r_integral", r.r_integral}, {"note", r.note}};
  }
  return o;
}

inline Json character_json(const CharacterTable& t) {
  Json blocks = Json::array();
  for (const auto& b : t.blocks) {
    Json table = Json::object();
    for (const auto& [w, c] : b.character) {
      std::string key;
      for (const auto& x : w.c) key += (key.empty() ? "" : ",") + rat_str(x);
      table[key] = c;
    }
    blocks.push_back(Json{{"highest", weight_json(b.highest)}, {"table", std::move(table)}});
  }
  Json ambient = Json::object();
  for (const auto& [w, c] : t.ambient) {
    std::string key;
    for (const auto& x : w.c) key += (key.empty() ? "" : ",") + rat_str(x);
    ambient[key] = c;
  }
  return Json{{"blocks", std::move(blocks)}, {"ambient", std::move(ambient)}, {"equal", t.equal}};
}

inline Json splitting_json(const SplittingResult& s) {
  return Json{{"index", s.index},
              {"truncation", s.truncation},
              {"verdict", to_string(s.verdict)},
              {"consistent_full", s.consistent_full},
              {"consistent_low", s.consistent_low}};
}

}  // namespace jacquet
