// Command-line front end: parses a session configuration from flags and an
// optional key=value config file (flags win), dispatches one subcommand, and
// writes a JSON report. Exit codes: 0 all passed, 1 a verification failed,
// 2 usage error, 3 truncation or resource trouble; failures also carry a
// machine-readable code inside the report.
#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "jacquet/cache.hpp"
#include "jacquet/report.hpp"

namespace jacquet {

struct SessionConfig {
  std::string algebra;
  std::vector<Rat> lambda;
  long truncation = 6;
  long step = 0;
  std::string command;
  std::string out_path;
  std::string cache_dir;
  int verbosity = 0;
};

struct CliError : std::runtime_error {
  int code;
  std::string kind;
  CliError(int code_, std::string kind_, const std::string& msg)
      : std::runtime_error(msg), code(code_), kind(std::move(kind_)) {}
};

inline std::vector<Rat> parse_lambda(const std::string& s) {
  std::vector<Rat> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (item.empty()) continue;
    try {
      out.push_back(rat_parse(item));
    } catch (const std::exception&) {
      throw CliError(2, "usage", "cannot parse rational '" + item + "' in the parameter");
    }
  }
  return out;
}

namespace detail {

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"sl2r", "sl3r", "sp4r", "sl2c"};
  return names;
}

inline Json catalog_section() {
  Json entries = Json::array();
  for (const auto& name : catalog_names()) {
    auto p = make_engines(name);
    const LieAlgebra& g = p.alg;
    Json basis = Json::array();
    for (const auto& b : g.basis_names) basis.push_back(b);
    entries.push_back(Json{{"name", g.name},
                           {"rank", g.rank},
                           {"dim", g.dim},
                           {"restricted_root_count", g.n_count},
                           {"centralizer_dim", g.m_count},
                           {"weyl_order", g.weyl.size()},
                           {"rho", weight_json(g.rho)},
                           {"cartan", ratmat_json(g.cartan)},
                           {"basis", std::move(basis)}});
  }
  return Json{{"entries", std::move(entries)}};
}

inline Json invariants_section(const EnginePair& p, const std::vector<Rat>& lambda) {
  const LieAlgebra& g = p.alg;
  validate_character_shift(p);
  std::vector<std::string> hnames;
  for (size_t k = 0; k < g.rank; ++k) hnames.push_back(g.basis_names[g.h_index(k)]);
  Json invs = Json::array();
  auto zs = module_invariants(p);
  for (const auto& z : zs) {
    Poly img = chi_image(z, g);
    Json entry{{"image_poly", img.to_string(hnames)},
               {"weyl_invariant", weyl_invariant(img, g)}};
    if (!lambda.empty()) {
      Weight lam{lambda};
      entry["value_at_parameter"] = rat_str(chi_lambda(z, lam, g));
    }
    invs.push_back(std::move(entry));
  }
  Json o{{"shift_validated", true}, {"invariants", std::move(invs)}};
  if (!lambda.empty()) {
    SphericalModule mod(&p, Weight{lambda});
    o["staircase_size"] = mod.staircase().size();
    o["weyl_order"] = g.weyl.size();
  }
  return o;
}

inline std::string classify_invalid(const std::string& msg) {
  for (const char* hint : {"cap", "horizon", "truncation"})
    if (msg.find(hint) != std::string::npos) return "truncation";
  return "usage";
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, Json* doc_out = nullptr) {
  SessionConfig cfg;
  std::string lambda_str;

  CLI::App app{"exact boundary-value analysis of spherical principal series"};
  app.add_option("--algebra", cfg.algebra, "catalog entry (sl2r, sl3r, sp4r, sl2c)");
  app.add_option("--lambda", lambda_str,
                 "parameter in simple-root coordinates: comma-separated rationals, e.g. 5/2,7/3");
  app.add_option("--truncation", cfg.truncation, "series height cap (>= 1)");
  app.add_option("--step", cfg.step, "filtration step index for split-test");
  app.add_option("--out", cfg.out_path, "write the JSON report here (default: stdout)");
  app.add_option("--cache-dir", cfg.cache_dir, "cache directory (default: env JACQUET_CACHE_DIR)");
  app.add_flag("-v,--verbose", cfg.verbosity, "progress notes on stderr");
  app.set_config("--config", "", "key=value file mirroring the flags; flags override it");
  app.require_subcommand(1);
  for (const auto& [name, desc] :
       std::vector<std::pair<std::string, std::string>>{
           {"catalog", "list the algebra catalog"},
           {"invariants", "center images and the character-shift self-test"},
           {"boundary-map", "construct the boundary transport and normal forms"},
           {"verify", "replay the eigen relations and coordinate recovery"},
           {"certificates", "relation certificates for the compact generators"},
           {"filtration", "filtration steps and the direct-sum lattice criterion"},
           {"character", "formal character reconciliation"},
           {"split-test", "exact splitting detector for one filtration step"},
           {"all", "everything above for one parameter"}})
    app.add_subcommand(name, desc)->fallthrough(true);

  std::vector<std::string> argv_store = args;
  std::vector<const char*> argv{"jacquet"};
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    if (doc_out)
      *doc_out = Json{{"schema_version", kSchemaVersion},
                      {"error", Json{{"code", "usage"}, {"message", e.what()}}}};
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  Json doc;
  doc["schema_version"] = kSchemaVersion;
  Json timing = Json::object();
  int code = 0;
  const auto t_start = std::chrono::steady_clock::now();
  const auto note = [&cfg](const std::string& s) {
    if (cfg.verbosity > 0) std::cerr << "jacquet: " << s << "\n";
  };
  const auto ms_since = [](std::chrono::steady_clock::time_point t) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t)
        .count();
  };

  try {
    const Cache cache = open_cache(cfg.cache_dir);
    if (cfg.command == "catalog") {
      doc["catalog"] = detail::catalog_section();
    } else {
      if (cfg.algebra.empty()) throw CliError(2, "usage", "missing --algebra");
      const auto& names = detail::catalog_names();
      if (std::find(names.begin(), names.end(), cfg.algebra) == names.end())
        throw CliError(2, "usage", "unknown algebra '" + cfg.algebra + "'");
      if (cfg.truncation < 1) throw CliError(2, "usage", "truncation must be at least 1");
      cfg.lambda = parse_lambda(lambda_str);

      const EnginePair p = make_engines(cfg.algebra);
      const LieAlgebra& g = p.alg;
      Json echo{{"algebra", cfg.algebra},
                {"truncation", cfg.truncation},
                {"command", cfg.command}};
      Json lamj = Json::array(), lamh = Json::array();
      for (const auto& c : cfg.lambda) lamj.push_back(rat_str(c));
      if (cfg.lambda.size() == g.rank) {
        Weight lam{cfg.lambda};
        for (size_t k = 0; k < g.rank; ++k) lamh.push_back(rat_str(g.eval_at_coroot(lam, k)));
      }
      echo["lambda"] = std::move(lamj);
      echo["lambda_on_coroots"] = std::move(lamh);
      doc["input"] = std::move(echo);

      Json base_key{{"schema_version", kSchemaVersion},
                    {"algebra", cfg.algebra},
                    {"lambda", doc["input"]["lambda"]},
                    {"truncation", cfg.truncation}};
      const auto section_key = [&](const std::string& kind) {
        Json k = base_key;
        k["kind"] = kind;
        return k;
      };

      const bool needs_lambda = cfg.command != "invariants";
      if (needs_lambda || !cfg.lambda.empty()) {
        if (cfg.lambda.size() != g.rank)
          throw CliError(2, "usage", "the parameter needs exactly " + std::to_string(g.rank) +
                                         " simple-root coordinates");
        const Weight lam{cfg.lambda};
        for (size_t wi = 1; wi < g.weyl.size(); ++wi)
          if (std::vector<Rat>{g.weyl[wi] * lam.c} == lam.c)
            throw CliError(2, "usage",
                           "singular parameter: fixed by Weyl element #" + std::to_string(wi));
      }

      if (cfg.command == "invariants") {
        const auto t = std::chrono::steady_clock::now();
        Json key = section_key("invariants");
        key["kind"] = "invariants";
        doc["spherical"] = cache_get_or_compute(
            cache, key, [&] { return detail::invariants_section(p, cfg.lambda); });
        timing["invariants_ms"] = ms_since(t);
      } else {
        const Weight lam{cfg.lambda};
        std::optional<SphericalModule> mod;
        std::optional<BoundaryValue> bv;
        const auto ensure = [&]() -> void {
          if (bv) return;
          note("constructing the spherical module and boundary transport");
          const auto t = std::chrono::steady_clock::now();
          mod.emplace(&p, lam);
          bv.emplace(boundary_map(*mod, cfg.truncation));
          timing["boundary_ms"] = ms_since(t);
        };
        const bool want_all = cfg.command == "all";

        if (want_all || cfg.command == "boundary-map" || cfg.command == "verify") {
          doc["boundary"] = cache_get_or_compute(cache, section_key("boundary"), [&] {
            ensure();
            return boundary_json(*bv, *mod);
          });
        }
        if (want_all || cfg.command == "verify") {
          note("replaying the eigen relations");
          const auto t = std::chrono::steady_clock::now();
          ensure();
          verify_boundary(*bv, *mod);
          doc["boundary"]["verified"] = true;
          timing["verify_ms"] = ms_since(t);
        }
        if (want_all || cfg.command == "certificates") {
          doc["theorem4"] = cache_get_or_compute(cache, section_key("theorem4"), [&] {
            ensure();
            note("building relation certificates");
            Json certs = Json::array();
            for (size_t i = 0; i < bv->v.size(); ++i) {
              for (size_t a = 0; a < g.n_count; ++a) {
                auto c = relation_certificate(*bv, *mod, i, CompactKind::theta, a);
                certs.push_back(certificate_json(c, *mod, CompactKind::theta, a));
              }
              for (size_t k = 0; k < g.m_count; ++k) {
                auto c = relation_certificate(*bv, *mod, i, CompactKind::m, k);
                certs.push_back(certificate_json(c, *mod, CompactKind::m, k));
              }
            }
            return Json{{"certificates", std::move(certs)}, {"all_residuals_empty", true}};
          });
        }
        if (want_all || cfg.command == "filtration") {
          doc["filtration"] = cache_get_or_compute(cache, section_key("filtration"), [&] {
            ensure();
            Json o = filtration_json(filtration_report(*bv, *mod));
            // witness the surjections: every certificate must verify
            for (size_t i = 0; i < bv->v.size(); ++i) {
              for (size_t a = 0; a < g.n_count; ++a)
                relation_certificate(*bv, *mod, i, CompactKind::theta, a);
              for (size_t k = 0; k < g.m_count; ++k)
                relation_certificate(*bv, *mod, i, CompactKind::m, k);
            }
            o["certificates_verified"] = true;
            return o;
          });
        }
        if (want_all || cfg.command == "character") {
          doc["character"] = cache_get_or_compute(cache, section_key("character"), [&] {
            ensure();
            return character_json(formal_character(*bv, *mod, cfg.truncation));
          });
        }
        if (want_all || cfg.command == "split-test") {
          Json key = section_key("split-test");
          key["step"] = cfg.step;
          doc["splitting"] = cache_get_or_compute(cache, key, [&] {
            ensure();
            if (cfg.step < 0 || static_cast<size_t>(cfg.step) >= bv->v.size())
              throw CliError(2, "usage", "step index out of range");
            note("running the splitting detector");
            return splitting_json(splitting_test(*bv, *mod, cfg.step, cfg.truncation));
          });
        }
        if (want_all) {
          doc["spherical"] = cache_get_or_compute(cache, section_key("invariants"), [&] {
            return detail::invariants_section(p, cfg.lambda);
          });
        }
      }
    }
  } catch (const CliError& e) {
    code = e.code;
    doc["error"] = Json{{"code", e.kind}, {"message", e.what()}};
  } catch (const std::invalid_argument& e) {
    const std::string kind = detail::classify_invalid(e.what());
    code = kind == "truncation" ? 3 : 2;
    doc["error"] = Json{{"code", kind}, {"message", e.what()}};
  } catch (const std::bad_alloc&) {
    code = 3;
    doc["error"] = Json{{"code", "resource"}, {"message", "out of memory"}};
  } catch (const std::exception& e) {
    code = 1;
    doc["error"] = Json{{"code", "verification"}, {"message", e.what()}};
  }

  timing["total_ms"] = ms_since(t_start);
  doc["timing"] = std::move(timing);

  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path, std::ios::trunc);
    out << doc.dump(2) << "\n";
    if (!out) {
      std::cerr << "error: cannot write report to " << cfg.out_path << "\n";
      code = code == 0 ? 3 : code;
    }
  } else if (!doc_out) {
    std::cout << doc.dump(2) << "\n";
  }
  if (doc_out) *doc_out = doc;
  if (code != 0)
    std::cerr << "jacquet: " << doc["error"]["code"].get<std::string>() << ": "
              << doc["error"]["message"].get<std::string>() << "\n";
  return code;
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace jacquet
