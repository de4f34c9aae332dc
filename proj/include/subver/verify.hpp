#pragma once
// Suite runner: resolves an input entry, samples points deterministically
// (rejecting near-degenerate metrics), runs the selected verification suites,
// and serializes a deterministic JSON or markdown report.

#include <subver/antiinv.hpp>
#include <subver/catalog.hpp>
#include <subver/contact.hpp>
#include <subver/io.hpp>

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace subver::verify {

inline constexpr const char* kToolVersion = "0.1.0";

using catalog::CatalogEntry;
using geometry::Point;
using report::StructureReport;

struct RunConfig {
  std::string input;
  std::vector<std::string> suites{"all"};
  int samples = 25;
  unsigned long long seed = 42;
  double tol = 1e-9;
  double kappa = 0.5;
  std::string format = "json";

  void validate() const {
    if (samples < 1) throw std::invalid_argument("config: sample count must be >= 1");
    if (tol <= 0) throw std::invalid_argument("config: tolerance must be positive");
    if (kappa != 0.5 && kappa != 1.0)
      throw std::invalid_argument("config: kappa must be 0.5 or 1");
    if (format != "json" && format != "md")
      throw std::invalid_argument("config: format must be json or md");
  }
};

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s{"structure", "submersion", "antiinv",
                                          "lemmas",    "theorems",   "decomposition"};
  return s;
}

struct SuiteResult {
  std::string name;
  StructureReport rep;
};

struct Report {
  std::string version = kToolVersion;
  RunConfig config;
  std::string entry_name, entry_description, entry_notes;
  int points = 0;
  int rejected = 0;
  std::vector<SuiteResult> suites;

  bool overall() const {
    for (const auto& s : suites)
      if (!s.rep.passed()) return false;
    return true;
  }
};

namespace detail {

inline double relative_pivot(const Eigen::MatrixXd& m) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  Eigen::VectorXd d = lu.matrixLU().diagonal().cwiseAbs();
  double mx = d.maxCoeff();
  if (mx == 0) return 0;
  return d.minCoeff() / mx;
}

inline std::vector<Point> sample_points(const CatalogEntry& e, const RunConfig& cfg,
                                        int& rejected) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<Point> pts;
  rejected = 0;
  int attempts = 0;
  const int max_attempts = 1000 * cfg.samples;
  while (static_cast<int>(pts.size()) < cfg.samples && attempts < max_attempts) {
    ++attempts;
    Point p = e.sample_point(rng);
    if (relative_pivot(e.source.metric_at(p)) < cfg.tol ||
        (e.has_map && relative_pivot(e.target.metric_at(e.map.value(p))) < cfg.tol)) {
      ++rejected;
      continue;
    }
    pts.push_back(p);
  }
  if (static_cast<int>(pts.size()) < cfg.samples)
    throw linalg::DegenerateError("sampling: metric near-degenerate across the whole box");
  return pts;
}

inline StructureReport skipped(const std::string& what) {
  StructureReport rep;
  rep.push("skipped", what, 0.0, 1.0, "skipped: " + what);
  return rep;
}

inline StructureReport structure_suite(const CatalogEntry& e, const std::vector<Point>& pts,
                                       const RunConfig& cfg) {
  if (!e.has_structure) return skipped("no structure declared");
  StructureReport rep = contact::verify_almost_contact(e.source, e.structure, pts, cfg.tol);
  rep.append(contact::verify_kcontact_sasakian(e.source, e.structure, pts, cfg.tol));
  rep.append(contact::verify_metric_contact_and_normality(e.source, e.structure, pts, cfg.kappa,
                                                          cfg.tol));
  return rep;
}

// Fundamental-tensor invariants and reconstruction identities, evaluated on
// all declared frame pairs:
//   eq-2.3  T symmetric on vertical pairs
//   eq-2.4  A alternating on horizontal pairs
//   eq-2.5  nabla_U W = T_U W + V nabla_U W          (U, W vertical)
//   eq-2.6  nabla_U X = H nabla_U X + T_U X          (U vertical, X horizontal)
//   eq-2.7  nabla_X U = A_X U + V nabla_X U          (X horizontal, U vertical)
//   eq-2.8  nabla_X Y = H nabla_X Y + A_X Y          (X, Y horizontal)
//   eq-2.10 g(T_U E, F) = -g(E, T_U F)
//   eq-2.11 g(A_X E, F) = -g(E, A_X F)
inline StructureReport submersion_suite(const CatalogEntry& e, const std::vector<Point>& pts,
                                        const RunConfig& cfg) {
  if (!e.has_map) return skipped("no map declared");
  StructureReport rep = submersion::analyze_split(e.map, e.frames, pts, cfg.tol);

  const auto& V = e.frames.vertical;
  const auto& H = e.frames.horizontal;
  double r23 = 0, r24 = 0, r25 = 0, r26 = 0, r27 = 0, r28 = 0, r210 = 0, r211 = 0;
  double rsym = 0, r213 = 0;
  for (const Point& p : pts) {
    submersion::OneillContext ctx(e.source, e.frames, p);
    auto nab = [&](const geometry::VectorField& X, const geometry::VectorField& Y) {
      return geometry::cov_deriv(ctx.gamma, geometry::field_jet(Y, p),
                                 geometry::eval_field(X, p));
    };
    for (const auto& U : V) {
      for (const auto& W : V) {
        Eigen::VectorXd TUW = ctx.oneill_T(U, W);
        r23 = std::max(r23, (TUW - ctx.oneill_T(W, U)).cwiseAbs().maxCoeff());
        Eigen::VectorXd full = nab(U, W);
        r25 = std::max(r25, (full - TUW - ctx.vertical(full)).cwiseAbs().maxCoeff());
      }
      for (const auto& X : H) {
        Eigen::VectorXd full = nab(U, X);
        r26 = std::max(
            r26, (full - ctx.horizontal(full) - ctx.oneill_T(U, X)).cwiseAbs().maxCoeff());
        Eigen::VectorXd fullXU = nab(X, U);
        r27 = std::max(r27, (fullXU - ctx.oneill_A(X, U) - ctx.vertical(fullXU))
                                .cwiseAbs()
                                .maxCoeff());
        // Skew-adjointness witnesses on a mixed vertical/horizontal pair.
        r210 = std::max(r210, std::abs(ctx.pair(ctx.oneill_T(U, U), geometry::eval_field(X, p)) +
                                       ctx.pair(geometry::eval_field(U, p), ctx.oneill_T(U, X))));
        r211 = std::max(r211, std::abs(ctx.pair(ctx.oneill_A(X, U), geometry::eval_field(X, p)) +
                                       ctx.pair(geometry::eval_field(U, p), ctx.oneill_A(X, X))));
      }
    }
    for (const auto& X : H) {
      for (const auto& Y : H) {
        Eigen::VectorXd AXY = ctx.oneill_A(X, Y);
        r24 = std::max(r24, (AXY + ctx.oneill_A(Y, X)).cwiseAbs().maxCoeff());
        Eigen::VectorXd full = nab(X, Y);
        r28 = std::max(r28, (full - ctx.horizontal(full) - AXY).cwiseAbs().maxCoeff());
        Eigen::VectorXd sf = submersion::second_fundamental_form(e.map, X, Y, p);
        r213 = std::max(r213, sf.cwiseAbs().maxCoeff());
      }
    }
    // Second-fundamental-form symmetry on all declared frame pairs.
    std::vector<const geometry::VectorField*> all;
    for (const auto& f : V) all.push_back(&f);
    for (const auto& f : H) all.push_back(&f);
    for (const auto* X : all)
      for (const auto* Y : all)
        rsym = std::max(rsym,
                        (submersion::second_fundamental_form(e.map, *X, *Y, p) -
                         submersion::second_fundamental_form(e.map, *Y, *X, p))
                            .cwiseAbs()
                            .maxCoeff());
  }
  rep.push("eq-2.3", "T symmetric on vertical pairs", r23, cfg.tol);
  rep.push("eq-2.4", "A alternating on horizontal pairs", r24, cfg.tol);
  rep.push("eq-2.5", "nabla_U W = T_U W + V nabla_U W", r25, cfg.tol);
  rep.push("eq-2.6", "nabla_U X = H nabla_U X + T_U X", r26, cfg.tol);
  rep.push("eq-2.7", "nabla_X U = A_X U + V nabla_X U", r27, cfg.tol);
  rep.push("eq-2.8", "nabla_X Y = H nabla_X Y + A_X Y", r28, cfg.tol);
  rep.push("eq-2.10", "T_U is skew-adjoint", r210, cfg.tol);
  rep.push("eq-2.11", "A_X is skew-adjoint", r211, cfg.tol);
  rep.push("sff-sym", "second fundamental form symmetric", rsym, cfg.tol);
  rep.push("eq-2.13", "second fundamental form vanishes on horizontal pairs", r213, cfg.tol);

  auto harm = submersion::tension_and_harmonic(e.map, e.frames, pts, cfg.tol);
  rep.push("minimal-fibers", "fibers minimal (harmonicity criterion)", harm.minimal_residual,
           cfg.tol * 10,
           std::string("tension residual ") + std::to_string(harm.tension_residual));
  return rep;
}

inline antiinv::AnalysisInput analysis_input(const CatalogEntry& e) {
  return antiinv::AnalysisInput{&e.map, e.has_structure ? &e.structure : nullptr, &e.frames};
}

inline StructureReport antiinv_suite(const CatalogEntry& e, const std::vector<Point>& pts,
                                     const RunConfig& cfg) {
  if (!e.has_map) return skipped("no map declared");
  auto in = analysis_input(e);
  StructureReport rep = antiinv::check_anti_invariance(in, pts, cfg.tol);
  rep.append(antiinv::xi_position_and_dimension_audit(in, pts, cfg.tol));
  rep.append(antiinv::bc_mu_decompose(in, pts, cfg.tol));
  return rep;
}

inline StructureReport lemmas_suite(const CatalogEntry& e, const std::vector<Point>& pts,
                                    const RunConfig& cfg) {
  if (!e.has_map) return skipped("no map declared");
  return antiinv::lemma_residual_suite(analysis_input(e), pts, cfg.tol);
}

inline StructureReport theorems_suite(const CatalogEntry& e, const std::vector<Point>& pts,
                                      const RunConfig& cfg) {
  if (!e.has_map) return skipped("no map declared");
  auto in = analysis_input(e);
  StructureReport rep = antiinv::integrability_check(in, pts, cfg.tol);
  rep.append(antiinv::foliation_checks(in, pts, cfg.tol));
  rep.append(antiinv::tg_map_and_harmonic_criteria(in, pts, cfg.tol));
  return rep;
}

inline StructureReport decomposition_suite(const CatalogEntry& e, const std::vector<Point>& pts,
                                           const RunConfig& cfg) {
  if (!e.has_map) return skipped("no map declared");
  auto dv = antiinv::decomposition_classify(analysis_input(e), pts, cfg.tol);
  StructureReport rep;
  auto flag = [&](const std::string& id, const std::string& desc, bool v) {
    rep.push(id, desc, 0.0, 1.0, v ? "holds" : "fails");
  };
  flag("dec-h-integrable", "horizontal distribution integrable", dv.horizontal_integrable);
  flag("dec-h-tg", "horizontal foliation totally geodesic", dv.horizontal_totally_geodesic);
  flag("dec-v-tg", "vertical foliation totally geodesic", dv.vertical_totally_geodesic);
  if (dv.twisted_skipped)
    rep.push("dec-twisted", "twisted-product criteria", 0.0, 1.0,
             "skipped: degenerate vertical norm");
  else
    flag("dec-twisted", "twisted-product criteria", dv.twisted_criteria);
  rep.append(dv.evidence);
  rep.push("dec-classification", "decomposition classification", 0.0, 1.0,
           dv.classification);
  return rep;
}

}  // namespace detail

inline Report run_suites(const CatalogEntry& e, const RunConfig& cfg) {
  cfg.validate();
  Report out;
  out.config = cfg;
  out.entry_name = e.name;
  out.entry_description = e.description;
  out.entry_notes = e.notes;
  auto pts = detail::sample_points(e, cfg, out.rejected);
  out.points = static_cast<int>(pts.size());

  std::vector<std::string> names = cfg.suites;
  if (std::find(names.begin(), names.end(), "all") != names.end()) names = all_suites();
  for (const std::string& name : names) {
    StructureReport rep;
    if (name == "structure")
      rep = detail::structure_suite(e, pts, cfg);
    else if (name == "submersion")
      rep = detail::submersion_suite(e, pts, cfg);
    else if (name == "antiinv")
      rep = detail::antiinv_suite(e, pts, cfg);
    else if (name == "lemmas")
      rep = detail::lemmas_suite(e, pts, cfg);
    else if (name == "theorems")
      rep = detail::theorems_suite(e, pts, cfg);
    else if (name == "decomposition")
      rep = detail::decomposition_suite(e, pts, cfg);
    else
      throw std::invalid_argument("config: unknown suite '" + name + "'");
    out.suites.push_back({name, std::move(rep)});
  }
  return out;
}

inline std::string report_to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["tool"] = "subver";
  j["version"] = r.version;
  j["config"] = {{"input", r.config.input}, {"suites", r.config.suites},
                 {"samples", r.config.samples}, {"seed", r.config.seed},
                 {"tol", r.config.tol},       {"kappa", r.config.kappa}};
  j["entry"] = {{"name", r.entry_name},
                {"description", r.entry_description},
                {"notes", r.entry_notes}};
  j["sampling"] = {{"points", r.points}, {"rejected", r.rejected}};
  j["suites"] = nlohmann::ordered_json::array();
  for (const auto& s : r.suites) {
    nlohmann::ordered_json sj;
    sj["name"] = s.name;
    sj["passed"] = s.rep.passed();
    sj["items"] = nlohmann::ordered_json::array();
    for (const auto& item : s.rep.items) {
      nlohmann::ordered_json ij;
      ij["id"] = item.id;
      ij["description"] = item.description;
      ij["residual"] = item.residual;
      ij["tol"] = item.tol;
      ij["pass"] = item.pass;
      if (!item.note.empty()) ij["note"] = item.note;
      sj["items"].push_back(ij);
    }
    j["suites"].push_back(sj);
  }
  j["overall"] = r.overall();
  return j.dump(2) + "\n";
}

inline std::string report_to_markdown(const Report& r) {
  std::ostringstream os;
  os << "# subver report: " << r.entry_name << "\n\n";
  if (!r.entry_description.empty()) os << r.entry_description << "\n\n";
  if (!r.entry_notes.empty()) os << "> " << r.entry_notes << "\n\n";
  os << "- samples: " << r.points << " (rejected " << r.rejected << "), seed " << r.config.seed
     << ", tol " << r.config.tol << ", kappa " << r.config.kappa << "\n";
  os << "- overall: " << (r.overall() ? "PASS" : "FAIL") << "\n";
  for (const auto& s : r.suites) {
    os << "\n## " << s.name << " — " << (s.rep.passed() ? "PASS" : "FAIL") << "\n\n";
    os << "| criterion | worst residual | tol | verdict | note |\n";
    os << "|---|---|---|---|---|\n";
    for (const auto& item : s.rep.items) {
      os << "| " << item.id << " | " << item.residual << " | " << item.tol << " | "
         << (item.pass ? "pass" : "FAIL") << " | " << item.note << " |\n";
    }
  }
  return os.str();
}

// Exit-code contract: 0 all pass, 1 at least one criterion failed; callers
// map input/degeneracy exceptions to 2.
inline int exit_code(const Report& r) { return r.overall() ? 0 : 1; }

}  // namespace subver::verify
