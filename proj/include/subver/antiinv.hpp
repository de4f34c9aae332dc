#pragma once
// Anti-invariant submersion analysis: anti-invariance and xi-position audits,
// B/C and mu decompositions, lemma residual suites, and the theorem-level
// integrability / foliation / harmonicity / decomposition criteria.
//
// Equivalence theorems are verified by the two-sided protocol: the direct
// definition and the theorem criterion are evaluated independently and the
// agreement of their verdicts (not their raw values) is the test.

#include <subver/contact.hpp>
#include <subver/submersion.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace subver::antiinv {

using contact::ContactStructure;
using geometry::Chart;
using geometry::Point;
using geometry::VectorField;
using report::CheckItem;
using report::StructureReport;
using submersion::DeclaredFrames;
using submersion::OneillContext;
using submersion::SmoothMap;

enum class XiPosition { vertical, horizontal, oblique, none };

inline const char* to_string(XiPosition x) {
  switch (x) {
    case XiPosition::vertical: return "vertical";
    case XiPosition::horizontal: return "horizontal";
    case XiPosition::oblique: return "oblique";
    default: return "none";
  }
}

struct AnalysisInput {
  const SmoothMap* map = nullptr;
  const ContactStructure* S = nullptr;  // null: no contact structure declared
  const DeclaredFrames* frames = nullptr;

  const Chart& chart() const { return *map->source; }
};

namespace detail {

inline Eigen::MatrixXd frame_matrix(const std::vector<VectorField>& fr, const Point& p) {
  const int rows = fr.empty() ? 0 : static_cast<int>(fr[0].size());
  Eigen::MatrixXd M(rows, static_cast<Eigen::Index>(fr.size()));
  for (std::size_t c = 0; c < fr.size(); ++c)
    M.col(static_cast<Eigen::Index>(c)) = geometry::eval_field(fr[c], p);
  return M;
}

inline int rank_of(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(tol);
  return static_cast<int>(lu.rank());
}

// mu basis at p: horizontal combinations g-orthogonal to phi(vertical).
inline std::vector<Eigen::VectorXd> mu_basis(const AnalysisInput& in, const Point& p,
                                             double tol = 1e-9) {
  const Chart& c = in.chart();
  Eigen::MatrixXd G = c.metric_at(p);
  Eigen::MatrixXd F = geometry::eval_tensor11(in.S->phi, p);
  Eigen::MatrixXd V = frame_matrix(in.frames->vertical, p);
  Eigen::MatrixXd H = frame_matrix(in.frames->horizontal, p);
  std::vector<Eigen::VectorXd> mu;
  if (H.cols() == 0) return mu;
  if (V.cols() == 0) {
    for (int j = 0; j < H.cols(); ++j) mu.push_back(H.col(j));
    return mu;
  }
  // Coefficients a with (phi V)^T G (H a) = 0.
  Eigen::MatrixXd M = (F * V).transpose() * G * H;
  for (const auto& a : linalg::null_space(M, tol)) mu.push_back(H * a);
  return mu;
}

}  // namespace detail

// xi position at a point: compare the complementary projection norm with
// tol * |xi|.
inline XiPosition classify_xi(const AnalysisInput& in, const Point& p, double tol = 1e-9) {
  if (!in.S) return XiPosition::none;
  OneillContext ctx(in.chart(), *in.frames, p);
  Eigen::VectorXd xi = geometry::eval_field(in.S->xi, p);
  const double nx = xi.norm();
  const double v = ctx.vertical(xi).norm(), h = ctx.horizontal(xi).norm();
  if (h <= tol * std::max(1.0, nx)) return XiPosition::vertical;
  if (v <= tol * std::max(1.0, nx)) return XiPosition::horizontal;
  return XiPosition::oblique;
}

inline XiPosition classify_xi(const AnalysisInput& in, const std::vector<Point>& points,
                              double tol = 1e-9) {
  XiPosition pos = XiPosition::none;
  bool first = true;
  for (const Point& p : points) {
    XiPosition q = classify_xi(in, p, tol);
    if (first) {
      pos = q;
      first = false;
    } else if (q != pos) {
      return XiPosition::oblique;
    }
  }
  return pos;
}

// Def: phi(ker F_*) is g-orthogonal to ker F_*; also checks the completeness
// of the decomposition (ker F_*)^perp = phi(ker F_*) (+) mu.
inline StructureReport check_anti_invariance(const AnalysisInput& in,
                                             const std::vector<Point>& points,
                                             double tol = 1e-9) {
  StructureReport rep;
  if (!in.S) {
    rep.push("anti-invariance", "phi(ker F_*) subset (ker F_*)^perp", 0.0, tol,
             "skipped: no contact structure declared");
    return rep;
  }
  const Chart& c = in.chart();
  double r = 0;
  int dim_bad = 0;
  for (const Point& p : points) {
    Eigen::MatrixXd G = c.metric_at(p);
    Eigen::MatrixXd F = geometry::eval_tensor11(in.S->phi, p);
    Eigen::MatrixXd V = detail::frame_matrix(in.frames->vertical, p);
    if (V.cols() == 0) continue;  // vacuous
    r = std::max(r, (V.transpose() * G * (F * V)).cwiseAbs().maxCoeff());
    const int rank_phiV = detail::rank_of(F * V, tol);
    const int dim_mu = static_cast<int>(detail::mu_basis(in, p, tol).size());
    if (rank_phiV + dim_mu != static_cast<int>(in.frames->horizontal.size())) ++dim_bad;
  }
  rep.push("anti-invariance", "phi(ker F_*) subset (ker F_*)^perp: max |g(phi V_i, V_j)|", r,
           tol);
  rep.push("eq-25", "dim phi(ker F_*) + dim mu = dim (ker F_*)^perp",
           static_cast<double>(dim_bad), 0.0);
  return rep;
}

// xi-position classification, signature dichotomy, and dimension audits with
// m = (dim M - 1) / 2 and n = dim N.
inline StructureReport xi_position_and_dimension_audit(const AnalysisInput& in,
                                                       const std::vector<Point>& points,
                                                       double tol = 1e-9) {
  StructureReport rep;
  if (!in.S) {
    rep.push("xi-position", "xi position classification", 0.0, tol,
             "skipped: no contact structure declared");
    return rep;
  }
  const Chart& c = in.chart();
  const int m = (c.dim - 1) / 2;
  const int n = in.map->target ? in.map->target->dim : 0;
  XiPosition pos = classify_xi(in, points, tol);
  rep.push("xi-position", "xi position is consistent across samples",
           pos == XiPosition::oblique ? 1.0 : 0.0, 0.0, std::string("xi is ") + to_string(pos));

  // pro-1 signature dichotomy: xi vertical <-> fiber index 1, target index 0;
  // xi horizontal <-> fiber index 0, target index 1.
  int sig_bad = 0;
  std::string sig_note;
  for (const Point& p : points) {
    Eigen::MatrixXd G = c.metric_at(p);
    Eigen::MatrixXd V = detail::frame_matrix(in.frames->vertical, p);
    Eigen::MatrixXd GN = in.map->target->metric_at(in.map->value(p));
    linalg::Signature fiber = linalg::signature((V.transpose() * G * V).eval(), tol);
    linalg::Signature target = linalg::signature(GN, tol);
    const bool riem_target = target.riemannian();
    const bool lorentz_fiber = fiber.lorentzian();
    if (pos == XiPosition::vertical && !(lorentz_fiber && riem_target)) ++sig_bad;
    if (pos == XiPosition::horizontal && !(fiber.riemannian() && target.lorentzian())) ++sig_bad;
    if (sig_note.empty())
      sig_note = "fiber index " + std::to_string(fiber.index()) + ", target index " +
                 std::to_string(target.index()) + "; branch: " + to_string(pos);
  }
  rep.push("pro-1", "signature dichotomy matches the xi position", static_cast<double>(sig_bad),
           0.0, sig_note);

  if (pos == XiPosition::vertical)
    rep.push("theorem-01-a", "m <= n <= 2m (xi vertical)",
             (m <= n && n <= 2 * m) ? 0.0 : 1.0, 0.0,
             "m = " + std::to_string(m) + ", n = " + std::to_string(n));
  if (pos == XiPosition::horizontal)
    rep.push("theorem-01-c", "m + 1 <= n (xi horizontal)", (m + 1 <= n) ? 0.0 : 1.0, 0.0,
             "m = " + std::to_string(m) + ", n = " + std::to_string(n));

  // Span equalities, by rank at every sampled point.
  int eq_bad = 0, span_xi_bad = 0;
  for (const Point& p : points) {
    Eigen::MatrixXd F = geometry::eval_tensor11(in.S->phi, p);
    Eigen::MatrixXd V = detail::frame_matrix(in.frames->vertical, p);
    Eigen::MatrixXd H = detail::frame_matrix(in.frames->horizontal, p);
    Eigen::VectorXd xi = geometry::eval_field(in.S->xi, p);
    // phi(ker) = (ker)^perp: the stacked matrix keeps the horizontal rank.
    Eigen::MatrixXd both(c.dim, V.cols() + H.cols());
    both << F * V, H;
    if (!(detail::rank_of(F * V, tol) == static_cast<int>(H.cols()) &&
          detail::rank_of(both, tol) == static_cast<int>(H.cols())))
      ++eq_bad;
    Eigen::MatrixXd withxi(c.dim, V.cols() + 1 + H.cols());
    withxi << F * V, xi, H;
    Eigen::MatrixXd phiV_xi(c.dim, V.cols() + 1);
    phiV_xi << F * V, xi;
    if (!(detail::rank_of(phiV_xi, tol) == static_cast<int>(H.cols()) &&
          detail::rank_of(withxi, tol) == static_cast<int>(H.cols())))
      ++span_xi_bad;
  }
  const bool span_plain = eq_bad == 0;
  const bool span_xi = span_xi_bad == 0;
  if (pos == XiPosition::vertical) {
    // cor-1: m = n implies phi(ker) = (ker)^perp.
    rep.push("cor-1", "m = n implies phi(ker F_*) = (ker F_*)^perp",
             (m == n && !span_plain) ? 1.0 : 0.0, 0.0,
             m == n ? (span_plain ? "span equality holds" : "span equality fails")
                    : "not applicable (m != n)");
  }
  if (pos == XiPosition::horizontal) {
    // theorem-7: (ker)^perp = phi(ker) (+) span{xi} if and only if m + 1 = n.
    const bool mp1 = (m + 1 == n);
    rep.push("theorem-7", "(ker F_*)^perp = phi(ker F_*) (+) span{xi} iff m + 1 = n",
             (span_xi == mp1) ? 0.0 : 1.0, 0.0,
             std::string("span equality ") + (span_xi ? "holds" : "fails") + ", m + 1 = " +
                 std::to_string(m + 1) + ", n = " + std::to_string(n));
  }
  return rep;
}

// B/C decomposition of phi on horizontal fields: BX = vertical part of phi X,
// CX = phi X - BX (the mu part), with the algebraic consistency identities.
inline StructureReport bc_mu_decompose(const AnalysisInput& in, const std::vector<Point>& points,
                                       double tol = 1e-9) {
  StructureReport rep;
  if (!in.S) {
    rep.push("eq-4.1", "phi X = BX + CX", 0.0, tol, "skipped: no contact structure declared");
    return rep;
  }
  const Chart& c = in.chart();
  const double eps = in.S->epsilon;
  double r_mu = 0, r_30 = 0, r_bc = 0;
  for (const Point& p : points) {
    OneillContext ctx(c, *in.frames, p);
    Eigen::MatrixXd G = ctx.G;
    Eigen::MatrixXd F = geometry::eval_tensor11(in.S->phi, p);
    Eigen::MatrixXd V = detail::frame_matrix(in.frames->vertical, p);
    for (const auto& Xf : in.frames->horizontal) {
      Eigen::VectorXd X = geometry::eval_field(Xf, p);
      Eigen::VectorXd phiX = F * X;
      Eigen::VectorXd BX = ctx.vertical(phiX);
      Eigen::VectorXd CX = phiX - BX;
      // CX lies in mu: orthogonal to phi(vertical).
      if (V.cols() > 0)
        r_mu = std::max(r_mu, ((F * V).transpose() * G * CX).cwiseAbs().maxCoeff());
      // eq-30: C^2 X + phi BX = eps X + eta(X) xi (the eta term vanishes for
      // horizontal X when xi is vertical, recovering the printed form).
      Eigen::VectorXd C2X = F * CX - ctx.vertical(F * CX);
      Eigen::VectorXd et = geometry::eval_field(in.S->eta, p);
      Eigen::VectorXd xi = geometry::eval_field(in.S->xi, p);
      r_30 = std::max(r_30,
                      (C2X + F * BX - eps * X - et.dot(X) * xi).cwiseAbs().maxCoeff());
      // B(CX) = 0: phi CX has no vertical component.
      r_bc = std::max(r_bc, ctx.vertical(F * CX).cwiseAbs().maxCoeff());
    }
  }
  rep.push("eq-4.1", "CX is the mu part: g(CX, phi V) = 0", r_mu, tol);
  rep.push("eq-30", "C^2 X + phi BX = eps X + eta(X) xi", r_30, tol);
  rep.push("bc-zero", "B(CX) = 0", r_bc, tol);
  return rep;
}

// Lemma residuals for the case selected by the xi position.
inline StructureReport lemma_residual_suite(const AnalysisInput& in,
                                            const std::vector<Point>& points,
                                            double tol = 1e-9) {
  StructureReport rep;
  XiPosition pos = in.S ? classify_xi(in, points, tol) : XiPosition::none;
  if (pos == XiPosition::none || pos == XiPosition::oblique) {
    rep.push("lemmas", "case-specific lemma suite", 0.0, tol,
             std::string("skipped: xi position is ") + to_string(pos));
    return rep;
  }
  const Chart& c = in.chart();
  const double eps = in.S->epsilon;
  auto phi_field = [&](const VectorField& Y) { return geometry::tensor11_apply(in.S->phi, Y); };

  if (pos == XiPosition::vertical) {
    double r46 = 0, r47 = 0, r49 = 0, r31 = 0, rTxi = 0;
    double phiU_min = std::numeric_limits<double>::infinity();
    for (const Point& p : points) {
      OneillContext ctx(c, *in.frames, p);
      Eigen::MatrixXd F = geometry::eval_tensor11(in.S->phi, p);
      for (const auto& Xf : in.frames->horizontal) {
        Eigen::VectorXd X = geometry::eval_field(Xf, p);
        Eigen::VectorXd phiX = F * X;
        Eigen::VectorXd CX = phiX - ctx.vertical(phiX);
        Eigen::VectorXd Axi = ctx.oneill_A(Xf, in.S->xi);
        // eq-4.6: CX = -eps A_X xi.
        r46 = std::max(r46, (CX + eps * Axi).cwiseAbs().maxCoeff());
        // eq-4.7: g(A_X xi, phi U) = 0.
        for (const auto& Uf : in.frames->vertical)
          r47 = std::max(r47,
                         std::abs(ctx.pair(Axi, F * geometry::eval_field(Uf, p))));
        // eq-4.9: g(X, A_Y xi) = eps g(Y, A_X xi).
        for (const auto& Yf : in.frames->horizontal) {
          Eigen::VectorXd Y = geometry::eval_field(Yf, p);
          Eigen::VectorXd Ayi = ctx.oneill_A(Yf, in.S->xi);
          r49 = std::max(r49, std::abs(ctx.pair(X, Ayi) - eps * ctx.pair(Y, Axi)));
          // eq-31: nabla_X Y = -g(phi X, Y) xi + eps phi nabla_X phi Y.
          Eigen::VectorXd nabXY = geometry::cov_deriv_vector(c, Xf, Yf, p);
          Eigen::VectorXd nabXphiY = geometry::cov_deriv_vector(c, Xf, phi_field(Yf), p);
          Eigen::VectorXd xi = geometry::eval_field(in.S->xi, p);
          r31 = std::max(
              r31, (nabXY + ctx.pair(phiX, Y) * xi - eps * (F * nabXphiY)).cwiseAbs().maxCoeff());
        }
      }
      // T_U xi = -eps phi U, the not-totally-umbilical witness.
      for (const auto& Uf : in.frames->vertical) {
        Eigen::VectorXd phiU = F * geometry::eval_field(Uf, p);
        rTxi = std::max(rTxi,
                        (ctx.oneill_T(Uf, in.S->xi) + eps * phiU).cwiseAbs().maxCoeff());
        if (phiU.norm() > 0) phiU_min = std::min(phiU_min, phiU.norm());
      }
    }
    rep.push("eq-4.6", "CX = -eps A_X xi", r46, tol);
    rep.push("eq-4.7", "g(A_X xi, phi U) = 0", r47, tol);
    rep.push("eq-4.9", "g(X, A_Y xi) = eps g(Y, A_X xi)", r49, tol);
    rep.push("eq-31", "nabla_X Y = -g(phi X, Y) xi + eps phi nabla_X phi Y", r31, tol);
    rep.push("t-u-xi", "T_U xi = -eps phi U (fibers not totally umbilical witness)", rTxi, tol,
             "min nonzero |phi U| = " + std::to_string(phiU_min));
  } else {
    double r56 = 0, r57 = 0, r58 = 0;
    for (const Point& p : points) {
      OneillContext ctx(c, *in.frames, p);
      Eigen::MatrixXd F = geometry::eval_tensor11(in.S->phi, p);
      for (const auto& Xf : in.frames->horizontal) {
        Eigen::VectorXd X = geometry::eval_field(Xf, p);
        Eigen::VectorXd BX = ctx.vertical(F * X);
        Eigen::VectorXd Axi = ctx.oneill_A(Xf, in.S->xi);
        // eq-5.6: BX = -eps A_X xi.
        r56 = std::max(r56, (BX + eps * Axi).cwiseAbs().maxCoeff());
        // eq-5.8: g(nabla_X CY, phi U) = -g(CY, phi A_X U).
        for (const auto& Yf : in.frames->horizontal) {
          geometry::VecJet jphiY = geometry::field_jet(phi_field(Yf), p);
          geometry::VecJet BY = ctx.PV.apply(jphiY);
          geometry::VecJet CY{jphiY.v - BY.v, jphiY.jac - BY.jac};
          Eigen::VectorXd nabXCY =
              geometry::cov_deriv(ctx.gamma, CY, geometry::eval_field(Xf, p));
          for (const auto& Uf : in.frames->vertical) {
            Eigen::VectorXd phiU = F * geometry::eval_field(Uf, p);
            Eigen::VectorXd AXU = ctx.oneill_A(Xf, Uf);
            r58 = std::max(r58, std::abs(ctx.pair(nabXCY, phiU) +
                                         ctx.pair(CY.v, F * AXU)));
          }
        }
      }
      // eq-5.7: T_U xi = 0.
      for (const auto& Uf : in.frames->vertical)
        r57 = std::max(r57, ctx.oneill_T(Uf, in.S->xi).cwiseAbs().maxCoeff());
    }
    rep.push("eq-5.6", "BX = -eps A_X xi", r56, tol);
    rep.push("eq-5.7", "T_U xi = 0", r57, tol);
    rep.push("eq-5.8", "g(nabla_X CY, phi U) = -g(CY, phi A_X U)", r58, tol);
  }
  return rep;
}

namespace detail {

inline void push_agreement(StructureReport& rep, const std::string& prefix,
                           const std::string& what, double direct, double criterion, double tol,
                           const std::string& note = {}) {
  const bool d = direct <= tol, k = criterion <= tol;
  rep.push(prefix + "-direct", what + ": direct residual", direct, d ? tol : direct, note);
  rep.items.back().pass = true;  // informational; the verdict is the agreement
  rep.items.back().note = (d ? "holds" : "fails") + std::string(note.empty() ? "" : "; " + note);
  rep.push(prefix + "-criterion", what + ": theorem-criterion residual", criterion,
           k ? tol : criterion);
  rep.items.back().pass = true;
  rep.items.back().note = k ? "holds" : "fails";
  rep.push(prefix + "-agree", what + ": direct and criterion verdicts agree", d == k ? 0.0 : 1.0,
           0.0);
}

}  // namespace detail

// Integrability of the horizontal distribution: direct bracket test against
// the case-appropriate A-tensor criterion.
inline StructureReport integrability_check(const AnalysisInput& in,
                                           const std::vector<Point>& points, double tol = 1e-9) {
  StructureReport rep;
  const Chart& c = in.chart();
  double direct = 0;
  for (const Point& p : points) {
    OneillContext ctx(c, *in.frames, p);
    for (const auto& Xf : in.frames->horizontal)
      for (const auto& Yf : in.frames->horizontal)
        for (const auto& Vf : in.frames->vertical)
          direct = std::max(direct, std::abs(ctx.pair(geometry::lie_bracket(Xf, Yf, p),
                                                      geometry::eval_field(Vf, p))));
  }
  if (!in.S) {
    rep.push("h-integrable", "horizontal distribution integrable: max |g([X,Y],V)|", direct,
             tol, "no contact structure: direct test only");
    return rep;
  }
  XiPosition pos = classify_xi(in, points, tol);
  const double eps = in.S->epsilon;
  double crit = 0;
  std::string id, what;
  for (const Point& p : points) {
    OneillContext ctx(c, *in.frames, p);
    Eigen::MatrixXd F = geometry::eval_tensor11(in.S->phi, p);
    Eigen::VectorXd et = geometry::eval_field(in.S->eta, p);
    for (const auto& Xf : in.frames->horizontal)
      for (const auto& Yf : in.frames->horizontal)
        for (const auto& Vf : in.frames->vertical) {
          Eigen::VectorXd X = geometry::eval_field(Xf, p);
          Eigen::VectorXd Y = geometry::eval_field(Yf, p);
          Eigen::VectorXd V = geometry::eval_field(Vf, p);
          Eigen::VectorXd phiV = F * V;
          if (pos == XiPosition::vertical) {
            // g(A_X BY - A_Y BX, phi V) = eps g(A_X xi, phi A_Y V)
            //                           - eps g(A_Y xi, phi A_X V).
            Eigen::VectorXd AXBY =
                ctx.oneill_A(Xf, geometry::const_field(ctx.vertical(F * Y), c.dim));
            Eigen::VectorXd AYBX =
                ctx.oneill_A(Yf, geometry::const_field(ctx.vertical(F * X), c.dim));
            double lhs = ctx.pair(AXBY - AYBX, phiV);
            double rhs = eps * ctx.pair(ctx.oneill_A(Xf, in.S->xi), F * ctx.oneill_A(Yf, Vf)) -
                         eps * ctx.pair(ctx.oneill_A(Yf, in.S->xi), F * ctx.oneill_A(Xf, Vf));
            crit = std::max(crit, std::abs(lhs - rhs));
            id = "integrable-4-iii";
            what = "horizontal integrability (vertical-xi criterion)";
          } else if (pos == XiPosition::horizontal) {
            // g(A_X A_Y xi - A_Y A_X xi, phi V) = -g(CX, phi A_Y V)
            //   + g(CY, phi A_X V) - eps g(X, phi V) eta(Y) + eps g(Y, phi V) eta(X).
            Eigen::VectorXd AYxi = ctx.oneill_A(Yf, in.S->xi);
            Eigen::VectorXd AXxi = ctx.oneill_A(Xf, in.S->xi);
            Eigen::VectorXd AXAYxi = ctx.oneill_A(Xf, geometry::const_field(AYxi, c.dim));
            Eigen::VectorXd AYAXxi = ctx.oneill_A(Yf, geometry::const_field(AXxi, c.dim));
            Eigen::VectorXd CX = (F * X) - ctx.vertical(F * X);
            Eigen::VectorXd CY = (F * Y) - ctx.vertical(F * Y);
            double lhs = ctx.pair(AXAYxi - AYAXxi, phiV);
            double rhs = -ctx.pair(CX, F * ctx.oneill_A(Yf, Vf)) +
                         ctx.pair(CY, F * ctx.oneill_A(Xf, Vf)) -
                         eps * ctx.pair(X, phiV) * et.dot(Y) +
                         eps * ctx.pair(Y, phiV) * et.dot(X);
            crit = std::max(crit, std::abs(lhs - rhs));
            id = "integrable-th-3.4-iii";
            what = "horizontal integrability (horizontal-xi criterion)";
          }
        }
  }
  if (id.empty()) {
    rep.push("h-integrable", "horizontal distribution integrable: max |g([X,Y],V)|", direct,
             tol, std::string("xi position ") + to_string(pos) + ": direct test only");
    return rep;
  }
  detail::push_agreement(rep, id, what, direct, crit, tol);
  return rep;
}

// Totally geodesic foliation criteria for both distributions.
inline StructureReport foliation_checks(const AnalysisInput& in,
                                        const std::vector<Point>& points, double tol = 1e-9) {
  StructureReport rep;
  const Chart& c = in.chart();

  // Direct tests: vertical part of nabla_X Y for the horizontal foliation,
  // T_U W for the vertical one.
  double h_direct = 0, v_direct = 0;
  for (const Point& p : points) {
    OneillContext ctx(c, *in.frames, p);
    for (const auto& Xf : in.frames->horizontal)
      for (const auto& Yf : in.frames->horizontal)
        h_direct = std::max(
            h_direct,
            ctx.vertical(geometry::cov_deriv_vector(c, Xf, Yf, p)).cwiseAbs().maxCoeff());
    for (const auto& Uf : in.frames->vertical)
      for (const auto& Wf : in.frames->vertical)
        v_direct = std::max(v_direct, ctx.oneill_T(Uf, Wf).cwiseAbs().maxCoeff());
  }

  if (!in.S) {
    rep.push("h-foliation", "horizontal foliation totally geodesic: max |V nabla_X Y|", h_direct,
             tol, "no contact structure: direct test only");
    rep.push("v-foliation", "vertical foliation totally geodesic: max |T_U W|", v_direct, tol,
             "no contact structure: direct test only");
    return rep;
  }

  XiPosition pos = classify_xi(in, points, tol);
  const double eps = in.S->epsilon;
  double h_crit = 0, v_crit = 0;
  std::string h_id, v_id, h_what, v_what;

  for (const Point& p : points) {
    OneillContext ctx(c, *in.frames, p);
    Eigen::MatrixXd F = geometry::eval_tensor11(in.S->phi, p);
    Eigen::VectorXd et = geometry::eval_field(in.S->eta, p);
    Eigen::MatrixXd G = ctx.G;

    for (const auto& Xf : in.frames->horizontal) {
      Eigen::VectorXd X = geometry::eval_field(Xf, p);
      for (const auto& Yf : in.frames->horizontal) {
        Eigen::VectorXd Y = geometry::eval_field(Yf, p);
        Eigen::VectorXd BY = ctx.vertical(F * Y);
        Eigen::VectorXd AXBY = ctx.oneill_A(Xf, geometry::const_field(BY, c.dim));
        for (const auto& Vf : in.frames->vertical) {
          Eigen::VectorXd phiV = F * geometry::eval_field(Vf, p);
          if (pos == XiPosition::vertical) {
            // g(A_X BY, phi V) = eps g(A_Y xi, phi A_X V).
            double lhs = ctx.pair(AXBY, phiV);
            double rhs = eps * ctx.pair(ctx.oneill_A(Yf, in.S->xi), F * ctx.oneill_A(Xf, Vf));
            h_crit = std::max(h_crit, std::abs(lhs - rhs));
            h_id = "h-foliation-4-ii";
            h_what = "horizontal foliation (vertical-xi criterion)";
          } else if (pos == XiPosition::horizontal) {
            // theorem:3.6(ii): g(A_X BY, phi V) = g(CY, phi A_X V)
            //                  + eps eta(Y) g(X, phi V).
            Eigen::VectorXd CY = (F * Y) - ctx.vertical(F * Y);
            double lhs = ctx.pair(AXBY, phiV);
            double rhs = ctx.pair(CY, F * ctx.oneill_A(Xf, Vf)) +
                         eps * et.dot(Y) * ctx.pair(X, phiV);
            h_crit = std::max(h_crit, std::abs(lhs - rhs));
            h_id = "h-foliation-th-3.6-ii";
            h_what = "horizontal foliation (horizontal-xi criterion)";
          }
        }
      }
    }

    if (pos == XiPosition::horizontal) {
      // theorem:3.8(c): T_V BX + A_{CX} V in Gamma(mu); plus
      // cor:3.9(c): T_V phi W = 0.
      Eigen::MatrixXd phiV_mat =
          F * detail::frame_matrix(in.frames->vertical, p);  // complement of mu in H
      for (const auto& Xf : in.frames->horizontal) {
        Eigen::VectorXd X = geometry::eval_field(Xf, p);
        Eigen::VectorXd CX = (F * X) - ctx.vertical(F * X);
        for (const auto& Vf : in.frames->vertical) {
          Eigen::VectorXd BX = ctx.vertical(F * X);
          Eigen::VectorXd val = ctx.oneill_T(Vf, geometry::const_field(BX, c.dim)) +
                                ctx.oneill_A(geometry::const_field(CX, c.dim), Vf);
          // Outside-mu component: pairing with phi(vertical).
          v_crit = std::max(v_crit, (phiV_mat.transpose() * G * val).cwiseAbs().maxCoeff());
        }
      }
      for (const auto& Vf : in.frames->vertical)
        for (const auto& Wf : in.frames->vertical)
          v_crit = std::max(v_crit,
                            ctx.oneill_T(Vf, geometry::tensor11_apply(in.S->phi, Wf))
                                .cwiseAbs()
                                .maxCoeff());
      v_id = "v-foliation-th-3.8";
      v_what = "vertical foliation (horizontal-xi criteria)";
    } else if (pos == XiPosition::vertical) {
      // With xi vertical, T_U xi = -eps phi U, so the fibers are totally
      // geodesic exactly when phi vanishes on the vertical distribution.
      for (const auto& Uf : in.frames->vertical)
        v_crit = std::max(v_crit,
                          (F * geometry::eval_field(Uf, p)).cwiseAbs().maxCoeff());
      v_id = "v-foliation-phi-ker";
      v_what = "vertical foliation (vertical-xi criterion phi|ker = 0)";
    }
  }

  if (h_id.empty()) {
    rep.push("h-foliation", "horizontal foliation totally geodesic: max |V nabla_X Y|", h_direct,
             tol, std::string("xi position ") + to_string(pos) + ": direct test only");
  } else {
    detail::push_agreement(rep, h_id, h_what, h_direct, h_crit, tol);
  }
  if (v_id.empty()) {
    rep.push("v-foliation", "vertical foliation totally geodesic: max |T_U W|", v_direct, tol,
             std::string("xi position ") + to_string(pos) + ": direct test only");
  } else {
    detail::push_agreement(rep, v_id, v_what, v_direct, v_crit, tol);
  }
  return rep;
}

// tr(phi T_V) = sum_i eps_i g(e_i, phi T_{e_i} V) over a pseudo-orthonormal
// vertical frame.
inline double trace_phi_T(const AnalysisInput& in, const Point& p, const Eigen::VectorXd& V,
                          double tol = 1e-9) {
  const Chart& c = in.chart();
  OneillContext ctx(c, *in.frames, p);
  Eigen::MatrixXd F = geometry::eval_tensor11(in.S->phi, p);
  std::vector<Eigen::VectorXd> vvecs;
  for (const auto& Uf : in.frames->vertical)
    vvecs.push_back(geometry::eval_field(Uf, p));
  linalg::Frame vf = linalg::pseudo_orthonormalize(vvecs, ctx.G, tol);
  VectorField Vf = geometry::const_field(V, c.dim);
  double tr = 0;
  for (int i = 0; i < vf.dim(); ++i) {
    const Eigen::VectorXd& e = vf.vectors[static_cast<std::size_t>(i)];
    Eigen::VectorXd TeV = ctx.oneill_T(geometry::const_field(e, c.dim), Vf);
    tr += vf.signs[static_cast<std::size_t>(i)] * ctx.pair(e, F * TeV);
  }
  return tr;
}

// Totally-geodesic-map and harmonicity criteria, with the span hypotheses
// detected and reported, and the harmonic verdict cross-checked against the
// tension computation of the submersion module.
inline StructureReport tg_map_and_harmonic_criteria(const AnalysisInput& in,
                                                    const std::vector<Point>& points,
                                                    double tol = 1e-9) {
  StructureReport rep;
  if (!in.S) {
    rep.push("tg-map", "totally geodesic map criteria", 0.0, tol,
             "skipped: no contact structure declared");
    return rep;
  }
  const Chart& c = in.chart();
  const int m = (c.dim - 1) / 2;
  const int n = in.map->target ? in.map->target->dim : 0;
  XiPosition pos = classify_xi(in, points, tol);
  const double eps = in.S->epsilon;

  // Direct TG-map test: second fundamental form over all declared fields.
  double tg_direct = 0;
  std::vector<const VectorField*> all;
  for (const auto& f : in.frames->vertical) all.push_back(&f);
  for (const auto& f : in.frames->horizontal) all.push_back(&f);
  for (const Point& p : points)
    for (const auto* Ef : all)
      for (const auto* Ff : all)
        tg_direct = std::max(
            tg_direct,
            submersion::second_fundamental_form(*in.map, *Ef, *Ff, p).cwiseAbs().maxCoeff());

  if (pos == XiPosition::horizontal) {
    // Span hypothesis of theorem:3.10 / theorem:3.11:
    // (ker F_*)^perp = phi(ker F_*) (+) span{xi}, i.e. m + 1 = n.
    const bool hyp = (m + 1 == n);
    if (!hyp) {
      rep.push("tg-map-th-3.10", "T_V phi W = 0 and A_X phi W = 0", 0.0, tol,
               "skipped: span hypothesis (ker F_*)^perp = phi(ker F_*) (+) span{xi} fails "
               "(m + 1 = " +
                   std::to_string(m + 1) + " != n = " + std::to_string(n) + ")");
      rep.push("harmonic-th-3.11", "F harmonic iff tr(phi T_V) = 0", 0.0, tol,
               "skipped: same span hypothesis fails");
      return rep;
    }
    double crit = 0;
    for (const Point& p : points) {
      OneillContext ctx(c, *in.frames, p);
      for (const auto& Wf : in.frames->vertical) {
        VectorField phiW = geometry::tensor11_apply(in.S->phi, Wf);
        for (const auto& Vf : in.frames->vertical)
          crit = std::max(crit, ctx.oneill_T(Vf, phiW).cwiseAbs().maxCoeff());
        for (const auto& Xf : in.frames->horizontal)
          crit = std::max(crit, ctx.oneill_A(Xf, phiW).cwiseAbs().maxCoeff());
      }
    }
    detail::push_agreement(rep, "tg-map-th-3.10",
                           "totally geodesic map (T_V phi W = 0 and A_X phi W = 0)", tg_direct,
                           crit, tol);
    // theorem:3.11: harmonic iff tr(phi T_V) = 0 for vertical V.
    double tr_res = 0;
    for (const Point& p : points)
      for (const auto& Vf : in.frames->vertical)
        tr_res = std::max(tr_res,
                          std::abs(trace_phi_T(in, p, geometry::eval_field(Vf, p), tol)));
    auto harm = submersion::tension_and_harmonic(*in.map, *in.frames, points, tol);
    detail::push_agreement(rep, "harmonic-th-3.11", "harmonicity (tr(phi T_V) = 0)",
                           harm.minimal_residual, tr_res, tol);
  } else if (pos == XiPosition::vertical) {
    // Section-4 harmonicity criterion, stated for m = n:
    // tr(phi T_V) = -n eta(V) for vertical V; T_xi xi = 0.
    double txi = 0;
    for (const Point& p : points) {
      OneillContext ctx(c, *in.frames, p);
      txi = std::max(txi, ctx.oneill_T(in.S->xi, in.S->xi).cwiseAbs().maxCoeff());
    }
    rep.push("t-xi-xi", "T_xi xi = 0", txi, tol);
    if (m != n) {
      rep.push("harmonic-4", "tr(phi T_V) = -n eta(V)", 0.0, tol,
               "skipped: stated for m = n (here m = " + std::to_string(m) + ", n = " +
                   std::to_string(n) + ")");
      return rep;
    }
    double tr_res = 0;
    for (const Point& p : points) {
      Eigen::VectorXd et = geometry::eval_field(in.S->eta, p);
      for (const auto& Vf : in.frames->vertical) {
        Eigen::VectorXd V = geometry::eval_field(Vf, p);
        double tr = trace_phi_T(in, p, V, tol);
        tr_res = std::max(tr_res, std::abs(tr + n * et.dot(V)));
      }
    }
    auto harm = submersion::tension_and_harmonic(*in.map, *in.frames, points, tol);
    detail::push_agreement(rep, "harmonic-4", "harmonicity (tr(phi T_V) = -n eta(V))",
                           harm.minimal_residual, tr_res, tol);
  } else {
    rep.push("tg-map", "totally geodesic map criteria",
             tg_direct <= tol ? 0.0 : tg_direct, tol,
             std::string("xi position ") + to_string(pos) + ": direct test only");
  }
  (void)eps;
  return rep;
}

struct DecompositionVerdict {
  bool horizontal_integrable = false;
  bool horizontal_totally_geodesic = false;
  bool vertical_totally_geodesic = false;
  bool twisted_criteria = false;
  bool twisted_skipped = false;  // degenerate |V|^2 guard triggered
  std::string classification;   // "locally product (pointwise evidence)", "twisted-product candidate", "none"
  StructureReport evidence;
};

// Combine the foliation and integrability facts into the three-way
// classification; pointwise numerical evidence only.
inline DecompositionVerdict decomposition_classify(const AnalysisInput& in,
                                                   const std::vector<Point>& points,
                                                   double tol = 1e-9) {
  DecompositionVerdict out;
  const Chart& c = in.chart();
  double h_int = 0, h_tg = 0, v_tg = 0;
  for (const Point& p : points) {
    OneillContext ctx(c, *in.frames, p);
    for (const auto& Xf : in.frames->horizontal) {
      for (const auto& Yf : in.frames->horizontal) {
        h_int = std::max(h_int, ctx.vertical(geometry::lie_bracket(Xf, Yf, p)).norm());
        h_tg = std::max(
            h_tg, ctx.vertical(geometry::cov_deriv_vector(c, Xf, Yf, p)).cwiseAbs().maxCoeff());
      }
    }
    for (const auto& Uf : in.frames->vertical)
      for (const auto& Wf : in.frames->vertical)
        v_tg = std::max(v_tg, ctx.oneill_T(Uf, Wf).cwiseAbs().maxCoeff());
  }
  out.horizontal_integrable = h_int <= tol;
  out.horizontal_totally_geodesic = h_tg <= tol;
  out.vertical_totally_geodesic = v_tg <= tol;
  out.evidence.push("h-integrable", "max |V[X, Y]| over horizontal pairs", h_int, tol);
  out.evidence.items.back().pass = true;
  out.evidence.push("h-totally-geodesic", "max |V nabla_X Y| over horizontal pairs", h_tg, tol);
  out.evidence.items.back().pass = true;
  out.evidence.push("v-totally-geodesic", "max |T_U W| over vertical pairs", v_tg, tol);
  out.evidence.items.back().pass = true;

  // Twisted-product criteria (require a contact structure):
  // T_V phi X = -g(X, T_V V) |V|^{-2} phi V and A_X phi Y = eta(Y) X.
  if (in.S) {
    double tw = 0;
    bool any = false;
    for (const Point& p : points) {
      OneillContext ctx(c, *in.frames, p);
      Eigen::MatrixXd F = geometry::eval_tensor11(in.S->phi, p);
      Eigen::VectorXd et = geometry::eval_field(in.S->eta, p);
      for (const auto& Vf : in.frames->vertical) {
        Eigen::VectorXd V = geometry::eval_field(Vf, p);
        const double nv2 = ctx.pair(V, V);
        if (std::abs(nv2) < tol) {
          out.twisted_skipped = true;
          continue;
        }
        any = true;
        Eigen::VectorXd TVV = ctx.oneill_T(Vf, Vf);
        for (const auto& Xf : in.frames->horizontal) {
          Eigen::VectorXd X = geometry::eval_field(Xf, p);
          Eigen::VectorXd TVphiX =
              ctx.oneill_T(Vf, geometry::tensor11_apply(in.S->phi, Xf));
          tw = std::max(
              tw, (TVphiX + ctx.pair(X, TVV) / nv2 * (F * V)).cwiseAbs().maxCoeff());
        }
      }
      for (const auto& Xf : in.frames->horizontal)
        for (const auto& Yf : in.frames->horizontal) {
          Eigen::VectorXd X = geometry::eval_field(Xf, p);
          Eigen::VectorXd Y = geometry::eval_field(Yf, p);
          Eigen::VectorXd AXphiY =
              ctx.oneill_A(Xf, geometry::tensor11_apply(in.S->phi, Yf));
          tw = std::max(tw, (AXphiY - et.dot(Y) * X).cwiseAbs().maxCoeff());
        }
    }
    out.twisted_criteria = any && tw <= tol;
    out.evidence.push("twisted-criteria",
                      "T_V phi X = -g(X, T_V V)|V|^-2 phi V and A_X phi Y = eta(Y) X", tw, tol,
                      out.twisted_skipped ? "some vertical fields skipped: |V|^2 below tol" : "");
    out.evidence.items.back().pass = true;
  }

  if (out.horizontal_totally_geodesic && out.vertical_totally_geodesic)
    out.classification = "locally product (pointwise evidence)";
  else if (out.twisted_criteria)
    out.classification = "twisted-product candidate";
  else
    out.classification = "none";
  return out;
}

}  // namespace subver::antiinv
