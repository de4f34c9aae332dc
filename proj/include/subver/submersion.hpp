#pragma once
// Semi-Riemannian submersions: differentials, vertical/horizontal splitting,
// the fundamental tensors T and A, the second fundamental form of the map,
// tension and harmonicity.

#include <subver/geometry.hpp>
#include <subver/linalg.hpp>
#include <subver/report.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace subver::submersion {

using geometry::Chart;
using geometry::Point;
using geometry::VecJet;
using geometry::VectorField;
using report::CheckItem;
using report::StructureReport;

struct SmoothMap {
  const Chart* source = nullptr;
  const Chart* target = nullptr;
  std::vector<geometry::ScalarExpr> components;  // target->dim expressions in source coords

  Point value(const Point& p) const {
    Point q(static_cast<Eigen::Index>(components.size()));
    for (std::size_t a = 0; a < components.size(); ++a)
      q(static_cast<Eigen::Index>(a)) = components[a].eval(p);
    return q;
  }
  // jacobian(a, i) = d_i F^a.
  Eigen::MatrixXd jacobian(const Point& p) const {
    Eigen::MatrixXd J(static_cast<Eigen::Index>(components.size()), p.size());
    for (std::size_t a = 0; a < components.size(); ++a)
      J.row(static_cast<Eigen::Index>(a)) = components[a].eval_jet2(p).g.transpose();
    return J;
  }
};

inline Eigen::VectorXd pushforward(const SmoothMap& F, const VectorField& X, const Point& p) {
  return F.jacobian(p) * geometry::eval_field(X, p);
}

struct DeclaredFrames {
  std::vector<VectorField> vertical;
  std::vector<VectorField> horizontal;
};

// P = W (W^T G W)^{-1} W^T G: g-orthogonal projection onto the span of the
// frame columns, with first derivatives.
inline geometry::MatJet projector(const Chart& c, const std::vector<VectorField>& frame,
                                  const Point& p) {
  geometry::MatJet W = geometry::exprs_matjet(frame, p);
  geometry::MatJet G = geometry::metric_matjet(c, p);
  return W * (W.transpose() * G * W).inverse() * W.transpose() * G;
}

// Consistency of declared frames with the map at the sampled points:
// vertical fields span ker dF, horizontal fields are the g-orthogonal
// complement, both restrictions are nondegenerate, and dF is a linear
// isometry between the horizontal space and the target tangent space.
inline StructureReport analyze_split(const SmoothMap& F, const DeclaredFrames& fr,
                                     const std::vector<Point>& points, double tol = 1e-9) {
  StructureReport rep;
  const Chart& c = *F.source;
  double r_kernel = 0, r_orth = 0, r_isom = 0;
  int dim_bad = 0, degenerate = 0;
  linalg::Signature vsig, hsig;
  bool first = true;

  for (const Point& p : points) {
    Eigen::MatrixXd G = c.metric_at(p);
    Eigen::MatrixXd J = F.jacobian(p);
    std::vector<Eigen::VectorXd> vvecs, hvecs;
    for (const auto& V : fr.vertical) vvecs.push_back(geometry::eval_field(V, p));
    for (const auto& H : fr.horizontal) hvecs.push_back(geometry::eval_field(H, p));

    for (const auto& v : vvecs) r_kernel = std::max(r_kernel, (J * v).cwiseAbs().maxCoeff());
    for (const auto& h : hvecs)
      for (const auto& v : vvecs)
        r_orth = std::max(r_orth, std::abs(double(h.transpose() * G * v)));
    if (static_cast<int>(vvecs.size()) !=
            static_cast<int>(linalg::null_space(J, tol).size()) ||
        static_cast<int>(vvecs.size() + hvecs.size()) != c.dim)
      ++dim_bad;

    try {
      linalg::Frame vf = linalg::pseudo_orthonormalize(vvecs, G, tol);
      linalg::Frame hf = linalg::pseudo_orthonormalize(hvecs, G, tol);
      if (first) {
        vsig = vf.signature();
        hsig = hf.signature();
        first = false;
      } else if (vf.signature() != vsig || hf.signature() != hsig) {
        ++degenerate;
      }
    } catch (const linalg::DegenerateError&) {
      ++degenerate;
    }

    if (F.target && !F.target->metric.empty()) {
      Eigen::MatrixXd GN = F.target->metric_at(F.value(p));
      for (const auto& h1 : hvecs)
        for (const auto& h2 : hvecs) {
          double src = h1.transpose() * G * h2;
          double dst = (J * h1).transpose() * GN * (J * h2);
          r_isom = std::max(r_isom, std::abs(src - dst));
        }
    }
  }

  rep.push("vertical-kernel", "declared vertical fields lie in ker dF", r_kernel, tol);
  rep.push("split-orthogonal", "horizontal fields are g-orthogonal to vertical fields", r_orth,
           tol);
  rep.push("split-dimension", "dim V = dim ker dF and dim V + dim H = dim M",
           static_cast<double>(dim_bad), 0.0);
  rep.push("split-nondegenerate", "both restrictions admit pseudo-orthonormal frames",
           static_cast<double>(degenerate), 0.0,
           "vertical signature (" + std::to_string(vsig.n_pos) + "," + std::to_string(vsig.n_neg) +
               "), horizontal signature (" + std::to_string(hsig.n_pos) + "," +
               std::to_string(hsig.n_neg) + ")");
  if (F.target && !F.target->metric.empty())
    rep.push("horizontal-isometry", "g_N(dF X, dF Y) = g_M(X, Y) for horizontal X, Y", r_isom,
             tol);
  return rep;
}

// Pointwise evaluation context for the fundamental tensors.
struct OneillContext {
  const Chart* chart = nullptr;
  Point p;
  std::vector<Eigen::MatrixXd> gamma;
  geometry::MatJet PV, PH;
  Eigen::MatrixXd G;

  OneillContext(const Chart& c, const DeclaredFrames& fr, const Point& point)
      : chart(&c), p(point), gamma(geometry::christoffel(c, point)) {
    PV = projector(c, fr.vertical, point);
    geometry::MatJet I = geometry::MatJet::constant(
        Eigen::MatrixXd::Identity(c.dim, c.dim), c.dim);
    PH = I - PV;
    G = c.metric_at(point);
  }

  double pair(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return x.transpose() * G * y;
  }
  Eigen::VectorXd vertical(const Eigen::VectorXd& x) const { return PV.v * x; }
  Eigen::VectorXd horizontal(const Eigen::VectorXd& x) const { return PH.v * x; }

  // T_E F = H nabla_{VE} VF + V nabla_{VE} HF.
  Eigen::VectorXd oneill_T(const VectorField& E, const VectorField& Fld) const {
    VecJet jE = geometry::field_jet(E, p), jF = geometry::field_jet(Fld, p);
    Eigen::VectorXd vE = PV.v * jE.v;
    VecJet vF = PV.apply(jF), hF = PH.apply(jF);
    return PH.v * geometry::cov_deriv(gamma, vF, vE) +
           PV.v * geometry::cov_deriv(gamma, hF, vE);
  }

  // A_E F = V nabla_{HE} HF + H nabla_{HE} VF.
  Eigen::VectorXd oneill_A(const VectorField& E, const VectorField& Fld) const {
    VecJet jE = geometry::field_jet(E, p), jF = geometry::field_jet(Fld, p);
    Eigen::VectorXd hE = PH.v * jE.v;
    VecJet vF = PV.apply(jF), hF = PH.apply(jF);
    return PV.v * geometry::cov_deriv(gamma, hF, hE) +
           PH.v * geometry::cov_deriv(gamma, vF, hE);
  }
};

// Second fundamental form of the map:
// (nabla F_*)(X, Y)^a = X^i d_i((dF Y)^a) + Gamma_N^a(dF X, dF Y)
//                       - (dF nabla^M_X Y)^a, evaluated at p.
inline Eigen::VectorXd second_fundamental_form(const SmoothMap& F, const VectorField& X,
                                               const VectorField& Y, const Point& p) {
  const Chart& c = *F.source;
  const int m = static_cast<int>(F.components.size());
  Eigen::VectorXd xv = geometry::eval_field(X, p);
  VecJet jy = geometry::field_jet(Y, p);
  Eigen::VectorXd nab = geometry::cov_deriv_vector(c, X, Y, p);

  Eigen::MatrixXd J(m, c.dim);
  Eigen::VectorXd out(m);
  std::vector<geometry::Jet2> jets;
  jets.reserve(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    jets.push_back(F.components[static_cast<std::size_t>(a)].eval_jet2(p));
    J.row(a) = jets.back().g.transpose();
  }
  Eigen::VectorXd dFX = J * xv, dFY = J * jy.v;
  std::vector<Eigen::MatrixXd> gammaN;
  if (F.target && !F.target->metric.empty())
    gammaN = geometry::christoffel(*F.target, F.value(p));

  for (int a = 0; a < m; ++a) {
    const auto& j = jets[static_cast<std::size_t>(a)];
    double first = xv.transpose() * j.h * jy.v + j.g.dot(jy.jac * xv);
    double conn = gammaN.empty()
                      ? 0.0
                      : double(dFX.transpose() * gammaN[static_cast<std::size_t>(a)] * dFY);
    out(a) = first + conn - j.g.dot(nab);
  }
  return out;
}

struct HarmonicResult {
  Eigen::VectorXd tension;        // tau(F) at the worst sampled point
  double tension_residual = 0;    // max |tau(F)| over the samples
  double minimal_residual = 0;    // max |sum_i eps_i T_{e_i} e_i| over the samples
  bool harmonic = false;          // verdict: fibers minimal
};

// Tension field tau(F) = trace_g (nabla F_*) over a full pseudo-orthonormal
// frame; the harmonicity verdict is the minimal-fiber criterion (the mean
// curvature trace of T over a vertical frame vanishing), which is the
// equivalence that holds for semi-Riemannian submersions.
inline HarmonicResult tension_and_harmonic(const SmoothMap& F, const DeclaredFrames& fr,
                                           const std::vector<Point>& points, double tol = 1e-9) {
  const Chart& c = *F.source;
  HarmonicResult out;
  for (const Point& p : points) {
    Eigen::MatrixXd G = c.metric_at(p);
    std::vector<Eigen::VectorXd> vvecs, all;
    for (const auto& V : fr.vertical) vvecs.push_back(geometry::eval_field(V, p));
    all = vvecs;
    for (const auto& H : fr.horizontal) all.push_back(geometry::eval_field(H, p));

    linalg::Frame vf = linalg::pseudo_orthonormalize(vvecs, G, tol > 0 ? tol : 1e-9);
    linalg::Frame full = linalg::pseudo_orthonormalize(all, G, tol > 0 ? tol : 1e-9);

    OneillContext ctx(c, fr, p);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(c.dim);
    for (int i = 0; i < vf.dim(); ++i) {
      VectorField e = geometry::const_field(vf.vectors[static_cast<std::size_t>(i)], c.dim);
      mean += vf.signs[static_cast<std::size_t>(i)] * ctx.oneill_T(e, e);
    }
    out.minimal_residual = std::max(out.minimal_residual, mean.cwiseAbs().maxCoeff());

    Eigen::VectorXd tau = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(F.components.size()));
    for (int i = 0; i < full.dim(); ++i) {
      VectorField e = geometry::const_field(full.vectors[static_cast<std::size_t>(i)], c.dim);
      tau += full.signs[static_cast<std::size_t>(i)] * second_fundamental_form(F, e, e, p);
    }
    double tn = tau.cwiseAbs().maxCoeff();
    if (tn >= out.tension_residual) {
      out.tension_residual = tn;
      out.tension = tau;
    }
  }
  out.harmonic = out.minimal_residual <= tol;
  return out;
}

}  // namespace subver::submersion
