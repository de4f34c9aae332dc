#pragma once
// Lorentzian almost (para)contact metric structures: axiom verification,
// K-contact/Sasakian tests, metric-contact compatibility and normality.

#include <subver/geometry.hpp>
#include <subver/report.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace subver::contact {

using geometry::Chart;
using geometry::OneForm;
using geometry::Point;
using geometry::Tensor11Field;
using geometry::VectorField;

// epsilon = -1: almost contact; epsilon = +1: almost paracontact.
struct ContactStructure {
  int epsilon = -1;
  Tensor11Field phi;
  VectorField xi;
  OneForm eta;
};

using report::CheckItem;
using report::StructureReport;

namespace detail {

inline Eigen::VectorXd eta_at(const OneForm& eta, const Point& p) {
  return geometry::eval_field(eta, p);
}

}  // namespace detail

// Pointwise algebraic axioms of an almost (para)contact metric structure.
// All checks are tensorial, evaluated in matrix form on the coordinate basis.
inline StructureReport verify_almost_contact(const Chart& c, const ContactStructure& s,
                                             const std::vector<Point>& points,
                                             double tol = 1e-9) {
  const double eps = s.epsilon;
  StructureReport rep;
  double r_phi2 = 0, r_metric = 0, r_eta_g = 0, r_eta_xi = 0, r_phi_xi = 0, r_eta_phi = 0,
         r_xi_norm = 0, r_skew = 0;
  int rank_bad = 0;
  const int n2 = c.dim - 1;  // expected rank of phi

  for (const Point& p : points) {
    Eigen::MatrixXd G = c.metric_at(p);
    Eigen::MatrixXd F = geometry::eval_tensor11(s.phi, p);
    Eigen::VectorXd xi = geometry::eval_field(s.xi, p);
    Eigen::VectorXd et = detail::eta_at(s.eta, p);

    r_phi2 = std::max(r_phi2, (F * F - eps * Eigen::MatrixXd::Identity(c.dim, c.dim) -
                               xi * et.transpose())
                                  .cwiseAbs()
                                  .maxCoeff());
    r_metric = std::max(
        r_metric, (F.transpose() * G * F - G - et * et.transpose()).cwiseAbs().maxCoeff());
    r_eta_g = std::max(r_eta_g, (et - eps * G * xi).cwiseAbs().maxCoeff());
    r_eta_xi = std::max(r_eta_xi, std::abs(et.dot(xi) + eps));
    r_phi_xi = std::max(r_phi_xi, (F * xi).cwiseAbs().maxCoeff());
    r_eta_phi = std::max(r_eta_phi, (F.transpose() * et).cwiseAbs().maxCoeff());
    r_xi_norm = std::max(r_xi_norm, std::abs(double(xi.transpose() * G * xi) + 1.0));
    r_skew = std::max(r_skew, (F.transpose() * G - eps * G * F).cwiseAbs().maxCoeff());
    linalg::Signature fs = linalg::signature((F.transpose() * F).eval(), tol);
    if (fs.n_zero != c.dim - n2) ++rank_bad;
  }

  rep.push("eq-3.1", "phi^2 X = eps X + eta(X) xi", r_phi2, tol);
  rep.push("eq-3.2", "g(phi X, phi Y) = g(X, Y) + eta(X) eta(Y)", r_metric, tol);
  rep.push("eq-3.3", "eta(X) = eps g(X, xi)", r_eta_g, tol);
  rep.push("eta-xi", "eta(xi) = -eps", r_eta_xi, tol);
  rep.push("phi-xi", "phi xi = 0", r_phi_xi, tol);
  rep.push("eta-phi", "eta(phi X) = 0", r_eta_phi, tol);
  rep.push("xi-norm", "g(xi, xi) = -1", r_xi_norm, tol);
  rep.push("eq-3.5", "g(phi X, Y) = eps g(X, phi Y)", r_skew, tol);
  rep.push("phi-rank", "rank phi = dim - 1", static_cast<double>(rank_bad), 0.0,
               rank_bad ? "rank defect at " + std::to_string(rank_bad) + " point(s)" : "");
  return rep;
}

// Differential axioms: nabla_X xi = -eps phi X (K-contact) and
// (nabla_X phi) Y = g(phi X, phi Y) xi + eps eta(Y) phi^2 X (Sasakian).
// Both sides are tensorial in X and Y, so coordinate basis fields suffice.
inline StructureReport verify_kcontact_sasakian(const Chart& c, const ContactStructure& s,
                                                const std::vector<Point>& points,
                                                double tol = 1e-9) {
  const double eps = s.epsilon;
  StructureReport rep;
  double r_xi = 0, r_phi = 0;
  for (const Point& p : points) {
    Eigen::MatrixXd G = c.metric_at(p);
    Eigen::MatrixXd F = geometry::eval_tensor11(s.phi, p);
    Eigen::VectorXd xi = geometry::eval_field(s.xi, p);
    Eigen::VectorXd et = detail::eta_at(s.eta, p);
    auto gamma = geometry::christoffel(c, p);
    geometry::VecJet jxi = geometry::field_jet(s.xi, p);
    for (int i = 0; i < c.dim; ++i) {
      Eigen::VectorXd X = Eigen::VectorXd::Unit(c.dim, i);
      Eigen::VectorXd dxi = geometry::cov_deriv(gamma, jxi, X);
      r_xi = std::max(r_xi, (dxi + eps * F * X).cwiseAbs().maxCoeff());
      VectorField Xf = geometry::basis_field(i, c.dim, c.dim);
      for (int j = 0; j < c.dim; ++j) {
        VectorField Yf = geometry::basis_field(j, c.dim, c.dim);
        Eigen::VectorXd Y = Eigen::VectorXd::Unit(c.dim, j);
        Eigen::VectorXd lhs = geometry::cov_deriv_tensor11(c, s.phi, Xf, Yf, p);
        double g_phiX_phiY = (F * X).transpose() * G * (F * Y);
        Eigen::VectorXd rhs = g_phiX_phiY * xi + eps * et.dot(Y) * (F * F * X);
        r_phi = std::max(r_phi, (lhs - rhs).cwiseAbs().maxCoeff());
      }
    }
  }
  rep.push("eq-3.6", "nabla_X xi = -eps phi X", r_xi, tol);
  rep.push("eq-3.7", "(nabla_X phi) Y = g(phi X, phi Y) xi + eps eta(Y) phi^2 X", r_phi,
               tol);
  return rep;
}

// Metric-contact compatibility d eta = Phi (fundamental form Phi(X, Y) =
// g(X, phi Y)) and normality N_phi + 2 (d eta) (x) xi = 0, where N_phi is the
// Nijenhuis tensor of phi.
inline StructureReport verify_metric_contact_and_normality(const Chart& c,
                                                           const ContactStructure& s,
                                                           const std::vector<Point>& points,
                                                           double kappa = 0.5,
                                                           double tol = 1e-9) {
  StructureReport rep;
  const double eps = s.epsilon;
  double r_deta = 0, r_normal = 0;
  for (const Point& p : points) {
    Eigen::MatrixXd G = c.metric_at(p);
    Eigen::MatrixXd F = geometry::eval_tensor11(s.phi, p);
    Eigen::VectorXd xi = geometry::eval_field(s.xi, p);
    for (int i = 0; i < c.dim; ++i) {
      VectorField Xf = geometry::basis_field(i, c.dim, c.dim);
      VectorField phiX = geometry::tensor11_apply(s.phi, Xf);
      Eigen::VectorXd X = Eigen::VectorXd::Unit(c.dim, i);
      for (int j = 0; j < c.dim; ++j) {
        VectorField Yf = geometry::basis_field(j, c.dim, c.dim);
        VectorField phiY = geometry::tensor11_apply(s.phi, Yf);
        Eigen::VectorXd Y = Eigen::VectorXd::Unit(c.dim, j);
        const double deta = geometry::d_oneform(s.eta, Xf, Yf, p, kappa);
        const double fund = X.transpose() * G * (F * Y);
        r_deta = std::max(r_deta, std::abs(deta - fund));
        // N_phi(X, Y) = phi^2 [X, Y] + [phi X, phi Y]
        //             - phi [phi X, Y] - phi [X, phi Y]; [X, Y] = 0 here.
        Eigen::VectorXd N = geometry::lie_bracket(phiX, phiY, p) -
                            F * geometry::lie_bracket(phiX, Yf, p) -
                            F * geometry::lie_bracket(Xf, phiY, p);
        r_normal = std::max(r_normal, (N + 2 * deta * xi).cwiseAbs().maxCoeff());
      }
    }
  }
  std::string mc_note;
  if (eps > 0)
    mc_note =
        "with g(phi X, Y) = +g(X, phi Y) the fundamental form is symmetric, "
        "while d eta is antisymmetric; the identity can only hold when Phi = 0";
  rep.push("metric-contact", "d eta = Phi (fundamental 2-form)", r_deta, tol,
               std::move(mc_note));
  rep.push("normality", "N_phi + 2 d eta (x) xi = 0", r_normal, tol);
  return rep;
}

}  // namespace subver::contact
