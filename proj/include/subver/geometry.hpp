#pragma once
// Charts, metrics, Levi-Civita connection, Lie brackets, covariant
// derivatives of vector and (1,1)-tensor fields, exterior derivative of
// 1-forms.

#include <subver/expr.hpp>
#include <subver/linalg.hpp>

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace subver::geometry {

using expr::Jet2;
using expr::Point;
using expr::ScalarExpr;

using VectorField = std::vector<ScalarExpr>;    // dim components
using OneForm = std::vector<ScalarExpr>;        // dim components
using Tensor11Field = std::vector<std::vector<ScalarExpr>>;  // [row][col], output index first

struct Chart {
  int dim = 0;
  std::vector<std::string> coord_names;
  std::vector<std::vector<ScalarExpr>> metric;  // dim x dim, symmetric

  Eigen::MatrixXd metric_at(const Point& p) const {
    Eigen::MatrixXd g(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        g(i, j) = metric[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].eval(p);
    return ((g + g.transpose()) / 2).eval();
  }

  // Metric value plus first derivatives: dg[k](i,j) = d_k g_ij.
  void metric_jets(const Point& p, Eigen::MatrixXd& g, std::vector<Eigen::MatrixXd>& dg) const {
    g.resize(dim, dim);
    dg.assign(static_cast<std::size_t>(dim), Eigen::MatrixXd::Zero(dim, dim));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        Jet2 jij = metric[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].eval_jet2(p);
        g(i, j) = jij.v;
        for (int k = 0; k < dim; ++k) dg[static_cast<std::size_t>(k)](i, j) = jij.g(k);
      }
  }
};

// -- field evaluation helpers ------------------------------------------------

inline Eigen::VectorXd eval_field(const VectorField& X, const Point& p) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(X.size()));
  for (std::size_t k = 0; k < X.size(); ++k) v(static_cast<Eigen::Index>(k)) = X[k].eval(p);
  return v;
}

inline Eigen::MatrixXd eval_tensor11(const Tensor11Field& t, const Point& p) {
  const int n = static_cast<int>(t.size());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].eval(p);
  return m;
}

// Value and Jacobian of a vector field: jac(k, i) = d_i X^k.
struct VecJet {
  Eigen::VectorXd v;
  Eigen::MatrixXd jac;
};

inline VecJet field_jet(const VectorField& X, const Point& p) {
  const int n = static_cast<int>(p.size());
  VecJet out;
  out.v.resize(static_cast<Eigen::Index>(X.size()));
  out.jac.resize(static_cast<Eigen::Index>(X.size()), n);
  for (std::size_t k = 0; k < X.size(); ++k) {
    Jet2 j = X[k].eval_jet2(p);
    out.v(static_cast<Eigen::Index>(k)) = j.v;
    out.jac.row(static_cast<Eigen::Index>(k)) = j.g.transpose();
  }
  return out;
}

// Matrix value plus first derivatives: d[k] = d_k M. Supports the operator
// calculus needed to differentiate pointwise projections built from frames.
struct MatJet {
  Eigen::MatrixXd v;
  std::vector<Eigen::MatrixXd> d;

  static MatJet constant(const Eigen::MatrixXd& m, int dim) {
    return {m, std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(dim),
                                            Eigen::MatrixXd::Zero(m.rows(), m.cols()))};
  }
  int dim() const { return static_cast<int>(d.size()); }

  MatJet transpose() const {
    MatJet r{v.transpose(), {}};
    r.d.reserve(d.size());
    for (const auto& dk : d) r.d.push_back(dk.transpose());
    return r;
  }
  MatJet inverse() const {
    MatJet r{v.inverse(), {}};
    r.d.reserve(d.size());
    for (const auto& dk : d) r.d.push_back(-r.v * dk * r.v);
    return r;
  }
  friend MatJet operator*(const MatJet& a, const MatJet& b) {
    MatJet r{a.v * b.v, {}};
    r.d.reserve(a.d.size());
    for (std::size_t k = 0; k < a.d.size(); ++k) r.d.push_back(a.d[k] * b.v + a.v * b.d[k]);
    return r;
  }
  friend MatJet operator-(const MatJet& a, const MatJet& b) {
    MatJet r{a.v - b.v, {}};
    r.d.reserve(a.d.size());
    for (std::size_t k = 0; k < a.d.size(); ++k) r.d.push_back(a.d[k] - b.d[k]);
    return r;
  }
  // Apply to a field-with-Jacobian: (M X) and its derivatives.
  VecJet apply(const VecJet& x) const {
    VecJet r;
    r.v = v * x.v;
    r.jac.resize(v.rows(), static_cast<Eigen::Index>(d.size()));
    for (std::size_t k = 0; k < d.size(); ++k)
      r.jac.col(static_cast<Eigen::Index>(k)) = d[k] * x.v + v * x.jac.col(static_cast<Eigen::Index>(k));
    return r;
  }
};

// MatJet of a matrix of expressions (e.g. a frame matrix with columns given
// by declared expression fields, or a metric).
inline MatJet exprs_matjet(const std::vector<VectorField>& cols, const Point& p) {
  const int n = static_cast<int>(p.size());
  const int rows = cols.empty() ? 0 : static_cast<int>(cols[0].size());
  MatJet out;
  out.v.resize(rows, static_cast<Eigen::Index>(cols.size()));
  out.d.assign(static_cast<std::size_t>(n),
               Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(cols.size())));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < cols[c].size(); ++r) {
      Jet2 j = cols[c][r].eval_jet2(p);
      out.v(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j.v;
      for (int k = 0; k < n; ++k)
        out.d[static_cast<std::size_t>(k)](static_cast<Eigen::Index>(r),
                                           static_cast<Eigen::Index>(c)) = j.g(k);
    }
  return out;
}

inline MatJet metric_matjet(const Chart& c, const Point& p) {
  MatJet out;
  c.metric_jets(p, out.v, out.d);
  return out;
}

// -- connection --------------------------------------------------------------

// Christoffel symbols Gamma[k](i, j) of the Levi-Civita connection at p.
inline std::vector<Eigen::MatrixXd> christoffel(const Chart& c, const Point& p) {
  Eigen::MatrixXd g;
  std::vector<Eigen::MatrixXd> dg;
  c.metric_jets(p, g, dg);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
  if (!lu.isInvertible()) throw linalg::DegenerateError("christoffel: degenerate metric at point");
  Eigen::MatrixXd ginv = lu.inverse();
  std::vector<Eigen::MatrixXd> gamma(static_cast<std::size_t>(c.dim),
                                     Eigen::MatrixXd::Zero(c.dim, c.dim));
  for (int k = 0; k < c.dim; ++k)
    for (int i = 0; i < c.dim; ++i)
      for (int j = i; j < c.dim; ++j) {
        double s = 0.0;
        for (int l = 0; l < c.dim; ++l)
          s += ginv(k, l) * (dg[static_cast<std::size_t>(i)](j, l) +
                             dg[static_cast<std::size_t>(j)](i, l) -
                             dg[static_cast<std::size_t>(l)](i, j));
        gamma[static_cast<std::size_t>(k)](i, j) = s / 2;
        gamma[static_cast<std::size_t>(k)](j, i) = s / 2;
      }
  return gamma;
}

// Covariant derivative of a pointwise field-with-Jacobian along a direction.
inline Eigen::VectorXd cov_deriv(const std::vector<Eigen::MatrixXd>& gamma, const VecJet& Y,
                                 const Eigen::VectorXd& x) {
  const int n = static_cast<int>(gamma.size());
  Eigen::VectorXd out = Y.jac * x;
  for (int k = 0; k < n; ++k) out(k) += x.transpose() * gamma[static_cast<std::size_t>(k)] * Y.v;
  return out;
}

// (nabla_X Y)^k = X^i d_i Y^k + Gamma^k_ij X^i Y^j at p.
inline Eigen::VectorXd cov_deriv_vector(const Chart& c, const VectorField& X, const VectorField& Y,
                                        const Point& p) {
  return cov_deriv(christoffel(c, p), field_jet(Y, p), eval_field(X, p));
}

// [X, Y]^k = X^i d_i Y^k - Y^i d_i X^k at p.
inline Eigen::VectorXd lie_bracket(const VectorField& X, const VectorField& Y, const Point& p) {
  VecJet jx = field_jet(X, p), jy = field_jet(Y, p);
  return jy.jac * jx.v - jx.jac * jy.v;
}

// phi Y as an expression field (exact composition, differentiable).
inline VectorField tensor11_apply(const Tensor11Field& phi, const VectorField& Y) {
  const std::size_t n = phi.size();
  VectorField out(n);
  for (std::size_t i = 0; i < n; ++i) {
    ScalarExpr acc = phi[i][0] * Y[0];
    for (std::size_t j = 1; j < n; ++j) acc = acc + phi[i][j] * Y[j];
    out[i] = acc;
  }
  return out;
}

// (nabla_X phi)Y = nabla_X (phi Y) - phi (nabla_X Y) at p.
inline Eigen::VectorXd cov_deriv_tensor11(const Chart& c, const Tensor11Field& phi,
                                          const VectorField& X, const VectorField& Y,
                                          const Point& p) {
  VectorField phiY = tensor11_apply(phi, Y);
  Eigen::VectorXd a = cov_deriv_vector(c, X, phiY, p);
  Eigen::VectorXd b = eval_tensor11(phi, p) * cov_deriv_vector(c, X, Y, p);
  return a - b;
}

// Pairing eta(Y) as a scalar jet (value + gradient), for directional
// derivatives computed by AD rather than finite differences.
inline Jet2 pair_jet(const OneForm& eta, const VectorField& Y, const Point& p) {
  Jet2 acc = Jet2::constant(0.0, static_cast<int>(p.size()));
  for (std::size_t k = 0; k < eta.size(); ++k)
    acc = acc + eta[k].eval_jet2(p) * Y[k].eval_jet2(p);
  return acc;
}

// d eta(X, Y) = kappa (X(eta(Y)) - Y(eta(X)) - eta([X, Y])) at p.
inline double d_oneform(const OneForm& eta, const VectorField& X, const VectorField& Y,
                        const Point& p, double kappa = 0.5) {
  Jet2 etaY = pair_jet(eta, Y, p);
  Jet2 etaX = pair_jet(eta, X, p);
  Eigen::VectorXd xv = eval_field(X, p), yv = eval_field(Y, p);
  Eigen::VectorXd br = lie_bracket(X, Y, p);
  double eta_br = 0.0;
  for (std::size_t k = 0; k < eta.size(); ++k)
    eta_br += eta[k].eval(p) * br(static_cast<Eigen::Index>(k));
  return kappa * (etaY.g.dot(xv) - etaX.g.dot(yv) - eta_br);
}

// -- convenience constructors ------------------------------------------------

inline VectorField const_field(const Eigen::VectorXd& v, int dim) {
  VectorField f(static_cast<std::size_t>(v.size()));
  for (Eigen::Index k = 0; k < v.size(); ++k)
    f[static_cast<std::size_t>(k)] = ScalarExpr::constant(v(k), dim);
  return f;
}

inline VectorField zero_field(int components, int dim) {
  return VectorField(static_cast<std::size_t>(components), ScalarExpr::constant(0.0, dim));
}

inline VectorField basis_field(int index, int components, int dim) {
  VectorField f = zero_field(components, dim);
  f[static_cast<std::size_t>(index)] = ScalarExpr::constant(1.0, dim);
  return f;
}

}  // namespace subver::geometry
