#pragma once
// Indefinite-metric linear algebra at a point: signatures, null spaces,
// metric-orthogonal complements, pseudo-orthonormal frames.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace subver::linalg {

struct Signature {
  int n_pos = 0;
  int n_neg = 0;
  int n_zero = 0;

  int index() const { return n_neg; }
  bool riemannian() const { return n_neg == 0 && n_zero == 0; }
  bool lorentzian() const { return n_neg == 1 && n_zero == 0; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct DegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inertia of a symmetric matrix via LDL^T reduction with full symmetric
// pivoting (Bunch–Parlett style 1x1/2x2 pivots). Sylvester-invariant.
inline Signature signature(Eigen::MatrixXd m, double tol = 1e-9) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) throw std::invalid_argument("signature: matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * scale)
    throw std::invalid_argument("signature: matrix must be symmetric");
  m = ((m + m.transpose()) / 2).eval();

  Signature sig;
  std::vector<int> act(n);
  for (int i = 0; i < n; ++i) act[i] = i;
  const double alpha = (1.0 + std::sqrt(17.0)) / 8.0;
  const double zero_thresh = tol * scale;

  while (!act.empty()) {
    const int k = static_cast<int>(act.size());
    // Largest remaining element decides whether anything nonzero is left.
    double amax = 0.0;
    int dp = 0;
    double dmax = 0.0;
    int op = 0, oq = 1;
    double omax = 0.0;
    for (int i = 0; i < k; ++i) {
      for (int j = i; j < k; ++j) {
        const double a = std::abs(m(act[i], act[j]));
        amax = std::max(amax, a);
        if (i == j) {
          if (a >= dmax) {
            dmax = a;
            dp = i;
          }
        } else if (a >= omax) {
          omax = a;
          op = i;
          oq = j;
        }
      }
    }
    if (amax <= zero_thresh) {
      sig.n_zero += k;
      break;
    }
    if (dmax >= alpha * omax) {
      // 1x1 pivot on the largest diagonal entry.
      const int p = act[dp];
      const double piv = m(p, p);
      (piv > 0 ? sig.n_pos : sig.n_neg) += 1;
      act.erase(act.begin() + dp);
      for (int i : act)
        for (int j : act) m(i, j) -= m(i, p) * m(p, j) / piv;
    } else {
      // 2x2 pivot on the largest off-diagonal entry; such a block is
      // indefinite (one positive, one negative eigenvalue).
      const int p = act[op], q = act[oq];
      Eigen::Matrix2d E;
      E << m(p, p), m(p, q), m(q, p), m(q, q);
      const Eigen::Matrix2d Einv = E.inverse();
      sig.n_pos += 1;
      sig.n_neg += 1;
      act.erase(act.begin() + oq);
      act.erase(act.begin() + op);
      for (int i : act) {
        for (int j : act) {
          Eigen::RowVector2d ci(m(i, p), m(i, q));
          Eigen::Vector2d cj(m(p, j), m(q, j));
          m(i, j) -= ci * Einv * cj;
        }
      }
    }
  }
  return sig;
}

// Basis of ker(m); residual |m v|_inf <= tol * |m| for each basis vector.
inline std::vector<Eigen::VectorXd> null_space(const Eigen::MatrixXd& m, double tol = 1e-9) {
  if (!m.allFinite()) throw std::invalid_argument("null_space: non-finite entries");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(tol);
  std::vector<Eigen::VectorXd> basis;
  if (lu.dimensionOfKernel() == 0) return basis;
  Eigen::MatrixXd K = lu.kernel();
  basis.reserve(static_cast<std::size_t>(K.cols()));
  for (int c = 0; c < K.cols(); ++c) basis.push_back(K.col(c) / K.col(c).norm());
  return basis;
}

// Vectors w with g(w, b) = 0 for every b in basis; dimensions complementary
// whenever g is nondegenerate.
inline std::vector<Eigen::VectorXd> g_orthogonal_complement(
    const std::vector<Eigen::VectorXd>& basis, const Eigen::MatrixXd& g, double tol = 1e-9) {
  const int n = static_cast<int>(g.rows());
  Signature gs = signature(g, tol);
  if (gs.n_zero > 0) throw DegenerateError("g_orthogonal_complement: degenerate metric");
  if (basis.empty()) {
    std::vector<Eigen::VectorXd> full;
    for (int i = 0; i < n; ++i) full.push_back(Eigen::VectorXd::Unit(n, i));
    return full;
  }
  Eigen::MatrixXd B(n, static_cast<int>(basis.size()));
  for (int c = 0; c < B.cols(); ++c) B.col(c) = basis[static_cast<std::size_t>(c)];
  return null_space(B.transpose() * g, tol);
}

struct Frame {
  std::vector<Eigen::VectorXd> vectors;
  std::vector<int> signs;  // g(e_i, e_i) = signs[i] in {+1, -1}

  int dim() const { return static_cast<int>(vectors.size()); }
  Signature signature() const {
    Signature s;
    for (int sgn : signs) (sgn > 0 ? s.n_pos : s.n_neg) += 1;
    return s;
  }
};

// Gram–Schmidt in an indefinite metric; pivots on the largest |g(v,v)|
// remaining vector at each step. A degenerate (lightlike) restriction is an
// error, never repaired.
inline Frame pseudo_orthonormalize(const std::vector<Eigen::VectorXd>& basis,
                                   const Eigen::MatrixXd& g, double tol = 1e-9) {
  Frame frame;
  std::vector<Eigen::VectorXd> rem = basis;
  double scale = 1.0;
  for (const auto& v : basis) scale = std::max(scale, std::abs(double(v.transpose() * g * v)));
  while (!rem.empty()) {
    // Subtract projections onto the frame built so far, then pivot.
    int best = -1;
    double best_norm = 0.0;
    std::vector<Eigen::VectorXd> res(rem.size());
    for (std::size_t j = 0; j < rem.size(); ++j) {
      Eigen::VectorXd r = rem[j];
      for (int i = 0; i < frame.dim(); ++i) {
        const double c = frame.signs[static_cast<std::size_t>(i)] *
                         double(frame.vectors[static_cast<std::size_t>(i)].transpose() * g * r);
        r -= c * frame.vectors[static_cast<std::size_t>(i)];
      }
      res[j] = r;
      const double nr = std::abs(double(r.transpose() * g * r));
      if (nr > best_norm) {
        best_norm = nr;
        best = static_cast<int>(j);
      }
    }
    if (best < 0 || best_norm <= tol * scale)
      throw DegenerateError("pseudo_orthonormalize: degenerate (lightlike) restriction");
    Eigen::VectorXd e = res[static_cast<std::size_t>(best)];
    const double q = double(e.transpose() * g * e);
    frame.vectors.push_back(e / std::sqrt(std::abs(q)));
    frame.signs.push_back(q > 0 ? 1 : -1);
    rem.erase(rem.begin() + best);
  }
  return frame;
}

// Worst deviation of the frame Gram matrix from diag(signs).
inline double frame_gram_residual(const Frame& f, const Eigen::MatrixXd& g) {
  double worst = 0.0;
  for (int i = 0; i < f.dim(); ++i)
    for (int j = 0; j < f.dim(); ++j) {
      const double gij = double(f.vectors[static_cast<std::size_t>(i)].transpose() * g *
                                f.vectors[static_cast<std::size_t>(j)]);
      const double want = (i == j) ? f.signs[static_cast<std::size_t>(i)] : 0.0;
      worst = std::max(worst, std::abs(gij - want));
    }
  return worst;
}

}  // namespace subver::linalg
