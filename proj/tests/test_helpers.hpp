#pragma once
// Shared fixtures for the test suite: the five-dimensional model chart, its
// contact structures, and small reference submersions.

#include <subver/contact.hpp>
#include <subver/submersion.hpp>

#include <random>
#include <string>
#include <vector>

namespace testutil {

using subver::contact::ContactStructure;
using subver::expr::ScalarExpr;
using subver::expr::parse_expr;
using subver::geometry::Chart;
using subver::geometry::Point;
using subver::geometry::VectorField;
using subver::submersion::DeclaredFrames;
using subver::submersion::SmoothMap;

inline Chart model_r5_chart() {
  Chart c;
  c.dim = 5;
  c.coord_names = {"x1", "x2", "y1", "y2", "z"};
  auto e = [&](const std::string& s) { return parse_expr(s, c.coord_names); };
  const char* rows[5][5] = {
      {"(1 - y1^2)/4", "-y1*y2/4", "0", "0", "y1/4"},
      {"-y1*y2/4", "(1 - y2^2)/4", "0", "0", "y2/4"},
      {"0", "0", "1/4", "0", "0"},
      {"0", "0", "0", "1/4", "0"},
      {"y1/4", "y2/4", "0", "0", "-1/4"},
  };
  c.metric.assign(5, std::vector<ScalarExpr>(5, ScalarExpr::constant(0, 5)));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) c.metric[i][j] = e(rows[i][j]);
  return c;
}

inline ContactStructure model_r5_structure(const Chart& c, int eps) {
  auto e = [&](const std::string& s) { return parse_expr(s, c.coord_names); };
  std::string se = eps > 0 ? "1" : "-1";
  ContactStructure s;
  s.epsilon = eps;
  s.phi.assign(5, std::vector<ScalarExpr>(5, ScalarExpr::constant(0, 5)));
  s.phi[2][0] = e("-1");
  s.phi[3][1] = e("-1");
  s.phi[0][2] = e("-(" + se + ")");
  s.phi[4][2] = e("-(" + se + ")*y1");
  s.phi[1][3] = e("-(" + se + ")");
  s.phi[4][3] = e("-(" + se + ")*y2");
  s.xi = {e("0"), e("0"), e("0"), e("0"), e("2")};
  s.eta = {e("(" + se + ")*y1/2"), e("(" + se + ")*y2/2"), e("0"), e("0"), e("-(" + se + ")/2")};
  return s;
}

// Adapted frame fields E1 = 2 dy1, E2 = 2 dy2, E3 = 2(dx1 + y1 dz),
// E4 = 2(dx2 + y2 dz), xi = 2 dz as expression fields.
inline std::vector<VectorField> model_r5_frame(const Chart& c) {
  auto e = [&](const std::string& s) { return parse_expr(s, c.coord_names); };
  std::vector<VectorField> E(5);
  E[0] = {e("0"), e("0"), e("2"), e("0"), e("0")};
  E[1] = {e("0"), e("0"), e("0"), e("2"), e("0")};
  E[2] = {e("2"), e("0"), e("0"), e("0"), e("2*y1")};
  E[3] = {e("0"), e("2"), e("0"), e("0"), e("2*y2")};
  E[4] = {e("0"), e("0"), e("0"), e("0"), e("2")};
  return E;
}

inline VectorField lincomb(double a, const VectorField& X, double b, const VectorField& Y) {
  VectorField out(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) out[i] = a * X[i] + b * Y[i];
  return out;
}

struct Submersion {
  Chart source, target;
  SmoothMap map;
  DeclaredFrames frames;
};

// The r5 -> r2 submersion F = (x1 + y1, x2 + y2) with flat target metric
// (1/8) I, vertical {E1 - E3, E2 - E4, xi}, horizontal {E1 + E3, E2 + E4}.
inline Submersion r5_to_r2() {
  Submersion s;
  s.source = model_r5_chart();
  s.target.dim = 2;
  s.target.coord_names = {"u1", "u2"};
  auto et = [&](const std::string& str) { return parse_expr(str, s.target.coord_names); };
  s.target.metric = {{et("1/8"), et("0")}, {et("0"), et("1/8")}};
  auto e = [&](const std::string& str) { return parse_expr(str, s.source.coord_names); };
  s.map.components = {e("x1 + y1"), e("x2 + y2")};
  auto E = model_r5_frame(s.source);
  s.frames.vertical = {lincomb(1, E[0], -1, E[2]), lincomb(1, E[1], -1, E[3]), E[4]};
  s.frames.horizontal = {lincomb(1, E[0], 1, E[2]), lincomb(1, E[1], 1, E[3])};
  return s;
}

// The r5 -> r3 submersion F = (x1 + y1, x2 + y2, y1^2/2 + y2^2/2 + z) with
// the curved target metric; an isometry on the x = 0 slice. Vertical
// {E3 - E1, E4 - E2}, horizontal {E1 + E3, E2 + E4, xi}.
inline Submersion r5_to_r3() {
  Submersion s;
  s.source = model_r5_chart();
  s.target.dim = 3;
  s.target.coord_names = {"u1", "u2", "u3"};
  auto et = [&](const std::string& str) { return parse_expr(str, s.target.coord_names); };
  const char* rows[3][3] = {
      {"(1/2 - u1^2)/4", "-u1*u2/4", "u1/4"},
      {"-u1*u2/4", "(1/2 - u2^2)/4", "u2/4"},
      {"u1/4", "u2/4", "-1/4"},
  };
  s.target.metric.assign(3, std::vector<ScalarExpr>(3, ScalarExpr::constant(0, 3)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s.target.metric[i][j] = et(rows[i][j]);
  auto e = [&](const std::string& str) { return parse_expr(str, s.source.coord_names); };
  s.map.components = {e("x1 + y1"), e("x2 + y2"), e("y1^2/2 + y2^2/2 + z")};
  auto E = model_r5_frame(s.source);
  s.frames.vertical = {lincomb(1, E[2], -1, E[0]), lincomb(1, E[3], -1, E[1])};
  s.frames.horizontal = {lincomb(1, E[0], 1, E[2]), lincomb(1, E[1], 1, E[3]), E[4]};
  return s;
}

// Synthetic product control: M = R^4 with diag(1, 1 + x1^2, 1 + x3^2, 1),
// F = (x1, x2) onto the first block. Both fundamental tensors vanish.
inline Submersion product_r4_r2() {
  Submersion s;
  s.source.dim = 4;
  s.source.coord_names = {"x1", "x2", "x3", "x4"};
  auto e = [&](const std::string& str) { return parse_expr(str, s.source.coord_names); };
  s.source.metric.assign(4, std::vector<ScalarExpr>(4, ScalarExpr::constant(0, 4)));
  s.source.metric[0][0] = e("1");
  s.source.metric[1][1] = e("1 + x1^2");
  s.source.metric[2][2] = e("1 + x3^2");
  s.source.metric[3][3] = e("1");
  s.target.dim = 2;
  s.target.coord_names = {"u1", "u2"};
  auto et = [&](const std::string& str) { return parse_expr(str, s.target.coord_names); };
  s.target.metric = {{et("1"), et("0")}, {et("0"), et("1 + u1^2")}};
  s.map.components = {e("x1"), e("x2")};
  s.frames.vertical = {{e("0"), e("0"), e("1"), e("0")}, {e("0"), e("0"), e("0"), e("1")}};
  s.frames.horizontal = {{e("1"), e("0"), e("0"), e("0")}, {e("0"), e("1"), e("0"), e("0")}};
  return s;
}

inline void finish(Submersion& s) {
  s.map.source = &s.source;
  s.map.target = &s.target;
}

inline std::vector<Point> sample_points(int dim, int count, unsigned seed, double lo = -0.8,
                                        double hi = 0.8) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<Point> pts;
  for (int t = 0; t < count; ++t) {
    Point p(dim);
    for (int i = 0; i < dim; ++i) p(i) = dist(rng);
    pts.push_back(p);
  }
  return pts;
}

// Points on the x = 0 slice where the r5 -> r3 and r7 -> r5 maps are
// isometric submersions.
inline std::vector<Point> slice_points(int dim, int count, unsigned seed) {
  auto pts = sample_points(dim, count, seed);
  for (auto& p : pts) {
    p(0) = 0.0;
    p(1) = 0.0;
  }
  return pts;
}

}  // namespace testutil
