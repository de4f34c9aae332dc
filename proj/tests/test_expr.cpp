#include <catch_amalgamated.hpp>

#include <subver/expr.hpp>

#include <cmath>
#include <random>

using namespace subver::expr;

namespace {

Point pt(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) p(i++) = x;
  return p;
}

// Central finite-difference oracle for gradients and Hessians.
Eigen::VectorXd fd_gradient(const ScalarExpr& e, const Point& p, double h = 1e-5) {
  Eigen::VectorXd g(p.size());
  for (int i = 0; i < p.size(); ++i) {
    Point pp = p, pm = p;
    pp(i) += h;
    pm(i) -= h;
    g(i) = (e.eval(pp) - e.eval(pm)) / (2 * h);
  }
  return g;
}

Eigen::MatrixXd fd_hessian(const ScalarExpr& e, const Point& p, double h = 1e-4) {
  const int n = static_cast<int>(p.size());
  Eigen::MatrixXd H(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Point a = p, b = p, c = p, d = p;
      a(i) += h; a(j) += h;
      b(i) += h; b(j) -= h;
      c(i) -= h; c(j) += h;
      d(i) -= h; d(j) -= h;
      H(i, j) = (e.eval(a) - e.eval(b) - e.eval(c) + e.eval(d)) / (4 * h * h);
    }
  return H;
}

}  // namespace

TEST_CASE("constant expression parses and evaluates") {
  auto e = parse_expr("0", {"x"});
  CHECK(e.eval(pt({3.0})) == 0.0);
  auto j = e.eval_jet2(pt({3.0}));
  CHECK(j.v == 0.0);
  CHECK(j.g.norm() == 0.0);
  CHECK(j.h.norm() == 0.0);

  auto seven = parse_expr("7", {"x", "y"});
  auto js = seven.eval_jet2(pt({1.0, 2.0}));
  CHECK(js.v == 7.0);
  CHECK(js.g.norm() == 0.0);
  CHECK(js.h.norm() == 0.0);
}

TEST_CASE("map-component expression over a five-coordinate chart") {
  auto e = parse_expr("y1*y1/2 + y2*y2/2 + z", {"x1", "x2", "y1", "y2", "z"});
  CHECK(e.eval(pt({0, 0, 2.0, 4.0, 1.0})) == Catch::Approx(2.0 + 8.0 + 1.0));
}

TEST_CASE("polynomial jets are exact") {
  auto e = parse_expr("x^2*y", {"x", "y"});
  auto j = e.eval_jet2(pt({2.0, 3.0}));
  CHECK(j.v == Catch::Approx(12.0));
  CHECK(j.g(0) == Catch::Approx(12.0));
  CHECK(j.g(1) == Catch::Approx(4.0));
  CHECK(j.h(0, 0) == Catch::Approx(6.0));
  CHECK(j.h(0, 1) == Catch::Approx(4.0));
  CHECK(j.h(1, 0) == Catch::Approx(4.0));
  CHECK(j.h(1, 1) == Catch::Approx(0.0));
}

TEST_CASE("syntax and identifier errors") {
  CHECK_THROWS_AS(parse_expr("q +", {"q"}), ParseError);
  CHECK_THROWS_AS(parse_expr("unknown_var", {"q"}), ParseError);
  CHECK_THROWS_AS(parse_expr("", {"q"}), ParseError);
  CHECK_THROWS_AS(parse_expr("tan(q)", {"q"}), ParseError);
  CHECK_THROWS_AS(parse_expr("q^x", {"q", "x"}), ParseError);
  CHECK_THROWS_AS(parse_expr("(q", {"q"}), ParseError);
  try {
    parse_expr("1 + $", {"q"});
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.position == 4);
  }
}

TEST_CASE("division by zero surfaces at evaluation") {
  auto e = parse_expr("1/x", {"x"});
  CHECK(e.eval(pt({2.0})) == Catch::Approx(0.5));
  CHECK_THROWS_AS(e.eval(pt({0.0})), std::domain_error);
  CHECK_THROWS_AS(e.eval_jet2(pt({0.0})), std::domain_error);
}

TEST_CASE("print/parse round trip is stable") {
  std::vector<std::string> coords{"x", "y", "z"};
  std::vector<std::string> sources{
      "x + y*z",          "-(x + y)^3/(1 + z^2)", "sin(x)*cos(y) + exp(z)",
      "x/y/z",            "2.5*x^-2 - 0.125",     "x - (y - z)",
  };
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.2, 1.5);
  for (const auto& src : sources) {
    auto e = parse_expr(src, coords);
    auto printed = e.to_string();
    auto e2 = parse_expr(printed, coords);
    CHECK(e2.to_string() == printed);  // fixed point after one print
    for (int t = 0; t < 5; ++t) {
      Point p = pt({dist(rng), dist(rng), dist(rng)});
      CHECK(e.eval(p) == Catch::Approx(e2.eval(p)).epsilon(1e-14));
    }
  }
}

TEST_CASE("deterministic evaluation") {
  auto e = parse_expr("sin(x)*exp(y) - x^3/(y + 2)", {"x", "y"});
  Point p = pt({0.3, -0.7});
  double v1 = e.eval(p), v2 = e.eval(p);
  CHECK(std::memcmp(&v1, &v2, sizeof v1) == 0);
}

TEST_CASE("AD agrees with finite differences on random points") {
  std::vector<std::string> coords{"x", "y", "z"};
  std::vector<std::string> sources{
      "x^2*y - z^3 + x*y*z", "sin(x*y) + cos(z)", "exp(x/2)*y^2", "(x + y)/(2 + z^2)",
      "1 - y^2/4",           "x*y/4",
  };
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-0.9, 0.9);
  for (const auto& src : sources) {
    auto e = parse_expr(src, coords);
    for (int t = 0; t < 20; ++t) {
      Point p = pt({dist(rng), dist(rng), dist(rng)});
      auto j = e.eval_jet2(p);
      auto gfd = fd_gradient(e, p);
      auto hfd = fd_hessian(e, p);
      double gscale = 1.0 + j.g.cwiseAbs().maxCoeff();
      double hscale = 1.0 + j.h.cwiseAbs().maxCoeff();
      CHECK((j.g - gfd).cwiseAbs().maxCoeff() <= 1e-6 * gscale);
      CHECK((j.h - hfd).cwiseAbs().maxCoeff() <= 1e-4 * hscale);
      CHECK((j.h - j.h.transpose()).norm() == 0.0);  // symmetric by construction
    }
  }
}

TEST_CASE("jets satisfy sum and product rules") {
  std::vector<std::string> coords{"x", "y"};
  auto a = parse_expr("x^2 + sin(y)", coords);
  auto b = parse_expr("exp(x)*y", coords);
  auto sum = a + b;
  auto prod = a * b;
  Point p = pt({0.4, -0.3});
  auto ja = a.eval_jet2(p), jb = b.eval_jet2(p);
  auto js = sum.eval_jet2(p), jp = prod.eval_jet2(p);
  CHECK(js.v == Catch::Approx(ja.v + jb.v));
  CHECK((js.g - (ja.g + jb.g)).norm() == Catch::Approx(0.0).margin(1e-15));
  CHECK((js.h - (ja.h + jb.h)).norm() == Catch::Approx(0.0).margin(1e-15));
  auto jp_ref = ja * jb;
  CHECK(jp.v == Catch::Approx(jp_ref.v));
  CHECK((jp.g - jp_ref.g).norm() == Catch::Approx(0.0).margin(1e-12));
  CHECK((jp.h - jp_ref.h).norm() == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("programmatic expression construction matches parsed form") {
  std::vector<std::string> coords{"u", "v"};
  auto u = ScalarExpr::variable(0, 2, "u");
  auto v = ScalarExpr::variable(1, 2, "v");
  auto built = pow(u, 2) * v - 0.5 * (u + v);
  auto parsed = parse_expr("u^2*v - 0.5*(u + v)", coords);
  Point p = pt({1.3, -2.1});
  CHECK(built.eval(p) == Catch::Approx(parsed.eval(p)));
  auto reparsed = parse_expr(built.to_string(), coords);
  CHECK(reparsed.eval(p) == Catch::Approx(built.eval(p)));
}

TEST_CASE("duplicate coordinate names are rejected") {
  CHECK_THROWS_AS(parse_expr("x", {"x", "x"}), std::invalid_argument);
}
