#include <catch_amalgamated.hpp>

#include <subver/antiinv.hpp>
#include <subver/catalog.hpp>

using namespace subver;
using catalog::CatalogEntry;
using catalog::load_example;
using geometry::Point;

TEST_CASE("catalog names and parsing") {
  auto names = catalog::catalog_names();
  CHECK(names.size() == 6);
  for (const char* fixed : {"ls-r5-r2", "lps-r5-r2", "ls-r5-r3", "lps-r7-r5", "product-r4-r2"})
    CHECK_NOTHROW(load_example(fixed));
  CHECK(load_example("model-r2n1")->source.dim == 5);
  CHECK(load_example("model-r2n1(3,-1)")->source.dim == 7);
  CHECK(load_example("model-r2n1(1,1)")->structure.epsilon == 1);
  CHECK_THROWS_AS(load_example("no-such-example"), std::invalid_argument);
  CHECK_THROWS_AS(load_example("model-r2n1(0,-1)"), std::invalid_argument);
  CHECK_THROWS_AS(load_example("model-r2n1(2,3)"), std::invalid_argument);
}

TEST_CASE("model entries pass the structure axioms for all catalog parameters") {
  struct P {
    int n, eps;
  };
  for (P p : {P{1, -1}, P{2, -1}, P{3, -1}, P{1, 1}, P{2, 1}}) {
    auto e = load_example("model-r2n1(" + std::to_string(p.n) + "," + std::to_string(p.eps) +
                          ")");
    REQUIRE(e->has_structure);
    auto pts = e->sample_points(25, 42);
    auto rep = contact::verify_almost_contact(e->source, e->structure, pts);
    for (const auto& item : rep.items) {
      INFO(e->name << " " << item.id << " residual " << item.residual);
      CHECK(item.pass);
    }
    auto krep = contact::verify_kcontact_sasakian(e->source, e->structure, pts);
    for (const char* id : {"eq-3.6", "eq-3.7"}) {
      const auto* item = krep.find(id);
      REQUIRE(item != nullptr);
      INFO(e->name << " " << id << " residual " << item->residual);
      CHECK(item->pass == e->expected.at(id));
      if (!e->expected.at(id)) CHECK(item->residual > 0.1);
    }
  }
}

TEST_CASE("catalog r5 chart matches the hand-written fixture") {
  auto e = load_example("ls-r5-r2");
  CHECK(e->source.coord_names == std::vector<std::string>{"x1", "x2", "y1", "y2", "z"});
  auto pts = e->sample_points(5, 7);
  for (const Point& p : pts) {
    Eigen::MatrixXd g = e->source.metric_at(p);
    CHECK(g(0, 0) == Catch::Approx((1 - p(2) * p(2)) / 4));
    CHECK(g(0, 1) == Catch::Approx(-p(2) * p(3) / 4).margin(1e-14));
    CHECK(g(0, 4) == Catch::Approx(p(2) / 4));
    CHECK(g(2, 2) == Catch::Approx(0.25));
    CHECK(g(4, 4) == Catch::Approx(-0.25));
    CHECK((g - g.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("ls-r5-r2 regression facts") {
  auto e = load_example("ls-r5-r2");
  REQUIRE(e->has_map);
  auto pts = e->sample_points(25, 42);
  antiinv::AnalysisInput in{&e->map, &e->structure, &e->frames};

  auto split = submersion::analyze_split(e->map, e->frames, pts);
  for (const auto& item : split.items) {
    INFO(item.id << " residual " << item.residual << " " << item.note);
    CHECK(item.pass);
  }
  // Fiber signature (2,1,0): the timelike xi plus two spacelike directions.
  CHECK(split.find("split-nondegenerate")->note.find("(2,1)") != std::string::npos);
  // Target is Riemannian: signature (2,0).
  CHECK(split.find("split-nondegenerate")->note.find("(2,0)") != std::string::npos);

  // Isometry witness: g(H1, H1) = 2 = gN(dF H1, dF H1).
  for (const Point& p : pts) {
    submersion::OneillContext ctx(e->source, e->frames, p);
    Eigen::VectorXd H1 = geometry::eval_field(e->frames.horizontal[0], p);
    CHECK(ctx.pair(H1, H1) == Catch::Approx(2.0));
    // T_U xi witness: T_{V1} xi = phi V1 = H1 (fibers not totally geodesic).
    Eigen::VectorXd TV1xi = ctx.oneill_T(e->frames.vertical[0], e->frames.vertical[2]);
    CHECK((TV1xi - H1).cwiseAbs().maxCoeff() <= 1e-9);
  }

  CHECK(antiinv::classify_xi(in, pts) == antiinv::XiPosition::vertical);
  auto audit = antiinv::xi_position_and_dimension_audit(in, pts);
  for (const auto& item : audit.items) {
    INFO(item.id << " " << item.note);
    CHECK(item.pass);
  }
  REQUIRE(audit.find("theorem-01-a") != nullptr);  // m = n = 2
  CHECK(audit.find("cor-1")->note == "span equality holds");
  CHECK(antiinv::check_anti_invariance(in, pts).passed());
}

TEST_CASE("lps-r5-r2 paracontact variant fails anti-invariance honestly") {
  auto e = load_example("lps-r5-r2");
  CHECK(e->structure.epsilon == 1);
  CHECK_FALSE(e->expected.at("anti-invariance"));
  CHECK_FALSE(e->notes.empty());
  auto pts = e->sample_points(10, 42);
  antiinv::AnalysisInput in{&e->map, &e->structure, &e->frames};
  auto rep = antiinv::check_anti_invariance(in, pts);
  CHECK_FALSE(rep.find("anti-invariance")->pass);
  CHECK(rep.find("anti-invariance")->residual > 0.5);
  // The structure-sign-independent audits still pass.
  CHECK(submersion::analyze_split(e->map, e->frames, pts).passed());
}

TEST_CASE("ls-r5-r3 regression facts on the slice") {
  auto e = load_example("ls-r5-r3");
  CHECK(e->slice_zero_coords == 2);
  auto pts = e->sample_points(25, 42);
  for (const Point& p : pts) {
    CHECK(p(0) == 0.0);
    CHECK(p(1) == 0.0);
  }
  antiinv::AnalysisInput in{&e->map, &e->structure, &e->frames};
  CHECK(submersion::analyze_split(e->map, e->frames, pts).passed());
  CHECK(antiinv::classify_xi(in, pts) == antiinv::XiPosition::horizontal);
  auto audit = antiinv::xi_position_and_dimension_audit(in, pts);
  REQUIRE(audit.find("theorem-7") != nullptr);
  CHECK(audit.find("theorem-7")->note.rfind("span equality holds", 0) == 0);
  CHECK(audit.find("theorem-01-c")->pass);  // m + 1 = 2 + 1 <= n = 3
  CHECK(antiinv::check_anti_invariance(in, pts).passed());
}

TEST_CASE("lps-r7-r5 regression facts on the slice") {
  auto e = load_example("lps-r7-r5");
  CHECK(e->source.dim == 7);
  CHECK(e->target.dim == 5);
  CHECK(e->slice_zero_coords == 3);
  auto pts = e->sample_points(25, 42);
  antiinv::AnalysisInput in{&e->map, &e->structure, &e->frames};

  auto split = submersion::analyze_split(e->map, e->frames, pts);
  for (const auto& item : split.items) {
    INFO(item.id << " residual " << item.residual << " " << item.note);
    CHECK(item.pass);
  }
  CHECK(antiinv::classify_xi(in, pts) == antiinv::XiPosition::horizontal);
  CHECK(antiinv::check_anti_invariance(in, pts).passed());

  // mu = span{H3, H4, H5} = span{E3, E6, xi}: rank-3, Gram residual against
  // the declared complement <= 1e-9, and phi(mu) is contained in mu.
  for (const Point& p : pts) {
    auto mu = antiinv::detail::mu_basis(in, p);
    REQUIRE(mu.size() == 3);
    Eigen::MatrixXd declared(7, 3);
    declared.col(0) = geometry::eval_field(e->frames.horizontal[2], p);
    declared.col(1) = geometry::eval_field(e->frames.horizontal[3], p);
    declared.col(2) = geometry::eval_field(e->frames.horizontal[4], p);
    Eigen::MatrixXd joint(7, 6);
    joint << declared, mu[0], mu[1], mu[2];
    CHECK(antiinv::detail::rank_of(joint, 1e-9) == 3);
    // Gram matrix of {H3, H4, H5} = {E3, E6, xi}: diag(1, 1, -1), residual
    // <= 1e-9.
    Eigen::MatrixXd g = e->source.metric_at(p);
    Eigen::MatrixXd gram = declared.transpose() * g * declared;
    Eigen::MatrixXd expect = Eigen::Vector3d(1, 1, -1).asDiagonal();
    CHECK((gram - expect).cwiseAbs().maxCoeff() <= 1e-9);
    // phi-invariance of mu.
    Eigen::MatrixXd phi = geometry::eval_tensor11(e->structure.phi, p);
    Eigen::MatrixXd phimu(7, 6);
    phimu << declared, phi * declared.col(0), phi * declared.col(1), phi * declared.col(2);
    CHECK(antiinv::detail::rank_of(phimu, 1e-9) == 3);
  }

  // Fibers are totally geodesic: T vanishes, in particular T_U xi = 0.
  for (const Point& p : pts) {
    submersion::OneillContext ctx(e->source, e->frames, p);
    for (const auto& U : e->frames.vertical) {
      for (const auto& W : e->frames.vertical)
        CHECK(ctx.oneill_T(U, W).cwiseAbs().maxCoeff() <= 1e-9);
      CHECK(ctx.oneill_T(U, e->frames.horizontal[4]).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }

  auto lem = antiinv::lemma_residual_suite(in, pts, 1e-8);
  for (const auto& item : lem.items) {
    INFO(item.id << " residual " << item.residual << " " << item.note);
    CHECK(item.pass);
  }
  REQUIRE(lem.find("eq-5.6") != nullptr);
  REQUIRE(lem.find("eq-5.7") != nullptr);
  REQUIRE(lem.find("eq-5.8") != nullptr);
}

TEST_CASE("product control entry") {
  auto e = load_example("product-r4-r2");
  CHECK_FALSE(e->has_structure);
  auto pts = e->sample_points(10, 42);
  CHECK(submersion::analyze_split(e->map, e->frames, pts).passed());
  antiinv::AnalysisInput in{&e->map, nullptr, &e->frames};
  auto dv = antiinv::decomposition_classify(in, pts);
  CHECK(dv.classification == "locally product (pointwise evidence)");
}
