#include <catch_amalgamated.hpp>

#include <subver/antiinv.hpp>

#include "test_helpers.hpp"

#include <random>

using namespace subver::antiinv;
using namespace testutil;

namespace {

void check_all_pass(const StructureReport& rep) {
  for (const auto& item : rep.items) {
    INFO(item.id << " residual " << item.residual << " [" << item.note << "]");
    CHECK(item.pass);
  }
}

}  // namespace

TEST_CASE("vertical-xi example r5 -> r2: full analysis") {
  auto s = r5_to_r2();
  finish(s);
  auto S = model_r5_structure(s.source, -1);
  AnalysisInput in{&s.map, &S, &s.frames};
  auto pts = sample_points(5, 6, 101);

  SECTION("anti-invariance and span equality") {
    auto rep = check_anti_invariance(in, pts);
    check_all_pass(rep);
  }

  SECTION("xi position and dimension audits") {
    CHECK(classify_xi(in, pts) == XiPosition::vertical);
    auto rep = xi_position_and_dimension_audit(in, pts);
    check_all_pass(rep);
    CHECK(rep.find("xi-position")->note == "xi is vertical");
    CHECK(rep.find("theorem-01-a") != nullptr);  // m = n = 2
    CHECK(rep.find("cor-1")->note == "span equality holds");
  }

  SECTION("B/C decomposition with trivial mu") {
    auto rep = bc_mu_decompose(in, pts);
    check_all_pass(rep);
    // mu is trivial: phi(ker) = (ker)^perp, so CX = 0 for horizontal X.
    for (const Point& p : pts) {
      subver::submersion::OneillContext ctx(s.source, s.frames, p);
      Eigen::MatrixXd F = subver::geometry::eval_tensor11(S.phi, p);
      for (const auto& Xf : s.frames.horizontal) {
        Eigen::VectorXd phiX = F * subver::geometry::eval_field(Xf, p);
        CHECK((phiX - ctx.vertical(phiX)).cwiseAbs().maxCoeff() <= 1e-10);
      }
    }
  }

  SECTION("vertical-xi lemma suite") {
    auto rep = lemma_residual_suite(in, pts, 1e-8);
    check_all_pass(rep);
    REQUIRE(rep.find("eq-4.6") != nullptr);
    REQUIRE(rep.find("eq-31") != nullptr);
    // Fibers-not-umbilical witness: T_U xi = -eps phi U with |phi U| bounded
    // away from zero.
    const auto* w = rep.find("t-u-xi");
    REQUIRE(w != nullptr);
    CHECK(w->pass);
    CHECK(w->note.find("min nonzero |phi U|") != std::string::npos);
  }

  SECTION("integrability: direct and criterion agree (both hold)") {
    auto rep = integrability_check(in, pts, 1e-8);
    check_all_pass(rep);
    CHECK(rep.find("integrable-4-iii-direct")->note.rfind("holds", 0) == 0);
    CHECK(rep.find("integrable-4-iii-criterion")->note.rfind("holds", 0) == 0);
  }

  SECTION("foliations: horizontal holds, vertical fails, verdicts agree") {
    auto rep = foliation_checks(in, pts, 1e-8);
    check_all_pass(rep);
    CHECK(rep.find("h-foliation-4-ii-direct")->note.rfind("holds", 0) == 0);
    CHECK(rep.find("v-foliation-phi-ker-direct")->note.rfind("fails", 0) == 0);
    CHECK(rep.find("v-foliation-phi-ker-criterion")->note.rfind("fails", 0) == 0);
    CHECK(rep.find("v-foliation-phi-ker-agree")->pass);
  }

  SECTION("harmonicity: tr(phi T_V) = -n eta(V) agrees with minimal fibers") {
    auto rep = tg_map_and_harmonic_criteria(in, pts, 1e-8);
    check_all_pass(rep);
    CHECK(rep.find("t-xi-xi")->pass);
    CHECK(rep.find("harmonic-4-direct")->note.rfind("holds", 0) == 0);
    CHECK(rep.find("harmonic-4-criterion")->note.rfind("holds", 0) == 0);
    // The raw trace value: tr(phi T_xi) = -n eta(xi) = -2.
    Eigen::VectorXd xiv = subver::geometry::eval_field(S.xi, pts[0]);
    CHECK(trace_phi_T(in, pts[0], xiv) == Catch::Approx(-2.0));
  }

  SECTION("decomposition: classification none, stable across points") {
    auto dv = decomposition_classify(in, pts, 1e-8);
    CHECK(dv.classification == "none");
    CHECK(dv.horizontal_integrable);
    CHECK(dv.horizontal_totally_geodesic);
    CHECK_FALSE(dv.vertical_totally_geodesic);
    CHECK_FALSE(dv.twisted_criteria);
    for (const Point& p : pts) {
      auto single = decomposition_classify(in, {p}, 1e-8);
      CHECK(single.classification == dv.classification);
    }
  }
}

TEST_CASE("horizontal-xi example r5 -> r3 on the x = 0 slice") {
  auto s = r5_to_r3();
  finish(s);
  auto S = model_r5_structure(s.source, -1);
  AnalysisInput in{&s.map, &S, &s.frames};
  auto pts = slice_points(5, 6, 103);

  SECTION("anti-invariance, audits, span equality with xi") {
    check_all_pass(check_anti_invariance(in, pts));
    CHECK(classify_xi(in, pts) == XiPosition::horizontal);
    auto rep = xi_position_and_dimension_audit(in, pts);
    check_all_pass(rep);
    CHECK(rep.find("theorem-01-c") != nullptr);  // m + 1 <= n
    CHECK(rep.find("theorem-7")->note.rfind("span equality holds", 0) == 0);
  }

  SECTION("B/C decomposition with mu = span{xi}") {
    check_all_pass(bc_mu_decompose(in, pts));
    for (const Point& p : pts) {
      auto mu = subver::antiinv::detail::mu_basis(in, p);
      REQUIRE(mu.size() == 1);
      // mu is spanned by xi.
      Eigen::VectorXd xiv = subver::geometry::eval_field(S.xi, p);
      Eigen::MatrixXd both(5, 2);
      both << mu[0], xiv;
      CHECK(subver::antiinv::detail::rank_of(both, 1e-9) == 1);
    }
  }

  SECTION("horizontal-xi lemma suite") {
    auto rep = lemma_residual_suite(in, pts, 1e-8);
    check_all_pass(rep);
    REQUIRE(rep.find("eq-5.6") != nullptr);
    REQUIRE(rep.find("eq-5.7") != nullptr);  // T_U xi = 0: fibers TG
    REQUIRE(rep.find("eq-5.8") != nullptr);
  }

  SECTION("integrability agreement (both hold)") {
    auto rep = integrability_check(in, pts, 1e-8);
    check_all_pass(rep);
    CHECK(rep.find("integrable-th-3.4-iii-agree")->pass);
  }

  SECTION("foliations: horizontal fails on both sides, vertical holds on both") {
    auto rep = foliation_checks(in, pts, 1e-8);
    check_all_pass(rep);
    CHECK(rep.find("h-foliation-th-3.6-ii-direct")->note.rfind("fails", 0) == 0);
    CHECK(rep.find("h-foliation-th-3.6-ii-criterion")->note.rfind("fails", 0) == 0);
    CHECK(rep.find("v-foliation-th-3.8-direct")->note.rfind("holds", 0) == 0);
    CHECK(rep.find("v-foliation-th-3.8-criterion")->note.rfind("holds", 0) == 0);
  }

  SECTION("TG-map and harmonicity: agreements hold; map is not TG") {
    auto rep = tg_map_and_harmonic_criteria(in, pts, 1e-8);
    check_all_pass(rep);
    CHECK(rep.find("tg-map-th-3.10-direct")->note.rfind("fails", 0) == 0);
    CHECK(rep.find("tg-map-th-3.10-criterion")->note.rfind("fails", 0) == 0);
    CHECK(rep.find("harmonic-th-3.11-direct")->note.rfind("holds", 0) == 0);
    CHECK(rep.find("harmonic-th-3.11-criterion")->note.rfind("holds", 0) == 0);
  }
}

TEST_CASE("anti-invariance verdict is basis independent") {
  auto s = r5_to_r2();
  finish(s);
  auto S = model_r5_structure(s.source, -1);
  auto pts = sample_points(5, 3, 107);
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::Matrix3d M;
    do {
      for (int i = 0; i < 9; ++i) M(i / 3, i % 3) = dist(rng);
    } while (std::abs(M.determinant()) < 0.05);
    DeclaredFrames remixed = s.frames;
    for (int i = 0; i < 3; ++i) {
      remixed.vertical[static_cast<std::size_t>(i)] =
          lincomb(M(i, 0), s.frames.vertical[0], M(i, 1), s.frames.vertical[1]);
      remixed.vertical[static_cast<std::size_t>(i)] =
          lincomb(1, remixed.vertical[static_cast<std::size_t>(i)], M(i, 2),
                  s.frames.vertical[2]);
    }
    AnalysisInput in{&s.map, &S, &remixed};
    auto rep = check_anti_invariance(in, pts);
    CHECK(rep.find("anti-invariance")->pass);
    CHECK(classify_xi(in, pts) == XiPosition::vertical);
  }
}

TEST_CASE("product control: no structure, locally product classification") {
  auto s = product_r4_r2();
  finish(s);
  AnalysisInput in{&s.map, nullptr, &s.frames};
  auto pts = sample_points(4, 5, 109);

  auto anti = check_anti_invariance(in, pts);
  CHECK(anti.passed());
  CHECK(anti.find("anti-invariance")->note.rfind("skipped", 0) == 0);
  CHECK(classify_xi(in, pts) == XiPosition::none);

  auto integ = integrability_check(in, pts);
  CHECK(integ.find("h-integrable")->pass);
  auto fol = foliation_checks(in, pts);
  CHECK(fol.find("h-foliation")->pass);
  CHECK(fol.find("v-foliation")->pass);

  auto dv = decomposition_classify(in, pts);
  CHECK(dv.classification == "locally product (pointwise evidence)");
  CHECK(dv.horizontal_integrable);
  CHECK(dv.horizontal_totally_geodesic);
  CHECK(dv.vertical_totally_geodesic);
}

TEST_CASE("paracontact structure on the r5 -> r2 map is not anti-invariant") {
  // With eps = +1 the corrected phi maps the vertical space to itself, so the
  // anti-invariance test must fail; the audits that are structure-sign
  // independent still pass.
  auto s = r5_to_r2();
  finish(s);
  auto S = model_r5_structure(s.source, +1);
  AnalysisInput in{&s.map, &S, &s.frames};
  auto pts = sample_points(5, 4, 113);

  auto rep = check_anti_invariance(in, pts);
  CHECK_FALSE(rep.find("anti-invariance")->pass);
  CHECK(rep.find("anti-invariance")->residual > 0.5);
  CHECK(classify_xi(in, pts) == XiPosition::vertical);
}
