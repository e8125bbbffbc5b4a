#include <doctest.h>

#include <random>

#include "rhd/sampling.hpp"
#include "rhd/scenarios.hpp"

using namespace rhd;

TEST_SUITE("scenarios") {

TEST_CASE("catalogue and dimensions") {
  CHECK(builtin_scenario_dim("smooth1d") == 1);
  CHECK(builtin_scenario_dim("riemann1d_1") == 1);
  CHECK(builtin_scenario_dim("riemann1d_2") == 1);
  CHECK(builtin_scenario_dim("smooth2d") == 2);
  CHECK(builtin_scenario_dim("rp2d_1") == 2);
  CHECK(builtin_scenario_dim("shock_bubble") == 2);
  CHECK(builtin_scenario_dim("jet_cold") == 2);
  CHECK_THROWS_AS(builtin_scenario_dim("nope"), UnknownScenario);
  CHECK_THROWS_AS(builtin_scenario_1d("smooth2d"), UnknownScenario);
}

TEST_CASE("smooth wave setup") {
  const auto s = builtin_scenario_1d("smooth1d");
  CHECK(s.gamma == doctest::Approx(5.0 / 3.0));
  CHECK(s.t_final == doctest::Approx(0.2));
  CHECK(s.boundary[0][0].tag == Boundary::periodic);
  const auto v = s.initial(Vec<double, 1>(0.25));
  CHECK(v.rho == doctest::Approx(1.99999).epsilon(1e-12));
  CHECK(v.v[0] == doctest::Approx(0.9));
  CHECK(v.p == doctest::Approx(1.0));
  CHECK(s.has_exact());
  const auto e = s.exact(Vec<double, 1>(0.25 + 0.9 * 0.2), 0.2);
  CHECK(e.rho == doctest::Approx(1.99999).epsilon(1e-12));
  CHECK(s.entropy_floor ==
        doctest::Approx(-(5.0 / 3.0) * std::log(1.99999)).epsilon(1e-13));
}

TEST_CASE("Riemann problems carry the printed states") {
  const auto rp1 = builtin_scenario_1d("riemann1d_1");
  CHECK(rp1.initial(Vec<double, 1>(0.2)).rho == doctest::Approx(0.8));
  CHECK(rp1.initial(Vec<double, 1>(0.2)).p == doctest::Approx(8.0));
  CHECK(rp1.initial(Vec<double, 1>(0.7)).p == doctest::Approx(1.0));
  CHECK(rp1.t_final == doctest::Approx(0.4));
  // Left state entropy log 8 - (5/3) log 0.8 > 0, so the floor is the
  // right state's 0.
  CHECK(rp1.entropy_floor == doctest::Approx(0.0));

  const auto rp2 = builtin_scenario_1d("riemann1d_2");
  CHECK(rp2.initial(Vec<double, 1>(0.2)).p == doctest::Approx(1e4));
  CHECK(rp2.initial(Vec<double, 1>(0.7)).p == doctest::Approx(1e-8));
  CHECK(rp2.t_final == doctest::Approx(0.45));
  CHECK(rp2.entropy_floor == doctest::Approx(std::log(1e-8)).epsilon(1e-12));
}

TEST_CASE("2D Riemann quadrants") {
  const auto s = builtin_scenario_2d("rp2d_1");
  const auto q2 = s.initial(Vec<double, 2>(-0.5, 0.5));
  CHECK(q2.rho == doctest::Approx(0.00414329639576));
  CHECK(q2.v[0] == doctest::Approx(0.9946418833556542));
  CHECK(q2.v[1] == doctest::Approx(0.0));
  const auto q4 = s.initial(Vec<double, 2>(0.5, -0.5));
  CHECK(q4.v[1] == doctest::Approx(0.9946418833556542));
  CHECK(s.t_final == doctest::Approx(0.8));

  const auto s2 = builtin_scenario_2d("rp2d_2");
  CHECK(s2.initial(Vec<double, 2>(0.5, 0.5)).rho ==
        doctest::Approx(0.035145216124503));
  CHECK(s2.initial(Vec<double, 2>(0.5, 0.5)).p ==
        doctest::Approx(0.162931056509027));
  CHECK(s2.initial(Vec<double, 2>(-0.5, -0.5)).rho == doctest::Approx(0.5));
}

TEST_CASE("shock-bubble setup") {
  const auto s = builtin_scenario_2d("shock_bubble");
  CHECK(s.lo[0] == doctest::Approx(0.0));
  CHECK(s.hi[0] == doctest::Approx(325.0));
  CHECK(s.hi[1] == doctest::Approx(45.0));
  CHECK(s.initial(Vec<double, 2>(300.0, 0.0)).rho ==
        doctest::Approx(1.865225080631180));
  CHECK(s.initial(Vec<double, 2>(300.0, 0.0)).v[0] ==
        doctest::Approx(-0.196781107378299));
  CHECK(s.initial(Vec<double, 2>(215.0, 0.0)).rho == doctest::Approx(0.1358));
  CHECK(s.initial(Vec<double, 2>(100.0, 0.0)).rho == doctest::Approx(1.0));
  CHECK(s.boundary[1][0].tag == Boundary::reflective);
  CHECK(s.boundary[0][1].tag == Boundary::inflow);
  CHECK(s.boundary[0][0].tag == Boundary::outflow);
}

TEST_CASE("jet states derive from the acoustic Mach number") {
  // Cold beam: M = 50 at v = 0.99 puts c_s at 0.0198.
  const double p_cold = pressure_from_mach(0.1, 0.99, 50.0, 5.0 / 3.0);
  const Eos<double> ideal(5.0 / 3.0);
  Primitive<double, 2> beam{0.1, Vec<double, 2>(0.0, 0.99), p_cold};
  CHECK(sound_speed<double, 2>(beam, ideal) ==
        doctest::Approx(0.99 / 50.0).epsilon(1e-12));
  // Relativistic Mach number M W / W_s comes out near the reported 354.37.
  const double w = 1.0 / std::sqrt(1.0 - 0.99 * 0.99);
  const double cs = 0.99 / 50.0;
  const double ws = 1.0 / std::sqrt(1.0 - cs * cs);
  CHECK(50.0 * w / ws == doctest::Approx(354.37).epsilon(1e-3));

  const auto cold = builtin_scenario_2d("jet_cold");
  CHECK(cold.initial(Vec<double, 2>(3.0, 5.0)).rho == doctest::Approx(1.0));
  CHECK(cold.initial(Vec<double, 2>(3.0, 5.0)).p ==
        doctest::Approx(p_cold).epsilon(1e-12));

  const auto hot = builtin_scenario_2d("jet_hot");
  CHECK(hot.gamma == doctest::Approx(4.0 / 3.0));
  const double p_hot = pressure_from_mach(0.01, 0.99, 1.72, 4.0 / 3.0);
  CHECK(hot.initial(Vec<double, 2>(1.0, 10.0)).p ==
        doctest::Approx(p_hot).epsilon(1e-12));
  // The hot beam Mach number sits just above the attainable minimum.
  CHECK_THROWS_AS(pressure_from_mach(0.01, 0.99, 1.71, 4.0 / 3.0),
                  DomainError);
}

TEST_CASE("every builtin initial condition is pointwise admissible") {
  std::mt19937_64 rng(101);
  for (const auto& name : builtin_scenario_names()) {
    const int dim = builtin_scenario_dim(name);
    if (dim == 1) {
      const auto s = builtin_scenario_1d(name);
      const Eos<double> eos(s.gamma);
      for (int i = 0; i < 2000; ++i) {
        Vec<double, 1> x(uniform(rng, s.lo[0], s.hi[0]));
        CHECK(is_admissible<double, 1>(prim_to_cons<double, 1>(s.initial(x), eos)));
      }
    } else {
      const auto s = builtin_scenario_2d(name);
      const Eos<double> eos(s.gamma);
      for (int i = 0; i < 2000; ++i) {
        Vec<double, 2> x(uniform(rng, s.lo[0], s.hi[0]),
                         uniform(rng, s.lo[1], s.hi[1]));
        CHECK(is_admissible<double, 2>(prim_to_cons<double, 2>(s.initial(x), eos)));
      }
    }
  }
}

TEST_CASE("sampled entropy floor agrees with the exact floors") {
  const Eos<double> ideal(5.0 / 3.0);
  const auto smooth = builtin_scenario_1d("smooth1d");
  CHECK(entropy_floor<1>(smooth.initial, 100000, ideal, smooth.lo,
                         smooth.hi) ==
        doctest::Approx(smooth.entropy_floor).epsilon(1e-9));
  // Piecewise-constant data: the sampled floor is exact and refinement
  // invariant.
  const auto rp = builtin_scenario_1d("riemann1d_1");
  const double coarse =
      entropy_floor<1>(rp.initial, 128, ideal, rp.lo, rp.hi);
  const double fine =
      entropy_floor<1>(rp.initial, 4096, ideal, rp.lo, rp.hi);
  CHECK(coarse == fine);
  CHECK(coarse == doctest::Approx(rp.entropy_floor).epsilon(1e-13));

  const auto smooth2 = builtin_scenario_2d("smooth2d");
  CHECK(entropy_floor<2>(smooth2.initial, 1000, ideal, smooth2.lo,
                         smooth2.hi) ==
        doctest::Approx(smooth2.entropy_floor).epsilon(1e-7));
}

TEST_CASE("error norms vanish for an exactly represented solution") {
  const Eos<double> ideal(5.0 / 3.0);
  Scenario<1> s;
  s.lo = {0.0};
  s.hi = {1.0};
  s.gamma = ideal.gamma();
  Primitive<double, 1> state{1.3, Vec<double, 1>(0.4), 0.7};
  s.initial = [state](const Vec<double, 1>&) { return state; };
  const auto mesh = s.make_mesh({8});
  const auto sol = project_initial<1>(s.initial, mesh, 1, ideal);
  const auto exact = [state](const Vec<double, 1>&, double) { return state; };
  const Norms norms = density_error_norms<1>(sol, exact, ideal, 3);
  CHECK(norms.l1 <= 1e-14);
  CHECK(norms.l2 <= 1e-14);
}

}  // TEST_SUITE
