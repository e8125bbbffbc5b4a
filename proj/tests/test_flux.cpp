#include <doctest.h>

#include <random>

#include "rhd/flux.hpp"
#include "rhd/sampling.hpp"

using namespace rhd;

namespace {
const Eos<double> ideal(5.0 / 3.0);

Primitive<double, 1> prim1(double rho, double v, double p) {
  return {rho, Vec<double, 1>(v), p};
}

Primitive<double, 2> prim2(double rho, double vx, double vy, double p) {
  return {rho, Vec<double, 2>(vx, vy), p};
}
}  // namespace

TEST_SUITE("flux") {

TEST_CASE("physical flux of a state at rest is pure pressure") {
  const auto u = prim_to_cons<double, 1>(prim1(1, 0, 1), ideal);
  const auto f = physical_flux<double, 1>(u, 0, ideal);
  CHECK(f[0] == doctest::Approx(0.0));
  CHECK(f[1] == doctest::Approx(1.0));
  CHECK(f[2] == doctest::Approx(0.0));
}

TEST_CASE("physical flux at v = 0.9") {
  const auto u = prim_to_cons<double, 1>(prim1(1, 0.9, 1), ideal);
  const auto f = physical_flux<double, 1>(u, 0, ideal);
  CHECK(f[0] == doctest::Approx(2.0647416).epsilon(1e-6));
  CHECK(f[1] == doctest::Approx(15.9210526).epsilon(1e-6));
  CHECK(f[2] == doctest::Approx(16.5789474).epsilon(1e-6));
}

TEST_CASE("2D flux with transverse velocity only") {
  const auto u = prim_to_cons<double, 2>(prim2(1, 0, 0.5, 1), ideal);
  const auto f = physical_flux<double, 2>(u, 0, ideal);
  CHECK(f[0] == doctest::Approx(0.0));
  CHECK(f[1] == doctest::Approx(1.0));  // pressure in the e1 slot
  CHECK(f[2] == doctest::Approx(0.0));
  CHECK(f[3] == doctest::Approx(0.0));  // m_1 = 0
}

TEST_CASE("LF flux consistency and conservation") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 2000; ++i) {
    const auto ua = random_admissible<2>(rng, ideal);
    const auto ub = random_admissible<2>(rng, ideal);
    const UnitNormal<double, 2> xi(random_direction<2>(rng));
    const UnitNormal<double, 2> back(Vec<double, 2>(-xi.xi));
    const double alpha = uniform(rng, 1.0, 2.0);
    const double scale = ua.norm() + ub.norm() + 1.0;
    const Cons<double, 2> c =
        lf_flux<double, 2>(ua, ua, xi, alpha, ideal) -
        normal_flux<double, 2>(ua, xi.xi, ideal);
    CHECK(c.norm() <= 1e-13 * scale);
    const Cons<double, 2> a =
        lf_flux<double, 2>(ua, ub, xi, alpha, ideal) +
        lf_flux<double, 2>(ub, ua, back, alpha, ideal);
    CHECK(a.norm() <= 1e-13 * scale);
  }
}

TEST_CASE("1D LF flux is the normal flux at xi = e1") {
  std::mt19937_64 rng(43);
  const auto ua = random_admissible<1>(rng, ideal);
  const auto ub = random_admissible<1>(rng, ideal);
  const UnitNormal<double, 1> e1(Vec<double, 1>(1.0));
  const Cons<double, 1> f = lf_flux<double, 1>(ua, ub, e1, 1.0, ideal);
  const Cons<double, 1> expected =
      0.5 * (physical_flux<double, 1>(ua, 0, ideal) +
             physical_flux<double, 1>(ub, 0, ideal) - (ub - ua));
  CHECK((f - expected).norm() <= 1e-14 * (1.0 + expected.norm()));
}

TEST_CASE("unit normal validation") {
  CHECK_THROWS_AS((UnitNormal<double, 2>(Vec<double, 2>(1.0, 1.0))),
                  DomainError);
}

TEST_CASE("rotation to the normal frame") {
  const auto u = make_cons<double, 2>(2.0, Vec<double, 2>(3.0, 4.0), 9.0);
  SUBCASE("identity for xi = e1") {
    const UnitNormal<double, 2> e1(Vec<double, 2>(1.0, 0.0));
    CHECK((rotate_to_normal<double, 2>(u, e1) - u).norm() == 0.0);
  }
  SUBCASE("quarter turn for xi = e2") {
    const UnitNormal<double, 2> e2(Vec<double, 2>(0.0, 1.0));
    const auto r = rotate_to_normal<double, 2>(u, e2);
    CHECK(r[0] == doctest::Approx(2.0));
    CHECK(r[1] == doctest::Approx(4.0));
    CHECK(r[2] == doctest::Approx(-3.0));
    CHECK(r[3] == doctest::Approx(9.0));
  }
  SUBCASE("round trip restores the state") {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 500; ++i) {
      const UnitNormal<double, 2> xi(random_direction<2>(rng));
      const auto r =
          rotate_from_normal<double, 2>(rotate_to_normal<double, 2>(u, xi), xi);
      CHECK((r - u).norm() <= 1e-14 * u.norm());
    }
  }
}

TEST_CASE("rotational invariance identity in 2D and 3D") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 5000; ++i) {
    const auto u = random_admissible<2>(rng, ideal);
    const UnitNormal<double, 2> xi(random_direction<2>(rng));
    const Cons<double, 2> lhs = normal_flux<double, 2>(u, xi.xi, ideal);
    const Cons<double, 2> rhs = rotate_from_normal<double, 2>(
        physical_flux<double, 2>(rotate_to_normal<double, 2>(u, xi), 0, ideal),
        xi);
    CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
  }
  for (int i = 0; i < 1000; ++i) {
    const auto u = random_admissible<3>(rng, ideal);
    const UnitNormal<double, 3> xi(random_direction<3>(rng));
    const Cons<double, 3> lhs = normal_flux<double, 3>(u, xi.xi, ideal);
    const Cons<double, 3> rhs = rotate_from_normal<double, 3>(
        physical_flux<double, 3>(rotate_to_normal<double, 3>(u, xi), 0, ideal),
        xi);
    CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
  }
}

TEST_CASE("splitting average fixes equal arguments") {
  std::mt19937_64 rng(59);
  const auto u = random_admissible<1>(rng, ideal);
  const auto avg = lf_split_average<double, 1>(u, u, 0, 1.0, ideal);
  CHECK((avg - u).norm() <= 1e-14 * u.norm());
}

TEST_CASE("splitting average keeps the region, including alpha = 1 at v = 0.99") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 2000; ++i) {
    const auto ua = random_admissible<1>(rng, ideal);
    const auto ub = random_admissible<1>(rng, ideal);
    const double floor = std::min(specific_entropy<double, 1>(ua, ideal),
                                  specific_entropy<double, 1>(ub, ideal));
    const auto avg =
        lf_split_average<double, 1>(ua, ub, 0, uniform(rng, 1.0, 3.0), ideal);
    CHECK(InvariantRegion<double>{floor, ideal}.contains<1>(
        avg, 1e-11 * std::max(1.0, std::abs(floor))));
  }
  // Ultra-relativistic pair at the tightest admissible viscosity.
  const auto ua = prim_to_cons<double, 1>(prim1(1.0, 0.99, 1e-2), ideal);
  const auto ub = prim_to_cons<double, 1>(prim1(2.0, -0.99, 5.0), ideal);
  const double floor = std::min(specific_entropy<double, 1>(ua, ideal),
                                specific_entropy<double, 1>(ub, ideal));
  const auto avg = lf_split_average<double, 1>(ua, ub, 0, 1.0, ideal);
  CHECK(InvariantRegion<double>{floor, ideal}.contains<1>(avg));
}

TEST_CASE("fan average with a single +/- pair reduces to the 1D splitting") {
  std::mt19937_64 rng(67);
  const auto u1 = random_admissible<2>(rng, ideal);
  const auto u2 = random_admissible<2>(rng, ideal);
  std::vector<FanFace<double, 2>> faces(2);
  faces[0] = {1.0, Vec<double, 2>(1.0, 0.0), {{1.0, u1}}};
  faces[1] = {1.0, Vec<double, 2>(-1.0, 0.0), {{1.0, u2}}};
  const auto fan = fan_split_average<double, 2>(faces, 1.5, ideal);
  const auto direct = lf_split_average<double, 2>(u1, u2, 0, 1.5, ideal);
  CHECK((fan - direct).norm() <= 1e-13 * (1.0 + direct.norm()));
}

TEST_CASE("rectangle fan reproduces the Cartesian splitting combination") {
  std::mt19937_64 rng(71);
  const double dx = 0.4, dy = 1.7;
  const int q = 2;
  std::vector<double> w = {0.3, 0.7};
  std::array<std::array<Cons<double, 2>, 2>, 4> states;
  for (auto& pair : states) {
    for (auto& u : pair) u = random_admissible<2>(rng, ideal);
  }
  // Fan over the four edges of a dx-by-dy rectangle.
  std::vector<FanFace<double, 2>> faces(4);
  faces[0].s = dy; faces[0].xi = Vec<double, 2>(1.0, 0.0);
  faces[1].s = dy; faces[1].xi = Vec<double, 2>(-1.0, 0.0);
  faces[2].s = dx; faces[2].xi = Vec<double, 2>(0.0, 1.0);
  faces[3].s = dx; faces[3].xi = Vec<double, 2>(0.0, -1.0);
  for (int e = 0; e < 4; ++e) {
    for (int i = 0; i < q; ++i) faces[e].states.emplace_back(w[i], states[e][i]);
  }
  const auto fan = fan_split_average<double, 2>(faces, 1.0, ideal);

  // Same combination written with the two-state splitting averages.
  Cons<double, 2> acc = Cons<double, 2>::Zero();
  for (int i = 0; i < q; ++i) {
    acc += w[i] / dx *
           lf_split_average<double, 2>(states[0][i], states[1][i], 0, 1.0,
                                       ideal);
    acc += w[i] / dy *
           lf_split_average<double, 2>(states[2][i], states[3][i], 1, 1.0,
                                       ideal);
  }
  const Cons<double, 2> combo = acc / (1.0 / dx + 1.0 / dy);
  CHECK((fan - combo).norm() <= 1e-13 * (1.0 + combo.norm()));
}

TEST_CASE("fan closure is enforced") {
  std::mt19937_64 rng(73);
  const auto u = random_admissible<2>(rng, ideal);
  std::vector<FanFace<double, 2>> faces(2);
  faces[0] = {1.0, Vec<double, 2>(1.0, 0.0), {{1.0, u}}};
  faces[1] = {0.5, Vec<double, 2>(-1.0, 0.0), {{1.0, u}}};
  CHECK_THROWS_AS((fan_split_average<double, 2>(faces, 1.0, ideal)), FanError);
}

TEST_CASE("constructive inequality on stressed samples") {
  std::mt19937_64 rng(79);
  for (int i = 0; i < 5000; ++i) {
    const auto prim = random_primitive<2>(rng);
    const auto u = prim_to_cons<double, 2>(prim, ideal);
    const double sigma =
        specific_entropy<double, 2>(prim, ideal) - uniform(rng, 0.0, 2.0);
    const Vec<double, 2> dir =
        uniform(rng, 0.0, 0.999) * random_direction<2>(rng);
    const HalfspaceProbe<double, 2> probe(dir, log_uniform(rng, 1e-3, 1e2));
    const double theta = uniform(rng, -1.0, 1.0);
    const int axis = std::uniform_int_distribution<int>(0, 1)(rng);
    const Cons<double, 2> shifted =
        u + theta * physical_flux<double, 2>(u, axis, ideal);
    const double gap = halfspace_gap<double, 2>(shifted, probe, sigma, ideal) +
                       theta * std::exp(sigma) * probe.v[axis] *
                           std::pow(probe.rho, ideal.gamma());
    const double scale =
        halfspace_gap_scale<double, 2>(shifted, probe, sigma, ideal) +
        std::exp(sigma) * std::pow(probe.rho, ideal.gamma());
    CHECK(gap >= -1e-10 * scale);
  }
}

}  // TEST_SUITE
