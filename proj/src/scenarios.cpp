#include "rhd/scenarios.hpp"

#include <algorithm>
#include <numbers>

namespace rhd {

namespace {

constexpr double kPi = std::numbers::pi;

double min_entropy_over(const std::vector<std::array<double, 2>>& rho_p,
                        double gamma) {
  double floor = std::numeric_limits<double>::infinity();
  for (const auto& [rho, p] : rho_p) {
    floor = std::min(floor, std::log(p) - gamma * std::log(rho));
  }
  return floor;
}

double pick_gamma(double requested, double fallback) {
  if (requested <= 0) return fallback;
  return requested;
}

Scenario<1> smooth_wave_1d(double gamma) {
  Scenario<1> s;
  s.name = "smooth1d";
  s.lo = {0.0};
  s.hi = {1.0};
  s.gamma = gamma;
  s.t_final = 0.2;
  for (auto& side : s.boundary[0]) side.tag = Boundary::periodic;
  const auto profile = [](double x) { return 1.0 + 0.99999 * std::sin(2.0 * kPi * x); };
  s.initial = [profile](const Vec<double, 1>& x) {
    Primitive<double, 1> v;
    v.rho = profile(x[0]);
    v.v[0] = 0.9;
    v.p = 1.0;
    return v;
  };
  s.exact = [profile](const Vec<double, 1>& x, double t) {
    Primitive<double, 1> v;
    v.rho = profile(x[0] - 0.9 * t);
    v.v[0] = 0.9;
    v.p = 1.0;
    return v;
  };
  // p = 1 throughout, so the floor sits at the density maximum.
  s.entropy_floor = -gamma * std::log(1.99999);
  return s;
}

Scenario<1> riemann_1d(const std::string& name, double gamma,
                       std::array<double, 3> left, std::array<double, 3> right,
                       double t_final) {
  Scenario<1> s;
  s.name = name;
  s.lo = {0.0};
  s.hi = {1.0};
  s.gamma = gamma;
  s.t_final = t_final;
  for (auto& side : s.boundary[0]) side.tag = Boundary::outflow;
  s.initial = [left, right](const Vec<double, 1>& x) {
    const auto& st = x[0] < 0.5 ? left : right;
    Primitive<double, 1> v;
    v.rho = st[0];
    v.v[0] = st[1];
    v.p = st[2];
    return v;
  };
  s.entropy_floor =
      min_entropy_over({{left[0], left[2]}, {right[0], right[2]}}, gamma);
  return s;
}

Scenario<2> smooth_wave_2d(double gamma) {
  Scenario<2> s;
  s.name = "smooth2d";
  s.lo = {0.0, 0.0};
  s.hi = {1.0, 1.0};
  s.gamma = gamma;
  s.t_final = 0.2;
  for (int a = 0; a < 2; ++a) {
    for (auto& side : s.boundary[a]) side.tag = Boundary::periodic;
  }
  const double vc = 0.99 / std::sqrt(2.0);
  const auto profile = [](double u) { return 1.0 + 0.99999 * std::sin(2.0 * kPi * u); };
  s.initial = [profile, vc](const Vec<double, 2>& x) {
    Primitive<double, 2> v;
    v.rho = profile(x[0] + x[1]);
    v.v = Vec<double, 2>(vc, vc);
    v.p = 1e-2;
    return v;
  };
  s.exact = [profile, vc](const Vec<double, 2>& x, double t) {
    Primitive<double, 2> v;
    v.rho = profile(x[0] + x[1] - 0.99 * std::sqrt(2.0) * t);
    v.v = Vec<double, 2>(vc, vc);
    v.p = 1e-2;
    return v;
  };
  s.entropy_floor = std::log(1e-2) - gamma * std::log(1.99999);
  return s;
}

Scenario<2> riemann_2d(const std::string& name, double gamma,
                       std::array<std::array<double, 4>, 4> quadrants,
                       double t_final) {
  // quadrants[0]: x>0, y>0; [1]: x<0, y>0; [2]: x<0, y<0; [3]: x>0, y<0.
  Scenario<2> s;
  s.name = name;
  s.lo = {-1.0, -1.0};
  s.hi = {1.0, 1.0};
  s.gamma = gamma;
  s.t_final = t_final;
  for (int a = 0; a < 2; ++a) {
    for (auto& side : s.boundary[a]) side.tag = Boundary::outflow;
  }
  s.initial = [quadrants](const Vec<double, 2>& x) {
    int q;
    if (x[0] > 0) {
      q = x[1] > 0 ? 0 : 3;
    } else {
      q = x[1] > 0 ? 1 : 2;
    }
    const auto& st = quadrants[q];
    Primitive<double, 2> v;
    v.rho = st[0];
    v.v = Vec<double, 2>(st[1], st[2]);
    v.p = st[3];
    return v;
  };
  std::vector<std::array<double, 2>> rho_p;
  for (const auto& st : quadrants) rho_p.push_back({st[0], st[3]});
  s.entropy_floor = min_entropy_over(rho_p, gamma);
  return s;
}

Scenario<2> shock_bubble(double gamma) {
  Scenario<2> s;
  s.name = "shock_bubble";
  s.lo = {0.0, -45.0};
  s.hi = {325.0, 45.0};
  s.gamma = gamma;
  s.t_final = 450.0;
  s.boundary[0][0].tag = Boundary::outflow;  // left
  s.boundary[1][0].tag = Boundary::reflective;
  s.boundary[1][1].tag = Boundary::reflective;

  const std::array<double, 4> upstream = {1.0, 0.0, 0.0, 0.05};
  const std::array<double, 4> postshock = {1.865225080631180,
                                           -0.196781107378299, 0.0, 0.15};
  const std::array<double, 4> bubble = {0.1358, 0.0, 0.0, 0.05};
  s.initial = [=](const Vec<double, 2>& x) {
    const std::array<double, 4>* st = &upstream;
    if (x[0] > 265.0) {
      st = &postshock;
    } else if (std::hypot(x[0] - 215.0, x[1]) <= 25.0) {
      st = &bubble;
    }
    Primitive<double, 2> v;
    v.rho = (*st)[0];
    v.v = Vec<double, 2>((*st)[1], (*st)[2]);
    v.p = (*st)[3];
    return v;
  };

  // Fixed inflow on the right with the post-shock state.
  const Eos<double> eos(gamma);
  Primitive<double, 2> inflow;
  inflow.rho = postshock[0];
  inflow.v = Vec<double, 2>(postshock[1], postshock[2]);
  inflow.p = postshock[3];
  const Cons<double, 2> inflow_u = prim_to_cons<double, 2>(inflow, eos);
  s.boundary[0][1].tag = Boundary::inflow;
  s.boundary[0][1].state = [inflow_u](const Vec<double, 2>&,
                                      const Cons<double, 2>&) {
    return inflow_u;
  };

  s.entropy_floor = min_entropy_over({{upstream[0], upstream[3]},
                                      {postshock[0], postshock[3]},
                                      {bubble[0], bubble[3]}},
                                     gamma);
  return s;
}

Scenario<2> jet(const std::string& name, double gamma, double rho_beam,
                double mach_beam, std::array<double, 2> hi, double t_final) {
  Scenario<2> s;
  s.name = name;
  s.lo = {0.0, 0.0};
  s.hi = hi;
  s.gamma = gamma;
  s.t_final = t_final;
  const double v_beam = 0.99;
  const double p = pressure_from_mach(rho_beam, v_beam, mach_beam, gamma);
  const double rho_ambient = 1.0;

  s.initial = [rho_ambient, p](const Vec<double, 2>&) {
    Primitive<double, 2> v;
    v.rho = rho_ambient;
    v.v = Vec<double, 2>::Zero();
    v.p = p;
    return v;
  };

  s.boundary[0][0].tag = Boundary::reflective;  // jet axis
  s.boundary[0][1].tag = Boundary::outflow;
  s.boundary[1][1].tag = Boundary::outflow;

  const Eos<double> eos(gamma);
  Primitive<double, 2> beam;
  beam.rho = rho_beam;
  beam.v = Vec<double, 2>(0.0, v_beam);
  beam.p = p;
  const Cons<double, 2> beam_u = prim_to_cons<double, 2>(beam, eos);
  s.boundary[1][0].tag = Boundary::inflow;
  s.boundary[1][0].state = [beam_u](const Vec<double, 2>& pos,
                                    const Cons<double, 2>& interior) {
    // Fixed beam state through the nozzle |x| <= 0.5, outflow elsewhere.
    return pos[0] <= 0.5 ? beam_u : interior;
  };

  s.entropy_floor =
      min_entropy_over({{rho_beam, p}, {rho_ambient, p}}, gamma);
  return s;
}

}  // namespace

double pressure_from_mach(double rho, double speed, double mach,
                          double gamma) {
  const double cs2 = (speed / mach) * (speed / mach);
  if (!(cs2 < gamma - 1.0)) {
    throw DomainError("pressure_from_mach: Mach number below the minimum "
                      "attainable for this adiabatic index");
  }
  return rho * cs2 * (gamma - 1.0) / (gamma * (gamma - 1.0 - cs2));
}

std::vector<std::string> builtin_scenario_names() {
  return {"smooth1d", "riemann1d_1", "riemann1d_2", "smooth2d",
          "shock_bubble", "rp2d_1",      "rp2d_2",      "jet_cold",
          "jet_hot"};
}

int builtin_scenario_dim(const std::string& name) {
  const auto names = builtin_scenario_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw UnknownScenario("unknown scenario '" + name + "'");
  }
  return (name == "smooth1d" || name == "riemann1d_1" || name == "riemann1d_2")
             ? 1
             : 2;
}

Scenario<1> builtin_scenario_1d(const std::string& name, double gamma) {
  if (name == "smooth1d") {
    return smooth_wave_1d(pick_gamma(gamma, 5.0 / 3.0));
  }
  if (name == "riemann1d_1") {
    return riemann_1d(name, pick_gamma(gamma, 5.0 / 3.0), {0.8, 0.5, 8.0},
                      {1.0, 0.0, 1.0}, 0.4);
  }
  if (name == "riemann1d_2") {
    return riemann_1d(name, pick_gamma(gamma, 5.0 / 3.0), {1.0, 0.0, 1e4},
                      {1.0, 0.0, 1e-8}, 0.45);
  }
  if (builtin_scenario_dim(name) == 2) {
    throw UnknownScenario("scenario '" + name + "' is two-dimensional");
  }
  throw UnknownScenario("unknown scenario '" + name + "'");
}

Scenario<2> builtin_scenario_2d(const std::string& name, double gamma) {
  if (name == "smooth2d") {
    return smooth_wave_2d(pick_gamma(gamma, 5.0 / 3.0));
  }
  if (name == "rp2d_1") {
    return riemann_2d(name, pick_gamma(gamma, 5.0 / 3.0),
                      {{{0.1, 0.0, 0.0, 20.0},
                        {0.00414329639576, 0.9946418833556542, 0.0, 0.05},
                        {0.01, 0.0, 0.0, 0.05},
                        {0.00414329639576, 0.0, 0.9946418833556542, 0.05}}},
                      0.8);
  }
  if (name == "rp2d_2") {
    return riemann_2d(name, pick_gamma(gamma, 5.0 / 3.0),
                      {{{0.035145216124503, 0.0, 0.0, 0.162931056509027},
                        {0.1, 0.7, 0.0, 1.0},
                        {0.5, 0.0, 0.0, 1.0},
                        {0.1, 0.0, 0.7, 1.0}}},
                      0.8);
  }
  if (name == "shock_bubble") {
    return shock_bubble(pick_gamma(gamma, 5.0 / 3.0));
  }
  if (name == "jet_cold") {
    return jet(name, pick_gamma(gamma, 5.0 / 3.0), 0.1, 50.0, {12.0, 25.0},
               30.0);
  }
  if (name == "jet_hot") {
    return jet(name, pick_gamma(gamma, 4.0 / 3.0), 0.01, 1.72, {12.0, 30.0},
               33.0);
  }
  if (builtin_scenario_dim(name) == 1) {
    throw UnknownScenario("scenario '" + name + "' is one-dimensional");
  }
  throw UnknownScenario("unknown scenario '" + name + "'");
}

}  // namespace rhd
