#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "hynet/sim.hpp"

using namespace hynet;
using namespace testutil;

namespace {

// One isolated unit node with a chosen response in Y and L.
AdmissibleSystem scalar_system(Poly f) {
  static const char* text = "hypernet one\nvertex a type t\n";
  Hypernetwork n = parse(text);
  std::map<std::string, ResponseFunction> lib;
  lib.emplace("t", ResponseFunction::from_poly(schema_for(n, "t"), std::move(f)));
  return AdmissibleSystem(n, lib);
}

}  // namespace

TEST_CASE("a single Euler step moves along the vector field") {
  AdmissibleSystem sys = scalar_system(Poly::constant(-1) * Poly::variable(0));
  SimConfig cfg;
  cfg.dt = 0.1;
  cfg.t_end = 0.1;
  cfg.x0 = {1.0};
  Trace tr = integrate_euler(sys, 0.0, cfg);
  REQUIRE(tr.states.size() == 1);
  CHECK(tr.times[0] == doctest::Approx(0.1));
  CHECK(tr.states[0][0] == doctest::Approx(0.9).epsilon(1e-15));
}

TEST_CASE("the stride controls which steps are recorded") {
  AdmissibleSystem sys = scalar_system(Poly::constant(-1) * Poly::variable(0));
  SimConfig cfg;
  cfg.dt = 0.1;
  cfg.t_end = 0.3;
  cfg.x0 = {1.0};
  cfg.stride = 1;
  Trace tr = integrate_euler(sys, 0.0, cfg);
  REQUIRE(tr.times.size() == 4);
  CHECK(tr.times[0] == 0.0);
  CHECK(tr.times[3] == doctest::Approx(0.3));
  for (int i = 0; i < 4; ++i)
    CHECK(tr.states[i][0] == doctest::Approx(std::pow(0.9, i)).epsilon(1e-14));

  cfg.stride = 2;
  Trace tr2 = integrate_euler(sys, 0.0, cfg);
  REQUIRE(tr2.times.size() == 3);  // t = 0, 0.2, 0.3
  CHECK(tr2.times[1] == doctest::Approx(0.2));
  CHECK(tr2.times[2] == doctest::Approx(0.3));
}

TEST_CASE("a zero field leaves the state constant") {
  AdmissibleSystem sys = scalar_system(Poly());
  SimConfig cfg;
  cfg.dt = 0.5;
  cfg.t_end = 5;
  cfg.x0 = {2.5};
  Trace tr = integrate_euler(sys, 0.7, cfg);
  CHECK(tr.states.back()[0] == 2.5);
  Trace tr4 = integrate_rk4(sys, 0.7, cfg);
  CHECK(tr4.states.back()[0] == 2.5);
}

TEST_CASE("Euler error halves when the step halves") {
  AdmissibleSystem sys = scalar_system(Poly::constant(-1) * Poly::variable(0));
  SimConfig cfg;
  cfg.t_end = 10;
  cfg.x0 = {1.0};
  const double exact = std::exp(-10.0);
  cfg.dt = 0.01;
  double e1 = std::abs(integrate_euler(sys, 0, cfg).states.back()[0] - exact);
  cfg.dt = 0.005;
  double e2 = std::abs(integrate_euler(sys, 0, cfg).states.back()[0] - exact);
  double ratio = e1 / e2;
  CHECK(ratio > 1.5);
  CHECK(ratio < 2.5);

  // Fourth order: the same halving wins a factor near 16.
  cfg.dt = 0.2;
  double r1 = std::abs(integrate_rk4(sys, 0, cfg).states.back()[0] - exact);
  cfg.dt = 0.1;
  double r2 = std::abs(integrate_rk4(sys, 0, cfg).states.back()[0] - exact);
  CHECK(r1 / r2 > 8.0);
}

TEST_CASE("a quadratic blowup raises a stepped error") {
  AdmissibleSystem sys = scalar_system(Poly::constant(1) + Poly::variable(0, 2));
  SimConfig cfg;
  cfg.dt = 0.1;
  cfg.t_end = 100;
  cfg.x0 = {0.0};
  CHECK_THROWS_AS(integrate_euler(sys, 0, cfg), SimError);
  try {
    integrate_euler(sys, 0, cfg);
  } catch (const SimError& e) {
    CHECK(e.step > 10);
    CHECK(std::string(e.what()).find("at step") != std::string::npos);
  }
}

TEST_CASE("the default initial state matches the five cell example") {
  SimConfig cfg;
  CHECK(cfg.initial_state(5) == std::vector<double>{0.1, -0.2, 0.3, 0.4, 0.5});
  CHECK(cfg.initial_state(3) == std::vector<double>(3, 0.0));
  cfg.x0 = {1, 2};
  CHECK(cfg.initial_state(2) == std::vector<double>{1, 2});
  CHECK_THROWS_AS(cfg.initial_state(3), Error);
}

TEST_CASE("the parameter grid spans both endpoints") {
  SimConfig cfg;
  cfg.lambda_min = -0.03;
  cfg.lambda_max = 0.03;
  cfg.lambda_steps = 7;
  auto g = cfg.lambda_grid();
  REQUIRE(g.size() == 7);
  CHECK(g.front() == -0.03);
  CHECK(g.back() == 0.03);
  CHECK(g[3] == doctest::Approx(0.0));

  cfg.lambda_steps = 1;
  CHECK(cfg.lambda_grid() == std::vector<double>{-0.03});
  cfg.lambda_steps = 0;
  CHECK_THROWS_AS(cfg.lambda_grid(), Error);
}

TEST_CASE("negative coupling keeps both cell classes synchronous") {
  Hypernetwork n = running_example();
  AdmissibleSystem sys(n, builtin_responses("example58", n));
  SimConfig cfg;  // dt 0.1, t_end 2000, default initial state
  Trace tr = integrate_euler(sys, -0.02, cfg);
  const auto& x = tr.states.back();
  double dev = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) dev = std::max(dev, std::abs(x[i] - x[j]));
  dev = std::max(dev, std::abs(x[3] - x[4]));
  CHECK(dev <= 1e-6);
}

TEST_CASE("balanced synchrony spaces trap the flow exactly") {
  Rng rng(73);
  int done = 0;
  while (done < 5) {
    Hypernetwork n = random_network(rng);
    auto parts = enumerate_balanced(n);
    const Partition* nontrivial = nullptr;
    for (const auto& cand : parts)
      if (cand.colours() < static_cast<int>(n.vertices.size())) {
        nontrivial = &cand;
        break;
      }
    if (!nontrivial) continue;

    AdmissibleSystem sys(n, random_poly_library(n, 2, rng));
    StateLayout l(n);
    std::vector<double> x0(l.total);
    int c = 0;
    for (const auto& cls : nontrivial->classes()) {
      double val = 0.05 * ++c * (c % 2 ? 1 : -1);
      for (const auto& v : cls) x0[l.offset.at(v)] = val;
    }
    SimConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 0.5;
    cfg.x0 = x0;
    cfg.stride = 0;
    try {
      Trace tr = integrate_euler(sys, 0.01, cfg);
      const auto& xf = tr.states.back();
      for (const auto& cls : nontrivial->classes())
        for (std::size_t i = 1; i < cls.size(); ++i)
          CHECK(std::abs(xf[l.offset.at(cls[0])] - xf[l.offset.at(cls[i])]) <= 1e-12);
      ++done;
    } catch (const SimError&) {
      continue;  // the random field escaped in finite time; try another
    }
  }
}

TEST_CASE("parallel sweeps match the sequential result bit for bit") {
  Hypernetwork n = running_example();
  AdmissibleSystem sys(n, builtin_responses("example58", n));
  SimConfig cfg;
  cfg.t_end = 50;
  cfg.lambda_steps = 12;
  auto seq = sweep(sys, cfg, 1);
  auto par = sweep(sys, cfg, 4);
  REQUIRE(seq.size() == par.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq[i].lambda == par[i].lambda);
    CHECK(seq[i].state == par[i].state);
    CHECK(seq[i].residual == par[i].residual);
    CHECK(seq[i].converged == par[i].converged);
  }
}

TEST_CASE("the origin is an equilibrium at zero coupling") {
  Hypernetwork n = running_example();
  AdmissibleSystem sys(n, builtin_responses("example58", n));
  auto f = sys.eval(std::vector<double>(5, 0.0), 0.0);
  for (double v : f) CHECK(v == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("log-log slope fitting recovers power laws") {
  std::vector<double> lam, q1, q3;
  for (int i = 1; i <= 40; ++i) {
    double l = 0.001 * i;
    lam.push_back(l);
    q1.push_back(2.0 * l);
    q3.push_back(0.5 * l * l * l);
  }
  SlopeFit cube = loglog_slope(lam, q3, 0.0005, 0.05);
  CHECK(cube.slope == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(cube.r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cube.npoints == 40);
  CHECK(cube.intercept == doctest::Approx(std::log(0.5)).epsilon(1e-9));

  SlopeFit lin = loglog_slope(lam, q1, 0.0005, 0.05);
  CHECK(lin.slope == doctest::Approx(1.0).epsilon(1e-9));

  // Window and degeneracy filters.
  SlopeFit window = loglog_slope(lam, q3, 0.01, 0.02);
  CHECK(window.npoints == 11);
  CHECK_THROWS_AS(loglog_slope(lam, q3, 0.9, 1.0), Error);
  CHECK_THROWS_AS(loglog_slope({1, 2}, {1, 2, 3}, 0, 1), Error);

  std::vector<double> tiny(lam.size(), 1e-16);
  CHECK_THROWS_AS(loglog_slope(lam, tiny, 0.0005, 0.05), Error);
}

TEST_CASE("csv output lists vertices in state order") {
  Hypernetwork n = running_example();
  AdmissibleSystem sys(n, builtin_responses("example58", n));
  SimConfig cfg;
  cfg.t_end = 1;
  cfg.lambda_steps = 2;
  auto rows = sweep(sys, cfg, 1);
  std::string csv = diagram_csv(n, rows);
  CHECK(csv.substr(0, csv.find('\n')) == "lambda,v0,v1,v2,w0,w1,residual,converged");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  cfg.stride = 5;
  Trace tr = integrate_euler(sys, 0.0, cfg);
  std::string tcsv = trace_csv(n, tr);
  CHECK(tcsv.substr(0, tcsv.find('\n')) == "t,v0,v1,v2,w0,w1");

  Hypernetwork wide = parse("hypernet w\nvertex a type t dim 2\n");
  std::string wcsv = trace_csv(wide, Trace{});
  CHECK(wcsv.substr(0, wcsv.find('\n')) == "t,a_0,a_1");
}
