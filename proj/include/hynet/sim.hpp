#pragma once

#include <string>
#include <vector>

#include "hynet/admissible.hpp"

namespace hynet {

struct SimConfig {
  double dt = 0.1;
  double t_end = 2000.0;
  std::vector<double> x0;  // empty selects the default initial state
  double lambda_min = -0.03;
  double lambda_max = 0.03;
  int lambda_steps = 600;
  double steady_tol = 1e-8;  // on |f|_inf at the final state
  int stride = 0;            // 0: record only the final state

  std::vector<double> initial_state(int total_dim) const;
  std::vector<double> lambda_grid() const;
};

struct SimError : Error {
  long long step;
  SimError(long long step, const std::string& what)
      : Error(what + " at step " + std::to_string(step)), step(step) {}
};

struct Trace {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
};

Trace integrate_euler(const AdmissibleSystem& sys, double lambda, const SimConfig& cfg);
Trace integrate_rk4(const AdmissibleSystem& sys, double lambda, const SimConfig& cfg);

struct DiagramRow {
  double lambda;
  std::vector<double> state;
  double residual;
  bool converged;
};

std::vector<DiagramRow> sweep(const AdmissibleSystem& sys, const SimConfig& cfg, int jobs = 1,
                              bool rk4 = false);

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  int npoints = 0;
};

// Least squares of log(quantity) against log(lambda) over rows with
// lambda in [lmin, lmax] and quantity > 1e-14; needs at least 5 points.
SlopeFit loglog_slope(const std::vector<double>& lambdas, const std::vector<double>& quantity,
                      double lmin, double lmax);

// header: lambda,<vertex ids...>,residual,converged
std::string diagram_csv(const Hypernetwork& n, const std::vector<DiagramRow>& rows);
std::string trace_csv(const Hypernetwork& n, const Trace& tr);

}  // namespace hynet
