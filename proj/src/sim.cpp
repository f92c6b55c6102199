#include "hynet/sim.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace hynet {

std::vector<double> SimConfig::initial_state(int total_dim) const {
  if (!x0.empty()) {
    if (static_cast<int>(x0.size()) != total_dim)
      throw Error("initial state has dimension " + std::to_string(x0.size()) +
                  ", the system needs " + std::to_string(total_dim));
    return x0;
  }
  if (total_dim == 5) return {0.1, -0.2, 0.3, 0.4, 0.5};
  return std::vector<double>(total_dim, 0.0);
}

std::vector<double> SimConfig::lambda_grid() const {
  if (lambda_steps < 1) throw Error("lambda grid must be non-empty");
  std::vector<double> grid(lambda_steps);
  if (lambda_steps == 1) {
    grid[0] = lambda_min;
    return grid;
  }
  for (int i = 0; i < lambda_steps; ++i)
    grid[i] = lambda_min + (lambda_max - lambda_min) * i / (lambda_steps - 1);
  return grid;
}

namespace {

long long step_count(const SimConfig& cfg) {
  if (cfg.dt <= 0 || cfg.t_end <= 0) throw Error("dt and t_end must be positive");
  return static_cast<long long>(std::ceil(cfg.t_end / cfg.dt));
}

void check_finite(const std::vector<double>& x, long long step) {
  for (double v : x)
    if (!std::isfinite(v)) throw SimError(step, "state became non-finite");
}

template <class Step>
Trace integrate(const AdmissibleSystem& sys, const SimConfig& cfg, Step step) {
  const long long n = step_count(cfg);
  std::vector<double> x = cfg.initial_state(sys.layout().total);
  Trace tr;
  auto record = [&](long long i) {
    tr.times.push_back(i * cfg.dt);
    tr.states.push_back(x);
  };
  if (cfg.stride > 0) record(0);
  for (long long i = 0; i < n; ++i) {
    x = step(x);
    check_finite(x, i + 1);
    if (cfg.stride > 0 && (i + 1) % cfg.stride == 0 && i + 1 < n) record(i + 1);
  }
  record(n);
  return tr;
}

}  // namespace

Trace integrate_euler(const AdmissibleSystem& sys, double lambda, const SimConfig& cfg) {
  return integrate(sys, cfg, [&](const std::vector<double>& x) {
    auto f = sys.eval(x, lambda);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + cfg.dt * f[i];
    return y;
  });
}

Trace integrate_rk4(const AdmissibleSystem& sys, double lambda, const SimConfig& cfg) {
  return integrate(sys, cfg, [&](const std::vector<double>& x) {
    const double h = cfg.dt;
    auto add = [](const std::vector<double>& a, const std::vector<double>& b, double s) {
      std::vector<double> r(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
      return r;
    };
    auto k1 = sys.eval(x, lambda);
    auto k2 = sys.eval(add(x, k1, h / 2), lambda);
    auto k3 = sys.eval(add(x, k2, h / 2), lambda);
    auto k4 = sys.eval(add(x, k3, h), lambda);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      y[i] = x[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return y;
  });
}

std::vector<DiagramRow> sweep(const AdmissibleSystem& sys, const SimConfig& cfg, int jobs,
                              bool rk4) {
  auto grid = cfg.lambda_grid();
  std::vector<DiagramRow> rows(grid.size());
  SimConfig row_cfg = cfg;
  row_cfg.stride = 0;
  auto run_one = [&](std::size_t i) {
    DiagramRow& row = rows[i];
    row.lambda = grid[i];
    try {
      Trace tr = rk4 ? integrate_rk4(sys, grid[i], row_cfg)
                     : integrate_euler(sys, grid[i], row_cfg);
      row.state = tr.states.back();
      double res = 0;
      for (double v : sys.eval(row.state, grid[i])) res = std::max(res, std::abs(v));
      row.residual = res;
      row.converged = res <= cfg.steady_tol;
    } catch (const SimError&) {
      row.state.assign(sys.layout().total, std::nan(""));
      row.residual = std::nan("");
      row.converged = false;
    }
  };
  if (jobs <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) run_one(i);
      });
    for (auto& t : pool) t.join();
  }
  return rows;
}

SlopeFit loglog_slope(const std::vector<double>& lambdas, const std::vector<double>& quantity,
                      double lmin, double lmax) {
  if (lambdas.size() != quantity.size()) throw Error("mismatched slope input lengths");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (lambdas[i] < lmin || lambdas[i] > lmax) continue;
    if (lambdas[i] <= 0) continue;
    if (!(quantity[i] > 1e-14)) continue;
    lx.push_back(std::log(lambdas[i]));
    ly.push_back(std::log(quantity[i]));
  }
  SlopeFit fit;
  fit.npoints = static_cast<int>(lx.size());
  if (fit.npoints < 5)
    throw Error("slope fit needs at least 5 usable points, got " +
                std::to_string(fit.npoints));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < fit.npoints; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double n = fit.npoints;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean = sy / n;
  for (int i = 0; i < fit.npoints; ++i) {
    const double pred = fit.slope * lx[i] + fit.intercept;
    ss_res += (ly[i] - pred) * (ly[i] - pred);
    ss_tot += (ly[i] - mean) * (ly[i] - mean);
  }
  fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string diagram_csv(const Hypernetwork& n, const std::vector<DiagramRow>& rows) {
  std::ostringstream os;
  os << "lambda";
  StateLayout l(n);
  for (const auto& v : l.order)
    for (int c = 0; c < l.dim.at(v); ++c) {
      os << "," << v;
      if (l.dim.at(v) > 1) os << "_" << c;
    }
  os << ",residual,converged\n";
  for (const auto& row : rows) {
    os << fmt(row.lambda);
    for (double v : row.state) os << "," << fmt(v);
    os << "," << fmt(row.residual) << "," << (row.converged ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string trace_csv(const Hypernetwork& n, const Trace& tr) {
  std::ostringstream os;
  os << "t";
  StateLayout l(n);
  for (const auto& v : l.order)
    for (int c = 0; c < l.dim.at(v); ++c) {
      os << "," << v;
      if (l.dim.at(v) > 1) os << "_" << c;
    }
  os << "\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    os << fmt(tr.times[i]);
    for (double v : tr.states[i]) os << "," << fmt(v);
    os << "\n";
  }
  return os.str();
}

}  // namespace hynet
