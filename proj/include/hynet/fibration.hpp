#pragma once

#include <map>
#include <string>
#include <vector>

#include "hynet/admissible.hpp"
#include "hynet/model.hpp"
#include "hynet/partition.hpp"

namespace hynet {

struct FibrationMap {
  std::map<std::string, std::string> vmap;
  std::map<std::string, std::string> hmap;
};

struct ConditionReport {
  int condition;  // 1..6
  bool pass;
  std::string detail;
};

// The six conditions: 1 vertices map to vertices, 2 hyperedges map to
// hyperedges, 3 types are preserved, 4 ordered sources are compatible,
// 5 targets are compatible, 6 per-vertex in-edge restrictions are bijections.
std::vector<ConditionReport> check_fibration(const Hypernetwork& n, const Hypernetwork& np,
                                             const FibrationMap& phi);
bool is_fibration(const Hypernetwork& n, const Hypernetwork& np, const FibrationMap& phi);

struct QuotientResult {
  Hypernetwork quotient;
  FibrationMap phi;
  std::map<std::string, std::string> representative;  // vertex -> class representative
};

// Collapse a balanced partition: vertices become class representatives, each
// keeping its original in-edges with sources redirected to representatives.
QuotientResult quotient(const Hypernetwork& n, const Partition& p);

// The state embedding copying block phi(v) of the quotient state into slot v.
std::vector<double> r_phi(const Hypernetwork& n, const Hypernetwork& np,
                          const FibrationMap& phi, const std::vector<double>& y);
std::vector<Rat> r_phi_rat(const Hypernetwork& n, const Hypernetwork& np,
                           const FibrationMap& phi, const std::vector<Rat>& y);

// max over samples of |R_phi(f'(y)) - f(R_phi(y))|_inf <= tol, with random y
// and parameter values.
bool check_semiconjugacy(const AdmissibleSystem& sys_n, const AdmissibleSystem& sys_np,
                         const FibrationMap& phi, int npoints, double tol,
                         std::uint64_t seed);

// Exact variant at random small-integer points; polynomial responses only.
bool check_semiconjugacy_exact(const AdmissibleSystem& sys_n, const AdmissibleSystem& sys_np,
                               const FibrationMap& phi, int npoints, std::uint64_t seed);

// Parse lines "v <id> -> <id>" / "h <id> -> <id>".
FibrationMap parse_mapfile(const std::string& text);
std::string format_mapfile(const FibrationMap& phi);

}  // namespace hynet
