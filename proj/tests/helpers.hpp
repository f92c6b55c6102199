#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hynet/admissible.hpp"
#include "hynet/augment.hpp"
#include "hynet/model.hpp"
#include "hynet/rng.hpp"

namespace testutil {

using namespace hynet;

inline std::string data_dir() {
  const char* d = std::getenv("HYNET_DATA");
  return d ? d : "data";
}

inline std::string data_file(const std::string& name) { return data_dir() + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

// Runs the installed CLI with sh-quoted arguments; captures stdout.
inline CliResult run_cli(const std::string& args, bool merge_stderr = false) {
  const char* cli = std::getenv("HYNET_CLI");
  if (!cli) throw Error("HYNET_CLI not set");
  std::string cmd = std::string("'") + cli + "' " + args +
                    (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw Error("popen failed");
  CliResult res;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) res.out.append(buf, got);
  int status = pclose(p);
  res.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return res;
}

inline std::string temp_path(const std::string& name) {
  const char* t = std::getenv("TMPDIR");
  std::string dir = t ? t : "/tmp";
  return dir + "/hynet_test_" + std::to_string(getpid()) + "_" + name;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

// The three-node core whose augmentation is the five-cell example network.
inline Hypernetwork core3() { return parse_file(data_file("core3.hn")); }

inline Hypernetwork running_example() {
  AugmentationSpec spec;
  spec.core = core3();
  spec.nodes = {"v0", "v1", "v2"};
  return augment(spec);
}

// Augmentation of k+1 disconnected self-looped nodes.
inline Hypernetwork plain_augmented(int k) {
  AugmentationSpec spec;
  spec.core = disconnected_core(k + 1);
  spec.nodes.clear();
  for (int i = 0; i <= k; ++i) spec.nodes.push_back("v" + std::to_string(i));
  return augment(spec);
}

// Random hypernetwork that is valid by construction: every edge type has a
// fixed order, source type vector and target type, and every vertex of the
// target type receives the same number of edges of that type. At most 5
// vertices, 7 hyperedges, order 2.
inline Hypernetwork random_network(Rng& rng, bool multi_dim = false) {
  Hypernetwork n;
  n.name = "rand";
  int nv = 1 + static_cast<int>(rng.below(5));
  int ntypes = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(nv, 3))));
  std::vector<int> dim(ntypes, 1);
  if (multi_dim)
    for (auto& d : dim)
      d = 1 + static_cast<int>(rng.below(2));
  std::vector<std::vector<std::string>> by_type(ntypes);
  for (int i = 0; i < nv; ++i) {
    int t = i < ntypes ? i : static_cast<int>(rng.below(ntypes));
    std::string id = "n" + std::to_string(i);
    n.vertices[id] = VertexInfo{"t" + std::to_string(t), dim[t]};
    by_type[t].push_back(id);
  }
  int budget = static_cast<int>(rng.below(8));
  int next_etype = 0;
  for (int attempt = 0; attempt < 8 && budget > 0; ++attempt) {
    int target_t = static_cast<int>(rng.below(ntypes));
    int mult = 1 + static_cast<int>(rng.below(2));
    int order = 1 + static_cast<int>(rng.below(2));
    int cost = static_cast<int>(by_type[target_t].size()) * mult;
    if (cost > budget) continue;
    std::vector<int> src_types(order);
    for (auto& st : src_types) st = static_cast<int>(rng.below(ntypes));
    std::string etype = "c" + std::to_string(next_etype++);
    for (const auto& target : by_type[target_t]) {
      for (int j = 0; j < mult; ++j) {
        Hyperedge h;
        h.id = etype + "_" + target + "_" + std::to_string(j);
        h.etype = etype;
        h.target = target;
        for (int st : src_types) {
          const auto& pool = by_type[st];
          h.sources.push_back(pool[rng.below(pool.size())]);
        }
        n.hyperedges.push_back(std::move(h));
      }
    }
    budget -= cost;
  }
  n.rebuild_index();
  return n;
}

// One random invariant response per vertex type and component.
inline std::map<std::string, ResponseFunction> random_poly_library(const Hypernetwork& n,
                                                                   int max_degree, Rng& rng) {
  std::set<std::string> vtypes;
  for (const auto& [v, info] : n.vertices) vtypes.insert(info.vtype);
  std::map<std::string, ResponseFunction> out;
  for (const auto& t : vtypes) {
    InputSchema schema = schema_for(n, t);
    std::vector<Poly> ps;
    for (int c = 0; c < schema.self_dim; ++c)
      ps.push_back(random_invariant_polynomial(schema, max_degree, rng.raw()));
    out.emplace(t, ResponseFunction::from_polys(schema, std::move(ps)));
  }
  return out;
}

// Random invariant polynomial whose pre-symmetrization monomials touch at
// most max_edges distinct edges per group; keeps orbits small on schemas with
// many same-type edges.
inline Poly random_concentrated_invariant(const InputSchema& schema, int max_degree,
                                          int max_edges, Rng& rng) {
  Poly p;
  int terms = 2 + static_cast<int>(rng.below(3));
  for (int t = 0; t < terms; ++t) {
    std::vector<int> allowed;
    for (int c = 0; c < schema.self_dim; ++c) allowed.push_back(schema.y_slot(c));
    for (std::size_t g = 0; g < schema.groups.size(); ++g) {
      const auto& grp = schema.groups[g];
      int use = std::min(max_edges, grp.multiplicity);
      std::set<int> picked;
      while (static_cast<int>(picked.size()) < use)
        picked.insert(static_cast<int>(rng.below(grp.multiplicity)));
      for (int e : picked)
        for (int pos = 0; pos < grp.order; ++pos)
          for (int comp = 0; comp < grp.source_dims[pos]; ++comp)
            allowed.push_back(schema.edge_slot(static_cast<int>(g), e, pos, comp));
    }
    long long coef = rng.range(1, 5) * (rng.below(2) ? 1 : -1);
    Poly term = Poly::constant(Rat(coef));
    int deg = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_degree + 1)));
    for (int d = 0; d < deg; ++d)
      term = term * Poly::variable(allowed[rng.below(allowed.size())]);
    p += term;
  }
  return symmetrize(p, schema);
}

}  // namespace testutil
