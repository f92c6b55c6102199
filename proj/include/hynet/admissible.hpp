#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hynet/model.hpp"
#include "hynet/partition.hpp"
#include "hynet/perm.hpp"
#include "hynet/poly.hpp"

namespace hynet {

struct EdgeGroup {
  std::string etype;
  int multiplicity = 0;
  int order = 0;
  std::vector<int> source_dims;  // one per source position

  int block_size() const {
    int s = 0;
    for (int d : source_dims) s += d;
    return s;
  }
  bool operator==(const EdgeGroup& o) const {
    return etype == o.etype && multiplicity == o.multiplicity && order == o.order &&
           source_dims == o.source_dims;
  }
};

// Argument layout of a response function for one vertex type: the vertex's
// own block, then the in-edge groups ordered by edge type. Slot variables are
// numbered contiguously in that order; the parameter gets the next id.
struct InputSchema {
  std::string vtype;
  int self_dim = 1;
  std::vector<EdgeGroup> groups;

  int slot_count() const;
  int y_slot(int comp) const { return comp; }
  int group_base(int g) const;
  int edge_slot(int g, int edge, int pos, int comp) const;
  int lambda_var() const { return slot_count(); }
  bool operator==(const InputSchema& o) const {
    return vtype == o.vtype && self_dim == o.self_dim && groups == o.groups;
  }

  // Human-readable slot name: Y[i], E[etype][edge][pos][comp], or L.
  std::string slot_name(int var) const;
};

InputSchema schema_for(const Hypernetwork& n, const std::string& vtype);

using BuiltinFn = std::function<void(const std::vector<double>&, double, double*)>;

struct ResponseFunction {
  InputSchema schema;
  std::vector<Poly> polys;  // one per output component when polynomial
  BuiltinFn builtin;        // set when not polynomial
  std::string builtin_name;

  bool polynomial() const { return !builtin; }

  static ResponseFunction from_poly(InputSchema schema, Poly p);
  static ResponseFunction from_polys(InputSchema schema, std::vector<Poly> ps);
};

class AdmissibleSystem {
 public:
  AdmissibleSystem(Hypernetwork net, std::map<std::string, ResponseFunction> responses);

  const Hypernetwork& net() const { return net_; }
  const StateLayout& layout() const { return layout_; }
  const std::map<std::string, ResponseFunction>& responses() const { return responses_; }
  bool polynomial() const;

  std::vector<double> eval(const std::vector<double>& x, double lambda) const;
  std::vector<Rat> eval_rat(const std::vector<Rat>& x, const Rat& lambda) const;

  // Slot variable -> state index, per vertex in layout order.
  const std::vector<int>& slot_map(const std::string& v) const;

 private:
  Hypernetwork net_;
  StateLayout layout_;
  std::map<std::string, ResponseFunction> responses_;
  std::map<std::string, std::vector<int>> slot_maps_;
};

// Orbit average over all products of within-group block permutations.
Poly symmetrize(const Poly& p, const InputSchema& schema);

// Rename slots by permuting the edge blocks of each group (one permutation
// per group, identity when omitted).
Poly permute_blocks(const Poly& p, const InputSchema& schema,
                    const std::map<int, Perm>& per_group);

Poly random_invariant_polynomial(const InputSchema& schema, int max_degree,
                                 std::uint64_t seed);

// Restriction of the vector field to Syn_P: per vertex, an exact polynomial
// in the colour variables (var c-1 carries colour c, var C the parameter).
// Requires one-dimensional vertices and polynomial responses.
std::map<std::string, Poly> eval_symbolic_on_syn(const AdmissibleSystem& sys,
                                                 const Partition& p);

// Named builtin response libraries ("example58").
std::map<std::string, ResponseFunction> builtin_responses(const std::string& name,
                                                          const Hypernetwork& n);

}  // namespace hynet
