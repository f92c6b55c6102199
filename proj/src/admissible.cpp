#include "hynet/admissible.hpp"

#include <algorithm>
#include <cmath>

#include "hynet/rng.hpp"

namespace hynet {

int InputSchema::slot_count() const {
  int s = self_dim;
  for (const auto& g : groups) s += g.multiplicity * g.block_size();
  return s;
}

int InputSchema::group_base(int g) const {
  int s = self_dim;
  for (int i = 0; i < g; ++i) s += groups[i].multiplicity * groups[i].block_size();
  return s;
}

int InputSchema::edge_slot(int g, int edge, int pos, int comp) const {
  const EdgeGroup& grp = groups[g];
  int s = group_base(g) + edge * grp.block_size();
  for (int i = 0; i < pos; ++i) s += grp.source_dims[i];
  return s + comp;
}

std::string InputSchema::slot_name(int var) const {
  if (var < self_dim) return "Y[" + std::to_string(var) + "]";
  if (var == lambda_var()) return "L";
  int s = self_dim;
  for (const auto& g : groups) {
    int span = g.multiplicity * g.block_size();
    if (var < s + span) {
      int off = var - s;
      int edge = off / g.block_size();
      off %= g.block_size();
      int pos = 0;
      while (off >= g.source_dims[pos]) off -= g.source_dims[pos++];
      return "E[" + g.etype + "][" + std::to_string(edge) + "][" + std::to_string(pos + 1) +
             "][" + std::to_string(off) + "]";
    }
    s += span;
  }
  throw Error("slot out of range");
}

InputSchema schema_for(const Hypernetwork& n, const std::string& vtype) {
  std::string rep;
  for (const auto& [v, info] : n.vertices)
    if (info.vtype == vtype) {
      rep = v;
      break;
    }
  if (rep.empty()) throw Error("no vertex of type " + vtype);
  InputSchema s;
  s.vtype = vtype;
  s.self_dim = n.vertex(rep).dim;
  for (const Hyperedge* h : n.in_edges(rep)) {
    if (!s.groups.empty() && s.groups.back().etype == h->etype) {
      s.groups.back().multiplicity++;
      continue;
    }
    EdgeGroup g;
    g.etype = h->etype;
    g.multiplicity = 1;
    g.order = h->order();
    for (const auto& src : h->sources) g.source_dims.push_back(n.vertex(src).dim);
    s.groups.push_back(std::move(g));
  }
  return s;
}

ResponseFunction ResponseFunction::from_poly(InputSchema schema, Poly p) {
  if (schema.self_dim != 1) throw Error("from_poly needs a one-dimensional vertex type");
  ResponseFunction r;
  r.schema = std::move(schema);
  r.polys.push_back(std::move(p));
  return r;
}

ResponseFunction ResponseFunction::from_polys(InputSchema schema, std::vector<Poly> ps) {
  if (static_cast<int>(ps.size()) != schema.self_dim)
    throw Error("component count does not match vertex dimension");
  ResponseFunction r;
  r.schema = std::move(schema);
  r.polys = std::move(ps);
  return r;
}

AdmissibleSystem::AdmissibleSystem(Hypernetwork net,
                                   std::map<std::string, ResponseFunction> responses)
    : net_(std::move(net)), layout_(net_), responses_(std::move(responses)) {
  std::set<std::string> vtypes;
  for (const auto& [v, info] : net_.vertices) vtypes.insert(info.vtype);
  for (const auto& t : vtypes) {
    auto it = responses_.find(t);
    if (it == responses_.end()) throw Error("no response function for vertex type " + t);
    if (!(it->second.schema == schema_for(net_, t)))
      throw Error("response schema mismatch for vertex type " + t);
  }
  for (const auto& v : layout_.order) {
    const InputSchema& s = responses_.at(net_.vertex(v).vtype).schema;
    std::vector<int> map(s.slot_count());
    int k = 0;
    for (int c = 0; c < s.self_dim; ++c) map[k++] = layout_.offset.at(v) + c;
    auto ins = net_.in_edges(v);
    std::size_t e = 0;
    for (const auto& g : s.groups) {
      for (int i = 0; i < g.multiplicity; ++i, ++e) {
        const Hyperedge* h = ins[e];
        if (h->etype != g.etype) throw Error("in-edge group mismatch at vertex " + v);
        for (const auto& src : h->sources)
          for (int c = 0; c < net_.vertex(src).dim; ++c)
            map[k++] = layout_.offset.at(src) + c;
      }
    }
    slot_maps_[v] = std::move(map);
  }
}

bool AdmissibleSystem::polynomial() const {
  for (const auto& [t, r] : responses_)
    if (!r.polynomial()) return false;
  return true;
}

const std::vector<int>& AdmissibleSystem::slot_map(const std::string& v) const {
  return slot_maps_.at(v);
}

std::vector<double> AdmissibleSystem::eval(const std::vector<double>& x, double lambda) const {
  if (static_cast<int>(x.size()) != layout_.total) throw Error("state dimension mismatch");
  std::vector<double> out(x.size());
  std::vector<double> slots;
  for (const auto& v : layout_.order) {
    const ResponseFunction& r = responses_.at(net_.vertex(v).vtype);
    const auto& map = slot_maps_.at(v);
    slots.resize(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) slots[i] = x[map[i]];
    double* dst = out.data() + layout_.offset.at(v);
    if (r.polynomial()) {
      const int lam = r.schema.lambda_var();
      for (int c = 0; c < r.schema.self_dim; ++c)
        dst[c] = r.polys[c].eval<double>(
            [&](int var) { return var == lam ? lambda : slots[var]; });
    } else {
      r.builtin(slots, lambda, dst);
    }
  }
  return out;
}

std::vector<Rat> AdmissibleSystem::eval_rat(const std::vector<Rat>& x, const Rat& lambda) const {
  if (static_cast<int>(x.size()) != layout_.total) throw Error("state dimension mismatch");
  std::vector<Rat> out(x.size());
  std::vector<Rat> slots;
  for (const auto& v : layout_.order) {
    const ResponseFunction& r = responses_.at(net_.vertex(v).vtype);
    if (!r.polynomial()) throw Error("exact evaluation needs polynomial responses");
    const auto& map = slot_maps_.at(v);
    slots.resize(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) slots[i] = x[map[i]];
    const int lam = r.schema.lambda_var();
    for (int c = 0; c < r.schema.self_dim; ++c)
      out[layout_.offset.at(v) + c] =
          r.polys[c].eval<Rat>([&](int var) { return var == lam ? lambda : slots[var]; });
  }
  return out;
}

namespace {

// Sub-monomial carried by one edge block: (offset within block, exponent).
using Pattern = std::vector<std::pair<int, int>>;

struct GroupDecomposition {
  std::vector<Pattern> patterns;  // one per edge of the group
};

}  // namespace

Poly permute_blocks(const Poly& p, const InputSchema& schema,
                    const std::map<int, Perm>& per_group) {
  return p.rename([&](int var) {
    int s = schema.self_dim;
    for (int g = 0; g < static_cast<int>(schema.groups.size()); ++g) {
      const EdgeGroup& grp = schema.groups[g];
      int span = grp.multiplicity * grp.block_size();
      if (var >= s && var < s + span) {
        auto it = per_group.find(g);
        if (it == per_group.end()) return var;
        int off = var - s;
        int edge = off / grp.block_size();
        int rest = off % grp.block_size();
        return s + it->second(edge) * grp.block_size() + rest;
      }
      s += span;
    }
    return var;
  });
}

Poly symmetrize(const Poly& p, const InputSchema& schema) {
  Poly out;
  const int ngroups = static_cast<int>(schema.groups.size());
  for (const auto& [mono, coef] : p.terms()) {
    // split the monomial into the part fixed by the action and per-group
    // per-edge patterns
    Monomial fixed;
    std::vector<GroupDecomposition> dec(ngroups);
    for (int g = 0; g < ngroups; ++g)
      dec[g].patterns.assign(schema.groups[g].multiplicity, {});
    for (auto [var, exp] : mono.factors) {
      bool placed = false;
      int s = schema.self_dim;
      for (int g = 0; g < ngroups; ++g) {
        const EdgeGroup& grp = schema.groups[g];
        int span = grp.multiplicity * grp.block_size();
        if (var >= s && var < s + span) {
          int off = var - s;
          dec[g].patterns[off / grp.block_size()].push_back({off % grp.block_size(), exp});
          placed = true;
          break;
        }
        s += span;
      }
      if (!placed) fixed.factors.push_back({var, exp});
    }
    // enumerate the orbit: distinct permutations of each group's pattern list
    for (auto& d : dec)
      std::sort(d.patterns.begin(), d.patterns.end());
    Rat orbit_size = 1;
    for (int g = 0; g < ngroups; ++g) {
      // count distinct permutations of the multiset
      long long cnt = 1;
      auto ps = dec[g].patterns;
      long long n = static_cast<long long>(ps.size());
      // n! / prod(mult!)
      for (long long i = 2; i <= n; ++i) cnt *= i;
      long long run = 1;
      for (std::size_t i = 1; i <= ps.size(); ++i) {
        if (i < ps.size() && ps[i] == ps[i - 1]) {
          ++run;
        } else {
          for (long long j = 2; j <= run; ++j) cnt /= j;
          run = 1;
        }
      }
      orbit_size *= cnt;
    }
    const Rat share = coef / orbit_size;
    // nested next_permutation over groups
    std::function<void(int, Monomial)> emit = [&](int g, Monomial acc) {
      if (g == ngroups) {
        out.add_term(acc, share);
        return;
      }
      const EdgeGroup& grp = schema.groups[g];
      auto ps = dec[g].patterns;
      do {
        Monomial ext = acc;
        for (int e = 0; e < grp.multiplicity; ++e)
          for (auto [off, exp] : ps[e]) {
            Monomial one;
            one.factors.push_back(
                {schema.group_base(g) + e * grp.block_size() + off, exp});
            ext = mono_mul(ext, one);
          }
        emit(g + 1, ext);
      } while (std::next_permutation(ps.begin(), ps.end()));
      // ps was sorted on entry, so the loop covered every distinct arrangement
    };
    emit(0, fixed);
  }
  return out;
}

Poly random_invariant_polynomial(const InputSchema& schema, int max_degree,
                                 std::uint64_t seed) {
  Rng rng(seed);
  const int nslots = schema.slot_count();
  Poly p;
  const int nterms = static_cast<int>(rng.range(2, 5));
  for (int t = 0; t < nterms; ++t) {
    Rat coef = rng.range(1, 5) * (rng.below(2) ? 1 : -1);
    int deg = static_cast<int>(rng.range(0, max_degree));
    Monomial m;
    std::map<int, int> exps;
    for (int i = 0; i < deg; ++i) exps[static_cast<int>(rng.below(nslots))]++;
    for (auto [v, e] : exps) m.factors.push_back({v, e});
    p.add_term(m, coef);
  }
  return symmetrize(p, schema);
}

std::map<std::string, Poly> eval_symbolic_on_syn(const AdmissibleSystem& sys,
                                                 const Partition& p) {
  const Hypernetwork& n = sys.net();
  if (!p.covers(n)) throw Error("partition does not cover the vertex set");
  if (!p.refines_types(n)) throw Error("partition does not refine vertex types");
  const int C = p.colours();
  std::map<std::string, Poly> out;
  for (const auto& v : sys.layout().order) {
    const ResponseFunction& r = sys.responses().at(n.vertex(v).vtype);
    if (!r.polynomial()) throw Error("symbolic restriction needs polynomial responses");
    if (r.schema.self_dim != 1)
      throw Error("symbolic restriction needs one-dimensional vertices");
    std::vector<int> to_colour(r.schema.slot_count());
    int k = 0;
    to_colour[k++] = p.colour_of(v) - 1;
    for (const Hyperedge* h : n.in_edges(v))
      for (const auto& src : h->sources) to_colour[k++] = p.colour_of(src) - 1;
    if (k != r.schema.slot_count())
      throw Error("symbolic restriction needs one-dimensional vertices");
    const int lam = r.schema.lambda_var();
    out[v] = r.polys[0].rename([&](int var) { return var == lam ? C : to_colour[var]; });
  }
  return out;
}

namespace {

double h58(double u) { return std::sin(u) + std::cos(u) - 1.0; }

int require_group(const InputSchema& s, const std::string& etype, int order, int mult) {
  for (int g = 0; g < static_cast<int>(s.groups.size()); ++g) {
    const EdgeGroup& grp = s.groups[g];
    if (grp.etype != etype) continue;
    if (grp.order != order || grp.multiplicity != mult) break;
    for (int d : grp.source_dims)
      if (d != 1) return -1;
    return g;
  }
  return -1;
}

}  // namespace

std::map<std::string, ResponseFunction> builtin_responses(const std::string& name,
                                                          const Hypernetwork& n) {
  if (name != "example58") throw Error("unknown builtin response library: " + name);
  std::set<std::string> vtypes;
  for (const auto& [v, info] : n.vertices) vtypes.insert(info.vtype);
  std::map<std::string, ResponseFunction> out;
  for (const auto& t : vtypes) {
    InputSchema s = schema_for(n, t);
    if (s.self_dim != 1) throw Error("example58 needs one-dimensional vertices");
    int g_self = require_group(s, "vself", 1, 1);
    int g_lg = require_group(s, "lg", 1, 1);
    int g_dg = require_group(s, "dg", 1, 1);
    int g_wself = require_group(s, "wself", 1, 1);
    int g_agg = require_group(s, "agg", 2, 3);
    if (g_self >= 0 && g_lg >= 0 && g_dg >= 0 && static_cast<int>(s.groups.size()) == 3) {
      const int x0 = s.edge_slot(g_self, 0, 0, 0);
      const int x1 = s.edge_slot(g_lg, 0, 0, 0);
      const int x2 = s.edge_slot(g_dg, 0, 0, 0);
      ResponseFunction r;
      r.schema = s;
      r.builtin_name = "example58.G";
      r.builtin = [x0, x1, x2](const std::vector<double>& in, double lam, double* out_) {
        out_[0] = -in[x0] + in[x1] - in[x2] + 8 * lam * in[x0] + 4 * in[x0] * in[x0];
      };
      out[t] = std::move(r);
    } else if (g_wself >= 0 && g_agg >= 0 && static_cast<int>(s.groups.size()) == 2) {
      const int y = s.edge_slot(g_wself, 0, 0, 0);
      int a[3], b[3];
      for (int e = 0; e < 3; ++e) {
        a[e] = s.edge_slot(g_agg, e, 0, 0);
        b[e] = s.edge_slot(g_agg, e, 1, 0);
      }
      ResponseFunction r;
      r.schema = s;
      r.builtin_name = "example58.F";
      r.builtin = [y, a0 = a[0], a1 = a[1], a2 = a[2], b0 = b[0], b1 = b[1],
                   b2 = b[2]](const std::vector<double>& in, double lam, double* out_) {
        out_[0] = -5 * in[y] + 14 * lam - h58(10 * in[a0] - 12 * in[b0]) -
                  h58(10 * in[a1] - 12 * in[b1]) - h58(10 * in[a2] - 12 * in[b2]);
      };
      out[t] = std::move(r);
    } else {
      throw Error("example58 does not fit vertex type " + t);
    }
  }
  return out;
}

}  // namespace hynet
