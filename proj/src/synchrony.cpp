#include "hynet/synchrony.hpp"

#include <algorithm>

#include "hynet/augment.hpp"
#include "hynet/rng.hpp"

namespace hynet {

SeqOrder seq_compare(const Signature& a, const Signature& b, int colours) {
  if (a.size() != b.size()) throw Error("signatures of different length");
  std::vector<int> ca(colours + 1, 0), cb(colours + 1, 0);
  for (int c : a) {
    if (c < 1 || c > colours) throw Error("colour out of range");
    ca[c]++;
  }
  for (int c : b) {
    if (c < 1 || c > colours) throw Error("colour out of range");
    cb[c]++;
  }
  for (int c = colours; c >= 2; --c) {
    if (ca[c] > cb[c]) return SeqOrder::AGreater;
    if (ca[c] < cb[c]) return SeqOrder::BGreater;
  }
  return a == b ? SeqOrder::Equal : SeqOrder::Incomparable;
}

Poly monomial(const MonomialSpec& spec) {
  const int m = static_cast<int>(spec.a.size());
  if (spec.sigma.size() != m) throw Error("permutation size does not match signature length");
  Poly p = Poly::constant(1);
  for (int i = 0; i < m; ++i) p = p * Poly::variable(spec.a[i] - 1, spec.sigma(i) + 1);
  return p;
}

Perm attune(const Signature& a) {
  const int m = static_cast<int>(a.size());
  std::vector<int> img(m, -1);
  int next = m;  // next value to hand out, descending
  int maxc = 0;
  for (int c : a) maxc = std::max(maxc, c);
  for (int c = maxc; c >= 1; --c)
    for (int i = 0; i < m; ++i)
      if (a[i] == c) img[i] = --next + 1;
  // img holds values in 1..m; store 0-based
  for (int& v : img) v -= 1;
  return Perm(std::move(img));
}

bool is_attuned(const Perm& tau, const Signature& a) {
  const int m = static_cast<int>(a.size());
  if (tau.size() != m) return false;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (a[i] > a[j] && tau(i) < tau(j)) return false;
  return true;
}

AdmissibleSystem witness_response(const Hypernetwork& n, const std::string& etype,
                                  const Perm& sigma) {
  const Hyperedge* sample = nullptr;
  for (const auto& h : n.hyperedges)
    if (h.etype == etype) {
      sample = &h;
      break;
    }
  if (!sample) throw Error("unknown hyperedge type: " + etype);
  if (sigma.size() != sample->order())
    throw Error("permutation size does not match hyperedge order");
  const std::string target_type = n.vertex(sample->target).vtype;

  std::set<std::string> vtypes;
  for (const auto& [v, info] : n.vertices) vtypes.insert(info.vtype);
  std::map<std::string, ResponseFunction> responses;
  for (const auto& t : vtypes) {
    InputSchema s = schema_for(n, t);
    std::vector<Poly> comps(s.self_dim);
    if (t == target_type) {
      for (int g = 0; g < static_cast<int>(s.groups.size()); ++g) {
        if (s.groups[g].etype != etype) continue;
        for (int e = 0; e < s.groups[g].multiplicity; ++e) {
          Poly prod = Poly::constant(1);
          for (int pos = 0; pos < s.groups[g].order; ++pos)
            prod = prod * Poly::variable(s.edge_slot(g, e, pos, 0), sigma(pos) + 1);
          comps[0] += prod;
        }
      }
    }
    responses[t] = ResponseFunction::from_polys(std::move(s), std::move(comps));
  }
  return AdmissibleSystem(n, std::move(responses));
}

std::vector<long long> primes_point(int colours) {
  static const long long primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                     23, 29, 31, 37, 41, 43, 47, 53};
  if (colours > static_cast<int>(std::size(primes)))
    throw Error("too many colours for the primes point");
  return {primes, primes + colours};
}

namespace {

Rat eval_at_colours(const Poly& f, const std::vector<long long>& z) {
  return f.eval<Rat>([&](int var) {
    if (var < static_cast<int>(z.size())) return Rat(z[var]);
    return Rat(0);  // parameter and any colour beyond the point
  });
}

// Exact integer point where f != g: the primes point, then a small grid, then
// random integers.
std::optional<std::vector<long long>> separating_point(const Poly& f, const Poly& g, int colours) {
  auto differs = [&](const std::vector<long long>& z) {
    return eval_at_colours(f, z) != eval_at_colours(g, z);
  };
  auto z = primes_point(colours);
  if (differs(z)) return z;
  std::vector<long long> grid(colours, 0);
  while (true) {
    if (differs(grid)) return grid;
    int i = colours - 1;
    while (i >= 0 && grid[i] == 4) grid[i--] = 0;
    if (i < 0) break;
    ++grid[i];
  }
  Rng rng(0xbead);
  for (int tries = 0; tries < 1000; ++tries) {
    for (auto& v : z) v = rng.range(-1000000, 1000000);
    if (differs(z)) return z;
  }
  return std::nullopt;
}

// All (etype, per-class symbolic disagreement) for one sigma; returns the
// first disagreeing pair or nothing.
struct Disagreement {
  std::string v1, v2;
  Poly f1, f2;
};

std::optional<Disagreement> symbolic_disagreement(const Hypernetwork& n, const Partition& p,
                                                  const std::string& etype, const Perm& sigma) {
  auto sys = witness_response(n, etype, sigma);
  auto polys = eval_symbolic_on_syn(sys, p);
  for (const auto& cls : p.classes()) {
    for (std::size_t i = 1; i < cls.size(); ++i)
      if (!(polys.at(cls[0]) == polys.at(cls[i])))
        return Disagreement{cls[0], cls[i], polys.at(cls[0]), polys.at(cls[i])};
  }
  return std::nullopt;
}

}  // namespace

std::optional<Witness> find_breaking_witness(const Hypernetwork& n, const Partition& p) {
  if (!p.refines_types(n)) throw Error("partition does not refine vertex types");
  if (is_balanced(n, p).balanced) return std::nullopt;
  std::set<std::string> etypes;
  for (const auto& h : n.hyperedges) etypes.insert(h.etype);
  for (const auto& etype : etypes) {
    int m = 0;
    for (const auto& h : n.hyperedges)
      if (h.etype == etype) {
        m = h.order();
        break;
      }
    for (const Perm& sigma : Perm::all(m)) {
      auto dis = symbolic_disagreement(n, p, etype, sigma);
      if (!dis) continue;
      auto z = separating_point(dis->f1, dis->f2, p.colours());
      if (!z) continue;
      Witness w;
      w.etype = etype;
      w.sigma = sigma;
      w.point = *z;
      w.v1 = dis->v1;
      w.v2 = dis->v2;
      return w;
    }
  }
  throw Error("unbalanced partition without a separating witness response");
}

RobustnessVerdict robust_verdict(const Hypernetwork& n, const Partition& p,
                                 std::uint64_t seed, int degree_cap, int random_probes) {
  RobustnessVerdict v;
  const int k = n.order();
  v.degree_cap = degree_cap < 0 ? k * (k + 1) / 2 : degree_cap;
  v.balanced = is_balanced(n, p).balanced;
  v.witness = find_breaking_witness(n, p);
  if (v.balanced != !v.witness)
    throw Error("balanced check and witness search disagree");

  bool ok = true;
  // the deterministic family: every witness response below the cap
  std::set<std::string> etypes;
  for (const auto& h : n.hyperedges) etypes.insert(h.etype);
  for (const auto& etype : etypes) {
    int m = 0;
    for (const auto& h : n.hyperedges)
      if (h.etype == etype) {
        m = h.order();
        break;
      }
    if (m * (m + 1) / 2 > v.degree_cap) continue;
    for (const Perm& sigma : Perm::all(m))
      if (symbolic_disagreement(n, p, etype, sigma)) {
        ok = false;
        break;
      }
    if (!ok) break;
  }
  // random invariant polynomial systems, compared exactly on Syn_P
  std::set<std::string> vtypes;
  for (const auto& [vid, info] : n.vertices) vtypes.insert(info.vtype);
  for (int probe = 0; ok && probe < random_probes; ++probe) {
    std::map<std::string, ResponseFunction> responses;
    std::uint64_t s = seed * 1000003 + probe;
    int ti = 0;
    for (const auto& t : vtypes)
      responses[t] = ResponseFunction::from_poly(
          schema_for(n, t),
          random_invariant_polynomial(schema_for(n, t), v.degree_cap, s + 7919 * ti++));
    AdmissibleSystem sys(n, std::move(responses));
    auto polys = eval_symbolic_on_syn(sys, p);
    for (const auto& cls : p.classes())
      for (std::size_t i = 1; ok && i < cls.size(); ++i)
        if (!(polys.at(cls[0]) == polys.at(cls[i]))) ok = false;
  }
  v.invariant_under_low_degree = ok;
  if (v.degree_cap >= k * (k + 1) / 2 && v.invariant_under_low_degree != v.balanced)
    throw Error("invariance probes contradict the balanced verdict at full degree");
  return v;
}

ResponseFunction power_sum(int k) {
  if (k < 2) throw Error("power sum needs k >= 2");
  Hypernetwork aug = augment({disconnected_core(k + 1), disconnected_core(k + 1).vertex_ids()});
  InputSchema s = schema_for(aug, "square");
  Poly body;
  for (int g = 0; g < static_cast<int>(s.groups.size()); ++g) {
    if (s.groups[g].etype != "agg") continue;
    for (int e = 0; e < s.groups[g].multiplicity; ++e) {
      Poly prod = Poly::constant(1);
      for (int pos = 0; pos < k; ++pos)
        prod = prod * Poly::variable(s.edge_slot(g, e, pos, 0), pos + 1);
      body += prod;
    }
  }
  return ResponseFunction::from_poly(std::move(s), std::move(body));
}

namespace {

// Slot -> variable maps for the two w vertices of the canonical augmented
// hypernetwork: agg slots go to the source node index, self and wself to
// var k+1, the parameter to var k+2.
std::vector<int> w_slot_vars(const Hypernetwork& aug, const InputSchema& s,
                             const std::string& w, int k) {
  std::vector<int> map(s.slot_count() + 1);
  int slot = 0;
  for (int c = 0; c < s.self_dim; ++c) map[slot++] = k + 1;
  auto ins = aug.in_edges(w);
  std::size_t e = 0;
  for (const auto& g : s.groups)
    for (int i = 0; i < g.multiplicity; ++i, ++e) {
      const Hyperedge* h = ins[e];
      for (const auto& src : h->sources) {
        if (h->etype == "agg")
          map[slot++] = std::stoi(src.substr(1));
        else
          map[slot++] = k + 1;
      }
    }
  map[s.lambda_var()] = k + 2;
  return map;
}

}  // namespace

Poly even_odd_difference(const Poly& q, int k) {
  if (k < 2) throw Error("needs k >= 2");
  Hypernetwork aug = augment({disconnected_core(k + 1), disconnected_core(k + 1).vertex_ids()});
  InputSchema s = schema_for(aug, "square");
  for (const auto& [m, c] : q.terms())
    for (auto [var, e] : m.factors)
      if (var < 0 || var > s.lambda_var()) throw Error("polynomial is not over the schema");
  auto even_map = w_slot_vars(aug, s, "w0", k);
  auto odd_map = w_slot_vars(aug, s, "w1", k);
  Poly even = q.rename([&](int var) { return even_map.at(var); });
  Poly odd = q.rename([&](int var) { return odd_map.at(var); });
  return even - odd;
}

Poly vandermonde(int k) {
  Poly v = Poly::constant(1);
  for (int i = 1; i <= k; ++i)
    for (int j = 0; j < i; ++j) v = v * (Poly::variable(i) - Poly::variable(j));
  return v;
}

Poly vandermonde_quotient(const Poly& q, int k) {
  Poly cur = even_odd_difference(q, k);
  for (int i = 1; i <= k; ++i)
    for (int j = 0; j < i; ++j) {
      auto [quot, rem] = cur.divide_linear(i, j);
      if (!rem.is_zero())
        throw Error("nonzero remainder dividing by the difference of nodes " +
                    std::to_string(i) + " and " + std::to_string(j) +
                    "; the response is not block-invariant");
      cur = quot;
    }
  return cur;
}

bool check_ghost_symmetry(const AdmissibleSystem& sys, const std::string& w0,
                          const std::string& w1, int npoints, double tol,
                          std::uint64_t seed) {
  const StateLayout& l = sys.layout();
  if (l.dim.at(w0) != l.dim.at(w1)) throw Error("w blocks have different dimensions");
  const int d = l.dim.at(w0);
  const int o0 = l.offset.at(w0), o1 = l.offset.at(w1);
  Rng rng(seed);
  auto swap_blocks = [&](auto x) {
    for (int c = 0; c < d; ++c) std::swap(x[o0 + c], x[o1 + c]);
    return x;
  };
  if (sys.polynomial()) {
    for (int i = 0; i < npoints; ++i) {
      std::vector<Rat> x(l.total);
      for (auto& c : x) c = Rat(rng.range(-10, 10), 1 + rng.below(4));
      Rat lambda = Rat(rng.range(-10, 10), 100);
      auto lhs = sys.eval_rat(swap_blocks(x), lambda);
      auto rhs = swap_blocks(sys.eval_rat(x, lambda));
      if (lhs != rhs) return false;
    }
    return true;
  }
  for (int i = 0; i < npoints; ++i) {
    std::vector<double> x(l.total);
    for (auto& c : x) c = rng.uniform(-1.0, 1.0);
    double lambda = rng.uniform(-0.03, 0.03);
    auto lhs = sys.eval(swap_blocks(x), lambda);
    auto rhs = swap_blocks(sys.eval(x, lambda));
    for (std::size_t j = 0; j < lhs.size(); ++j)
      if (std::abs(lhs[j] - rhs[j]) > tol) return false;
  }
  return true;
}

}  // namespace hynet
