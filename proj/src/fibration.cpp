#include "hynet/fibration.hpp"

#include <algorithm>
#include <sstream>

#include "hynet/rng.hpp"

namespace hynet {

std::vector<ConditionReport> check_fibration(const Hypernetwork& n, const Hypernetwork& np,
                                             const FibrationMap& phi) {
  std::vector<ConditionReport> rep(6);
  for (int i = 0; i < 6; ++i) rep[i] = {i + 1, true, ""};
  auto fail = [&](int cond, const std::string& detail) {
    if (rep[cond - 1].pass) rep[cond - 1] = {cond, false, detail};
  };

  for (const auto& [v, info] : n.vertices) {
    auto it = phi.vmap.find(v);
    if (it == phi.vmap.end() || !np.has_vertex(it->second)) {
      fail(1, "vertex " + v + " has no image vertex");
      continue;
    }
    if (np.vertex(it->second).vtype != info.vtype)
      fail(3, "vertex " + v + " maps across vertex types to " + it->second);
  }
  for (const auto& h : n.hyperedges) {
    auto it = phi.hmap.find(h.id);
    if (it == phi.hmap.end() || !np.has_edge(it->second)) {
      fail(2, "hyperedge " + h.id + " has no image hyperedge");
      continue;
    }
    const Hyperedge& hp = np.edge(it->second);
    if (hp.etype != h.etype)
      fail(3, "hyperedge " + h.id + " maps across edge types to " + hp.id);
    if (hp.order() != h.order()) {
      fail(4, "hyperedge " + h.id + " of order " + std::to_string(h.order()) +
                  " maps to order " + std::to_string(hp.order()));
    } else {
      for (int j = 0; j < h.order(); ++j) {
        auto vit = phi.vmap.find(h.sources[j]);
        if (vit == phi.vmap.end() || hp.sources[j] != vit->second) {
          fail(4, "hyperedge " + h.id + " source " + std::to_string(j + 1) +
                      " is not compatible with the image sources");
          break;
        }
      }
    }
    auto tit = phi.vmap.find(h.target);
    if (tit == phi.vmap.end() || hp.target != tit->second)
      fail(5, "hyperedge " + h.id + " target does not map to the image target");
  }
  // condition 6 only meaningful once images exist
  if (rep[0].pass && rep[1].pass) {
    for (const auto& [v, info] : n.vertices) {
      const std::string& vp = phi.vmap.at(v);
      auto ins = n.in_edges(v);
      auto ins_p = np.in_edges(vp);
      std::set<std::string> image;
      bool injective = true;
      for (const Hyperedge* h : ins) {
        const std::string& hp = phi.hmap.at(h->id);
        if (np.edge(hp).target != vp) {
          fail(6, "in-edge " + h->id + " of " + v + " maps outside the in-edges of " + vp);
          injective = false;
          break;
        }
        if (!image.insert(hp).second) {
          fail(6, "in-edges of " + v + " map non-injectively onto " + hp);
          injective = false;
          break;
        }
      }
      if (injective && image.size() != ins_p.size())
        fail(6, "in-edges of " + v + " do not cover the in-edges of " + vp);
    }
  }
  return rep;
}

bool is_fibration(const Hypernetwork& n, const Hypernetwork& np, const FibrationMap& phi) {
  for (const auto& r : check_fibration(n, np, phi))
    if (!r.pass) return false;
  return true;
}

QuotientResult quotient(const Hypernetwork& n, const Partition& p) {
  auto cert = is_balanced(n, p);
  if (!cert.refines) throw Error("partition does not refine vertex types");
  if (!cert.balanced) throw Error("partition is not balanced");

  QuotientResult res;
  res.quotient.name = n.name + "_quotient";
  for (const auto& cls : p.classes()) {
    const std::string& rep = cls[0];
    for (const auto& v : cls) {
      res.representative[v] = rep;
      res.phi.vmap[v] = rep;
    }
  }
  for (const auto& cls : p.classes()) {
    const std::string& rep = cls[0];
    res.quotient.vertices[rep] = n.vertex(rep);
    for (const Hyperedge* h : n.in_edges(rep)) {
      Hyperedge q;
      q.id = h->id;
      q.etype = h->etype;
      q.target = rep;
      for (const auto& src : h->sources) q.sources.push_back(res.representative.at(src));
      res.quotient.hyperedges.push_back(std::move(q));
      res.phi.hmap[h->id] = h->id;
    }
    for (std::size_t i = 1; i < cls.size(); ++i)
      for (const auto& [rep_edge, member_edge] : cert.alpha.at(cls[i]))
        res.phi.hmap[member_edge] = rep_edge;
  }
  res.quotient.rebuild_index();
  return res;
}

namespace {

template <class T>
std::vector<T> r_phi_impl(const Hypernetwork& n, const Hypernetwork& np,
                          const FibrationMap& phi, const std::vector<T>& y) {
  StateLayout ln(n), lp(np);
  if (static_cast<int>(y.size()) != lp.total) throw Error("state dimension mismatch");
  std::vector<T> x(ln.total);
  for (const auto& v : ln.order) {
    const std::string& vp = phi.vmap.at(v);
    const int d = ln.dim.at(v);
    if (d != lp.dim.at(vp)) throw Error("dimension mismatch between " + v + " and " + vp);
    for (int c = 0; c < d; ++c) x[ln.offset.at(v) + c] = y[lp.offset.at(vp) + c];
  }
  return x;
}

}  // namespace

std::vector<double> r_phi(const Hypernetwork& n, const Hypernetwork& np,
                          const FibrationMap& phi, const std::vector<double>& y) {
  return r_phi_impl(n, np, phi, y);
}

std::vector<Rat> r_phi_rat(const Hypernetwork& n, const Hypernetwork& np,
                           const FibrationMap& phi, const std::vector<Rat>& y) {
  return r_phi_impl(n, np, phi, y);
}

namespace {

void require_shared_library(const AdmissibleSystem& sys_n, const AdmissibleSystem& sys_np) {
  for (const auto& [t, r] : sys_np.responses()) {
    auto it = sys_n.responses().find(t);
    if (it == sys_n.responses().end()) continue;
    if (!(it->second.schema == r.schema))
      throw Error("response libraries disagree on vertex type " + t);
  }
}

}  // namespace

bool check_semiconjugacy(const AdmissibleSystem& sys_n, const AdmissibleSystem& sys_np,
                         const FibrationMap& phi, int npoints, double tol,
                         std::uint64_t seed) {
  require_shared_library(sys_n, sys_np);
  Rng rng(seed);
  StateLayout lp(sys_np.net());
  for (int k = 0; k < npoints; ++k) {
    std::vector<double> y(lp.total);
    for (auto& c : y) c = rng.uniform(-1.0, 1.0);
    double lambda = rng.uniform(-0.03, 0.03);
    auto lhs = r_phi(sys_n.net(), sys_np.net(), phi, sys_np.eval(y, lambda));
    auto rhs = sys_n.eval(r_phi(sys_n.net(), sys_np.net(), phi, y), lambda);
    for (std::size_t i = 0; i < lhs.size(); ++i)
      if (std::abs(lhs[i] - rhs[i]) > tol) return false;
  }
  return true;
}

bool check_semiconjugacy_exact(const AdmissibleSystem& sys_n, const AdmissibleSystem& sys_np,
                               const FibrationMap& phi, int npoints, std::uint64_t seed) {
  require_shared_library(sys_n, sys_np);
  Rng rng(seed);
  StateLayout lp(sys_np.net());
  for (int k = 0; k < npoints; ++k) {
    std::vector<Rat> y(lp.total);
    for (auto& c : y) c = Rat(rng.range(-20, 20), 1 + rng.below(5));
    Rat lambda = Rat(rng.range(-10, 10), 100);
    auto lhs = r_phi_rat(sys_n.net(), sys_np.net(), phi, sys_np.eval_rat(y, lambda));
    auto rhs = sys_n.eval_rat(r_phi_rat(sys_n.net(), sys_np.net(), phi, y), lambda);
    if (lhs != rhs) return false;
  }
  return true;
}

FibrationMap parse_mapfile(const std::string& text) {
  FibrationMap out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kind, from, arrow, to;
    if (!(ls >> kind)) continue;
    if (kind[0] == '#') continue;
    std::string extra;
    if (!(ls >> from >> arrow >> to) || arrow != "->" || (kind != "v" && kind != "h") ||
        (ls >> extra))
      throw ParseError(lineno, "expected: v|h <id> -> <id>");
    auto& m = kind == "v" ? out.vmap : out.hmap;
    if (!m.insert({from, to}).second) throw ParseError(lineno, "duplicate mapping for " + from);
  }
  return out;
}

std::string format_mapfile(const FibrationMap& phi) {
  std::ostringstream os;
  for (const auto& [a, b] : phi.vmap) os << "v " << a << " -> " << b << "\n";
  for (const auto& [a, b] : phi.hmap) os << "h " << a << " -> " << b << "\n";
  return os.str();
}

}  // namespace hynet
