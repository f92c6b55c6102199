#include "hynet/partition.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace hynet {

Partition::Partition(std::vector<std::vector<std::string>> classes)
    : classes_(std::move(classes)) {
  for (auto& cls : classes_) {
    if (cls.empty()) throw Error("empty partition class");
    std::sort(cls.begin(), cls.end());
    if (std::adjacent_find(cls.begin(), cls.end()) != cls.end())
      throw Error("repeated vertex in partition class");
  }
  std::sort(classes_.begin(), classes_.end());
  for (int c = 0; c < static_cast<int>(classes_.size()); ++c)
    for (const auto& v : classes_[c]) {
      if (!colour_.insert({v, c + 1}).second)
        throw Error("vertex " + v + " appears in two partition classes");
    }
}

Partition Partition::singletons(const Hypernetwork& n) {
  std::vector<std::vector<std::string>> cls;
  for (const auto& v : n.vertex_ids()) cls.push_back({v});
  return Partition(std::move(cls));
}

int Partition::colour_of(const std::string& v) const {
  auto it = colour_.find(v);
  if (it == colour_.end()) throw Error("vertex " + v + " not covered by partition");
  return it->second;
}

bool Partition::covers(const Hypernetwork& n) const {
  if (colour_.size() != n.vertices.size()) return false;
  for (const auto& [v, info] : n.vertices)
    if (!colour_.count(v)) return false;
  return true;
}

bool Partition::refines_types(const Hypernetwork& n) const {
  for (const auto& cls : classes_) {
    const std::string& t0 = n.vertex(cls[0]).vtype;
    for (const auto& v : cls)
      if (n.vertex(v).vtype != t0) return false;
  }
  return true;
}

Partition parse_partition(const std::string& text) {
  std::vector<std::vector<std::string>> classes;
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = text.find('|', start);
    std::istringstream is(
        text.substr(start, bar == std::string::npos ? bar : bar - start));
    std::vector<std::string> cur;
    std::string tok;
    while (is >> tok) cur.push_back(tok);
    if (cur.empty()) throw Error("empty partition class in: " + text);
    classes.push_back(std::move(cur));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return Partition(std::move(classes));
}

std::string format_partition(const Partition& p) {
  std::string out;
  for (std::size_t c = 0; c < p.classes().size(); ++c) {
    if (c) out += " | ";
    const auto& cls = p.classes()[c];
    for (std::size_t i = 0; i < cls.size(); ++i) {
      if (i) out += " ";
      out += cls[i];
    }
  }
  return out;
}

Signature signature(const Hyperedge& h, const Partition& p) {
  Signature sig;
  sig.reserve(h.sources.size());
  for (const auto& s : h.sources) sig.push_back(p.colour_of(s));
  return sig;
}

std::map<std::string, VertexCensus> census(const Hypernetwork& n, const Partition& p) {
  if (!p.covers(n)) throw Error("partition does not cover the vertex set");
  std::map<std::string, VertexCensus> out;
  for (const auto& [v, info] : n.vertices) out[v];
  for (const auto& h : n.hyperedges) out[h.target].counts[{h.etype, signature(h, p)}]++;
  return out;
}

BalanceCertificate is_balanced(const Hypernetwork& n, const Partition& p) {
  BalanceCertificate cert;
  if (!p.covers(n)) throw Error("partition does not cover the vertex set");
  if (!p.refines_types(n)) {
    cert.refines = false;
    cert.balanced = false;
    return cert;
  }
  auto cen = census(n, p);
  for (const auto& cls : p.classes()) {
    const std::string& rep = cls[0];
    for (std::size_t i = 1; i < cls.size(); ++i) {
      if (cen[rep] == cen[cls[i]]) continue;
      // locate a distinguishing (etype, signature)
      Mismatch mm;
      mm.colour = p.colour_of(rep);
      mm.v1 = rep;
      mm.v2 = cls[i];
      const auto& a = cen[rep].counts;
      const auto& b = cen[cls[i]].counts;
      for (const auto& [key, cnt] : a) {
        auto it = b.find(key);
        if (it == b.end() || it->second != cnt) {
          mm.etype = key.first;
          mm.sig = key.second;
          break;
        }
      }
      if (mm.etype.empty())
        for (const auto& [key, cnt] : b)
          if (!a.count(key)) {
            mm.etype = key.first;
            mm.sig = key.second;
            break;
          }
      cert.mismatch = mm;
      cert.balanced = false;
      return cert;
    }
  }
  cert.balanced = true;
  // Assemble bijections by matching (etype, signature) buckets in id order.
  for (const auto& cls : p.classes()) {
    const std::string& rep = cls[0];
    std::map<std::pair<std::string, Signature>, std::vector<std::string>> rep_buckets;
    for (const Hyperedge* h : n.in_edges(rep))
      rep_buckets[{h->etype, signature(*h, p)}].push_back(h->id);
    for (std::size_t i = 1; i < cls.size(); ++i) {
      std::map<std::pair<std::string, Signature>, std::vector<std::string>> buckets;
      for (const Hyperedge* h : n.in_edges(cls[i]))
        buckets[{h->etype, signature(*h, p)}].push_back(h->id);
      auto& amap = cert.alpha[cls[i]];
      for (const auto& [key, ids] : rep_buckets) {
        const auto& other = buckets[key];
        for (std::size_t j = 0; j < ids.size(); ++j) amap[ids[j]] = other[j];
      }
    }
  }
  return cert;
}

namespace {

bool pair_bijection_exists(const Hypernetwork& n, const Partition& p, const std::string& v1,
                           const std::string& v2) {
  auto in1 = n.in_edges(v1);
  auto in2 = n.in_edges(v2);
  if (in1.size() != in2.size()) return false;
  std::vector<bool> used(in2.size(), false);
  // backtracking match
  std::function<bool(std::size_t)> match = [&](std::size_t i) -> bool {
    if (i == in1.size()) return true;
    const Hyperedge* a = in1[i];
    for (std::size_t j = 0; j < in2.size(); ++j) {
      if (used[j]) continue;
      const Hyperedge* b = in2[j];
      if (a->etype != b->etype) continue;
      if (a->order() != b->order()) continue;
      bool ok = true;
      for (int k = 0; k < a->order(); ++k)
        if (p.colour_of(a->sources[k]) != p.colour_of(b->sources[k])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      used[j] = true;
      if (match(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return match(0);
}

}  // namespace

bool is_balanced_oracle(const Hypernetwork& n, const Partition& p) {
  if (!p.covers(n)) throw Error("partition does not cover the vertex set");
  if (!p.refines_types(n)) return false;
  for (const auto& cls : p.classes())
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (std::size_t j = i + 1; j < cls.size(); ++j)
        if (!pair_bijection_exists(n, p, cls[i], cls[j])) return false;
  return true;
}

std::vector<Partition> refining_partitions(const Hypernetwork& n, int max_vertices) {
  auto ids = n.vertex_ids();
  if (static_cast<int>(ids.size()) > max_vertices)
    throw Error("vertex count " + std::to_string(ids.size()) + " exceeds enumeration bound " +
                std::to_string(max_vertices));
  std::vector<Partition> out;
  if (ids.empty()) {
    out.push_back(Partition(std::vector<std::vector<std::string>>{}));
    return out;
  }
  // restricted growth strings; a vertex may only join a class of its own type
  std::vector<int> assign(ids.size(), 0);
  std::vector<std::string> class_type;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == ids.size()) {
      int c = static_cast<int>(class_type.size());
      std::vector<std::vector<std::string>> classes(c);
      for (std::size_t k = 0; k < ids.size(); ++k) classes[assign[k]].push_back(ids[k]);
      out.push_back(Partition(std::move(classes)));
      return;
    }
    const std::string& t = n.vertex(ids[i]).vtype;
    for (std::size_t c = 0; c < class_type.size(); ++c) {
      if (class_type[c] != t) continue;
      assign[i] = static_cast<int>(c);
      rec(i + 1);
    }
    class_type.push_back(t);
    assign[i] = static_cast<int>(class_type.size()) - 1;
    rec(i + 1);
    class_type.pop_back();
  };
  rec(0);
  return out;
}

std::vector<Partition> enumerate_balanced(const Hypernetwork& n, int max_vertices) {
  std::vector<Partition> out;
  for (auto& p : refining_partitions(n, max_vertices))
    if (is_balanced(n, p).balanced) out.push_back(std::move(p));
  std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    if (a.colours() != b.colours()) return a.colours() < b.colours();
    return format_partition(a) < format_partition(b);
  });
  return out;
}

}  // namespace hynet
