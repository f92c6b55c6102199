#include "hynet/model.hpp"

#include <algorithm>
#include <sstream>

namespace hynet {

int Hypernetwork::order() const {
  int m = 0;
  for (const auto& h : hyperedges) m = std::max(m, h.order());
  return m;
}

const VertexInfo& Hypernetwork::vertex(const std::string& id) const {
  auto it = vertices.find(id);
  if (it == vertices.end()) throw Error("unknown vertex: " + id);
  return it->second;
}

bool Hypernetwork::has_edge(const std::string& id) const {
  return edge_index_.count(id) > 0;
}

const Hyperedge& Hypernetwork::edge(const std::string& id) const {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end()) throw Error("unknown hyperedge: " + id);
  return hyperedges[it->second];
}

std::vector<std::string> Hypernetwork::vertex_ids() const {
  std::vector<std::string> ids;
  ids.reserve(vertices.size());
  for (const auto& [id, info] : vertices) ids.push_back(id);
  return ids;
}

std::vector<const Hyperedge*> Hypernetwork::in_edges(const std::string& v) const {
  std::vector<const Hyperedge*> out;
  auto it = in_index_.find(v);
  if (it == in_index_.end()) return out;
  out.reserve(it->second.size());
  for (std::size_t i : it->second) out.push_back(&hyperedges[i]);
  return out;
}

void Hypernetwork::rebuild_index() {
  edge_index_.clear();
  in_index_.clear();
  std::vector<std::size_t> idx(hyperedges.size());
  for (std::size_t i = 0; i < hyperedges.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const Hyperedge& x = hyperedges[a];
    const Hyperedge& y = hyperedges[b];
    if (x.etype != y.etype) return x.etype < y.etype;
    return x.id < y.id;
  });
  for (std::size_t i : idx) {
    edge_index_[hyperedges[i].id] = i;
    in_index_[hyperedges[i].target].push_back(i);
  }
}

namespace {

std::string join_types(const Hypernetwork& n, const std::vector<std::string>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ",";
    out += n.vertex(vs[i]).vtype;
  }
  return out;
}

}  // namespace

std::vector<Violation> validate(const Hypernetwork& n) {
  std::vector<Violation> out;

  std::set<std::string> edge_ids;
  for (const auto& h : n.hyperedges) {
    if (!edge_ids.insert(h.id).second)
      out.push_back({0, "duplicate hyperedge id " + h.id});
    if (h.sources.empty())
      out.push_back({0, "hyperedge " + h.id + " has no sources"});
    if (!n.has_vertex(h.target))
      out.push_back({0, "hyperedge " + h.id + " targets unknown vertex " + h.target});
    for (const auto& s : h.sources)
      if (!n.has_vertex(s))
        out.push_back({0, "hyperedge " + h.id + " references unknown source " + s});
  }
  if (!out.empty()) return out;  // type checks assume sound references

  // Condition 1: same-type hyperedges agree in order, source vertex types
  // (componentwise) and target vertex type.
  std::map<std::string, const Hyperedge*> first_of_type;
  for (const auto& h : n.hyperedges) {
    auto [it, fresh] = first_of_type.insert({h.etype, &h});
    if (fresh) continue;
    const Hyperedge& g = *it->second;
    if (g.order() != h.order()) {
      out.push_back({1, "hyperedges " + g.id + " and " + h.id + " of type " + h.etype +
                            " have orders " + std::to_string(g.order()) + " and " +
                            std::to_string(h.order())});
      continue;
    }
    for (int j = 0; j < h.order(); ++j) {
      if (n.vertex(g.sources[j]).vtype != n.vertex(h.sources[j]).vtype) {
        out.push_back({1, "hyperedges " + g.id + " and " + h.id + " of type " + h.etype +
                              " have source vertex types (" + join_types(n, g.sources) +
                              ") and (" + join_types(n, h.sources) + ")"});
        break;
      }
    }
    if (n.vertex(g.target).vtype != n.vertex(h.target).vtype)
      out.push_back({1, "hyperedges " + g.id + " and " + h.id + " of type " + h.etype +
                            " target vertex types " + n.vertex(g.target).vtype + " and " +
                            n.vertex(h.target).vtype});
  }

  // Condition 2: same-type vertices have identical in-edge type multisets,
  // and identical dim.
  std::map<std::string, std::string> first_of_vtype;
  auto in_multiset = [&](const std::string& v) {
    std::multiset<std::string> ms;
    for (const Hyperedge* h : n.in_edges(v)) ms.insert(h->etype);
    return ms;
  };
  for (const auto& [vid, info] : n.vertices) {
    auto [it, fresh] = first_of_vtype.insert({info.vtype, vid});
    if (fresh) continue;
    const std::string& ref = it->second;
    if (in_multiset(ref) != in_multiset(vid))
      out.push_back({2, "vertices " + ref + " and " + vid + " of type " + info.vtype +
                            " have different in-hyperedge type multisets"});
    if (n.vertex(ref).dim != info.dim)
      out.push_back({2, "vertices " + ref + " and " + vid + " of type " + info.vtype +
                            " have dims " + std::to_string(n.vertex(ref).dim) + " and " +
                            std::to_string(info.dim)});
  }
  return out;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) {
    if (t[0] == '#') break;
    toks.push_back(t);
  }
  return toks;
}

}  // namespace

Hypernetwork parse_unchecked(const std::string& text) {
  Hypernetwork n;
  bool saw_header = false;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "hypernet") {
      if (saw_header) throw ParseError(lineno, "duplicate hypernet line");
      if (toks.size() != 2) throw ParseError(lineno, "expected: hypernet <name>");
      n.name = toks[1];
      saw_header = true;
    } else if (kw == "vertex") {
      if (toks.size() != 4 && toks.size() != 6)
        throw ParseError(lineno, "expected: vertex <id> type <vtype> [dim <n>]");
      if (toks[2] != "type") throw ParseError(lineno, "expected 'type' after vertex id");
      VertexInfo info;
      info.vtype = toks[3];
      if (toks.size() == 6) {
        if (toks[4] != "dim") throw ParseError(lineno, "expected 'dim'");
        try {
          info.dim = std::stoi(toks[5]);
        } catch (const std::exception&) {
          throw ParseError(lineno, "bad dim: " + toks[5]);
        }
        if (info.dim < 1) throw ParseError(lineno, "dim must be positive");
      }
      if (!n.vertices.insert({toks[1], info}).second)
        throw ParseError(lineno, "duplicate vertex id " + toks[1]);
    } else if (kw == "edge") {
      if (toks.size() < 8 || toks[2] != "type" || toks[4] != "target" || toks[6] != "sources")
        throw ParseError(lineno,
                         "expected: edge <id> type <etype> target <vid> sources <vid> [...]");
      Hyperedge h;
      h.id = toks[1];
      h.etype = toks[3];
      h.target = toks[5];
      h.sources.assign(toks.begin() + 7, toks.end());
      n.hyperedges.push_back(std::move(h));
    } else {
      throw ParseError(lineno, "unknown directive: " + kw);
    }
  }
  n.rebuild_index();
  return n;
}

Hypernetwork parse(const std::string& text) {
  Hypernetwork n = parse_unchecked(text);
  auto violations = validate(n);
  if (!violations.empty()) {
    std::string msg = "invalid hypernetwork:";
    for (const auto& v : violations)
      msg += "\n  condition " + std::to_string(v.condition) + ": " + v.message;
    throw Error(msg);
  }
  return n;
}

Hypernetwork parse_file(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw Error("cannot open " + path);
  std::string text;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, got);
  std::fclose(f);
  return parse(text);
}

std::string serialize(const Hypernetwork& n) {
  std::ostringstream os;
  if (!n.name.empty()) os << "hypernet " << n.name << "\n";
  for (const auto& [id, info] : n.vertices) {
    os << "vertex " << id << " type " << info.vtype;
    if (info.dim != 1) os << " dim " << info.dim;
    os << "\n";
  }
  std::vector<const Hyperedge*> hs;
  hs.reserve(n.hyperedges.size());
  for (const auto& h : n.hyperedges) hs.push_back(&h);
  std::sort(hs.begin(), hs.end(),
            [](const Hyperedge* a, const Hyperedge* b) { return a->id < b->id; });
  for (const Hyperedge* h : hs) {
    os << "edge " << h->id << " type " << h->etype << " target " << h->target << " sources";
    for (const auto& s : h->sources) os << " " << s;
    os << "\n";
  }
  return os.str();
}

Hypernetwork sub_hypernetwork(const Hypernetwork& n, const std::set<std::string>& keep) {
  Hypernetwork out;
  out.name = n.name + "_sub";
  for (const auto& v : keep) out.vertices[v] = n.vertex(v);
  for (const auto& h : n.hyperedges) {
    if (!keep.count(h.target)) continue;
    for (const auto& s : h.sources)
      if (!keep.count(s))
        throw Error("hyperedge " + h.id + " targets the restriction but has source " + s +
                    " outside it");
    out.hyperedges.push_back(h);
  }
  out.rebuild_index();
  return out;
}

std::vector<Hyperedge> expand_undirected(const std::vector<std::string>& verts,
                                         const std::string& etype) {
  const int m = static_cast<int>(verts.size());
  if (m < 2) throw Error("undirected expansion needs at least 2 vertices");
  std::vector<Hyperedge> out;
  std::vector<int> tuple(m - 1, 0);
  for (int t = 0; t < m; ++t) {
    std::fill(tuple.begin(), tuple.end(), 0);
    while (true) {
      Hyperedge h;
      h.etype = etype;
      h.target = verts[t];
      h.id = etype + "_" + std::to_string(t);
      for (int j = 0; j < m - 1; ++j) {
        h.id += "_" + std::to_string(tuple[j]);
        h.sources.push_back(verts[tuple[j]]);
      }
      out.push_back(std::move(h));
      int j = m - 2;
      while (j >= 0 && tuple[j] == m - 1) tuple[j--] = 0;
      if (j < 0) break;
      ++tuple[j];
    }
  }
  return out;
}

StateLayout::StateLayout(const Hypernetwork& n) {
  order = n.vertex_ids();
  for (const auto& v : order) {
    offset[v] = total;
    dim[v] = n.vertex(v).dim;
    total += n.vertex(v).dim;
  }
}

}  // namespace hynet
