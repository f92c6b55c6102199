#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hynet {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  int line;
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
};

struct VertexInfo {
  std::string vtype;
  int dim = 1;
};

struct Hyperedge {
  std::string id;
  std::string etype;
  std::string target;
  std::vector<std::string> sources;

  int order() const { return static_cast<int>(sources.size()); }
};

struct Violation {
  int condition;  // 0 = referential/id problem, 1 or 2 = type-consistency condition
  std::string message;
};

class Hypernetwork {
 public:
  std::string name = "net";
  std::map<std::string, VertexInfo> vertices;
  std::vector<Hyperedge> hyperedges;

  int order() const;
  bool has_vertex(const std::string& id) const { return vertices.count(id) > 0; }
  const VertexInfo& vertex(const std::string& id) const;
  const Hyperedge& edge(const std::string& id) const;
  bool has_edge(const std::string& id) const;

  // Vertex ids in lexicographic order; fixes state layout and all iteration orders.
  std::vector<std::string> vertex_ids() const;

  // In-edges of v sorted by (etype, id).
  std::vector<const Hyperedge*> in_edges(const std::string& v) const;

  void rebuild_index();

 private:
  std::map<std::string, std::size_t> edge_index_;
  std::map<std::string, std::vector<std::size_t>> in_index_;
};

std::vector<Violation> validate(const Hypernetwork& n);

// Throws ParseError on syntax problems and Error when the parsed structure
// violates a type-consistency condition.
Hypernetwork parse(const std::string& text);
Hypernetwork parse_file(const std::string& path);

// Syntax only; callers run validate themselves.
Hypernetwork parse_unchecked(const std::string& text);

std::string serialize(const Hypernetwork& n);

// Restriction to keep: all hyperedges targeting keep, which must have all
// sources inside keep.
Hypernetwork sub_hypernetwork(const Hypernetwork& n, const std::set<std::string>& keep);

// One hyperedge of order m-1 per (target in verts, ordered (m-1)-tuple over
// verts); m^m hyperedges total.
std::vector<Hyperedge> expand_undirected(const std::vector<std::string>& verts,
                                         const std::string& etype);

struct StateLayout {
  std::vector<std::string> order;
  std::map<std::string, int> offset;
  std::map<std::string, int> dim;
  int total = 0;

  explicit StateLayout(const Hypernetwork& n);
  StateLayout() = default;
};

}  // namespace hynet
