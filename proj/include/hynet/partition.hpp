#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hynet/model.hpp"

namespace hynet {

// Vertex partition with canonical colours: classes are sorted internally and
// ordered by their lexicographically smallest member; the class containing
// the smallest vertex gets colour 1.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<std::vector<std::string>> classes);

  static Partition singletons(const Hypernetwork& n);

  int colours() const { return static_cast<int>(classes_.size()); }
  const std::vector<std::vector<std::string>>& classes() const { return classes_; }
  // 1-based colour
  int colour_of(const std::string& v) const;
  bool covers(const Hypernetwork& n) const;
  bool refines_types(const Hypernetwork& n) const;

  bool operator==(const Partition& o) const { return classes_ == o.classes_; }
  bool operator<(const Partition& o) const { return classes_ < o.classes_; }

 private:
  std::vector<std::vector<std::string>> classes_;
  std::map<std::string, int> colour_;
};

// "v0 v1 v2 | w0 w1"
Partition parse_partition(const std::string& text);
std::string format_partition(const Partition& p);

using Signature = std::vector<int>;

Signature signature(const Hyperedge& h, const Partition& p);

struct VertexCensus {
  // (etype, signature) -> count
  std::map<std::pair<std::string, Signature>, int> counts;
  bool operator==(const VertexCensus& o) const { return counts == o.counts; }
};

std::map<std::string, VertexCensus> census(const Hypernetwork& n, const Partition& p);

struct Mismatch {
  int colour;
  std::string etype;
  Signature sig;
  std::string v1, v2;  // same class, different counts
};

struct BalanceCertificate {
  bool balanced = false;
  bool refines = true;
  // On success: per non-representative class member, the in-edge bijection
  // from the class representative's in-edges (matched within (etype,
  // signature) buckets, lexicographically).
  std::map<std::string, std::map<std::string, std::string>> alpha;
  std::optional<Mismatch> mismatch;
};

BalanceCertificate is_balanced(const Hypernetwork& n, const Partition& p);

// Independent check straight from the definition: per same-class vertex pair,
// backtracking search for an edge-type-preserving in-edge bijection with
// componentwise colour-equal sources.
bool is_balanced_oracle(const Hypernetwork& n, const Partition& p);

// All balanced partitions refining vertex types, coarsest first, then by
// formatted text. Throws when |V| exceeds the bound.
std::vector<Partition> enumerate_balanced(const Hypernetwork& n, int max_vertices = 12);

// All partitions refining vertex types (used by tests and enumerate_balanced).
std::vector<Partition> refining_partitions(const Hypernetwork& n, int max_vertices = 12);

}  // namespace hynet
