#include "hynet/augment.hpp"

#include "hynet/perm.hpp"

namespace hynet {

Hypernetwork augment(const AugmentationSpec& spec) {
  const int k1 = static_cast<int>(spec.nodes.size());
  if (k1 < 3) throw Error("augmentation needs at least 3 core nodes");
  Hypernetwork n = spec.core;
  std::string core_type;
  for (const auto& v : spec.nodes) {
    if (!n.has_vertex(v)) throw Error("core node " + v + " not in the core");
    if (core_type.empty())
      core_type = n.vertex(v).vtype;
    else if (n.vertex(v).vtype != core_type)
      throw Error("core nodes must share one vertex type");
  }
  if (n.vertices.count(spec.w0) || n.vertices.count(spec.w1))
    throw Error("w vertex id already used by the core");
  n.name = spec.core.name + "_aug";
  n.vertices[spec.w0] = {spec.wtype, 1};
  n.vertices[spec.w1] = {spec.wtype, 1};
  for (const auto& w : {spec.w0, spec.w1}) {
    Hyperedge h;
    h.id = spec.wself_etype + "_" + w;
    h.etype = spec.wself_etype;
    h.target = w;
    h.sources = {w};
    n.hyperedges.push_back(std::move(h));
  }
  for (const Perm& sigma : Perm::all(k1)) {
    Hyperedge h;
    h.etype = spec.agg_etype;
    h.target = sigma.parity() == 0 ? spec.w0 : spec.w1;
    h.id = spec.agg_etype + "_";
    for (int i = 0; i < k1; ++i) {
      h.id += std::to_string(sigma(i));
      if (k1 > 10 && i + 1 < k1) h.id += "_";
    }
    for (int i = 1; i < k1; ++i) h.sources.push_back(spec.nodes[sigma(i)]);
    n.hyperedges.push_back(std::move(h));
  }
  n.rebuild_index();
  auto violations = validate(n);
  if (!violations.empty()) throw Error("augmented hypernetwork invalid: " + violations[0].message);
  return n;
}

Hypernetwork disconnected_core(int nodes, const std::string& vtype,
                               const std::string& self_etype) {
  Hypernetwork n;
  n.name = "core" + std::to_string(nodes);
  for (int i = 0; i < nodes; ++i) {
    std::string v = "v" + std::to_string(i);
    n.vertices[v] = {vtype, 1};
    Hyperedge h;
    h.id = self_etype + "_" + v;
    h.etype = self_etype;
    h.target = v;
    h.sources = {v};
    n.hyperedges.push_back(std::move(h));
  }
  n.rebuild_index();
  return n;
}

}  // namespace hynet
