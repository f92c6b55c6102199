#pragma once

#include <string>
#include <vector>

#include "hynet/model.hpp"

namespace hynet {

struct AugmentationSpec {
  Hypernetwork core;
  std::vector<std::string> nodes;  // v_0..v_k, all of one type
  std::string wtype = "square";
  std::string w0 = "w0";
  std::string w1 = "w1";
  std::string agg_etype = "agg";
  std::string wself_etype = "wself";
};

// Adds w0, w1 with self-loops and (k+1)! hyperedges of order k, one per
// permutation of {0..k}: sources (v_{s(1)},..,v_{s(k)}), target w0 for even
// permutations and w1 for odd ones. Hyperedge ids are derived from the image
// tuple; enumeration is lexicographic in that tuple.
Hypernetwork augment(const AugmentationSpec& spec);

// k+1 vertices v0..vk of one type, each with a single self-loop.
Hypernetwork disconnected_core(int nodes, const std::string& vtype = "circle",
                               const std::string& self_etype = "vself");

}  // namespace hynet
