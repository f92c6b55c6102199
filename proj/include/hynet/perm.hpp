#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "hynet/model.hpp"

namespace hynet {

// Permutation of {0..n-1} stored as its image tuple: img[i] = sigma(i).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> img) : img_(std::move(img)) {
    std::vector<bool> seen(img_.size(), false);
    for (int v : img_) {
      if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v])
        throw Error("not a permutation");
      seen[v] = true;
    }
  }

  static Perm identity(int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    return Perm(std::move(img));
  }

  // All permutations of {0..n-1} in lexicographic order of the image tuple.
  static std::vector<Perm> all(int n) {
    std::vector<Perm> out;
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    do out.push_back(Perm(img));
    while (std::next_permutation(img.begin(), img.end()));
    return out;
  }

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }
  const std::vector<int>& image() const { return img_; }

  // 0 for even, 1 for odd, by inversion count.
  int parity() const {
    int inv = 0;
    for (int i = 0; i < size(); ++i)
      for (int j = i + 1; j < size(); ++j)
        if (img_[i] > img_[j]) ++inv;
    return inv & 1;
  }
  int sign() const { return parity() ? -1 : 1; }

  Perm inverse() const {
    std::vector<int> inv(img_.size());
    for (int i = 0; i < size(); ++i) inv[img_[i]] = i;
    return Perm(std::move(inv));
  }

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

 private:
  std::vector<int> img_;
};

}  // namespace hynet
