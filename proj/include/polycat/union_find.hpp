#pragma once

#include <numeric>
#include <vector>

namespace polycat {

// Union-find where the root of every class is its least member, so class
// representatives come out canonical regardless of union order.
class UnionFind {
 public:
  explicit UnionFind(int n = 0) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int size() const { return static_cast<int>(parent_.size()); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace polycat
