#pragma once

#include <string>
#include <utility>
#include <vector>

#include "polycat/algem.hpp"

namespace polycat {

namespace detail {

// Index of each morphism out of o inside c[o], per target object; -1 elsewhere.
std::vector<int> representable_index(const FinCategory& c, int o);

// A single composite operation (I, J) of p ◁ q, built sparsely.
struct Sparse {
  BicomodulePtr b;
  int k = -1;
};
Sparse sparse_op(const BicomodulePtr& p, const BicomodulePtr& q, int I, const std::vector<int>& J);

// Flattened element of pq[k] injected from element w (over e) of the z-th summand.
int inject_flat(const Bicomodule& pq, int k, int z, int e, int w);
// Summand index and element (over its object) representing a flattened element of pq[k].
std::pair<int, ElementRef> representative(const Bicomodule& pq, int k, int flat);

KleisliElement relabel(const KleisliElement& a, const std::vector<int>& along);

void compare_transposed(Report& r, const std::string& where, const Transposed& lhs, const Transposed& rhs,
                        const Bicomodule& q, const Bicomodule& ncar);

}  // namespace detail

}  // namespace polycat
