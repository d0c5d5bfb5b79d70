#pragma once

#include <string>
#include <utility>
#include <vector>

#include "polycat/monad.hpp"

namespace polycat {

// An edge operation (N, σ, M_1..M_N) of smc: N strands of the given lengths;
// source label i is the start of strand i, target label i the end of strand σ(i).
struct SmcEdge {
  Permutation sigma;
  std::vector<int> lengths;
};

std::string smc_vertex_op(int n);
std::string smc_edge_op(const SmcEdge& e);
SmcEdge parse_smc_edge(const std::string& name);

// Substitution of edge operations into an outer edge operation. edges[i][l-1]
// sits on edge l of strand i and vertex_k[i] is the width of strand i. The
// new strand offset_i + j starts at slot j of the first vertex of strand i.
struct SmcComposite {
  SmcEdge result;
  // [i][k][slot] -> (new strand, position) for vertex k of strand i
  std::vector<std::vector<std::vector<std::pair<int, int>>>> slot;
  // [i][l][s] -> (new strand, start position) of strand s of the edge l
  std::vector<std::vector<std::vector<std::pair<int, int>>>> edge_start;
};

// Deliberate errors in the permutation of a composite, for mutant monads.
enum class SmcMutation {
  None,
  ReverseChain,   // strand permutations composed in the opposite order
  UnpermutedSum,  // blocks concatenated without reindexing by σ
};

SmcComposite smc_compose(const SmcEdge& outer, const std::vector<int>& vertex_k,
                         const std::vector<std::vector<SmcEdge>>& edges, SmcMutation mutation = SmcMutation::None);

MonadPtr monad_smc_mutant(SmcMutation mutation);

}  // namespace polycat
