#pragma once

#include <string>
#include <vector>

#include "polycat/fincat.hpp"

namespace polycat {

CategoryPtr empty_category();
// The ordinal [n] = {0 < 1 < ... < n}; the morphism i->j is named "i<j".
CategoryPtr ordinal(int n);
// Objects v, e and two morphisms s, t : e -> v.
CategoryPtr graph_indexer();
// a -f-> b -h-> d, a -g-> c -k-> d with h∘f = k∘g = "d".
CategoryPtr commutative_square();
// One-object category of Z/n; generator "r".
CategoryPtr cyclic_group(int n);
// A random poset on n objects: i<j related with the given probability, then
// transitively closed. Deterministic in the seed.
CategoryPtr random_poset(int n, double density, unsigned seed);
// One-object category from a monoid table: table[a][b] = b·a (a first).
CategoryPtr monoid_category(const std::vector<std::vector<int>>& table, const std::vector<std::string>& names);

// Morphisms out of C as a copresheaf (the corepresentable c[C]); the element
// for f : C -> C' lives over C' and carries f's name.
Copresheaf representable(const CategoryPtr& c, int object);
Copresheaf terminal_copresheaf(const CategoryPtr& c);
Copresheaf empty_copresheaf(const CategoryPtr& c);

// Graphs are copresheaves on graph_indexer(): vertices over v, edges over e.
inline constexpr int kVertex = 0;
inline constexpr int kEdge = 1;

Copresheaf make_graph(int vertices, const std::vector<std::pair<int, int>>& edges);
// Path graph with n edges: vertices v0..vn, edges e1..en with ei : v(i-1) -> vi.
Copresheaf vec(int n);
// n isolated vertices.
Copresheaf ul(int n);
// Disjoint paths of the given lengths; strand i has vertices "v<i>.<k>".
Copresheaf strands(const std::vector<int>& lengths);
// Underlying graph of a category: objects as vertices, all morphisms as edges.
Copresheaf underlying_graph(const FinCategory& c);

}  // namespace polycat
