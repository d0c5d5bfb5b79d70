#include "polycat/standard.hpp"

#include <random>

namespace polycat {

CategoryPtr empty_category() {
  static const CategoryPtr none = std::make_shared<FinCategory>();
  return none;
}

CategoryPtr ordinal(int n) {
  auto c = std::make_shared<FinCategory>();
  for (int i = 0; i <= n; ++i) c->add_object(std::to_string(i));
  std::vector<std::vector<int>> mor(n + 1, std::vector<int>(n + 1, -1));
  for (int i = 0; i <= n; ++i) {
    mor[i][i] = c->identity(i);
    for (int j = i + 1; j <= n; ++j) mor[i][j] = c->add_morphism(std::to_string(i) + "<" + std::to_string(j), i, j);
  }
  c->fill_composites([&](int f, int g) { return mor[c->src(f)][c->tgt(g)]; });
  return c;
}

CategoryPtr random_poset(int n, double density, unsigned seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(density);
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    le[i][i] = 1;
    for (int j = i + 1; j < n; ++j) le[i][j] = coin(rng);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = 1;
  auto c = std::make_shared<FinCategory>();
  for (int i = 0; i < n; ++i) c->add_object("x" + std::to_string(i));
  std::vector<std::vector<int>> mor(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) {
    mor[i][i] = c->identity(i);
    for (int j = i + 1; j < n; ++j)
      if (le[i][j]) mor[i][j] = c->add_morphism("x" + std::to_string(i) + "<x" + std::to_string(j), i, j);
  }
  c->fill_composites([&](int f, int g) { return mor[c->src(f)][c->tgt(g)]; });
  return c;
}

CategoryPtr graph_indexer() {
  static const CategoryPtr g = [] {
    auto c = std::make_shared<FinCategory>();
    c->add_object("v");
    c->add_object("e");
    c->add_morphism("s", kEdge, kVertex);
    c->add_morphism("t", kEdge, kVertex);
    return c;
  }();
  return g;
}

CategoryPtr commutative_square() {
  auto c = std::make_shared<FinCategory>();
  const int a = c->add_object("a"), b = c->add_object("b"), cc = c->add_object("c"), d = c->add_object("d");
  const int f = c->add_morphism("f", a, b);
  const int g = c->add_morphism("g", a, cc);
  const int h = c->add_morphism("h", b, d);
  const int k = c->add_morphism("k", cc, d);
  const int diag = c->add_morphism("diag", a, d);
  c->set_composite(f, h, diag);
  c->set_composite(g, k, diag);
  return c;
}

CategoryPtr monoid_category(const std::vector<std::vector<int>>& table, const std::vector<std::string>& names) {
  auto c = std::make_shared<FinCategory>();
  c->add_object("*");
  // element 0 is the unit
  std::vector<int> mor{c->identity(0)};
  for (std::size_t i = 1; i < names.size(); ++i) mor.push_back(c->add_morphism(names[i], 0, 0));
  c->fill_composites([&](int f, int g) { return mor[table[f][g]]; });
  return c;
}

CategoryPtr cyclic_group(int n) {
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> names{"1"};
  for (int i = 1; i < n; ++i) names.push_back("r" + (i > 1 ? std::to_string(i) : std::string()));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  return monoid_category(table, names);
}

Copresheaf representable(const CategoryPtr& c, int object) {
  Copresheaf r(c);
  std::vector<int> index(c->num_morphisms(), -1);
  for (int f : c->out(object)) index[f] = r.add_element(c->tgt(f), c->morphism(f).name);
  for (int f : c->out(object))
    for (int g : c->out(c->tgt(f))) r.set_action(g, index[f], index[c->compose(f, g)]);
  for (int o = 0; o < c->num_objects(); ++o) r.action[c->identity(o)].resize(r.size(o));
  r.fill_identities();
  return r;
}

Copresheaf terminal_copresheaf(const CategoryPtr& c) {
  Copresheaf r(c);
  for (int o = 0; o < c->num_objects(); ++o) r.add_element(o, "*");
  for (int f = 0; f < c->num_morphisms(); ++f) r.action[f] = {0};
  return r;
}

Copresheaf empty_copresheaf(const CategoryPtr& c) { return Copresheaf(c); }

Copresheaf make_graph(int vertices, const std::vector<std::pair<int, int>>& edges) {
  auto g = graph_indexer();
  Copresheaf x(g);
  for (int i = 0; i < vertices; ++i) x.add_element(kVertex, "v" + std::to_string(i));
  for (std::size_t j = 0; j < edges.size(); ++j) x.add_element(kEdge, "e" + std::to_string(j));
  x.fill_identities();
  const int s = *g->find_morphism("s"), t = *g->find_morphism("t");
  for (std::size_t j = 0; j < edges.size(); ++j) {
    x.set_action(s, static_cast<int>(j), edges[j].first);
    x.set_action(t, static_cast<int>(j), edges[j].second);
  }
  return x;
}

Copresheaf vec(int n) {
  auto g = graph_indexer();
  Copresheaf x(g);
  for (int i = 0; i <= n; ++i) x.add_element(kVertex, "v" + std::to_string(i));
  for (int j = 1; j <= n; ++j) x.add_element(kEdge, "e" + std::to_string(j));
  x.fill_identities();
  for (int j = 0; j < n; ++j) {
    x.set_action(*g->find_morphism("s"), j, j);
    x.set_action(*g->find_morphism("t"), j, j + 1);
  }
  return x;
}

Copresheaf ul(int n) { return strands(std::vector<int>(n, 0)); }

Copresheaf strands(const std::vector<int>& lengths) {
  auto g = graph_indexer();
  Copresheaf x(g);
  const int s = *g->find_morphism("s"), t = *g->find_morphism("t");
  std::vector<std::pair<int, int>> ends;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const std::string tag = std::to_string(i);
    const int first = x.size(kVertex);
    for (int k = 0; k <= lengths[i]; ++k) x.add_element(kVertex, "v" + tag + "." + std::to_string(k));
    for (int k = 1; k <= lengths[i]; ++k) ends.push_back({first + k - 1, first + k});
    for (int k = 1; k <= lengths[i]; ++k) x.add_element(kEdge, "e" + tag + "." + std::to_string(k));
  }
  x.fill_identities();
  for (std::size_t j = 0; j < ends.size(); ++j) {
    x.set_action(s, static_cast<int>(j), ends[j].first);
    x.set_action(t, static_cast<int>(j), ends[j].second);
  }
  return x;
}

Copresheaf underlying_graph(const FinCategory& c) {
  std::vector<std::pair<int, int>> edges;
  for (int f = 0; f < c.num_morphisms(); ++f) edges.push_back({c.src(f), c.tgt(f)});
  Copresheaf x = make_graph(c.num_objects(), edges);
  for (int o = 0; o < c.num_objects(); ++o) x.elements[kVertex][o] = c.object_name(o);
  for (int f = 0; f < c.num_morphisms(); ++f) x.elements[kEdge][f] = c.morphism(f).name;
  return x;
}

}  // namespace polycat
