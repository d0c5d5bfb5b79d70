#include <numeric>
#include <sstream>

#include "polycat/monad.hpp"
#include "polycat/smc.hpp"
#include "polycat/standard.hpp"

namespace polycat {

std::string smc_vertex_op(int n) { return "v" + std::to_string(n); }

std::string smc_edge_op(const SmcEdge& e) {
  std::string s = "e" + std::to_string(e.sigma.size()) + "/" + perm_name(e.sigma) + "/";
  for (std::size_t i = 0; i < e.lengths.size(); ++i) s += (i ? "," : "") + std::to_string(e.lengths[i]);
  return s;
}

SmcEdge parse_smc_edge(const std::string& name) {
  SmcEdge e;
  const auto a = name.find('/');
  const auto b = name.find('/', a + 1);
  const int n = std::stoi(name.substr(1, a - 1));
  const std::string perm = name.substr(a + 1, b - a - 1);
  if (n > 0)
    for (char ch : perm) e.sigma.push_back(ch - '0');
  std::stringstream ss(name.substr(b + 1));
  std::string part;
  while (std::getline(ss, part, ','))
    if (!part.empty()) e.lengths.push_back(std::stoi(part));
  return e;
}

// Vertex/edge indices inside strands(lengths).
struct StrandIndex {
  std::vector<int> vfirst;
  std::vector<int> efirst;
  explicit StrandIndex(const std::vector<int>& lengths) {
    int v = 0, e = 0;
    for (int L : lengths) {
      vfirst.push_back(v);
      efirst.push_back(e);
      v += L + 1;
      e += L;
    }
  }
  int vertex(int strand, int pos) const { return vfirst[strand] + pos; }
  int edge(int strand, int pos) const { return efirst[strand] + pos - 1; }  // pos >= 1
};

namespace {

CopresheafMap empty_map() {
  CopresheafMap m;
  m.components.resize(2);
  return m;
}

// The strand endpoint maps ul N -> strands(M) for s and t.
CopresheafMap source_map(const SmcEdge& e) {
  StrandIndex ix(e.lengths);
  auto m = empty_map();
  for (std::size_t i = 0; i < e.sigma.size(); ++i) m.components[kVertex].push_back(ix.vertex(static_cast<int>(i), 0));
  return m;
}

CopresheafMap target_map(const SmcEdge& e) {
  StrandIndex ix(e.lengths);
  auto m = empty_map();
  for (std::size_t i = 0; i < e.sigma.size(); ++i) {
    const int s = e.sigma[i];
    m.components[kVertex].push_back(ix.vertex(s, e.lengths[s]));
  }
  return m;
}

void compositions(int n, int total, std::vector<int>& cur, const std::function<void()>& visit) {
  if (static_cast<int>(cur.size()) == n) {
    visit();
    return;
  }
  for (int m = 0; m <= total; ++m) {
    cur.push_back(m);
    compositions(n, total - m, cur, visit);
    cur.pop_back();
  }
}

}  // namespace

SmcComposite smc_compose(const SmcEdge& outer, const std::vector<int>& vertex_k, const std::vector<std::vector<SmcEdge>>& edges,
                         SmcMutation mutation) {
  const int n = static_cast<int>(outer.sigma.size());
  (void)vertex_k;
  SmcComposite out;
  std::vector<int> K(n), offset(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    K[i] = vertex_k[i];
    offset[i + 1] = offset[i] + K[i];
  }
  // chains: new strand (i, j) starts at slot j of vertex (i, 0)
  out.slot.resize(n);
  out.edge_start.resize(n);
  for (int i = 0; i < n; ++i) {
    const int Mi = outer.lengths[i];
    out.slot[i].assign(Mi + 1, std::vector<std::pair<int, int>>(K[i]));
    out.edge_start[i].assign(Mi + 1, std::vector<std::pair<int, int>>(K[i]));
    for (int j = 0; j < K[i]; ++j) {
      int k = j, pos = 0;
      const int strand = offset[i] + j;
      out.slot[i][0][k] = {strand, 0};
      for (int l = 1; l <= Mi; ++l) {
        const auto& e = edges[i][l - 1];
        out.edge_start[i][l][k] = {strand, pos};
        pos += e.lengths[k];
        k = inverse_perm(e.sigma)[k];
        out.slot[i][l][k] = {strand, pos};
      }
      out.result.lengths.push_back(pos);
    }
  }
  // σ''(offset'_t + l) = offset_{σ(t)} + (τ_1 ∘ ... ∘ τ_M)(l)
  for (int t = 0; t < n; ++t) {
    const int i = mutation == SmcMutation::UnpermutedSum ? t : outer.sigma[t];
    for (int l = 0; l < K[i]; ++l) {
      int x = l;
      const int Mi = outer.lengths[i];
      if (mutation == SmcMutation::ReverseChain)
        for (int q = 1; q <= Mi; ++q) x = edges[i][q - 1].sigma[x];
      else
        for (int q = Mi; q >= 1; --q) x = edges[i][q - 1].sigma[x];
      out.result.sigma.push_back(offset[i] + x);
    }
  }
  return out;
}

namespace {

class SmcMonad : public FamilialMonad {
 public:
  explicit SmcMonad(SmcMutation mutation)
      : FamilialMonad(mutation == SmcMutation::None ? "smc" : "smc-mutant", graph_indexer()), mutation_(mutation) {}

  UnitOp unit(int object) const override {
    const auto g = base();
    const auto rep = representable(g, object);
    auto iso = empty_map();
    if (object == kVertex) {
      iso.components[kVertex] = {0};
      return {smc_vertex_op(1), iso};
    }
    iso.components[kEdge] = {0};
    iso.components[kVertex].assign(2, -1);
    iso.components[kVertex][*rep.find_element(kVertex, "s")] = 0;
    iso.components[kVertex][*rep.find_element(kVertex, "t")] = 1;
    return {smc_edge_op({{0}, {1}}), iso};
  }

  CompositeOp multiply(const Bicomodule& m, int M, const std::vector<int>& N) const override {
    if (m.ops[M].object == kVertex) {
      CompositeOp out;
      int total = 0;
      for (int v : N) {
        const int k = m.ops[v].degree;
        auto leg = empty_map();
        for (int j = 0; j < k; ++j) leg.components[kVertex].push_back(total + j);
        out.cocone.push_back(std::move(leg));
        total += k;
      }
      out.op = smc_vertex_op(total);
      return out;
    }
    const auto outer = parse_smc_edge(m.ops[M].name);
    const int n = static_cast<int>(outer.sigma.size());
    StrandIndex ox(outer.lengths);
    int nv = 0;
    for (int L : outer.lengths) nv += L + 1;
    std::vector<int> K(n);
    std::vector<std::vector<SmcEdge>> edges(n);
    for (int i = 0; i < n; ++i) {
      K[i] = m.ops[N[ox.vertex(i, 0)]].degree;
      for (int l = 1; l <= outer.lengths[i]; ++l) edges[i].push_back(parse_smc_edge(m.ops[N[nv + ox.edge(i, l)]].name));
    }
    const auto comp = smc_compose(outer, K, edges, mutation_);
    StrandIndex rx(comp.result.lengths);
    CompositeOp out{smc_edge_op(comp.result), {}};
    // vertex legs: ul K_i -> result
    for (int i = 0; i < n; ++i)
      for (int k = 0; k <= outer.lengths[i]; ++k) {
        auto leg = empty_map();
        for (int j = 0; j < K[i]; ++j) {
          const auto [strand, pos] = comp.slot[i][k][j];
          leg.components[kVertex].push_back(rx.vertex(strand, pos));
        }
        out.cocone.push_back(std::move(leg));
      }
    // edge legs: strands(L) -> result
    for (int i = 0; i < n; ++i)
      for (int l = 1; l <= outer.lengths[i]; ++l) {
        const auto& e = edges[i][l - 1];
        auto leg = empty_map();
        for (int s = 0; s < K[i]; ++s) {
          const auto [strand, pos] = comp.edge_start[i][l][s];
          for (int q = 0; q <= e.lengths[s]; ++q) leg.components[kVertex].push_back(rx.vertex(strand, pos + q));
        }
        for (int s = 0; s < K[i]; ++s) {
          const auto [strand, pos] = comp.edge_start[i][l][s];
          for (int q = 1; q <= e.lengths[s]; ++q) leg.components[kEdge].push_back(rx.edge(strand, pos + q));
        }
        out.cocone.push_back(std::move(leg));
      }
    return out;
  }

 protected:
  Bicomodule generate(int bound) const override {
    const auto g = base();
    const int s = *g->find_morphism("s"), t = *g->find_morphism("t");
    Bicomodule p(g, g);
    for (int n = 0; n <= bound; ++n) p.add_op({smc_vertex_op(n), kVertex, n, ul(n)});
    for (int n = 0; n <= bound; ++n)
      for (const auto& sigma : all_permutations(n)) {
        std::vector<int> cur;
        compositions(n, bound - n, cur, [&] {
          SmcEdge e{sigma, cur};
          const int deg = n + std::accumulate(cur.begin(), cur.end(), 0);
          const int k = p.add_op({smc_edge_op(e), kEdge, deg, strands(cur)});
          p.set_action(k, s, n, source_map(e));
          p.set_action(k, t, n, target_map(e));
        });
      }
    p.fill_identity_actions();
    p.status = Status::truncated_at(bound);
    return p;
  }

 private:
  SmcMutation mutation_;
};

}  // namespace

MonadPtr monad_smc() { return std::make_shared<SmcMonad>(SmcMutation::None); }
MonadPtr monad_smc_mutant(SmcMutation mutation) { return std::make_shared<SmcMonad>(mutation); }

}  // namespace polycat
