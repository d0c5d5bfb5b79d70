#include <algorithm>

#include "polycat/monad.hpp"
#include "polycat/standard.hpp"

namespace polycat {

namespace {

// X as a c↛0 bicomodule whose operations carry the element degrees.
BicomodulePtr weighted(const Copresheaf& x, const std::vector<std::vector<int>>& degree) {
  auto b = copresheaf_as_bicomodule(x);
  if (!degree.empty()) {
    int k = 0;
    for (int o = 0; o < x.base->num_objects(); ++o)
      for (int e = 0; e < x.size(o); ++e) b.ops[k++].degree = degree[o][e];
  }
  return std::make_shared<const Bicomodule>(std::move(b));
}

std::vector<int> first_index(const Copresheaf& x) {
  std::vector<int> first(x.base->num_objects() + 1, 0);
  for (int o = 0; o < x.base->num_objects(); ++o) first[o + 1] = first[o] + x.size(o);
  return first;
}

// Composite op k of m ◁ X: (M, h) with h as element indices of X.
std::vector<int> element_assignment(const Bicomodule& mx, int k, const std::vector<int>& first) {
  auto h = composite_inner(mx, k);
  const auto& X = *mx.parts->second;
  for (int& v : h) v -= first[X.ops[v].object];
  return h;
}

}  // namespace

int apply_action(const Algebra& a, const Bicomodule& mx, int k) {
  const auto first = first_index(a.carrier);
  return a.action(*mx.parts->first, mx.parts->outer[k], element_assignment(mx, k, first));
}

// ------------------------------------------------------------- free algebras

Algebra free_algebra(const MonadPtr& m, const Copresheaf& x, int bound) {
  const auto B = m->carrier(bound);
  const auto X = std::make_shared<const Bicomodule>(copresheaf_as_bicomodule(x));
  const auto mX = std::make_shared<const Bicomodule>(compose_bicomodules(B, X, {bound, -1, {}}));
  const auto view = operations_view(*mX);
  const auto xfirst = first_index(x);

  Algebra a;
  a.monad = m;
  a.carrier = view.ops;
  a.status = mX->status;
  a.element_degree.resize(m->base()->num_objects());
  for (int o = 0; o < m->base()->num_objects(); ++o)
    for (int k : view.global[o]) a.element_degree[o].push_back(mX->ops[k].degree);

  a.action = [m, B, mX, view, xfirst](const Bicomodule& mm, int M, const std::vector<int>& h) {
    const auto& c = *m->base();
    const auto& aM = mm.arity(M);
    const auto elems = flatten(aM);
    std::vector<int> N;
    std::vector<std::vector<int>> g;  // per z: X-op indices over flattened m[N z]
    for (std::size_t z = 0; z < elems.size(); ++z) {
      const int op = view.global[elems[z].object][h[z]];
      N.push_back(mm.require(B->ops[mX->parts->outer[op]].name));
      g.push_back(composite_inner(*mX, op));
    }
    auto cm = m->multiply(mm, M, N);
    const int L = B->require(cm.op);
    const auto& aL = B->arity(L);
    std::vector<int> h2(aL.total_size(), -1);
    for (std::size_t z = 0; z < elems.size(); ++z) {
      const auto inner = flatten(mm.arity(N[z]));
      for (std::size_t u = 0; u < inner.size(); ++u) {
        const auto [e, w] = inner[u];
        h2[flat_index(aL, e, cm.cocone[z](e, w))] = g[z][u];
      }
    }
    std::vector<std::string> names;
    for (int v : h2) names.push_back(mX->parts->second->ops[v].name);
    const int k = mX->require(composite_name(cm.op, names));
    (void)c;
    return view.local[k];
  };
  return a;
}

// ------------------------------------------------------ concrete algebras

Algebra category_algebra(const FinCategory& cat) {
  Algebra a;
  a.monad = monad_path();
  a.carrier = underlying_graph(cat);
  a.action = [cat](const Bicomodule& m, int M, const std::vector<int>& h) {
    if (m.ops[M].object == kVertex) return h[0];
    const int n = m.ops[M].degree;
    if (n == 0) return cat.identity(h[0]);
    int f = h[n + 1];
    for (int i = 1; i < n; ++i) f = cat.compose(f, h[n + 1 + i]);
    return f;
  };
  return a;
}

Algebra monoid_algebra(const std::vector<std::vector<int>>& table) {
  Algebra a;
  a.monad = monad_list();
  a.carrier = finite_set(static_cast<int>(table.size()), "m");
  a.action = [table](const Bicomodule&, int, const std::vector<int>& h) {
    int r = 0;
    for (int v : h) r = table[r][v];
    return r;
  };
  return a;
}

// ------------------------------------------------------------------- checks

Report check_algebra(const Algebra& a, int bound) {
  Report r;
  r.subject = "algebra over " + a.monad->name();
  r.status = Status::exact_at(bound);
  const auto& m = *a.monad;
  const auto& c = *m.base();
  const auto& X = a.carrier;
  const auto B = m.carrier(bound);
  const auto Xb = weighted(X, a.element_degree);
  const auto first = first_index(X);
  auto psi = [&](const Bicomodule& mm, int M, const std::vector<int>& h) -> int {
    const int v = a.action(mm, M, h);
    if (v < 0 || v >= X.size(mm.ops[M].object)) throw LawViolation("action leaves the carrier at " + mm.ops[M].name);
    return v;
  };

  try {
    // naturality
    const auto mX = compose_bicomodules(B, Xb, {bound, -1, {}});
    std::vector<int> value(mX.size());
    for (int k = 0; k < mX.size(); ++k) value[k] = psi(*B, mX.parts->outer[k], element_assignment(mX, k, first));
    for (int k = 0; k < mX.size(); ++k)
      for (int f : c.out(mX.ops[k].object)) {
        if (c.is_identity(f)) continue;
        ++r.checked;
        if (value[mX.act(k, f).target] != X.apply(f, value[k]))
          r.fail("action is not natural along " + c.morphism(f).name + " at " + mX.ops[k].name);
      }

    // unit law
    const auto id = identity_bicomodule(m.base());
    for (int C = 0; C < c.num_objects(); ++C) {
      auto u = m.unit(C);
      const int H = B->require(u.op);
      const auto& aH = B->arity(H);
      const auto& rep = id.arity(C);
      for (int x = 0; x < X.size(C); ++x) {
        std::vector<int> h(aH.total_size(), -1);
        for (int o = 0; o < c.num_objects(); ++o)
          for (int g = 0; g < rep.size(o); ++g)
            h[flat_index(aH, o, u.iso(o, g))] = X.apply(*c.find_morphism(rep.elements[o][g]), x);
        ++r.checked;
        if (psi(*B, H, h) != x) r.fail("unit law fails at element " + X.elements[C][x]);
      }
    }

    // multiplication law
    const auto mm = std::make_shared<const Bicomodule>(compose_bicomodules(B, B, {bound, -1, {}}));
    const auto mmX = compose_bicomodules(mm, Xb, {bound, -1, {}});
    int skipped = 0;
    for (int k = 0; k < mmX.size(); ++k) {
      const int K = mmX.parts->outer[k];
      const int M = mm->parts->outer[K];
      const auto N = composite_inner(*mm, K);
      const auto h = element_assignment(mmX, k, first);
      const auto& col = mm->parts->arity_colimit[K];
      const auto& aK = mm->arity(K);
      try {
        auto L = resolve(m, *B, M, N, *B);
        const auto& aL = B->arity(L.op);
        std::vector<int> h2(aL.total_size(), -1);
        for (std::size_t z = 0; z < N.size(); ++z)
          for (const auto& [e, w] : flatten(B->arity(N[z]))) {
            const int x = col.injections[z](e, w);
            h2[flat_index(aL, e, L.cocone[z](e, w))] = h[flat_index(aK, e, x)];
          }
        const int lhs = psi(*B, L.op, h2);
        std::vector<int> inner;
        for (std::size_t z = 0; z < N.size(); ++z) {
          std::vector<int> hz;
          for (const auto& [e, w] : flatten(B->arity(N[z]))) hz.push_back(h[flat_index(aK, e, col.injections[z](e, w))]);
          inner.push_back(psi(*B, N[z], hz));
        }
        const int rhs = psi(*B, M, inner);
        ++r.checked;
        if (lhs != rhs) r.fail("multiplication law fails at " + mmX.ops[k].name);
      } catch (const BoundExhausted&) {
        ++skipped;
      }
    }
    if (skipped) r.notes.push_back(std::to_string(skipped) + " multiplication instances leave the bound");
  } catch (const LawViolation& e) {
    r.fail(e.what());
  }
  return r;
}

}  // namespace polycat
