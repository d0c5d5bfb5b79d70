#include <algorithm>

#include "polycat/algem.hpp"
#include "polycat/standard.hpp"
#include "algem_internal.hpp"

namespace polycat {

using namespace detail;

namespace {

std::string path_edge(int n) { return "e" + std::to_string(n); }

// Path-shaped arity vec n: vertex i, edge j from j to j+1.
int vec_length(const Copresheaf& a) { return a.size(kEdge); }

// ------------------------------------------------------------ el

class ElMorphism : public MonadMorphism {
 public:
  explicit ElMorphism(const CategoryPtr& c) : MonadMorphism("el", monad_path(), monad_identity(c)), c_(c) {}

  Transposed alpha(const Bicomodule& mp, int k, const Bicomodule& ncar) const override {
    const auto& c = *c_;
    const auto& p = *mp.parts->second;
    const auto& mM = mp.parts->first->arity(mp.parts->outer[k]);
    const auto I = composite_inner(mp, k);
    const bool vertex = mp.ops[k].object == kVertex;
    const int n = vec_length(mM);
    // chain C_0 -f_1-> ... -f_n-> C_n
    // vertex ops were added first, one per object, so the op index is the object
    const int C0 = I[flat_index(mM, kVertex, 0)];
    int g = c.identity(C0);
    for (int j = 0; j < n; ++j) {
      const int f = morphism_of(p, I[flat_index(mM, kEdge, j)]);
      g = c.compose(g, f);
      if (g < 0) throw LawViolation("chain in el(1) is not composable");
    }
    const int pos = vertex ? I[flat_index(mM, kVertex, 0)] : p.require(edge_name(c, g));
    Transposed t{pos, {}};
    const int z0 = flat_index(mM, kVertex, 0);
    for (const auto& [o, x] : flatten(p.arity(pos)))
      t.arity.push_back(kleisli_unit(*source(), ncar, mp.arity(k), o, mp.parts->arity_colimit[k].injections[z0](o, x)));
    return t;
  }

 protected:
  Bicomodule generate(int) const override {
    const auto& c = *c_;
    const auto g = graph_indexer();
    const int s = *g->find_morphism("s"), t = *g->find_morphism("t");
    Bicomodule p(g, c_);
    std::vector<Copresheaf> reps;
    for (int C = 0; C < c.num_objects(); ++C) {
      reps.push_back(representable(c_, C));
      p.add_op({c.object_name(C), kVertex, 0, reps.back()});
    }
    for (int C = 0; C < c.num_objects(); ++C)
      for (int f : c.out(C)) {
        const int k = p.add_op({edge_name(c, f), kEdge, 0, reps[C]});
        p.set_action(k, s, C, identity_map(reps[C]));
        // c[cod f] -> c[C], h ↦ h∘f
        const int D = c.tgt(f);
        const auto index = representable_index(c, C);
        CopresheafMap r;
        r.components.resize(c.num_objects());
        const auto dindex = representable_index(c, D);
        for (int o = 0; o < c.num_objects(); ++o) r.components[o].assign(reps[D].size(o), -1);
        for (int h : c.out(D)) r.components[c.tgt(h)][dindex[h]] = index[c.compose(f, h)];
        p.set_action(k, t, D, std::move(r));
      }
    p.fill_identity_actions();
    p.status = Status{};
    return p;
  }

 private:
  static std::string edge_name(const FinCategory& c, int f) { return "(" + c.object_name(c.src(f)) + "," + c.morphism(f).name + ")"; }
  int morphism_of(const Bicomodule& p, int op) const {
    const auto& name = p.ops[op].name;
    const auto comma = name.find(',');
    return *c_->find_morphism(name.substr(comma + 1, name.size() - comma - 2));
  }

  CategoryPtr c_;
};

// ------------------------------------------------------------ sm

std::string sm_vertex(int n) { return "v" + std::to_string(n); }
std::string sm_edge(const Permutation& s) { return "s" + std::to_string(s.size()) + "/" + perm_name(s); }

Permutation parse_sm_edge(const std::string& name) {
  const auto slash = name.find('/');
  const int n = std::stoi(name.substr(1, slash - 1));
  Permutation s;
  if (n > 0)
    for (char ch : name.substr(slash + 1)) s.push_back(ch - '0');
  return s;
}

// strands(1,...,1): vertex 2i is the start and 2i+1 the end of edge i.
CopresheafMap sm_source(int n) {
  CopresheafMap m;
  m.components.resize(2);
  for (int i = 0; i < n; ++i) m.components[kVertex].push_back(2 * i);
  return m;
}

CopresheafMap sm_target(const Permutation& s) {
  CopresheafMap m;
  m.components.resize(2);
  for (int i : s) m.components[kVertex].push_back(2 * i + 1);
  return m;
}

class SmMorphism : public MonadMorphism {
 public:
  SmMorphism() : MonadMorphism("sm", monad_path(), monad_path()) {}

  Transposed alpha(const Bicomodule& mp, int k, const Bicomodule& ncar) const override {
    const auto& p = *mp.parts->second;
    const auto& mM = mp.parts->first->arity(mp.parts->outer[k]);
    const auto I = composite_inner(mp, k);
    const auto& col = mp.parts->arity_colimit[k];
    auto at = [&](int z, int o, int x) { return flat_index(mp.arity(k), o, col.injections[z](o, x)); };
    const int N = p.arity(I[flat_index(mM, kVertex, 0)]).size(kVertex);

    if (mp.ops[k].object == kVertex) {
      const int z = flat_index(mM, kVertex, 0);
      Transposed t{I[z], {}};
      for (int i = 0; i < N; ++i) t.arity.push_back(kleisli_unit(*source(), ncar, mp.arity(k), kVertex, col.injections[z](kVertex, i)));
      return t;
    }
    const int n = vec_length(mM);
    // follow each strand through the n copies
    std::vector<std::vector<int>> slot(N, std::vector<int>(n + 1));
    for (int j = 0; j < N; ++j) {
      slot[j][0] = j;
      for (int l = 1; l <= n; ++l) {
        const auto s = parse_sm_edge(p.ops[I[flat_index(mM, kEdge, l - 1)]].name);
        slot[j][l] = inverse_perm(s)[slot[j][l - 1]];
      }
    }
    Permutation tau(N);
    for (int j = 0; j < N; ++j) tau[slot[j][n]] = j;
    const int pos = p.require(sm_edge(tau));
    Transposed t{pos, std::vector<KleisliElement>(p.arity(pos).total_size())};
    const int en = ncar.require(path_edge(n));
    const int first = flat_index(mM, kVertex, 0), last = flat_index(mM, kVertex, n);
    for (int j = 0; j < N; ++j) {
      KleisliElement ke{en, {}};
      for (int l = 0; l <= n; ++l) ke.leg.push_back(at(flat_index(mM, kVertex, l), kVertex, slot[j][l]));
      for (int l = 1; l <= n; ++l) ke.leg.push_back(at(flat_index(mM, kEdge, l - 1), kEdge, slot[j][l - 1]));
      t.arity[flat_index(p.arity(pos), kEdge, j)] = std::move(ke);
      const int start = col.injections[first](kVertex, j);
      const int end = col.injections[last](kVertex, slot[j][n]);
      t.arity[flat_index(p.arity(pos), kVertex, 2 * j)] = kleisli_unit(*source(), ncar, mp.arity(k), kVertex, start);
      t.arity[flat_index(p.arity(pos), kVertex, 2 * j + 1)] = kleisli_unit(*source(), ncar, mp.arity(k), kVertex, end);
    }
    return t;
  }

 protected:
  Bicomodule generate(int bound) const override {
    const auto g = graph_indexer();
    const int s = *g->find_morphism("s"), t = *g->find_morphism("t");
    Bicomodule p(g, g);
    for (int n = 0; n <= bound; ++n) p.add_op({sm_vertex(n), kVertex, n, ul(n)});
    for (int n = 0; n <= bound; ++n)
      for (const auto& sigma : all_permutations(n)) {
        const int k = p.add_op({sm_edge(sigma), kEdge, n, strands(std::vector<int>(n, 1))});
        p.set_action(k, s, n, sm_source(n));
        p.set_action(k, t, n, sm_target(sigma));
      }
    p.fill_identity_actions();
    p.status = Status::truncated_at(bound);
    return p;
  }
};

// ------------------------------------------------------------ wreath composite

std::shared_ptr<const Bicomodule> borrow(const Bicomodule& b) { return {&b, [](const Bicomodule*) {}}; }

class WreathMonad : public FamilialMonad {
 public:
  explicit WreathMonad(Wreath w) : FamilialMonad(w.endo->name() + "◁" + w.base->name(), w.base->base()), w_(std::move(w)) {}

  UnitOp unit(int object) const override {
    const auto nB = w_.endo->carrier(1);
    const auto mB = w_.base->carrier(1);
    const auto id = w_.unit.from->carrier(1);
    const auto t = w_.unit.rho(*id, object, *nB, *mB);
    std::vector<int> J;
    for (const auto& ke : t.arity) J.push_back(ke.op);
    const auto s = sparse_op(nB, mB, t.position, J);
    const auto& a = s.b->arity(s.k);
    const auto& rep = id->arity(object);
    CopresheafMap to_rep;  // arity -> c[C]
    to_rep.components.resize(a.base->num_objects());
    for (int cls = 0; cls < a.total_size(); ++cls) {
      const auto [w, x] = representative(*s.b, s.k, cls);
      const auto e = unflatten(a, cls);
      const int v = t.arity[w].leg[flat_index(mB->arity(J[w]), x.object, x.index)];
      to_rep.components[e.object].push_back(unflatten(rep, v).index);
    }
    if (!is_bijective(to_rep, a, rep)) throw LawViolation("unit 2-cell arity is not an isomorphism");
    return {s.b->ops[s.k].name, inverse(to_rep, a, rep)};
  }

  CompositeOp multiply(const Bicomodule& m, int M, const std::vector<int>& N) const override {
    const auto nB = m.parts->first;
    const auto mB = m.parts->second;
    const auto& base = *w_.base;
    const int S = m.parts->outer[M];
    const auto J = composite_inner(m, M);
    const auto& colM = m.parts->arity_colimit[M];
    auto e_of = [&](int w, int o, int u) { return flat_index(m.arity(M), o, colM.injections[w](o, u)); };

    // the whole composite (M, N) of m ◁ m
    const auto mm = sparse_op(borrow(m), borrow(m), M, N);
    const auto& mmp = *mm.b->parts;
    auto z_of = [&](int e, int o, int x) { return inject_flat(*mm.b, mm.k, e, o, x); };

    // 1. α on (J_w, u ↦ S'_{(w,u)}) for every element w of n[S]
    std::vector<Transposed> alpha_w;
    std::vector<Sparse> mn_w;
    std::vector<int> P;
    int w = 0;
    for (const auto& [ow, xw] : flatten(nB->arity(S))) {
      (void)ow;
      (void)xw;
      std::vector<int> Sp;
      for (const auto& [o, u] : flatten(mB->arity(J[w]))) Sp.push_back(m.parts->outer[N[e_of(w, o, u)]]);
      mn_w.push_back(sparse_op(mB, nB, J[w], Sp));
      alpha_w.push_back(w_.endo->alpha(*mn_w.back().b, mn_w.back().k, *mB));
      P.push_back(alpha_w.back().position);
      ++w;
    }
    // 2. the multiplication 2-cell on (S, w ↦ P_w)
    const auto nn = sparse_op(nB, nB, S, P);
    const auto r = w_.mult.rho(*nn.b, nn.k, *nB, *mB);

    // 3. flatten the three layers of m-operations with μ of the base monad
    std::vector<KleisliElement> f1;
    for (int cls = 0; cls < nn.b->arity(nn.k).total_size(); ++cls) {
      const auto [wv, x] = representative(*nn.b, nn.k, cls);
      const auto& sw = mn_w[wv];
      std::vector<KleisliElement> f2;
      for (int c2 = 0; c2 < sw.b->arity(sw.k).total_size(); ++c2) {
        const auto [u, x2] = representative(*sw.b, sw.k, c2);
        const auto ref = unflatten(mB->arity(J[wv]), u);
        const int e = e_of(wv, ref.object, ref.index);
        const int Sp = m.parts->outer[N[e]];
        const int x2f = flat_index(nB->arity(Sp), x2.object, x2.index);
        const int jop = composite_inner(m, N[e])[x2f];
        KleisliElement ke{jop, {}};
        for (const auto& [o, a] : flatten(mB->arity(jop)))
          ke.leg.push_back(z_of(e, o, m.parts->arity_colimit[N[e]].injections[x2f](o, a)));
        f2.push_back(std::move(ke));
      }
      const int xf = flat_index(nB->arity(P[wv]), x.object, x.index);
      f1.push_back(kleisli_bind(base, *mB, alpha_w[wv].arity[xf], f2));
    }
    std::vector<KleisliElement> finals;
    std::vector<std::string> names;
    for (const auto& ke : r.arity) {
      finals.push_back(kleisli_bind(base, *mB, ke, f1));
      names.push_back(mB->ops[finals.back().op].name);
    }
    const int result = m.require(composite_name(nB->ops[r.position].name, names));
    const auto& ar = m.arity(result);
    const auto& az = mm.b->arity(mm.k);
    std::vector<int> to_z;
    for (int cls = 0; cls < ar.total_size(); ++cls) {
      const auto [y, a] = representative(m, result, cls);
      to_z.push_back(finals[y].leg[flat_index(mB->arity(finals[y].op), a.object, a.index)]);
    }
    std::vector<int> from_z(az.total_size(), -1);
    for (int cls = 0; cls < ar.total_size(); ++cls) {
      if (from_z[to_z[cls]] >= 0) throw LawViolation("composite arity map is not injective");
      from_z[to_z[cls]] = cls;
    }
    if (std::find(from_z.begin(), from_z.end(), -1) != from_z.end()) throw LawViolation("composite arity map is not surjective");

    CompositeOp out{m.ops[result].name, {}};
    for (std::size_t e = 0; e < N.size(); ++e) {
      CopresheafMap leg;
      leg.components.resize(ar.base->num_objects());
      for (const auto& [o, b] : flatten(m.arity(N[e]))) leg.components[o].push_back(unflatten(ar, from_z[z_of(static_cast<int>(e), o, b)]).index);
      out.cocone.push_back(std::move(leg));
    }
    (void)mmp;
    return out;
  }

 protected:
  Bicomodule generate(int bound) const override {
    auto b = compose_bicomodules(w_.endo->carrier(bound), w_.base->carrier(bound), {bound, -1, {}});
    b.status = Status::truncated_at(bound);
    return b;
  }

 private:
  Wreath w_;
};

}  // namespace

MorphismPtr builtin_el(const CategoryPtr& c) { return std::make_shared<ElMorphism>(c); }
MorphismPtr builtin_el(const Comonoid& c) { return builtin_el(std::make_shared<FinCategory>(category_from_comonoid(c))); }

Permutation sm_multiply(const Permutation& sigma, const std::vector<Permutation>& inner) {
  const int n = static_cast<int>(sigma.size());
  std::vector<int> off_s(n + 1, 0), off_t(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    off_s[i + 1] = off_s[i] + static_cast<int>(inner[i].size());
    off_t[i + 1] = off_t[i] + static_cast<int>(inner[sigma[i]].size());
  }
  Permutation tau(off_s[n]);
  for (int j = 0; j < n; ++j) {
    const auto& s = inner[sigma[j]];
    for (std::size_t b = 0; b < s.size(); ++b) tau[off_t[j] + b] = off_s[sigma[j]] + s[b];
  }
  return tau;
}

Wreath builtin_sm() {
  Wreath w;
  w.base = monad_path();
  w.endo = std::make_shared<SmMorphism>();
  const auto path = w.base;

  w.unit.from = identity_morphism(path);
  w.unit.to = w.endo;
  w.unit.rho = [path](const Bicomodule& p, int I, const Bicomodule& q, const Bicomodule& ncar) {
    const auto& a = p.arity(I);
    if (p.ops[I].object == kVertex) return Transposed{q.require(sm_vertex(1)), {kleisli_unit(*path, ncar, a, kVertex, 0)}};
    const auto& g = *a.base;
    const int src = *a.find_element(kVertex, g.morphism(*g.find_morphism("s")).name);
    const int tgt = *a.find_element(kVertex, g.morphism(*g.find_morphism("t")).name);
    const int e = *a.find_element(kEdge, g.morphism(g.identity(kEdge)).name);
    return Transposed{q.require(sm_edge({0})),
                      {kleisli_unit(*path, ncar, a, kVertex, src), kleisli_unit(*path, ncar, a, kVertex, tgt),
                       kleisli_unit(*path, ncar, a, kEdge, e)}};
  };

  w.mult.from = compose_morphisms(w.endo, w.endo);
  w.mult.to = w.endo;
  w.mult.rho = [path](const Bicomodule& p, int I, const Bicomodule& q, const Bicomodule& ncar) {
    const auto& n = *p.parts->first;
    const auto& inner_b = *p.parts->second;
    const int S = p.parts->outer[I];
    const auto J = composite_inner(p, I);
    const auto& a = p.arity(I);
    const auto& col = p.parts->arity_colimit[I];
    auto unit_at = [&](int z, int o, int x) { return kleisli_unit(*path, ncar, a, o, col.injections[z](o, x)); };
    const auto& aS = n.arity(S);
    if (n.ops[S].object == kVertex) {
      Transposed t;
      int total = 0;
      for (int i = 0; i < aS.size(kVertex); ++i) {
        const int z = flat_index(aS, kVertex, i);
        const int Mi = inner_b.arity(J[z]).size(kVertex);
        for (int b = 0; b < Mi; ++b) t.arity.push_back(unit_at(z, kVertex, b));
        total += Mi;
      }
      t.position = q.require(sm_vertex(total));
      return t;
    }
    const auto sigma = parse_sm_edge(n.ops[S].name);
    const int N = static_cast<int>(sigma.size());
    std::vector<Permutation> inner;
    for (int i = 0; i < N; ++i) inner.push_back(parse_sm_edge(inner_b.ops[J[flat_index(aS, kEdge, i)]].name));
    const auto tau = sm_multiply(sigma, inner);
    const int pos = q.require(sm_edge(tau));
    Transposed t{pos, std::vector<KleisliElement>(q.arity(pos).total_size())};
    const auto& ap = q.arity(pos);
    int k = 0;
    for (int i = 0; i < N; ++i) {
      const int z = flat_index(aS, kEdge, i);
      for (std::size_t b = 0; b < inner[i].size(); ++b, ++k) {
        const int bb = static_cast<int>(b);
        t.arity[flat_index(ap, kEdge, k)] = unit_at(z, kEdge, bb);
        t.arity[flat_index(ap, kVertex, 2 * k)] = unit_at(z, kVertex, 2 * bb);
        t.arity[flat_index(ap, kVertex, 2 * k + 1)] = unit_at(z, kVertex, 2 * bb + 1);
      }
    }
    return t;
  };
  return w;
}

MorphismPtr sm_constant_cocomposition() {
  const auto sm = builtin_sm().endo;
  return modify_morphism(sm, "sm-constant", [](const Bicomodule& mp, int k, const Bicomodule& ncar, Transposed t) {
    if (mp.ops[k].object != kEdge) return t;
    const int e0 = ncar.require(path_edge(0));
    for (auto& ke : t.arity)
      if (ncar.ops[ke.op].object == kEdge) ke = {e0, {ke.leg[0]}};  // vertex 0 of vec n is the start
    return t;
  });
}

Report check_wreath(const Wreath& w, int bound) {
  Report r;
  r.subject = "wreath " + w.endo->name() + " over " + w.base->name();
  r.status = Status::exact_at(bound);
  r.merge(check_monad_morphism(*w.endo, bound), "endomorphism: ");
  r.merge(check_2cell(w.unit, bound), "unit: ");
  r.merge(check_2cell(w.mult, bound), "multiplication: ");
  r.merge(check_monad(*wreath_composite(w), bound), "composite: ");
  return r;
}

MonadPtr wreath_composite(const Wreath& w) { return std::make_shared<WreathMonad>(w); }

// ------------------------------------------------------------ comparison

MonadComparison compare_monads(const MonadPtr& a, const MonadPtr& b, int bound, int min_samples) {
  MonadComparison out;
  auto& r = out.report;
  r.subject = a->name() + " vs " + b->name();
  r.status = Status::exact_at(bound);
  const auto A = a->carrier(bound);
  const auto B = b->carrier(bound);
  const auto iso = find_isomorphism(*A, *B);
  if (!iso) {
    r.fail("carriers are not isomorphic at bound " + std::to_string(bound) + " (" + std::to_string(A->size()) + " vs " +
           std::to_string(B->size()) + " operations)");
    return out;
  }
  out.iso = *iso;
  r.notes.push_back("carriers isomorphic: " + std::to_string(A->size()) + " operations with arities and boundaries");
  const auto& c = *a->base();
  for (int C = 0; C < c.num_objects(); ++C) {
    ++r.checked;
    const auto ua = a->unit(C);
    const auto ub = b->unit(C);
    const int ka = A->require(ua.op), kb = B->require(ub.op);
    if (iso->on_ops[ka] != kb) {
      r.fail("η(" + c.object_name(C) + "): " + ua.op + " corresponds to " + B->ops[iso->on_ops[ka]].name + ", not " + ub.op);
      continue;
    }
    if (!(compose(ub.iso, iso->on_arities[ka]) == ua.iso)) r.fail("η(" + c.object_name(C) + "): arity isomorphisms disagree");
  }

  const auto AP = A;
  const auto AA = compose_bicomodules(AP, AP, {bound, -1, {}});
  int unit_samples = 0;
  for (int x = 0; x < AA.size(); ++x) {
    const int M = AA.parts->outer[x];
    const auto N = composite_inner(AA, x);
    ResolvedComposite ra;
    try {
      ra = resolve(*a, *A, M, N, *A);
    } catch (const BoundExhausted&) {
      continue;
    }
    const int Mb = iso->on_ops[M];
    std::vector<int> Nb, zs;
    for (const auto& [o, v] : flatten(B->arity(Mb))) {
      const int z = flat_index(A->arity(M), o, iso->on_arities[M](o, v));
      zs.push_back(z);
      Nb.push_back(iso->on_ops[N[z]]);
    }
    const std::string where = "μ at " + AA.ops[x].name;
    ++out.mu_samples;
    ++r.checked;
    bool has_unit = false;
    for (int C = 0; C < c.num_objects(); ++C) {
      const auto u = A->find(a->unit(C).op);
      has_unit |= u && (M == *u || std::find(N.begin(), N.end(), *u) != N.end());
    }
    unit_samples += has_unit;
    ResolvedComposite rb;
    try {
      rb = resolve(*b, *B, Mb, Nb, *B);
    } catch (const BoundExhausted&) {
      r.fail(where + ": the other monad's composite lies beyond the bound");
      continue;
    }
    if (iso->on_ops[ra.op] != rb.op) {
      r.fail(where + ": " + A->ops[ra.op].name + " corresponds to " + B->ops[iso->on_ops[ra.op]].name + ", not " +
             B->ops[rb.op].name);
      continue;
    }
    for (std::size_t v = 0; v < zs.size(); ++v) {
      const auto lhs = compose(rb.cocone[v], iso->on_arities[ra.op]);
      const auto rhs = compose(iso->on_arities[N[zs[v]]], ra.cocone[zs[v]]);
      if (!(lhs == rhs)) {
        r.fail(where + ": cocone leg " + std::to_string(v) + " disagrees");
        break;
      }
    }
  }
  r.notes.push_back(std::to_string(out.mu_samples) + " μ instances compared, " + std::to_string(unit_samples) +
                    " of them involving η");
  if (out.mu_samples < min_samples)
    r.fail("only " + std::to_string(out.mu_samples) + " μ instances at bound " + std::to_string(bound));
  return out;
}

}  // namespace polycat
