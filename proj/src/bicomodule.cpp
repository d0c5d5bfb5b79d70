#include <algorithm>
#include <functional>

#include "polycat/comod.hpp"
#include "polycat/standard.hpp"
#include "polycat/union_find.hpp"

namespace polycat {

int Bicomodule::add_op(Operation op) {
  if (index_.count(op.name)) throw InputError("duplicate operation " + op.name);
  const int k = size();
  index_[op.name] = k;
  ops.push_back(std::move(op));
  action.emplace_back(left->num_morphisms());
  return k;
}

std::optional<int> Bicomodule::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Bicomodule::require(std::string_view name) const {
  auto k = find(name);
  if (!k) throw BoundExhausted("operation " + std::string(name) + " lies beyond the enumerated range");
  return *k;
}

void Bicomodule::set_action(int op, int f, int target, CopresheafMap restriction) {
  action[op][f] = {target, std::move(restriction)};
}

void Bicomodule::fill_identity_actions() {
  for (int k = 0; k < size(); ++k) set_action(k, left->identity(ops[k].object), k, identity_map(ops[k].arity));
}

std::string composite_name(const std::string& outer, const std::vector<std::string>& inner) {
  std::string s = outer + "[";
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (i) s += ",";
    s += inner[i];
  }
  return s + "]";
}

std::vector<int> composite_inner(const Bicomodule& pq, int k) {
  if (!pq.parts) throw InputError("expected a composite bicomodule");
  const auto& P = *pq.parts;
  std::vector<int> j;
  for (const auto& [o, x] : flatten(P.first->arity(P.outer[k]))) j.push_back(P.inner[k](o, x));
  return j;
}

OperationsView operations_view(const Bicomodule& p) {
  OperationsView v;
  v.ops = Copresheaf(p.left);
  v.local.resize(p.size());
  v.global.resize(p.left->num_objects());
  for (int k = 0; k < p.size(); ++k) {
    const int o = p.ops[k].object;
    v.local[k] = v.ops.add_element(o, p.ops[k].name);
    v.global[o].push_back(k);
  }
  for (int f = 0; f < p.left->num_morphisms(); ++f) {
    const int a = p.left->src(f);
    v.ops.action[f].resize(v.ops.size(a));
    for (int x = 0; x < v.ops.size(a); ++x) {
      const int t = p.act(v.global[a][x], f).target;
      v.ops.action[f][x] = t < 0 ? -1 : v.local[t];
    }
  }
  return v;
}

int flat_index(const Copresheaf& x, int o, int e) {
  int k = 0;
  for (int a = 0; a < o; ++a) k += x.size(a);
  return k + e;
}

ElementRef unflatten(const Copresheaf& x, int k) {
  int o = 0;
  while (k >= x.size(o)) k -= x.size(o++);
  return {o, k};
}

// ------------------------------------------------------------------ builders

Bicomodule identity_bicomodule(const CategoryPtr& c) {
  Bicomodule p(c, c);
  std::vector<Copresheaf> reps;
  for (int o = 0; o < c->num_objects(); ++o) {
    reps.push_back(representable(c, o));
    p.add_op({c->object_name(o), o, 0, reps.back()});
  }
  // element index of h inside c[src h]
  std::vector<int> elem(c->num_morphisms());
  for (int o = 0; o < c->num_objects(); ++o)
    for (int h : c->out(o)) elem[h] = *reps[o].find_element(c->tgt(h), c->morphism(h).name);
  for (int f = 0; f < c->num_morphisms(); ++f) {
    const int a = c->src(f), b = c->tgt(f);
    CopresheafMap r;
    r.components.resize(c->num_objects());
    for (int o = 0; o < c->num_objects(); ++o) r.components[o].assign(reps[b].size(o), -1);
    for (int g : c->out(b)) r.components[c->tgt(g)][elem[g]] = elem[c->compose(f, g)];
    p.set_action(a, f, b, std::move(r));
  }
  p.status = Status{};
  return p;
}

Bicomodule copresheaf_as_bicomodule(const Copresheaf& x) {
  const auto& c = *x.base;
  Bicomodule p(x.base, empty_category());
  bool clash = false;
  {
    std::map<std::string, int> seen;
    for (int o = 0; o < c.num_objects(); ++o)
      for (const auto& n : x.elements[o]) clash |= seen[n]++ > 0;
  }
  Copresheaf none(empty_category());
  for (int o = 0; o < c.num_objects(); ++o)
    for (int e = 0; e < x.size(o); ++e)
      p.add_op({clash ? c.object_name(o) + ":" + x.elements[o][e] : x.elements[o][e], o, 0, none});
  std::vector<int> first(c.num_objects() + 1, 0);
  for (int o = 0; o < c.num_objects(); ++o) first[o + 1] = first[o] + x.size(o);
  for (int f = 0; f < c.num_morphisms(); ++f)
    for (int e = 0; e < x.size(c.src(f)); ++e)
      p.set_action(first[c.src(f)] + e, f, first[c.tgt(f)] + x.apply(f, e), CopresheafMap{});
  p.status = Status{};
  return p;
}

Copresheaf bicomodule_as_copresheaf(const Bicomodule& p) {
  for (const auto& op : p.ops)
    if (op.arity.total_size() > 0) throw NonEmptyDirections("operation " + op.name + " has directions");
  return operations_view(p).ops;
}

// ---------------------------------------------------------------- composition

namespace {

struct ShapeData {
  CategoryOfElements el;
  std::vector<std::pair<int, int>> origin;  // shape morphism -> (base morphism, element)
};

ShapeData shape_of(const Copresheaf& x) {
  ShapeData s{category_of_elements(x), {}};
  s.origin.resize(s.el.category->num_morphisms());
  for (const auto& [key, m] : s.el.morphism_index_) s.origin[m] = key;
  return s;
}

// Colimit over el(p[I]) of z ↦ q[J z]; J given per flattened element.
Colimit arity_colimit(const ShapeData& shape, const Copresheaf& pI, const Bicomodule& q, const std::vector<int>& j) {
  ElementsDiagram d;
  d.shape = shape.el.category;
  d.base = q.right;
  d.variance = ElementsDiagram::Variance::Contravariant;
  for (int z = 0; z < d.shape->num_objects(); ++z) d.values.push_back(q.arity(j[z]));
  d.transitions.resize(d.shape->num_morphisms());
  for (int k = 0; k < d.shape->num_morphisms(); ++k) {
    const auto [f, x] = shape.origin[k];
    const int z = d.shape->src(k);
    const auto& la = q.act(j[z], f);
    d.transitions[k] = la.restriction;
    (void)x;
    (void)pI;
  }
  return colimit_over_elements(d);
}

int max_degree(const Bicomodule& p) {
  int m = 0;
  for (const auto& op : p.ops) m = std::max(m, op.degree);
  return m;
}

// Left action of the composite (shared by the main route and the oracle).
void composite_left_action(Bicomodule& out, const Bicomodule& p, const std::vector<int>& outer,
                           const std::vector<std::vector<int>>& inner, const std::vector<Colimit>& colims,
                           const std::map<int, ShapeData>& shapes) {
  const auto& c = *p.left;
  for (int k = 0; k < out.size(); ++k) {
    const int I = outer[k];
    for (int f : c.out(p.ops[I].object)) {
      if (c.is_identity(f)) continue;
      const auto& la = p.act(I, f);
      const int fI = la.target;
      const auto& pfI = p.arity(fI);
      const auto& pI = p.arity(I);
      std::vector<int> jr;
      std::vector<std::string> names;
      std::vector<int> rz;  // flattened element of p[fI] -> flattened element of p[I]
      for (const auto& [o, x] : flatten(pfI)) {
        const int z = flat_index(pI, o, la.restriction(o, x));
        rz.push_back(z);
        jr.push_back(inner[k][z]);
      }
      for (int v : jr) names.push_back(out.parts->second->ops[v].name);
      const int t = out.require(composite_name(p.ops[fI].name, names));
      const auto& ct = colims[t];
      const auto& ck = colims[k];
      CopresheafMap r;
      r.components.resize(out.right->num_objects());
      for (int e = 0; e < out.right->num_objects(); ++e)
        for (const auto& [zt, w] : ct.representative[e]) r.components[e].push_back(ck.injections[rz[zt]].components[e][w]);
      out.set_action(k, f, t, std::move(r));
    }
  }
  (void)shapes;
}

}  // namespace

Bicomodule compose_bicomodules(const BicomodulePtr& p, const BicomodulePtr& q, const ComposeOptions& opts) {
  if (p->right->num_objects() != q->left->num_objects()) throw InputError("middle categories differ");
  Bicomodule out(p->left, q->right);
  out.parts = std::make_shared<CompositeParts>();
  out.parts->first = p;
  out.parts->second = q;
  const auto view = operations_view(*q);

  std::vector<int> seeds = opts.seeds;
  if (seeds.empty())
    for (int i = 0; i < p->size(); ++i) seeds.push_back(i);
  std::sort(seeds.begin(), seeds.end());

  std::vector<int> outer;
  std::vector<std::vector<int>> inner;
  std::vector<Colimit> colims;
  std::map<int, ShapeData> shapes;
  for (int I : seeds) {
    const auto& op = p->ops[I];
    if (opts.bound >= 0 && op.degree > opts.bound) continue;
    const auto& pI = op.arity;
    auto& shape = shapes.emplace(I, shape_of(pI)).first->second;
    MapSearch ms;
    ms.weight = [&](int o, int y) { return q->ops[view.global[o][y]].degree; };
    if (opts.bound >= 0) ms.budget = opts.bound - op.degree;
    if (opts.inner_cap >= 0)
      ms.admissible = [&](int o, int y) { return q->ops[view.global[o][y]].degree <= opts.inner_cap; };
    const auto elems = flatten(pI);
    for_each_copresheaf_map(pI, view.ops, ms, [&](const CopresheafMap& m) {
      std::vector<int> j;
      std::vector<std::string> names;
      int degree = op.degree;
      for (const auto& [o, x] : elems) {
        j.push_back(view.global[o][m(o, x)]);
        names.push_back(q->ops[j.back()].name);
        degree += q->ops[j.back()].degree;
      }
      Colimit col = arity_colimit(shape, pI, *q, j);
      out.add_op({composite_name(op.name, names), op.object, degree, col.object});
      outer.push_back(I);
      inner.push_back(j);
      colims.push_back(std::move(col));
      return true;
    });
  }
  composite_left_action(out, *p, outer, inner, colims, shapes);
  out.fill_identity_actions();

  for (std::size_t k = 0; k < outer.size(); ++k) {
    CopresheafMap jm;
    jm.components.resize(p->right->num_objects());
    const auto elems = flatten(p->arity(outer[k]));
    for (std::size_t z = 0; z < elems.size(); ++z) jm.components[elems[z].object].push_back(inner[k][z]);
    out.parts->inner.push_back(std::move(jm));
  }
  out.parts->outer = std::move(outer);
  out.parts->arity_colimit = std::move(colims);

  bool exact = p->status.exact() && q->status.exact();
  if (exact && opts.bound >= 0) {
    int widest = 0;
    for (const auto& op : p->ops) widest = std::max(widest, op.degree + op.arity.total_size() * max_degree(*q));
    exact = opts.bound >= widest;
  }
  if (exact && opts.inner_cap >= 0) exact = opts.inner_cap >= max_degree(*q);
  const int b = std::max(opts.bound, opts.inner_cap);
  out.status = exact ? Status::exact_at(b) : Status::truncated_at(b);
  return out;
}

Bicomodule compose_bicomodules(const Bicomodule& p, const Bicomodule& q, const ComposeOptions& opts) {
  return compose_bicomodules(std::make_shared<const Bicomodule>(p), std::make_shared<const Bicomodule>(q), opts);
}

Bicomodule compose_sparse(const BicomodulePtr& p, const BicomodulePtr& q,
                          const std::vector<std::pair<int, std::vector<int>>>& requests) {
  if (p->right->num_objects() != q->left->num_objects()) throw InputError("middle categories differ");
  const auto& c = *p->left;
  Bicomodule out(p->left, q->right);
  out.parts = std::make_shared<CompositeParts>();
  out.parts->first = p;
  out.parts->second = q;
  std::vector<int> outer;
  std::vector<std::vector<int>> inner;
  std::vector<Colimit> colims;
  std::map<int, ShapeData> shapes;
  std::vector<std::pair<int, std::vector<int>>> queue(requests);
  for (std::size_t next = 0; next < queue.size(); ++next) {
    const auto [I, j] = queue[next];
    const auto& op = p->ops[I];
    std::vector<std::string> names;
    int degree = op.degree;
    for (int v : j) {
      names.push_back(q->ops[v].name);
      degree += q->ops[v].degree;
    }
    const auto name = composite_name(op.name, names);
    if (out.find(name)) continue;
    const auto elems = flatten(op.arity);
    if (elems.size() != j.size()) throw InputError("composite request for " + name + " has the wrong length");
    for (std::size_t z = 0; z < j.size(); ++z)
      if (q->ops[j[z]].object != elems[z].object) throw InputError("composite request " + name + " is mistyped");
    auto& shape = shapes.try_emplace(I, shape_of(op.arity)).first->second;
    Colimit col = arity_colimit(shape, op.arity, *q, j);
    out.add_op({name, op.object, degree, col.object});
    outer.push_back(I);
    inner.push_back(j);
    colims.push_back(std::move(col));
    for (int f : c.out(op.object)) {
      if (c.is_identity(f)) continue;
      const auto& la = p->act(I, f);
      const auto& pfI = p->arity(la.target);
      std::vector<int> jr;
      for (const auto& [o, x] : flatten(pfI)) jr.push_back(j[flat_index(op.arity, o, la.restriction(o, x))]);
      queue.push_back({la.target, std::move(jr)});
    }
  }
  composite_left_action(out, *p, outer, inner, colims, shapes);
  out.fill_identity_actions();
  for (std::size_t k = 0; k < outer.size(); ++k) {
    CopresheafMap jm;
    jm.components.resize(p->right->num_objects());
    const auto elems = flatten(p->arity(outer[k]));
    for (std::size_t z = 0; z < elems.size(); ++z) jm.components[elems[z].object].push_back(inner[k][z]);
    out.parts->inner.push_back(std::move(jm));
  }
  out.parts->outer = std::move(outer);
  out.parts->arity_colimit = std::move(colims);
  out.status = Status::truncated_at(-1);
  return out;
}

// --------------------------------------------------------- equalizer oracle

Bicomodule compose_bicomodules_equalizer_oracle(const Bicomodule& p, const Bicomodule& q, int bound) {
  if (p.right->num_objects() != q.left->num_objects()) throw InputError("middle categories differ");
  const auto& d = *p.right;
  const auto& e = *q.right;
  Bicomodule out(p.left, q.right);
  out.parts = std::make_shared<CompositeParts>();
  out.parts->first = std::make_shared<const Bicomodule>(p);
  out.parts->second = std::make_shared<const Bicomodule>(q);
  std::vector<int> outer;
  std::vector<std::vector<int>> inner;
  std::vector<Colimit> colims;
  std::map<int, ShapeData> shapes;

  for (int I = 0; I < p.size(); ++I) {
    const auto& op = p.ops[I];
    if (bound >= 0 && op.degree > bound) continue;
    const auto& pI = op.arity;
    const auto elems = flatten(pI);
    const int n = static_cast<int>(elems.size());
    std::vector<int> j(n, 0);
    // all plain assignments of q-positions to directions, degree-pruned
    std::function<void(int, int)> rec = [&](int z, int used) {
      if (z == n) {
        // equalizer of ρ◁q and p◁λ on positions
        for (int a = 0; a < n; ++a) {
          const auto [o, x] = elems[a];
          if (q.ops[j[a]].object != o) return;
          for (int f : d.out(o)) {
            const int fz = flat_index(pI, d.tgt(f), pI.apply(f, x));
            if (q.act(j[a], f).target != j[fz]) return;
          }
        }
        // directions: Σ_z q[Jz], coequalized along both maps out of p◁d◁q
        std::vector<int> base(n + 1, 0);
        for (int a = 0; a < n; ++a) base[a + 1] = base[a] + q.arity(j[a]).total_size();
        UnionFind uf(base[n]);
        for (int a = 0; a < n; ++a) {
          const auto [o, x] = elems[a];
          for (int f : d.out(o)) {
            const int fz = flat_index(pI, d.tgt(f), pI.apply(f, x));
            const auto& qf = q.arity(j[fz]);
            const auto& r = q.act(j[a], f).restriction;
            for (const auto& [eo, w] : flatten(qf))
              uf.unite(base[fz] + flat_index(qf, eo, w), base[a] + flat_index(q.arity(j[a]), eo, r(eo, w)));
          }
        }
        Colimit col;
        col.object = Copresheaf(q.right);
        col.representative.resize(e.num_objects());
        col.injections.assign(n, CopresheafMap{std::vector<std::vector<int>>(e.num_objects())});
        std::vector<int> cls(base[n], -1);
        // classes in (object, least representative) order, matching the main route
        for (int eo = 0; eo < e.num_objects(); ++eo)
          for (int a = 0; a < n; ++a) {
            const auto& qa = q.arity(j[a]);
            for (int w = 0; w < qa.size(eo); ++w) {
              const int g = base[a] + flat_index(qa, eo, w);
              const int root = uf.find(g);
              if (cls[root] < 0) {
                cls[root] = col.object.add_element(eo, pI.base->object_name(elems[a].object) + ":" +
                                                           pI.elements[elems[a].object][elems[a].index] + "/" +
                                                           qa.elements[eo][w]);
                col.representative[eo].push_back({a, w});
              }
              cls[g] = cls[root];
            }
          }
        for (int a = 0; a < n; ++a) {
          const auto& qa = q.arity(j[a]);
          for (int eo = 0; eo < e.num_objects(); ++eo)
            for (int w = 0; w < qa.size(eo); ++w)
              col.injections[a].components[eo].push_back(cls[base[a] + flat_index(qa, eo, w)]);
        }
        for (int g = 0; g < e.num_morphisms(); ++g) {
          const int src = e.src(g), tgt = e.tgt(g);
          col.object.action[g].assign(col.object.size(src), -1);
          for (int a = 0; a < n; ++a) {
            const auto& qa = q.arity(j[a]);
            for (int w = 0; w < qa.size(src); ++w) {
              int& slot = col.object.action[g][col.injections[a].components[src][w]];
              const int img = col.injections[a].components[tgt][qa.apply(g, w)];
              if (slot >= 0 && slot != img) throw InducedActionIllDefined("coequalizer does not respect the action");
              slot = img;
            }
          }
        }
        std::vector<std::string> names;
        int degree = op.degree;
        for (int a = 0; a < n; ++a) {
          names.push_back(q.ops[j[a]].name);
          degree += q.ops[j[a]].degree;
        }
        out.add_op({composite_name(op.name, names), op.object, degree, col.object});
        outer.push_back(I);
        inner.push_back(j);
        colims.push_back(std::move(col));
        return;
      }
      for (int v = 0; v < q.size(); ++v) {
        if (bound >= 0 && op.degree + used + q.ops[v].degree > bound) continue;
        j[z] = v;
        rec(z + 1, used + q.ops[v].degree);
      }
    };
    rec(0, 0);
  }
  composite_left_action(out, p, outer, inner, colims, shapes);
  out.fill_identity_actions();
  for (std::size_t k = 0; k < outer.size(); ++k) {
    CopresheafMap jm;
    jm.components.resize(d.num_objects());
    const auto elems = flatten(p.arity(outer[k]));
    for (std::size_t z = 0; z < elems.size(); ++z) jm.components[elems[z].object].push_back(inner[k][z]);
    out.parts->inner.push_back(std::move(jm));
  }
  out.parts->outer = std::move(outer);
  out.parts->arity_colimit = std::move(colims);
  out.status = meet(p.status, q.status);
  if (bound >= 0) out.status = Status::truncated_at(bound);
  return out;
}

// ------------------------------------------------------------------- checks

Report check_bicomodule(const Bicomodule& p) {
  Report r;
  r.subject = "bicomodule";
  const auto& c = *p.left;
  for (int k = 0; k < p.size(); ++k) {
    const auto& op = p.ops[k];
    if (op.arity.base != p.right && op.arity.base->num_objects() != p.right->num_objects()) {
      r.fail("arity of " + op.name + " lives over the wrong category");
      continue;
    }
    auto ar = check_copresheaf(op.arity);
    r.merge(ar, op.name + ": ");
    if (op.degree < 0) r.fail("negative degree at " + op.name);
    for (int f : c.out(op.object)) {
      const auto& la = p.act(k, f);
      ++r.checked;
      if (la.target < 0 || la.target >= p.size() || p.ops[la.target].object != c.tgt(f)) {
        r.fail("action of " + c.morphism(f).name + " on " + op.name + " is mistyped");
        continue;
      }
      auto nat = check_copresheaf_map(la.restriction, p.arity(la.target), op.arity);
      if (!nat.ok()) r.fail("restriction along " + c.morphism(f).name + " at " + op.name + " is not natural");
      if (c.is_identity(f) && (la.target != k || !(la.restriction == identity_map(op.arity))))
        r.fail("identity acts nontrivially on " + op.name);
    }
  }
  if (!r.ok()) return r;
  for (int k = 0; k < p.size(); ++k)
    for (int f : c.out(p.ops[k].object))
      for (int g : c.out(c.tgt(f))) {
        const int gf = c.compose(f, g);
        const int fk = p.act(k, f).target;
        ++r.checked;
        if (p.act(k, gf).target != p.act(fk, g).target) {
          r.fail("action not functorial at " + p.ops[k].name + " for " + c.morphism(g).name + " ∘ " + c.morphism(f).name);
          continue;
        }
        if (!(p.act(k, gf).restriction == compose(p.act(fk, g).restriction, p.act(k, f).restriction)))
          r.fail("restrictions not functorial at " + p.ops[k].name + " for " + c.morphism(g).name + " ∘ " +
                 c.morphism(f).name);
      }
  return r;
}

}  // namespace polycat
