#include <algorithm>
#include <set>

#include "polycat/coclosure.hpp"

namespace polycat {

ElementRef Coclosure::element(int I, int K, const std::vector<int>& h) const {
  const auto& part = *arity_parts[I];
  std::vector<std::string> names;
  for (int v : h) names.push_back(part.parts->second->ops[v].name);
  const int k = part.require(composite_name(q->ops[K].name, names));
  return {part.ops[k].object, views[I].local[k]};
}

std::pair<int, std::vector<int>> Coclosure::unpack(int I, ElementRef x) const {
  const auto& part = *arity_parts[I];
  const int k = views[I].global[x.object][x.index];
  return {part.parts->outer[k], composite_inner(part, k)};
}

Coclosure coclosure(const BicomodulePtr& p, const BicomodulePtr& q, const ComposeOptions& opts) {
  if (p->right->num_objects() != q->right->num_objects()) throw InputError("coclosure needs a shared right category");
  Coclosure cl;
  cl.p = p;
  cl.q = q;
  Bicomodule out(p->left, q->left);
  Status status = meet(p->status, q->status);
  for (int I = 0; I < p->size(); ++I) {
    auto x = std::make_shared<const Bicomodule>(copresheaf_as_bicomodule(p->arity(I)));
    auto part = std::make_shared<const Bicomodule>(compose_bicomodules(q, x, opts));
    status = meet(status, part->status);
    cl.views.push_back(operations_view(*part));
    out.add_op({p->ops[I].name, p->ops[I].object, p->ops[I].degree, cl.views.back().ops});
    cl.arity_parts.push_back(std::move(part));
  }
  const auto& c = *p->left;
  for (int I = 0; I < p->size(); ++I)
    for (int f : c.out(p->ops[I].object)) {
      if (c.is_identity(f)) continue;
      const auto& la = p->act(I, f);
      const int fI = la.target;
      const auto& pI = p->arity(I);
      std::vector<int> r;  // flattened p[fI] -> flattened p[I]
      for (const auto& [o, x] : flatten(p->arity(fI))) r.push_back(flat_index(pI, o, la.restriction(o, x)));
      CopresheafMap m;
      const auto& afI = out.arity(fI);
      m.components.resize(q->left->num_objects());
      for (int D = 0; D < afI.base->num_objects(); ++D)
        for (int x = 0; x < afI.size(D); ++x) {
          auto [K, h] = cl.unpack(fI, {D, x});
          for (int& v : h) v = r[v];
          m.components[D].push_back(cl.element(I, K, h).index);
        }
      out.set_action(I, f, fI, std::move(m));
    }
  out.fill_identity_actions();
  out.status = status;
  cl.bicomodule = std::make_shared<const Bicomodule>(std::move(out));
  return cl;
}

namespace {

std::string request_name(const Bicomodule& p, const Bicomodule& q, int I, const std::vector<int>& j) {
  std::vector<std::string> names;
  for (int v : j) names.push_back(q.ops[v].name);
  return composite_name(p.ops[I].name, names);
}

CopresheafMap sized(const CategoryPtr& c) {
  CopresheafMap m;
  m.components.resize(c->num_objects());
  return m;
}

}  // namespace

MapInto coclosure_unit(const Coclosure& cl) {
  const auto& PQ = *cl.bicomodule;
  std::vector<std::pair<int, std::vector<int>>> req;
  for (int I = 0; I < PQ.size(); ++I) {
    std::vector<int> j;
    for (const auto& x : flatten(PQ.arity(I))) j.push_back(cl.unpack(I, x).first);
    req.push_back({I, std::move(j)});
  }
  auto S = std::make_shared<const Bicomodule>(compose_sparse(cl.bicomodule, cl.q, req));
  MapInto u{{}, S};
  for (int I = 0; I < PQ.size(); ++I) {
    const int t = S->require(request_name(PQ, *cl.q, I, req[I].second));
    const auto& col = S->parts->arity_colimit[t];
    const auto& pI = cl.p->arity(I);
    const auto elems = flatten(PQ.arity(I));
    auto m = sized(S->right);
    for (int e = 0; e < S->right->num_objects(); ++e)
      for (const auto& [z, w] : col.representative[e]) {
        const auto [K, h] = cl.unpack(I, elems[z]);
        m.components[e].push_back(unflatten(pI, h[flat_index(cl.q->arity(K), e, w)]).index);
      }
    u.map.on_ops.push_back(t);
    u.map.on_arities.push_back(std::move(m));
  }
  return u;
}

MapInto transpose(const Coclosure& cl, const BicomoduleMap& f, const BicomodulePtr& r) {
  const auto& PQ = *cl.bicomodule;
  std::vector<std::pair<int, std::vector<int>>> req;
  for (int I = 0; I < PQ.size(); ++I) {
    const int R = f.on_ops[I];
    std::vector<int> j;
    for (const auto& [o, a] : flatten(r->arity(R))) j.push_back(cl.unpack(I, {o, f.on_arities[I](o, a)}).first);
    req.push_back({R, std::move(j)});
  }
  auto S = std::make_shared<const Bicomodule>(compose_sparse(r, cl.q, req));
  MapInto g{{}, S};
  for (int I = 0; I < PQ.size(); ++I) {
    const int R = f.on_ops[I];
    const int t = S->require(request_name(*r, *cl.q, R, req[I].second));
    const auto& col = S->parts->arity_colimit[t];
    const auto& pI = cl.p->arity(I);
    const auto elems = flatten(r->arity(R));
    auto m = sized(S->right);
    for (int e = 0; e < S->right->num_objects(); ++e)
      for (const auto& [z, w] : col.representative[e]) {
        const auto [o, a] = elems[z];
        const auto [K, h] = cl.unpack(I, {o, f.on_arities[I](o, a)});
        m.components[e].push_back(unflatten(pI, h[flat_index(cl.q->arity(K), e, w)]).index);
      }
    g.map.on_ops.push_back(t);
    g.map.on_arities.push_back(std::move(m));
  }
  return g;
}

BicomoduleMap untranspose(const Coclosure& cl, const BicomoduleMap& g, const Bicomodule& rq) {
  if (!rq.parts) throw FrameMismatch("untranspose needs a composite codomain");
  const auto& r = *rq.parts->first;
  BicomoduleMap f;
  for (int I = 0; I < cl.p->size(); ++I) {
    const int t = g.on_ops[I];
    const int R = rq.parts->outer[t];
    const auto J = composite_inner(rq, t);
    const auto& col = rq.parts->arity_colimit[t];
    const auto& pI = cl.p->arity(I);
    auto m = sized(r.right);
    const auto elems = flatten(r.arity(R));
    for (std::size_t a = 0; a < elems.size(); ++a) {
      const int K = J[a];
      std::vector<int> h;
      for (const auto& [e, w] : flatten(cl.q->arity(K)))
        h.push_back(flat_index(pI, e, g.on_arities[I](e, col.injections[a](e, w))));
      m.components[elems[a].object].push_back(cl.element(I, K, h).index);
    }
    f.on_ops.push_back(R);
    f.on_arities.push_back(std::move(m));
  }
  return f;
}

BicomoduleMap coclosure_map(const Coclosure& from, const BicomoduleMap& g, const Coclosure& to) {
  BicomoduleMap out;
  for (int I = 0; I < from.p->size(); ++I) {
    const int gI = g.on_ops[I];
    const auto& pI = from.p->arity(I);
    const auto& ar = to.bicomodule->arity(gI);
    auto m = sized(ar.base);
    for (int D = 0; D < ar.base->num_objects(); ++D)
      for (int x = 0; x < ar.size(D); ++x) {
        auto [K, h] = to.unpack(gI, {D, x});
        const auto& pgI = to.p->arity(gI);
        for (int& v : h) {
          const auto ref = unflatten(pgI, v);
          v = flat_index(pI, ref.object, g.on_arities[I](ref.object, ref.index));
        }
        m.components[D].push_back(from.element(I, K, h).index);
      }
    out.on_ops.push_back(gI);
    out.on_arities.push_back(std::move(m));
  }
  return out;
}

Counit coclosure_counit(const BicomodulePtr& rq, const ComposeOptions& opts) {
  if (!rq->parts) throw FrameMismatch("counit needs a composite r ◁ q");
  Counit c{coclosure(rq, rq->parts->second, opts), {}};
  c.map = untranspose(c.cl, identity_map(*rq), *rq);
  return c;
}

Report check_triangles(const BicomodulePtr& p, const BicomodulePtr& q, const BicomodulePtr& rq, const ComposeOptions& opts) {
  Report r;
  r.subject = "coclosure triangle identities";
  {
    auto cl = coclosure(p, q, opts);
    auto u = coclosure_unit(cl);
    r.merge(check_square(u.map, *p, *u.codomain), "unit: ");
    auto cl2 = coclosure(u.codomain, q, opts);
    auto Lu = coclosure_map(cl, u.map, cl2);
    auto eps = untranspose(cl2, identity_map(*u.codomain), *u.codomain);
    r.merge(check_square(Lu, *cl.bicomodule, *cl2.bicomodule), "[unit, q]: ");
    r.merge(check_square(eps, *cl2.bicomodule, *cl.bicomodule), "counit: ");
    ++r.checked;
    if (!(compose(Lu, eps) == identity_map(*cl.bicomodule))) r.fail("counit ∘ [unit, q] is not the identity on [p,q]");
  }
  {
    auto counit = coclosure_counit(rq, opts);
    auto u = coclosure_unit(counit.cl);
    auto back = whisker_right(*u.codomain, counit.map, *rq);
    ++r.checked;
    if (!(compose(u.map, back) == identity_map(*rq))) r.fail("(counit ◁ q) ∘ unit is not the identity on r ◁ q");
  }
  return r;
}

AdjunctionCheck check_adjunction(const Coclosure& cl, const BicomodulePtr& r, const BicomodulePtr& rq) {
  AdjunctionCheck a;
  a.report.subject = "coclosure adjunction";
  auto left = enumerate_bicomodule_maps(*cl.bicomodule, *r);
  auto right = enumerate_bicomodule_maps(*cl.p, *rq);
  a.left = left.items.size();
  a.right = right.items.size();
  if (a.left != a.right)
    a.report.fail("hom-set sizes differ: " + std::to_string(a.left) + " vs " + std::to_string(a.right));
  std::set<std::size_t> hit;
  for (const auto& f : left.items) {
    auto g = transpose(cl, f, r);
    // move into the full composite by name; arities coincide
    BicomoduleMap moved = g.map;
    for (auto& t : moved.on_ops) t = rq->require(g.codomain->ops[t].name);
    ++a.report.checked;
    auto it = std::find(right.items.begin(), right.items.end(), moved);
    if (it == right.items.end()) {
      a.report.fail("a transpose is not a bicomodule map p -> r ◁ q");
      continue;
    }
    hit.insert(static_cast<std::size_t>(it - right.items.begin()));
    if (!(untranspose(cl, moved, *rq) == f)) a.report.fail("transposing twice does not return the map");
  }
  if (hit.size() != left.items.size()) a.report.fail("transposition is not injective");
  if (hit.size() != right.items.size()) a.report.fail("transposition is not surjective");
  return a;
}

}  // namespace polycat
