#include <algorithm>

#include "polycat/coclosure.hpp"
#include "polycat/standard.hpp"

namespace polycat {

namespace {

CopresheafMap sized(const CategoryPtr& c) {
  CopresheafMap m;
  m.components.resize(c->num_objects());
  return m;
}

// Morphism of c named like the element x of a representable.
int morphism_of(const CategoryPtr& c, const Copresheaf& rep, int o, int x) { return *c->find_morphism(rep.elements[o][x]); }

}  // namespace

int Comonad::codomain(int I, ElementRef alpha) const { return pm->parts->outer[cl.unpack(I, alpha).first]; }

std::optional<ElementRef> Comonad::compose(int I, ElementRef alpha, ElementRef beta) const {
  const auto& PM = *pm;
  const auto& B = *PM.parts->second;
  const auto [K, h] = cl.unpack(I, alpha);
  const int J = PM.parts->outer[K];
  const auto N = composite_inner(PM, K);
  const auto [K2, h2] = cl.unpack(J, beta);
  const int J2 = PM.parts->outer[K2];
  const auto N2 = composite_inner(PM, K2);
  const auto& col = PM.parts->arity_colimit[K];
  const auto& col2 = PM.parts->arity_colimit[K2];
  const auto& aK = PM.arity(K);
  const auto& aK2 = PM.arity(K2);
  const int nz = static_cast<int>(N2.size());

  // μ at every element z' of p[J2]
  std::vector<ResolvedComposite> mu(nz);
  std::vector<std::vector<int>> ys(nz);  // element of p[J] reached by each u in m[N2 z']
  std::vector<std::string> names;
  try {
    for (int z = 0; z < nz; ++z) {
      std::vector<int> P;
      for (const auto& [e, u] : flatten(B.arity(N2[z]))) {
        const int y = h2[flat_index(aK2, e, col2.injections[z](e, u))];
        ys[z].push_back(y);
        P.push_back(N[y]);
      }
      mu[z] = resolve(*monad, B, N2[z], P, B);
      names.push_back(B.ops[mu[z].op].name);
    }
  } catch (const BoundExhausted&) {
    return std::nullopt;
  }
  const auto K3 = PM.find(composite_name(p->ops[J2].name, names));
  if (!K3) return std::nullopt;
  const auto& col3 = PM.parts->arity_colimit[*K3];
  const auto& aK3 = PM.arity(*K3);
  std::vector<int> h3(aK3.total_size(), -1);
  for (int z = 0; z < nz; ++z) {
    int u = 0;
    for (const auto& [eu, ui] : flatten(B.arity(N2[z]))) {
      (void)eu;
      (void)ui;
      const int y = ys[z][u];
      const auto& leg = mu[z].cocone[u];
      for (const auto& [ev, v] : flatten(B.arity(N[y]))) {
        const int cls = col3.injections[z](ev, leg(ev, v));
        h3[flat_index(aK3, ev, cls)] = h[flat_index(aK, ev, col.injections[y](ev, v))];
      }
      ++u;
    }
  }
  if (std::find(h3.begin(), h3.end(), -1) != h3.end()) throw LawViolation("Kleisli composite does not cover its arity");
  try {
    return cl.element(I, *K3, h3);
  } catch (const BoundExhausted&) {
    return std::nullopt;
  }
}

Comonad coclosure_comonad(const BicomodulePtr& p, const MonadPtr& m, const ComposeOptions& pm_opts,
                          const ComposeOptions& arity_opts) {
  const int b = std::max(pm_opts.bound, pm_opts.inner_cap);
  if (b < 0) throw InputError("the comonad needs a bound on p ◁ m");
  Comonad e;
  e.monad = m;
  e.p = p;
  auto B = m->carrier(b);
  e.pm = std::make_shared<const Bicomodule>(compose_bicomodules(p, B, pm_opts));
  e.cl = coclosure(p, e.pm, arity_opts);
  const auto& E = *e.cl.bicomodule;
  const auto& c = p->right;
  const auto& d = p->left;

  // unit arities and their inverses, per c-object
  std::vector<int> eta;
  std::vector<CopresheafMap> eta_inv;
  std::vector<Copresheaf> reps;
  for (int C = 0; C < c->num_objects(); ++C) {
    auto u = m->unit(C);
    const int k = B->require(u.op);
    reps.push_back(representable(c, C));
    eta.push_back(k);
    eta_inv.push_back(inverse(u.iso, reps.back(), B->arity(k)));
  }

  for (int I = 0; I < p->size(); ++I) {
    const auto& pI = p->arity(I);
    const auto zs = flatten(pI);
    std::vector<std::string> names;
    for (const auto& z : zs) names.push_back(B->ops[eta[z.object]].name);
    const int K = e.pm->require(composite_name(p->ops[I].name, names));
    const auto& col = e.pm->parts->arity_colimit[K];
    const auto& aK = e.pm->arity(K);
    std::vector<int> h(aK.total_size(), -1);
    for (int o = 0; o < c->num_objects(); ++o)
      for (int cls = 0; cls < aK.size(o); ++cls) {
        const auto [z, u] = col.representative[o][cls];
        const int C = zs[z].object;
        const int g = morphism_of(c, reps[C], o, eta_inv[C](o, u));
        h[flat_index(aK, o, cls)] = flat_index(pI, o, pI.apply(g, zs[z].index));
      }
    e.identity.push_back(e.cl.element(I, K, h));
  }

  e.id = std::make_shared<const Bicomodule>(identity_bicomodule(d));
  for (int I = 0; I < E.size(); ++I) {
    const int D = E.ops[I].object;
    const auto& idD = e.id->arity(D);
    auto mp = sized(d);
    for (int o = 0; o < d->num_objects(); ++o)
      for (int x = 0; x < idD.size(o); ++x)
        mp.components[o].push_back(E.arity(I).apply(morphism_of(d, idD, o, x), e.identity[I].index));
    e.counit.on_ops.push_back(D);
    e.counit.on_arities.push_back(std::move(mp));
  }

  std::vector<std::pair<int, std::vector<int>>> req;
  for (int I = 0; I < E.size(); ++I) {
    std::vector<int> j;
    for (const auto& a : flatten(E.arity(I))) j.push_back(e.codomain(I, a));
    req.push_back({I, std::move(j)});
  }
  auto EE = std::make_shared<const Bicomodule>(compose_sparse(e.cl.bicomodule, e.cl.bicomodule, req));
  e.comultiplication.codomain = EE;
  for (int I = 0; I < E.size(); ++I) {
    std::vector<std::string> names;
    for (int j : req[I].second) names.push_back(E.ops[j].name);
    const int t = EE->require(composite_name(E.ops[I].name, names));
    const auto& col = EE->parts->arity_colimit[t];
    const auto alphas = flatten(E.arity(I));
    auto mp = sized(d);
    for (int o = 0; o < d->num_objects(); ++o)
      for (const auto& [z, w] : col.representative[o]) {
        const auto r = e.compose(I, alphas[z], {o, w});
        mp.components[o].push_back(r ? r->index : -1);
      }
    e.comultiplication.map.on_ops.push_back(t);
    e.comultiplication.map.on_arities.push_back(std::move(mp));
  }
  return e;
}

Report check_comonad(const Comonad& e) {
  constexpr std::size_t kMaxTriples = 20000;
  Report r;
  r.subject = "comonad [p, p◁" + e.monad->name() + "]";
  const auto& E = *e.cl.bicomodule;
  const auto& d = *E.left;
  r.merge(check_bicomodule(E), "carrier: ");
  r.merge(check_square(e.counit, E, *e.id), "counit: ");
  bool complete = true;
  for (const auto& m : e.comultiplication.map.on_arities)
    for (const auto& comp : m.components) complete &= std::find(comp.begin(), comp.end(), -1) == comp.end();
  if (complete)
    r.merge(check_square(e.comultiplication.map, E, *e.comultiplication.codomain), "comultiplication: ");
  else
    r.notes.push_back("comultiplication is partial at this bound; checked elementwise only");

  std::size_t undefined = 0, triples = 0, total_triples = 0;
  for (int I = 0; I < E.size(); ++I)
    for (const auto& a : flatten(E.arity(I))) {
      const int J = e.codomain(I, a);
      for (const auto& b : flatten(E.arity(J))) total_triples += E.arity(e.codomain(J, b)).total_size();
    }
  const std::size_t stride = std::max<std::size_t>(1, total_triples / kMaxTriples);
  if (stride > 1) r.notes.push_back("coassociativity sampled at every " + std::to_string(stride) + "th triple");

  std::size_t counter = 0;
  for (int I = 0; I < E.size(); ++I) {
    const auto& EI = E.arity(I);
    const auto where = [&](ElementRef x) { return E.ops[I].name + "/" + EI.elements[x.object][x.index]; };
    ++r.checked;
    if (e.codomain(I, e.identity[I]) != I) r.fail("identity element of " + E.ops[I].name + " has the wrong codomain");
    for (const auto& a : flatten(EI)) {
      const int J = e.codomain(I, a);
      const auto& EJ = E.arity(J);
      r.checked += 2;
      const auto l = e.compose(I, e.identity[I], a);
      const auto rr = e.compose(I, a, e.identity[J]);
      if (!l || !rr)
        ++undefined;
      else {
        if (*l != a) r.fail("left counit law fails at " + where(a));
        if (*rr != a) r.fail("right counit law fails at " + where(a));
      }
      for (const auto& b : flatten(EJ)) {
        const auto ab = e.compose(I, a, b);
        if (!ab) {
          ++undefined;
          continue;
        }
        const int J2 = e.codomain(J, b);
        ++r.checked;
        if (e.codomain(I, *ab) != J2) r.fail("codomain of a composite is wrong at " + where(a));
        // naturality in the d-action on the second factor
        for (int g : d.out(b.object)) {
          const ElementRef gb{d.tgt(g), EJ.apply(g, b.index)};
          const auto agb = e.compose(I, a, gb);
          if (!agb) continue;
          ++r.checked;
          if (agb->object != d.tgt(g) || agb->index != EI.apply(g, ab->index))
            r.fail("composition is not natural at " + where(a) + " and " + d.morphism(g).name);
        }
        for (const auto& c3 : flatten(E.arity(J2))) {
          if (counter++ % stride) continue;
          const auto bc = e.compose(J, b, c3);
          const auto lhs = e.compose(I, *ab, c3);
          if (!bc || !lhs) {
            ++undefined;
            continue;
          }
          const auto rhs = e.compose(I, a, *bc);
          if (!rhs) {
            ++undefined;
            continue;
          }
          ++triples;
          ++r.checked;
          if (*lhs != *rhs) r.fail("coassociativity fails at " + where(a));
        }
      }
    }
  }
  if (undefined) {
    r.notes.push_back(std::to_string(undefined) + " composites lie beyond the enumerated range");
    r.status = Status::truncated_at(e.pm->status.bound);
  }
  r.notes.push_back(std::to_string(triples) + " coassociativity triples checked");
  return r;
}

ComonoidDecode comonad_to_comonoid(const Comonad& e) {
  ComonoidDecode out;
  const auto& E = *e.cl.bicomodule;
  const auto& d = *E.left;
  auto& m = out.comonoid;
  std::vector<std::vector<ElementRef>> alphas(E.size());
  for (int I = 0; I < E.size(); ++I) {
    alphas[I] = flatten(E.arity(I));
    Position pos{E.ops[I].name, E.ops[I].degree, {}};
    for (const auto& a : alphas[I]) pos.directions.push_back(E.ops[I].name + ">" + E.arity(I).elements[a.object][a.index]);
    m.carrier.add(std::move(pos));
  }
  m.carrier.status = E.status;
  for (int I = 0; I < E.size(); ++I) {
    m.counit.on_positions.push_back(0);
    m.counit.on_directions.push_back({flat_index(E.arity(I), e.identity[I].object, e.identity[I].index)});
    Position sq{E.ops[I].name + "[", 0, {}};
    std::vector<int> inner, offset, sharp;
    for (std::size_t k = 0; k < alphas[I].size(); ++k) {
      const int J = e.codomain(I, alphas[I][k]);
      inner.push_back(J);
      offset.push_back(static_cast<int>(sq.directions.size()));
      sq.name += (k ? "," : "") + E.ops[J].name;
      for (const auto& b : alphas[J]) {
        sq.directions.push_back(m.carrier[I].directions[k] + "/" + m.carrier[J].directions[flat_index(E.arity(J), b.object, b.index)]);
        const auto ab = e.compose(I, alphas[I][k], b);
        if (!ab) out.complete = false;
        sharp.push_back(ab ? flat_index(E.arity(I), ab->object, ab->index) : -1);
      }
    }
    sq.name += "]";
    const int k = m.square.poly.add(std::move(sq));
    m.square.outer.push_back(I);
    m.square.inner.push_back(std::move(inner));
    m.square.offset.push_back(std::move(offset));
    m.comultiplication.on_positions.push_back(k);
    m.comultiplication.on_directions.push_back(std::move(sharp));
  }
  m.square.poly.status = E.status;
  if (!out.complete) return out;

  auto cat = std::make_shared<FinCategory>(category_from_comonoid(m));
  out.morphism.resize(E.size());
  for (int I = 0; I < E.size(); ++I)
    for (std::size_t a = 0; a < alphas[I].size(); ++a) {
      const int ec = m.counit.on_directions[I][0];
      out.morphism[I].push_back(static_cast<int>(a) == ec ? cat->identity(I) : *cat->find_morphism(m.carrier[I].directions[a]));
    }
  for (int I = 0; I < E.size(); ++I) {
    const int D = E.ops[I].object;
    out.cofunctor.on_positions.push_back(D);
    std::vector<int> lifts;
    for (int g : d.out(D)) {
      const ElementRef a{d.tgt(g), E.arity(I).apply(g, e.identity[I].index)};
      const int f = out.morphism[I][flat_index(E.arity(I), a.object, a.index)];
      const auto& o = cat->out(I);
      lifts.push_back(static_cast<int>(std::find(o.begin(), o.end(), f) - o.begin()));
    }
    out.cofunctor.on_directions.push_back(std::move(lifts));
  }
  out.category = std::move(cat);
  return out;
}

Bicomodule comodule_transfer(const Comonad& e, const ComonoidDecode& decoded, const Comodule& m) {
  if (!decoded.category) throw BoundExhausted("the comonad does not decode to a category at this bound");
  const auto& E = *e.cl.bicomodule;
  const auto& S = *m.coaction.codomain;
  const auto& p = *m.p;
  Bicomodule out(decoded.category, p.right);
  std::vector<int> obj;
  for (int k = 0; k < p.size(); ++k) {
    const int t = m.coaction.map.on_ops[k];
    obj.push_back(S.parts->outer[t]);
    out.add_op({p.ops[k].name, obj.back(), p.ops[k].degree, p.arity(k)});
  }
  for (int k = 0; k < p.size(); ++k) {
    const int t = m.coaction.map.on_ops[k];
    const int J = obj[k];
    const auto Jmap = composite_inner(S, t);
    const auto& col = S.parts->arity_colimit[t];
    const int na = E.arity(J).total_size();
    for (int a = 0; a < na; ++a) {
      const int f = decoded.morphism[J][a];
      if (decoded.category->is_identity(f)) continue;
      const int target = Jmap[a];
      auto r = sized(p.right);
      for (const auto& [o, w] : flatten(p.arity(target)))
        r.components[o].push_back(m.coaction.map.on_arities[k](o, col.injections[a](o, w)));
      out.set_action(k, f, target, std::move(r));
    }
  }
  out.fill_identity_actions();
  out.status = p.status;
  return out;
}

Comodule comodule_untransfer(const Comonad& e, const ComonoidDecode& decoded, const Bicomodule& b) {
  if (!decoded.category) throw BoundExhausted("the comonad does not decode to a category at this bound");
  const auto& E = *e.cl.bicomodule;
  const auto& d = E.left;
  Bicomodule q(d, b.right);
  for (int k = 0; k < b.size(); ++k) q.add_op({b.ops[k].name, E.ops[b.ops[k].object].object, b.ops[k].degree, b.arity(k)});
  for (int k = 0; k < b.size(); ++k) {
    const int J = b.ops[k].object;
    for (int g : d->out(E.ops[J].object)) {
      if (d->is_identity(g)) continue;
      const int a = flat_index(E.arity(J), d->tgt(g), E.arity(J).apply(g, e.identity[J].index));
      const auto& la = b.act(k, decoded.morphism[J][a]);
      q.set_action(k, g, la.target, la.restriction);
    }
  }
  q.fill_identity_actions();
  q.status = b.status;
  auto qp = std::make_shared<const Bicomodule>(std::move(q));
  std::vector<std::pair<int, std::vector<int>>> req;
  for (int k = 0; k < b.size(); ++k) {
    const int J = b.ops[k].object;
    std::vector<int> j;
    for (int f : decoded.morphism[J]) j.push_back(b.act(k, f).target);
    req.push_back({J, std::move(j)});
  }
  auto S = std::make_shared<const Bicomodule>(compose_sparse(e.cl.bicomodule, qp, req));
  Comodule out{qp, {{}, S}};
  for (int k = 0; k < b.size(); ++k) {
    const int J = b.ops[k].object;
    std::vector<std::string> names;
    for (int j : req[k].second) names.push_back(b.ops[j].name);
    const int t = S->require(composite_name(E.ops[J].name, names));
    const auto& col = S->parts->arity_colimit[t];
    auto mp = sized(b.right);
    for (int o = 0; o < b.right->num_objects(); ++o)
      for (const auto& [a, w] : col.representative[o]) mp.components[o].push_back(b.act(k, decoded.morphism[J][a]).restriction(o, w));
    out.coaction.map.on_ops.push_back(t);
    out.coaction.map.on_arities.push_back(std::move(mp));
  }
  return out;
}

Report check_comodule(const Comonad& e, const Comodule& m) {
  Report r;
  r.subject = "left comodule " + std::string(m.p->ops.empty() ? "" : "over " + m.p->ops.front().name);
  const auto& E = *e.cl.bicomodule;
  const auto& S = *m.coaction.codomain;
  const auto& p = *m.p;
  r.merge(check_square(m.coaction.map, p, S), "coaction: ");
  std::vector<int> J(p.size());
  std::vector<std::vector<int>> Jmap(p.size());
  for (int k = 0; k < p.size(); ++k) {
    const int t = m.coaction.map.on_ops[k];
    J[k] = S.parts->outer[t];
    Jmap[k] = composite_inner(S, t);
  }
  auto sharp = [&](int k, int a, int o, int w) {
    const int t = m.coaction.map.on_ops[k];
    return m.coaction.map.on_arities[k](o, S.parts->arity_colimit[t].injections[a](o, w));
  };
  for (int k = 0; k < p.size(); ++k) {
    const auto& EJ = E.arity(J[k]);
    const int id = flat_index(EJ, e.identity[J[k]].object, e.identity[J[k]].index);
    ++r.checked;
    if (Jmap[k][id] != k) {
      r.fail("counit law fails at " + p.ops[k].name);
      continue;
    }
    for (const auto& [o, w] : flatten(p.arity(k)))
      if (sharp(k, id, o, w) != w) r.fail("counit law fails on the arity of " + p.ops[k].name);
    const auto alphas = flatten(EJ);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      const int k2 = Jmap[k][a];
      ++r.checked;
      if (J[k2] != e.codomain(J[k], alphas[a])) {
        r.fail("coaction codomain mismatch at " + p.ops[k].name);
        continue;
      }
      const auto& EJ2 = E.arity(J[k2]);
      const auto betas = flatten(EJ2);
      for (std::size_t b = 0; b < betas.size(); ++b) {
        const auto ab = e.compose(J[k], alphas[a], betas[b]);
        if (!ab) continue;
        const int iab = flat_index(EJ, ab->object, ab->index);
        ++r.checked;
        const int k3 = Jmap[k2][b];
        if (Jmap[k][iab] != k3) {
          r.fail("coassociativity fails at " + p.ops[k].name);
          continue;
        }
        for (const auto& [o, w] : flatten(p.arity(k3)))
          if (sharp(k, iab, o, w) != sharp(k, static_cast<int>(a), o, sharp(k2, static_cast<int>(b), o, w)))
            r.fail("coassociativity fails on the arity of " + p.ops[k].name);
      }
    }
  }
  return r;
}

}  // namespace polycat
