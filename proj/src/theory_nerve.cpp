#include <algorithm>
#include <set>

#include "polycat/standard.hpp"
#include "polycat/theory.hpp"
#include "theory_internal.hpp"

namespace polycat {

using namespace detail;

namespace {

std::vector<int> first_index(const Copresheaf& x) {
  std::vector<int> first(x.base->num_objects() + 1, 0);
  for (int o = 0; o < x.base->num_objects(); ++o) first[o + 1] = first[o] + x.size(o);
  return first;
}

// ψ on (M, w ↦ value[w]) with values given as flattened elements of X.
int act(const Algebra& a, const Bicomodule& B, int M, const std::vector<int>& flat_values, const std::vector<int>& first) {
  const auto& X = a.carrier;
  std::vector<int> h;
  for (int v : flat_values) h.push_back(unflatten(X, v).index);
  const int x = a.action(B, M, h);
  const int o = B.ops[M].object;
  if (x < 0 || x >= X.size(o)) throw LawViolation("action leaves the carrier at " + B.ops[M].name);
  return first[o] + x;
}

}  // namespace

// ------------------------------------------------------------ nerves

NervePresheaf generalized_nerve(const TheoryPtr& t, const Algebra& a) {
  const auto& e = t->comonad;
  const auto& E = *e.cl.bicomodule;
  const auto& PM = *e.pm;
  const auto& B = *PM.parts->second;
  const auto& X = a.carrier;
  const auto first = first_index(X);
  auto Xb = std::make_shared<const Bicomodule>(copresheaf_as_bicomodule(X));
  auto PX = std::make_shared<const Bicomodule>(compose_bicomodules(t->p, Xb, {}));
  const auto& xnames = Xb->ops;

  // coaction: (I, h) ↦ (I, α ↦ α·(I, h)) with α·(I,h) = (J, z ↦ ψ(N z, h ∘ k ∘ ι_z))
  std::vector<std::pair<int, std::vector<int>>> req;
  for (int op = 0; op < PX->size(); ++op) {
    const int I = PX->parts->outer[op];
    const auto h = composite_inner(*PX, op);
    std::vector<int> targets;
    for (const auto& alpha : flatten(E.arity(I))) {
      const auto [K, kk] = e.cl.unpack(I, alpha);
      const int J = PM.parts->outer[K];
      const auto N = composite_inner(PM, K);
      const auto& col = PM.parts->arity_colimit[K];
      const auto& aK = PM.arity(K);
      std::vector<std::string> img;
      for (std::size_t z = 0; z < N.size(); ++z) {
        std::vector<int> vals;
        for (const auto& [o, w] : flatten(B.arity(N[z]))) vals.push_back(h[kk[flat_index(aK, o, col.injections[z](o, w))]]);
        img.push_back(xnames[act(a, B, N[z], vals, first)].name);
      }
      targets.push_back(PX->require(composite_name(t->p->ops[J].name, img)));
    }
    req.push_back({I, std::move(targets)});
  }
  auto S = std::make_shared<const Bicomodule>(compose_sparse(e.cl.bicomodule, PX, req));
  Comodule cm{PX, {{}, S}};
  for (int op = 0; op < PX->size(); ++op) {
    std::vector<std::string> names;
    for (int j : req[op].second) names.push_back(PX->ops[j].name);
    cm.coaction.map.on_ops.push_back(S->require(composite_name(E.ops[req[op].first].name, names)));
    CopresheafMap none;
    none.components.resize(PX->right->num_objects());
    cm.coaction.map.on_arities.push_back(std::move(none));
  }
  const auto b = comodule_transfer(e, t->decode, cm);
  NervePresheaf out{t, t->presentation, bicomodule_as_copresheaf(b), meet(PX->status, Status::truncated_at(t->inner_cap))};
  bool exact = true;
  for (const auto& row : t->exactness)
    for (const auto& s : row) exact &= s.exactness == Exactness::Exact;
  if (exact) out.status = Status::exact_at(t->inner_cap);
  return out;
}

NervePresheaf nerve(const MonadPtr& m, const Algebra& a, const std::vector<std::string>& objects, const TheoryOptions& opts) {
  return generalized_nerve(theory_category(m, objects, opts), a);
}

NervePresheaf nerve_oracle(const KleisliTheory& k, const Algebra& a) {
  const auto& p = *k.p;
  const auto& X = a.carrier;
  const auto first = first_index(X);
  const auto xnames = element_names(X);
  const int n = p.size();
  Copresheaf data(k.category);
  std::vector<std::vector<std::vector<int>>> cells(n);  // flattened maps p[I] -> X
  std::vector<std::map<std::string, int>> index(n);
  for (int I = 0; I < n; ++I) {
    for_each_copresheaf_map(p.arity(I), X, {}, [&](const CopresheafMap& h) {
      std::vector<int> flat;
      std::vector<std::string> img;
      for (const auto& [e, z] : flatten(p.arity(I))) {
        flat.push_back(first[e] + h(e, z));
        img.push_back(xnames[flat.back()]);
      }
      const auto name = composite_name(p.ops[I].name, img);
      index[I][name] = data.add_element(I, name);
      cells[I].push_back(std::move(flat));
      return true;
    });
  }
  const auto& carrier = k.carrier;
  for (int I = 0; I < n; ++I)
    for (int J = 0; J < n; ++J)
      for (std::size_t fi = 0; fi < k.maps[I][J].size(); ++fi) {
        const auto& f = k.maps[I][J][fi];
        const int mor = k.morphism[I][J][fi];
        std::vector<int> images;
        for (const auto& h : cells[I]) {
          std::vector<std::string> img;
          for (const auto& [K, hh] : f) {
            std::vector<int> vals;
            for (int u : hh) vals.push_back(h[u]);
            img.push_back(xnames[act(a, *carrier, K, vals, first)]);
          }
          images.push_back(index[J].at(composite_name(p.ops[J].name, img)));
        }
        data.action[mor] = std::move(images);
      }
  data.fill_identities();
  return {nullptr, k.category, std::move(data), Status{}};
}

Report compare_nerves(const NervePresheaf& a, const NervePresheaf& b) {
  Report r;
  r.subject = "nerve comparison";
  const auto& A = *a.base;
  const auto& Bc = *b.base;
  for (int o = 0; o < A.num_objects(); ++o) {
    const auto ob = Bc.find_object(A.object_name(o));
    ++r.checked;
    if (!ob) {
      r.fail("object " + A.object_name(o) + " missing");
      continue;
    }
    auto x = a.data.elements[o], y = b.data.elements[*ob];
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) r.fail("element sets differ at " + A.object_name(o));
  }
  if (!r.ok()) return r;
  for (int f = 0; f < A.num_morphisms(); ++f) {
    if (A.is_identity(f)) continue;
    const auto g = Bc.find_morphism(A.morphism(f).name);
    ++r.checked;
    if (!g) {
      r.fail("morphism " + A.morphism(f).name + " missing");
      continue;
    }
    const int s = A.src(f), sb = *Bc.find_object(A.object_name(s));
    for (int x = 0; x < a.data.size(s); ++x) {
      const int xb = *b.data.find_element(sb, a.data.elements[s][x]);
      ++r.checked;
      if (a.data.elements[A.tgt(f)][a.data.apply(f, x)] != b.data.elements[Bc.tgt(*g)][b.data.apply(*g, xb)])
        r.fail("actions differ along " + A.morphism(f).name + " at " + a.data.elements[s][x]);
    }
  }
  return r;
}

// ------------------------------------------------------------ Segal

namespace {

// φ : p[ηC] -> p[I] sending the identity of C to z, on flattened elements.
std::vector<int> yoneda_phi(const TheoryCategory& t, const UnitData& u, int I, int C, ElementRef z) {
  const auto& pI = t.p->arity(I);
  const auto& B = *t.comonad.pm->parts->second;
  const auto& c = *t.p->right;
  std::vector<int> phi;
  for (const auto& [e, y] : flatten(B.arity(u.op[C]))) phi.push_back(flat_index(pI, e, pI.apply(u.morphism(c, C, e, y), z.index)));
  return phi;
}

}  // namespace

Report segal_check(const NervePresheaf& P) {
  Report r;
  r.subject = "Segal condition";
  if (!P.theory) {
    r.fail("the presheaf carries no theory");
    return r;
  }
  const auto& t = *P.theory;
  const auto& c = t.p->right;
  const auto& B = *t.comonad.pm->parts->second;
  const UnitData u(*t.monad, B);
  const auto& D = P.data;

  std::vector<int> unit(c->num_objects(), -1);
  for (int C = 0; C < c->num_objects(); ++C) {
    const auto x = t.unit_object(C);
    if (!x) {
      r.fail("unit object of " + c->object_name(C) + " is not selected");
      return r;
    }
    unit[C] = *x;
  }
  // ĝ : ηC -> ηC' for g : C -> C'
  std::vector<int> hat(c->num_morphisms(), -1);
  for (int g = 0; g < c->num_morphisms(); ++g) {
    const int C = c->src(g), C2 = c->tgt(g);
    const auto& pC = t.p->arity(unit[C]);
    const ElementRef z{C2, u.iso[C](C2, *u.reps[C].find_element(C2, c->morphism(g).name))};
    (void)pC;
    const auto m = t.inert_morphism(unit[C], unit[C2], yoneda_phi(t, u, unit[C], C2, z));
    if (!m) {
      r.fail("no inert morphism for " + c->morphism(g).name);
      return r;
    }
    hat[g] = *m;
  }
  // X'(C) = P(ηC)
  Copresheaf Xp(c);
  for (int C = 0; C < c->num_objects(); ++C) Xp.elements[C] = D.elements[unit[C]];
  for (int g = 0; g < c->num_morphisms(); ++g) Xp.action[g] = D.action[hat[g]];
  r.merge(check_copresheaf(Xp), "unit data: ");

  for (int M = 0; M < D.base->num_objects(); ++M) {
    const auto& pM = t.p->arity(M);
    const auto zs = flatten(pM);
    const std::string where = D.base->object_name(M);
    std::vector<int> rho;
    for (const auto& z : zs) {
      const auto m = t.inert_morphism(M, unit[z.object], yoneda_phi(t, u, M, z.object, z));
      if (!m) {
        r.fail(where + ": missing projection morphism");
        break;
      }
      rho.push_back(*m);
    }
    if (rho.size() != zs.size()) continue;
    bool ok = true;

    // limit form
    const auto el = category_of_elements(pM);
    ElementsDiagram d;
    d.shape = el.category;
    d.base = terminal_category();
    d.variance = ElementsDiagram::Variance::Covariant;
    for (const auto& z : el.element_of_object) {
      Copresheaf v(terminal_category());
      v.elements[0] = D.elements[unit[z.object]];
      v.action[0].resize(v.elements[0].size());
      for (std::size_t i = 0; i < v.elements[0].size(); ++i) v.action[0][i] = static_cast<int>(i);
      d.values.push_back(std::move(v));
    }
    d.transitions.resize(el.category->num_morphisms());
    for (int k = 0; k < el.category->num_morphisms(); ++k) {
      const int g = el.projection.on_morphisms[k];
      d.transitions[k].components = {D.action[hat[g]]};
    }
    const auto lim = limit_over_elements(d);
    std::set<std::vector<int>> fams(lim.families.begin(), lim.families.end());
    std::set<std::vector<int>> images;
    for (int x = 0; x < D.size(M); ++x) {
      std::vector<int> fam;
      for (std::size_t i = 0; i < zs.size(); ++i) fam.push_back(D.apply(rho[i], x));
      if (!fams.count(fam)) ok = false;
      images.insert(std::move(fam));
    }
    r.checked += 2;
    if (!ok || images.size() != static_cast<std::size_t>(D.size(M)) || images.size() != fams.size()) {
      r.fail(where + ": " + std::to_string(D.size(M)) + " elements against a limit of " + std::to_string(fams.size()));
      ok = false;
    }

    // reconstruction form: P(M) ≅ Hom(p[M], X')
    std::set<std::vector<std::vector<int>>> maps;
    bool natural = true;
    for (int x = 0; x < D.size(M); ++x) {
      CopresheafMap h;
      h.components.resize(c->num_objects());
      for (std::size_t i = 0; i < zs.size(); ++i) h.components[zs[i].object].push_back(D.apply(rho[i], x));
      natural &= check_copresheaf_map(h, pM, Xp).ok();
      maps.insert(std::move(h.components));
    }
    const std::size_t hom = count_copresheaf_maps(pM, Xp);
    if (!natural || maps.size() != static_cast<std::size_t>(D.size(M)) || hom != maps.size()) {
      r.fail(where + ": cells do not match maps into the rebuilt unit data (" + std::to_string(hom) + " maps)");
      ok = false;
    }
    r.notes.push_back(where + (ok ? ": pass" : ": FAIL"));
  }
  return r;
}

NervePresheaf duplicate_element(const NervePresheaf& P, int object, int x) {
  NervePresheaf out = P;
  auto& D = out.data;
  const auto& base = *D.base;
  const int fresh = static_cast<int>(D.elements[object].size());
  D.elements[object].push_back(D.elements[object][x] + "'");
  for (int f = 0; f < base.num_morphisms(); ++f) {
    if (base.src(f) != object) continue;
    D.action[f].push_back(base.is_identity(f) ? fresh : D.action[f][x]);
  }
  return out;
}

// ------------------------------------------------------------ inert part

InertCategory inert_category(const BicomodulePtr& p, const ComposeOptions& opts) {
  const auto cl = coclosure(p, p, opts);
  const auto& E = *cl.bicomodule;
  const int n = E.size();
  InertCategory ic;
  ic.category = std::make_shared<FinCategory>();
  for (int I = 0; I < n; ++I) ic.category->add_object(p->ops[I].name);
  ic.maps.assign(n, std::vector<std::vector<std::vector<int>>>(n));
  ic.morphism.assign(n, std::vector<std::vector<int>>(n));
  std::vector<std::vector<std::pair<int, int>>> where(n);  // flattened element -> (J, k)
  std::vector<std::map<std::vector<int>, int>> lookup(n * n);
  for (int I = 0; I < n; ++I) {
    const auto names = element_names(p->arity(I));
    for (const auto& alpha : flatten(E.arity(I))) {
      const auto [J, h] = cl.unpack(I, alpha);
      bool identity = I == J;
      for (std::size_t i = 0; identity && i < h.size(); ++i) identity = h[i] == static_cast<int>(i);
      std::vector<std::string> img;
      for (int v : h) img.push_back(names[v]);
      std::string name = p->ops[I].name + "<" + p->ops[J].name + "|";
      for (std::size_t i = 0; i < img.size(); ++i) name += (i ? "," : "") + img[i];
      const int f = identity ? ic.category->identity(I) : ic.category->add_morphism(name, I, J);
      lookup[I * n + J][h] = static_cast<int>(ic.maps[I][J].size());
      ic.maps[I][J].push_back(h);
      ic.morphism[I][J].push_back(f);
    }
  }
  // (I <- J by h) then (J <- L by h2) is I <- L by h ∘ h2
  for (int I = 0; I < n; ++I)
    for (int J = 0; J < n; ++J)
      for (int L = 0; L < n; ++L)
        for (std::size_t a = 0; a < ic.maps[I][J].size(); ++a)
          for (std::size_t b = 0; b < ic.maps[J][L].size(); ++b) {
            std::vector<int> h;
            for (int v : ic.maps[J][L][b]) h.push_back(ic.maps[I][J][a][v]);
            const int k = lookup[I * n + L].at(h);
            ic.category->set_composite(ic.morphism[I][J][a], ic.morphism[J][L][b], ic.morphism[I][L][k]);
          }
  return ic;
}

std::vector<int> inert_embedding(const InertCategory& i, const TheoryCategory& t) {
  const auto& c = *i.category;
  std::vector<int> out(c.num_morphisms(), -1);
  const int n = c.num_objects();
  for (int I = 0; I < n; ++I)
    for (int J = 0; J < n; ++J) {
      const auto tI = t.presentation->find_object(c.object_name(I));
      const auto tJ = t.presentation->find_object(c.object_name(J));
      if (!tI || !tJ) continue;
      for (std::size_t k = 0; k < i.maps[I][J].size(); ++k) {
        const auto m = t.inert_morphism(*tI, *tJ, i.maps[I][J][k]);
        out[i.morphism[I][J][k]] = m ? *m : -1;
      }
    }
  return out;
}

}  // namespace polycat
