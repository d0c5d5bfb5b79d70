#include <algorithm>
#include <set>
#include <unordered_map>

#include "polycat/standard.hpp"
#include "polycat/theory.hpp"
#include "theory_internal.hpp"

namespace polycat {

namespace detail {

std::vector<std::string> element_names(const Copresheaf& x) {
  std::vector<std::string> out;
  for (const auto& op : copresheaf_as_bicomodule(x).ops) out.push_back(op.name);
  return out;
}

std::string kleisli_name(const std::string& I, const std::string& J, const std::vector<std::string>& parts) {
  std::string s = I + "<" + J + ":";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ";" : "") + parts[i];
  return s;
}

UnitData::UnitData(const FamilialMonad& m, const Bicomodule& B) {
  const auto c = m.base();
  for (int C = 0; C < c->num_objects(); ++C) {
    auto u = m.unit(C);
    const int k = B.require(u.op);
    reps.push_back(representable(c, C));
    op.push_back(k);
    inverse_iso.push_back(inverse(u.iso, reps.back(), B.arity(k)));
    iso.push_back(std::move(u.iso));
  }
}

int UnitData::morphism(const FinCategory& c, int C, int e, int u) const {
  return *c.find_morphism(reps[C].elements[e][inverse_iso[C](e, u)]);
}

}  // namespace detail

using namespace detail;

// ------------------------------------------------------------ selection

std::vector<std::string> close_selection(const MonadPtr& m, const std::vector<std::string>& objects, int bound) {
  const auto B = m->carrier(bound);
  const auto& c = *m->base();
  std::set<int> chosen;
  std::vector<int> queue;
  auto add = [&](int k) {
    if (chosen.insert(k).second) queue.push_back(k);
  };
  for (const auto& n : objects) add(B->require(n));
  for (int C = 0; C < c.num_objects(); ++C) add(B->require(m->unit(C).op));
  while (!queue.empty()) {
    const int k = queue.back();
    queue.pop_back();
    for (int f : c.out(B->ops[k].object)) add(B->act(k, f).target);
  }
  std::vector<std::string> out;
  for (int k : chosen) out.push_back(B->ops[k].name);
  return out;
}

namespace {

// The sub-bicomodule of B on the named operations; they must be closed under
// the left action.
BicomodulePtr restrict_ops(const Bicomodule& B, const std::vector<std::string>& names) {
  Bicomodule p(B.left, B.right);
  std::vector<int> index;
  for (const auto& n : names) {
    index.push_back(B.require(n));
    p.add_op(B.ops[index.back()]);
  }
  for (std::size_t i = 0; i < index.size(); ++i)
    for (int f : B.left->out(B.ops[index[i]].object)) {
      if (B.left->is_identity(f)) continue;
      const auto& la = B.act(index[i], f);
      const auto t = p.find(B.ops[la.target].name);
      if (!t) throw InputError("selection is not closed under the left action: " + B.ops[index[i]].name + " -> " + B.ops[la.target].name);
      p.set_action(static_cast<int>(i), f, *t, la.restriction);
    }
  p.fill_identity_actions();
  p.status = B.status;
  return std::make_shared<const Bicomodule>(std::move(p));
}

int cap_of(const TheoryOptions& opts) {
  const int cap = opts.inner_cap < 0 ? opts.bound : opts.inner_cap;
  if (cap < 0) throw InputError("a theory category needs --bound");
  return cap;
}

}  // namespace

// ------------------------------------------------------------ theory category

int TheoryCategory::object(std::string_view name) const {
  const auto o = presentation->find_object(name);
  if (!o) throw InputError("no object named " + std::string(name));
  return *o;
}

std::optional<int> TheoryCategory::unit_object(int C) const {
  const auto k = p->find(monad->unit(C).op);
  if (!k) return std::nullopt;
  return *k;
}

std::optional<int> TheoryCategory::inert_morphism(int I, int J, const std::vector<int>& phi) const {
  const auto& B = *comonad.pm->parts->second;
  const auto& c = *p->right;
  const UnitData units(*monad, B);
  const auto& pI = p->arity(I);
  const auto names = element_names(pI);
  std::vector<std::string> parts;
  int y = 0;
  for (const auto& [e, x] : flatten(p->arity(J))) {
    (void)x;
    const int ey = units.op[e];
    const auto target = unflatten(pI, phi[y++]);
    std::vector<std::string> img;
    for (const auto& [e2, u] : flatten(B.arity(ey)))
      img.push_back(names[flat_index(pI, e2, pI.apply(units.morphism(c, e, e2, u), target.index))]);
    parts.push_back(composite_name(B.ops[ey].name, img));
  }
  const auto it = by_name.find(kleisli_name(p->ops[I].name, p->ops[J].name, parts));
  if (it == by_name.end()) return std::nullopt;
  return it->second;
}

namespace {

// Kleisli name of α ∈ E[I] with codomain J.
std::string element_kleisli_name(const Comonad& e, int I, ElementRef alpha, const std::vector<std::string>& pI_names) {
  const auto& PM = *e.pm;
  const auto& B = *PM.parts->second;
  const auto [K, h] = e.cl.unpack(I, alpha);
  const int J = PM.parts->outer[K];
  const auto N = composite_inner(PM, K);
  const auto& col = PM.parts->arity_colimit[K];
  const auto& aK = PM.arity(K);
  std::vector<std::string> parts;
  for (std::size_t z = 0; z < N.size(); ++z) {
    std::vector<std::string> img;
    for (const auto& [o, w] : flatten(B.arity(N[z]))) img.push_back(pI_names[h[flat_index(aK, o, col.injections[z](o, w))]]);
    parts.push_back(composite_name(B.ops[N[z]].name, img));
  }
  return kleisli_name(e.p->ops[I].name, e.p->ops[J].name, parts);
}

}  // namespace

TheoryPtr theory_category(const BicomodulePtr& p, const MonadPtr& m, const TheoryOptions& opts) {
  const int cap = cap_of(opts);
  auto t = std::make_shared<TheoryCategory>();
  t->monad = m;
  t->p = p;
  t->inner_cap = cap;
  t->carrier = m->carrier(std::max(cap, opts.bound));
  for (const auto& op : p->ops) {
    const auto k = t->carrier->find(op.name);
    t->selection.push_back(k ? *k : -1);
  }
  t->comonad = coclosure_comonad(p, m, {-1, cap, {}}, {});
  t->decode = comonad_to_comonoid(t->comonad);
  t->complete = t->decode.complete;
  const auto& E = *t->comonad.cl.bicomodule;
  const auto& cm = t->decode.comonoid;
  const int n = E.size();

  auto pres = std::make_shared<FinCategory>();
  for (int I = 0; I < n; ++I) pres->add_object(E.ops[I].name);
  std::vector<std::vector<int>> mor(n);
  t->hom_size.assign(n, std::vector<int>(n, 0));
  for (int I = 0; I < n; ++I) {
    const auto names = element_names(p->arity(I));
    const int k = cm.comultiplication.on_positions[I];
    const int ec = cm.counit.on_directions[I][0];
    const auto alphas = flatten(E.arity(I));
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      const int J = cm.square.inner[k][a];
      ++t->hom_size[I][J];
      const auto name = element_kleisli_name(t->comonad, I, alphas[a], names);
      const int f = static_cast<int>(a) == ec ? pres->identity(I) : pres->add_morphism(name, I, J);
      mor[I].push_back(f);
      t->by_name[name] = f;
    }
  }
  for (int I = 0; I < n; ++I) {
    const int k = cm.comultiplication.on_positions[I];
    for (int a = 0; a < cm.carrier.num_directions(I); ++a) {
      const int J = cm.square.inner[k][a];
      for (int b = 0; b < cm.carrier.num_directions(J); ++b) {
        const int ab = cm.comultiplication.on_directions[I][cm.square.offset[k][a] + b];
        if (ab >= 0) pres->set_composite(mor[I][a], mor[J][b], mor[I][ab]);
      }
    }
  }
  // cofunctor to c: lifts of base morphisms through the identity elements
  const auto& c = *p->left;
  for (int I = 0; I < n; ++I) {
    const int D = E.ops[I].object;
    t->cofunctor.on_positions.push_back(D);
    std::vector<int> lifts;
    for (int g : c.out(D)) {
      const int a = flat_index(E.arity(I), c.tgt(g), E.arity(I).apply(g, t->comonad.identity[I].index));
      const auto& o = pres->out(I);
      lifts.push_back(static_cast<int>(std::find(o.begin(), o.end(), mor[I][a]) - o.begin()));
    }
    t->cofunctor.on_directions.push_back(std::move(lifts));
  }
  t->presentation = pres;
  t->decode.category = pres;
  t->decode.morphism = mor;

  // exactness of each hom-set
  t->exactness.assign(n, std::vector<Status>(n, Status::truncated_at(cap)));
  const bool finite_monad = m->max_degree() >= 0 && cap >= m->max_degree();
  std::vector<std::vector<int>> next;
  if (!finite_monad && opts.stabilize) next = kleisli_hom_counts(p, m, cap + 1);
  for (int I = 0; I < n; ++I)
    for (int J = 0; J < n; ++J)
      if (finite_monad || (!next.empty() && next[I][J] == t->hom_size[I][J])) t->exactness[I][J] = Status::exact_at(cap);
  return t;
}

TheoryPtr theory_category(const MonadPtr& m, const std::vector<std::string>& objects, const TheoryOptions& opts) {
  const int cap = cap_of(opts);
  const int bound = std::max(opts.bound, cap);
  const auto names = opts.close ? close_selection(m, objects, bound) : objects;
  return theory_category(restrict_ops(*m->carrier(bound), names), m, opts);
}

TheoryPtr lawvere_theory(const MonadPtr& o, const std::vector<int>& arities, int word_bound) {
  if (o->base()->num_objects() != 1) throw InputError("a Lawvere theory needs a monad on the terminal category");
  const int top = arities.empty() ? 0 : *std::max_element(arities.begin(), arities.end());
  std::vector<std::string> names;
  for (int a : arities) names.push_back(std::to_string(a));
  const auto list = restrict_ops(*monad_list()->carrier(top), names);
  return theory_category(list, o, {top, word_bound, false, true});
}

// ------------------------------------------------------------ Kleisli oracle

namespace detail {

KleisliHoms::KleisliHoms(const BicomodulePtr& p, const MonadPtr& m, int cap) : B(m->carrier(cap)) {
  for (int I = 0; I < p->size(); ++I) {
    auto X = std::make_shared<const Bicomodule>(copresheaf_as_bicomodule(p->arity(I)));
    ext.push_back(std::make_shared<const Bicomodule>(compose_bicomodules(B, X, {cap, -1, {}})));
    views.push_back(operations_view(*ext.back()));
  }
}

}  // namespace detail

std::vector<std::vector<int>> kleisli_hom_counts(const BicomodulePtr& p, const MonadPtr& m, int cap) {
  const KleisliHoms kh(p, m, cap);
  std::vector<std::vector<int>> out(p->size(), std::vector<int>(p->size()));
  for (int I = 0; I < p->size(); ++I)
    for (int J = 0; J < p->size(); ++J) out[I][J] = static_cast<int>(count_copresheaf_maps(p->arity(J), kh.views[I].ops));
  return out;
}

KleisliTheory kleisli_oracle(const BicomodulePtr& p, const MonadPtr& m, const TheoryOptions& opts) {
  const int cap = cap_of(opts);
  const KleisliHoms kh(p, m, cap);
  const auto& B = *kh.B;
  const int n = p->size();
  KleisliTheory k;
  k.monad = m;
  k.p = p;
  k.carrier = kh.B;
  k.category = std::make_shared<FinCategory>();
  for (int I = 0; I < n; ++I) k.category->add_object(p->ops[I].name);
  k.hom_size.assign(n, std::vector<int>(n, 0));
  k.maps.assign(n, std::vector<std::vector<std::vector<std::pair<int, std::vector<int>>>>>(n));
  k.morphism.assign(n, std::vector<std::vector<int>>(n));

  // names of the unit maps
  const UnitData units(*m, B);
  const auto& c = *p->right;
  std::vector<std::string> unit_name(n);
  for (int I = 0; I < n; ++I) {
    const auto& pI = p->arity(I);
    const auto names = element_names(pI);
    std::vector<std::string> parts;
    for (const auto& [e, x] : flatten(pI)) {
      std::vector<std::string> img;
      for (const auto& [e2, u] : flatten(B.arity(units.op[e])))
        img.push_back(names[flat_index(pI, e2, pI.apply(units.morphism(c, e, e2, u), x))]);
      parts.push_back(composite_name(B.ops[units.op[e]].name, img));
    }
    unit_name[I] = kleisli_name(p->ops[I].name, p->ops[I].name, parts);
  }

  std::unordered_map<std::string, int> by_name;
  for (int I = 0; I < n; ++I)
    for (int J = 0; J < n; ++J) {
      const auto& ext = *kh.ext[I];
      const auto& view = kh.views[I];
      for_each_copresheaf_map(p->arity(J), view.ops, {}, [&](const CopresheafMap& f) {
        std::vector<std::pair<int, std::vector<int>>> map;
        std::vector<std::string> parts;
        for (const auto& [o, y] : flatten(p->arity(J))) {
          const int op = view.global[o][f(o, y)];
          map.push_back({ext.parts->outer[op], composite_inner(ext, op)});
          parts.push_back(ext.ops[op].name);
        }
        const auto name = kleisli_name(p->ops[I].name, p->ops[J].name, parts);
        const int mor = (I == J && name == unit_name[I]) ? k.category->identity(I) : k.category->add_morphism(name, I, J);
        by_name[name] = mor;
        k.maps[I][J].push_back(std::move(map));
        k.morphism[I][J].push_back(mor);
        ++k.hom_size[I][J];
        return true;
      });
    }

  // Kleisli composition: f : I -> J (p[J] -> m p[I]) then g : J -> L (p[L] -> m p[J])
  std::vector<std::vector<std::string>> pnames(n);
  for (int I = 0; I < n; ++I) pnames[I] = element_names(p->arity(I));
  for (int I = 0; I < n; ++I)
    for (int J = 0; J < n; ++J)
      for (int L = 0; L < n; ++L)
        for (std::size_t fi = 0; fi < k.maps[I][J].size(); ++fi)
          for (std::size_t gi = 0; gi < k.maps[J][L].size(); ++gi) {
            const auto& f = k.maps[I][J][fi];
            const auto& g = k.maps[J][L][gi];
            std::vector<std::string> parts;
            bool defined = true;
            for (const auto& [K, h] : g) {
              std::vector<int> inner;
              for (int u : h) inner.push_back(f[u].first);
              ResolvedComposite mu;
              try {
                mu = resolve(*m, B, K, inner, B);
              } catch (const BoundExhausted&) {
                defined = false;
                break;
              }
              const auto& aQ = B.arity(mu.op);
              std::vector<int> h2(aQ.total_size(), -1);
              for (std::size_t u = 0; u < h.size(); ++u) {
                const auto& [Ku, hu] = f[h[u]];
                int v = 0;
                for (const auto& [ev, vi] : flatten(B.arity(Ku))) h2[flat_index(aQ, ev, mu.cocone[u](ev, vi))] = hu[v++];
              }
              std::vector<std::string> img;
              for (int x : h2) {
                if (x < 0) throw LawViolation("Kleisli composite does not cover its arity");
                img.push_back(pnames[I][x]);
              }
              parts.push_back(composite_name(B.ops[mu.op].name, img));
            }
            if (!defined) {
              k.complete = false;
              continue;
            }
            const auto it = by_name.find(kleisli_name(p->ops[I].name, p->ops[L].name, parts));
            if (it == by_name.end()) {
              k.complete = false;
              continue;
            }
            k.category->set_composite(k.morphism[I][J][fi], k.morphism[J][L][gi], it->second);
          }
  return k;
}

KleisliTheory kleisli_oracle(const MonadPtr& m, const std::vector<std::string>& objects, const TheoryOptions& opts) {
  const int cap = cap_of(opts);
  const int bound = std::max(opts.bound, cap);
  const auto names = opts.close ? close_selection(m, objects, bound) : objects;
  return kleisli_oracle(restrict_ops(*m->carrier(bound), names), m, opts);
}

// ------------------------------------------------------------ comparison

Report compare_theories(const TheoryCategory& t, const KleisliTheory& k) {
  Report r;
  r.subject = "theory category vs Kleisli oracle";
  const auto& a = *t.presentation;
  const auto& b = *k.category;
  if (a.num_objects() != b.num_objects()) {
    r.fail("object counts differ");
    return r;
  }
  std::vector<int> obj(a.num_objects());
  for (int o = 0; o < a.num_objects(); ++o) {
    const auto x = b.find_object(a.object_name(o));
    ++r.checked;
    if (!x) {
      r.fail("object " + a.object_name(o) + " missing from the oracle");
      return r;
    }
    obj[o] = *x;
  }
  for (int I = 0; I < a.num_objects(); ++I)
    for (int J = 0; J < a.num_objects(); ++J) {
      ++r.checked;
      if (t.hom_size[I][J] != k.hom_size[obj[I]][obj[J]])
        r.fail("hom(" + a.object_name(I) + ", " + a.object_name(J) + ") has " + std::to_string(t.hom_size[I][J]) + " vs " +
               std::to_string(k.hom_size[obj[I]][obj[J]]) + " morphisms");
    }
  // morphisms by name; identities by position
  std::vector<int> mor(a.num_morphisms(), -1);
  for (int f = 0; f < a.num_morphisms(); ++f) {
    if (a.is_identity(f)) {
      mor[f] = b.identity(obj[a.src(f)]);
      continue;
    }
    const auto g = b.find_morphism(a.morphism(f).name);
    ++r.checked;
    if (!g)
      r.fail("morphism " + a.morphism(f).name + " missing from the oracle");
    else if (b.src(*g) != obj[a.src(f)] || b.tgt(*g) != obj[a.tgt(f)])
      r.fail("morphism " + a.morphism(f).name + " has different endpoints");
    else
      mor[f] = *g;
  }
  if (!r.ok()) return r;
  std::size_t undefined = 0;
  for (int f = 0; f < a.num_morphisms(); ++f)
    for (int g : a.out(a.tgt(f))) {
      const int x = a.compose(f, g);
      const int y = b.compose(mor[f], mor[g]);
      ++r.checked;
      if (x < 0 && y < 0) {
        ++undefined;
        continue;
      }
      if (x < 0 || y < 0 || mor[x] != y)
        r.fail("composite of " + a.morphism(f).name + " and " + a.morphism(g).name + " differs");
    }
  if (undefined) r.notes.push_back(std::to_string(undefined) + " composites undefined in both at this cap");
  return r;
}

std::optional<Functor> theory_isomorphism(const TheoryCategory& t, const KleisliTheory& k) {
  if (!t.complete || !k.complete) return std::nullopt;
  if (!compare_theories(t, k).ok()) return std::nullopt;
  Functor f{t.presentation, k.category, {}, {}};
  for (int o = 0; o < t.presentation->num_objects(); ++o) f.on_objects.push_back(*k.category->find_object(t.presentation->object_name(o)));
  for (int m = 0; m < t.presentation->num_morphisms(); ++m) {
    const auto& mm = t.presentation->morphism(m);
    f.on_morphisms.push_back(t.presentation->is_identity(m) ? k.category->identity(f.on_objects[mm.src])
                                                             : *k.category->find_morphism(mm.name));
  }
  if (!check_functor(f).ok()) return std::nullopt;
  return f;
}

}  // namespace polycat
