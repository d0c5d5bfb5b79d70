#include "polycat/algem.hpp"

#include <algorithm>

#include "polycat/standard.hpp"
#include "algem_internal.hpp"
#include "theory_internal.hpp"

namespace polycat {

namespace detail {

std::vector<int> representable_index(const FinCategory& c, int o) {
  std::vector<int> index(c.num_morphisms(), -1);
  std::vector<int> count(c.num_objects(), 0);
  for (int f : c.out(o)) index[f] = count[c.tgt(f)]++;
  return index;
}

Sparse sparse_op(const BicomodulePtr& p, const BicomodulePtr& q, int I, const std::vector<int>& J) {
  auto b = std::make_shared<const Bicomodule>(compose_sparse(p, q, {{I, J}}));
  std::vector<std::string> names;
  for (int j : J) names.push_back(q->ops[j].name);
  const int k = b->require(composite_name(p->ops[I].name, names));
  return {b, k};
}

int inject_flat(const Bicomodule& pq, int k, int z, int e, int w) {
  return flat_index(pq.arity(k), e, pq.parts->arity_colimit[k].injections[z](e, w));
}

std::pair<int, ElementRef> representative(const Bicomodule& pq, int k, int flat) {
  const auto ref = unflatten(pq.arity(k), flat);
  const auto [z, w] = pq.parts->arity_colimit[k].representative[ref.object][ref.index];
  return {z, {ref.object, w}};
}

KleisliElement relabel(const KleisliElement& a, const std::vector<int>& along) {
  KleisliElement out{a.op, {}};
  for (int x : a.leg) out.leg.push_back(along[x]);
  return out;
}

}  // namespace detail

using namespace detail;

// ------------------------------------------------------------ Kleisli elements

KleisliElement kleisli_unit(const FamilialMonad& n, const Bicomodule& ncar, const Copresheaf& x, int o, int e) {
  const auto& d = *n.base();
  const auto u = n.unit(o);
  const int k = ncar.require(u.op);
  const auto rep = representable(n.base(), o);
  const auto inv = inverse(u.iso, rep, ncar.arity(k));
  KleisliElement out{k, {}};
  for (const auto& [e2, a] : flatten(ncar.arity(k))) {
    const int f = *d.find_morphism(rep.elements[e2][inv(e2, a)]);
    out.leg.push_back(flat_index(x, e2, x.apply(f, e)));
  }
  return out;
}

KleisliElement kleisli_bind(const FamilialMonad& n, const Bicomodule& ncar, const KleisliElement& a,
                            const std::vector<KleisliElement>& f) {
  std::vector<int> N;
  for (int x : a.leg) N.push_back(f[x].op);
  const auto r = resolve(n, ncar, a.op, N, ncar);
  const auto& target = ncar.arity(r.op);
  KleisliElement out{r.op, std::vector<int>(target.total_size(), -1)};
  for (std::size_t u = 0; u < a.leg.size(); ++u) {
    const auto& inner = f[a.leg[u]];
    int v = 0;
    for (const auto& [e, b] : flatten(ncar.arity(inner.op))) {
      const int t = flat_index(target, e, r.cocone[u](e, b));
      const int value = inner.leg[v++];
      if (out.leg[t] >= 0 && out.leg[t] != value) throw LawViolation("μ cocone identifies elements with different images");
      out.leg[t] = value;
    }
  }
  if (std::find(out.leg.begin(), out.leg.end(), -1) != out.leg.end())
    throw LawViolation("μ cocone does not cover " + ncar.ops[r.op].name);
  return out;
}

KleisliElement kleisli_act(const Bicomodule& ncar, const KleisliElement& a, int g) {
  const auto& la = ncar.act(a.op, g);
  const auto& src = ncar.arity(a.op);
  KleisliElement out{la.target, {}};
  for (const auto& [e, v] : flatten(ncar.arity(la.target))) out.leg.push_back(a.leg[flat_index(src, e, la.restriction(e, v))]);
  return out;
}

// ------------------------------------------------------------ morphisms

BicomodulePtr MonadMorphism::carrier(int bound) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(bound);
  if (it != cache_.end()) return it->second;
  auto b = std::make_shared<const Bicomodule>(generate(bound));
  cache_.emplace(bound, b);
  return b;
}

namespace {

class IdentityMorphism : public MonadMorphism {
 public:
  explicit IdentityMorphism(const MonadPtr& m) : MonadMorphism("id(" + m->name() + ")", m, m) {}

  Transposed alpha(const Bicomodule& mp, int k, const Bicomodule& ncar) const override {
    const auto& c = *target()->base();
    const auto& mcar = *mp.parts->first;
    const int M = mp.parts->outer[k];
    const int C = mcar.ops[M].object;
    const int Mn = ncar.require(mcar.ops[M].name);
    const auto& mM = mcar.arity(M);
    Transposed t{C, {}};
    // c[C] has one element per morphism g out of C; g ↦ (g·M, restriction)
    const auto index = representable_index(c, C);
    const auto rep = representable(target()->base(), C);
    std::vector<KleisliElement> by_element(rep.total_size());
    for (int g : c.out(C)) {
      const auto& la = ncar.act(Mn, g);
      KleisliElement ke{la.target, {}};
      for (const auto& [e, b] : flatten(ncar.arity(la.target))) {
        const int a = la.restriction(e, b);
        const int z = flat_index(mM, e, a);
        const int id = representable_index(c, e)[c.identity(e)];
        ke.leg.push_back(inject_flat(mp, k, z, e, id));
      }
      by_element[flat_index(rep, c.tgt(g), index[g])] = std::move(ke);
    }
    t.arity = std::move(by_element);
    return t;
  }

 protected:
  Bicomodule generate(int) const override { return identity_bicomodule(target()->base()); }
};

class ComposedMorphism : public MonadMorphism {
 public:
  ComposedMorphism(MorphismPtr first, MorphismPtr second)
      : MonadMorphism(first->name() + "◁" + second->name(), first->target(), second->source()),
        first_(std::move(first)),
        second_(std::move(second)) {
    if (first_->source()->base() != second_->target()->base() &&
        first_->source()->base()->num_objects() != second_->target()->base()->num_objects())
      throw InputError("monad morphisms do not compose");
  }

  Transposed alpha(const Bicomodule& mp, int k, const Bicomodule& ocar) const override {
    const auto& pq = *mp.parts->second;
    const auto pcar = pq.parts->first;
    const auto qcar = pq.parts->second;
    const auto mcar = mp.parts->first;
    const int M = mp.parts->outer[k];
    const auto I = composite_inner(mp, k);
    const auto ncar = first_->source()->carrier(2 * mp.ops[k].degree + 2);

    // α of the first morphism on (M, z ↦ P_z)
    std::vector<int> P(I.size());
    for (std::size_t z = 0; z < I.size(); ++z) P[z] = pq.parts->outer[I[z]];
    const auto s1 = sparse_op(mcar, pcar, M, P);
    const auto t1 = first_->alpha(*s1.b, s1.k, *ncar);

    // the element of mp[k] reached from (z, x ∈ p[P_z], b ∈ q[Q_z x])
    auto reach = [&](int z, int x, int e, int b) {
      const int inner = pq.parts->arity_colimit[I[z]].injections[x](e, b);
      return inject_flat(mp, k, z, e, inner);
    };

    std::vector<int> Q;
    std::vector<std::vector<KleisliElement>> by_w;
    for (const auto& ke : t1.arity) {
      std::vector<int> J;  // q-op for each element u of n[N_w]
      std::vector<std::pair<int, int>> zx;
      for (int cls : ke.leg) {
        const auto [z, x] = representative(*s1.b, s1.k, cls);
        const int xf = flat_index(pcar->arity(P[z]), x.object, x.index);
        zx.push_back({z, xf});
        J.push_back(composite_inner(pq, I[z])[xf]);
      }
      const auto s2 = sparse_op(ncar, qcar, ke.op, J);
      const auto t2 = second_->alpha(*s2.b, s2.k, ocar);
      Q.push_back(t2.position);
      std::vector<KleisliElement> out;
      for (const auto& ke2 : t2.arity) {
        KleisliElement r{ke2.op, {}};
        for (int cls : ke2.leg) {
          const auto [u, b] = representative(*s2.b, s2.k, cls);
          const auto [z, xf] = zx[u];
          r.leg.push_back(reach(z, xf, b.object, b.index));
        }
        out.push_back(std::move(r));
      }
      by_w.push_back(std::move(out));
    }
    std::vector<std::string> names;
    for (int q : Q) names.push_back(qcar->ops[q].name);
    const int pos = pq.require(composite_name(pcar->ops[t1.position].name, names));
    Transposed t{pos, {}};
    for (const auto& [e, cls] : flatten(pq.arity(pos))) {
      const auto [w, y] = pq.parts->arity_colimit[pos].representative[e][cls];
      const int yf = flat_index(qcar->arity(Q[w]), e, y);
      t.arity.push_back(by_w[w][yf]);
    }
    return t;
  }

 protected:
  Bicomodule generate(int bound) const override {
    return compose_bicomodules(first_->carrier(bound), second_->carrier(bound), {bound, -1, {}});
  }

 private:
  MorphismPtr first_;
  MorphismPtr second_;
};

class ModifiedMorphism : public MonadMorphism {
 public:
  using Hook = std::function<Transposed(const Bicomodule&, int, const Bicomodule&, Transposed)>;
  ModifiedMorphism(MorphismPtr inner, std::string name, Hook hook)
      : MonadMorphism(std::move(name), inner->target(), inner->source()), inner_(std::move(inner)), hook_(std::move(hook)) {}

  Transposed alpha(const Bicomodule& mp, int k, const Bicomodule& ncar) const override {
    return hook_(mp, k, ncar, inner_->alpha(mp, k, ncar));
  }

 protected:
  Bicomodule generate(int bound) const override { return *inner_->carrier(bound); }

 private:
  MorphismPtr inner_;
  Hook hook_;
};

}  // namespace

MorphismPtr identity_morphism(const MonadPtr& m) { return std::make_shared<IdentityMorphism>(m); }

MorphismPtr compose_morphisms(const MorphismPtr& first, const MorphismPtr& second) {
  return std::make_shared<ComposedMorphism>(first, second);
}

MorphismPtr modify_morphism(const MorphismPtr& phi, std::string name,
                            std::function<Transposed(const Bicomodule&, int, const Bicomodule&, Transposed)> hook) {
  return std::make_shared<ModifiedMorphism>(phi, std::move(name), std::move(hook));
}

// ------------------------------------------------------------ law checks

namespace detail {

std::string describe(const Transposed& t, const Bicomodule& q, const Bicomodule& ncar) {
  std::string s = t.position >= 0 ? q.ops[t.position].name : "?";
  s += " [";
  for (std::size_t i = 0; i < t.arity.size(); ++i) s += (i ? "," : "") + ncar.ops[t.arity[i].op].name;
  return s + "]";
}

void compare_transposed(Report& r, const std::string& where, const Transposed& lhs, const Transposed& rhs,
                        const Bicomodule& q, const Bicomodule& ncar) {
  ++r.checked;
  if (lhs.position != rhs.position) {
    r.fail(where + ": positions differ: " + describe(lhs, q, ncar) + " vs " + describe(rhs, q, ncar));
    return;
  }
  for (std::size_t w = 0; w < lhs.arity.size(); ++w) {
    if (lhs.arity[w] == rhs.arity[w]) continue;
    const bool op = lhs.arity[w].op == rhs.arity[w].op;
    r.fail(where + ": arity element " + std::to_string(w) + " of " + q.ops[lhs.position].name +
           (op ? " has different legs" : " goes to " + ncar.ops[lhs.arity[w].op].name + " vs " + ncar.ops[rhs.arity[w].op].name));
    return;
  }
}

void check_natural(Report& r, const std::string& label, const Bicomodule& S, const Bicomodule& Q, const Bicomodule& ncar,
                   const std::function<Transposed(int)>& T, int bound) {
  const auto& c = *S.left;
  const auto& d = *Q.right;
  int skipped = 0;
  for (int k = 0; k < S.size(); ++k) {
    if (bound >= 0 && S.ops[k].degree > bound) continue;
    try {
      const auto tk = T(k);
      if (tk.position < 0 || tk.arity.size() != static_cast<std::size_t>(Q.arity(tk.position).total_size())) {
        r.fail(label + " " + S.ops[k].name + ": malformed image");
        continue;
      }
      const auto& pos = Q.arity(tk.position);
      // Kleisli elements natural over the right category
      int v = 0;
      for (const auto& [e, b] : flatten(pos)) {
        for (int g : d.out(e)) {
          if (d.is_identity(g)) continue;
          ++r.checked;
          const int w = flat_index(pos, d.tgt(g), pos.apply(g, b));
          if (!(kleisli_act(ncar, tk.arity[v], g) == tk.arity[w]))
            r.fail(label + " " + S.ops[k].name + ": element " + std::to_string(v) + " not natural along " + d.morphism(g).name);
        }
        ++v;
      }
      // compatibility with the left action
      for (int f : c.out(S.ops[k].object)) {
        if (c.is_identity(f)) continue;
        ++r.checked;
        const auto& ls = S.act(k, f);
        const auto tf = T(ls.target);
        const auto& lq = Q.act(tk.position, f);
        if (tf.position != lq.target) {
          r.fail(label + " " + S.ops[k].name + ": position not natural along " + c.morphism(f).name);
          continue;
        }
        std::vector<int> along;  // S[f·k] -> S[k]
        for (const auto& [e, x] : flatten(S.arity(ls.target))) along.push_back(flat_index(S.arity(k), e, ls.restriction(e, x)));
        int i = 0;
        for (const auto& [e, b] : flatten(Q.arity(lq.target))) {
          const int w = flat_index(pos, e, lq.restriction(e, b));
          if (!(relabel(tf.arity[i], along) == tk.arity[w])) {
            r.fail(label + " " + S.ops[k].name + ": arity not natural along " + c.morphism(f).name);
            break;
          }
          ++i;
        }
      }
    } catch (const BoundExhausted&) {
      ++skipped;
    } catch (const LawViolation& ex) {
      r.fail(label + " " + S.ops[k].name + ": " + ex.what());
    }
  }
  if (skipped) {
    r.notes.push_back(label + ": " + std::to_string(skipped) + " instances beyond the materialized carriers");
    r.status = meet(r.status, Status::truncated_at(bound));
  }
}

}  // namespace detail

Report check_monad_morphism(const MonadMorphism& phi, int bound, int n_bound) {
  Report r;
  r.subject = "monad morphism " + phi.name();
  r.status = Status::exact_at(bound);
  if (n_bound < 0) n_bound = 2 * bound + 2;
  const auto& m = *phi.target();
  const auto& n = *phi.source();
  const auto mcar = m.carrier(bound);
  const auto pcar = phi.carrier(bound);
  const auto ncar = n.carrier(n_bound);
  r.merge(check_bicomodule(*pcar), "carrier: ");

  const auto mp = std::make_shared<const Bicomodule>(compose_bicomodules(mcar, pcar, {bound, -1, {}}));
  check_natural(r, "α", *mp, *pcar, *ncar, [&](int k) { return phi.alpha(*mp, k, *ncar); }, bound);

  int skipped = 0;
  // unit: α(η^m ◁ p) = p ◁ η^n
  const auto& c = *m.base();
  for (int I = 0; I < pcar->size(); ++I) {
    try {
      const int C = pcar->ops[I].object;
      const auto u = m.unit(C);
      const int eta = mcar->require(u.op);
      const auto rep = representable(m.base(), C);
      const auto inv = inverse(u.iso, rep, mcar->arity(eta));
      std::vector<int> J;
      int id_flat = -1;
      for (const auto& [e, a] : flatten(mcar->arity(eta))) {
        const int f = *c.find_morphism(rep.elements[e][inv(e, a)]);
        if (f == c.identity(C)) id_flat = static_cast<int>(J.size());
        J.push_back(c.is_identity(f) ? I : pcar->act(I, f).target);
      }
      const auto s = sparse_op(mcar, pcar, eta, J);
      const auto lhs = phi.alpha(*s.b, s.k, *ncar);
      Transposed rhs{I, {}};
      for (const auto& [o, x] : flatten(pcar->arity(I)))
        rhs.arity.push_back(kleisli_unit(n, *ncar, s.b->arity(s.k), o, s.b->parts->arity_colimit[s.k].injections[id_flat](o, x)));
      compare_transposed(r, "unit law at " + pcar->ops[I].name, lhs, rhs, *pcar, *ncar);
    } catch (const BoundExhausted&) {
      ++skipped;
    } catch (const LawViolation& ex) {
      r.fail("unit law at " + pcar->ops[I].name + ": " + ex.what());
    }
  }

  // multiplication: α(μ^m ◁ p) = (p ◁ μ^n)(α ◁ n)(m ◁ α)
  const auto mm = std::make_shared<const Bicomodule>(compose_bicomodules(mcar, mcar, {bound, -1, {}}));
  const auto mmp = compose_bicomodules(mm, pcar, {bound, -1, {}});
  for (int x = 0; x < mmp.size(); ++x) {
    const std::string where = "multiplication law at " + mmp.ops[x].name;
    try {
      const int K = mmp.parts->outer[x];
      const auto I = composite_inner(mmp, x);  // per flattened element of mm[K]
      const int M = mm->parts->outer[K];
      const auto N = composite_inner(*mm, K);
      const auto& colK = mm->parts->arity_colimit[K];
      auto y_of = [&](int z, int e, int a) { return flat_index(mm->arity(K), e, colK.injections[z](e, a)); };

      // left side
      const auto mu = resolve(m, *mcar, M, N, *mcar);
      const auto& amu = mcar->arity(mu.op);
      std::vector<int> y_of_u(amu.total_size(), -1);
      for (std::size_t z = 0; z < N.size(); ++z)
        for (const auto& [e, a] : flatten(mcar->arity(N[z]))) y_of_u[flat_index(amu, e, mu.cocone[z](e, a))] = y_of(z, e, a);
      std::vector<int> Ip;
      for (int y : y_of_u) Ip.push_back(I[y]);
      const auto sl = sparse_op(mcar, pcar, mu.op, Ip);
      auto lhs = phi.alpha(*sl.b, sl.k, *ncar);
      std::vector<int> along_l;
      for (int cls = 0; cls < sl.b->arity(sl.k).total_size(); ++cls) {
        const auto [u, b] = representative(*sl.b, sl.k, cls);
        along_l.push_back(inject_flat(mmp, x, y_of_u[u], b.object, b.index));
      }
      for (auto& ke : lhs.arity) ke = relabel(ke, along_l);

      // right side
      std::vector<int> P;
      std::vector<Transposed> inner;
      std::vector<Sparse> inner_ops;
      for (std::size_t z = 0; z < N.size(); ++z) {
        std::vector<int> Iz;
        std::vector<int> ys;
        for (const auto& [e, a] : flatten(mcar->arity(N[z]))) {
          ys.push_back(y_of(static_cast<int>(z), e, a));
          Iz.push_back(I[ys.back()]);
        }
        auto s = sparse_op(mcar, pcar, N[z], Iz);
        auto t = phi.alpha(*s.b, s.k, *ncar);
        std::vector<int> along;
        for (int cls = 0; cls < s.b->arity(s.k).total_size(); ++cls) {
          const auto [u, b] = representative(*s.b, s.k, cls);
          along.push_back(inject_flat(mmp, x, ys[u], b.object, b.index));
        }
        for (auto& ke : t.arity) ke = relabel(ke, along);
        P.push_back(t.position);
        inner.push_back(std::move(t));
      }
      const auto so = sparse_op(mcar, pcar, M, P);
      const auto outer = phi.alpha(*so.b, so.k, *ncar);
      std::vector<KleisliElement> f;
      for (int cls = 0; cls < so.b->arity(so.k).total_size(); ++cls) {
        const auto [z, xr] = representative(*so.b, so.k, cls);
        f.push_back(inner[z].arity[flat_index(pcar->arity(P[z]), xr.object, xr.index)]);
      }
      Transposed rhs{outer.position, {}};
      for (const auto& ke : outer.arity) rhs.arity.push_back(kleisli_bind(n, *ncar, ke, f));
      compare_transposed(r, where, lhs, rhs, *pcar, *ncar);
    } catch (const BoundExhausted&) {
      ++skipped;
    } catch (const LawViolation& ex) {
      r.fail(where + ": " + ex.what());
    }
  }
  if (skipped) {
    r.notes.push_back(std::to_string(skipped) + " law instances beyond the materialized carriers");
    r.status = meet(r.status, Status::truncated_at(bound));
  }
  return r;
}

TwoCell identity_2cell(const MorphismPtr& phi) {
  TwoCell t;
  t.from = phi;
  t.to = phi;
  const auto n = phi->source();
  t.rho = [n](const Bicomodule& p, int I, const Bicomodule& q, const Bicomodule& ncar) {
    Transposed out{q.require(p.ops[I].name), {}};
    for (const auto& [o, x] : flatten(p.arity(I))) out.arity.push_back(kleisli_unit(*n, ncar, p.arity(I), o, x));
    return out;
  };
  return t;
}

Report check_2cell(const TwoCell& cell, int bound, int n_bound) {
  Report r;
  r.subject = "2-cell " + cell.from->name() + " => " + cell.to->name();
  r.status = Status::exact_at(bound);
  if (n_bound < 0) n_bound = 2 * bound + 2;
  const auto& m = *cell.from->target();
  const auto& n = *cell.from->source();
  const auto mcar = m.carrier(bound);
  const auto pcar = cell.from->carrier(bound);
  const auto qcar = cell.to->carrier(bound);
  const auto ncar = n.carrier(n_bound);
  auto rho = [&](int I) { return cell.rho(*pcar, I, *qcar, *ncar); };
  check_natural(r, "ρ", *pcar, *qcar, *ncar, rho, bound);

  int skipped = 0;
  const auto mp = compose_bicomodules(mcar, pcar, {bound, -1, {}});
  for (int k = 0; k < mp.size(); ++k) {
    const std::string where = "compatibility at " + mp.ops[k].name;
    try {
      const int M = mp.parts->outer[k];
      const auto I = composite_inner(mp, k);
      // μ^n (ρ ◁ n) α
      const auto a = cell.from->alpha(mp, k, *ncar);
      const auto rp = rho(a.position);
      Transposed lhs{rp.position, {}};
      for (const auto& ke : rp.arity) lhs.arity.push_back(kleisli_bind(n, *ncar, ke, a.arity));
      // μ^n (β ◁ n)(m ◁ ρ)
      std::vector<int> Q;
      std::vector<Transposed> rz;
      for (std::size_t z = 0; z < I.size(); ++z) {
        auto t = rho(I[z]);
        std::vector<int> along;
        for (const auto& [e, b] : flatten(pcar->arity(I[z]))) along.push_back(inject_flat(mp, k, static_cast<int>(z), e, b));
        for (auto& ke : t.arity) ke = relabel(ke, along);
        Q.push_back(t.position);
        rz.push_back(std::move(t));
      }
      const auto s = sparse_op(mcar, qcar, M, Q);
      const auto b = cell.to->alpha(*s.b, s.k, *ncar);
      std::vector<KleisliElement> f;
      for (int cls = 0; cls < s.b->arity(s.k).total_size(); ++cls) {
        const auto [z, v] = representative(*s.b, s.k, cls);
        f.push_back(rz[z].arity[flat_index(qcar->arity(Q[z]), v.object, v.index)]);
      }
      Transposed rhs{b.position, {}};
      for (const auto& ke : b.arity) rhs.arity.push_back(kleisli_bind(n, *ncar, ke, f));
      compare_transposed(r, where, lhs, rhs, *qcar, *ncar);
    } catch (const BoundExhausted&) {
      ++skipped;
    } catch (const LawViolation& ex) {
      r.fail(where + ": " + ex.what());
    }
  }
  if (skipped) {
    r.notes.push_back(std::to_string(skipped) + " instances beyond the materialized carriers");
    r.status = meet(r.status, Status::truncated_at(bound));
  }
  return r;
}

// ------------------------------------------------------------ induced algebras

Algebra induced_algebra_functor(const MorphismPtr& phi, const Algebra& x, int bound) {
  if (x.monad->base() != phi->source()->base() && x.monad->base()->num_objects() != phi->source()->base()->num_objects())
    throw InputError("algebra lives over a different category");
  const auto pcar = phi->carrier(bound);
  const auto xb = std::make_shared<const Bicomodule>(copresheaf_as_bicomodule(x.carrier));
  const auto px = std::make_shared<const Bicomodule>(compose_bicomodules(pcar, xb, {}));
  const auto view = operations_view(*px);
  const auto m = phi->target();
  const auto xnames = element_names(x.carrier);

  Algebra out;
  out.monad = m;
  out.carrier = view.ops;
  out.status = meet(x.status, pcar->status);
  out.action = [=](const Bicomodule& mb, int M, const std::vector<int>& h) {
    const int degree = mb.ops[M].degree;
    const auto mcar = m->carrier(std::max(degree, 0));
    const int Mc = mcar->require(mb.ops[M].name);
    const auto& mM = mcar->arity(Mc);
    std::vector<int> I;
    std::vector<std::vector<int>> assign;  // X element (flat) per element of p[I_z]
    int z = 0;
    for (const auto& [e, a] : flatten(mM)) {
      (void)a;
      const int op = view.global[e][h[z++]];
      I.push_back(px->parts->outer[op]);
      const auto inner = composite_inner(*px, op);
      assign.push_back(inner);
    }
    const auto s = sparse_op(mcar, pcar, Mc, I);
    const auto ncar = x.monad->carrier(2 * std::max(degree, 1) + 2);
    const auto t = phi->alpha(*s.b, s.k, *ncar);
    std::vector<std::string> names;
    for (const auto& ke : t.arity) {
      std::vector<int> hx;
      for (int cls : ke.leg) {
        const auto [zz, b] = representative(*s.b, s.k, cls);
        const int xf = assign[zz][flat_index(pcar->arity(I[zz]), b.object, b.index)];
        hx.push_back(unflatten(x.carrier, xf).index);
      }
      const int v = x.action(*ncar, ke.op, hx);
      names.push_back(xnames[flat_index(x.carrier, ncar->ops[ke.op].object, v)]);
    }
    const int result = px->require(composite_name(pcar->ops[t.position].name, names));
    return view.local[result];
  };
  return out;
}

}  // namespace polycat
