#include <algorithm>

#include "polycat/monad.hpp"
#include "polycat/standard.hpp"

namespace polycat {

BicomodulePtr FamilialMonad::carrier(int bound) const {
  if (max_degree() >= 0) bound = std::min(bound, max_degree());
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(bound);
  if (it != cache_.end()) return it->second;
  auto b = std::make_shared<const Bicomodule>(generate(bound));
  cache_.emplace(bound, b);
  return b;
}

UnitOp ModifiedMonad::unit(int object) const {
  auto u = inner_->unit(object);
  return u_ ? u_(object, std::move(u)) : u;
}

CompositeOp ModifiedMonad::multiply(const Bicomodule& m, int M, const std::vector<int>& N) const {
  auto c = inner_->multiply(m, M, N);
  return mu_ ? mu_(m, M, N, std::move(c)) : c;
}

int composite_degree(const Bicomodule& m, int M, const std::vector<int>& N) {
  int d = m.ops[M].degree;
  for (int v : N) d += m.ops[v].degree;
  return d;
}

ResolvedComposite resolve(const FamilialMonad& m, const Bicomodule& carrier, int M, const std::vector<int>& N,
                          const Bicomodule& into) {
  auto c = m.multiply(carrier, M, N);
  return {into.require(c.op), std::move(c.cocone)};
}

namespace {

// The comparison colim_z m[N z] -> m[μ] induced by a cocone, read off the
// class representatives of composite op k.
CopresheafMap comparison(const Bicomodule& mm, int k, const std::vector<CopresheafMap>& cocone) {
  const auto& col = mm.parts->arity_colimit[k];
  CopresheafMap phi;
  phi.components.resize(mm.right->num_objects());
  for (int e = 0; e < mm.right->num_objects(); ++e)
    for (const auto& [z, w] : col.representative[e]) phi.components[e].push_back(cocone[z](e, w));
  return phi;
}

bool cocone_factors(const Bicomodule& mm, int k, const std::vector<CopresheafMap>& cocone, const CopresheafMap& phi) {
  const auto& col = mm.parts->arity_colimit[k];
  const auto J = composite_inner(mm, k);
  for (std::size_t z = 0; z < J.size(); ++z) {
    const auto& a = mm.parts->second->arity(J[z]);
    for (int e = 0; e < mm.right->num_objects(); ++e)
      for (int w = 0; w < a.size(e); ++w)
        if (cocone[z](e, w) != phi(e, col.injections[z](e, w))) return false;
  }
  return true;
}

std::string describe(const Bicomodule& m, int M, const std::vector<int>& N) {
  std::vector<std::string> names;
  for (int v : N) names.push_back(m.ops[v].name);
  return composite_name(m.ops[M].name, names);
}

}  // namespace

BicomoduleMap unit_map(const FamilialMonad& m, const Bicomodule& id, const Bicomodule& carrier) {
  BicomoduleMap g;
  for (int C = 0; C < id.size(); ++C) {
    auto u = m.unit(C);
    const int H = carrier.require(u.op);
    g.on_ops.push_back(H);
    g.on_arities.push_back(inverse(u.iso, id.arity(C), carrier.arity(H)));
  }
  return g;
}

BicomoduleMap mult_map(const FamilialMonad& m, const Bicomodule& mm, const Bicomodule& into) {
  BicomoduleMap g;
  const auto& carrier = *mm.parts->second;
  for (int k = 0; k < mm.size(); ++k) {
    const auto r = resolve(m, carrier, mm.parts->outer[k], composite_inner(mm, k), into);
    g.on_ops.push_back(r.op);
    g.on_arities.push_back(inverse(comparison(mm, k, r.cocone), mm.arity(k), into.arity(r.op)));
  }
  return g;
}

Report check_monad(const FamilialMonad& m, int bound) {
  Report r;
  r.subject = "monad " + m.name();
  r.status = Status::exact_at(bound);
  const auto& c = *m.base();
  const auto B = m.carrier(bound);
  const auto id = identity_bicomodule(m.base());

  // units
  std::vector<int> eta(c.num_objects(), -1);
  std::vector<CopresheafMap> eta_iso(c.num_objects());
  for (int C = 0; C < c.num_objects(); ++C) {
    ++r.checked;
    auto u = m.unit(C);
    auto H = B->find(u.op);
    if (!H) {
      r.fail("unit at " + c.object_name(C) + " names an unknown operation " + u.op);
      continue;
    }
    const auto& op = B->ops[*H];
    if (op.object != C) r.fail("unit at " + c.object_name(C) + " lies over the wrong object");
    if (!check_copresheaf_map(u.iso, id.arity(C), op.arity).ok() || !is_bijective(u.iso, id.arity(C), op.arity)) {
      r.fail("unit arity map at " + c.object_name(C) + " is not an isomorphism");
      continue;
    }
    eta[C] = *H;
    eta_iso[C] = u.iso;
  }
  if (!r.ok()) return r;
  r.merge(check_square(unit_map(m, id, *B), id, *B), "unit naturality: ");

  // composites
  const auto mm = std::make_shared<const Bicomodule>(compose_bicomodules(B, B, {bound, -1, {}}));
  bool composites_ok = true;
  for (int k = 0; k < mm->size(); ++k) {
    const int M = mm->parts->outer[k];
    const auto N = composite_inner(*mm, k);
    const std::string where = describe(*B, M, N);
    ++r.checked;
    auto cm = m.multiply(*B, M, N);
    auto t = B->find(cm.op);
    if (!t) {
      r.fail("composite " + where + " names an operation outside the bound: " + cm.op);
      composites_ok = false;
      continue;
    }
    if (B->ops[*t].object != B->ops[M].object) r.fail("composite " + where + " lies over the wrong object");
    if (cm.cocone.size() != N.size()) {
      r.fail("composite " + where + " has a cocone of the wrong size");
      composites_ok = false;
      continue;
    }
    bool natural = true;
    for (std::size_t z = 0; z < N.size(); ++z)
      natural &= check_copresheaf_map(cm.cocone[z], B->arity(N[z]), B->arity(*t)).ok();
    if (!natural) {
      r.fail("composite " + where + " has a non-natural cocone leg");
      composites_ok = false;
      continue;
    }
    const auto phi = comparison(*mm, k, cm.cocone);
    if (!cocone_factors(*mm, k, cm.cocone, phi)) {
      r.fail("composite " + where + " has a cocone that does not factor through the colimit");
      composites_ok = false;
    } else if (!is_bijective(phi, mm->arity(k), B->arity(*t))) {
      r.fail("composite " + where + " has a non-invertible arity comparison");
      composites_ok = false;
    }
  }
  if (!composites_ok) return r;
  r.merge(check_square(mult_map(m, *mm, *B), *mm, *B), "multiplication naturality: ");

  // unit laws
  for (int M = 0; M < B->size(); ++M) {
    const int C = B->ops[M].object;
    const auto& aM = B->arity(M);
    {
      const int H = eta[C];
      const auto& aH = B->arity(H);
      std::vector<int> N(aH.total_size(), -1);
      const auto& rep = id.arity(C);
      int z0 = -1;
      for (int o = 0; o < c.num_objects(); ++o)
        for (int g = 0; g < rep.size(o); ++g) {
          const int f = *c.find_morphism(rep.elements[o][g]);
          const int z = flat_index(aH, o, eta_iso[C](o, g));
          N[z] = B->act(M, f).target;
          if (c.is_identity(f)) z0 = z;
        }
      ++r.checked;
      auto cm = m.multiply(*B, H, N);
      if (cm.op != B->ops[M].name)
        r.fail("left unit law fails at " + B->ops[M].name + ": got " + cm.op);
      else if (!(cm.cocone[z0] == identity_map(aM)))
        r.fail("left unit law fails at " + B->ops[M].name + ": arity map is not the identity");
    }
    {
      std::vector<int> N;
      const auto elems = flatten(aM);
      for (const auto& [o, x] : elems) N.push_back(eta[o]);
      ++r.checked;
      auto cm = m.multiply(*B, M, N);
      if (cm.op != B->ops[M].name) {
        r.fail("right unit law fails at " + B->ops[M].name + ": got " + cm.op);
        continue;
      }
      for (std::size_t z = 0; z < elems.size(); ++z) {
        const auto [o, x] = elems[z];
        const auto& rep = id.arity(o);
        bool good = true;
        for (int d = 0; d < c.num_objects(); ++d)
          for (int g = 0; g < rep.size(d); ++g) {
            const int f = *c.find_morphism(rep.elements[d][g]);
            good &= cm.cocone[z](d, eta_iso[o](d, g)) == aM.apply(f, x);
          }
        if (!good) {
          r.fail("right unit law fails at " + B->ops[M].name + ": leg " + aM.elements[o][x] + " is not the Yoneda map");
          break;
        }
      }
    }
  }

  // associativity over operations of (m◁m)◁m
  const auto mmm = compose_bicomodules(mm, B, {bound, -1, {}});
  struct Triple {
    int K;
    std::vector<int> P;
  };
  std::vector<Triple> triples;
  int need = bound;
  for (int k = 0; k < mmm.size(); ++k) {
    Triple t{mmm.parts->outer[k], composite_inner(mmm, k)};
    const auto& col = mm->parts->arity_colimit[t.K];
    const auto N = composite_inner(*mm, t.K);
    for (std::size_t z = 0; z < N.size(); ++z) {
      int d = B->ops[N[z]].degree;
      for (const auto& [e, w] : flatten(B->arity(N[z])))
        d += B->ops[t.P[flat_index(mm->arity(t.K), e, col.injections[z](e, w))]].degree;
      need = std::max(need, d);
    }
    triples.push_back(std::move(t));
  }
  const auto Big = m.carrier(need);
  std::vector<int> big(B->size());
  for (int k = 0; k < B->size(); ++k) big[k] = Big->require(B->ops[k].name);
  for (const auto& [K, P] : triples) {
    const int M = mm->parts->outer[K];
    const auto N = composite_inner(*mm, K);
    const auto& col = mm->parts->arity_colimit[K];
    const auto& aK = mm->arity(K);
    std::vector<int> bN;
    for (int v : N) bN.push_back(big[v]);
    // LHS: μ(μ(M,N), P)
    auto L = resolve(m, *Big, big[M], bN, *Big);
    const auto phi = comparison(*mm, K, L.cocone);
    const auto& aL = Big->arity(L.op);
    std::vector<int> P2(aL.total_size(), -1);
    for (const auto& [e, x] : flatten(aK)) P2[flat_index(aL, e, phi(e, x))] = big[P[flat_index(aK, e, x)]];
    ++r.checked;
    auto lhs = m.multiply(*Big, L.op, P2);
    // RHS: μ(M, z ↦ μ(N z, P restricted))
    std::vector<int> Q;
    std::vector<CompositeOp> inner;
    bool found = true;
    for (std::size_t z = 0; z < N.size(); ++z) {
      std::vector<int> Pz;
      for (const auto& [e, w] : flatten(B->arity(N[z]))) Pz.push_back(big[P[flat_index(aK, e, col.injections[z](e, w))]]);
      inner.push_back(m.multiply(*Big, big[N[z]], Pz));
      auto q = Big->find(inner.back().op);
      if (!q) {
        found = false;
        break;
      }
      Q.push_back(*q);
    }
    const std::string where = describe(*mm, K, P);
    if (!found) {
      r.fail("associativity at " + where + ": inner composite outside the carrier");
      continue;
    }
    auto rhs = m.multiply(*Big, big[M], Q);
    if (lhs.op != rhs.op) {
      r.fail("associativity fails at " + where + ": " + lhs.op + " vs " + rhs.op);
      continue;
    }
    bool same = true;
    for (std::size_t z = 0; z < N.size() && same; ++z) {
      const auto& aN = B->arity(N[z]);
      for (const auto& [e, u] : flatten(aN)) {
        const int x = col.injections[z](e, u);
        const int lz = flat_index(aL, e, phi(e, x));
        const int pz = P[flat_index(aK, e, x)];
        const auto& aP = B->arity(pz);
        const int uz = flat_index(aN, e, u);
        for (int d = 0; d < c.num_objects(); ++d)
          for (int w = 0; w < aP.size(d); ++w)
            if (lhs.cocone[lz](d, w) != rhs.cocone[z](d, inner[z].cocone[uz](d, w))) same = false;
      }
    }
    if (!same) r.fail("associativity fails at " + where + ": arity maps differ");
  }
  return r;
}

}  // namespace polycat
