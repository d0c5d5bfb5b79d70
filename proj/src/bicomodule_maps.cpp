#include <algorithm>
#include <functional>

#include "polycat/comod.hpp"

namespace polycat {

Report check_square(const BicomoduleMap& g, const Bicomodule& p, const Bicomodule& q) {
  Report r;
  r.subject = "bicomodule map";
  const auto& c = *p.left;
  if (static_cast<int>(g.on_ops.size()) != p.size() || static_cast<int>(g.on_arities.size()) != p.size()) {
    r.fail("map does not cover the operations");
    return r;
  }
  for (int I = 0; I < p.size(); ++I) {
    const int J = g.on_ops[I];
    ++r.checked;
    if (J < 0 || J >= q.size() || q.ops[J].object != p.ops[I].object) {
      r.fail("operation " + p.ops[I].name + " sent to a mistyped operation");
      return r;
    }
    if (!check_copresheaf_map(g.on_arities[I], q.arity(J), p.arity(I)).ok()) {
      r.fail("arity map at " + p.ops[I].name + " is not natural");
      return r;
    }
  }
  for (int I = 0; I < p.size(); ++I)
    for (int f : c.out(p.ops[I].object)) {
      const int fI = p.act(I, f).target;
      const int J = g.on_ops[I];
      ++r.checked;
      if (q.act(J, f).target != g.on_ops[fI]) {
        r.fail("operations do not commute with " + c.morphism(f).name + " at " + p.ops[I].name);
        continue;
      }
      const auto lhs = compose(q.act(J, f).restriction, g.on_arities[I]);
      const auto rhs = compose(g.on_arities[fI], p.act(I, f).restriction);
      if (!(lhs == rhs)) r.fail("arity square fails for " + c.morphism(f).name + " at " + p.ops[I].name);
    }
  return r;
}

BicomoduleMap identity_map(const Bicomodule& p) {
  BicomoduleMap g;
  for (int I = 0; I < p.size(); ++I) {
    g.on_ops.push_back(I);
    g.on_arities.push_back(identity_map(p.arity(I)));
  }
  return g;
}

BicomoduleMap compose(const BicomoduleMap& first, const BicomoduleMap& second) {
  BicomoduleMap g;
  for (std::size_t I = 0; I < first.on_ops.size(); ++I) {
    const int J = first.on_ops[I];
    g.on_ops.push_back(second.on_ops[J]);
    g.on_arities.push_back(compose(second.on_arities[J], first.on_arities[I]));
  }
  return g;
}

bool is_cartesian(const BicomoduleMap& g, const Bicomodule& p, const Bicomodule& q) {
  for (int I = 0; I < p.size(); ++I)
    if (!is_bijective(g.on_arities[I], q.arity(g.on_ops[I]), p.arity(I))) return false;
  return true;
}

namespace {

const CompositeParts& parts_of(const Bicomodule& b) {
  if (!b.parts) throw InputError("expected a composite bicomodule");
  return *b.parts;
}

// Image of the element (z, w) in the arity colimit of composite op k.
int inject(const CompositeParts& P, int k, int z, int object, int w) {
  return P.arity_colimit[k].injections[z].components[object][w];
}

std::vector<int> inner_flat(const CompositeParts& P, int k) {
  const auto& pI = P.first->arity(P.outer[k]);
  std::vector<int> j;
  for (const auto& [o, x] : flatten(pI)) j.push_back(P.inner[k](o, x));
  return j;
}

std::vector<std::string> names_of(const Bicomodule& b, const std::vector<int>& ops) {
  std::vector<std::string> n;
  for (int v : ops) n.push_back(b.ops[v].name);
  return n;
}

}  // namespace

BicomoduleMap whisker_left(const Bicomodule& pq, const BicomoduleMap& g, const Bicomodule& pq2) {
  const auto& A = parts_of(pq);
  const auto& B = parts_of(pq2);
  BicomoduleMap out;
  for (int k = 0; k < pq.size(); ++k) {
    auto j = inner_flat(A, k);
    for (int& v : j) v = g.on_ops[v];
    const int t = pq2.require(composite_name(A.first->ops[A.outer[k]].name, names_of(*B.second, j)));
    const auto jk = inner_flat(A, k);
    CopresheafMap m;
    m.components.resize(pq.right->num_objects());
    for (int e = 0; e < pq.right->num_objects(); ++e)
      for (const auto& [z, w] : B.arity_colimit[t].representative[e])
        m.components[e].push_back(inject(A, k, z, e, g.on_arities[jk[z]](e, w)));
    out.on_ops.push_back(t);
    out.on_arities.push_back(std::move(m));
  }
  return out;
}

BicomoduleMap whisker_right(const Bicomodule& pq, const BicomoduleMap& g, const Bicomodule& p2q) {
  const auto& A = parts_of(pq);
  const auto& B = parts_of(p2q);
  BicomoduleMap out;
  for (int k = 0; k < pq.size(); ++k) {
    const int I = A.outer[k];
    const int gI = g.on_ops[I];
    const auto& pI = A.first->arity(I);
    const auto& p2 = B.first->arity(gI);
    const auto jk = inner_flat(A, k);
    std::vector<int> zmap;  // flattened p'[γI] -> flattened p[I]
    std::vector<int> j;
    for (const auto& [o, x] : flatten(p2)) {
      const int z = flat_index(pI, o, g.on_arities[I](o, x));
      zmap.push_back(z);
      j.push_back(jk[z]);
    }
    const int t = p2q.require(composite_name(B.first->ops[gI].name, names_of(*B.second, j)));
    CopresheafMap m;
    m.components.resize(pq.right->num_objects());
    for (int e = 0; e < pq.right->num_objects(); ++e)
      for (const auto& [z2, w] : B.arity_colimit[t].representative[e]) m.components[e].push_back(inject(A, k, zmap[z2], e, w));
    out.on_ops.push_back(t);
    out.on_arities.push_back(std::move(m));
  }
  return out;
}

BicomoduleMap associator(const Bicomodule& pq_r, const Bicomodule& p_qr) {
  const auto& X = parts_of(pq_r);   // ((p◁q), r)
  const auto& PQ = parts_of(*X.first);
  const auto& Y = parts_of(p_qr);   // (p, (q◁r))
  const auto& QR = parts_of(*Y.second);
  BicomoduleMap out;
  for (int k = 0; k < pq_r.size(); ++k) {
    const int K = X.outer[k];
    const auto L = inner_flat(X, k);  // over flattened (p◁q)[K]
    const auto& pqK = X.first->arity(K);
    const auto J = inner_flat(PQ, K);
    const int I = PQ.outer[K];
    std::vector<std::string> outer_names;
    std::vector<int> qr_ops;
    for (std::size_t z = 0; z < J.size(); ++z) {
      const auto& qJ = PQ.second->arity(J[z]);
      std::vector<int> l;
      for (const auto& [eo, w] : flatten(qJ)) l.push_back(L[flat_index(pqK, eo, inject(PQ, K, static_cast<int>(z), eo, w))]);
      const int u = Y.second->require(composite_name(PQ.second->ops[J[z]].name, names_of(*X.second, l)));
      qr_ops.push_back(u);
      outer_names.push_back(Y.second->ops[u].name);
    }
    const int t = p_qr.require(composite_name(PQ.first->ops[I].name, outer_names));
    CopresheafMap m;
    m.components.resize(pq_r.right->num_objects());
    for (int e = 0; e < pq_r.right->num_objects(); ++e)
      for (const auto& [z, u] : Y.arity_colimit[t].representative[e]) {
        const auto [w, a] = QR.arity_colimit[qr_ops[z]].representative[e][u];
        const auto& qJ = PQ.second->arity(J[z]);
        const auto ref = unflatten(qJ, w);
        const int y = flat_index(pqK, ref.object, inject(PQ, K, z, ref.object, ref.index));
        m.components[e].push_back(inject(X, k, y, e, a));
      }
    out.on_ops.push_back(t);
    out.on_arities.push_back(std::move(m));
  }
  return out;
}

BicomoduleMap associator_inverse(const Bicomodule& p_qr, const Bicomodule& pq_r) {
  const auto& Y = parts_of(p_qr);
  const auto& QR = parts_of(*Y.second);
  const auto& X = parts_of(pq_r);
  const auto& PQ = parts_of(*X.first);
  BicomoduleMap out;
  for (int k = 0; k < p_qr.size(); ++k) {
    const int I = Y.outer[k];
    const auto U = inner_flat(Y, k);  // (q◁r)-ops per flattened p[I]
    std::vector<int> qs;
    for (int u : U) qs.push_back(QR.outer[u]);
    const int K = X.first->require(composite_name(Y.first->ops[I].name, names_of(*PQ.second, qs)));
    const auto& pqK = X.first->arity(K);
    std::vector<int> l;
    for (const auto& [o, y] : flatten(pqK)) {
      const auto [z, w] = PQ.arity_colimit[K].representative[o][y];
      const auto& qz = PQ.second->arity(qs[z]);
      (void)qz;
      l.push_back(QR.inner[U[z]](o, w));
    }
    const int t = pq_r.require(composite_name(X.first->ops[K].name, names_of(*X.second, l)));
    CopresheafMap m;
    m.components.resize(p_qr.right->num_objects());
    for (int e = 0; e < p_qr.right->num_objects(); ++e)
      for (const auto& [yflat, a] : X.arity_colimit[t].representative[e]) {
        const auto ref = unflatten(pqK, yflat);
        const auto [z, w] = PQ.arity_colimit[K].representative[ref.object][ref.index];
        const auto& qz = PQ.second->arity(qs[z]);
        const int wflat = flat_index(qz, ref.object, w);
        const int u = QR.arity_colimit[U[z]].injections[wflat].components[e][a];
        m.components[e].push_back(inject(Y, k, z, e, u));
      }
    out.on_ops.push_back(t);
    out.on_arities.push_back(std::move(m));
  }
  return out;
}

namespace {

int identity_element(const Copresheaf& rep, const FinCategory& c, int object) {
  return *rep.find_element(object, c.morphism(c.identity(object)).name);
}

}  // namespace

BicomoduleMap left_unitor(const Bicomodule& id_p) {
  const auto& X = parts_of(id_p);
  const auto& c = *id_p.left;
  BicomoduleMap out;
  for (int k = 0; k < id_p.size(); ++k) {
    const int C = X.outer[k];
    const auto& rep = X.first->arity(C);
    const int idz = flat_index(rep, C, identity_element(rep, c, C));
    const int I = inner_flat(X, k)[idz];
    CopresheafMap m;
    m.components.resize(id_p.right->num_objects());
    const auto& pI = X.second->arity(I);
    for (int e = 0; e < id_p.right->num_objects(); ++e)
      for (int w = 0; w < pI.size(e); ++w) m.components[e].push_back(inject(X, k, idz, e, w));
    out.on_ops.push_back(I);
    out.on_arities.push_back(std::move(m));
  }
  return out;
}

BicomoduleMap left_unitor_inverse(const Bicomodule& p, const Bicomodule& id_p) {
  const auto& X = parts_of(id_p);
  const auto& c = *p.left;
  BicomoduleMap out;
  for (int I = 0; I < p.size(); ++I) {
    const int C = p.ops[I].object;
    const auto& rep = X.first->arity(C);
    std::vector<std::string> names;
    std::vector<int> fs;  // morphism per flattened element of c[C]
    for (const auto& [o, x] : flatten(rep)) {
      int f = -1;
      for (int h : c.out(C))
        if (c.tgt(h) == o && c.morphism(h).name == rep.elements[o][x]) f = h;
      fs.push_back(f);
      names.push_back(p.ops[p.act(I, f).target].name);
    }
    const int t = id_p.require(composite_name(c.object_name(C), names));
    CopresheafMap m;
    m.components.resize(p.right->num_objects());
    for (int e = 0; e < p.right->num_objects(); ++e)
      for (const auto& [z, w] : X.arity_colimit[t].representative[e]) m.components[e].push_back(p.act(I, fs[z]).restriction(e, w));
    out.on_ops.push_back(t);
    out.on_arities.push_back(std::move(m));
  }
  return out;
}

BicomoduleMap right_unitor(const Bicomodule& p_id) {
  const auto& X = parts_of(p_id);
  const auto& d = *p_id.right;
  BicomoduleMap out;
  for (int k = 0; k < p_id.size(); ++k) {
    const int I = X.outer[k];
    const auto& pI = X.first->arity(I);
    const auto J = inner_flat(X, k);
    CopresheafMap m;
    m.components.resize(d.num_objects());
    for (int o = 0; o < d.num_objects(); ++o)
      for (int x = 0; x < pI.size(o); ++x) {
        const int z = flat_index(pI, o, x);
        const auto& rep = X.second->arity(J[z]);
        m.components[o].push_back(inject(X, k, z, o, identity_element(rep, d, o)));
      }
    out.on_ops.push_back(I);
    out.on_arities.push_back(std::move(m));
  }
  return out;
}

BicomoduleMap right_unitor_inverse(const Bicomodule& p, const Bicomodule& p_id) {
  const auto& X = parts_of(p_id);
  const auto& d = *p.right;
  BicomoduleMap out;
  for (int I = 0; I < p.size(); ++I) {
    const auto& pI = p.arity(I);
    std::vector<std::string> names;
    for (const auto e : flatten(pI)) names.push_back(d.object_name(e.object));
    const int t = p_id.require(composite_name(p.ops[I].name, names));
    CopresheafMap m;
    m.components.resize(d.num_objects());
    for (int e = 0; e < d.num_objects(); ++e)
      for (const auto& [z, g] : X.arity_colimit[t].representative[e]) {
        const auto ref = unflatten(pI, z);
        const auto& rep = X.second->arity(ref.object);
        int h = -1;
        for (int f : d.out(ref.object))
          if (d.tgt(f) == e && d.morphism(f).name == rep.elements[e][g]) h = f;
        m.components[e].push_back(pI.apply(h, ref.index));
      }
    out.on_ops.push_back(t);
    out.on_arities.push_back(std::move(m));
  }
  return out;
}

// ------------------------------------------------------- structured searches

namespace {

// Backtracking over operation assignments with arity maps. In iso mode the
// arity maps go a[I] -> b[γI] and are bijective; otherwise they go
// b[γI] -> a[I] as in BicomoduleMap.
class MapAssembler {
 public:
  MapAssembler(const Bicomodule& a, const Bicomodule& b, bool iso) : a_(a), b_(b), iso_(iso) {
    opmap_.assign(a.size(), -1);
    maps_.resize(a.size());
    used_.assign(b.size(), 0);
    incoming_.resize(a.size());
    const auto& c = *a.left;
    for (int K = 0; K < a.size(); ++K)
      for (int f : c.out(a.ops[K].object))
        if (!c.is_identity(f)) incoming_[a.act(K, f).target].push_back({K, f});
    order_.resize(a.size());
    for (int i = 0; i < a.size(); ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int x, int y) { return a.arity(x).total_size() < a.arity(y).total_size(); });
  }

  std::size_t run(const std::function<bool(const BicomoduleMap&)>& visit, std::size_t limit) {
    visit_ = &visit;
    limit_ = limit;
    if (iso_ && a_.size() != b_.size()) return 0;
    search(0);
    return found_;
  }

 private:
  const Copresheaf& X(int I, int J) const { return iso_ ? a_.arity(I) : b_.arity(J); }
  const Copresheaf& Y(int I, int J) const { return iso_ ? b_.arity(J) : a_.arity(I); }
  const CopresheafMap& rX(int I, int f, int J) const { return iso_ ? a_.act(I, f).restriction : b_.act(J, f).restriction; }
  const CopresheafMap& rY(int I, int f, int J) const { return iso_ ? b_.act(J, f).restriction : a_.act(I, f).restriction; }

  bool sizes_match(int I, int J) const {
    if (!iso_) return true;
    for (int o = 0; o < a_.right->num_objects(); ++o)
      if (a_.arity(I).size(o) != b_.arity(J).size(o)) return false;
    return true;
  }

  bool search(std::size_t pos) {
    if (pos == order_.size()) {
      BicomoduleMap g;
      if (iso_) {
        for (int I = 0; I < a_.size(); ++I) {
          g.on_ops.push_back(opmap_[I]);
          g.on_arities.push_back(inverse(maps_[I], a_.arity(I), b_.arity(opmap_[I])));
        }
      } else {
        g.on_ops = opmap_;
        g.on_arities = maps_;
      }
      ++found_;
      if (!(*visit_)(g)) return false;
      return !(limit_ > 0 && found_ >= limit_);
    }
    const int I = order_[pos];
    const auto& c = *a_.left;
    const int C = a_.ops[I].object;
    for (int J = 0; J < b_.size(); ++J) {
      if (b_.ops[J].object != C || (iso_ && used_[J]) || !sizes_match(I, J)) continue;
      bool ok = true;
      for (int f : c.out(C)) {
        if (c.is_identity(f)) continue;
        const int fI = a_.act(I, f).target;
        if (opmap_[fI] >= 0 && b_.act(J, f).target != opmap_[fI]) ok = false;
      }
      for (const auto& [K, f] : incoming_[I])
        if (opmap_[K] >= 0 && b_.act(opmap_[K], f).target != J) ok = false;
      if (!ok) continue;
      // values forced by already assigned targets f·I
      MapSearch ms;
      ms.injective = iso_;
      const auto& x = X(I, J);
      const auto& y = Y(I, J);
      ms.fixed.resize(x.base->num_objects());
      for (int o = 0; o < x.base->num_objects(); ++o) ms.fixed[o].assign(x.size(o), -1);
      for (int f : c.out(C)) {
        if (c.is_identity(f)) continue;
        const int fI = a_.act(I, f).target;
        if (opmap_[fI] < 0) continue;
        const auto& rx = rX(I, f, J);
        const auto& ry = rY(I, f, J);
        const auto& m = maps_[fI];
        for (int o = 0; o < x.base->num_objects(); ++o)
          for (std::size_t u = 0; u < rx.components[o].size(); ++u) {
            int& slot = ms.fixed[o][rx.components[o][u]];
            const int v = ry(o, m(o, static_cast<int>(u)));
            if (slot >= 0 && slot != v) ok = false;
            slot = v;
          }
      }
      if (!ok) continue;
      opmap_[I] = J;
      used_[J] = 1;
      bool go_on = true;
      for_each_copresheaf_map(x, y, ms, [&](const CopresheafMap& m) {
        // squares with assigned sources K, f·K = I
        for (const auto& [K, f] : incoming_[I]) {
          if (opmap_[K] < 0) continue;
          const auto lhs = compose(rX(K, f, opmap_[K]), maps_[K]);
          const auto rhs = compose(m, rY(K, f, opmap_[K]));
          if (!(lhs == rhs)) return true;
        }
        maps_[I] = m;
        go_on = search(pos + 1);
        return go_on;
      });
      opmap_[I] = -1;
      used_[J] = 0;
      maps_[I] = CopresheafMap{};
      if (!go_on) return false;
    }
    return true;
  }

  const Bicomodule& a_;
  const Bicomodule& b_;
  bool iso_;
  std::vector<int> opmap_;
  std::vector<CopresheafMap> maps_;
  std::vector<char> used_;
  std::vector<std::vector<std::pair<int, int>>> incoming_;
  std::vector<int> order_;
  const std::function<bool(const BicomoduleMap&)>* visit_ = nullptr;
  std::size_t limit_ = 0;
  std::size_t found_ = 0;
};

}  // namespace

std::optional<BicomoduleMap> find_isomorphism(const Bicomodule& a, const Bicomodule& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::optional<BicomoduleMap> out;
  std::function<bool(const BicomoduleMap&)> visit = [&](const BicomoduleMap& g) {
    out = g;
    return false;
  };
  MapAssembler(a, b, true).run(visit, 1);
  return out;
}

EnumResult<BicomoduleMap> enumerate_bicomodule_maps(const Bicomodule& p, const Bicomodule& q, std::size_t limit) {
  EnumResult<BicomoduleMap> r;
  std::function<bool(const BicomoduleMap&)> visit = [&](const BicomoduleMap& g) {
    r.items.push_back(g);
    return true;
  };
  const std::size_t n = MapAssembler(p, q, false).run(visit, limit);
  r.status = meet(p.status, q.status);
  if (limit > 0 && n >= limit) r.status.exactness = Exactness::Truncated;
  return r;
}

}  // namespace polycat
