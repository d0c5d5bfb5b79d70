#include <algorithm>
#include <numeric>

#include "polycat/monad.hpp"
#include "polycat/standard.hpp"

namespace polycat {

namespace {

// Element index inside the corepresentable c[C] of the morphism f out of C.
int rep_index(const Copresheaf& rep, const FinCategory& c, int f) {
  return *rep.find_element(c.tgt(f), c.morphism(f).name);
}

// ------------------------------------------------------------------ identity

class IdentityMonad : public FamilialMonad {
 public:
  explicit IdentityMonad(const CategoryPtr& c) : FamilialMonad("identity", c) {}

  int max_degree() const override { return 0; }

  UnitOp unit(int object) const override {
    return {base()->object_name(object), identity_map(representable(base(), object))};
  }

  // N sends h : C -> C' to the op C'; the leg at h is g ↦ g∘h.
  CompositeOp multiply(const Bicomodule& m, int M, const std::vector<int>& N) const override {
    const auto& c = *base();
    const int C = m.ops[M].object;
    const auto& rep = m.arity(M);
    CompositeOp out{m.ops[M].name, {}};
    for (const auto& [o, x] : flatten(rep)) {
      const int h = *c.find_morphism(rep.elements[o][x]);
      const auto& target = m.arity(N[out.cocone.size()]);
      CopresheafMap leg;
      leg.components.resize(c.num_objects());
      for (int d = 0; d < c.num_objects(); ++d) leg.components[d].assign(target.size(d), -1);
      for (int g : c.out(o)) leg.components[c.tgt(g)][rep_index(target, c, g)] = rep_index(rep, c, c.compose(h, g));
      out.cocone.push_back(std::move(leg));
    }
    (void)C;
    return out;
  }

 protected:
  Bicomodule generate(int) const override { return identity_bicomodule(base()); }
};

// ---------------------------------------------------------------------- path

std::string edge_op(int n) { return "e" + std::to_string(n); }

// The leg vec m -> vec total shifting by `offset`.
CopresheafMap shift_leg(int m, int total, int offset) {
  CopresheafMap leg;
  leg.components.resize(2);
  for (int i = 0; i <= m; ++i) leg.components[kVertex].push_back(offset + i);
  for (int i = 0; i < m; ++i) leg.components[kEdge].push_back(offset + i);
  (void)total;
  return leg;
}

class PathMonad : public FamilialMonad {
 public:
  PathMonad() : FamilialMonad("path", graph_indexer()) {}

  UnitOp unit(int object) const override {
    const auto g = base();
    const auto rep = representable(g, object);
    CopresheafMap iso;
    iso.components.resize(2);
    if (object == kVertex) {
      iso.components[kVertex] = {0};
      return {"v", iso};
    }
    iso.components[kEdge] = {0};
    iso.components[kVertex].assign(2, -1);
    iso.components[kVertex][*rep.find_element(kVertex, "s")] = 0;
    iso.components[kVertex][*rep.find_element(kVertex, "t")] = 1;
    return {edge_op(1), iso};
  }

  CompositeOp multiply(const Bicomodule& m, int M, const std::vector<int>& N) const override {
    if (m.ops[M].object == kVertex) return {"v", {shift_leg(0, 0, 0)}};
    const int n = m.ops[M].degree;
    std::vector<int> lengths;
    for (int i = 0; i < n; ++i) lengths.push_back(m.ops[N[n + 1 + i]].degree);
    const int total = std::accumulate(lengths.begin(), lengths.end(), 0);
    std::vector<int> offset(n + 1, 0);
    for (int i = 0; i < n; ++i) offset[i + 1] = offset[i] + lengths[i];
    CompositeOp out{edge_op(total), {}};
    for (int i = 0; i <= n; ++i) out.cocone.push_back(shift_leg(0, total, offset[i]));
    for (int i = 0; i < n; ++i) out.cocone.push_back(shift_leg(lengths[i], total, offset[i]));
    return out;
  }

 protected:
  Bicomodule generate(int bound) const override {
    const auto g = base();
    const int s = *g->find_morphism("s"), t = *g->find_morphism("t");
    Bicomodule p(g, g);
    p.add_op({"v", kVertex, 0, vec(0)});
    for (int n = 0; n <= bound; ++n) p.add_op({edge_op(n), kEdge, n, vec(n)});
    for (int n = 0; n <= bound; ++n) {
      CopresheafMap src, tgt;
      src.components = {{0}, {}};
      tgt.components = {{n}, {}};
      p.set_action(n + 1, s, 0, src);
      p.set_action(n + 1, t, 0, tgt);
    }
    p.fill_identity_actions();
    p.status = Status::truncated_at(bound);
    return p;
  }
};

// ---------------------------------------------------------------------- list

CopresheafMap offset_leg(int k, int offset) {
  CopresheafMap leg;
  leg.components.resize(1);
  for (int j = 0; j < k; ++j) leg.components[0].push_back(offset + j);
  return leg;
}

class ListMonad : public FamilialMonad {
 public:
  ListMonad() : FamilialMonad("list", terminal_category()) {}

  UnitOp unit(int) const override { return {"1", identity_map(finite_set(1))}; }

  CompositeOp multiply(const Bicomodule& m, int M, const std::vector<int>& N) const override {
    CompositeOp out;
    int total = 0;
    for (int v : N) {
      out.cocone.push_back(offset_leg(m.ops[v].degree, total));
      total += m.ops[v].degree;
    }
    (void)M;
    out.op = std::to_string(total);
    return out;
  }

 protected:
  Bicomodule generate(int bound) const override {
    Bicomodule p(base(), base());
    for (int n = 0; n <= bound; ++n) p.add_op({std::to_string(n), 0, n, finite_set(n)});
    p.fill_identity_actions();
    p.status = Status::truncated_at(bound);
    return p;
  }
};

// -------------------------------------------------------------------- operad

class OperadMonad : public FamilialMonad {
 public:
  explicit OperadMonad(SymmetricOperad o) : FamilialMonad("operad:" + o.name, terminal_category()), o_(std::move(o)) {
    for (int n = 0; n <= o_.max_arity; ++n) {
      const auto perms = all_permutations(n);
      for (const auto& x : o_.elements(n)) {
        for (const auto& s : perms) {
          if (s == perms.front()) continue;
          if (o_.act(n, x, s) == x)
            throw NotSigmaFree("operad " + o_.name + ": " + x + " is fixed by " + perm_name(s));
        }
        // orbit representative: least element in the listed order
        std::string best;
        std::size_t best_pos = SIZE_MAX;
        const auto elems = o_.elements(n);
        for (const auto& s : perms) {
          const auto y = o_.act(n, x, s);
          const auto pos = static_cast<std::size_t>(std::find(elems.begin(), elems.end(), y) - elems.begin());
          if (pos < best_pos) best_pos = pos, best = y;
        }
        rep_[x] = best;
      }
    }
  }

  int max_degree() const override { return o_.max_arity; }

  UnitOp unit(int) const override { return {op_name(1, o_.unit), identity_map(finite_set(1))}; }

  // γ(x; y_1..y_n) = r with r = r0·π for the orbit representative r0; the
  // leg of slot i sends direction j to π(offset_i + j).
  CompositeOp multiply(const Bicomodule& m, int M, const std::vector<int>& N) const override {
    const int n = m.ops[M].degree;
    std::vector<std::pair<int, std::string>> ys;
    for (int v : N) ys.push_back({m.ops[v].degree, element_of(m.ops[v].name)});
    const auto r = o_.substitute(n, element_of(m.ops[M].name), ys);
    int total = 0;
    for (const auto& y : ys) total += y.first;
    if (total > o_.max_arity) throw BoundExhausted("operad composite above the truncation arity");
    const auto& r0 = rep_.at(r);
    Permutation pi;
    for (const auto& s : all_permutations(total))
      if (o_.act(total, r0, s) == r) {
        pi = s;
        break;
      }
    CompositeOp out{op_name(total, r0), {}};
    int offset = 0;
    for (const auto& y : ys) {
      CopresheafMap leg;
      leg.components.resize(1);
      for (int j = 0; j < y.first; ++j) leg.components[0].push_back(pi[offset + j]);
      out.cocone.push_back(std::move(leg));
      offset += y.first;
    }
    return out;
  }

 protected:
  Bicomodule generate(int bound) const override {
    Bicomodule p(base(), base());
    for (int n = 0; n <= std::min(bound, o_.max_arity); ++n)
      for (const auto& x : o_.elements(n))
        if (rep_.at(x) == x) p.add_op({op_name(n, x), 0, n, finite_set(n)});
    p.fill_identity_actions();
    p.status = bound >= o_.max_arity ? Status::exact_at(bound) : Status::truncated_at(bound);
    return p;
  }

 private:
  static std::string op_name(int n, const std::string& x) { return std::to_string(n) + ":" + x; }
  static std::string element_of(const std::string& op) { return op.substr(op.find(':') + 1); }

  SymmetricOperad o_;
  std::map<std::string, std::string> rep_;
};

}  // namespace

MonadPtr monad_identity(const CategoryPtr& c) { return std::make_shared<IdentityMonad>(c); }
MonadPtr monad_path() { return std::make_shared<PathMonad>(); }
MonadPtr monad_list() { return std::make_shared<ListMonad>(); }
MonadPtr monad_from_operad(const SymmetricOperad& o) { return std::make_shared<OperadMonad>(o); }

// ---------------------------------------------------------------- permutations

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Permutation compose_perm(const Permutation& first, const Permutation& second) {
  Permutation r(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) r[i] = second[first[i]];
  return r;
}

Permutation inverse_perm(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

std::string perm_name(const Permutation& p) {
  std::string s;
  for (int v : p) s += std::to_string(v);
  return s.empty() ? "()" : s;
}

SymmetricOperad operad_terminal() {
  SymmetricOperad o;
  o.name = "terminal";
  o.elements = [](int) { return std::vector<std::string>{"*"}; };
  o.act = [](int, const std::string& x, const Permutation&) { return x; };
  o.unit = "*";
  o.substitute = [](int, const std::string&, const std::vector<std::pair<int, std::string>>&) { return std::string("*"); };
  return o;
}

namespace {

// Elements of Ass × Z/2 are written "<perm>/<bit>"; a permutation τ lists the
// order in which inputs are multiplied.
std::pair<Permutation, int> parse_ass(const std::string& x) {
  const auto slash = x.find('/');
  Permutation p;
  const std::string head = x.substr(0, slash);
  if (head != "()")
    for (char ch : head) p.push_back(ch - '0');
  return {p, x[slash + 1] - '0'};
}

std::string ass_name(const Permutation& p, int bit) { return perm_name(p) + "/" + std::to_string(bit); }

}  // namespace

SymmetricOperad operad_ass_z2() {
  SymmetricOperad o;
  o.name = "ass_z2";
  o.elements = [](int n) {
    std::vector<std::string> out;
    for (int bit = 0; bit < 2; ++bit)
      for (const auto& p : all_permutations(n)) out.push_back(ass_name(p, bit));
    return out;
  };
  o.act = [](int, const std::string& x, const Permutation& s) {
    auto [p, bit] = parse_ass(x);
    return ass_name(compose_perm(p, s), bit);
  };
  o.unit = ass_name({0}, 0);
  o.substitute = [](int n, const std::string& x, const std::vector<std::pair<int, std::string>>& ys) {
    auto [p, bit] = parse_ass(x);
    std::vector<int> offset(n + 1, 0);
    for (int i = 0; i < n; ++i) offset[i + 1] = offset[i] + ys[i].first;
    Permutation r;
    for (int i = 0; i < n; ++i) {
      const int slot = p[i];
      auto [q, b] = parse_ass(ys[slot].second);
      bit ^= b;
      for (int v : q) r.push_back(offset[slot] + v);
    }
    return ass_name(r, bit);
  };
  return o;
}

}  // namespace polycat
