#include "polycat/fincat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "polycat/union_find.hpp"

namespace polycat {

std::string Status::str() const {
  std::string s = exact() ? "exact" : "truncated";
  if (bound >= 0) s += "@" + std::to_string(bound);
  return s;
}

Status meet(Status a, Status b) {
  Status s;
  s.exactness = (a.exact() && b.exact()) ? Exactness::Exact : Exactness::Truncated;
  s.bound = std::max(a.bound, b.bound);
  return s;
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& v : other.violations) violations.push_back(prefix + v);
  for (const auto& n : other.notes) notes.push_back(prefix + n);
  checked += other.checked;
  status = meet(status, other.status);
}

std::string Report::str() const {
  std::ostringstream os;
  os << (ok() ? "PASS " : "FAIL ") << subject << " (" << checked << " checks, " << status.str() << ")";
  for (const auto& v : violations) os << "\n  violation: " << v;
  for (const auto& n : notes) os << "\n  note: " << n;
  return os.str();
}

// ---------------------------------------------------------------- FinCategory

int FinCategory::add_object(std::string name) {
  const int o = num_objects();
  object_index_[name] = o;
  objects_.push_back(name);
  out_.emplace_back();
  in_.emplace_back();
  identity_.push_back(-1);
  const int id = add_morphism("id_" + name, o, o);
  identity_[o] = id;
  composite_[{id, id}] = id;
  // Identity composites for morphisms added before are not possible: the
  // object is new.
  return o;
}

int FinCategory::add_morphism(std::string name, int src, int tgt) {
  const int f = num_morphisms();
  morphism_index_[name] = f;
  morphisms_.push_back({std::move(name), src, tgt});
  out_[src].push_back(f);
  in_[tgt].push_back(f);
  if (identity_[src] >= 0) composite_[{identity_[src], f}] = f;
  if (identity_[tgt] >= 0) composite_[{f, identity_[tgt]}] = f;
  return f;
}

void FinCategory::set_composite(int f, int g, int gf) { composite_[{f, g}] = gf; }

int FinCategory::compose(int f, int g) const {
  auto it = composite_.find({f, g});
  return it == composite_.end() ? -1 : it->second;
}

std::vector<int> FinCategory::hom(int a, int b) const {
  std::vector<int> r;
  for (int f : out_[a])
    if (morphisms_[f].tgt == b) r.push_back(f);
  return r;
}

std::optional<int> FinCategory::find_object(std::string_view name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> FinCategory::find_morphism(std::string_view name) const {
  auto it = morphism_index_.find(name);
  if (it == morphism_index_.end()) return std::nullopt;
  return it->second;
}

void FinCategory::fill_composites(const std::function<int(int, int)>& rule) {
  for (int f = 0; f < num_morphisms(); ++f)
    for (int g : out_[morphisms_[f].tgt]) composite_[{f, g}] = rule(f, g);
}

FinCategory FinCategory::opposite() const {
  FinCategory op;
  for (int o = 0; o < num_objects(); ++o) op.add_object(objects_[o]);
  std::vector<int> index(num_morphisms());
  for (int f = 0; f < num_morphisms(); ++f) {
    if (is_identity(f)) {
      index[f] = op.identity(morphisms_[f].src);
    } else {
      index[f] = op.add_morphism(morphisms_[f].name + "^op", morphisms_[f].tgt, morphisms_[f].src);
    }
  }
  for (const auto& [key, gf] : composite_) {
    if (gf < 0) continue;
    op.set_composite(index[key.second], index[key.first], index[gf]);
  }
  return op;
}

Report check_category(const FinCategory& c) {
  Report r;
  r.subject = "category";
  const int n = c.num_morphisms();
  for (int o = 0; o < c.num_objects(); ++o) {
    const int id = c.identity(o);
    if (id < 0 || c.src(id) != o || c.tgt(id) != o) r.fail("identity of " + c.object_name(o) + " is mistyped");
  }
  for (int f = 0; f < n; ++f) {
    const int a = c.src(f), b = c.tgt(f);
    ++r.checked;
    if (c.compose(c.identity(a), f) != f)
      r.fail("unit law: " + c.morphism(f).name + " ∘ id_" + c.object_name(a) + " != " + c.morphism(f).name);
    if (c.compose(f, c.identity(b)) != f)
      r.fail("unit law: id_" + c.object_name(b) + " ∘ " + c.morphism(f).name + " != " + c.morphism(f).name);
    for (int g : c.out(b)) {
      const int gf = c.compose(f, g);
      ++r.checked;
      if (gf < 0 || gf >= n) {
        r.fail("composition undefined for " + c.morphism(g).name + " ∘ " + c.morphism(f).name);
        continue;
      }
      if (c.src(gf) != a || c.tgt(gf) != c.tgt(g)) {
        r.fail("typing: " + c.morphism(g).name + " ∘ " + c.morphism(f).name + " has wrong endpoints");
        continue;
      }
      for (int h : c.out(c.tgt(g))) {
        const int hg = c.compose(g, h);
        const int lhs = c.compose(gf, h);
        const int rhs = hg < 0 ? -1 : c.compose(f, hg);
        ++r.checked;
        if (lhs != rhs)
          r.fail("associativity fails at (" + c.morphism(f).name + ", " + c.morphism(g).name + ", " +
                 c.morphism(h).name + ")");
      }
    }
  }
  return r;
}

Report check_functor(const Functor& f) {
  Report r;
  r.subject = "functor";
  const auto& a = *f.dom;
  const auto& b = *f.cod;
  for (int m = 0; m < a.num_morphisms(); ++m) {
    const int fm = f.on_morphisms[m];
    ++r.checked;
    if (b.src(fm) != f.on_objects[a.src(m)] || b.tgt(fm) != f.on_objects[a.tgt(m)])
      r.fail("endpoints not preserved by " + a.morphism(m).name);
    for (int g : a.out(a.tgt(m))) {
      const int gm = a.compose(m, g);
      if (gm < 0) continue;  // partial (truncated) source
      if (f.on_morphisms[gm] != b.compose(fm, f.on_morphisms[g]))
        r.fail("composition not preserved at " + a.morphism(m).name + ", " + a.morphism(g).name);
    }
  }
  for (int o = 0; o < a.num_objects(); ++o)
    if (f.on_morphisms[a.identity(o)] != b.identity(f.on_objects[o])) r.fail("identity not preserved");
  return r;
}

// ----------------------------------------------------------------- Copresheaf

Copresheaf::Copresheaf(CategoryPtr b) : base(std::move(b)) {
  elements.resize(base->num_objects());
  action.resize(base->num_morphisms());
}

int Copresheaf::total_size() const {
  int n = 0;
  for (const auto& e : elements) n += static_cast<int>(e.size());
  return n;
}

int Copresheaf::add_element(int o, std::string name) {
  elements[o].push_back(std::move(name));
  const int x = size(o) - 1;
  for (int f : base->out(o)) action[f].resize(size(o), -1);
  return x;
}

void Copresheaf::fill_identities() {
  for (int o = 0; o < base->num_objects(); ++o) {
    auto& a = action[base->identity(o)];
    a.resize(size(o));
    std::iota(a.begin(), a.end(), 0);
  }
}

std::optional<int> Copresheaf::find_element(int o, std::string_view name) const {
  for (int i = 0; i < size(o); ++i)
    if (elements[o][i] == name) return i;
  return std::nullopt;
}

Report check_copresheaf(const Copresheaf& x) {
  Report r;
  r.subject = "copresheaf";
  const auto& c = *x.base;
  for (int f = 0; f < c.num_morphisms(); ++f) {
    const int a = c.src(f), b = c.tgt(f);
    if (static_cast<int>(x.action[f].size()) != x.size(a)) {
      r.fail("action of " + c.morphism(f).name + " has wrong domain size");
      continue;
    }
    for (int e = 0; e < x.size(a); ++e) {
      ++r.checked;
      const int y = x.action[f][e];
      if (y < 0 || y >= x.size(b)) {
        r.fail("action of " + c.morphism(f).name + " leaves the target set");
        continue;
      }
      if (c.is_identity(f) && y != e) r.fail("identity " + c.morphism(f).name + " acts nontrivially");
    }
  }
  if (!r.ok()) return r;
  for (int f = 0; f < c.num_morphisms(); ++f)
    for (int g : c.out(c.tgt(f))) {
      const int gf = c.compose(f, g);
      if (gf < 0) continue;  // composite beyond a truncation bound
      for (int e = 0; e < x.size(c.src(f)); ++e) {
        ++r.checked;
        if (x.apply(gf, e) != x.apply(g, x.apply(f, e)))
          r.fail("functoriality fails for " + c.morphism(g).name + " ∘ " + c.morphism(f).name);
      }
    }
  return r;
}

Report check_copresheaf_map(const CopresheafMap& m, const Copresheaf& dom, const Copresheaf& cod) {
  Report r;
  r.subject = "copresheaf map";
  const auto& c = *dom.base;
  if (static_cast<int>(m.components.size()) != c.num_objects()) {
    r.fail("component count mismatch");
    return r;
  }
  for (int o = 0; o < c.num_objects(); ++o) {
    if (static_cast<int>(m.components[o].size()) != dom.size(o)) {
      r.fail("component at " + c.object_name(o) + " has wrong size");
      return r;
    }
    for (int y : m.components[o])
      if (y < 0 || y >= cod.size(o)) {
        r.fail("component at " + c.object_name(o) + " leaves the codomain");
        return r;
      }
  }
  for (int f = 0; f < c.num_morphisms(); ++f)
    for (int e = 0; e < dom.size(c.src(f)); ++e) {
      ++r.checked;
      if (m(c.tgt(f), dom.apply(f, e)) != cod.apply(f, m(c.src(f), e)))
        r.fail("naturality fails at " + c.morphism(f).name + " on " + dom.elements[c.src(f)][e]);
    }
  return r;
}

CopresheafMap identity_map(const Copresheaf& x) {
  CopresheafMap m;
  m.components.resize(x.elements.size());
  for (std::size_t o = 0; o < x.elements.size(); ++o) {
    m.components[o].resize(x.elements[o].size());
    std::iota(m.components[o].begin(), m.components[o].end(), 0);
  }
  return m;
}

CopresheafMap compose(const CopresheafMap& first, const CopresheafMap& second) {
  CopresheafMap m;
  m.components.resize(first.components.size());
  for (std::size_t o = 0; o < first.components.size(); ++o)
    for (int y : first.components[o]) m.components[o].push_back(second.components[o][y]);
  return m;
}

bool is_bijective(const CopresheafMap& m, const Copresheaf& dom, const Copresheaf& cod) {
  for (std::size_t o = 0; o < m.components.size(); ++o) {
    if (dom.size(static_cast<int>(o)) != cod.size(static_cast<int>(o))) return false;
    std::vector<char> hit(cod.size(static_cast<int>(o)), 0);
    for (int y : m.components[o]) {
      if (hit[y]) return false;
      hit[y] = 1;
    }
  }
  return true;
}

CopresheafMap inverse(const CopresheafMap& m, const Copresheaf& dom, const Copresheaf& cod) {
  if (!is_bijective(m, dom, cod)) throw Error("inverse of a non-bijective copresheaf map");
  CopresheafMap inv;
  inv.components.resize(m.components.size());
  for (std::size_t o = 0; o < m.components.size(); ++o) {
    inv.components[o].resize(m.components[o].size());
    for (std::size_t x = 0; x < m.components[o].size(); ++x) inv.components[o][m.components[o][x]] = static_cast<int>(x);
  }
  return inv;
}

std::vector<ElementRef> flatten(const Copresheaf& x) {
  std::vector<ElementRef> r;
  for (int o = 0; o < static_cast<int>(x.elements.size()); ++o)
    for (int i = 0; i < x.size(o); ++i) r.push_back({o, i});
  return r;
}

Copresheaf relabel(const Copresheaf& x, const std::vector<std::vector<int>>& perm) {
  Copresheaf y(x.base);
  for (int o = 0; o < x.base->num_objects(); ++o) {
    y.elements[o].resize(x.size(o));
    for (int i = 0; i < x.size(o); ++i) y.elements[o][perm[o][i]] = x.elements[o][i];
  }
  for (int f = 0; f < x.base->num_morphisms(); ++f) {
    const int a = x.base->src(f), b = x.base->tgt(f);
    y.action[f].resize(x.size(a));
    for (int i = 0; i < x.size(a); ++i) y.action[f][perm[a][i]] = perm[b][x.action[f][i]];
  }
  return y;
}

// ------------------------------------------------------ category of elements

CategoryOfElements category_of_elements(const Copresheaf& p) {
  const auto& c = *p.base;
  auto el = std::make_shared<FinCategory>();
  CategoryOfElements r;
  r.object_of_element.resize(c.num_objects());
  for (int o = 0; o < c.num_objects(); ++o) {
    for (int i = 0; i < p.size(o); ++i) {
      r.object_of_element[o].push_back(el->add_object(c.object_name(o) + ":" + p.elements[o][i]));
      r.element_of_object.push_back({o, i});
    }
  }
  for (int f = 0; f < c.num_morphisms(); ++f) {
    const int a = c.src(f), b = c.tgt(f);
    for (int i = 0; i < p.size(a); ++i) {
      const int zs = r.object_of_element[a][i];
      if (c.is_identity(f)) {
        r.morphism_index_[{f, i}] = el->identity(zs);
        continue;
      }
      const int zt = r.object_of_element[b][p.apply(f, i)];
      r.morphism_index_[{f, i}] = el->add_morphism(c.morphism(f).name + "@" + p.elements[a][i], zs, zt);
    }
  }
  std::vector<std::pair<int, int>> origin(el->num_morphisms());
  for (const auto& [key, m] : r.morphism_index_) origin[m] = key;
  el->fill_composites([&](int m1, int m2) {
    const auto [f, i] = origin[m1];
    const auto [g, j] = origin[m2];
    (void)j;
    return r.morphism_index_.at({c.compose(f, g), i});
  });
  r.projection.dom = el;
  r.projection.cod = p.base;
  for (const auto& e : r.element_of_object) r.projection.on_objects.push_back(e.object);
  r.projection.on_morphisms.resize(el->num_morphisms());
  for (int m = 0; m < el->num_morphisms(); ++m) r.projection.on_morphisms[m] = origin[m].first;
  r.category = el;
  return r;
}

// ------------------------------------------------------- colimits and limits

Colimit colimit_over_elements(const ElementsDiagram& d) {
  if (d.variance != ElementsDiagram::Variance::Contravariant)
    throw InputError("colimit_over_elements needs a contravariant diagram");
  const auto& shape = *d.shape;
  const int nz = shape.num_objects();
  if (static_cast<int>(d.values.size()) != nz) throw InputError("diagram has wrong number of values");
  CategoryPtr base = d.base ? d.base : (nz > 0 ? d.values[0].base : nullptr);
  Colimit out;
  if (!base) throw InputError("colimit over an empty shape needs an explicit base");
  const int nb = base->num_objects();
  out.object = Copresheaf(base);
  out.injections.assign(nz, CopresheafMap{std::vector<std::vector<int>>(nb)});
  out.representative.resize(nb);

  for (int e = 0; e < nb; ++e) {
    std::vector<int> offset(nz + 1, 0);
    for (int z = 0; z < nz; ++z) offset[z + 1] = offset[z] + d.values[z].size(e);
    UnionFind uf(offset[nz]);
    for (int k = 0; k < shape.num_morphisms(); ++k) {
      const int zs = shape.src(k), zt = shape.tgt(k);
      // transition: values[zt] -> values[zs]
      const auto& comp = d.transitions[k].components[e];
      for (int w = 0; w < d.values[zt].size(e); ++w) uf.unite(offset[zt] + w, offset[zs] + comp[w]);
    }
    std::vector<int> class_of(offset[nz], -1);
    for (int g = 0; g < offset[nz]; ++g) {
      const int root = uf.find(g);
      if (class_of[root] < 0) {
        const int z = static_cast<int>(std::upper_bound(offset.begin(), offset.end(), root) - offset.begin()) - 1;
        const int w = root - offset[z];
        class_of[root] = out.object.add_element(e, d.values[z].elements[e][w]);
        out.representative[e].push_back({z, w});
      }
      class_of[g] = class_of[root];
    }
    for (int z = 0; z < nz; ++z) {
      auto& inj = out.injections[z].components[e];
      inj.resize(d.values[z].size(e));
      for (int w = 0; w < d.values[z].size(e); ++w) inj[w] = class_of[offset[z] + w];
    }
  }
  // Prefix names with the shape object so distinct classes stay distinguishable.
  for (int e = 0; e < nb; ++e)
    for (int k = 0; k < out.object.size(e); ++k) {
      const auto [z, w] = out.representative[e][k];
      out.object.elements[e][k] = shape.object_name(z) + "/" + d.values[z].elements[e][w];
    }
  for (int f = 0; f < base->num_morphisms(); ++f) {
    const int a = base->src(f), b = base->tgt(f);
    out.object.action[f].assign(out.object.size(a), -1);
    for (int z = 0; z < nz; ++z)
      for (int w = 0; w < d.values[z].size(a); ++w) {
        const int cls = out.injections[z].components[a][w];
        const int img = out.injections[z].components[b][d.values[z].apply(f, w)];
        int& slot = out.object.action[f][cls];
        if (slot < 0) {
          slot = img;
        } else if (slot != img) {
          throw InducedActionIllDefined("quotient classes are not respected by " + base->morphism(f).name);
        }
      }
  }
  return out;
}

Limit limit_over_elements(const ElementsDiagram& d) {
  if (d.variance != ElementsDiagram::Variance::Covariant)
    throw InputError("limit_over_elements needs a covariant diagram");
  // A covariant set-valued diagram on the shape is a copresheaf on it; the
  // limit is the set of maps out of the terminal copresheaf.
  Copresheaf as_copresheaf(d.shape);
  Copresheaf point(d.shape);
  for (int z = 0; z < d.shape->num_objects(); ++z) {
    as_copresheaf.elements[z] = d.values[z].elements[0];
    point.add_element(z, "*");
  }
  for (int k = 0; k < d.shape->num_morphisms(); ++k) {
    as_copresheaf.action[k] = d.transitions[k].components[0];
    point.action[k] = {0};
  }
  Limit l;
  for_each_copresheaf_map(point, as_copresheaf, {}, [&](const CopresheafMap& m) {
    std::vector<int> fam;
    for (const auto& c : m.components) fam.push_back(c[0]);
    l.families.push_back(std::move(fam));
    return true;
  });
  return l;
}

CategoryPtr terminal_category() {
  static const CategoryPtr one = [] {
    auto c = std::make_shared<FinCategory>();
    c->add_object("*");
    return c;
  }();
  return one;
}

Copresheaf finite_set(int n, const std::string& prefix) {
  Copresheaf s(terminal_category());
  for (int i = 0; i < n; ++i) s.add_element(0, prefix + std::to_string(i));
  s.fill_identities();
  return s;
}

}  // namespace polycat
