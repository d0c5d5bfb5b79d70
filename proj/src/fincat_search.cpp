#include <algorithm>
#include <numeric>

#include "polycat/fincat.hpp"

namespace polycat {

namespace {

class MapSearcher {
 public:
  MapSearcher(const Copresheaf& x, const Copresheaf& y, const MapSearch& opts,
              const std::function<bool(const CopresheafMap&)>& visit)
      : x_(x), y_(y), c_(*x.base), opts_(opts), visit_(visit) {
    const int n = c_.num_objects();
    map_.components.resize(n);
    used_.resize(n);
    for (int o = 0; o < n; ++o) {
      map_.components[o].assign(x.size(o), -1);
      used_[o].assign(y.size(o), 0);
    }
    // Elements with more outgoing morphisms first, so assignments propagate early.
    order_ = flatten(x);
    std::stable_sort(order_.begin(), order_.end(), [&](const ElementRef& a, const ElementRef& b) {
      return c_.out(a.object).size() > c_.out(b.object).size();
    });
  }

  std::size_t run() {
    for (int o = 0; o < c_.num_objects(); ++o)
      if (x_.size(o) > 0 && y_.size(o) == 0) return 0;
    if (opts_.injective)
      for (int o = 0; o < c_.num_objects(); ++o)
        if (x_.size(o) > y_.size(o)) return 0;
    for (std::size_t o = 0; o < opts_.fixed.size(); ++o)
      for (std::size_t e = 0; e < opts_.fixed[o].size(); ++e) {
        const int v = opts_.fixed[o][e];
        if (v >= 0 && !assign(static_cast<int>(o), static_cast<int>(e), v)) return 0;
      }
    search(0);
    return visited_;
  }

 private:
  struct Entry {
    int object;
    int index;
  };

  bool assign(int o, int e, int v) {
    int& slot = map_.components[o][e];
    if (slot >= 0) return slot == v;
    if (opts_.injective && used_[o][v]) return false;
    if (opts_.admissible && !opts_.admissible(o, v)) return false;
    slot = v;
    used_[o][v] = 1;
    if (opts_.weight) weight_ += opts_.weight(o, v);
    trail_.push_back({o, e});
    if (opts_.weight && opts_.budget >= 0 && weight_ > opts_.budget) return false;
    for (int f : c_.out(o)) {
      if (c_.is_identity(f)) continue;
      if (!assign(c_.tgt(f), x_.apply(f, e), y_.apply(f, v))) return false;
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const auto [o, e] = trail_.back();
      trail_.pop_back();
      const int v = map_.components[o][e];
      if (opts_.weight) weight_ -= opts_.weight(o, v);
      used_[o][v] = 0;
      map_.components[o][e] = -1;
    }
  }

  // Returns false when the search should stop.
  bool search(std::size_t pos) {
    while (pos < order_.size() && map_.components[order_[pos].object][order_[pos].index] >= 0) ++pos;
    if (pos == order_.size()) {
      ++visited_;
      if (!visit_(map_)) return false;
      return !(opts_.limit > 0 && visited_ >= opts_.limit);
    }
    const auto [o, e] = order_[pos];
    for (int v = 0; v < y_.size(o); ++v) {
      const std::size_t mark = trail_.size();
      const bool ok = assign(o, e, v);
      const bool go_on = !ok || search(pos + 1);
      undo(mark);
      if (!go_on) return false;
    }
    return true;
  }

  const Copresheaf& x_;
  const Copresheaf& y_;
  const FinCategory& c_;
  const MapSearch& opts_;
  const std::function<bool(const CopresheafMap&)>& visit_;
  CopresheafMap map_;
  std::vector<std::vector<char>> used_;
  std::vector<ElementRef> order_;
  std::vector<Entry> trail_;
  long weight_ = 0;
  std::size_t visited_ = 0;
};

}  // namespace

std::size_t for_each_copresheaf_map(const Copresheaf& x, const Copresheaf& y, const MapSearch& opts,
                                    const std::function<bool(const CopresheafMap&)>& visit) {
  return MapSearcher(x, y, opts, visit).run();
}

EnumResult<CopresheafMap> enumerate_copresheaf_maps(const Copresheaf& x, const Copresheaf& y,
                                                     const MapSearch& opts) {
  EnumResult<CopresheafMap> r;
  const std::size_t n = for_each_copresheaf_map(x, y, opts, [&](const CopresheafMap& m) {
    r.items.push_back(m);
    return true;
  });
  if (opts.limit > 0 && n >= opts.limit) r.status.exactness = Exactness::Truncated;
  return r;
}

std::size_t count_copresheaf_maps(const Copresheaf& x, const Copresheaf& y) {
  return for_each_copresheaf_map(x, y, {}, [](const CopresheafMap&) { return true; });
}

std::optional<CopresheafMap> find_isomorphism(const Copresheaf& a, const Copresheaf& b) {
  if (a.base != b.base && a.base->num_objects() != b.base->num_objects()) return std::nullopt;
  for (int o = 0; o < a.base->num_objects(); ++o)
    if (a.size(o) != b.size(o)) return std::nullopt;
  std::optional<CopresheafMap> found;
  MapSearch opts;
  opts.injective = true;
  for_each_copresheaf_map(a, b, opts, [&](const CopresheafMap& m) {
    found = m;
    return false;
  });
  return found;
}

// ------------------------------------------------------- category isomorphism

namespace {

struct ObjectSignature {
  int endo = 0;
  std::vector<int> out_sizes;
  std::vector<int> in_sizes;
  friend bool operator==(const ObjectSignature&, const ObjectSignature&) = default;
};

ObjectSignature signature(const FinCategory& c, int o) {
  ObjectSignature s;
  s.endo = static_cast<int>(c.hom(o, o).size());
  for (int p = 0; p < c.num_objects(); ++p) {
    s.out_sizes.push_back(static_cast<int>(c.hom(o, p).size()));
    s.in_sizes.push_back(static_cast<int>(c.hom(p, o).size()));
  }
  std::sort(s.out_sizes.begin(), s.out_sizes.end());
  std::sort(s.in_sizes.begin(), s.in_sizes.end());
  return s;
}

class CategoryIsoSearcher {
 public:
  CategoryIsoSearcher(const FinCategory& a, const FinCategory& b) : a_(a), b_(b) {
    for (int o = 0; o < a.num_objects(); ++o) sig_a_.push_back(signature(a, o));
    for (int o = 0; o < b.num_objects(); ++o) sig_b_.push_back(signature(b, o));
    obj_.assign(a.num_objects(), -1);
    obj_used_.assign(b.num_objects(), 0);
    mor_.assign(a.num_morphisms(), -1);
    mor_used_.assign(b.num_morphisms(), 0);
  }

  bool run() { return objects(0); }

  std::vector<int> obj_;
  std::vector<int> mor_;

 private:
  bool objects(int o) {
    if (o == a_.num_objects()) {
      for (int p = 0; p < a_.num_objects(); ++p) {
        mor_[a_.identity(p)] = b_.identity(obj_[p]);
        mor_used_[b_.identity(obj_[p])] = 1;
      }
      for (int q = 0; q < a_.num_objects(); ++q)
        for (int p = 0; p < a_.num_objects(); ++p)
          if (a_.hom(p, q).size() != b_.hom(obj_[p], obj_[q]).size()) return reset_identities();
      std::vector<int> order;
      for (int f = 0; f < a_.num_morphisms(); ++f)
        if (!a_.is_identity(f)) order.push_back(f);
      if (morphisms(order, 0)) return true;
      return reset_identities();
    }
    for (int t = 0; t < b_.num_objects(); ++t) {
      if (obj_used_[t] || !(sig_a_[o] == sig_b_[t])) continue;
      obj_[o] = t;
      obj_used_[t] = 1;
      if (objects(o + 1)) return true;
      obj_used_[t] = 0;
      obj_[o] = -1;
    }
    return false;
  }

  bool reset_identities() {
    std::fill(mor_.begin(), mor_.end(), -1);
    std::fill(mor_used_.begin(), mor_used_.end(), 0);
    return false;
  }

  bool consistent(int f) const {
    const int sf = a_.src(f), tf = a_.tgt(f);
    for (int g : a_.out(tf)) {
      if (mor_[g] < 0) continue;
      const int gf = a_.compose(f, g);
      if (mor_[gf] >= 0 && b_.compose(mor_[f], mor_[g]) != mor_[gf]) return false;
    }
    for (int h : a_.in(sf)) {
      if (mor_[h] < 0) continue;
      const int fh = a_.compose(h, f);
      if (mor_[fh] >= 0 && b_.compose(mor_[h], mor_[f]) != mor_[fh]) return false;
    }
    // f as a composite of assigned morphisms
    for (int m = 0; m < a_.num_morphisms(); ++m) {
      if (mor_[m] < 0 || a_.src(m) != sf) continue;
      for (int g : a_.out(a_.tgt(m))) {
        if (mor_[g] < 0 || a_.compose(m, g) != f) continue;
        if (b_.compose(mor_[m], mor_[g]) != mor_[f]) return false;
      }
    }
    return true;
  }

  bool morphisms(const std::vector<int>& order, std::size_t pos) {
    if (pos == order.size()) return true;
    const int f = order[pos];
    for (int t : b_.hom(obj_[a_.src(f)], obj_[a_.tgt(f)])) {
      if (mor_used_[t]) continue;
      mor_[f] = t;
      mor_used_[t] = 1;
      if (consistent(f) && morphisms(order, pos + 1)) return true;
      mor_used_[t] = 0;
      mor_[f] = -1;
    }
    return false;
  }

  const FinCategory& a_;
  const FinCategory& b_;
  std::vector<ObjectSignature> sig_a_;
  std::vector<ObjectSignature> sig_b_;
  std::vector<char> obj_used_;
  std::vector<char> mor_used_;
};

}  // namespace

std::optional<Functor> find_isomorphism(const CategoryPtr& a, const CategoryPtr& b) {
  if (a->num_objects() != b->num_objects() || a->num_morphisms() != b->num_morphisms()) return std::nullopt;
  // Fast path: categories built from the same canonical names.
  {
    Functor named{a, b, {}, {}};
    bool complete = true;
    for (int o = 0; o < a->num_objects() && complete; ++o) {
      auto t = b->find_object(a->object_name(o));
      complete = t.has_value();
      if (complete) named.on_objects.push_back(*t);
    }
    for (int f = 0; f < a->num_morphisms() && complete; ++f) {
      auto t = b->find_morphism(a->morphism(f).name);
      complete = t.has_value();
      if (complete) named.on_morphisms.push_back(*t);
    }
    if (complete) {
      std::vector<int> objs = named.on_objects, mors = named.on_morphisms;
      std::sort(objs.begin(), objs.end());
      std::sort(mors.begin(), mors.end());
      const bool bijective = std::adjacent_find(objs.begin(), objs.end()) == objs.end() &&
                             std::adjacent_find(mors.begin(), mors.end()) == mors.end();
      if (bijective && check_functor(named).ok()) return named;
    }
  }
  CategoryIsoSearcher s(*a, *b);
  if (!s.run()) return std::nullopt;
  Functor f{a, b, s.obj_, s.mor_};
  if (!check_functor(f).ok()) return std::nullopt;
  return f;
}

}  // namespace polycat
