#include "polycat/poly.hpp"

#include <algorithm>
#include <numeric>

namespace polycat {

int Polynomial::add(Position p) {
  if (index_.count(p.name)) throw InputError("duplicate position " + p.name);
  const int i = size();
  index_[p.name] = i;
  positions_.push_back(std::move(p));
  return i;
}

std::optional<int> Polynomial::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Polynomial GradedPolynomial::at(int bound) const {
  Polynomial p;
  for (auto& pos : generate(bound)) p.add(std::move(pos));
  p.status = (max_degree >= 0 && bound >= max_degree) ? Status::exact_at(bound) : Status::truncated_at(bound);
  return p;
}

Polynomial y_poly() {
  Polynomial p;
  p.add({"*", 0, {"*"}});
  return p;
}

Polynomial poly_from_counts(const std::vector<int>& counts, const std::string& prefix) {
  Polynomial p;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    Position pos{prefix + std::to_string(i), 0, {}};
    for (int d = 0; d < counts[i]; ++d) pos.directions.push_back("d" + std::to_string(d));
    p.add(std::move(pos));
  }
  return p;
}

PolyComposite compose_poly(const Polynomial& p, const Polynomial& q, int bound) {
  PolyComposite r;
  bool pruned = false;
  for (int i = 0; i < p.size(); ++i) {
    const int k = p.num_directions(i);
    const int budget = bound - p[i].degree;
    if (budget < 0) {
      pruned = true;
      continue;
    }
    if (k > 0 && !q.status.exact() && q.status.bound >= 0 && q.status.bound < budget)
      throw BoundExhausted("composite needs positions of degree " + std::to_string(budget) +
                           " but the inner polynomial stops at " + std::to_string(q.status.bound));
    std::vector<int> choice(k, 0);
    // odometer over q-positions per direction, pruned by degree
    std::function<void(int, int)> rec = [&](int z, int used) {
      if (z == k) {
        Position pos;
        pos.degree = p[i].degree + used;
        pos.name = p[i].name + "[";
        std::vector<int> offset(k);
        for (int a = 0; a < k; ++a) {
          if (a) pos.name += ",";
          pos.name += q[choice[a]].name;
          offset[a] = static_cast<int>(pos.directions.size());
          for (const auto& w : q[choice[a]].directions)
            pos.directions.push_back(p[i].directions[a] + "/" + w);
        }
        pos.name += "]";
        r.poly.add(std::move(pos));
        r.outer.push_back(i);
        r.inner.push_back(choice);
        r.offset.push_back(std::move(offset));
        return;
      }
      for (int j = 0; j < q.size(); ++j) {
        if (used + q[j].degree > budget) {
          pruned = true;
          continue;
        }
        choice[z] = j;
        rec(z + 1, used + q[j].degree);
      }
    };
    rec(0, 0);
  }
  const bool exact = p.status.exact() && q.status.exact() && !pruned;
  r.poly.status = exact ? Status::exact_at(bound) : Status::truncated_at(bound);
  return r;
}

Report check_poly_morphism(const PolyMorphism& f, const Polynomial& dom, const Polynomial& cod) {
  Report r;
  r.subject = "polynomial morphism";
  if (static_cast<int>(f.on_positions.size()) != dom.size() || static_cast<int>(f.on_directions.size()) != dom.size()) {
    r.fail("position count mismatch");
    return r;
  }
  for (int i = 0; i < dom.size(); ++i) {
    ++r.checked;
    const int j = f.on_positions[i];
    if (j < 0 || j >= cod.size()) {
      r.fail("position " + dom[i].name + " has no image");
      continue;
    }
    if (static_cast<int>(f.on_directions[i].size()) != cod.num_directions(j)) {
      r.fail("direction map at " + dom[i].name + " has wrong domain");
      continue;
    }
    for (int d : f.on_directions[i])
      if (d < 0 || d >= dom.num_directions(i)) r.fail("direction map at " + dom[i].name + " leaves p[I]");
  }
  r.status = meet(dom.status, cod.status);
  return r;
}

PolyMorphism identity_morphism(const Polynomial& p) {
  PolyMorphism f;
  for (int i = 0; i < p.size(); ++i) {
    f.on_positions.push_back(i);
    std::vector<int> d(p.num_directions(i));
    std::iota(d.begin(), d.end(), 0);
    f.on_directions.push_back(std::move(d));
  }
  return f;
}

PolyMorphism compose(const PolyMorphism& first, const PolyMorphism& second) {
  PolyMorphism f;
  for (std::size_t i = 0; i < first.on_positions.size(); ++i) {
    const int j = first.on_positions[i];
    f.on_positions.push_back(second.on_positions[j]);
    std::vector<int> d;
    for (int w : second.on_directions[j]) d.push_back(first.on_directions[i][w]);
    f.on_directions.push_back(std::move(d));
  }
  return f;
}

MorphismKind classify_morphism(const PolyMorphism& f, const Polynomial& dom, const Polynomial& cod) {
  MorphismKind k;
  k.cartesian = true;
  for (int i = 0; i < dom.size(); ++i) {
    const auto& d = f.on_directions[i];
    std::vector<char> hit(dom.num_directions(i), 0);
    for (int w : d) hit[w] = 1;
    const bool bij = static_cast<int>(d.size()) == dom.num_directions(i) &&
                     std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
    if (!bij) k.cartesian = false;
  }
  std::vector<int> hits(cod.size(), 0);
  for (int j : f.on_positions) ++hits[j];
  k.vertical = std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
  k.status = meet(dom.status, cod.status);
  return k;
}

EnumResult<std::string> evaluate(const Polynomial& p, int n) {
  EnumResult<std::string> r;
  for (int i = 0; i < p.size(); ++i) {
    const int k = p.num_directions(i);
    std::vector<int> t(k, 0);
    while (true) {
      std::string s = p[i].name + "(";
      for (int a = 0; a < k; ++a) s += (a ? "," : "") + std::to_string(t[a]);
      r.items.push_back(s + ")");
      int a = k - 1;
      while (a >= 0 && ++t[a] == n) t[a--] = 0;
      if (a < 0 || n == 0) break;
    }
    if (n == 0 && k > 0) r.items.pop_back();
  }
  r.status = p.status;
  return r;
}

std::optional<PolyMorphism> find_isomorphism(const Polynomial& a, const Polynomial& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<int> ia(a.size()), ib(b.size());
  std::iota(ia.begin(), ia.end(), 0);
  std::iota(ib.begin(), ib.end(), 0);
  auto by_dirs = [](const Polynomial& p) {
    return [&p](int x, int y) { return p.num_directions(x) < p.num_directions(y); };
  };
  std::stable_sort(ia.begin(), ia.end(), by_dirs(a));
  std::stable_sort(ib.begin(), ib.end(), by_dirs(b));
  PolyMorphism f;
  f.on_positions.resize(a.size());
  f.on_directions.resize(a.size());
  for (int k = 0; k < a.size(); ++k) {
    if (a.num_directions(ia[k]) != b.num_directions(ib[k])) return std::nullopt;
    f.on_positions[ia[k]] = ib[k];
    std::vector<int> d(b.num_directions(ib[k]));
    std::iota(d.begin(), d.end(), 0);
    f.on_directions[ia[k]] = std::move(d);
  }
  return f;
}

}  // namespace polycat
