#include "polycat/comod.hpp"

namespace polycat {

namespace {

// position of each morphism inside out(src)
std::vector<int> out_positions(const FinCategory& c) {
  std::vector<int> pos(c.num_morphisms(), -1);
  for (int o = 0; o < c.num_objects(); ++o)
    for (std::size_t k = 0; k < c.out(o).size(); ++k) pos[c.out(o)[k]] = static_cast<int>(k);
  return pos;
}

}  // namespace

Comonoid comonoid_from_category(const FinCategory& c) {
  Comonoid m;
  const auto pos = out_positions(c);
  for (int o = 0; o < c.num_objects(); ++o) {
    Position p{c.object_name(o), 0, {}};
    for (int f : c.out(o)) p.directions.push_back(c.morphism(f).name);
    m.carrier.add(std::move(p));
  }
  m.carrier.status = Status{};
  for (int o = 0; o < c.num_objects(); ++o) {
    m.counit.on_positions.push_back(0);
    m.counit.on_directions.push_back({pos[c.identity(o)]});

    Position sq{c.object_name(o) + "[", 0, {}};
    std::vector<int> inner, offset;
    std::vector<int> sharp;
    for (std::size_t k = 0; k < c.out(o).size(); ++k) {
      const int f = c.out(o)[k];
      const int b = c.tgt(f);
      inner.push_back(b);
      offset.push_back(static_cast<int>(sq.directions.size()));
      sq.name += (k ? "," : "") + c.object_name(b);
      for (int g : c.out(b)) {
        sq.directions.push_back(c.morphism(f).name + "/" + c.morphism(g).name);
        const int gf = c.compose(f, g);
        sharp.push_back(gf < 0 ? -1 : pos[gf]);
      }
    }
    sq.name += "]";
    const int k = m.square.poly.add(std::move(sq));
    m.square.outer.push_back(o);
    m.square.inner.push_back(std::move(inner));
    m.square.offset.push_back(std::move(offset));
    m.comultiplication.on_positions.push_back(k);
    m.comultiplication.on_directions.push_back(std::move(sharp));
  }
  m.square.poly.status = Status{};
  return m;
}

Report check_comonoid(const Comonoid& m) {
  Report r;
  r.subject = "comonoid";
  const auto& c = m.carrier;
  const int n = c.size();
  if (static_cast<int>(m.counit.on_positions.size()) != n || static_cast<int>(m.comultiplication.on_positions.size()) != n) {
    r.fail("structure maps do not cover the carrier");
    return r;
  }
  auto eps = [&](int C) { return m.counit.on_directions[C].at(0); };
  auto jmap = [&](int C) -> const std::vector<int>& { return m.square.inner[m.comultiplication.on_positions[C]]; };
  auto sharp = [&](int C, int d, int e) {
    const int k = m.comultiplication.on_positions[C];
    return m.comultiplication.on_directions[C][m.square.offset[k][d] + e];
  };
  for (int C = 0; C < n; ++C) {
    const int k = m.comultiplication.on_positions[C];
    if (m.square.outer[k] != C) r.fail("δ moves position " + c[C].name);
    const auto& J = jmap(C);
    const int ec = eps(C);
    if (ec < 0 || ec >= c.num_directions(C)) {
      r.fail("counit direction out of range at " + c[C].name);
      continue;
    }
    // left counit: the identity direction has codomain C and is a left unit
    ++r.checked;
    if (J[ec] != C) {
      r.fail("counit law (codomain) fails at " + c[C].name);
      continue;
    }
    for (int d = 0; d < c.num_directions(C); ++d) {
      r.checked += 2;
      if (sharp(C, ec, d) != d) r.fail("left counit law fails at " + c[C].name + "/" + c[C].directions[d]);
      if (sharp(C, d, eps(J[d])) != d) r.fail("right counit law fails at " + c[C].name + "/" + c[C].directions[d]);
    }
    // coassociativity
    for (int d = 0; d < c.num_directions(C); ++d) {
      const int D = J[d];
      for (int e = 0; e < c.num_directions(D); ++e) {
        const int de = sharp(C, d, e);
        if (de < 0) {
          r.fail("composite undefined at " + c[C].name);
          continue;
        }
        ++r.checked;
        if (J[de] != jmap(D)[e]) {
          r.fail("coassociativity (positions) fails at " + c[C].name + "/" + c[C].directions[d] + "/" + c[D].directions[e]);
          continue;
        }
        const int E = jmap(D)[e];
        for (int h = 0; h < c.num_directions(E); ++h) {
          ++r.checked;
          if (sharp(C, de, h) != sharp(C, d, sharp(D, e, h)))
            r.fail("coassociativity fails at " + c[C].name + "/" + c[C].directions[d] + "/" + c[D].directions[e] + "/" +
                   c[E].directions[h]);
        }
      }
    }
  }
  return r;
}

FinCategory category_from_comonoid(const Comonoid& m) {
  auto rep = check_comonoid(m);
  if (!rep.ok()) throw LawViolation("not a comonoid: " + rep.violations.front());
  const auto& c = m.carrier;
  FinCategory cat;
  for (int C = 0; C < c.size(); ++C) cat.add_object(c[C].name);
  std::vector<std::vector<int>> mor(c.size());
  for (int C = 0; C < c.size(); ++C) {
    const int k = m.comultiplication.on_positions[C];
    const int ec = m.counit.on_directions[C][0];
    for (int d = 0; d < c.num_directions(C); ++d)
      mor[C].push_back(d == ec ? cat.identity(C) : cat.add_morphism(c[C].directions[d], C, m.square.inner[k][d]));
  }
  for (int C = 0; C < c.size(); ++C) {
    const int k = m.comultiplication.on_positions[C];
    for (int d = 0; d < c.num_directions(C); ++d) {
      const int D = m.square.inner[k][d];
      for (int e = 0; e < c.num_directions(D); ++e)
        cat.set_composite(mor[C][d], mor[D][e], mor[C][m.comultiplication.on_directions[C][m.square.offset[k][d] + e]]);
    }
  }
  return cat;
}

Report check_cofunctor(const PolyMorphism& phi, const FinCategory& c, const FinCategory& d) {
  Report r;
  r.subject = "cofunctor";
  const auto dpos = out_positions(d);
  if (static_cast<int>(phi.on_positions.size()) != c.num_objects()) {
    r.fail("object map has wrong size");
    return r;
  }
  auto lift = [&](int C, int e) -> int {  // e a d-morphism out of φC; returns c-morphism
    const int k = phi.on_directions[C][dpos[e]];
    return c.out(C)[k];
  };
  for (int C = 0; C < c.num_objects(); ++C) {
    const int D = phi.on_positions[C];
    if (D < 0 || D >= d.num_objects() || phi.on_directions[C].size() != d.out(D).size()) {
      r.fail("malformed data at " + c.object_name(C));
      continue;
    }
    bool bad = false;
    for (int k : phi.on_directions[C])
      if (k < 0 || k >= static_cast<int>(c.out(C).size())) bad = true;
    if (bad) {
      r.fail("lift leaves the morphisms out of " + c.object_name(C));
      continue;
    }
    ++r.checked;
    if (lift(C, d.identity(D)) != c.identity(C)) r.fail("identity not lifted to identity at " + c.object_name(C));
    for (int e : d.out(D)) {
      const int f = lift(C, e);
      ++r.checked;
      if (phi.on_positions[c.tgt(f)] != d.tgt(e)) {
        r.fail("codomain of the lift of " + d.morphism(e).name + " at " + c.object_name(C) + " is wrong");
        continue;
      }
      for (int e2 : d.out(d.tgt(e))) {
        ++r.checked;
        const int lhs = lift(C, d.compose(e, e2));
        const int rhs = c.compose(f, lift(c.tgt(f), e2));
        if (lhs != rhs)
          r.fail("lift does not preserve " + d.morphism(e2).name + " ∘ " + d.morphism(e).name + " at " + c.object_name(C));
      }
    }
  }
  return r;
}

}  // namespace polycat
