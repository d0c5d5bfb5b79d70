#include "doctest.h"
#include "polycat/algem.hpp"
#include "polycat/standard.hpp"

using namespace polycat;

TEST_CASE("identity morphisms are valid") {
  for (const auto& m : {monad_path(), monad_list(), monad_identity(commutative_square())}) {
    auto r = check_monad_morphism(*identity_morphism(m), 2);
    CHECK_MESSAGE(r.ok(), r.str());
  }
}

TEST_CASE("sm is a monad morphism") {
  auto r = check_monad_morphism(*builtin_sm().endo, 3);
  CHECK_MESSAGE(r.ok(), r.str());
}

TEST_CASE("sm with constant cocomposition is rejected") {
  auto r = check_monad_morphism(*sm_constant_cocomposition(), 2);
  CHECK_FALSE(r.ok());
  CHECK(r.str().find("unit law") != std::string::npos);
}

TEST_CASE("el is a monad morphism") {
  for (const auto& c : {ordinal(1), graph_indexer(), commutative_square(), cyclic_group(2)}) {
    auto r = check_monad_morphism(*builtin_el(c), 2);
    CHECK_MESSAGE(r.ok(), r.str());
  }
}

TEST_CASE("el induces the category of elements") {
  auto c = commutative_square();
  const auto x = representable(c, 0);
  auto id = monad_identity(c);
  Algebra xa{id, x, [](const Bicomodule&, int, const std::vector<int>& h) { return h.at(0); }, {}, {}};
  auto a = induced_algebra_functor(builtin_el(c), xa, 3);
  auto r = check_algebra(a, 3);
  CHECK_MESSAGE(r.ok(), r.str());
  auto el = category_of_elements(x);
  CHECK(find_isomorphism(a.carrier, underlying_graph(*el.category)));
}

TEST_CASE("el counts") {
  auto t = terminal_category();
  Algebra xt{monad_identity(t), terminal_copresheaf(t), [](const Bicomodule&, int, const std::vector<int>& h) { return h.at(0); }, {}, {}};
  auto a = induced_algebra_functor(builtin_el(t), xt, 2);
  CHECK(a.carrier.size(kVertex) == 1);
  CHECK(a.carrier.size(kEdge) == 1);

  auto g = graph_indexer();
  Algebra xg{monad_identity(g), vec(1), [](const Bicomodule&, int, const std::vector<int>& h) { return h.at(0); }, {}, {}};
  auto b = induced_algebra_functor(builtin_el(g), xg, 2);
  CHECK(b.carrier.size(kVertex) == 3);
  CHECK(b.carrier.size(kEdge) == 5);
  int non_identity = 0;
  for (int e = 0; e < b.carrier.size(kEdge); ++e)
    non_identity += b.carrier.apply(*g->find_morphism("s"), e) != b.carrier.apply(*g->find_morphism("t"), e);
  CHECK(non_identity == 2);
}

TEST_CASE("sm applied to the path algebra [1]") {
  auto x = category_algebra(*ordinal(1));
  auto a = induced_algebra_functor(builtin_sm().endo, x, 2);
  CHECK(a.carrier.size(kVertex) == 1 + 2 + 4);
  auto r = check_algebra(a, 2);
  CHECK_MESSAGE(r.ok(), r.str());
}

TEST_CASE("sm multiplication formula") {
  CHECK(sm_multiply({}, {}) == Permutation{});
  CHECK(sm_multiply({0}, {{1, 0}}) == Permutation{1, 0});
  // swap two blocks of sizes 2 and 1
  CHECK(sm_multiply({1, 0}, {{0, 1}, {0}}) == Permutation{2, 0, 1});
}

TEST_CASE("2-cells") {
  auto w = builtin_sm();
  auto r0 = check_2cell(identity_2cell(w.endo), 2);
  CHECK_MESSAGE(r0.ok(), r0.str());
  auto ru = check_2cell(w.unit, 3);
  CHECK_MESSAGE(ru.ok(), ru.str());
  auto rm = check_2cell(w.mult, 2);
  CHECK_MESSAGE(rm.ok(), rm.str());

  // wrong arity map: swap source and target of the unit edge
  auto bad = w.unit;
  auto rho = w.unit.rho;
  bad.rho = [rho](const Bicomodule& p, int I, const Bicomodule& q, const Bicomodule& ncar) {
    auto t = rho(p, I, q, ncar);
    if (t.arity.size() == 3) std::swap(t.arity[0], t.arity[1]);
    return t;
  };
  CHECK_FALSE(check_2cell(bad, 2).ok());
}

TEST_CASE("unit 2-cell of sm is trivial on η") {
  auto w = builtin_sm();
  auto path = w.base;
  auto id = w.unit.from->carrier(1);
  auto q = w.endo->carrier(1);
  auto ncar = path->carrier(1);
  for (int C = 0; C < 2; ++C) {
    // a representable-arity op: ρ sends it to a degree-1 op whose arity legs are all units
    auto t = w.unit.rho(*id, C, *q, *ncar);
    CHECK(q->ops[t.position].degree == 1);
    for (const auto& ke : t.arity) CHECK(ke.op == ncar->require(path->unit(ncar->ops[ke.op].object).op));
  }
}

TEST_CASE("wreath composite of sm") {
  auto w = builtin_sm();
  auto m = wreath_composite(w);
  auto r = check_monad(*m, 3);
  CHECK_MESSAGE(r.ok(), r.str());
  auto c = compare_monads(m, monad_smc(), 3);
  CHECK_MESSAGE(c.report.ok(), c.report.str());
  CHECK(c.mu_samples >= 20);
}

TEST_CASE("wreath composite of the identity endomorphism") {
  Wreath w;
  w.base = monad_path();
  w.endo = identity_morphism(w.base);
  w.unit = identity_2cell(w.endo);
  w.mult.from = compose_morphisms(w.endo, w.endo);
  w.mult.to = w.endo;
  auto base = w.base;
  // id ◁ id -> id: the element g of c[C] comes from g in the summand of id_C
  w.mult.rho = [base](const Bicomodule& p, int I, const Bicomodule& q, const Bicomodule& ncar) {
    const auto& c = *p.arity(I).base;
    const auto& outer = *p.parts->first;
    const int C = p.ops[I].object;
    const auto& aS = outer.arity(p.parts->outer[I]);
    const int z = flat_index(aS, C, *aS.find_element(C, c.morphism(c.identity(C)).name));
    Transposed t{q.require(outer.ops[p.parts->outer[I]].name), {}};
    for (const auto& [o, x] : flatten(q.arity(t.position))) {
      const int y = p.parts->arity_colimit[I].injections[z](o, x);
      t.arity.push_back(kleisli_unit(*base, ncar, p.arity(I), o, y));
    }
    return t;
  };
  auto c = compare_monads(wreath_composite(w), w.base, 2, 1);
  CHECK_MESSAGE(c.report.ok(), c.report.str());
}
