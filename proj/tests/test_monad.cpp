#include "doctest.h"
#include "polycat/monad.hpp"
#include "polycat/smc.hpp"
#include "polycat/standard.hpp"

using namespace polycat;

TEST_CASE("path composite arity at (2;(1,2)) is vec 3") {
  auto m = monad_path();
  auto B = m->carrier(5);
  auto mm = compose_bicomodules(B, B, {5, -1, {}});
  auto k = mm.find("e2[v,v,v,e1,e2]");
  REQUIRE(k);
  CHECK(find_isomorphism(mm.arity(*k), vec(3)));
  CHECK(check_bicomodule(mm).ok());
}

TEST_CASE("path composite agrees with the equalizer oracle") {
  auto B = monad_path()->carrier(3);
  auto a = compose_bicomodules(*B, *B, {3, -1, {}});
  auto b = compose_bicomodules_equalizer_oracle(*B, *B, 3);
  CHECK(a.size() == b.size());
  CHECK(find_isomorphism(a, b));
}

TEST_CASE("builtin monads pass their laws") {
  CHECK(check_monad(*monad_identity(graph_indexer()), 2).ok());
  CHECK(check_monad(*monad_identity(commutative_square()), 2).ok());
  auto rp = check_monad(*monad_path(), 3);
  CHECK_MESSAGE(rp.ok(), rp.str());
  auto rl = check_monad(*monad_list(), 3);
  CHECK_MESSAGE(rl.ok(), rl.str());
  auto ro = check_monad(*monad_from_operad(operad_ass_z2()), 3);
  CHECK_MESSAGE(ro.ok(), ro.str());
}

TEST_CASE("terminal symmetric operad is rejected") {
  CHECK_THROWS_AS(monad_from_operad(operad_terminal()), NotSigmaFree);
}

TEST_CASE("algebras") {
  auto a = category_algebra(*ordinal(2));
  auto r = check_algebra(a, 3);
  CHECK_MESSAGE(r.ok(), r.str());
  auto f = free_algebra(monad_path(), vec(1), 3);
  CHECK(f.carrier.size(kVertex) == 2);
  CHECK(f.carrier.size(kEdge) == 3);
  auto rf = check_algebra(f, 3);
  CHECK_MESSAGE(rf.ok(), rf.str());
  auto l = free_algebra(monad_list(), finite_set(2), 2);
  CHECK(l.carrier.size(0) == 7);
  CHECK(check_algebra(l, 2).ok());
}

TEST_CASE("path mutants are caught") {
  auto base = monad_path();
  // swap the legs of the first two edges
  auto swapped = std::make_shared<ModifiedMonad>(
      "path-swap", base, nullptr, [](const Bicomodule& m, int M, const std::vector<int>& N, CompositeOp c) {
        const int n = m.ops[M].degree;
        if (m.ops[M].object == kEdge && n >= 2 && m.ops[N[n + 1]].degree == m.ops[N[n + 2]].degree)
          std::swap(c.cocone[n + 1], c.cocone[n + 2]);
        return c;
      });
  auto r = check_monad(*swapped, 4);
  CHECK_FALSE(r.ok());
  MESSAGE(r.str());
  auto good = check_monad(*base, 4);
  CHECK(good.ok());
  MESSAGE(good.str());
}

TEST_CASE("smc monad") {
  auto m = monad_smc();
  auto B = m->carrier(4);
  auto mm = compose_bicomodules(B, B, {8, -1, {}});
  auto mu = [&](const std::string& M, const std::vector<std::string>& N) {
    std::vector<int> n;
    for (const auto& x : N) n.push_back(B->require(x));
    return m->multiply(*B, B->require(M), n).op;
  };
  // functoriality instance
  CHECK(mu("e2/01/1,1", {"v1", "v1", "v1", "v1", "e1/0/2", "e1/0/2"}) == "e2/01/2,2");
  // naturality instance
  CHECK(mu("e1/0/2", {"v2", "v2", "v2", "e2/10/0,0", "e2/01/1,1"}) == "e2/10/1,1");
  auto r = check_monad(*m, 3);
  CHECK_MESSAGE(r.ok(), r.str());
  MESSAGE(r.str());
}

TEST_CASE("smc mutant") {
  auto r = check_monad(*monad_smc_mutant(SmcMutation::UnpermutedSum), 4);
  CHECK_FALSE(r.ok());
  MESSAGE(r.str());
}
