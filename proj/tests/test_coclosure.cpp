#include "doctest.h"
#include "polycat/coclosure.hpp"
#include "polycat/standard.hpp"

using namespace polycat;

namespace {

BicomodulePtr ptr(Bicomodule b) { return std::make_shared<const Bicomodule>(std::move(b)); }

// 1↛graph with one operation per listed path length (-1 for a bare vertex).
BicomodulePtr path_objects(const std::vector<int>& lengths) {
  Bicomodule p(terminal_category(), graph_indexer());
  for (int n : lengths) p.add_op({n < 0 ? "v" : "e" + std::to_string(n), 0, std::max(n, 0), vec(std::max(n, 0))});
  p.fill_identity_actions();
  p.status = Status{};
  return ptr(std::move(p));
}

// 1↛1 with one operation of each listed arity.
BicomodulePtr sets(const std::vector<int>& sizes, const std::string& prefix) {
  Bicomodule p(terminal_category(), terminal_category());
  for (std::size_t i = 0; i < sizes.size(); ++i) p.add_op({prefix + std::to_string(i), 0, sizes[i], finite_set(sizes[i])});
  p.fill_identity_actions();
  p.status = Status{};
  return ptr(std::move(p));
}

}  // namespace

TEST_CASE("[path, path] arities") {
  auto P = monad_path()->carrier(4);
  auto cl = coclosure(P, P, {});
  for (int n = 0; n <= 4; ++n) {
    const auto& a = cl.bicomodule->arity(*P->find("e" + std::to_string(n)));
    CHECK(a.size(kVertex) == n + 1);
    CHECK(a.size(kEdge) == (n + 2) * (n + 1) / 2);
  }
  CHECK(check_bicomodule(*cl.bicomodule).ok());
}

TEST_CASE("coclosure unit and triangles") {
  auto P = monad_path()->carrier(2);
  auto r = monad_path()->carrier(1);
  auto rq = ptr(compose_bicomodules(r, P, {}));
  auto t = check_triangles(P, P, rq, {});
  CHECK_MESSAGE(t.ok(), t.str());

  auto L = sets({0, 1, 2}, "p");
  auto Q = sets({0, 1}, "q");
  auto R = sets({1, 2}, "r");
  auto RQ = ptr(compose_bicomodules(R, Q, {}));
  auto t2 = check_triangles(L, Q, RQ, {});
  CHECK_MESSAGE(t2.ok(), t2.str());
}

TEST_CASE("coclosure adjunction on small polynomials") {
  struct Case {
    std::vector<int> p, q, r;
  };
  const std::vector<Case> cases = {
      {{1}, {0, 1}, {1}}, {{2}, {1}, {0, 1}}, {{0, 1}, {1, 2}, {0, 1}}, {{1, 2}, {0, 1}, {2}}, {{2}, {0, 2}, {1, 1}},
  };
  for (const auto& c : cases) {
    auto p = sets(c.p, "p"), q = sets(c.q, "q"), r = sets(c.r, "r");
    auto cl = coclosure(p, q, {});
    auto rq = ptr(compose_bicomodules(r, q, {}));
    auto a = check_adjunction(cl, r, rq);
    CHECK_MESSAGE(a.report.ok(), a.report.str());
    CHECK(a.left == a.right);
    CHECK(a.left > 0);
  }
}

TEST_CASE("coclosure adjunction on graphs") {
  auto p = path_objects({1});
  auto q = path_objects({-1, 1});
  auto r = sets({1, 2}, "r");
  auto cl = coclosure(p, q, {});
  auto rq = ptr(compose_bicomodules(r, q, {}));
  auto a = check_adjunction(cl, r, rq);
  CHECK_MESSAGE(a.report.ok(), a.report.str());
  CHECK(a.left == a.right);
}

TEST_CASE("path comonad decodes to a category") {
  auto p = path_objects({-1, 0, 1, 2});
  auto e = coclosure_comonad(p, monad_path(), {-1, 2, {}}, {});
  auto r = check_comonad(e);
  CHECK_MESSAGE(r.ok(), r.str());
  auto dec = comonad_to_comonoid(e);
  REQUIRE(dec.complete);
  CHECK(check_comonoid(dec.comonoid).ok());
  CHECK(dec.category->num_objects() == 4);
  CHECK(check_category(*dec.category).ok());
  CHECK(dec.category->hom(2, 2).size() == 3);
  CHECK(check_cofunctor(dec.cofunctor, *dec.category, *terminal_category()).ok());
}

TEST_CASE("list comonad with a word cap") {
  auto p = sets({0, 1, 2}, "n");
  auto e = coclosure_comonad(p, monad_list(), {-1, 2, {}}, {});
  auto r = check_comonad(e);
  CHECK_MESSAGE(r.ok(), r.str());
  MESSAGE(r.str());
}
