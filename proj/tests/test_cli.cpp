#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "polycat/standard.hpp"
#include "spec_file.hpp"

using namespace polycat;
using namespace polycat::cli;

namespace {

SpecFile spec(const char* text, int bound) { return SpecFile(json::parse(text), bound); }

std::string run(Command f, const SpecFile& s, const Options& o, int* code = nullptr) {
  std::ostringstream out;
  const int c = f(s, o, out);
  if (code) *code = c;
  return out.str();
}

}  // namespace

TEST_CASE("exports re-import to isomorphic structures") {
  for (const auto& c : {commutative_square(), cyclic_group(3), graph_indexer(), random_poset(5, 0.5, 3)}) {
    auto back = category_from_json(json::parse(category_to_json(*c).dump()));
    CHECK(find_isomorphism(c, back));
  }
  for (const auto& x : {vec(3), strands({1, 2}), make_graph(2, {{0, 1}, {1, 1}})}) {
    auto back = copresheaf_from_json(json::parse(copresheaf_to_json(x).dump()), x.base);
    CHECK(find_isomorphism(x, back));
  }
  for (const auto& p : {monad_path()->carrier(3), monad_smc()->carrier(2), builtin_sm().endo->carrier(2)}) {
    const auto j = json::parse(bicomodule_to_json(*p).dump());
    auto back = bicomodule_from_json(j, p->left, p->right);
    CHECK(find_isomorphism(*p, back));
    // and with the categories re-imported too
    auto back2 = bicomodule_from_json(j, category_from_json(j["left"]), category_from_json(j["right"]));
    CHECK(back2.size() == p->size());
    CHECK(check_bicomodule(back2).ok());
  }
}

TEST_CASE("spec file resolution errors") {
  auto s = spec(R"({"algebras": {"a": {"category": "missing"}}})", 2);
  Options o;
  o.bound = 2;
  CHECK_THROWS_AS(run(cmd_check, s, o), InputError);
  CHECK_THROWS_AS(s.monad("nope"), InputError);
  auto bad = spec(R"({"categories": {"c": {"objects": ["a"], "morphisms": [{"name": "f", "src": "a", "tgt": "b"}]}}})", 2);
  CHECK_THROWS_AS(bad.category("c"), InputError);
}

TEST_CASE("malformed declared data fails its law check") {
  // f∘f is unset, so composition is not total
  auto s = spec(R"({"categories": {"c": {"objects": ["a"], "morphisms": [{"name": "f", "src": "a", "tgt": "a"}]}}})", 2);
  CHECK_THROWS_AS(s.category("c"), LawViolation);
}

TEST_CASE("commands") {
  auto s = spec(R"({"categories": {"one": {"builtin": "ordinal", "n": 1}, "none": {"builtin": "empty"}},
                    "algebras": {"a1": {"category": "one"}},
                    "morphisms": {"bad": {"builtin": "sm_constant"}}})",
                3);
  Options o;
  o.bound = 3;
  o.monad = "path";
  o.algebra = "a1";
  o.objects = {"e0", "e1", "e2", "e3"};
  o.segal = true;
  int code = -1;
  const auto out = run(cmd_nerve, s, o, &code);
  CHECK(code == 0);
  CHECK(out.find("e0      2") != std::string::npos);
  CHECK(out.find("e3      5") != std::string::npos);

  o.format = Format::Native;
  CHECK(run(cmd_nerve, s, o) == run(cmd_nerve, s, o));

  Options m;
  m.bound = 2;
  m.morphism = "bad";
  run(cmd_em_check, s, m, &code);
  CHECK(code == 1);
}

TEST_CASE("nerve of the empty algebra is zero") {
  auto s = spec(R"({"categories": {"none": {"builtin": "empty"}}, "algebras": {"z": {"category": "none"}}})", 2);
  Options o;
  o.bound = 2;
  o.monad = "path";
  o.algebra = "z";
  o.objects = {"e0", "e1", "e2"};
  const auto out = run(cmd_nerve, s, o);
  CHECK(out.find("e2      0") != std::string::npos);
}
