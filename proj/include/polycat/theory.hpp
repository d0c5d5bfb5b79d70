#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polycat/coclosure.hpp"
#include "polycat/monad.hpp"

namespace polycat {

struct TheoryOptions {
  int bound = -1;      // degree bound of the carrier holding the selected operations
  int inner_cap = -1;  // cap on the degree of substituted operations; -1: bound
  bool close = true;   // add unit operations and close under the left action
  bool stabilize = true;  // certify hom-sets by recounting at inner_cap + 1
};

// Θ_m on a selection of operations, stored as its opposite: the morphisms
// I -> J of `presentation` are the Kleisli maps p[J] -> m ◁ p[I]. Each
// morphism carries a canonical name listing the images of that Kleisli map,
// shared with the oracle.
struct TheoryCategory {
  MonadPtr monad;
  BicomodulePtr carrier;      // m.carrier(bound)
  BicomodulePtr p;            // selected operations, c↛c
  std::vector<int> selection;  // carrier index of each object
  int inner_cap = -1;
  Comonad comonad;
  ComonoidDecode decode;
  // Built in the order of category_from_comonoid and installed as
  // decode.category; composites outside the range are missing when !complete.
  std::shared_ptr<FinCategory> presentation;
  bool complete = true;
  std::map<std::string, int> by_name;
  std::vector<std::vector<int>> hom_size;  // presentation homs [I][J]
  std::vector<std::vector<Status>> exactness;
  PolyMorphism cofunctor;  // presentation -> c

  int object(std::string_view name) const;
  // |Θ_m(A, B)|, i.e. presentation hom (B, A).
  int theta_hom(int a, int b) const { return hom_size[b][a]; }
  // Presentation morphism I -> J whose Kleisli map is η ∘ φ for an arity
  // map φ : p[J] -> p[I] given on flattened elements.
  std::optional<int> inert_morphism(int I, int J, const std::vector<int>& phi) const;
  // Unit object η(C) of a base object, if selected.
  std::optional<int> unit_object(int C) const;
};
using TheoryPtr = std::shared_ptr<const TheoryCategory>;

TheoryPtr theory_category(const MonadPtr& m, const std::vector<std::string>& objects, const TheoryOptions& opts);
// The generalized construction [p, p ◁ m] for p : c↛c, e.g. p = List over an
// operad monad. p's operations become the objects.
TheoryPtr theory_category(const BicomodulePtr& p, const MonadPtr& m, const TheoryOptions& opts);
// [List, List ◁ o] on the given arities, words capped at `word_bound`.
TheoryPtr lawvere_theory(const MonadPtr& o, const std::vector<int>& arities, int word_bound);

// Kleisli homs Hom(p[J], m ◁ p[I]) enumerated directly and composed with μ.
struct KleisliTheory {
  MonadPtr monad;
  BicomodulePtr p;
  BicomodulePtr carrier;  // operations of m the maps refer to
  std::shared_ptr<FinCategory> category;  // same orientation and naming as TheoryCategory::presentation
  bool complete = true;
  std::vector<std::vector<int>> hom_size;
  // [I][J][k]: the Kleisli map of the k-th morphism I -> J, per flattened
  // element of p[J]: (operation of m, images of its arity in p[I]).
  std::vector<std::vector<std::vector<std::vector<std::pair<int, std::vector<int>>>>>> maps;
  std::vector<std::vector<std::vector<int>>> morphism;  // [I][J][k] -> category morphism
};
KleisliTheory kleisli_oracle(const MonadPtr& m, const std::vector<std::string>& objects, const TheoryOptions& opts);
KleisliTheory kleisli_oracle(const BicomodulePtr& p, const MonadPtr& m, const TheoryOptions& opts);

// The same selection, closed as theory_category closes it.
std::vector<std::string> close_selection(const MonadPtr& m, const std::vector<std::string>& objects, int bound);

// Name-based comparison: objects, hom-sets, identities and every composite
// (including which ones fall outside the enumerated range).
Report compare_theories(const TheoryCategory& t, const KleisliTheory& k);
// Checks that the identity-on-names assignment is an isomorphism of the
// complete categories and returns it.
std::optional<Functor> theory_isomorphism(const TheoryCategory& t, const KleisliTheory& k);

// The inert part: Θ^0 presented through [p,p]; morphisms I -> J are arity
// maps p[J] -> p[I], named like the corresponding inert Kleisli maps.
struct InertCategory {
  std::shared_ptr<FinCategory> category;
  std::vector<std::vector<std::vector<std::vector<int>>>> maps;  // [I][J][k] flattened φ
  std::vector<std::vector<std::vector<int>>> morphism;
};
InertCategory inert_category(const BicomodulePtr& p, const ComposeOptions& opts = {});
// j : inert -> theory on morphisms; -1 where the theory lacks the image.
std::vector<int> inert_embedding(const InertCategory& i, const TheoryCategory& t);

// A copresheaf on the presentation (a presheaf on Θ_m).
struct NervePresheaf {
  TheoryPtr theory;            // null for oracle results
  CategoryPtr base;            // the presentation it lives on
  Copresheaf data;
  Status status;
};

// Comodule route: p ◁ X with the coaction assembled from the unit of the
// coclosure and ψ, transferred along the decoded comonad.
NervePresheaf generalized_nerve(const TheoryPtr& t, const Algebra& a);
NervePresheaf nerve(const MonadPtr& m, const Algebra& a, const std::vector<std::string>& objects, const TheoryOptions& opts);
// Restricted Yoneda: Hom(p[I], X) with Kleisli precomposition.
NervePresheaf nerve_oracle(const KleisliTheory& k, const Algebra& a);
// Element sets and actions agree by name.
Report compare_nerves(const NervePresheaf& a, const NervePresheaf& b);

// Segal condition at every object: the canonical map P(M) -> lim over the
// elements of p[M] of P(η C) is a bijection (limit form), and P(M) matches
// Hom(p[M], X') for X' rebuilt from the unit objects (reconstruction form).
Report segal_check(const NervePresheaf& P);

// P with one extra element at `object`, copying the behaviour of element x.
NervePresheaf duplicate_element(const NervePresheaf& P, int object, int x);

}  // namespace polycat
