#pragma once

#include <string>
#include <vector>

#include "polycat/theory.hpp"

namespace polycat {

namespace detail {

// Names of the elements of x as operations of copresheaf_as_bicomodule(x).
std::vector<std::string> element_names(const Copresheaf& x);

// Canonical name of a Kleisli map p[J] -> m ◁ p[I], one part per element of p[J].
std::string kleisli_name(const std::string& I, const std::string& J, const std::vector<std::string>& parts);

// η per base object with the inverse arity isomorphisms c[C] <- m[ηC].
struct UnitData {
  std::vector<int> op;
  std::vector<Copresheaf> reps;
  std::vector<CopresheafMap> iso;
  std::vector<CopresheafMap> inverse_iso;

  UnitData(const FamilialMonad& m, const Bicomodule& B);
  // The base morphism C -> e2 corresponding to element u of m[ηC] over e2.
  int morphism(const FinCategory& c, int C, int e2, int u) const;
};

// m ◁ p[I] for every operation I, capped at `cap`.
struct KleisliHoms {
  BicomodulePtr B;
  std::vector<BicomodulePtr> ext;
  std::vector<OperationsView> views;

  KleisliHoms(const BicomodulePtr& p, const MonadPtr& m, int cap);
};

}  // namespace detail

// |Hom(p[J], m ◁ p[I])| at the given cap, per [I][J].
std::vector<std::vector<int>> kleisli_hom_counts(const BicomodulePtr& p, const MonadPtr& m, int cap);

}  // namespace polycat
