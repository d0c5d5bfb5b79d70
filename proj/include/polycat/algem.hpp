#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "polycat/monad.hpp"

namespace polycat {

// An element of n ◁ X: an operation of a materialized n-carrier and the map
// n[op] -> X, listed per flattened element of n[op] as flattened elements of X.
struct KleisliElement {
  int op = -1;
  std::vector<int> leg;

  friend bool operator==(const KleisliElement&, const KleisliElement&) = default;
};

// η(x) for the element x over object o of X.
KleisliElement kleisli_unit(const FamilialMonad& n, const Bicomodule& ncar, const Copresheaf& x, int o, int e);
// Kleisli extension of a : n ◁ X along f, where f[x] : n ◁ Y for every
// flattened element x of X. LawViolation if the μ cocone does not cover.
KleisliElement kleisli_bind(const FamilialMonad& n, const Bicomodule& ncar, const KleisliElement& a,
                            const std::vector<KleisliElement>& f);
// g·a for a morphism g out of the object of the element a lives over.
KleisliElement kleisli_act(const Bicomodule& ncar, const KleisliElement& a, int g);

// A map into q ◁ n in transposed form: a position of q and, for each
// flattened element of q at that position, an element of n ◁ (source arity).
struct Transposed {
  int position = -1;
  std::vector<KleisliElement> arity;
};

// A monad morphism (p, α) : (c, m) <- (d, n) with carrier p : c ↛ d and
// α : m ◁ p -> p ◁ n given as α₁ on positions and α♯ on arities.
class MonadMorphism {
 public:
  MonadMorphism(std::string name, MonadPtr target, MonadPtr source)
      : name_(std::move(name)), target_(std::move(target)), source_(std::move(source)) {}
  virtual ~MonadMorphism() = default;

  const std::string& name() const { return name_; }
  const MonadPtr& target() const { return target_; }  // (c, m)
  const MonadPtr& source() const { return source_; }  // (d, n)

  // Operations of p of degree <= bound. Memoized.
  BicomodulePtr carrier(int bound) const;

  // α on operation k of mp = m ◁ p (mp.parts->second is a carrier of this
  // morphism). Positions index mp.parts->second; n-operations index ncar.
  // BoundExhausted when the image lies outside the materialized carriers.
  virtual Transposed alpha(const Bicomodule& mp, int k, const Bicomodule& ncar) const = 0;

 protected:
  virtual Bicomodule generate(int bound) const = 0;

 private:
  std::string name_;
  MonadPtr target_;
  MonadPtr source_;
  mutable std::mutex mutex_;
  mutable std::map<int, BicomodulePtr> cache_;
};

using MorphismPtr = std::shared_ptr<const MonadMorphism>;

// (id_c, id) : (c, m) <- (c, m)
MorphismPtr identity_morphism(const MonadPtr& m);
// (p ◁ q, (p◁β)∘(α◁q)) for (p,α) : (c,m) <- (d,n) and (q,β) : (d,n) <- (e,o).
MorphismPtr compose_morphisms(const MorphismPtr& first, const MorphismPtr& second);
// Same carrier, α altered by the hook. Used for mutants.
MorphismPtr modify_morphism(const MorphismPtr& phi, std::string name,
                            std::function<Transposed(const Bicomodule& mp, int k, const Bicomodule& ncar, Transposed)> hook);

// Positions and arities natural in both categories, the unit law and the
// multiplication law, for every instance of total degree <= bound. The
// source carrier is materialized at n_bound (default 2·bound + 2).
Report check_monad_morphism(const MonadMorphism& phi, int bound, int n_bound = -1);

// ρ : (p, α) => (q, β), stored as ρ : p -> q ◁ n in transposed form.
struct TwoCell {
  MorphismPtr from;
  MorphismPtr to;
  // Operation I of p (a carrier of `from`) to a position of q (a carrier of
  // `to`) with arities in n ◁ p[I].
  std::function<Transposed(const Bicomodule& p, int I, const Bicomodule& q, const Bicomodule& ncar)> rho;
};

// p ◁ η^n
TwoCell identity_2cell(const MorphismPtr& phi);
// Naturality and the compatibility of ρ with α and β.
Report check_2cell(const TwoCell& r, int bound, int n_bound = -1);

// The m-algebra p ◁ X induced from an n-algebra X. Positions of p above the
// bound are not materialized; ψ throws BoundExhausted when it needs one.
Algebra induced_algebra_functor(const MorphismPtr& phi, const Algebra& x, int bound);

// (g, path) <- (c, id): vertices are elements, edges are (element, morphism).
MorphismPtr builtin_el(const CategoryPtr& c);
MorphismPtr builtin_el(const Comonoid& c);

// A monad in EM: an endomorphism n of (c, m) with unit and multiplication 2-cells.
struct Wreath {
  MonadPtr base;
  MorphismPtr endo;
  TwoCell unit;  // identity_morphism(base) => endo
  TwoCell mult;  // compose_morphisms(endo, endo) => endo
};

// sm: free symmetric strict monoidal structure on path-algebras.
Wreath builtin_sm();
// sm with α♯ sending every edge to the identity at its first vertex.
MorphismPtr sm_constant_cocomposition();
// The sm permutation of μ((N,σ); (M_i,σ_i)); result edge k goes to target
// label τ⁻¹(k). Exposed for tests.
Permutation sm_multiply(const Permutation& sigma, const std::vector<Permutation>& inner);

// The endomorphism laws, both 2-cells, and the monad laws of the composite.
Report check_wreath(const Wreath& w, int bound);
// The familial monad on n ◁ m whose algebras are n-algebras in m-algebras.
MonadPtr wreath_composite(const Wreath& w);

// Isomorphism of two familial monads on the same category at a bound:
// carriers with left actions, η with arity isomorphisms, and μ on every
// instance of degree <= bound (at least min_samples of them).
struct MonadComparison {
  Report report;
  BicomoduleMap iso;
  int mu_samples = 0;
};
MonadComparison compare_monads(const MonadPtr& a, const MonadPtr& b, int bound, int min_samples = 20);

}  // namespace polycat
