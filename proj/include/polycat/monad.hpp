#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "polycat/comod.hpp"

namespace polycat {

// η(C) with its arity isomorphism c[C] -> m[η(C)].
struct UnitOp {
  std::string op;
  CopresheafMap iso;
};

// μ(M, N) together with the colimit cocone: one map m[N z] -> m[μ(M,N)] for
// each flattened element z of m[M].
struct CompositeOp {
  std::string op;
  std::vector<CopresheafMap> cocone;
};

// A familial monad on a finite category. The carrier may have infinitely
// many operations; carrier(b) materializes those of degree <= b. Subclasses
// describe η and μ; deg μ(M,N) <= deg M + Σ deg N(z).
class FamilialMonad {
 public:
  FamilialMonad(std::string name, CategoryPtr base) : name_(std::move(name)), base_(std::move(base)) {}
  virtual ~FamilialMonad() = default;

  const std::string& name() const { return name_; }
  const CategoryPtr& base() const { return base_; }

  // Memoized; safe to call from several threads.
  BicomodulePtr carrier(int bound) const;

  virtual UnitOp unit(int object) const = 0;
  // N lists op indices of m for the flattened elements of m[M].
  virtual CompositeOp multiply(const Bicomodule& m, int M, const std::vector<int>& N) const = 0;
  // Degree of the largest operation, or -1 when unbounded.
  virtual int max_degree() const { return -1; }

 protected:
  virtual Bicomodule generate(int bound) const = 0;

 private:
  std::string name_;
  CategoryPtr base_;
  mutable std::mutex mutex_;
  mutable std::map<int, BicomodulePtr> cache_;
};

using MonadPtr = std::shared_ptr<const FamilialMonad>;

// Forwards to another monad; the hooks may alter results. Used for mutants
// and for relabelled copies.
class ModifiedMonad : public FamilialMonad {
 public:
  using UnitHook = std::function<UnitOp(int object, UnitOp)>;
  using MultHook = std::function<CompositeOp(const Bicomodule& m, int M, const std::vector<int>& N, CompositeOp)>;

  ModifiedMonad(std::string name, MonadPtr inner, UnitHook u, MultHook mu)
      : FamilialMonad(std::move(name), inner->base()), inner_(std::move(inner)), u_(std::move(u)), mu_(std::move(mu)) {}

  UnitOp unit(int object) const override;
  CompositeOp multiply(const Bicomodule& m, int M, const std::vector<int>& N) const override;
  int max_degree() const override { return inner_->max_degree(); }

 protected:
  Bicomodule generate(int bound) const override { return *inner_->carrier(bound); }

 private:
  MonadPtr inner_;
  UnitHook u_;
  MultHook mu_;
};

// Degree of the composite operation (M, N) of m ◁ m.
int composite_degree(const Bicomodule& m, int M, const std::vector<int>& N);

// μ looked up in a carrier: operation index in `into` plus the cocone, and
// the arity isomorphism colim_z m[N z] -> m[μ] of the composite op k of mm.
struct ResolvedComposite {
  int op = -1;
  std::vector<CopresheafMap> cocone;
};
ResolvedComposite resolve(const FamilialMonad& m, const Bicomodule& carrier, int M, const std::vector<int>& N,
                          const Bicomodule& into);

// id_c -> m as a bicomodule map.
BicomoduleMap unit_map(const FamilialMonad& m, const Bicomodule& id, const Bicomodule& carrier);
// m ◁ m -> m, where mm was composed from `carrier` with itself and `into`
// holds every operation of degree <= the composite bound.
BicomoduleMap mult_map(const FamilialMonad& m, const Bicomodule& mm, const Bicomodule& into);

// Unit, associativity, naturality and arity isomorphisms for every operation
// instance of total degree <= bound.
Report check_monad(const FamilialMonad& m, int bound);

// ------------------------------------------------------------------ builtins

MonadPtr monad_identity(const CategoryPtr& c);
// Free category monad on graphs: ops v and e<n> with arities vec 0, vec n.
MonadPtr monad_path();
// Free monoid monad on the terminal category: op <n> has arity n.
MonadPtr monad_list();
// Free symmetric strict monoidal categories on graphs.
MonadPtr monad_smc();

using Permutation = std::vector<int>;  // i -> p[i]

// A symmetric operad given by generating functions, truncated to arities
// <= max_arity. The right action satisfies x·(σ∘τ) = (x·σ)·τ.
struct SymmetricOperad {
  std::string name;
  int max_arity = 4;
  std::function<std::vector<std::string>(int n)> elements;
  std::function<std::string(int n, const std::string& x, const Permutation& s)> act;
  std::string unit;  // in arity 1
  // γ(x; y_1, ..., y_n) with y_i of arity k_i.
  std::function<std::string(int n, const std::string& x, const std::vector<std::pair<int, std::string>>& ys)>
      substitute;
};

// Σ-orbits of the operad as operations of a monad on the terminal category.
// Throws NotSigmaFree when some Σ_n has a nontrivial stabilizer.
MonadPtr monad_from_operad(const SymmetricOperad& o);
SymmetricOperad operad_terminal();
// The associative operad times Z/2: O_n = Σ_n × {0,1}.
SymmetricOperad operad_ass_z2();

std::vector<Permutation> all_permutations(int n);
Permutation compose_perm(const Permutation& first, const Permutation& second);  // second ∘ first
Permutation inverse_perm(const Permutation& p);
std::string perm_name(const Permutation& p);

// ------------------------------------------------------------------ algebras

// An m-algebra: a copresheaf X with ψ(M, h) for h : m[M] -> X listed per
// flattened element of m[M]. The result is an element over M's object.
struct Algebra {
  MonadPtr monad;
  Copresheaf carrier;
  std::function<int(const Bicomodule& m, int M, const std::vector<int>& h)> action;
  // Degree of each element (free algebras); empty means all zero.
  std::vector<std::vector<int>> element_degree;
  Status status;
};

// The free algebra m ◁ X truncated at the bound; ψ is μ. ψ throws
// BoundExhausted when the composite lies above the bound.
Algebra free_algebra(const MonadPtr& m, const Copresheaf& x, int bound);
// A category as a path-algebra on its underlying graph.
Algebra category_algebra(const FinCategory& c);
// A monoid (table[a][b] = a·b, unit 0) as a List-algebra.
Algebra monoid_algebra(const std::vector<std::vector<int>>& table);

// Unit, multiplication and naturality laws for instances of degree <= bound.
Report check_algebra(const Algebra& a, int bound);

// ψ on a composite element (M, h) of m ◁ X as enumerated by compose_bicomodules.
int apply_action(const Algebra& a, const Bicomodule& mx, int k);

}  // namespace polycat
