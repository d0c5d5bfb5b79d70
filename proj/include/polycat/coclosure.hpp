#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polycat/comod.hpp"
#include "polycat/monad.hpp"

namespace polycat {

// [p, q] for p : c↛e and q : d↛e. Operation I of [p,q] is operation I of p;
// its arity is q ◁ p[I], whose elements over D are pairs (K, h : q[K] -> p[I])
// with K an operation of q over D.
struct Coclosure {
  BicomodulePtr p;
  BicomodulePtr q;
  BicomodulePtr bicomodule;
  // Per operation I: the composite q ◁ p[I]. Its op k is the element
  // global[I][D][x] of the arity at object D.
  std::vector<BicomodulePtr> arity_parts;
  std::vector<OperationsView> views;

  // (K, h) as an element (object, index) of [p,q][I]; h lists the images of
  // the flattened elements of q[K] as flattened elements of p[I].
  ElementRef element(int I, int K, const std::vector<int>& h) const;
  // The pair (K, h) of an element.
  std::pair<int, std::vector<int>> unpack(int I, ElementRef x) const;
};

// opts bound the composites q ◁ p[I] (degree budget, caps, seeds on q).
Coclosure coclosure(const BicomodulePtr& p, const BicomodulePtr& q, const ComposeOptions& opts);

// A bicomodule map together with the sparse composite it lands in.
struct MapInto {
  BicomoduleMap map;
  BicomodulePtr codomain;
};

// p -> [p,q] ◁ q : I ↦ (I, (K,h) ↦ K), arity map (K,h,w) ↦ h(w).
MapInto coclosure_unit(const Coclosure& cl);

// f : [p,q] -> r gives p -> r ◁ q.
MapInto transpose(const Coclosure& cl, const BicomoduleMap& f, const BicomodulePtr& r);
// g : p -> rq with rq a composite r ◁ q gives [p,q] -> r.
BicomoduleMap untranspose(const Coclosure& cl, const BicomoduleMap& g, const Bicomodule& rq);

// [g, q] : [p,q] -> [p',q] for g : p -> p'.
BicomoduleMap coclosure_map(const Coclosure& from, const BicomoduleMap& g, const Coclosure& to);

// The counit [r ◁ q, q] -> r for a composite rq = r ◁ q.
struct Counit {
  Coclosure cl;
  BicomoduleMap map;
};
Counit coclosure_counit(const BicomodulePtr& rq, const ComposeOptions& opts);

// Both triangle identities at the given instance: [p,q] -> [[p,q]◁q, q] ->
// [p,q] and r◁q -> [r◁q,q]◁q -> r◁q are identities.
Report check_triangles(const BicomodulePtr& p, const BicomodulePtr& q, const BicomodulePtr& rq, const ComposeOptions& opts);

// Counts Maps([p,q] -> r) and Maps(p -> r◁q) and checks that transposition
// is a bijection between them. rq must be the full composite r ◁ q.
struct AdjunctionCheck {
  std::size_t left = 0;
  std::size_t right = 0;
  Report report;
};
AdjunctionCheck check_adjunction(const Coclosure& cl, const BicomodulePtr& r, const BicomodulePtr& rq);

// ------------------------------------------------------------------- comonads

// The comonad [p, p ◁ m] on d for p : d↛c and a monad m on c.
struct Comonad {
  MonadPtr monad;
  BicomodulePtr p;
  BicomodulePtr pm;  // p ◁ m, the second argument of the coclosure
  Coclosure cl;
  std::vector<ElementRef> identity;  // per operation I: the counit element of [p,p◁m][I]
  BicomoduleMap counit;              // [p,p◁m] -> id_d
  BicomodulePtr id;                  // id_d
  MapInto comultiplication;          // [p,p◁m] -> [p,p◁m] ◁ [p,p◁m] (partial entries are -1)

  // β ∘ α: α ∈ E[I] with codomain J, β ∈ E[J]. Returns nullopt when the
  // composite lies outside the enumerated range.
  std::optional<ElementRef> compose(int I, ElementRef alpha, ElementRef beta) const;
  // Operation of p that α ∈ E[I] points to.
  int codomain(int I, ElementRef alpha) const;
};

// opts control the enumeration of p ◁ m (bound, inner_cap, seeds).
Comonad coclosure_comonad(const BicomodulePtr& p, const MonadPtr& m, const ComposeOptions& pm_opts,
                          const ComposeOptions& arity_opts);

// Naturality of ε and δ plus the comonad laws, decoded elementwise: counit
// on both sides and coassociativity wherever composites are defined.
Report check_comonad(const Comonad& e);

// The comonoid carried by a comonad. Composites outside the enumerated range
// are -1 and leave `complete` false; otherwise `category` is the decoded
// category, `morphism[I][a]` the morphism of the flattened element a of E[I],
// and `cofunctor` the cofunctor to d in FinCategory::out order.
struct ComonoidDecode {
  Comonoid comonoid;
  bool complete = true;
  CategoryPtr category;
  std::vector<std::vector<int>> morphism;
  PolyMorphism cofunctor;
};
ComonoidDecode comonad_to_comonoid(const Comonad& e);

// Left E-comodule structure on p : c↛d, as a map p -> E ◁ p.
struct Comodule {
  BicomodulePtr p;
  MapInto coaction;
};

// (E, d)-bicomodule from a left E-comodule; left category is the decoded
// category of E (object = E-operation). Only decoded.category and
// decoded.morphism are used, so a partially composed decode works too.
Bicomodule comodule_transfer(const Comonad& e, const ComonoidDecode& decoded, const Comodule& m);
// The inverse: a (decoded, d)-bicomodule back to a c↛d bicomodule with its
// coaction.
Comodule comodule_untransfer(const Comonad& e, const ComonoidDecode& decoded, const Bicomodule& b);

// Coaction laws: counit and coassociativity, elementwise.
Report check_comodule(const Comonad& e, const Comodule& m);

}  // namespace polycat
