#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polycat/fincat.hpp"
#include "polycat/poly.hpp"

namespace polycat {

// ------------------------------------------------------------------ comonoids

// A polynomial comonoid. δ lands in a sparse composite holding only the
// positions δ actually reaches.
struct Comonoid {
  Polynomial carrier;
  PolyMorphism counit;          // carrier -> y
  PolyComposite square;         // the used part of carrier ◁ carrier
  PolyMorphism comultiplication;  // carrier -> square.poly
};

Comonoid comonoid_from_category(const FinCategory& c);
Report check_comonoid(const Comonoid& c);
// Throws LawViolation when the comonoid laws fail.
FinCategory category_from_comonoid(const Comonoid& c);

// A cofunctor c -> d: objects forward, morphisms lifted backward. Directions
// of a position follow the order of FinCategory::out.
Report check_cofunctor(const PolyMorphism& phi, const FinCategory& c, const FinCategory& d);

// ---------------------------------------------------------------- bicomodules

struct Operation {
  std::string name;
  int object = 0;  // object of the left category
  int degree = 0;
  Copresheaf arity;  // on the right category
};

// f·I together with the restriction arity[f·I] -> arity[I].
struct LeftAction {
  int target = -1;
  CopresheafMap restriction;
};

class Bicomodule;
using BicomodulePtr = std::shared_ptr<const Bicomodule>;

// Bookkeeping for composites p ◁ q: operation k is (outer[k], inner[k]) and
// its arity is the colimit recorded in arity_colimit[k].
struct CompositeParts {
  BicomodulePtr first;
  BicomodulePtr second;
  std::vector<int> outer;
  std::vector<CopresheafMap> inner;
  std::vector<Colimit> arity_colimit;
};

// A c↛d bicomodule in familial form: operations over c-objects with
// d-copresheaf arities and a left c-action.
class Bicomodule {
 public:
  CategoryPtr left;
  CategoryPtr right;
  std::vector<Operation> ops;
  std::vector<std::vector<LeftAction>> action;  // [op][c-morphism], only for morphisms out of the op's object
  Status status;
  std::shared_ptr<CompositeParts> parts;  // set for composites

  Bicomodule() = default;
  Bicomodule(CategoryPtr l, CategoryPtr r) : left(std::move(l)), right(std::move(r)) {}

  int size() const { return static_cast<int>(ops.size()); }
  int add_op(Operation op);
  std::optional<int> find(std::string_view name) const;
  int require(std::string_view name) const;  // BoundExhausted when missing
  const LeftAction& act(int op, int f) const { return action[op][f]; }
  void set_action(int op, int f, int target, CopresheafMap restriction);
  // Identities act trivially; call once all operations are present.
  void fill_identity_actions();
  const Copresheaf& arity(int op) const { return ops[op].arity; }

 private:
  std::map<std::string, int, std::less<>> index_;
};

// The operations p(1) as a copresheaf on the left category, with the
// translation between global operation indices and per-object indices.
struct OperationsView {
  Copresheaf ops;
  std::vector<int> local;                 // [op] -> index within its object
  std::vector<std::vector<int>> global;   // [object][local] -> op
};
OperationsView operations_view(const Bicomodule& p);

// Position of element x over object o in flatten() order; this is also its
// object index in category_of_elements.
int flat_index(const Copresheaf& x, int o, int e);
ElementRef unflatten(const Copresheaf& x, int k);

Bicomodule identity_bicomodule(const CategoryPtr& c);
// X : c-Set as the bicomodule c↛0 with empty arities.
Bicomodule copresheaf_as_bicomodule(const Copresheaf& x);
// Inverse of the above; NonEmptyDirections if some arity has elements.
Copresheaf bicomodule_as_copresheaf(const Bicomodule& p);

struct ComposeOptions {
  int bound = -1;       // cap on deg I + Σ deg J(z); -1: none
  int inner_cap = -1;   // cap on each deg J(z); -1: none
  std::vector<int> seeds;  // restrict outer operations; empty: all
};

Bicomodule compose_bicomodules(const BicomodulePtr& p, const BicomodulePtr& q, const ComposeOptions& opts);
Bicomodule compose_bicomodules(const Bicomodule& p, const Bicomodule& q, const ComposeOptions& opts);

// Only the requested operations (I, J) of p ◁ q, J listed per flattened
// element of p[I], closed under the left action. Marked truncated.
Bicomodule compose_sparse(const BicomodulePtr& p, const BicomodulePtr& q,
                          const std::vector<std::pair<int, std::vector<int>>>& requests);

// The same composite computed as an equalizer of plain polynomial data: all
// position assignments filtered by the two coaction maps, directions
// coequalized. Meant only as a cross-check.
Bicomodule compose_bicomodules_equalizer_oracle(const Bicomodule& p, const Bicomodule& q, int bound);

Report check_bicomodule(const Bicomodule& p);

// γ : p -> q between c↛d bicomodules: operations forward, arities backward.
struct BicomoduleMap {
  std::vector<int> on_ops;
  std::vector<CopresheafMap> on_arities;  // q[γI] -> p[I]

  friend bool operator==(const BicomoduleMap&, const BicomoduleMap&) = default;
};

// Square condition with identity frames.
Report check_square(const BicomoduleMap& g, const Bicomodule& p, const Bicomodule& q);
BicomoduleMap identity_map(const Bicomodule& p);
// first, then second
BicomoduleMap compose(const BicomoduleMap& first, const BicomoduleMap& second);
bool is_cartesian(const BicomoduleMap& g, const Bicomodule& p, const Bicomodule& q);

// p ◁ γ : p◁q -> p◁q'
BicomoduleMap whisker_left(const Bicomodule& pq, const BicomoduleMap& g, const Bicomodule& pq2);
// γ ◁ q : p◁q -> p'◁q
BicomoduleMap whisker_right(const Bicomodule& pq, const BicomoduleMap& g, const Bicomodule& p2q);
// (p◁q)◁r -> p◁(q◁r) and back
BicomoduleMap associator(const Bicomodule& pq_r, const Bicomodule& p_qr);
BicomoduleMap associator_inverse(const Bicomodule& p_qr, const Bicomodule& pq_r);
// id◁p -> p, p -> id◁p, p◁id -> p, p -> p◁id
BicomoduleMap left_unitor(const Bicomodule& id_p);
BicomoduleMap left_unitor_inverse(const Bicomodule& p, const Bicomodule& id_p);
BicomoduleMap right_unitor(const Bicomodule& p_id);
BicomoduleMap right_unitor_inverse(const Bicomodule& p, const Bicomodule& p_id);

// An isomorphism a -> b: operation bijection plus arity isomorphisms making
// every restriction square commute.
std::optional<BicomoduleMap> find_isomorphism(const Bicomodule& a, const Bicomodule& b);

// All maps p -> q (identity frames), by propagation and backtracking.
EnumResult<BicomoduleMap> enumerate_bicomodule_maps(const Bicomodule& p, const Bicomodule& q, std::size_t limit = 0);

// Canonical name of the composite operation (I, J) where J lists the images of
// the flattened elements of p[I].
std::string composite_name(const std::string& outer, const std::vector<std::string>& inner);

// Inner assignment J of composite op k, listed per flattened element of p[I].
std::vector<int> composite_inner(const Bicomodule& pq, int k);

}  // namespace polycat
