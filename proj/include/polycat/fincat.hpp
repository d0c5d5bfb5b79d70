#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polycat/error.hpp"

namespace polycat {

// A finite category with an explicit composition table. Objects and
// morphisms are addressed by dense indices; names are kept for output.
class FinCategory {
 public:
  struct Morphism {
    std::string name;
    int src = -1;
    int tgt = -1;
  };

  FinCategory() = default;

  // Adds an object together with its identity morphism "id_<name>".
  int add_object(std::string name);
  // Adds a morphism; composites with identities are filled in.
  int add_morphism(std::string name, int src, int tgt);
  // Records g∘f (f first). Overwrites any earlier entry.
  void set_composite(int f, int g, int gf);

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms_.size()); }
  const std::string& object_name(int o) const { return objects_[o]; }
  const Morphism& morphism(int f) const { return morphisms_[f]; }
  int src(int f) const { return morphisms_[f].src; }
  int tgt(int f) const { return morphisms_[f].tgt; }
  int identity(int o) const { return identity_[o]; }
  bool is_identity(int f) const { return identity_[morphisms_[f].src] == f; }
  // g∘f, or -1 when unset.
  int compose(int f, int g) const;
  const std::vector<int>& out(int o) const { return out_[o]; }
  const std::vector<int>& in(int o) const { return in_[o]; }
  std::vector<int> hom(int a, int b) const;

  std::optional<int> find_object(std::string_view name) const;
  std::optional<int> find_morphism(std::string_view name) const;

  // Fills every composite g∘f of composable pairs by following the supplied
  // rule; used by builders that know composition semantically.
  void fill_composites(const std::function<int(int f, int g)>& rule);

  FinCategory opposite() const;

 private:
  std::vector<std::string> objects_;
  std::vector<int> identity_;
  std::vector<Morphism> morphisms_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::map<std::pair<int, int>, int> composite_;
  std::map<std::string, int, std::less<>> object_index_;
  std::map<std::string, int, std::less<>> morphism_index_;
};

using CategoryPtr = std::shared_ptr<const FinCategory>;

Report check_category(const FinCategory& c);

struct Functor {
  CategoryPtr dom;
  CategoryPtr cod;
  std::vector<int> on_objects;
  std::vector<int> on_morphisms;
};

Report check_functor(const Functor& f);

// A functor base -> FinSet.
struct Copresheaf {
  CategoryPtr base;
  std::vector<std::vector<std::string>> elements;  // per object
  std::vector<std::vector<int>> action;            // per morphism, elements[src] -> elements[tgt]

  Copresheaf() = default;
  explicit Copresheaf(CategoryPtr b);

  int size(int o) const { return static_cast<int>(elements[o].size()); }
  int total_size() const;
  int add_element(int o, std::string name);
  void set_action(int f, int x, int y) { action[f][x] = y; }
  int apply(int f, int x) const { return action[f][x]; }
  // Identity morphisms act trivially; call after adding elements.
  void fill_identities();
  std::optional<int> find_element(int o, std::string_view name) const;
};

Report check_copresheaf(const Copresheaf& x);

struct CopresheafMap {
  std::vector<std::vector<int>> components;  // per object

  int operator()(int o, int x) const { return components[o][x]; }
  friend bool operator==(const CopresheafMap&, const CopresheafMap&) = default;
};

Report check_copresheaf_map(const CopresheafMap& m, const Copresheaf& dom, const Copresheaf& cod);
CopresheafMap identity_map(const Copresheaf& x);
// (second ∘ first)
CopresheafMap compose(const CopresheafMap& first, const CopresheafMap& second);
bool is_bijective(const CopresheafMap& m, const Copresheaf& dom, const Copresheaf& cod);
CopresheafMap inverse(const CopresheafMap& m, const Copresheaf& dom, const Copresheaf& cod);

// Elements of a copresheaf flattened in (object, index) order.
struct ElementRef {
  int object;
  int index;
  friend auto operator<=>(const ElementRef&, const ElementRef&) = default;
};
std::vector<ElementRef> flatten(const Copresheaf& x);

// Category of elements of P with its projection to P's base.
struct CategoryOfElements {
  CategoryPtr category;
  Functor projection;
  std::vector<ElementRef> element_of_object;
  std::vector<std::vector<int>> object_of_element;  // [base object][element] -> object
  // Object of el(P) as ElementRef, morphism index for (base morphism f, element x of src f).
  int morphism_for(int f, int x) const { return morphism_index_.at({f, x}); }

  std::map<std::pair<int, int>, int> morphism_index_;
};

CategoryOfElements category_of_elements(const Copresheaf& p);

// A diagram indexed by a category of elements. Contravariant diagrams send a
// shape morphism z -> z' to a map values[z'] -> values[z] (colimits);
// covariant ones send it to values[z] -> values[z'] (limits).
struct ElementsDiagram {
  enum class Variance { Contravariant, Covariant };
  CategoryPtr shape;
  CategoryPtr base;  // category the values live over
  Variance variance = Variance::Contravariant;
  std::vector<Copresheaf> values;
  std::vector<CopresheafMap> transitions;
};

struct Colimit {
  Copresheaf object;
  std::vector<CopresheafMap> injections;  // per shape object
  // Representative (shape object, element) for each class, per base object.
  std::vector<std::vector<std::pair<int, int>>> representative;
};

// Quotient of the disjoint union by the transition identifications; class
// representatives are the least (shape object, element) pair.
Colimit colimit_over_elements(const ElementsDiagram& d);

struct Limit {
  std::vector<std::vector<int>> families;  // each picks one element per shape object
};

// Compatible families of a covariant set-valued diagram (values over a
// one-object base).
Limit limit_over_elements(const ElementsDiagram& d);

CategoryPtr terminal_category();
// A copresheaf on the one-object terminal category: a finite set.
Copresheaf finite_set(int n, const std::string& prefix = "x");

// Result of an enumeration that may be cut off.
template <class T>
struct EnumResult {
  std::vector<T> items;
  Status status;
};

struct MapSearch {
  bool injective = false;
  std::size_t limit = 0;  // 0: unlimited
  // Optional pruning: total weight of the chosen images must stay <= budget.
  std::function<int(int object, int y)> weight;
  int budget = -1;
  // Optional filter on admissible images.
  std::function<bool(int object, int y)> admissible;
  // Optional partial assignment fixed in advance ([object][x] = y or -1).
  std::vector<std::vector<int>> fixed;
};

// Calls visit for every natural map X -> Y satisfying the search options;
// stops early when visit returns false. Returns the number visited.
std::size_t for_each_copresheaf_map(const Copresheaf& x, const Copresheaf& y, const MapSearch& opts,
                                    const std::function<bool(const CopresheafMap&)>& visit);

EnumResult<CopresheafMap> enumerate_copresheaf_maps(const Copresheaf& x, const Copresheaf& y,
                                                     const MapSearch& opts = {});
std::size_t count_copresheaf_maps(const Copresheaf& x, const Copresheaf& y);

std::optional<CopresheafMap> find_isomorphism(const Copresheaf& a, const Copresheaf& b);
std::optional<Functor> find_isomorphism(const CategoryPtr& a, const CategoryPtr& b);

// Relabels elements of x by per-object permutations (perm[o][old] = new).
Copresheaf relabel(const Copresheaf& x, const std::vector<std::vector<int>>& perm);

}  // namespace polycat
