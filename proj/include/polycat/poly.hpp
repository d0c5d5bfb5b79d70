#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polycat/error.hpp"
#include "polycat/fincat.hpp"

namespace polycat {

struct Position {
  std::string name;
  int degree = 0;
  std::vector<std::string> directions;
};

// A polynomial enumerated up to some degree bound.
class Polynomial {
 public:
  Status status;

  int add(Position p);
  int size() const { return static_cast<int>(positions_.size()); }
  const Position& operator[](int i) const { return positions_[i]; }
  int num_directions(int i) const { return static_cast<int>(positions_[i].directions.size()); }
  std::optional<int> find(std::string_view name) const;

 private:
  std::vector<Position> positions_;
  std::map<std::string, int, std::less<>> index_;
};

// A graded family: generate(b) lists every position of degree <= b.
struct GradedPolynomial {
  std::string name;
  std::function<std::vector<Position>(int bound)> generate;
  int max_degree = -1;  // >= 0 when the family is finite

  Polynomial at(int bound) const;
};

Polynomial y_poly();
// One position per entry, with that many directions.
Polynomial poly_from_counts(const std::vector<int>& counts, const std::string& prefix = "p");

// p ◁ q with its bookkeeping: the position (I, J) sits at index k with
// outer[k] = I, inner[k][z] = J(z), and direction (z, w) at offset[k][z] + w.
struct PolyComposite {
  Polynomial poly;
  std::vector<int> outer;
  std::vector<std::vector<int>> inner;
  std::vector<std::vector<int>> offset;
};

PolyComposite compose_poly(const Polynomial& p, const Polynomial& q, int bound);

// φ₁ on positions; φ♯_I sends directions of φ₁(I) back to directions of I.
struct PolyMorphism {
  std::vector<int> on_positions;
  std::vector<std::vector<int>> on_directions;

  friend bool operator==(const PolyMorphism&, const PolyMorphism&) = default;
};

Report check_poly_morphism(const PolyMorphism& f, const Polynomial& dom, const Polynomial& cod);
PolyMorphism identity_morphism(const Polynomial& p);
// first, then second
PolyMorphism compose(const PolyMorphism& first, const PolyMorphism& second);

struct MorphismKind {
  bool cartesian = false;
  bool vertical = false;
  Status status;
};

MorphismKind classify_morphism(const PolyMorphism& f, const Polynomial& dom, const Polynomial& cod);

// Σ_I S^{p[I]} for |S| = n; elements are named I(s_1,...,s_k).
EnumResult<std::string> evaluate(const Polynomial& p, int n);

std::optional<PolyMorphism> find_isomorphism(const Polynomial& a, const Polynomial& b);

}  // namespace polycat
