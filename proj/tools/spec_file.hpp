#pragma once

#include <map>
#include <string>

#include "json.hpp"
#include "polycat/algem.hpp"
#include "polycat/monad.hpp"

namespace polycat::cli {

using json = nlohmann::json;

// Named declarations read from a JSON spec file. Sections:
//   categories, copresheaves, bicomodules, monads, algebras, morphisms, wreaths.
// Entries are either {"builtin": ...} with parameters or explicit data; see
// README for the shapes. References are by name and resolve across sections.
class SpecFile {
 public:
  SpecFile() = default;
  explicit SpecFile(json doc, int bound) : doc_(std::move(doc)), bound_(bound) {}

  static SpecFile load(const std::string& path, int bound);

  int bound() const { return bound_; }
  const json& doc() const { return doc_; }

  // InputError on unknown names and malformed entries.
  CategoryPtr category(const std::string& name) const;
  Copresheaf copresheaf(const std::string& name) const;
  BicomodulePtr bicomodule(const std::string& name) const;
  MonadPtr monad(const std::string& name) const;
  Algebra algebra(const std::string& name) const;
  MorphismPtr morphism(const std::string& name) const;
  Wreath wreath(const std::string& name) const;

  std::vector<std::string> names(const std::string& section) const;

 private:
  const json& entry(const std::string& section, const std::string& name) const;

  json doc_ = json::object();
  int bound_ = 0;
  mutable std::map<std::string, CategoryPtr> categories_;
  mutable std::map<std::string, MonadPtr> monads_;
};

// Inline data (the "native" shapes shared with export).
CategoryPtr category_from_json(const json& j);
Copresheaf copresheaf_from_json(const json& j, const CategoryPtr& base);
Bicomodule bicomodule_from_json(const json& j, const CategoryPtr& left, const CategoryPtr& right);

json category_to_json(const FinCategory& c);
json copresheaf_to_json(const Copresheaf& x);  // elements and action only
json bicomodule_to_json(const Bicomodule& p);  // operations, arities, left action

// Names "path", "list", "smc", ... of monads that need no parameters.
MonadPtr builtin_monad(const std::string& name);
CategoryPtr builtin_category(const std::string& name);

}  // namespace polycat::cli
