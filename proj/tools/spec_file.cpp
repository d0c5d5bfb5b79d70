#include "spec_file.hpp"

#include <fstream>

#include "polycat/coclosure.hpp"
#include "polycat/smc.hpp"
#include "polycat/standard.hpp"

namespace polycat::cli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

template <class T>
T get(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    bad(where + ": \"" + key + "\" has the wrong type");
  }
}

int object_index(const FinCategory& c, const std::string& name, const std::string& where) {
  auto o = c.find_object(name);
  if (!o) bad(where + ": unknown object " + name);
  return *o;
}

int morphism_index(const FinCategory& c, const std::string& name, const std::string& where) {
  auto f = c.find_morphism(name);
  if (!f) bad(where + ": unknown morphism " + name);
  return *f;
}

int element_index(const Copresheaf& x, int o, const std::string& name, const std::string& where) {
  auto e = x.find_element(o, name);
  if (!e) bad(where + ": unknown element " + name + " over " + x.base->object_name(o));
  return *e;
}

void require_ok(const Report& r, const std::string& what) {
  if (!r.ok()) throw LawViolation(what + ": " + r.violations.front());
}

}  // namespace

// ------------------------------------------------------------ inline data

CategoryPtr category_from_json(const json& j) {
  const std::string where = "category";
  auto c = std::make_shared<FinCategory>();
  for (const auto& o : get<std::vector<std::string>>(j, "objects", where)) c->add_object(o);
  if (j.contains("morphisms"))
    for (const auto& m : j.at("morphisms")) {
      const auto name = get<std::string>(m, "name", where);
      c->add_morphism(name, object_index(*c, get<std::string>(m, "src", where), where),
                      object_index(*c, get<std::string>(m, "tgt", where), where));
    }
  if (j.contains("composites"))
    for (const auto& t : j.at("composites")) {
      const auto names = t.get<std::vector<std::string>>();
      if (names.size() != 3) bad(where + ": composites are [first, then, result]");
      c->set_composite(morphism_index(*c, names[0], where), morphism_index(*c, names[1], where),
                       morphism_index(*c, names[2], where));
    }
  require_ok(check_category(*c), "category");
  return c;
}

json category_to_json(const FinCategory& c) {
  json j;
  j["objects"] = json::array();
  for (int o = 0; o < c.num_objects(); ++o) j["objects"].push_back(c.object_name(o));
  j["morphisms"] = json::array();
  j["composites"] = json::array();
  for (int f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f)) continue;
    j["morphisms"].push_back({{"name", c.morphism(f).name},
                              {"src", c.object_name(c.src(f))},
                              {"tgt", c.object_name(c.tgt(f))}});
  }
  for (int f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f)) continue;
    for (int g : c.out(c.tgt(f))) {
      if (c.is_identity(g)) continue;
      const int gf = c.compose(f, g);
      if (gf >= 0) j["composites"].push_back({c.morphism(f).name, c.morphism(g).name, c.morphism(gf).name});
    }
  }
  return j;
}

Copresheaf copresheaf_from_json(const json& j, const CategoryPtr& base) {
  const std::string where = "copresheaf";
  Copresheaf x(base);
  const auto& c = *base;
  const auto elements = get<std::map<std::string, std::vector<std::string>>>(j, "elements", where);
  for (const auto& [o, names] : elements) {
    const int oi = object_index(c, o, where);
    for (const auto& n : names) x.add_element(oi, n);
  }
  x.fill_identities();
  for (int f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f)) continue;
    const auto& name = c.morphism(f).name;
    const auto action = j.contains("action") && j.at("action").contains(name)
                            ? j.at("action").at(name).get<std::map<std::string, std::string>>()
                            : std::map<std::string, std::string>{};
    for (int e = 0; e < x.size(c.src(f)); ++e) {
      auto it = action.find(x.elements[c.src(f)][e]);
      if (it == action.end()) bad(where + ": " + name + " is not given on " + x.elements[c.src(f)][e]);
      x.set_action(f, e, element_index(x, c.tgt(f), it->second, where));
    }
  }
  require_ok(check_copresheaf(x), "copresheaf");
  return x;
}

json copresheaf_to_json(const Copresheaf& x) {
  const auto& c = *x.base;
  json j;
  j["elements"] = json::object();
  for (int o = 0; o < c.num_objects(); ++o) j["elements"][c.object_name(o)] = x.elements[o];
  j["action"] = json::object();
  for (int f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f) || x.size(c.src(f)) == 0) continue;
    json a = json::object();
    for (int e = 0; e < x.size(c.src(f)); ++e) a[x.elements[c.src(f)][e]] = x.elements[c.tgt(f)][x.apply(f, e)];
    j["action"][c.morphism(f).name] = a;
  }
  return j;
}

Bicomodule bicomodule_from_json(const json& j, const CategoryPtr& left, const CategoryPtr& right) {
  const std::string where = "bicomodule";
  Bicomodule p(left, right);
  const auto& ops = j.at("ops");
  for (const auto& op : ops)
    p.add_op({get<std::string>(op, "name", where), object_index(*left, get<std::string>(op, "object", where), where),
              get<int>(op, "degree", where), copresheaf_from_json(op.at("arity"), right)});
  for (int k = 0; k < p.size(); ++k) {
    const auto& op = ops[k];
    if (!op.contains("action")) continue;
    for (const auto& [f, a] : op.at("action").items()) {
      const int fi = morphism_index(*left, f, where);
      const auto target = p.find(get<std::string>(a, "target", where));
      if (!target) bad(where + ": unknown operation in the action of " + p.ops[k].name);
      CopresheafMap r;
      for (int o = 0; o < right->num_objects(); ++o) {
        const auto& name = right->object_name(o);
        r.components.push_back(a.at("restriction").contains(name) ? a.at("restriction").at(name).get<std::vector<int>>()
                                                                   : std::vector<int>{});
      }
      p.set_action(k, fi, *target, std::move(r));
    }
  }
  p.fill_identity_actions();
  p.status = Status{};
  require_ok(check_bicomodule(p), "bicomodule");
  return p;
}

json bicomodule_to_json(const Bicomodule& p) {
  json j;
  j["left"] = category_to_json(*p.left);
  j["right"] = category_to_json(*p.right);
  j["status"] = p.status.str();
  j["ops"] = json::array();
  for (int k = 0; k < p.size(); ++k) {
    const auto& op = p.ops[k];
    json o{{"name", op.name}, {"object", p.left->object_name(op.object)}, {"degree", op.degree}, {"arity", copresheaf_to_json(op.arity)}};
    o["action"] = json::object();
    for (int f : p.left->out(op.object)) {
      if (p.left->is_identity(f)) continue;
      const auto& la = p.act(k, f);
      json r = json::object();
      for (int d = 0; d < p.right->num_objects(); ++d)
        if (!la.restriction.components[d].empty()) r[p.right->object_name(d)] = la.restriction.components[d];
      o["action"][p.left->morphism(f).name] = {{"target", p.ops[la.target].name}, {"restriction", r}};
    }
    j["ops"].push_back(o);
  }
  return j;
}

// ------------------------------------------------------------ builtins

CategoryPtr builtin_category(const std::string& name) {
  if (name == "terminal") return terminal_category();
  if (name == "g" || name == "graph") return graph_indexer();
  if (name == "commutative_square") return commutative_square();
  if (name == "empty") return empty_category();
  return nullptr;
}

MonadPtr builtin_monad(const std::string& name) {
  if (name == "path") return monad_path();
  if (name == "list") return monad_list();
  if (name == "smc") return monad_smc();
  if (name == "ass_z2") return monad_from_operad(operad_ass_z2());
  return nullptr;
}

// ------------------------------------------------------------ SpecFile

SpecFile SpecFile::load(const std::string& path, int bound) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return SpecFile(json::parse(in), bound);
  } catch (const json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

const json& SpecFile::entry(const std::string& section, const std::string& name) const {
  if (!doc_.contains(section) || !doc_.at(section).contains(name)) bad("unresolved reference to " + section + " \"" + name + "\"");
  return doc_.at(section).at(name);
}

std::vector<std::string> SpecFile::names(const std::string& section) const {
  std::vector<std::string> out;
  if (doc_.contains(section))
    for (const auto& [k, v] : doc_.at(section).items()) out.push_back(k);
  return out;
}

namespace {

// A reference is a name or an inline object.
CategoryPtr category_ref(const SpecFile& s, const json& j) {
  return j.is_string() ? s.category(j.get<std::string>()) : category_from_json(j);
}

}  // namespace

CategoryPtr SpecFile::category(const std::string& name) const {
  if (auto it = categories_.find(name); it != categories_.end()) return it->second;
  CategoryPtr c;
  const bool declared = doc_.contains("categories") && doc_.at("categories").contains(name);
  if (!declared) {
    c = builtin_category(name);
    if (!c) bad("unresolved reference to categories \"" + name + "\"");
  } else {
    const auto& j = entry("categories", name);
    const std::string where = "category " + name;
    if (j.contains("builtin")) {
      const auto b = get<std::string>(j, "builtin", where);
      if (b == "ordinal") c = ordinal(get<int>(j, "n", where));
      else if (b == "cyclic_group") c = cyclic_group(get<int>(j, "n", where));
      else if (b == "random_poset")
        c = random_poset(get<int>(j, "n", where), get<double>(j, "density", where), get<unsigned>(j, "seed", where));
      else if (b == "monoid")
        c = monoid_category(get<std::vector<std::vector<int>>>(j, "table", where),
                            get<std::vector<std::string>>(j, "names", where));
      else if (!(c = builtin_category(b))) bad(where + ": unknown builtin " + b);
    } else {
      c = category_from_json(j);
    }
  }
  categories_[name] = c;
  return c;
}

Copresheaf SpecFile::copresheaf(const std::string& name) const {
  const auto& j = entry("copresheaves", name);
  const std::string where = "copresheaf " + name;
  if (!j.contains("builtin")) return copresheaf_from_json(j, category_ref(*this, j.at("category")));
  const auto b = get<std::string>(j, "builtin", where);
  if (b == "vec") return vec(get<int>(j, "n", where));
  if (b == "ul") return ul(get<int>(j, "n", where));
  if (b == "strands") return strands(get<std::vector<int>>(j, "lengths", where));
  if (b == "finite_set") return finite_set(get<int>(j, "n", where));
  if (b == "graph") {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : get<std::vector<std::vector<int>>>(j, "edges", where)) {
      if (e.size() != 2) bad(where + ": edges are [source, target]");
      edges.emplace_back(e[0], e[1]);
    }
    return make_graph(get<int>(j, "vertices", where), edges);
  }
  const auto c = category_ref(*this, j.at("category"));
  if (b == "representable") return representable(c, object_index(*c, get<std::string>(j, "object", where), where));
  if (b == "terminal") return terminal_copresheaf(c);
  if (b == "empty") return empty_copresheaf(c);
  bad(where + ": unknown builtin " + b);
}

BicomodulePtr SpecFile::bicomodule(const std::string& name) const {
  const bool declared = doc_.contains("bicomodules") && doc_.at("bicomodules").contains(name);
  if (!declared) {
    // a monad or morphism name stands for its carrier
    if (doc_.contains("morphisms") && doc_.at("morphisms").contains(name)) return morphism(name)->carrier(bound_);
    return monad(name)->carrier(bound_);
  }
  const auto& j = entry("bicomodules", name);
  const std::string where = "bicomodule " + name;
  if (j.contains("carrier")) return bicomodule(get<std::string>(j, "carrier", where));
  if (j.contains("compose")) {
    const auto parts = get<std::vector<std::string>>(j, "compose", where);
    if (parts.size() != 2) bad(where + ": compose takes two names");
    return std::make_shared<const Bicomodule>(compose_bicomodules(bicomodule(parts[0]), bicomodule(parts[1]), {bound_, -1, {}}));
  }
  if (j.contains("coclosure")) {
    const auto parts = get<std::vector<std::string>>(j, "coclosure", where);
    if (parts.size() != 2) bad(where + ": coclosure takes two names");
    return coclosure(bicomodule(parts[0]), bicomodule(parts[1]), {bound_, -1, {}}).bicomodule;
  }
  return std::make_shared<const Bicomodule>(
      bicomodule_from_json(j, category_ref(*this, j.at("left")), category_ref(*this, j.at("right"))));
}

MonadPtr SpecFile::monad(const std::string& name) const {
  if (auto it = monads_.find(name); it != monads_.end()) return it->second;
  MonadPtr m;
  const bool declared = doc_.contains("monads") && doc_.at("monads").contains(name);
  if (!declared) {
    if (!(m = builtin_monad(name))) bad("unresolved reference to monads \"" + name + "\"");
  } else {
    const auto& j = entry("monads", name);
    const std::string where = "monad " + name;
    const auto b = get<std::string>(j, "builtin", where);
    if (b == "identity") m = monad_identity(category_ref(*this, j.at("category")));
    else if (b == "wreath") m = wreath_composite(wreath(get<std::string>(j, "wreath", where)));
    else if (b == "operad") {
      const auto o = get<std::string>(j, "operad", where);
      if (o == "ass_z2") m = monad_from_operad(operad_ass_z2());
      else if (o == "terminal") m = monad_from_operad(operad_terminal());
      else bad(where + ": unknown operad " + o);
    } else if (b == "smc_mutant") {
      const auto mu = get<std::string>(j, "mutation", where);
      if (mu == "reverse_chain") m = monad_smc_mutant(SmcMutation::ReverseChain);
      else if (mu == "unpermuted_sum") m = monad_smc_mutant(SmcMutation::UnpermutedSum);
      else bad(where + ": unknown mutation " + mu);
    } else if (!(m = builtin_monad(b))) {
      bad(where + ": unknown builtin " + b);
    }
  }
  monads_[name] = m;
  return m;
}

Algebra SpecFile::algebra(const std::string& name) const {
  const auto& j = entry("algebras", name);
  const std::string where = "algebra " + name;
  if (j.contains("category")) return category_algebra(*category_ref(*this, j.at("category")));
  if (j.contains("monoid")) return monoid_algebra(get<std::vector<std::vector<int>>>(j, "monoid", where));
  if (j.contains("free")) {
    const auto& f = j.at("free");
    return free_algebra(monad(get<std::string>(f, "monad", where)), copresheaf(get<std::string>(f, "copresheaf", where)), bound_);
  }
  if (j.contains("trivial")) {
    // a copresheaf as an algebra of the identity monad on its base
    auto x = copresheaf(get<std::string>(j, "trivial", where));
    return {monad_identity(x.base), x, [](const Bicomodule&, int, const std::vector<int>& h) { return h.at(0); }, {}, {}};
  }
  if (j.contains("induced")) {
    const auto& i = j.at("induced");
    return induced_algebra_functor(morphism(get<std::string>(i, "morphism", where)), algebra(get<std::string>(i, "algebra", where)),
                                   bound_);
  }
  bad(where + ": expected category, monoid, free, trivial or induced");
}

MorphismPtr SpecFile::morphism(const std::string& name) const {
  const bool declared = doc_.contains("morphisms") && doc_.at("morphisms").contains(name);
  if (!declared) {
    if (name == "sm") return builtin_sm().endo;
    bad("unresolved reference to morphisms \"" + name + "\"");
  }
  const auto& j = entry("morphisms", name);
  const std::string where = "morphism " + name;
  if (j.contains("compose")) {
    const auto parts = get<std::vector<std::string>>(j, "compose", where);
    if (parts.size() != 2) bad(where + ": compose takes two names");
    return compose_morphisms(morphism(parts[0]), morphism(parts[1]));
  }
  const auto b = get<std::string>(j, "builtin", where);
  if (b == "sm") return builtin_sm().endo;
  if (b == "sm_constant") return sm_constant_cocomposition();
  if (b == "el") return builtin_el(category_ref(*this, j.at("category")));
  if (b == "identity") return identity_morphism(monad(get<std::string>(j, "monad", where)));
  bad(where + ": unknown builtin " + b);
}

Wreath SpecFile::wreath(const std::string& name) const {
  const bool declared = doc_.contains("wreaths") && doc_.at("wreaths").contains(name);
  const auto b = declared ? get<std::string>(entry("wreaths", name), "builtin", "wreath " + name) : name;
  if (b == "sm") return builtin_sm();
  bad(declared ? "wreath " + name + ": unknown builtin " + b : "unresolved reference to wreaths \"" + name + "\"");
}

}  // namespace polycat::cli
