#include "render.hpp"

#include <algorithm>

namespace polycat::cli {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

void dot_category(std::ostream& os, const FinCategory& c, const std::string& name) {
  os << "digraph " << quote(name) << " {\n";
  for (int o = 0; o < c.num_objects(); ++o) os << "  " << quote(c.object_name(o)) << ";\n";
  for (int f = 0; f < c.num_morphisms(); ++f)
    if (!c.is_identity(f))
      os << "  " << quote(c.object_name(c.src(f))) << " -> " << quote(c.object_name(c.tgt(f))) << " [label=" << quote(c.morphism(f).name)
         << "];\n";
  os << "}\n";
}

void dot_copresheaf(std::ostream& os, const Copresheaf& x, const std::string& name) {
  const auto& c = *x.base;
  auto node = [&](int o, int e) { return quote(c.object_name(o) + ":" + x.elements[o][e]); };
  os << "digraph " << quote(name) << " {\n";
  for (int o = 0; o < c.num_objects(); ++o)
    for (int e = 0; e < x.size(o); ++e) os << "  " << node(o, e) << ";\n";
  for (int f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f)) continue;
    for (int e = 0; e < x.size(c.src(f)); ++e)
      os << "  " << node(c.src(f), e) << " -> " << node(c.tgt(f), x.apply(f, e)) << " [label=" << quote(c.morphism(f).name) << "];\n";
  }
  os << "}\n";
}

void dot_bicomodule(std::ostream& os, const Bicomodule& p, const std::string& name) {
  const auto& c = *p.left;
  os << "digraph " << quote(name) << " {\n";
  for (const auto& op : p.ops)
    os << "  " << quote(op.name) << " [label=" << quote(op.name + " @" + c.object_name(op.object) + " deg " + std::to_string(op.degree))
       << "];\n";
  for (int k = 0; k < p.size(); ++k)
    for (int f : c.out(p.ops[k].object))
      if (!c.is_identity(f))
        os << "  " << quote(p.ops[k].name) << " -> " << quote(p.ops[p.act(k, f).target].name) << " [label=" << quote(c.morphism(f).name)
           << "];\n";
  os << "}\n";
}

void table(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    os << line << "\n";
  }
}

void op_table(std::ostream& os, const Bicomodule& p) {
  const auto& d = *p.right;
  std::vector<std::vector<std::string>> rows{{"op", "object", "degree"}};
  for (int o = 0; o < d.num_objects(); ++o) rows[0].push_back("|" + d.object_name(o) + "|");
  for (const auto& op : p.ops) {
    std::vector<std::string> r{op.name, p.left->object_name(op.object), std::to_string(op.degree)};
    for (int o = 0; o < d.num_objects(); ++o) r.push_back(std::to_string(op.arity.size(o)));
    rows.push_back(std::move(r));
  }
  table(os, rows);
}

}  // namespace polycat::cli
