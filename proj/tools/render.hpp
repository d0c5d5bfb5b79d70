#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "polycat/comod.hpp"

namespace polycat::cli {

// Graphviz digraphs. Identities are omitted.
void dot_category(std::ostream& os, const FinCategory& c, const std::string& name);
void dot_copresheaf(std::ostream& os, const Copresheaf& x, const std::string& name);
// Operations as nodes, the left action as edges.
void dot_bicomodule(std::ostream& os, const Bicomodule& p, const std::string& name);

// Fixed-width text table; the first row is the header.
void table(std::ostream& os, const std::vector<std::vector<std::string>>& rows);

// One row per operation: name, object, degree and arity size per object.
void op_table(std::ostream& os, const Bicomodule& p);

}  // namespace polycat::cli
