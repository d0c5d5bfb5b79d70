#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "spec_file.hpp"

namespace polycat::cli {

enum class Format { Table, Graph, Native };

struct Options {
  int bound = -1;
  bool oracle = false;
  bool segal = false;
  Format format = Format::Table;
  std::string monad;
  std::string algebra;
  std::string left;
  std::string right;
  std::string morphism;
  std::string wreath;
  std::string copresheaf;
  std::string against = "smc";
  std::vector<std::string> objects;
};

// Each returns the exit code: 0 when every check passes, 1 otherwise.
// Input problems surface as InputError.
int cmd_check(const SpecFile& s, const Options& o, std::ostream& out);
int cmd_theory(const SpecFile& s, const Options& o, std::ostream& out);
int cmd_nerve(const SpecFile& s, const Options& o, std::ostream& out);
int cmd_segal(const SpecFile& s, const Options& o, std::ostream& out);
int cmd_compose(const SpecFile& s, const Options& o, std::ostream& out);
int cmd_coclosure(const SpecFile& s, const Options& o, std::ostream& out);
int cmd_free(const SpecFile& s, const Options& o, std::ostream& out);
int cmd_em_check(const SpecFile& s, const Options& o, std::ostream& out);
int cmd_wreath(const SpecFile& s, const Options& o, std::ostream& out);
int cmd_compare_monads(const SpecFile& s, const Options& o, std::ostream& out);
int cmd_export(const SpecFile& s, const Options& o, std::ostream& out);

using Command = int (*)(const SpecFile&, const Options&, std::ostream&);

}  // namespace polycat::cli
