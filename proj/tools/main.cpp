#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace polycat;
using namespace polycat::cli;

namespace {

struct Sub {
  const char* name;
  const char* help;
  Command run;
};

const Sub kCommands[] = {
    {"check", "run the law checks of every declaration", cmd_check},
    {"theory", "theory category on a selection of operations", cmd_theory},
    {"nerve", "nerve of an algebra on a theory category", cmd_nerve},
    {"segal", "Segal condition of a nerve, per object", cmd_segal},
    {"compose", "composite of two bicomodules", cmd_compose},
    {"coclosure", "coclosure [left, right]", cmd_coclosure},
    {"free", "free algebra on a copresheaf", cmd_free},
    {"em-check", "laws of a monad morphism or of a wreath", cmd_em_check},
    {"wreath", "wreath laws and comparison of the composite monad", cmd_wreath},
    {"compare-monads", "isomorphism of two monads at the bound", cmd_compare_monads},
    {"export", "every declaration in native or graph form", cmd_export},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polycat: finite computations with polynomial comonoids, bicomodules and familial monads"};
  app.require_subcommand(1);

  std::string spec_path, output;
  bool timing = false;
  Options opts;
  std::string objects;
  const std::map<std::string, Format> formats{{"table", Format::Table}, {"graph", Format::Graph}, {"native", Format::Native}};

  for (const auto& c : kCommands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("spec", spec_path, "JSON spec file")->required()->check(CLI::ExistingFile);
    sub->add_option("--bound", opts.bound, "degree bound")->required()->check(CLI::NonNegativeNumber);
    sub->add_flag("--oracle", opts.oracle, "cross-check against the independent construction");
    sub->add_flag("--segal", opts.segal, "append the Segal check");
    sub->add_option("--format", opts.format, "table, graph or native")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--monad", opts.monad);
    sub->add_option("--algebra", opts.algebra);
    sub->add_option("--left", opts.left);
    sub->add_option("--right", opts.right);
    sub->add_option("--morphism", opts.morphism);
    sub->add_option("--wreath", opts.wreath);
    sub->add_option("--copresheaf", opts.copresheaf);
    sub->add_option("--against", opts.against, "monad compared with the wreath composite");
    sub->add_option("--objects", objects, "comma-separated operation names");
    sub->add_option("-o,--output", output, "write the result to a file");
    sub->add_flag("--timing", timing, "report elapsed time on stderr");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::stringstream list(objects);
  for (std::string item; std::getline(list, item, ',');)
    if (!item.empty()) opts.objects.push_back(item);

  const auto* sub = app.get_subcommands().front();
  Command run = nullptr;
  for (const auto& c : kCommands)
    if (sub->get_name() == c.name) run = c.run;

  const auto start = std::chrono::steady_clock::now();
  std::ostringstream out;
  int code = 2;
  try {
    code = run(SpecFile::load(spec_path, opts.bound), opts, out);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const BoundExhausted& e) {
    std::cerr << "bound too small: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cout << out.str();
    std::cerr << "law failure: " << e.what() << "\n";
    return 1;
  }
  if (output.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      std::cerr << "input error: cannot write " << output << "\n";
      return 2;
    }
    f << out.str();
  }
  if (timing)
    std::cerr << "time: "
              << std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count()
              << " ms\n";
  return code;
}
