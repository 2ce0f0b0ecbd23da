#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "linfty/runner.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "linfty: exact-arithmetic verifier for L-infinity structures, derived "
      "brackets, Rota-Baxter operators and r-matrices"};
  app.require_subcommand(1);

  std::string file = "-";
  std::string format = "text";
  int max_arity = -1, max_weight = -1;
  int shift = INT32_MIN;
  app.add_option("--format", format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--max-arity", max_arity, "arity cap override");
  app.add_option("--max-weight", max_weight, "weight cap override");
  app.add_option("--shift", shift, "shift n override");

  struct Cmd {
    const char* name;
    const char* cmd;
    const char* help;
  };
  const Cmd cmds[] = {
      {"check", nullptr, "run a verification (subcommand selects which)"},
      {"derive", nullptr, "derive a structure"},
      {"make", nullptr, "build an object with certificates"},
      {"convert", nullptr, "convert between presentations"},
  };
  (void)cmds;

  std::string resolved;
  auto add_leaf = [&](CLI::App* parent, const std::string& name,
                      const std::string& command, const std::string& help) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->add_option("file", file, "input document (- for stdin)");
    sub->callback([&resolved, command] { resolved = command; });
    return sub;
  };

  CLI::App* check = app.add_subcommand("check", "verification commands");
  check->require_subcommand(1);
  add_leaf(check, "linfty", "check-linfty",
           "generalized Jacobi relations up to the arity cap");
  add_leaf(check, "morphism", "check-morphism", "the morphism relation");
  add_leaf(check, "rb", "check-rb", "homotopy relative Rota-Baxter identity");
  add_leaf(check, "rmatrix", "check-rmatrix", "the r-matrix equation");
  add_leaf(check, "bridge", "check-bridge",
           "commutation of the r-matrix / Rota-Baxter correspondence");
  CLI::App* derive = app.add_subcommand("derive", "derivations");
  derive->require_subcommand(1);
  add_leaf(derive, "schouten", "derive-schouten",
           "higher Schouten structure tables");
  CLI::App* make = app.add_subcommand("make", "constructions");
  make->require_subcommand(1);
  add_leaf(make, "bialgebra", "make-bialgebra",
           "triangular bialgebra element with certificates");
  CLI::App* convert = app.add_subcommand("convert", "conversions");
  convert->require_subcommand(1);
  add_leaf(convert, "rmatrix-to-rb", "convert-rmatrix-to-rb",
           "carry an r-matrix to a Rota-Baxter operator");

  CLI11_PARSE(app, argc, argv);

  linfty::RunOptions opt;
  if (max_arity >= 0) opt.arity_cap = max_arity;
  if (max_weight >= 0) opt.weight_cap = max_weight;
  if (shift != INT32_MIN) opt.shift = shift;
  opt.structured = (format == "structured");

  linfty::Report rep;
  try {
    auto doc = linfty::parse_document(read_input(file));
    rep = linfty::run_command(resolved, doc, opt);
  } catch (const std::exception& e) {
    rep.command = resolved.empty() ? "parse" : resolved;
    rep.verdict = linfty::Report::Verdict::Error;
    rep.error_message = e.what();
  }
  std::cout << (opt.structured ? rep.render_structured() : rep.render_text());
  return rep.exit_code();
}
