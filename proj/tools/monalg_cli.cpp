// monalg: normality, rounding and canonical-module computations from the shell.
//
//   monalg <command> (--matrix F | --graph F | --clutter F | --stdin) [options]
//
// Prints one JSON report to stdout; diagnostics go to stderr. Exit codes:
// 0 computed, 1 domain or input error, 2 resource cap hit, 3 soundness failure.

#include "commands.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(std::istream &in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

int main(int argc, char **argv) {
  using namespace monalg::cli;
  CLI::App app{"Monomial subrings, rounding properties and canonical modules"};
  app.set_version_flag("--version", std::string(kReportSchema));

  std::string command;
  std::string matrix_file, graph_file, clutter_file;
  bool use_stdin = false, json_input = false;
  CommandFlags flags;

  app.add_option("command", command, "Command to run")
      ->required()
      ->check(CLI::IsMember(command_names()));
  auto *m = app.add_option("--matrix", matrix_file, "Matrix input file")->check(CLI::ExistingFile);
  auto *g = app.add_option("--graph", graph_file, "Graph input file")->check(CLI::ExistingFile);
  auto *c = app.add_option("--clutter", clutter_file, "Clutter input file")->check(CLI::ExistingFile);
  auto *s = app.add_flag("--stdin", use_stdin, "Read the input from stdin");
  m->excludes(g, c, s);
  g->excludes(c, s);
  c->excludes(s);
  app.add_flag("--json", json_input, "Input is JSON rather than the text format");
  app.add_option("--algebra", flags.algebras,
                 "Algebra kinds: rees, extended_rees, kf, kft, kft_t, S_downset, ehrhart, all "
                 "(hilbert-basis also takes cone)")
      ->delimiter(',');
  app.add_option("--system", flags.systems, "Rounding systems: leq1, geq1, eq1")->delimiter(',');
  app.add_flag("--oracle", flags.oracle, "Cross-check with the brute-force integer program");
  app.add_option("--box", flags.box, "Oracle box: right-hand sides in [0, B]^n")
      ->capture_default_str()
      ->check(CLI::Range(0, 64));
  app.add_option("--down-set-cap", flags.down_set_cap, "Largest down-set enumerated")->capture_default_str();
  app.add_option("--scan-cap", flags.scan_cap, "Lattice points visited by the omega scan")
      ->capture_default_str();
  app.add_option("--candidate-cap", flags.candidate_cap, "Hilbert basis candidate points")
      ->capture_default_str();
  app.add_option("--oracle-state-cap", flags.oracle_state_cap, "Oracle table size")->capture_default_str();
  app.add_option("--experiment", flags.experiment, "sweep: bipartite-eq1, duality or gorenstein")
      ->capture_default_str();
  app.add_option("--max-vertices", flags.max_vertices, "sweep: largest vertex count")->capture_default_str();
  app.add_option("--max-edges", flags.max_edges, "sweep (duality): largest edge count")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::optional<std::string> text;
  std::string path = !matrix_file.empty() ? matrix_file : !graph_file.empty() ? graph_file : clutter_file;
  if (!graph_file.empty()) flags.input_role = "graph";
  if (!clutter_file.empty()) flags.input_role = "clutter";
  if (use_stdin) {
    text = slurp(std::cin);
  } else if (!path.empty()) {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "monalg: cannot read " << path << "\n";
      return 1;
    }
    text = slurp(in);
  } else if (command_needs_input(command)) {
    std::cerr << "monalg: " << command << " needs --matrix, --graph, --clutter or --stdin\n";
    return 1;
  }

  auto r = run_command_on_text(command, text, json_input, flags);
  const std::string out = r.report.dump(2) + "\n";
  std::cout.write(out.data(), std::streamsize(out.size()));
  std::cout.flush();
  if (!r.diagnostic.empty()) std::cerr << "monalg: " << r.diagnostic << "\n";
  return r.exit_code;
}
