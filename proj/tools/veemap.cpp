#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "veemap/error.hpp"

using namespace veemap;

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

int emit(const cli::Outcome& o, bool pretty, const std::string& artifact_path) {
  std::cout << (pretty ? o.report.dump(2) : o.report.dump()) << '\n';
  if (!artifact_path.empty()) write_file(artifact_path, o.artifact);
  return o.code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shift spaces, Thompson-like actions and their mapping-torus rewritings"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Indent JSON output");

  cli::HullOptions hull;
  std::string dot_path;
  auto* hull_cmd = app.add_subcommand("hull", "Vertex shift of the hull of a language");
  auto* regex_opt = hull_cmd->add_option("--regex", hull.regex, "Language as a regular expression ('+', '*', eps)");
  auto* dfa_opt = hull_cmd->add_option("--dfa", hull.dfa_file, "Language as a DFA JSON file");
  regex_opt->excludes(dfa_opt);
  hull_cmd->add_option("--alphabet", hull.alphabet, "Comma-separated symbol order for the regex");
  hull_cmd->add_option("--sep", hull.separator, "Block separator symbol")->capture_default_str();
  hull_cmd->add_flag("--pair", hull.pair, "Pair language u@v with u reversed");
  hull_cmd->add_option("--right-regex", hull.right_regex, "Right language (pair mode; default: the left one)");
  hull_cmd->add_option("--right-dfa", hull.right_dfa_file, "Right language as a DFA JSON file");
  hull_cmd->add_option("--left-names", hull.left_names, "Comma-separated names for left symbols (default: suffix _A)");
  hull_cmd->add_option("--right-names", hull.right_names, "Comma-separated names for right symbols (default: suffix _B)");
  hull_cmd->add_option("--inner", hull.inner_separator, "Inner separator (pair mode)")->capture_default_str();
  hull_cmd->add_flag("--reverse-left,!--no-reverse-left", hull.reverse_left, "Read the left component reversed")
      ->capture_default_str();
  hull_cmd->add_option("--cross-validate", hull.cross_validate, "Compare factor sets up to this length");
  hull_cmd->add_option("--dot", dot_path, "Write the graph as DOT");

  std::string element_file, pair_element_file, rule_file, pair_rule_file;
  cli::VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check a veelike action, its flow simulation and faithfulness");
  auto* group = verify_cmd->add_option_group("input");
  group->add_option("--element", element_file, "V element JSON");
  group->add_option("--pair-element", pair_element_file, "2V element JSON");
  group->add_option("--rule", rule_file, "Veelike rule JSON");
  group->add_option("--pair-rule", pair_rule_file, "Pair veelike rule JSON");
  group->require_option(1);
  verify_cmd->add_option("--max-len", verify.max_len, "Longest word in the sweep")->capture_default_str();
  verify_cmd->add_option("--embed-len", verify.embed_len, "Longest word for simulation and faithfulness")
      ->capture_default_str();

  cli::RelatorOptions relator;
  relator.seed = cli::default_seed();
  auto* relator_cmd = app.add_subcommand("relator", "Check that an identity word fixes random flow orbits");
  relator_cmd->add_option("word", relator.word, "Generators s a b c p, capitals for inverses")->required();
  relator_cmd->add_option("--orbits", relator.orbits, "Number of random orbits")->capture_default_str();
  relator_cmd->add_option("--seed", relator.seed, "Random seed (default: VEEMAP_SEED or 1)");
  relator_cmd->add_option("--max-tiles", relator.max_tiles, "Longest random orbit")->capture_default_str();

  std::vector<std::string> bf_files;
  auto* bf_cmd = app.add_subcommand("bf", "Bowen-Franks groups of integer matrices");
  bf_cmd->add_option("matrices", bf_files, "Matrix JSON files")->required()->check(CLI::ExistingFile);

  std::string mixing_file;
  auto* mixing_cmd = app.add_subcommand("mixing", "Primitivity of a 0/1 matrix on its essential symbols");
  mixing_cmd->add_option("matrix", mixing_file, "Matrix JSON file")->required()->check(CLI::ExistingFile);

  std::string orbit_element, orbit_file, svg_path;
  bool orbit_pair = false;
  auto* orbit_cmd = app.add_subcommand("orbit", "Apply the induced flow map of an element to an orbit");
  orbit_cmd->add_option("--element", orbit_element, "V or 2V element JSON")->required();
  orbit_cmd->add_flag("--pair", orbit_pair, "Element is a 2V element");
  orbit_cmd->add_option("--orbit", orbit_file, "Orbit JSON")->required();
  orbit_cmd->add_option("--svg", svg_path, "Write the image orbit as SVG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*hull_cmd) {
      if (hull.regex.empty() && hull.dfa_file.empty()) throw Error("hull needs --regex or --dfa");
      return emit(cli::cmd_hull(hull), pretty, dot_path);
    }
    if (*verify_cmd) {
      if (!element_file.empty())
        return emit(cli::cmd_verify(read_json_file(element_file), cli::VerifyInput::element, verify), pretty, {});
      if (!pair_element_file.empty())
        return emit(cli::cmd_verify(read_json_file(pair_element_file), cli::VerifyInput::pair_element, verify), pretty,
                    {});
      if (!rule_file.empty())
        return emit(cli::cmd_verify(read_json_file(rule_file), cli::VerifyInput::rule, verify), pretty, {});
      return emit(cli::cmd_verify(read_json_file(pair_rule_file), cli::VerifyInput::pair_rule, verify), pretty, {});
    }
    if (*relator_cmd) return emit(cli::cmd_relator(relator), pretty, {});
    if (*bf_cmd) {
      std::vector<Json> ms;
      for (const auto& f : bf_files) ms.push_back(read_json_file(f));
      return emit(cli::cmd_bf(ms), pretty, {});
    }
    if (*mixing_cmd) return emit(cli::cmd_mixing(read_json_file(mixing_file)), pretty, {});
    if (*orbit_cmd)
      return emit(cli::cmd_orbit(read_json_file(orbit_element), orbit_pair, read_json_file(orbit_file)), pretty, svg_path);
  } catch (const std::exception& e) {
    std::cerr << "veemap: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
