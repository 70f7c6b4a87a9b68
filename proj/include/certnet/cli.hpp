#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "certnet/degree.hpp"
#include "certnet/distribution.hpp"
#include "certnet/errors.hpp"
#include "certnet/io.hpp"
#include "certnet/kb.hpp"
#include "certnet/logic.hpp"
#include "certnet/network.hpp"

namespace certnet {

/// Outcome of one CLI invocation. Exit codes: 0 success, 1 parse/usage/IO
/// errors, 2 validation violations (and roundtrip mismatches).
struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

namespace cli_detail {

struct bail {
  int code;
};

inline std::string slurp(const std::string& path, std::string& err) {
  std::ifstream in(path);
  if (!in.good()) {
    err += "cannot open " + path + "\n";
    throw bail{1};
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline FuzzyCertainNetwork load_network(const std::string& path,
                                        std::string& err) {
  try {
    return parse_network(slurp(path, err));
  } catch (const parse_error& e) {
    err += path + ": " + e.what() + "\n";
    throw bail{1};
  }
}

inline FuzzyKnowledgeBase load_kb(const std::string& path, std::string& err) {
  std::vector<std::string> warnings;
  try {
    FuzzyKnowledgeBase kb = parse_fuzzy_kb(slurp(path, err), &warnings);
    for (const std::string& w : warnings) {
      err += path + ": warning: " + w + "\n";
    }
    return kb;
  } catch (const parse_error& e) {
    err += path + ": " + e.what() + "\n";
    throw bail{1};
  }
}

/// Permissive validation always gates computation; --strict upgrades the
/// gate, anything else downgrades strict violations to a warning.
inline void gate_network(const FuzzyCertainNetwork& net, bool strict,
                         std::string& err) {
  const ValidationReport permissive = validate(net, ValidationLevel::Permissive);
  if (!permissive.ok()) {
    err += permissive.to_text();
    throw bail{2};
  }
  const ValidationReport full = validate(net, ValidationLevel::Strict);
  if (full.ok()) return;
  if (strict) {
    err += full.to_text();
    throw bail{2};
  }
  err += "warning: network " + net.name +
         " is not strict; degrees are lower bounds only "
         "(run validate --strict for details)\n";
}

inline CertainNetwork crisp_or_bail(const FuzzyCertainNetwork& net,
                                    const std::string& path, std::string& err) {
  if (!is_crisp(net)) {
    err += path + ": network has fuzzy entries; run defuzzify first\n";
    throw bail{1};
  }
  return to_crisp(net);
}

}  // namespace cli_detail

/// Runs one command (argv without the program name) and captures its
/// streams. All output is byte-deterministic for a given input.
inline CommandResult run_command(const std::vector<std::string>& args) {
  CommandResult result;

  CLI::App app{"min-based certainty networks over binary attributes"};
  app.require_subcommand(1);

  bool strict = false;
  bool permissive = false;
  std::size_t max_vars = kDefaultMaxVars;
  std::string output;
  app.add_flag("--strict", strict, "fail on strict-normalization violations");
  app.add_flag("--permissive", permissive,
               "structural checks only (the default)")
      ->excludes("--strict");
  app.add_option("--max-vars", max_vars,
                 "world enumeration cap (default 20 attributes)");
  app.add_option("--output", output, "write the payload to this file");

  std::string path;
  std::string formula_text;

  CLI::App* cmd_validate =
      app.add_subcommand("validate", "report structure/coverage/strictness violations");
  CLI::App* cmd_joint =
      app.add_subcommand("joint", "joint certainty distribution as TSV");
  CLI::App* cmd_query =
      app.add_subcommand("query", "possibility and necessity of a formula");
  CLI::App* cmd_compile =
      app.add_subcommand("compile", "compile a network into a weighted-clause kb");
  CLI::App* cmd_recover =
      app.add_subcommand("recover", "certainty distribution of a kb as TSV");
  CLI::App* cmd_roundtrip = app.add_subcommand(
      "roundtrip", "compare the chain-rule joint with the compiled kb's recovery");
  CLI::App* cmd_defuzzify =
      app.add_subcommand("defuzzify", "write the crisp network of a fuzzy one");
  CLI::App* cmd_subsumed =
      app.add_subcommand("subsumed", "list kb lines whose removal changes nothing");

  for (CLI::App* cmd : {cmd_validate, cmd_joint, cmd_query, cmd_compile,
                        cmd_recover, cmd_roundtrip, cmd_defuzzify, cmd_subsumed}) {
    cmd->add_option("file", path, "input file")->required();
    cmd->fallthrough();
  }
  cmd_query->add_option("--formula", formula_text, "formula to grade")->required();

  std::vector<const char*> argv;
  argv.push_back("certnet");
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream out;
    app.exit(e, out, out);
    result.out = out.str();
    return result;
  } catch (const CLI::ParseError& e) {
    std::ostringstream err;
    app.exit(e, err, err);
    result.err = err.str();
    result.exit_code = 1;
    return result;
  }

  try {
    if (*cmd_validate) {
      const FuzzyCertainNetwork net =
          cli_detail::load_network(path, result.err);
      const ValidationLevel level =
          strict ? ValidationLevel::Strict : ValidationLevel::Permissive;
      const ValidationReport report = validate(net, level);
      if (!report.ok()) {
        result.out += report.to_text();
        result.exit_code = 2;
      } else {
        result.out += strict ? "ok (strict)\n" : "ok (permissive)\n";
      }
    } else if (*cmd_joint) {
      const FuzzyCertainNetwork net =
          cli_detail::load_network(path, result.err);
      cli_detail::gate_network(net, strict, result.err);
      if (is_crisp(net)) {
        result.out += joint_distribution(to_crisp(net), max_vars).to_tsv();
      } else {
        result.out += fuzzy_joint(net, max_vars).to_tsv();
      }
    } else if (*cmd_query) {
      const FuzzyCertainNetwork loaded =
          cli_detail::load_network(path, result.err);
      cli_detail::gate_network(loaded, strict, result.err);
      const CertainNetwork net =
          cli_detail::crisp_or_bail(loaded, path, result.err);
      const Formula formula = parse_formula(formula_text, net.vocabulary);
      const Distribution joint = joint_distribution(net, max_vars);
      result.out += "possibility: " + possibility(joint, formula).str() + "\n";
      result.out += "necessity: " + necessity(joint, formula).str() + "\n";
    } else if (*cmd_compile) {
      const FuzzyCertainNetwork net =
          cli_detail::load_network(path, result.err);
      cli_detail::gate_network(net, strict, result.err);
      if (is_crisp(net)) {
        result.out += print_kb(compile_network(to_crisp(net)));
      } else {
        result.out += print_kb(compile_fuzzy(net));
      }
    } else if (*cmd_recover) {
      const FuzzyKnowledgeBase loaded = cli_detail::load_kb(path, result.err);
      if (!is_crisp(loaded)) {
        result.err += path + ": kb has fuzzy weights; recovery needs crisp ones\n";
        throw cli_detail::bail{1};
      }
      result.out += recover_distribution(to_crisp(loaded), max_vars).to_tsv();
    } else if (*cmd_roundtrip) {
      const FuzzyCertainNetwork loaded =
          cli_detail::load_network(path, result.err);
      cli_detail::gate_network(loaded, strict, result.err);
      const CertainNetwork net =
          cli_detail::crisp_or_bail(loaded, path, result.err);
      const Distribution direct = joint_distribution(net, max_vars);
      const Distribution recovered =
          recover_distribution(compile_network(net), max_vars);
      Rational worst = 0;
      for (std::size_t r = 0; r < direct.world_count(); ++r) {
        const Rational diff =
            direct.at_rank(r).value() - recovered.at_rank(r).value();
        const Rational magnitude = diff < 0 ? Rational(-diff) : diff;
        if (worst < magnitude) worst = magnitude;
      }
      const std::string worlds =
          "(" + std::to_string(direct.world_count()) + " worlds)\n";
      if (worst == 0) {
        result.out += "identical " + worlds;
      } else {
        result.out += "max discrepancy " + Degree(worst).str() + " " + worlds;
        result.exit_code = 2;
      }
    } else if (*cmd_defuzzify) {
      const FuzzyCertainNetwork net =
          cli_detail::load_network(path, result.err);
      cli_detail::gate_network(net, strict, result.err);
      result.out += print_network(defuzzify_network(net));
    } else if (*cmd_subsumed) {
      const FuzzyKnowledgeBase loaded = cli_detail::load_kb(path, result.err);
      if (!is_crisp(loaded)) {
        result.err += path + ": kb has fuzzy weights; subsumption needs crisp ones\n";
        throw cli_detail::bail{1};
      }
      const KnowledgeBase kb = to_crisp(loaded);
      for (std::size_t i = 0; i < kb.formulas.size(); ++i) {
        if (is_subsumed(kb, i, max_vars)) {
          result.out +=
              "line " + std::to_string(kb.formulas[i].line) + " subsumed\n";
        }
      }
    }
  } catch (const cli_detail::bail& b) {
    result.exit_code = b.code;
    return result;
  } catch (const parse_error& e) {
    result.err += std::string(e.what()) + "\n";
    result.exit_code = 1;
    return result;
  } catch (const unknown_atom_error& e) {
    result.err += std::string(e.what()) + "\n";
    result.exit_code = 1;
    return result;
  } catch (const guard_error& e) {
    result.err += std::string(e.what()) + "\n";
    result.exit_code = 1;
    return result;
  } catch (const domain_error& e) {
    result.err += std::string(e.what()) + "\n";
    result.exit_code = 1;
    return result;
  }

  if (!output.empty() && result.exit_code == 0) {
    std::ofstream out(output);
    out << result.out;
    if (!out.good()) {
      result.err += "cannot write " + output + "\n";
      result.exit_code = 1;
      return result;
    }
    result.out.clear();
  }
  return result;
}

}  // namespace certnet
