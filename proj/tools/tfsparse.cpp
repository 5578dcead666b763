// Command-line front end: check, parse, chart, derive.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tfsparse/grammar.hpp"
#include "tfsparse/oracle.hpp"
#include "tfsparse/parser.hpp"
#include "tfsparse/render.hpp"
#include "tfsparse/termination.hpp"

using namespace tfsparse;

namespace {

enum Exit { kAccepted = 0, kRejected = 1, kExhausted = 2, kUnknownWord = 3, kCyclic = 4, kBadInput = 5 };

struct Options {
  std::string grammar;
  std::string sentence;
  bool witness = false;
  bool no_filter = false;
  std::size_t max_iterations = 100;
  bool full_fixpoint = false;
  bool guard = true;
  std::size_t sentinel = 0;
  bool golden = false;
  std::size_t max_steps = 12;
  bool verbose = false;
  std::string derivation = "text";
};

std::string item_line(const Item& it, const TypeHierarchy& h) {
  std::string avm = it.structure.empty() ? "<>" : render_amrs(it.structure, h);
  return "[" + std::to_string(it.i) + ", " + avm + ", " + std::to_string(it.j) + ", " + status_name(it.status) + "]";
}

ComputationConfig config_of(const Options& o) {
  ComputationConfig cfg;
  cfg.subsumption_filter = !o.no_filter;
  cfg.max_iterations = o.max_iterations;
  cfg.acyclicity_guard = o.guard;
  cfg.early_exit = !o.full_fixpoint;
  cfg.sentinel_threshold = o.sentinel;
  return cfg;
}

int cmd_check(const Options& o) {
  try {
    Grammar g = load_grammar_file(o.grammar);
    std::cout << g.rules().size() << " rules, " << g.lexicon().size() << " lexical entries, signature OK\n";
    for (const auto& w : lint(g)) std::cout << "warning: " << w << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << o.grammar << ": error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_parse(const Grammar& g, const Options& o) {
  Sentence w = tokenize_sentence(o.sentence);
  ComputationResult r = run(g, w, config_of(o));
  for (const auto& warn : r.warnings) std::cerr << "warning: " << warn << "\n";
  std::cout << verdict_name(r.verdict) << " (" << r.iterations << " iterations, " << r.chart.size() << " items)\n";
  if (o.witness && r.witness) std::cout << "witness: " << item_line(*r.witness, g.hierarchy()) << "\n";
  switch (r.verdict) {
    case Verdict::Accepted: return kAccepted;
    case Verdict::Rejected: return kRejected;
    case Verdict::BudgetExhausted: return kExhausted;
  }
  return kRejected;
}

int cmd_chart(const Grammar& g, Options o) {
  Sentence w = tokenize_sentence(o.sentence);
  // The numbered trace lists every item ever built, so nothing is filtered.
  if (o.golden) o.no_filter = true;
  o.full_fixpoint = true;
  ComputationResult r = run(g, w, config_of(o));
  for (const auto& warn : r.warnings) std::cerr << "warning: " << warn << "\n";
  const TypeHierarchy& h = g.hierarchy();

  if (o.golden) {
    std::size_t k = 0;
    for (const Item* it : r.chart.items()) {
      std::cout << "(" << ++k << ") " << item_line(*it, h) << "  I" << it->iteration << " "
                << case_name(it->provenance.origin);
      if (it->provenance.rule) std::cout << " " << g.rules()[*it->provenance.rule].name;
      std::cout << "\n";
    }
    std::cout << verdict_name(r.verdict) << " after " << r.iterations << " iterations\n";
    if (r.witness) std::cout << "witness: " << item_line(*r.witness, h) << "\n";
  } else {
    Json out;
    out["sentence"] = w;
    out["iterations"] = r.iterations;
    out["verdict"] = verdict_name(r.verdict);
    Json items = Json::array();
    for (const Item* it : r.chart.items()) {
      Json prov;
      prov["case"] = case_name(it->provenance.origin);
      if (it->provenance.rule) prov["rule"] = g.rules()[*it->provenance.rule].name;
      if (!it->provenance.parents.empty()) prov["parents"] = it->provenance.parents;
      if (it->provenance.word) prov["word"] = *it->provenance.word;
      items.push_back(Json{{"id", it->id},
                           {"i", it->i},
                           {"j", it->j},
                           {"status", status_name(it->status)},
                           {"iteration", it->iteration},
                           {"avm", amrs_json(it->structure, h)},
                           {"provenance", std::move(prov)}});
    }
    out["items"] = std::move(items);
    std::cout << out.dump(2) << "\n";
  }
  switch (r.verdict) {
    case Verdict::Accepted: return kAccepted;
    case Verdict::Rejected: return kRejected;
    case Verdict::BudgetExhausted: return kExhausted;
  }
  return kRejected;
}

int cmd_derive(const Grammar& g, const Options& o) {
  Sentence w = tokenize_sentence(o.sentence);
  OracleResult r = derives(g, w, o.max_steps);
  const TypeHierarchy& h = g.hierarchy();
  if (r.verdict != OracleVerdict::Derivable) {
    if (r.verdict == OracleVerdict::BudgetExhausted) {
      std::cout << "none found within " << o.max_steps << " steps (budget exhausted)\n";
      return kExhausted;
    }
    std::cout << "none found\n";
    return kRejected;
  }
  DerivationNode tree = derivation_tree(g, r, w);
  if (o.derivation == "json") {
    Json out;
    Json steps = Json::array();
    for (const auto& s : r.steps) {
      Json step{{"rule", g.rules()[s.rule].name}, {"index", s.index}};
      if (o.verbose) step["result"] = render_amrs(s.result, h);
      steps.push_back(std::move(step));
    }
    out["steps"] = std::move(steps);
    out["tree"] = tree_json(tree);
    std::cout << out.dump(2) << "\n";
    return kAccepted;
  }
  std::cout << "derivation (" << r.steps.size() << " steps):\n";
  if (o.verbose) std::cout << "   0. " << render_avm(g.start(), h) << "\n";
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const auto& s = r.steps[i];
    std::cout << "  " << (i + 1) << ". " << g.rules()[s.rule].name << " at " << s.index << "\n";
    if (o.verbose) std::cout << "     " << (s.result.empty() ? "<>" : render_amrs(s.result, h)) << "\n";
  }
  if (o.verbose && r.final_form)
    std::cout << "  words: " << (r.final_form->empty() ? "<>" : render_amrs(*r.final_form, h)) << "\n";
  std::cout << render_tree(tree);
  return kAccepted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Typed feature structure chart parser"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "Validate a grammar file");
  check->add_option("grammar", o.grammar, "Grammar file")->required();

  auto add_run_flags = [&o](CLI::App* cmd) {
    cmd->add_option("grammar", o.grammar, "Grammar file")->required();
    cmd->add_option("sentence", o.sentence, "Sentence (whitespace separated; omitted means empty)");
    cmd->add_flag("--no-filter", o.no_filter, "Disable subsumption filtering");
    cmd->add_option("--max-iterations", o.max_iterations, "Iteration budget")->check(CLI::PositiveNumber);
    cmd->add_flag("--guard-acyclic,!--no-guard-acyclic", o.guard, "Reject cyclic items (default on)");
    cmd->add_option("--sentinel-threshold", o.sentinel, "Warn when a cell holds more incomparable items")
        ->check(CLI::PositiveNumber);
  };

  auto* parse = app.add_subcommand("parse", "Parse a sentence");
  add_run_flags(parse);
  parse->add_flag("--witness", o.witness, "Print the witness item");
  parse->add_flag("--full-fixpoint", o.full_fixpoint, "Iterate to the fixpoint even after success");

  auto* chart = app.add_subcommand("chart", "Dump the fixpoint chart as JSON");
  add_run_flags(chart);
  chart->add_flag("--golden", o.golden, "Numbered text trace of every item (implies --no-filter)");

  auto* derive = app.add_subcommand("derive", "Search for a leftmost derivation");
  derive->add_option("grammar", o.grammar, "Grammar file")->required();
  derive->add_option("sentence", o.sentence, "Sentence (whitespace separated; omitted means empty)");
  derive->add_option("--max-steps", o.max_steps, "Rule application budget");
  derive->add_flag("--verbose", o.verbose, "Show every sentential form");
  derive->add_option("--derivation", o.derivation, "Output format")->check(CLI::IsMember({"text", "json"}));

  CLI11_PARSE(app, argc, argv);

  if (*check) return cmd_check(o);

  std::optional<Grammar> g;
  try {
    g.emplace(load_grammar_file(o.grammar));
  } catch (const std::exception& e) {
    std::cerr << o.grammar << ": error: " << e.what() << "\n";
    return kBadInput;
  }
  try {
    if (*parse) return cmd_parse(*g, o);
    if (*chart) return cmd_chart(*g, o);
    return cmd_derive(*g, o);
  } catch (const UnknownWord& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnknownWord;
  } catch (const CyclicItemError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCyclic;
  }
}
