#include "elpp/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "elpp/differential.hpp"
#include "elpp/parser.hpp"
#include "elpp/printer.hpp"
#include "elpp/reasoner.hpp"

namespace elpp {

namespace {

struct UsageError {
  std::string message;
};

KnowledgeBase load_ontology(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot open '" + path + "'"};
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto parsed = parse_ontology(buffer.str());
  if (const auto* errors = std::get_if<std::vector<ParseError>>(&parsed)) {
    for (const auto& e : *errors)
      err << path << ":" << e.span.line << ":" << e.span.column << ": " << e.message << "\n";
    throw UsageError{"failed to parse '" + path + "'"};
  }
  return std::get<SourceOntology>(parsed).kb;
}

ConceptRef load_concept(const std::string& text, const KnowledgeBase& kb, std::ostream& err) {
  auto parsed = parse_concept(text, kb);
  if (const auto* e = std::get_if<ParseError>(&parsed)) {
    err << "in '" << text << "' at column " << e->span.column << ": " << e->message << "\n";
    throw UsageError{"failed to parse concept expression"};
  }
  return std::get<ConceptRef>(parsed);
}

std::string render_entry(const ClassificationState& st, const Premise& entry) {
  auto value_word = [&](int v) {
    return v == kValueBottom ? std::string("bot") : print_concept(st.bc()[v - 1]);
  };
  if (const auto* s = std::get_if<SEntry>(&entry))
    return value_word(s->v) + " in S(" + print_concept(st.bc()[s->c]) + ")";
  const auto& r = std::get<REntry>(entry);
  return "(" + print_concept(st.bc()[r.c]) + ", " + print_concept(st.bc()[r.d]) + ") in R(" +
         label(st.role_names()[static_cast<size_t>(r.role)]) + ")";
}

void render_trace_text(std::ostream& out, const ClassificationState& st, const TraceTree& tree,
                       int indent) {
  out << std::string(static_cast<size_t>(indent) * 2, ' ') << render_entry(st, tree.entry) << "  ["
      << trace_shape_word(tree.rule) << "]\n";
  for (int ax : tree.axioms)
    out << std::string(static_cast<size_t>(indent) * 2 + 2, ' ') << "axiom " << ax << ": "
        << print_constraint(st.kb().constraints[static_cast<size_t>(ax)]) << "\n";
  for (const auto& child : tree.children) render_trace_text(out, st, child, indent + 1);
}

nlohmann::json trace_json(const ClassificationState& st, const TraceTree& tree) {
  nlohmann::json node;
  node["rule"] = std::string(rule_word(tree.rule));
  node["shape"] = std::string(trace_shape_word(tree.rule));
  node["entry"] = render_entry(st, tree.entry);
  auto axioms = nlohmann::json::array();
  for (int ax : tree.axioms)
    axioms.push_back(print_constraint(st.kb().constraints[static_cast<size_t>(ax)]));
  node["axioms"] = axioms;
  auto children = nlohmann::json::array();
  for (const auto& child : tree.children) children.push_back(trace_json(st, child));
  node["premises"] = children;
  return node;
}

int cmd_subsumes(const std::string& file, const std::string& c_text, const std::string& d_text,
                 const std::string& format, bool want_trace, std::ostream& out,
                 std::ostream& err) {
  auto kb = load_ontology(file, err);
  auto c = load_concept(c_text, kb, err);
  auto d = load_concept(d_text, kb, err);
  QueryOptions opts;
  opts.want_trace = want_trace;
  auto verdict = check_subsumption(kb, c, d, opts);

  if (format == "json") {
    nlohmann::json doc;
    doc["holds"] = verdict.holds;
    doc["reason"] =
        verdict.reason ? nlohmann::json(std::string(reason_word(*verdict.reason))) : nullptr;
    if (verdict.trace && verdict.state) doc["trace"] = trace_json(*verdict.state, *verdict.trace);
    out << doc.dump(2) << "\n";
  } else {
    if (verdict.holds)
      out << "true (" << reason_word(*verdict.reason) << ")\n";
    else
      out << "false\n";
    if (verdict.trace && verdict.state) render_trace_text(out, *verdict.state, *verdict.trace, 0);
  }
  return verdict.holds ? 0 : 1;
}

int cmd_classify(const std::string& file, const std::string& format, std::ostream& out,
                 std::ostream& err) {
  auto kb = load_ontology(file, err);
  auto pairs = classify_names(kb);
  std::vector<std::pair<std::string, std::string>> rows;
  for (auto [x, y] : pairs) rows.emplace_back(label(x), label(y));
  std::sort(rows.begin(), rows.end());
  if (format == "json") {
    auto doc = nlohmann::json::array();
    for (auto& [x, y] : rows) doc.push_back(nlohmann::json::array({x, y}));
    out << doc.dump(2) << "\n";
  } else {
    for (auto& [x, y] : rows) out << x << " <= " << y << "\n";
  }
  return 0;
}

int cmd_explain(const std::string& file, const std::string& c_text, const std::string& d_text,
                const std::string& format, std::ostream& out, std::ostream& err) {
  auto kb = load_ontology(file, err);
  auto c = load_concept(c_text, kb, err);
  auto d = load_concept(d_text, kb, err);
  QueryOptions opts;
  opts.want_trace = true;
  auto verdict = check_subsumption(kb, c, d, opts);
  if (!verdict.holds) {
    out << "false\n";
    return 1;
  }
  if (format == "json") {
    nlohmann::json doc;
    doc["holds"] = true;
    doc["reason"] = std::string(reason_word(*verdict.reason));
    doc["trace"] = trace_json(*verdict.state, *verdict.trace);
    out << doc.dump(2) << "\n";
  } else {
    out << "true (" << reason_word(*verdict.reason) << ")\n";
    render_trace_text(out, *verdict.state, *verdict.trace, 0);
  }
  return 0;
}

int cmd_normalize(const std::string& file, std::ostream& out, std::ostream& err) {
  auto kb = load_ontology(file, err);
  out << print_kb(normalize(kb));
  return 0;
}

int cmd_check(int count, uint64_t seed, int max_model_size, uint64_t budget,
              const std::string& format, std::ostream& out, std::ostream& err) {
  DiffParams params;
  params.gen = GenParams::differential();
  params.kb_count = count;
  params.seed = seed;
  params.max_size_override = max_model_size;
  params.budget = budget;
  auto report = run_differential(params);

  if (format == "json") {
    nlohmann::json doc;
    doc["kbs"] = report.kbs;
    doc["queries"] = report.queries;
    doc["holds_true"] = report.holds_true;
    doc["holds_false"] = report.holds_false;
    doc["budget_exceeded"] = report.budget_exceeded;
    doc["trace_entries"] = report.trace_entries;
    doc["trace_replayed"] = report.trace_replayed;
    auto bad = nlohmann::json::array();
    for (const auto& d : report.disagreements)
      bad.push_back({{"kb", d.kb_text},
                     {"subsumee", d.query_c},
                     {"subsumer", d.query_d},
                     {"reasoner_holds", d.reasoner_holds},
                     {"detail", d.detail}});
    doc["disagreements"] = bad;
    out << doc.dump(2) << "\n";
  } else {
    out << report.kbs << " kbs, " << report.queries << " queries: " << report.holds_true
        << " subsumptions, " << report.holds_false << " refutations, "
        << report.disagreements.size() << " disagreements, " << report.budget_exceeded
        << " inconclusive (budget)\n";
    out << "trace replay: " << report.trace_replayed << "/" << report.trace_entries << "\n";
    for (const auto& d : report.disagreements) {
      out << "disagreement on " << d.query_c << " <= " << d.query_d << " ("
          << (d.reasoner_holds ? "reasoner: true" : "reasoner: false") << "; " << d.detail
          << ")\n";
      out << d.kb_text;
    }
  }
  if (!report.disagreements.empty() || report.budget_exceeded > 0) {
    err << "check failed: " << report.disagreements.size() << " disagreement(s), "
        << report.budget_exceeded << " inconclusive run(s)\n";
    return 3;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"EL++ subsumption reasoner with rational and string concrete domains"};
  app.require_subcommand(1);

  std::string file, c_text, d_text;
  std::string format = "text";
  bool want_trace = false;
  int count = 100;
  uint64_t seed = 1;
  int max_model_size = 0;
  uint64_t budget = kDefaultSearchBudget;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  };

  auto* subsumes = app.add_subcommand("subsumes", "decide one subsumption");
  subsumes->add_option("file", file)->required();
  subsumes->add_option("subsumee", c_text)->required();
  subsumes->add_option("subsumer", d_text)->required();
  subsumes->add_flag("--trace", want_trace, "print the derivation");
  add_format(subsumes);

  auto* classify_cmd = app.add_subcommand("classify", "all entailed concept-name pairs");
  classify_cmd->add_option("file", file)->required();
  add_format(classify_cmd);

  auto* explain_cmd = app.add_subcommand("explain", "derivation tree of an entailment");
  explain_cmd->add_option("file", file)->required();
  explain_cmd->add_option("subsumee", c_text)->required();
  explain_cmd->add_option("subsumer", d_text)->required();
  add_format(explain_cmd);

  auto* normalize_cmd = app.add_subcommand("normalize", "print the normal form");
  normalize_cmd->add_option("file", file)->required();

  auto* check_cmd = app.add_subcommand("check", "differential run against the model search");
  check_cmd->add_option("--count", count, "number of random kbs");
  check_cmd->add_option("--seed", seed, "generator seed");
  check_cmd->add_option("--max-model-size", max_model_size, "override the search bound");
  check_cmd->add_option("--budget", budget, "search node budget");
  add_format(check_cmd);

  std::vector<const char*> argv;
  argv.push_back("elpp");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (subsumes->parsed()) return cmd_subsumes(file, c_text, d_text, format, want_trace, out, err);
    if (classify_cmd->parsed()) return cmd_classify(file, format, out, err);
    if (explain_cmd->parsed()) return cmd_explain(file, c_text, d_text, format, out, err);
    if (normalize_cmd->parsed()) return cmd_normalize(file, out, err);
    if (check_cmd->parsed())
      return cmd_check(count, seed, max_model_size, budget, format, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.message << "\n";
    return 2;
  } catch (const ElppError& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
  err << "no command given\n";
  return 2;
}

}  // namespace elpp
