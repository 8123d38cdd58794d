#include "balgraph/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <iomanip>
#include <json.hpp>
#include <ostream>

#include "balgraph/balance.hpp"
#include "balgraph/digraph.hpp"
#include "balgraph/enumeration.hpp"
#include "balgraph/group.hpp"

namespace balgraph::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string graph_path;
  std::string group_spec;
  std::string target = "edges";
  std::string mode = "flexible";
  bool json = false;
  bool show_elements = false;
  std::optional<std::uint64_t> budget;
  std::optional<std::size_t> limit;
  std::uint64_t seed = 0;
};

std::uint64_t oracle_budget(const Options& opt) {
  if (opt.budget) return *opt.budget;
  if (const char* env = std::getenv("BG_ORACLE_BUDGET")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(std::string("BG_ORACLE_BUDGET is not a nonnegative integer: '") + env + "'");
  }
  return kDefaultOracleBudget;
}

std::string format_values(const FiniteGroup& g, const std::vector<Element>& values, bool names) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += names ? g.element_name(values[i]) : std::to_string(values[i].index);
  }
  return out;
}

// Full labelings print as "<vertex values> | <edge values>".
std::string format_labeling(const FiniteGroup& g, const Labeling& l, bool names) {
  if (const auto* f = std::get_if<EdgeLabeling>(&l)) return format_values(g, f->values, names);
  const auto& h = std::get<FullLabeling>(l);
  return format_values(g, h.vertex_values, names) + " | " + format_values(g, h.edge_values, names);
}

Json count_report(const Options& opt, const FiniteGroup& g, const Digraph& d, const StructureReport& s,
                  const BalancedCount& c) {
  Json j;
  j["mode"] = opt.mode;
  j["target"] = opt.target;
  j["group_spec"] = opt.group_spec;
  j["group_order"] = g.order();
  j["involution_count"] = g.involutions().size();
  j["vertices"] = d.vertex_count();
  j["edges"] = d.edge_count();
  j["bipartite"] = s.bipartite;
  j["scc_count"] = s.scc_count;
  j["cross_scc_edges"] = s.cross_scc_edges;
  j["s_exponent"] = c.s;
  j["t_exponent"] = c.t;
  j["count_decimal"] = c.value.str();
  return j;
}

void print_aligned(std::ostream& out, const Json& j) {
  std::size_t width = 0;
  for (const auto& [key, value] : j.items()) width = std::max(width, key.size());
  for (const auto& [key, value] : j.items()) {
    out << std::left << std::setw(static_cast<int>(width)) << key << "  "
        << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
}

int cmd_analyze(const Options& opt, std::ostream& out) {
  const Digraph d = load_graph_file(opt.graph_path);
  const StructureReport s = analyze(d);
  Json j;
  j["vertices"] = d.vertex_count();
  j["edges"] = d.edge_count();
  j["weakly_connected"] = s.weakly_connected;
  j["bipartite"] = s.bipartite;
  j["scc_count"] = s.scc_count;
  j["cross_scc_edges"] = s.cross_scc_edges;
  j["scc_assignment"] = s.scc_assignment;
  out << j.dump(2) << "\n";
  return kSuccess;
}

int cmd_count(const Options& opt, std::ostream& out) {
  const FiniteGroup g = make_group(opt.group_spec);
  const Digraph d = load_graph_file(opt.graph_path);
  const BalancedCount c = count(g, d, parse_target(opt.target), parse_mode(opt.mode));
  const Json j = count_report(opt, g, d, analyze(d), c);
  if (opt.json)
    out << j.dump(2) << "\n";
  else
    print_aligned(out, j);
  return kSuccess;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  const FiniteGroup g = make_group(opt.group_spec);
  const Digraph d = load_graph_file(opt.graph_path);
  const Target target = parse_target(opt.target);
  const Mode mode = parse_mode(opt.mode);
  const BalancedCount formula = count(g, d, target, mode);
  BigInt oracle;
  try {
    oracle = brute_force_count(g, d, target, mode, oracle_budget(opt));
  } catch (const OracleBudgetExceeded& e) {
    err << e.what() << "\n";
    if (opt.json) {
      Json j;
      j["status"] = "BUDGET";
      j["required_candidates"] = e.required().str();
      j["budget"] = e.budget();
      out << j.dump(2) << "\n";
    }
    return kBudgetExceeded;
  }
  const bool pass = formula.value == oracle;
  if (opt.json) {
    Json j;
    j["status"] = pass ? "PASS" : "FAIL";
    j["formula"] = formula.value.str();
    j["oracle"] = oracle.str();
    j["s_exponent"] = formula.s;
    j["t_exponent"] = formula.t;
    out << j.dump(2) << "\n";
  } else {
    out << (pass ? "PASS" : "FAIL") << " (formula " << formula.value << (pass ? " = " : " != ") << "oracle "
        << oracle << ")\n";
  }
  return pass ? kSuccess : kVerifyFailed;
}

int cmd_enumerate(const Options& opt, std::ostream& out) {
  const FiniteGroup g = make_group(opt.group_spec);
  const Digraph d = load_graph_file(opt.graph_path);
  auto stream = enumerate_all(g, d, parse_target(opt.target), parse_mode(opt.mode));
  std::size_t emitted = 0;
  while (auto l = stream.next()) {
    if (opt.limit && emitted == *opt.limit) {
      out << "# truncated after " << emitted << " labelings\n";
      break;
    }
    out << format_labeling(g, *l, opt.show_elements) << "\n";
    ++emitted;
  }
  return kSuccess;
}

int cmd_sample(const Options& opt, std::ostream& out) {
  const FiniteGroup g = make_group(opt.group_spec);
  const Digraph d = load_graph_file(opt.graph_path);
  const Labeling l = sample_uniform(g, d, parse_target(opt.target), parse_mode(opt.mode), opt.seed);
  out << format_labeling(g, l, opt.show_elements) << "\n";
  return kSuccess;
}

int cmd_group_info(const Options& opt, std::ostream& out) {
  const FiniteGroup g = make_group(opt.group_spec);
  Json j;
  j["order"] = g.order();
  j["involution_count"] = g.involutions().size();
  j["abelian"] = g.is_abelian();
  out << j.dump(2) << "\n";
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Count, enumerate, sample and verify balanced group-valued labelings of directed graphs", "balgraph"};
  app.require_subcommand(1);
  Options opt;

  auto add_graph = [&](CLI::App* cmd) {
    cmd->add_option("graph", opt.graph_path, "Edge-list graph file")->required();
  };
  auto add_problem = [&](CLI::App* cmd) {
    add_graph(cmd);
    cmd->add_option("--group", opt.group_spec, "Group spec, e.g. symmetric:3")->required();
    cmd->add_option("--target", opt.target, "edges | full")->check(CLI::IsMember({"edges", "full"}));
    cmd->add_option("--mode", opt.mode, "flexible | rigid")->check(CLI::IsMember({"flexible", "rigid"}));
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Structural report of a graph as JSON");
  add_graph(analyze_cmd);

  auto* count_cmd = app.add_subcommand("count", "Closed-form number of balanced labelings");
  add_problem(count_cmd);
  count_cmd->add_flag("--json", opt.json, "JSON output");

  auto* verify_cmd = app.add_subcommand("verify", "Compare the closed form with exhaustive search");
  add_problem(verify_cmd);
  verify_cmd->add_option("--budget", opt.budget, "Maximum candidate labelings (overrides BG_ORACLE_BUDGET)");
  verify_cmd->add_flag("--json", opt.json, "JSON output");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "List every balanced labeling, one per line");
  add_problem(enumerate_cmd);
  enumerate_cmd->add_option("--limit", opt.limit, "Stop after N labelings");
  enumerate_cmd->add_flag("--show-elements", opt.show_elements, "Print element names instead of indices");

  auto* sample_cmd = app.add_subcommand("sample", "Draw one balanced labeling uniformly at random");
  add_problem(sample_cmd);
  sample_cmd->add_option("--seed", opt.seed, "64-bit seed");
  sample_cmd->add_flag("--show-elements", opt.show_elements, "Print element names instead of indices");

  auto* group_cmd = app.add_subcommand("group-info", "Order, involution count and commutativity of a group");
  group_cmd->add_option("--group", opt.group_spec, "Group spec")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(opt, out);
    if (*count_cmd) return cmd_count(opt, out);
    if (*verify_cmd) return cmd_verify(opt, out, err);
    if (*enumerate_cmd) return cmd_enumerate(opt, out);
    if (*sample_cmd) return cmd_sample(opt, out);
    if (*group_cmd) return cmd_group_info(opt, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace balgraph::cli
