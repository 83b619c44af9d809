#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pnb/checker.hpp"
#include "pnb/counter.hpp"
#include "pnb/dot.hpp"
#include "pnb/oracle.hpp"
#include "pnb/parser.hpp"
#include "pnb/stats.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pnb::InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct CommonFlags {
  std::string reduce = "standard";
  bool no_memo = false;
  std::string mode = "boundary-complete";
  size_t budget = pnb::kDefaultStateBudget;
  std::string stats_path;

  CLI::Option* reduce_opt = nullptr;
  CLI::Option* mode_opt = nullptr;
  CLI::Option* budget_opt = nullptr;

  void attach(CLI::App* cmd) {
    reduce_opt = cmd->add_option("--reduce", reduce, "Reduction level: none|trim|standard")
                     ->check(CLI::IsMember({"none", "trim", "standard"}));
    cmd->add_flag("--no-memo", no_memo, "Disable memoisation of compositions");
    mode_opt = cmd->add_option("--mode", mode, "Step semantics: full|boundary-complete")
                   ->check(CLI::IsMember({"full", "boundary-complete"}));
    budget_opt = cmd->add_option("--budget", budget, "State budget per translation");
    cmd->add_option("--stats", stats_path, "Write a JSON stats report to this path");
  }

  pnb::CheckOptions apply(const pnb::ProblemFile* pf) const {
    pnb::CheckOptions opts;
    if (pf) opts = pf->check_options(opts);
    if (!reduce_opt || reduce_opt->count() > 0 || !pf || !pf->options.reduce)
      opts.reduce_level = reduce == "none"   ? pnb::ReduceLevel::none
                          : reduce == "trim" ? pnb::ReduceLevel::trim
                                             : pnb::ReduceLevel::standard;
    if (no_memo) opts.memo = false;
    if (!mode_opt || mode_opt->count() > 0 || !pf || !pf->options.mode)
      opts.semantics_mode =
          mode == "full" ? pnb::StepMode::full : pnb::StepMode::boundary_complete;
    if (budget_opt && budget_opt->count() > 0) opts.state_budget = budget;
    else if (pf && pf->options.budget) opts.state_budget = *pf->options.budget;
    return opts;
  }
};

int run_check(const std::string& path, const CommonFlags& flags) {
  pnb::ProblemFile pf = pnb::parse_problem(read_file(path));
  if (!pf.expr) throw pnb::InputError("'" + path + "' contains no expr line");
  pnb::CheckOptions opts = flags.apply(&pf);
  pnb::CheckResult result = pnb::check(*pf.expr, opts);
  std::cout << (result.reachable ? "REACHABLE" : "UNREACHABLE") << "\n";
  if (!flags.stats_path.empty())
    pnb::write_stats(flags.stats_path, pnb::make_stats(result, opts));
  return result.reachable ? 0 : 1;
}

int run_oracle(const std::string& path, size_t budget, const std::string& stats_path) {
  pnb::ProblemFile pf = pnb::parse_problem(read_file(path));
  if (!pf.expr) throw pnb::InputError("'" + path + "' contains no expr line");
  pnb::FlatProblem problem = pnb::flatten(*pf.expr);

  auto t0 = std::chrono::steady_clock::now();
  pnb::SearchResult result = pnb::search(problem, budget);
  double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  std::cout << (result.reachable ? "REACHABLE" : "UNREACHABLE") << "\n";
  if (result.distance) std::cout << "distance: " << *result.distance << "\n";
  if (result.witness) {
    std::cout << "witness:\n";
    for (const auto& firing : result.witness->firings) std::cout << "  " << firing << "\n";
  }

  if (!stats_path.empty()) {
    pnb::CheckOptions opts;
    opts.engine = pnb::Engine::monolithic;
    opts.state_budget = budget;
    pnb::CheckResult cr;
    cr.reachable = result.reachable;
    cr.total_time_ms = ms;
    pnb::write_stats(stats_path, pnb::make_stats(cr, opts));
  }
  return result.reachable ? 0 : 1;
}

int run_bench(const std::string& family, int n, const std::string& engine,
              const CommonFlags& flags) {
  if (family != "counter") throw pnb::InputError("unknown bench family '" + family + "'");
  pnb::ExprPtr expr = pnb::counter_expr(n);
  pnb::CheckOptions opts = flags.apply(nullptr);

  bool reachable = false;
  auto t0 = std::chrono::steady_clock::now();
  if (engine == "monolithic") {
    pnb::FlatProblem problem = pnb::flatten(*expr);
    reachable = pnb::search(problem, std::max(opts.state_budget, pnb::kOracleStateBudget))
                    .reachable;
  } else {
    reachable = pnb::check(*expr, opts).reachable;
  }
  double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  std::cout << family << "," << n << "," << engine << "," << flags.reduce << ","
            << (opts.memo ? "on" : "off") << "," << flags.mode << ","
            << (reachable ? "reachable" : "unreachable") << "," << ms << "\n";
  return 0;
}

// Node paths look like "root", "root.l", "root.l.r".
const pnb::Expr* locate(const pnb::Expr* e, const std::string& path) {
  if (path == "root" || path.empty()) return e;
  std::string rest = path;
  if (rest.rfind("root.", 0) == 0) rest = rest.substr(5);
  for (size_t i = 0; i < rest.size(); ++i) {
    char c = rest[i];
    if (c == '.') continue;
    if (e->kind == pnb::Expr::Kind::leaf) return nullptr;
    if (c == 'l')
      e = e->left.get();
    else if (c == 'r')
      e = e->right.get();
    else
      return nullptr;
  }
  return e;
}

int run_dot(const std::string& path, const std::string& net_name, const std::string& nfa_node,
            const CommonFlags& flags, bool want_net, bool want_nfa) {
  pnb::ProblemFile pf = pnb::parse_problem(read_file(path));
  if (want_nfa) {
    if (!pf.expr) throw pnb::InputError("'" + path + "' contains no expr line");
    const pnb::Expr* node = locate(pf.expr.get(), nfa_node);
    if (!node) throw pnb::InputError("no expression node at path '" + nfa_node + "'");
    pnb::Nfa a = pnb::evaluate(*node, flags.apply(&pf));
    std::cout << pnb::emit_dot_nfa(a);
    return 0;
  }
  if (!net_name.empty()) {
    auto net = pf.net(net_name);
    if (!net) throw pnb::InputError("no net named '" + net_name + "' in '" + path + "'");
    std::cout << pnb::emit_dot_net(*net);
    return 0;
  }
  // Default: the flattened expression net with its initial marking.
  if (!pf.expr) throw pnb::InputError("'" + path + "' contains no expr line");
  pnb::FlatProblem problem = pnb::flatten(*pf.expr);
  std::cout << pnb::emit_dot_net(problem.net, &problem.init);
  (void)want_net;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compositional reachability and coverability checking for nets with boundaries"};
  app.require_subcommand(1);

  std::string check_file;
  CommonFlags check_flags;
  auto* check_cmd = app.add_subcommand("check", "Decide reachability compositionally");
  check_cmd->add_option("file", check_file, "Problem file")->required();
  check_flags.attach(check_cmd);

  std::string oracle_file, oracle_stats;
  size_t oracle_budget = pnb::kOracleStateBudget;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "Decide by brute-force search on the flattened net");
  oracle_cmd->add_option("file", oracle_file, "Problem file")->required();
  oracle_cmd->add_option("--budget", oracle_budget, "Marking budget for the search");
  oracle_cmd->add_option("--stats", oracle_stats, "Write a JSON stats report to this path");

  std::string bench_family = "counter", bench_engine = "compositional";
  int bench_n = 3;
  CommonFlags bench_flags;
  auto* bench_cmd = app.add_subcommand("bench", "Time a built-in problem family");
  bench_cmd->add_option("family", bench_family, "Problem family (counter)")->required();
  bench_cmd->add_option("--n", bench_n, "Family size parameter")->required();
  bench_cmd->add_option("--engine", bench_engine, "compositional|monolithic")
      ->check(CLI::IsMember({"compositional", "monolithic"}));
  bench_flags.attach(bench_cmd);

  std::string dot_file, dot_net, dot_node;
  CommonFlags dot_flags;
  auto* dot_cmd = app.add_subcommand("dot", "Render a net or an automaton as DOT");
  dot_cmd->add_option("file", dot_file, "Problem file")->required();
  auto* net_opt = dot_cmd->add_option("--net", dot_net, "Render this named net")
                      ->expected(0, 1)
                      ->default_str("");
  auto* nfa_opt =
      dot_cmd->add_option("--nfa", dot_node, "Render the automaton of this expression node");
  net_opt->excludes(nfa_opt);
  dot_flags.attach(dot_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (check_cmd->parsed()) return run_check(check_file, check_flags);
    if (oracle_cmd->parsed()) return run_oracle(oracle_file, oracle_budget, oracle_stats);
    if (bench_cmd->parsed()) return run_bench(bench_family, bench_n, bench_engine, bench_flags);
    if (dot_cmd->parsed())
      return run_dot(dot_file, dot_net, dot_node, dot_flags, net_opt->count() > 0,
                     nfa_opt->count() > 0);
  } catch (const pnb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
