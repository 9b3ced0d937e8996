#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ccsynth/model_io.hpp"
#include "ccsynth/simulate.hpp"
#include "ccsynth/translate.hpp"

using namespace ccsynth;

namespace {

enum Exit { Ok = 0, InputError = 1, InternalError = 2, NotClosed = 3, Empty = 4, SizeGuard = 5, SimulationFailed = 6 };

struct Common {
  std::string model;
  std::string spec;
  std::string out;
  std::size_t max_product_states = kDefaultMaxProductStates;
};

// The spec flag takes either a formula or a file holding one.
std::string spec_text(const Common& c, const Model& m) {
  if (c.spec.empty()) {
    if (m.spec.empty()) throw ModelError("no specification: the model has none and --spec is not given");
    return m.spec;
  }
  std::error_code ec;
  if (std::filesystem::is_regular_file(c.spec, ec)) {
    auto text = read_file(c.spec);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    return text;
  }
  return c.spec;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ModelError("cannot write '" + path + "'");
  f << text;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string show_run(const Lasso<std::string>& run) {
  std::string out = join(run.prefix);
  if (!run.is_finite()) out += (run.prefix.empty() ? "(" : " (") + join(run.period) + ")^w";
  return out;
}

int check_closure(const Common& c) {
  const auto m = load_model(c.model);
  const auto f = parse_ltl(spec_text(c, m), m.alphabet);
  const auto b_phi = reduce(ltl_to_buchi(f, m.alphabet));
  const auto b_not = reduce(ltl_to_buchi_negated(f, m.alphabet));
  const auto v = is_trace_closed(b_phi, b_not, m.distribution);
  if (v.closed) {
    std::cout << "Closed\n";
  } else {
    std::cout << "NotClosed\n";
    std::cout << "accepted: " << to_string(v.witness->first) << "\n";
    std::cout << "rejected: " << to_string(v.witness->second) << "\n";
  }
  std::cout << "spec states " << b_phi.num_states() << ", negation states " << b_not.num_states()
            << ", commutation states " << v.commutation_states << ", product states " << v.product_states << "\n";
  return v.closed ? Ok : NotClosed;
}

int synth(const Common& c) {
  const auto m = load_model(c.model);
  const auto f = parse_ltl(spec_text(c, m), m.alphabet);
  const auto r = synthesize(f, m.distribution, m.agents, {c.max_product_states, true});
  // the report goes to stderr when the document goes to stdout
  std::ostream& log = (c.out.empty() || c.out == "-") ? std::cerr : std::cout;
  log << "verdict " << to_string(r.verdict) << "\n";
  if (r.verdict == Verdict::NotTraceClosed) {
    log << "accepted: " << to_string(r.closure_witness->first) << "\n";
    log << "rejected: " << to_string(r.closure_witness->second) << "\n";
    return NotClosed;
  }
  log << "spec states " << r.stats.spec_states << ", local specs " << join([&] {
    std::vector<std::string> xs;
    for (auto n : r.stats.local_spec_states) xs.push_back(std::to_string(n));
    return xs;
  }()) << ", local products " << join([&] {
    std::vector<std::string> xs;
    for (auto n : r.stats.local_product_states) xs.push_back(std::to_string(n));
    return xs;
  }()) << "\n";
  if (r.verdict == Verdict::EmptyIntersection) return Empty;
  log << "product states " << r.stats.product_states << " (bound " << r.stats.product_bound << ")\n";
  log << "word " << to_string(r.word) << "\n";
  for (const auto& s : r.strategies)
    log << "agent " << s.agent << (s.run.is_finite() ? " finite: " : " lasso: ") << show_run(s.run) << "\n";
  const auto& v = r.verification;
  log << "verification " << (v.ok() ? "passed" : "FAILED") << ": trajectories " << (v.trajectories_valid ? "valid" : "invalid")
      << ", team language " << (v.nonempty ? "nonempty" : "empty") << ", inclusion "
      << (v.included ? "certified" : "refuted") << ", team states " << v.team_states << "\n";
  for (const auto& p : v.problems) log << "  " << p << "\n";
  emit(c.out, write_strategies({r.strategies, properties_of(r.word)}));
  return v.ok() ? Ok : InternalError;
}

struct SimulateArgs {
  std::string strategies;
  std::uint64_t seed = 0;
  std::size_t runs = 1;
  std::size_t max_events = 1000;
  std::vector<std::string> hide;
};

int simulate(const Common& c, const SimulateArgs& a) {
  const auto m = load_model(c.model);
  const auto doc = load_strategies(a.strategies);
  for (const auto& s : doc.strategies) system_of(m.agents, s.agent);
  if (!c.out.empty()) std::filesystem::create_directories(c.out);
  const PropertySet hidden(a.hide.begin(), a.hide.end());
  std::size_t deadlocks = 0, consistent = 0;
  for (std::size_t i = 0; i < a.runs; ++i) {
    const auto seed = a.seed + i;
    const auto t = run_simulation(doc.strategies, m.agents, m.distribution, seed, a.max_events);
    const bool ok = check_prefix_consistency(t, doc.strategies, m.agents, m.distribution);
    deadlocks += t.outcome == Outcome::Deadlock;
    consistent += ok;
    std::cout << "seed " << seed << ": " << to_string(t.outcome) << ", " << t.events.size() << " events, "
              << t.word.size() << " letters, " << (ok ? "consistent" : "INCONSISTENT") << "\n";
    for (const auto& e : t.waits)
      std::cout << "  agent " << e.waiting << " waits at " << e.property << " for agent " << e.on << "\n";
    if (!hidden.empty()) std::cout << "  word: " << join(without(t.word, hidden)) << "\n";
    if (!c.out.empty()) emit((std::filesystem::path(c.out) / ("trace_" + std::to_string(seed) + ".txt")).string(), export_trace(t));
  }
  std::cout << "runs " << a.runs << ", deadlocks " << deadlocks << ", consistent " << consistent << "/" << a.runs << "\n";
  return deadlocks == 0 && consistent == a.runs ? Ok : SimulationFailed;
}

int export_dot_cmd(const Common& c, const std::string& which) {
  const auto m = load_model(c.model);
  const auto f = parse_ltl(spec_text(c, m), m.alphabet);
  const auto b_phi = reduce(ltl_to_buchi(f, m.alphabet));
  if (which == "bphi") {
    emit(c.out, export_dot(b_phi, "B_phi"));
    return Ok;
  }
  const auto local_product = [&](const AgentId& id) {
    const auto bi = reduce(project_spec(b_phi, m.distribution.alphabet(id)));
    return reduce(implementable_local(extend_with_start(system_of(m.agents, id)), bi).automaton);
  };
  const auto agent_of = [&](const std::string& prefix) -> std::optional<AgentId> {
    if (which.rfind(prefix, 0) != 0) return std::nullopt;
    const auto id = which.substr(prefix.size());
    if (std::ranges::find(m.distribution.agents(), id) == m.distribution.agents().end())
      throw ModelError("unknown agent '" + id + "'");
    return id;
  };
  if (auto id = agent_of("bi:")) {
    emit(c.out, export_dot(reduce(project_spec(b_phi, m.distribution.alphabet(*id))), "B_" + *id));
    return Ok;
  }
  if (auto id = agent_of("ei:")) {
    emit(c.out, export_dot(local_product(*id), "E_" + *id));
    return Ok;
  }
  if (which == "product") {
    std::vector<MixedBuchiAutomaton> parts;
    for (const auto& id : m.distribution.agents()) parts.push_back(local_product(id));
    parts.emplace_back(b_phi);
    emit(c.out, export_dot(SyncProduct(std::move(parts)), c.max_product_states, "product"));
    return Ok;
  }
  throw ModelError("unknown automaton '" + which + "' (expected bphi, bi:AGENT, ei:AGENT or product)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesis of communicating strategies for multi-agent LTL specifications"};
  app.require_subcommand(1);
  Common common;
  if (const char* env = std::getenv("CCSYNTH_MAX_PRODUCT_STATES")) {
    try {
      common.max_product_states = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: CCSYNTH_MAX_PRODUCT_STATES is not a number: " << env << "\n";
      return InputError;
    }
  }
  const auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", common.model, "model JSON file")->required();
    sub->add_option("--spec", common.spec, "LTL formula or file holding one (default: the model's spec)");
  };

  auto* closure = app.add_subcommand("check-closure", "decide whether the specification is trace-closed");
  add_model(closure);

  auto* synth_cmd = app.add_subcommand("synth", "synthesize and verify one strategy per agent");
  add_model(synth_cmd);
  synth_cmd->add_option("--out", common.out, "strategies document (default: stdout)");
  synth_cmd->add_option("--max-product-states", common.max_product_states, "size guard for product automata");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "execute strategies under random interleavings");
  sim_cmd->add_option("--model", common.model, "model JSON file")->required();
  sim_cmd->add_option("--strategies", sim.strategies, "strategies document")->required();
  sim_cmd->add_option("--seed", sim.seed, "seed of the first run");
  sim_cmd->add_option("--runs", sim.runs, "number of runs, seeds seed, seed+1, ...");
  sim_cmd->add_option("--max-events", sim.max_events, "events per run");
  sim_cmd->add_option("--out", common.out, "directory for trace files");
  sim_cmd->add_option("--hide", sim.hide, "print each word without these properties")->delimiter(',');

  std::string which;
  auto* dot_cmd = app.add_subcommand("export-dot", "render an automaton of the pipeline as GraphViz");
  add_model(dot_cmd);
  dot_cmd->add_option("which", which, "bphi | bi:AGENT | ei:AGENT | product")->required();
  dot_cmd->add_option("--out", common.out, "output file (default: stdout)");
  dot_cmd->add_option("--max-product-states", common.max_product_states, "size guard for the product");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return InputError;
  }

  try {
    if (*closure) return check_closure(common);
    if (*synth_cmd) return synth(common);
    if (*sim_cmd) return simulate(common, sim);
    if (*dot_cmd) return export_dot_cmd(common, which);
  } catch (const SizeGuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return SizeGuard;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return InputError;
  } catch (const LtlParseError& e) {
    std::cerr << "error: specification: " << e.what() << "\n";
    return InputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return InputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return InternalError;
  }
  return InternalError;
}
