#include "ccsynth/model_io.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace ccsynth {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ModelError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

std::vector<std::string> strings(const json& j, const std::string& where) {
  if (!j.is_array()) throw ModelError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw ModelError(where + ": expected an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::string string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ModelError(where + ": expected a string");
  return j.get<std::string>();
}

TransitionSystem parse_agent(const json& a, std::size_t k) {
  const auto where = "agents[" + std::to_string(k) + "]";
  const auto id = string(field(a, "id", where), where + ".id");
  const auto w = "agent '" + id + "'";
  const auto alpha = strings(field(a, "alphabet", w), w + ".alphabet");
  TransitionSystem ts(id, PropertySet(alpha.begin(), alpha.end()));
  const auto& labels = field(a, "labels", w);
  if (!labels.is_object()) throw ModelError(w + ".labels: expected an object");
  const auto states = strings(field(a, "states", w), w + ".states");
  if (states.empty()) throw ModelError(w + ": no states");
  for (const auto& name : states) {
    if (!labels.contains(name)) throw ModelError(w + ": state '" + name + "' has no label");
    try {
      ts.add_state(name, string(labels.at(name), w + ".labels." + name));
    } catch (const std::invalid_argument& e) {
      throw ModelError(w + ": " + e.what());
    }
  }
  const std::set<std::string> known(states.begin(), states.end());
  for (const auto& [name, _] : labels.items())
    if (!known.contains(name)) throw ModelError(w + ": label for unknown state '" + name + "'");
  const auto lookup = [&](const std::string& name, const std::string& what) {
    try {
      return ts.state(name);
    } catch (const std::out_of_range&) {
      throw ModelError(w + "." + what + ": unknown state '" + name + "'");
    }
  };
  ts.set_initial(lookup(string(field(a, "initial", w), w + ".initial"), "initial"));
  const auto& tr = field(a, "transitions", w);
  if (!tr.is_array()) throw ModelError(w + ".transitions: expected an array of pairs");
  for (const auto& e : tr) {
    const auto pair = strings(e, w + ".transitions");
    if (pair.size() != 2) throw ModelError(w + ".transitions: expected pairs [from, to]");
    ts.add_transition(lookup(pair[0], "transitions"), lookup(pair[1], "transitions"));
  }
  return ts;
}

json lasso_json(const Lasso<std::string>& w) { return {{"prefix", w.prefix}, {"period", w.period}}; }

Lasso<std::string> parse_lasso(const json& j, const std::string& where) {
  Lasso<std::string> w;
  w.prefix = strings(field(j, "prefix", where), where + ".prefix");
  if (j.contains("period")) w.period = strings(j.at("period"), where + ".period");
  return w;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Model parse_model(const std::string& text) {
  const auto j = parse_json(text);
  if (!j.is_object()) throw ModelError("model: expected an object");
  Model m;
  const auto alpha = strings(field(j, "alphabet", "model"), "alphabet");
  m.alphabet = PropertySet(alpha.begin(), alpha.end());
  if (m.alphabet.size() != alpha.size()) throw ModelError("alphabet: duplicate property");
  const auto& agents = field(j, "agents", "model");
  if (!agents.is_array() || agents.empty()) throw ModelError("agents: expected a nonempty array");
  std::vector<std::pair<AgentId, PropertySet>> dist;
  for (std::size_t k = 0; k < agents.size(); ++k) {
    m.agents.push_back(parse_agent(agents[k], k));
    dist.emplace_back(m.agents.back().id(), m.agents.back().alphabet());
  }
  try {
    m.distribution = Distribution(std::move(dist));
  } catch (const std::invalid_argument& e) {
    throw ModelError(std::string("agents: ") + e.what());
  }
  if (m.distribution.global() != m.alphabet)
    throw ModelError("alphabet: must be the union of the agent alphabets");
  if (j.contains("spec")) m.spec = string(j.at("spec"), "spec");
  return m;
}

Model load_model(const std::string& path) { return parse_model(read_file(path)); }

std::string write_strategies(const StrategiesDocument& doc) {
  json agents = json::array();
  for (const auto& s : doc.strategies) {
    json sync = json::array();
    for (const auto& p : s.sync_points)
      sync.push_back({{"index", p.index}, {"property", p.property}, {"co_owners", p.co_owners}});
    agents.push_back({{"id", s.agent}, {"prefix", s.run.prefix}, {"period", s.run.period}, {"sync_points", sync}});
  }
  json out = {{"agents", agents}};
  if (doc.global_word) out["global_word"] = lasso_json(*doc.global_word);
  return out.dump(2) + "\n";
}

StrategiesDocument parse_strategies(const std::string& text) {
  const auto j = parse_json(text);
  StrategiesDocument doc;
  const auto& agents = field(j, "agents", "strategies");
  if (!agents.is_array()) throw ModelError("strategies.agents: expected an array");
  for (std::size_t k = 0; k < agents.size(); ++k) {
    const auto where = "strategies.agents[" + std::to_string(k) + "]";
    const auto& a = agents[k];
    CcStrategy s;
    s.agent = string(field(a, "id", where), where + ".id");
    s.run = parse_lasso(a, where);
    if (a.contains("sync_points")) {
      for (const auto& p : a.at("sync_points")) {
        if (!p.contains("index") || !p.at("index").is_number_unsigned())
          throw ModelError(where + ".sync_points: expected a nonnegative index");
        s.sync_points.push_back({p.at("index").get<std::size_t>(), string(field(p, "property", where), where),
                                 p.contains("co_owners") ? strings(p.at("co_owners"), where) : std::vector<AgentId>{}});
      }
    }
    doc.strategies.push_back(std::move(s));
  }
  if (j.contains("global_word")) doc.global_word = parse_lasso(j.at("global_word"), "global_word");
  return doc;
}

StrategiesDocument load_strategies(const std::string& path) { return parse_strategies(read_file(path)); }

}  // namespace ccsynth
