#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "fw/experiment.hpp"

namespace fw {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

long parse_long(const std::string& key, const std::string& value) {
  long v = 0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ConfigError("key '" + key + "': expected integer, got '" + value + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ConfigError("key '" + key + "': expected unsigned integer, got '" + value + "'");
  return v;
}

double parse_double(const std::string& key, const std::string& value) {
  double v = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ConfigError("key '" + key + "': expected number, got '" + value + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("key '" + key + "': expected boolean, got '" + value + "'");
}

AlgorithmId parse_algorithm(const std::string& name) {
  if (name == "fw") return AlgorithmId::fw;
  if (name == "fgfw") return AlgorithmId::fgfw;
  if (name == "afgfw") return AlgorithmId::afgfw;
  throw ConfigError("key 'algorithm': unknown algorithm '" + name +
                    "' (expected fw, fgfw or afgfw)");
}

const char* const kKnownKeys[] = {"problem",  "n",       "dataset_path", "algorithm", "K",
                                  "alpha.a",  "alpha.b", "alpha.p",      "gamma.a",   "gamma.b",
                                  "gamma.p",  "runs",    "base_seed",    "x0",        "instrumented"};

}  // namespace

ExperimentSpec parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value', got '" +
                        line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) == std::end(kKnownKeys))
      throw ConfigError("unknown key '" + key + "'");
    if (kv.count(key)) throw ConfigError("key '" + key + "' given more than once");
    if (value.empty()) throw ConfigError("key '" + key + "': empty value");
    kv[key] = value;
  }

  ExperimentSpec spec;

  if (!kv.count("problem")) throw ConfigError("key 'problem' is required");
  spec.problem = kv["problem"];
  if (spec.problem != "quadratic" && spec.problem != "least_squares" &&
      spec.problem != "logistic")
    throw ConfigError("key 'problem': unknown problem '" + spec.problem +
                      "' (expected quadratic, least_squares or logistic)");

  if (kv.count("n")) {
    if (spec.problem == "logistic")
      throw ConfigError("key 'n' is not accepted for problem 'logistic' "
                        "(the dimension is features x classes, fixed by the data)");
    spec.n = parse_long("n", kv["n"]);
    if (spec.n < 1) throw ConfigError("key 'n': must be positive");
  } else if (spec.problem != "logistic") {
    throw ConfigError("key 'n' is required for problem '" + spec.problem + "'");
  }

  if (kv.count("dataset_path")) {
    if (spec.problem != "logistic")
      throw ConfigError("key 'dataset_path' is only accepted for problem 'logistic'");
    spec.dataset_path = kv["dataset_path"];
  }

  if (kv.count("algorithm")) {
    spec.algorithms.clear();
    for (const auto& name : split_list(kv["algorithm"])) {
      const AlgorithmId a = parse_algorithm(name);
      if (std::find(spec.algorithms.begin(), spec.algorithms.end(), a) != spec.algorithms.end())
        throw ConfigError("key 'algorithm': '" + name + "' listed more than once");
      spec.algorithms.push_back(a);
    }
    if (spec.algorithms.empty()) throw ConfigError("key 'algorithm': empty list");
  }

  if (kv.count("K")) {
    spec.iterations = parse_long("K", kv["K"]);
    if (spec.iterations < 0) throw ConfigError("key 'K': must be non-negative");
  }

  const bool alpha_given = kv.count("alpha.a") || kv.count("alpha.b") || kv.count("alpha.p");
  if (alpha_given) {
    PowerSchedule alpha = PowerSchedule::harmonic();
    if (kv.count("alpha.a")) alpha.a = parse_double("alpha.a", kv["alpha.a"]);
    if (kv.count("alpha.b")) alpha.b = parse_double("alpha.b", kv["alpha.b"]);
    if (kv.count("alpha.p")) alpha.p = parse_double("alpha.p", kv["alpha.p"]);
    try {
      alpha.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("keys 'alpha.*': ") + e.what());
    }
    spec.alpha = alpha;
  }

  if (kv.count("gamma.a")) spec.gamma.a = parse_double("gamma.a", kv["gamma.a"]);
  if (kv.count("gamma.b")) spec.gamma.b = parse_double("gamma.b", kv["gamma.b"]);
  if (kv.count("gamma.p")) spec.gamma.p = parse_double("gamma.p", kv["gamma.p"]);
  try {
    spec.gamma.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("keys 'gamma.*': ") + e.what());
  }

  if (kv.count("runs")) {
    spec.runs = parse_long("runs", kv["runs"]);
    if (spec.runs < 1) throw ConfigError("key 'runs': must be at least 1");
  }

  if (kv.count("base_seed")) spec.base_seed = parse_u64("base_seed", kv["base_seed"]);

  if (kv.count("x0") && kv["x0"] != "zero") {
    const auto items = split_list(kv["x0"]);
    Vector x0(static_cast<Index>(items.size()));
    for (std::size_t i = 0; i < items.size(); ++i)
      x0[static_cast<Index>(i)] = parse_double("x0", items[i]);
    spec.x0 = x0;
  }

  if (kv.count("instrumented")) spec.instrumented = parse_bool("instrumented", kv["instrumented"]);

  // afgfw needs alpha_k / gamma_k -> 0; power schedules make that a pure
  // exponent comparison.
  for (const AlgorithmId a : spec.algorithms) {
    if (a == AlgorithmId::afgfw) {
      const PowerSchedule alpha = spec.alpha_for(a);
      if (!(alpha.p > spec.gamma.p))
        throw ConfigError("keys 'alpha.p'/'gamma.p': afgfw requires alpha_k/gamma_k -> 0, i.e. "
                          "alpha.p > gamma.p (got alpha.p=" +
                          std::to_string(alpha.p) + ", gamma.p=" + std::to_string(spec.gamma.p) +
                          ")");
    }
  }

  if (spec.x0 && spec.n > 0 && spec.x0->size() != spec.n)
    throw ConfigError("key 'x0': has " + std::to_string(spec.x0->size()) + " entries but n=" +
                      std::to_string(spec.n));

  return spec;
}

ExperimentSpec parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string describe_spec(const ExperimentSpec& spec) {
  std::ostringstream os;
  os << "problem=" << spec.problem;
  if (spec.problem != "logistic") os << " n=" << spec.n;
  if (spec.dataset_path) os << " dataset_path=" << *spec.dataset_path;
  os << " algorithms=";
  for (std::size_t i = 0; i < spec.algorithms.size(); ++i)
    os << (i ? "," : "") << to_string(spec.algorithms[i]);
  os << " K=" << spec.iterations << " runs=" << spec.runs << " base_seed=" << spec.base_seed;

  bool has_fw = false, has_stochastic = false;
  for (const AlgorithmId a : spec.algorithms)
    (a == AlgorithmId::fw ? has_fw : has_stochastic) = true;
  if (spec.alpha)
    os << " alpha=" << spec.alpha->describe();
  else if (has_stochastic && has_fw)
    os << " alpha=" << PowerSchedule::harmonic().describe()
       << " (fw: " << PowerSchedule::classical().describe() << ")";
  else if (has_fw)
    os << " alpha=" << PowerSchedule::classical().describe();
  else
    os << " alpha=" << PowerSchedule::harmonic().describe();
  os << " gamma=" << spec.gamma.describe();
  os << " x0=" << (spec.x0 ? "explicit" : "zero");
  os << " instrumented=" << (spec.instrumented ? "true" : "false");
  return os.str();
}

}  // namespace fw
