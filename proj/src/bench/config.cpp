#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "stlsq/bench.hpp"

namespace stlsq::bench {

namespace {

using nlohmann::json;

constexpr std::pair<Experiment, std::string_view> kExperimentNames[] = {
    {Experiment::OdeConvergence, "OdeConvergence"},
    {Experiment::OdeAliasing, "OdeAliasing"},
    {Experiment::PdeConvergence, "PdeConvergence"},
    {Experiment::PdeTiming, "PdeTiming"},
    {Experiment::PdeErrorVsTime, "PdeErrorVsTime"},
};

const std::set<std::string> kKnownKeys = {
    "experiment", "methods",          "K",                "L",
    "steps",      "a",                "omega",            "eta0",
    "ode_samples", "N",               "tau",              "c1",
    "c2",         "potential_amplitude", "sigma",         "samples_per_side",
    "reference_steps", "reference_tol", "cg_tol",         "cg_maxit",
    "transform",  "timing_repeats",   "threads",          "paper_scale",
};

bool is_pde(Experiment e) {
  return e == Experiment::PdeConvergence || e == Experiment::PdeTiming ||
         e == Experiment::PdeErrorVsTime;
}

template <typename T>
std::vector<T> list_or_scalar(const json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

}  // namespace

std::string_view experiment_name(Experiment e) {
  for (const auto& [exp, name] : kExperimentNames)
    if (exp == e) return name;
  throw std::invalid_argument("unknown experiment");
}

Experiment parse_experiment(std::string_view name) {
  for (const auto& [exp, n] : kExperimentNames)
    if (n == name) return exp;
  throw std::invalid_argument("unknown experiment '" + std::string(name) + "'");
}

std::size_t collocation_size(std::string_view rule, std::size_t K) {
  // <m>K[+<c>] with optional m, e.g. "K", "K+8", "2K", "3K+1".
  const auto pos = rule.find('K');
  if (pos == std::string_view::npos)
    throw std::invalid_argument("L rule '" + std::string(rule) + "' does not mention K");
  auto parse_uint = [&](std::string_view s) -> std::size_t {
    if (s.empty()) throw std::invalid_argument("bad L rule '" + std::string(rule) + "'");
    std::size_t v = 0;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad L rule '" + std::string(rule) + "'");
      v = 10 * v + static_cast<std::size_t>(c - '0');
    }
    return v;
  };
  const std::size_t mult = pos == 0 ? 1 : parse_uint(rule.substr(0, pos));
  std::size_t offset = 0;
  const auto rest = rule.substr(pos + 1);
  if (!rest.empty()) {
    if (rest.front() != '+') throw std::invalid_argument("bad L rule '" + std::string(rule) + "'");
    offset = parse_uint(rest.substr(1));
  }
  if (mult == 0) throw std::invalid_argument("bad L rule '" + std::string(rule) + "'");
  return mult * K + offset;
}

void ExperimentConfig::validate() const {
  if (methods.empty()) throw std::invalid_argument("config: no methods");
  bool cheb = false, stepper = false;
  for (const auto& m : methods) {
    if (m == "chebyshev") cheb = true;
    else if (m == "crank_nicolson" || m == "rk4") stepper = true;
    else throw std::invalid_argument("config: unknown method '" + m + "'");
  }
  if (cheb && K.empty()) throw std::invalid_argument("config: chebyshev needs a non-empty K list");
  if (cheb && L_rules.empty()) throw std::invalid_argument("config: empty L list");
  for (auto k : K)
    if (k == 0) throw std::invalid_argument("config: K must be positive");
  if (stepper && steps.empty())
    throw std::invalid_argument("config: steppers need a non-empty steps list");
  for (auto s : steps)
    if (s < 2 || s % 2 != 0) throw std::invalid_argument("config: steps must be even and >= 2");
  if (experiment == Experiment::OdeAliasing && (!cheb || stepper))
    throw std::invalid_argument("config: OdeAliasing runs chebyshev only");
  if (is_pde(experiment)) {
    if (N < 4 || N % 2 != 0) throw std::invalid_argument("config: N must be even and >= 4");
    if (tau.empty()) throw std::invalid_argument("config: empty tau list");
    for (double t : tau)
      if (!(t > 0.0)) throw std::invalid_argument("config: tau must be positive");
    if (samples_per_side == 0) throw std::invalid_argument("config: samples_per_side must be > 0");
    for (auto s : steps)
      if ((s / 2) % samples_per_side != 0)
        throw std::invalid_argument(
            "config: steps/2 must be a multiple of samples_per_side so stepper nodes hit the "
            "reference samples");
  }
  if (ode_samples < 2) throw std::invalid_argument("config: ode_samples must be >= 2");
  if (!(cg_tol > 0.0 && cg_tol < 1.0)) throw std::invalid_argument("config: cg_tol outside (0,1)");
  if (timing_repeats == 0) throw std::invalid_argument("config: timing_repeats must be > 0");
}

ExperimentConfig parse_config(std::string_view json_text, bool paper_scale) {
  json doc = json::parse(json_text);
  if (!doc.is_object()) throw std::invalid_argument("config: top level must be an object");
  for (const auto& [key, _] : doc.items())
    if (!kKnownKeys.count(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
  if (paper_scale) {
    if (doc.contains("paper_scale")) {
      doc.merge_patch(doc["paper_scale"]);
    } else {
      doc["N"] = 64;
    }
  }
  if (!doc.contains("experiment")) throw std::invalid_argument("config: missing 'experiment'");

  ExperimentConfig c;
  c.experiment = parse_experiment(doc["experiment"].get<std::string>());
  const bool pde = is_pde(c.experiment);
  if (pde) c.transform = TransformMode::Fast;
  if (c.experiment == Experiment::OdeConvergence) c.methods = {"chebyshev", "crank_nicolson"};
  else if (c.experiment == Experiment::OdeAliasing) c.methods = {"chebyshev"};
  else c.methods = {"chebyshev", "crank_nicolson", "rk4"};
  if (c.experiment == Experiment::OdeAliasing) c.L_rules = {"K", "K+8", "2K"};

  auto get = [&](const char* key, auto& target) {
    if (doc.contains(key)) target = doc[key].get<std::decay_t<decltype(target)>>();
  };
  get("methods", c.methods);
  if (doc.contains("K")) c.K = list_or_scalar<std::size_t>(doc["K"]);
  if (doc.contains("L")) c.L_rules = list_or_scalar<std::string>(doc["L"]);
  if (doc.contains("steps")) c.steps = list_or_scalar<std::size_t>(doc["steps"]);
  get("a", c.a);
  get("omega", c.omega);
  if (doc.contains("eta0")) {
    const auto& e = doc["eta0"];
    if (e.is_array()) {
      if (e.size() != 2) throw std::invalid_argument("config: eta0 must be [re, im]");
      c.eta0 = {e[0].get<double>(), e[1].get<double>()};
    } else {
      c.eta0 = e.get<double>();
    }
  }
  get("ode_samples", c.ode_samples);
  get("N", c.N);
  if (doc.contains("tau")) c.tau = list_or_scalar<double>(doc["tau"]);
  get("c1", c.c1);
  get("c2", c.c2);
  get("potential_amplitude", c.potential_amplitude);
  get("sigma", c.sigma);
  get("samples_per_side", c.samples_per_side);
  get("reference_steps", c.reference_steps);
  get("reference_tol", c.reference_tol);
  get("cg_tol", c.cg_tol);
  get("cg_maxit", c.cg_maxit);
  if (doc.contains("transform")) {
    const auto t = doc["transform"].get<std::string>();
    if (t == "dense") c.transform = TransformMode::Dense;
    else if (t == "fast") c.transform = TransformMode::Fast;
    else throw std::invalid_argument("config: transform must be 'dense' or 'fast'");
  }
  get("timing_repeats", c.timing_repeats);
  get("threads", c.threads);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, bool paper_scale) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), paper_scale);
}

}  // namespace stlsq::bench
