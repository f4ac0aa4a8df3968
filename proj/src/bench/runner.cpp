#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "stlsq/bench.hpp"
#include "stlsq/ode_problem.hpp"
#include "stlsq/pde_problem.hpp"

namespace stlsq::bench {

namespace {

struct Measurement {
  double error = 0.0;
  std::optional<std::size_t> iterations;
};

struct Task {
  std::string method;
  std::size_t param = 0;
  std::function<Measurement()> body;
};

std::size_t worker_count(const ExperimentConfig& c, std::size_t tasks) {
  std::size_t n = c.threads;
  if (n == 0) {
    if (const char* env = std::getenv("BENCH_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end == env || *end != '\0' || v <= 0)
        throw std::invalid_argument("BENCH_THREADS must be a positive integer");
      n = static_cast<std::size_t>(v);
    } else {
      n = std::max(1u, std::thread::hardware_concurrency());
    }
  }
  return std::max<std::size_t>(1, std::min(n, tasks));
}

ConvergenceRecord execute(const Task& task, std::size_t repeats) {
  std::vector<double> times;
  Measurement m;
  for (std::size_t r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    m = task.body();
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
  return {task.method, task.param, m.error, m.iterations, times[times.size() / 2]};
}

std::vector<ConvergenceRecord> execute_all(const std::vector<Task>& tasks,
                                           const ExperimentConfig& c) {
  std::vector<ConvergenceRecord> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      try {
        out[i] = execute(tasks[i], c.timing_repeats);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = worker_count(c, tasks.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::string format_double(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

std::string tagged(const std::string& base, const std::vector<std::string>& tags) {
  if (tags.empty()) return base;
  std::string s = base + "[";
  for (std::size_t i = 0; i < tags.size(); ++i) s += (i ? "," : "") + tags[i];
  return s + "]";
}

SteppingMethod stepper(const std::string& m) {
  return m == "rk4" ? SteppingMethod::RK4 : SteppingMethod::CrankNicolson;
}

std::vector<Task> ode_tasks(const ExperimentConfig& c) {
  const CosineOde ode{c.a, c.omega, c.eta0};
  std::vector<Task> tasks;
  for (const auto& method : c.methods) {
    if (method == "chebyshev") {
      for (const auto& rule : c.L_rules) {
        std::vector<std::string> tags;
        if (c.L_rules.size() > 1 || rule != "K") tags.push_back("L=" + rule);
        for (auto K : c.K) {
          const std::size_t L = collocation_size(rule, K);
          tasks.push_back({tagged(method, tags), K, [ode, K, L, &c] {
                             const OdeSolution sol = solve(ode, K, L, c.cg_tol);
                             return Measurement{sup_error(sol.series, ode, c.ode_samples),
                                                sol.diagnostics.iterations};
                           }});
        }
      }
    } else {
      for (auto n : c.steps)
        tasks.push_back({method, n, [ode, n, m = stepper(method)] {
                           return Measurement{stepper_sup_error(ode, m, n), std::nullopt};
                         }});
    }
  }
  return tasks;
}

std::vector<ConvergenceRecord> run_pde(const ExperimentConfig& c) {
  const std::vector<double> samples = symmetric_samples(c.samples_per_side);
  const MovingCosinePotential pot{c.c1, c.c2, c.potential_amplitude};

  // Problems and references are built up front so tasks only read them.
  std::vector<PeriodicSchrodinger> problems;
  std::vector<ReferenceSolution> refs;
  for (double tau : c.tau) {
    PeriodicSchrodinger p{c.N, tau, pot, default_initial_datum(c.N, c.sigma)};
    p.validate();
    refs.push_back(reference_solution(p, samples, c.reference_steps, c.reference_tol));
    problems.push_back(std::move(p));
  }

  std::vector<Task> tasks;
  for (std::size_t ti = 0; ti < c.tau.size(); ++ti) {
    const PeriodicSchrodinger* p = &problems[ti];
    const ReferenceSolution* ref = &refs[ti];
    std::vector<std::string> tags;
    if (c.tau.size() > 1) tags.push_back("tau=" + format_double(c.tau[ti]));
    for (const auto& method : c.methods) {
      if (method == "chebyshev") {
        for (const auto& rule : c.L_rules) {
          auto t = tags;
          if (c.L_rules.size() > 1 || rule != "K") t.push_back("L=" + rule);
          for (auto K : c.K) {
            const std::size_t L = collocation_size(rule, K);
            tasks.push_back({tagged(method, t), K, [p, ref, K, L, &c] {
                               const InteractionSolution sol =
                                   solve(*p, K, L, c.cg_tol, c.cg_maxit, c.transform);
                               return Measurement{c0_error(sol, *ref), sol.diagnostics.iterations};
                             }});
          }
        }
      } else {
        for (auto n : c.steps) {
          tasks.push_back({tagged(method, tags), n, [p, ref, n, m = stepper(method)] {
                             const SteppedTrajectory traj = integrate_interaction(*p, m, n);
                             double err = 0.0;
                             for (std::size_t i = 0; i < ref->times.size(); ++i) {
                               const auto idx = static_cast<std::size_t>(
                                   std::lround((ref->times[i] + 1.0) * 0.5 * double(n)));
                               err = std::max(
                                   err, (traj.states[idx] - ref->states[i].coeffs()).norm());
                             }
                             return Measurement{err, std::nullopt};
                           }});
        }
      }
    }
  }
  return execute_all(tasks, c);
}

}  // namespace

std::vector<ConvergenceRecord> run(const ExperimentConfig& config) {
  config.validate();
  switch (config.experiment) {
    case Experiment::OdeConvergence:
    case Experiment::OdeAliasing: return execute_all(ode_tasks(config), config);
    default: return run_pde(config);
  }
}

RunOutput run_and_write(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  RunOutput out;
  out.records = run(config);
  std::filesystem::create_directories(out_dir);
  const std::string name(experiment_name(config.experiment));
  out.csv = out_dir / (name + ".csv");
  out.svg = out_dir / (name + ".svg");
  {
    std::ofstream csv(out.csv, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + out.csv.string());
    write_csv(csv, out.records);
  }
  std::ofstream svg(out.svg, std::ios::binary);
  if (!svg) throw std::runtime_error("cannot write " + out.svg.string());
  svg << render_svg(out.records, default_axes(config.experiment), name);
  return out;
}

}  // namespace stlsq::bench
