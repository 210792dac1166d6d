#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "fw/experiment.hpp"
#include "fw/problems/idx.hpp"
#include "fw/problems/least_squares.hpp"
#include "fw/problems/logistic.hpp"
#include "fw/problems/quadratic.hpp"

namespace fw {

namespace {

// Benchmark instances are fixed: the same config always names the same
// problem, independent of base_seed (seeds only drive the algorithms).
constexpr std::uint64_t kQuadraticInstanceSeed = 7;
constexpr std::uint64_t kLeastSquaresInstanceSeed = 11;
constexpr std::uint64_t kSyntheticDataSeed = 0xDA7A5EEDull;

constexpr long kQuadraticReferenceBudget = 1000000;
constexpr long kLogisticReferenceBudget = 100000;

// Reference values are expensive; share them across repeated builds of the
// same instance within a process.
double cached_reference(const std::string& key, const Objective& obj, const FeasibleSet& set,
                        long budget, const Vector& x0) {
  static std::mutex mutex;
  static std::map<std::string, double> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const double f_star = reference_value_by_fw(obj, set, budget, x0);
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key, f_star);
  return f_star;
}

}  // namespace

ProblemInstance build_problem(const ExperimentSpec& spec) {
  ProblemInstance inst;
  if (spec.problem == "quadratic") {
    auto obj = std::make_shared<Quadratic>(Quadratic::seeded(spec.n, kQuadraticInstanceSeed));
    inst.set = std::make_shared<L1Ball>(spec.n, 1.0);
    inst.x0 = spec.x0 ? *spec.x0 : Vector::Zero(spec.n);
    obj->set_reference_value(cached_reference(obj->id() + "|" + inst.set->id(), *obj, *inst.set,
                                              kQuadraticReferenceBudget, Vector::Zero(spec.n)));
    inst.objective = obj;
  } else if (spec.problem == "least_squares") {
    auto obj = std::make_shared<LeastSquares>(
        LeastSquares::seeded(3 * spec.n, spec.n, kLeastSquaresInstanceSeed));
    inst.set = std::make_shared<L1Ball>(spec.n, 1.0);
    inst.x0 = spec.x0 ? *spec.x0 : Vector::Zero(spec.n);
    obj->set_reference_value(cached_reference(obj->id() + "|" + inst.set->id(), *obj, *inst.set,
                                              kQuadraticReferenceBudget, Vector::Zero(spec.n)));
    inst.objective = obj;
  } else if (spec.problem == "logistic") {
    std::shared_ptr<const Dataset> data;
    std::string fingerprint;
    if (spec.dataset_path) {
      data = std::make_shared<Dataset>(load_idx_directory(*spec.dataset_path));
      fingerprint = "idx:" + *spec.dataset_path + ":" + std::to_string(data->instance_count());
    } else {
      data = std::make_shared<Dataset>(generate_synthetic(2000, 20, 10, kSyntheticDataSeed));
      fingerprint = "synthetic:2000x20x10:" + std::to_string(kSyntheticDataSeed);
    }
    auto obj = std::make_shared<MultinomialLogistic>(data);
    inst.set = obj->constraint_set(1.0);
    const Index n = obj->dimension();
    inst.x0 = spec.x0 ? *spec.x0 : Vector::Zero(n);
    if (inst.x0.size() != n)
      throw ConfigError("key 'x0': has " + std::to_string(inst.x0.size()) +
                        " entries but the logistic problem has dimension " + std::to_string(n));
    obj->set_reference_value(cached_reference("logistic|" + fingerprint, *obj, *inst.set,
                                              kLogisticReferenceBudget, Vector::Zero(n)));
    inst.objective = obj;
  } else {
    throw ConfigError("key 'problem': unknown problem '" + spec.problem + "'");
  }

  if (!inst.set->contains(inst.x0))
    throw ConfigError("key 'x0': start point is not feasible");
  return inst;
}

AlgorithmCurve aggregate_traces(AlgorithmId algorithm,
                                std::vector<std::pair<long, Trace>> indexed_traces) {
  std::sort(indexed_traces.begin(), indexed_traces.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  AlgorithmCurve curve;
  curve.algorithm = algorithm;
  if (indexed_traces.empty()) return curve;

  const std::size_t iterations = indexed_traces.front().second.records.size();
  curve.rows.resize(iterations);
  std::vector<double> sub_mean(iterations, 0.0), sub_m2(iterations, 0.0);
  long count = 0;
  double final_f_sum = 0.0;

  for (const auto& [run_index, trace] : indexed_traces) {
    if (trace.records.size() != iterations)
      throw std::invalid_argument("aggregate_traces: traces have different lengths");
    ++count;
    for (std::size_t i = 0; i < iterations; ++i) {
      const TraceRecord& rec = trace.records[i];
      AggregateRow& row = curve.rows[i];
      row.k = rec.k;
      if (rec.suboptimality) {
        row.has_suboptimality = true;
        const double delta = *rec.suboptimality - sub_mean[i];
        sub_mean[i] += delta / static_cast<double>(count);
        sub_m2[i] += delta * (*rec.suboptimality - sub_mean[i]);
      }
      if (rec.fw_gap) {
        row.has_fw_gap = true;
        row.mean_fw_gap += *rec.fw_gap;
      }
      if (rec.estimator_error) {
        row.has_estimator_error = true;
        row.mean_estimator_error += *rec.estimator_error;
      }
      row.mean_wall_time_us += rec.wall_time_us;
    }
    if (iterations > 0) final_f_sum += trace.records.back().f_value;
  }

  const double denom = static_cast<double>(count);
  for (std::size_t i = 0; i < iterations; ++i) {
    AggregateRow& row = curve.rows[i];
    row.mean_suboptimality = sub_mean[i];
    row.std_suboptimality = count > 1 ? std::sqrt(sub_m2[i] / static_cast<double>(count - 1)) : 0.0;
    row.mean_fw_gap /= denom;
    row.mean_estimator_error /= denom;
    row.mean_wall_time_us /= denom;
  }
  curve.final_f = iterations > 0 ? final_f_sum / denom : std::nan("");
  return curve;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, int jobs) {
  const ProblemInstance inst = build_problem(spec);

  ExperimentResult result;
  result.spec = spec;
  result.f_star = inst.objective->reference_value();

  struct Task {
    std::size_t algo_index;
    long run_index;
  };
  std::vector<Task> tasks;
  for (std::size_t a = 0; a < spec.algorithms.size(); ++a)
    for (long r = 0; r < spec.runs; ++r) tasks.push_back({a, r});

  std::vector<Trace> traces(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error) return;
      }
      const Task task = tasks[t];
      RunConfig cfg;
      cfg.algorithm = spec.algorithms[task.algo_index];
      cfg.iterations = spec.iterations;
      cfg.alpha = spec.alpha_for(cfg.algorithm);
      if (cfg.algorithm == AlgorithmId::afgfw) cfg.gamma = spec.gamma;
      cfg.x0 = inst.x0;
      cfg.seed = spec.base_seed + static_cast<std::uint64_t>(task.run_index);
      cfg.instrumented = spec.instrumented;
      try {
        traces[t] = run(*inst.objective, *inst.set, cfg);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int worker_count = std::max(1, std::min(jobs, static_cast<int>(tasks.size())));
  if (worker_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // Reduction in (algorithm, run) order, independent of completion order.
  for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
    std::vector<std::pair<long, Trace>> indexed;
    indexed.reserve(spec.runs);
    for (std::size_t t = 0; t < tasks.size(); ++t)
      if (tasks[t].algo_index == a) indexed.emplace_back(tasks[t].run_index, std::move(traces[t]));
    result.curves.push_back(aggregate_traces(spec.algorithms[a], std::move(indexed)));
  }
  return result;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_csv(const ExperimentResult& result, std::ostream& out, bool include_timings) {
  const ExperimentSpec& spec = result.spec;
  out << "# frankwolfe benchmark\n";
  out << "# " << describe_spec(spec) << "\n";
  out << "# run r uses seed base_seed + r, r = 0.." << (spec.runs - 1) << "\n";
  if (result.f_star) out << "# f_star=" << fmt(*result.f_star) << "\n";

  out << "k,algorithm,mean_suboptimality,std_suboptimality,mean_log10_suboptimality";
  if (spec.instrumented) out << ",mean_fw_gap,mean_estimator_err";
  if (include_timings) out << ",mean_wall_time_us";
  out << "\n";

  for (const AlgorithmCurve& curve : result.curves) {
    const std::string name = to_string(curve.algorithm);
    for (const AggregateRow& row : curve.rows) {
      out << row.k << ',' << name << ',';
      if (row.has_suboptimality) {
        out << fmt(row.mean_suboptimality) << ',' << fmt(row.std_suboptimality) << ',';
        if (row.mean_suboptimality > 0.0)
          out << fmt(std::log10(row.mean_suboptimality));
        else
          out << "nan";
      } else {
        out << ",,";
      }
      if (spec.instrumented) {
        out << ',';
        if (row.has_fw_gap) out << fmt(row.mean_fw_gap);
        out << ',';
        if (row.has_estimator_error) out << fmt(row.mean_estimator_error);
      }
      if (include_timings) out << ',' << fmt(row.mean_wall_time_us);
      out << "\n";
    }
  }
}

std::string csv_string(const ExperimentResult& result, bool include_timings) {
  std::ostringstream os;
  write_csv(result, os, include_timings);
  return os.str();
}

std::string summarize(const ExperimentResult& result) {
  std::ostringstream os;
  os << describe_spec(result.spec) << "\n";
  if (result.f_star) os << "f_star = " << fmt(*result.f_star) << "\n";
  for (const AlgorithmCurve& curve : result.curves) {
    os << to_string(curve.algorithm) << ": ";
    if (curve.rows.empty()) {
      os << "empty trace (K = 0)\n";
      continue;
    }
    const AggregateRow& last = curve.rows.back();
    os << "final mean f = " << fmt(curve.final_f);
    if (last.has_suboptimality) {
      os << ", final mean suboptimality = " << fmt(last.mean_suboptimality);
      if (last.mean_suboptimality > 0.0)
        os << " (log10 = " << fmt(std::log10(last.mean_suboptimality)) << ")";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace fw
