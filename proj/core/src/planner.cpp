#include "uwqkd/planner.hpp"

#include <cmath>
#include <exception>
#include <sstream>

#include "parallel.hpp"
#include "uwqkd/errors.hpp"
#include "uwqkd/units.hpp"

namespace uwqkd {
namespace {

class BoundProbe {
 public:
  BoundProbe(const ChannelModel& model, int relays) : model_(model), relays_(relays) {}

  double operator()(double distance_m) {
    ++count_;
    return qber_upper_bound(model_, LinkLayout(distance_m, relays_)).qber_bound;
  }

  int count() const { return count_; }

 private:
  const ChannelModel& model_;
  int relays_;
  int count_ = 0;
};

void check_monotone(BoundProbe& bound, double from, double to, int samples, int relays) {
  if (samples < 2 || !(to > from)) return;
  double previous = bound(from);
  for (int i = 1; i < samples; ++i) {
    const double L = from + (to - from) * i / (samples - 1);
    const double q = bound(L);
    if (q < previous - 1e-12 * std::fabs(previous)) {
      std::ostringstream os;
      os << "achievable_distance: bound decreases inside the search bracket [" << from << ", "
         << to << "] m for K = " << relays << " (" << previous << " -> " << q << " at " << L
         << " m)";
      throw SearchError(os.str());
    }
    previous = q;
  }
}

std::string error_sentinel(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const ConvergenceError&) {
    return "ERR:quadrature";
  } catch (const SearchError&) {
    return "ERR:search";
  } catch (const NoCorrectionData&) {
    return "ERR:correction";
  } catch (const ConsistencyError&) {
    return "ERR:consistency";
  } catch (const DomainError&) {
    return "ERR:domain";
  } catch (...) {
    return "ERR:internal";
  }
}

std::string describe(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const std::exception& e) {
    return e.what();
  } catch (...) {
    return "unknown error";
  }
}

void push_evaluation(std::vector<Cell>& row, const QberEvaluation& ev) {
  row.emplace_back(ev.qber_bound);
  row.emplace_back(ev.h_hop);
  row.emplace_back(ev.mu_hop);
  row.emplace_back(ev.n_B0);
  row.emplace_back(ev.n_D);
  row.emplace_back(ev.n_N_hat);
  row.emplace_back(ev.a);
  row.emplace_back(ev.b);
  row.emplace_back(ev.c);
}

void push_failed_evaluation(std::vector<Cell>& row, const std::string& sentinel) {
  row.emplace_back(sentinel);
  for (int i = 0; i < 8; ++i) row.emplace_back(std::monostate{});
}

ChannelModel apply_value(ChannelModel model, SweepVariable variable, double value) {
  switch (variable) {
    case SweepVariable::fov:
      model.system.fov_rad = deg_to_rad(value);
      break;
    case SweepVariable::aperture:
      model.system.aperture_diameter_m = value;
      break;
    case SweepVariable::distance:
    case SweepVariable::relay_count:
      break;
  }
  return model;
}

struct DistancePoint {
  std::optional<QberEvaluation> evaluation;
  std::optional<double> exact;
  std::string sentinel;
};

struct RelayPoint {
  std::optional<DistanceResult> result;
  std::optional<QberEvaluation> at_distance;
  std::string sentinel;
};

Dataset distance_sweep(const SweepSpec& spec, unsigned threads) {
  const std::size_t per_value = spec.relays.size();
  const std::size_t n = spec.values.size() * per_value;
  std::vector<DistancePoint> points(n);
  std::vector<std::optional<double>> exact(spec.values.size());

  detail::parallel_for(n, threads, [&](std::size_t i) {
    const double L = spec.values[i / per_value];
    const int K = spec.relays[i % per_value];
    try {
      points[i].evaluation = qber_upper_bound(spec.fixed, LinkLayout(L, K));
    } catch (...) {
      points[i].sentinel = error_sentinel(std::current_exception());
    }
    if (i % per_value == 0) {
      try {
        exact[i / per_value] = qber_nonturbulent(spec.fixed, L);
      } catch (...) {
      }
    }
  });

  Dataset data;
  data.columns = distance_sweep_columns();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = points[i];
    std::vector<Cell> row;
    row.emplace_back(spec.label);
    row.emplace_back(spec.values[i / per_value]);
    row.emplace_back(static_cast<std::int64_t>(spec.relays[i % per_value]));
    if (p.evaluation) {
      push_evaluation(row, *p.evaluation);
      row.emplace_back(static_cast<std::int64_t>(p.evaluation->exceeds_half ? 1 : 0));
    } else {
      push_failed_evaluation(row, p.sentinel);
      row.emplace_back(std::monostate{});
    }
    const auto& e = exact[i / per_value];
    row.emplace_back(e ? Cell{*e} : Cell{std::string("ERR:quadrature")});
    data.rows.push_back(std::move(row));
  }
  return data;
}

Dataset relay_sweep(const SweepSpec& spec, unsigned threads) {
  std::vector<double> values;
  std::vector<int> relays;
  if (spec.variable == SweepVariable::relay_count) {
    for (double v : spec.values) {
      values.push_back(v);
      relays.push_back(static_cast<int>(v));
    }
  } else {
    for (double v : spec.values) {
      for (int K : spec.relays) {
        values.push_back(v);
        relays.push_back(K);
      }
    }
  }

  const std::size_t n = values.size();
  std::vector<RelayPoint> points(n);
  detail::parallel_for(n, threads, [&](std::size_t i) {
    try {
      const ChannelModel model = apply_value(spec.fixed, spec.variable, values[i]);
      points[i].result = achievable_distance(model, relays[i], spec.search);
      if (points[i].result->status != SearchStatus::infeasible) {
        points[i].at_distance =
            qber_upper_bound(model, LinkLayout(points[i].result->achievable_m, relays[i]));
      }
    } catch (...) {
      points[i].sentinel = error_sentinel(std::current_exception());
    }
  });

  // Best K per swept value, smallest K on ties.
  std::vector<bool> optimal(n, false);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    std::optional<std::size_t> best;
    while (j < n && values[j] == values[i]) {
      const auto& r = points[j].result;
      if (r && r->status == SearchStatus::found &&
          (!best || r->achievable_m > points[*best].result->achievable_m)) {
        best = j;
      }
      ++j;
    }
    if (best && spec.variable != SweepVariable::relay_count) optimal[*best] = true;
    i = j;
  }
  if (spec.variable == SweepVariable::relay_count) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& r = points[i].result;
      if (r && r->status == SearchStatus::found &&
          (!best || r->achievable_m > points[*best].result->achievable_m)) {
        best = i;
      }
    }
    if (best) optimal[*best] = true;
  }

  Dataset data;
  data.columns = relay_sweep_columns();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = points[i];
    std::vector<Cell> row;
    row.emplace_back(spec.label);
    row.emplace_back(std::string(to_string(spec.variable)));
    row.emplace_back(values[i]);
    row.emplace_back(static_cast<std::int64_t>(relays[i]));
    if (p.result) {
      const auto& r = *p.result;
      row.emplace_back(std::string(to_string(r.status)));
      row.emplace_back(r.status == SearchStatus::infeasible ? Cell{} : Cell{r.achievable_m});
      row.emplace_back(r.bracket_lo);
      row.emplace_back(r.bracket_hi);
      row.emplace_back(static_cast<std::int64_t>(r.iterations));
      row.emplace_back(static_cast<std::int64_t>(optimal[i] ? 1 : 0));
      if (p.at_distance) {
        push_evaluation(row, *p.at_distance);
      } else {
        for (int k = 0; k < 9; ++k) row.emplace_back(std::monostate{});
      }
    } else {
      row.emplace_back(std::string("error"));
      row.emplace_back(p.sentinel);
      for (int k = 0; k < 3; ++k) row.emplace_back(std::monostate{});
      row.emplace_back(std::int64_t{0});
      push_failed_evaluation(row, p.sentinel);
    }
    data.rows.push_back(std::move(row));
  }
  return data;
}

}  // namespace

std::string_view to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::found:
      return "found";
    case SearchStatus::infeasible:
      return "infeasible";
    case SearchStatus::unbounded:
      return "unbounded";
  }
  return "unknown";
}

DistanceResult achievable_distance(const ChannelModel& model, int relays,
                                   const SearchOptions& options) {
  if (!(options.threshold > 0.0 && options.threshold < 0.5 + 1e-12)) {
    throw DomainError("achievable_distance: threshold must lie in (0, 0.5]");
  }
  if (!(options.resolution_m > 0.0) || !(options.start_distance_m > 0.0) ||
      !(options.max_distance_m > options.start_distance_m)) {
    throw DomainError(
        "achievable_distance: need resolution > 0 and 0 < start distance < max distance");
  }

  BoundProbe bound(model, relays);
  DistanceResult result;
  result.relays = relays;

  double lo = options.start_distance_m;
  if (bound(lo) > options.threshold) {
    result.status = SearchStatus::infeasible;
    result.bracket_lo = 0.0;
    result.bracket_hi = lo;
    result.iterations = bound.count();
    return result;
  }

  double hi = lo;
  for (;;) {
    const double next = std::min(2.0 * hi, options.max_distance_m);
    if (bound(next) > options.threshold) {
      lo = hi;
      hi = next;
      break;
    }
    hi = next;
    if (next >= options.max_distance_m) {
      result.status = SearchStatus::unbounded;
      result.achievable_m = hi;
      result.bracket_lo = hi;
      result.bracket_hi = hi;
      result.iterations = bound.count();
      return result;
    }
  }

  const double bracket_from = lo;
  const double bracket_to = hi;
  while (hi - lo > options.resolution_m) {
    const double mid = 0.5 * (lo + hi);
    if (bound(mid) <= options.threshold) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  check_monotone(bound, bracket_from, bracket_to, options.monotonicity_samples, relays);

  result.status = SearchStatus::found;
  result.achievable_m = lo;
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  result.iterations = bound.count();
  return result;
}

RelayOptimum optimal_relay_count(const ChannelModel& model, int max_relays,
                                 const SearchOptions& options, unsigned threads) {
  if (max_relays < 0) throw DomainError("optimal_relay_count: max relays must be >= 0");
  const std::size_t n = static_cast<std::size_t>(max_relays) + 1;
  std::vector<std::optional<DistanceResult>> results(n);
  std::vector<std::string> errors(n);
  detail::parallel_for(n, threads, [&](std::size_t K) {
    try {
      results[K] = achievable_distance(model, static_cast<int>(K), options);
    } catch (...) {
      errors[K] = describe(std::current_exception());
    }
  });

  RelayOptimum optimum;
  for (std::size_t K = 0; K < n; ++K) {
    if (!results[K]) {
      optimum.failures.push_back("K = " + std::to_string(K) + ": " + errors[K]);
      DistanceResult failed;
      failed.relays = static_cast<int>(K);
      failed.status = SearchStatus::infeasible;
      optimum.per_relay.push_back(failed);
      continue;
    }
    const DistanceResult& r = *results[K];
    optimum.per_relay.push_back(r);
    if (r.status == SearchStatus::infeasible) continue;
    if (!optimum.best_relays || r.achievable_m > optimum.achievable_m) {
      optimum.best_relays = static_cast<int>(K);
      optimum.achievable_m = r.achievable_m;
    }
  }
  return optimum;
}

std::string_view to_string(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::distance:
      return "distance";
    case SweepVariable::relay_count:
      return "relay_count";
    case SweepVariable::fov:
      return "fov";
    case SweepVariable::aperture:
      return "aperture";
  }
  return "unknown";
}

SweepVariable parse_sweep_variable(std::string_view name) {
  if (name == "distance") return SweepVariable::distance;
  if (name == "relay_count") return SweepVariable::relay_count;
  if (name == "fov") return SweepVariable::fov;
  if (name == "aperture") return SweepVariable::aperture;
  throw ConfigError("unknown sweep variable \"" + std::string(name) +
                        "\" (expected distance, relay_count, fov or aperture)",
                    "variable");
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep: values must be nonempty", "values");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw ConfigError("sweep: values must be strictly increasing", "values");
    }
  }
  if (!(search.threshold > 0.0 && search.threshold < 0.5)) {
    throw ConfigError("sweep: threshold ∈ (0,0.5) violated", "threshold");
  }
  if (variable != SweepVariable::relay_count && relays.empty()) {
    throw ConfigError("sweep: relays must be nonempty", "relays");
  }
  for (int K : relays) {
    if (K < 0) throw ConfigError("sweep: relay counts must be >= 0", "relays");
  }
  if (variable == SweepVariable::relay_count) {
    for (double v : values) {
      if (v < 0.0 || v != std::floor(v)) {
        throw ConfigError("sweep: relay_count values must be nonnegative integers", "values");
      }
    }
  }
}

const std::vector<std::string>& distance_sweep_columns() {
  static const std::vector<std::string> columns = {
      "preset", "L_m",  "K",   "qber_bound", "h_hop",        "mu_hop",
      "n_B0",   "n_D",  "n_N_hat", "a",      "b",            "c",
      "exceeds_half", "qber_nonturbulent_direct"};
  return columns;
}

const std::vector<std::string>& relay_sweep_columns() {
  static const std::vector<std::string> columns = {
      "preset",  "variable", "value", "K",     "status",  "achievable_L_m", "bracket_lo_m",
      "bracket_hi_m", "iterations", "is_optimal", "qber_bound", "h_hop", "mu_hop",
      "n_B0", "n_D", "n_N_hat", "a", "b", "c"};
  return columns;
}

Dataset run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  if (spec.variable == SweepVariable::distance) return distance_sweep(spec, threads);
  return relay_sweep(spec, threads);
}

}  // namespace uwqkd
