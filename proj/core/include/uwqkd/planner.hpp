#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uwqkd/dataset.hpp"
#include "uwqkd/qber.hpp"

namespace uwqkd {

inline constexpr double kSecurityThreshold = 0.11;

struct SearchOptions {
  double threshold = kSecurityThreshold;
  double resolution_m = 0.5;
  double start_distance_m = 1.0;  // first probe of the doubling bracket
  double max_distance_m = 1000.0;
  // Points sampled across the final bracket to confirm the bound rises with L.
  int monotonicity_samples = 8;
};

enum class SearchStatus { found, infeasible, unbounded };

std::string_view to_string(SearchStatus status);

struct DistanceResult {
  int relays = 0;
  SearchStatus status = SearchStatus::found;
  double achievable_m = 0.0;  // == bracket_lo when found
  double bracket_lo = 0.0;    // bound <= threshold here
  double bracket_hi = 0.0;    // bound > threshold here
  int iterations = 0;         // bound evaluations spent
};

/// Largest total distance (within `resolution_m`) whose bound stays at or
/// below the threshold: doubling from `start_distance_m` to bracket the
/// crossing, then bisection.
///
/// `infeasible` when the threshold is already exceeded at `start_distance_m`;
/// `unbounded` when no crossing exists up to `max_distance_m`. Throws
/// SearchError if sampling finds the bound decreasing inside the bracket.
DistanceResult achievable_distance(const ChannelModel& model, int relays,
                                   const SearchOptions& options = {});

struct RelayOptimum {
  std::optional<int> best_relays;  // empty when no K is feasible
  double achievable_m = 0.0;
  std::vector<DistanceResult> per_relay;
  std::vector<std::string> failures;  // one entry per K whose search threw
};

/// Searches K = 0..max_relays; ties go to the smaller K.
RelayOptimum optimal_relay_count(const ChannelModel& model, int max_relays,
                                 const SearchOptions& options = {}, unsigned threads = 0);

enum class SweepVariable { distance, relay_count, fov, aperture };

std::string_view to_string(SweepVariable variable);
SweepVariable parse_sweep_variable(std::string_view name);

struct SweepSpec {
  SweepVariable variable = SweepVariable::distance;
  // distance: L in m; relay_count: K; fov: degrees; aperture: diameter in m.
  std::vector<double> values;
  // Series evaluated at every value (ignored for relay_count).
  std::vector<int> relays = {0, 1, 2};
  ChannelModel fixed;
  std::string label;  // copied into the "preset" column
  SearchOptions search;

  void validate() const;
};

/// Column sets, fixed per sweep kind.
const std::vector<std::string>& distance_sweep_columns();
const std::vector<std::string>& relay_sweep_columns();

/// Evaluates the sweep; row order is value-major then relay count, whatever
/// `threads` is. Per-point failures become "ERR:<kind>" cells.
Dataset run_sweep(const SweepSpec& spec, unsigned threads = 0);

}  // namespace uwqkd
