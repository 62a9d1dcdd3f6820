#pragma once

// Coordinate search for extremal channels of Phi(rho(a)) under one linear
// constraint. The power a^{[check] k} is replaced by the average over all
// k-subsets of d independent channels a_1..a_d; with the other coordinates
// fixed the objective is linear in the measure of a_i, so one coordinate is
// optimized over two-point channels (one constraint, two support points).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "infocomb/area.hpp"
#include "infocomb/channel.hpp"
#include "infocomb/functionals.hpp"
#include "infocomb/polynomial.hpp"
#include "infocomb/series.hpp"

namespace infocomb {

enum class Sense { Minimize, Maximize };

/// offset + scale * Phi~_rho(a_1..a_d).
struct ObjectiveSpec {
  Polynomial rho;
  Functional tag = Functional::H;
  int d = 1;
  double scale = 1.0;
  double offset = 0.0;
  Sense sense = Sense::Minimize;

  /// The area quantity at entropy h: -h + (d_l - 1) H~(rho_kappa), d = d_r.
  static ObjectiveSpec area(const EnsembleParams& p, double h, Sense sense);
};

/// Constraint g(a) = target for a linear functional g in {E, H, B}.
struct Constraint {
  Functional tag = Functional::H;
  double target = 0.5;
};

/// Channel alpha BSC(eps1) + (1 - alpha) BSC(eps2) with eps1 <= eps2.
struct TwoPointChannel {
  double eps1 = 0.0;
  double eps2 = 0.5;
  double alpha = 1.0;

  Channel channel() const;
};

/// Solves alpha g(eps1) + (1 - alpha) g(eps2) = target. Requires
/// g(eps1) <= target <= g(eps2); a degenerate pair yields alpha = 1.
TwoPointChannel constrained_pair(const Constraint& c, double eps1, double eps2);

/// offset + scale * (sum_k c_k C(d,k)^{-1} sum_{|S|=k} Phi(check-convolution over S)).
/// Evaluated through elementary symmetric polynomials of the moments.
/// Throws UsageError when coords.size() != spec.d or d < deg(rho).
SeriesValue symmetrized_objective(const ObjectiveSpec& spec, std::span<const Channel> coords,
                                  double tol = 1e-13);

struct OptimizerOptions {
  int grid = 256;            ///< uniform eps grid on [0, 1/2], endpoints included
  int refine_levels = 4;     ///< local refinement passes, each halving the step
  int max_sweeps = 50;
  double tol = 1e-10;        ///< stop once a full sweep improves less than this
  double series_tol = 1e-13;
  double verdict_threshold = 1e-3;
};

struct OptimizerState {
  std::vector<TwoPointChannel> coords;
  double objective = 0.0;  ///< offset + scale * Phi~
  int sweeps = 0;
  double last_improvement = 0.0;
};

/// Best two-point replacement for coordinate i with the others fixed. The
/// candidates are the grid, the constraint-matched BSC point and the
/// current pair, followed by local refinement around the winner. The
/// returned pair never scores worse than the current one.
TwoPointChannel best_coordinate(const ObjectiveSpec& spec, std::span<const TwoPointChannel> coords, std::size_t i,
                                const Constraint& constraint, const OptimizerOptions& opts);

enum class ShapeVerdict { AllEqualBsc, AllEqualBec, Mixed };
std::string_view to_string(ShapeVerdict v);

/// The constraint-matched BSC and BEC.
Channel matched_bsc(const Constraint& c);
Channel matched_bec(const Constraint& c);

/// Classifies a tuple by the transport distance of every coordinate to the
/// matched BSC / BEC.
ShapeVerdict classify(std::span<const TwoPointChannel> coords, const Constraint& c, double threshold);

struct SweepRecord {
  int sweep;
  double objective;
  std::vector<TwoPointChannel> coords;
};

struct DescentResult {
  OptimizerState state;
  ShapeVerdict verdict = ShapeVerdict::Mixed;
  Sense sense = Sense::Minimize;
  bool converged = false;
  /// Objective after initialization and after every coordinate update.
  std::vector<double> trace;
  /// Sweep 0 is the random start.
  std::vector<SweepRecord> sweeps;
  /// Whether the trace never moves against the optimization sense.
  bool monotone() const;
};

/// Random feasible start (grid pairs drawn from `seed`), then coordinate
/// updates i = 1..d per sweep until the sweep improvement drops below
/// opts.tol or opts.max_sweeps is reached.
DescentResult coordinate_descent(const ObjectiveSpec& spec, const Constraint& constraint, std::uint64_t seed,
                                 const OptimizerOptions& opts = {});

/// seed,sweep,objective,eps1_1,eps2_1,alpha_1,... then a verdict row.
std::string run_log_csv(const DescentResult& result, std::uint64_t seed);

}  // namespace infocomb
