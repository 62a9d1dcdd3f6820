#pragma once

// Discrete BMS channels represented as finite mixtures of binary symmetric
// channels: a list of mass points (crossover probability, weight).

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace infocomb {

struct MassPoint {
  double eps;     ///< crossover probability in [0, 1/2]
  double weight;  ///< probability mass in (0, 1]

  friend bool operator==(const MassPoint&, const MassPoint&) = default;
};

/// Points closer than this in eps are merged on construction.
inline constexpr double kMergeTolerance = 1e-12;
/// Merged weights below this are dropped.
inline constexpr double kDropWeight = 1e-15;
/// Largest total weight that may be dropped before construction fails.
inline constexpr double kMaxDroppedTotal = 1e-12;
/// Required agreement of the weight sum with 1 for in-library construction.
inline constexpr double kWeightSumTolerance = 1e-12;

/// Immutable BMS channel. Points are sorted strictly by eps, all weights are
/// positive and sum to 1.
class Channel {
 public:
  /// Validates, sorts and merges `points`. Throws DomainError when an eps is
  /// outside [0, 1/2], a weight is negative or non-finite, or the weights do
  /// not sum to 1 within `sum_tolerance`. The result is renormalized.
  static Channel from_points(std::vector<MassPoint> points,
                             double sum_tolerance = kWeightSumTolerance);

  std::span<const MassPoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const MassPoint& operator[](std::size_t i) const { return points_[i]; }

  /// Weight sitting exactly at eps = 0 (the perfect-channel component).
  double perfect_weight() const noexcept;

  friend bool operator==(const Channel&, const Channel&) = default;

 private:
  explicit Channel(std::vector<MassPoint> points) : points_(std::move(points)) {}
  std::vector<MassPoint> points_;
};

/// BSC(eps): a single mass point. Throws DomainError unless 0 <= eps <= 1/2.
Channel bsc(double eps);
/// BEC(h) = (1-h) BSC(0) + h BSC(1/2). Throws DomainError unless 0 <= h <= 1.
Channel bec(double h);
/// alpha * a + (1 - alpha) * b as weight distributions.
Channel mix(const Channel& a, const Channel& b, double alpha);

/// Max over points of |eps| and |weight| differences; infinity if sizes differ.
double max_point_difference(const Channel& a, const Channel& b);

/// Earth-mover (Wasserstein-1) distance between the weight distributions on
/// [0, 1/2]. Robust to nearby but unmerged support points.
double transport_distance(const Channel& a, const Channel& b);

/// Parses a channel document: one `eps weight` pair per line, `#` starts a
/// comment, blank lines ignored. Weights must sum to 1 within 1e-9.
/// Throws ParseError carrying the offending line.
Channel parse_channel(std::string_view text);

/// Canonical document: points sorted by eps, 17 significant digits.
std::string serialize_channel(const Channel& a);

/// `bsc:<eps>`, `bec:<h>`, or a path to a channel document.
Channel load_channel_spec(std::string_view spec);

/// Short human-readable form, e.g. `{(0, 0.7), (0.5, 0.3)}`.
std::string to_string(const Channel& a);

}  // namespace infocomb
