#include "infocomb/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "infocomb/error.hpp"
#include "infocomb/kernels.hpp"
#include "infocomb/sampling.hpp"

namespace infocomb {

namespace {

// Moments of one coordinate split into the constant part carried by eps = 0
// and the geometrically decaying rest.
struct SplitMoments {
  double w0 = 0.0;
  std::vector<double> y, w;
  double ymax = 0.0;
  double wdecay = 0.0;
};

SplitMoments split(const Channel& c) {
  SplitMoments s;
  for (const auto& p : c.points()) {
    const double x = 1.0 - 2.0 * p.eps;
    const double y = x * x;
    if (x == 1.0) {
      s.w0 += p.weight;
    } else if (y > 0.0) {
      s.y.push_back(y);
      s.w.push_back(p.weight);
      s.ymax = std::max(s.ymax, y);
      s.wdecay += p.weight;
    }
  }
  return s;
}

std::vector<double> decaying_moments(const SplitMoments& s, std::size_t count) {
  std::vector<double> out(count);
  kernels::power_sums(s.y, s.w, out);
  return out;
}

// Smallest N with tail(N) * lipschitz * sum_j W_j ymax_j^(N+1) <= tol.
std::size_t choose_terms(Functional tag, double lipschitz, std::span<const SplitMoments* const> parts, double tol) {
  auto predicted = [&](std::size_t N) {
    double decay = 0.0;
    for (const SplitMoments* s : parts) decay += s->wdecay * std::pow(s->ymax, double(N + 1));
    return coefficient_tail(tag, N) * lipschitz * decay;
  };
  bool any = false;
  for (const SplitMoments* s : parts) any = any || s->wdecay > 0.0;
  if (!any || lipschitz == 0.0) return 0;
  std::size_t hi = 16;
  while (hi < kMaxSeriesTerms && predicted(hi) > tol) hi = std::min(2 * hi, kMaxSeriesTerms);
  std::size_t lo = hi / 2;
  while (lo + 1 < hi) {
    const std::size_t mid = (lo + hi) / 2;
    (predicted(mid) > tol ? lo : hi) = mid;
  }
  return hi;
}

// e[0..D] elementary symmetric polynomials of g.
void elementary(std::span<const double> g, int D, std::vector<double>& e) {
  e.assign(std::size_t(D + 1), 0.0);
  e[0] = 1.0;
  int filled = 0;
  for (double v : g) {
    filled = std::min(filled + 1, D);
    for (int k = filled; k >= 1; --k) e[std::size_t(k)] += v * e[std::size_t(k - 1)];
  }
}

std::vector<double> inverse_binomials(int d, int D) {
  std::vector<double> inv(std::size_t(D + 1), 0.0);
  double binom = 1.0;
  for (int k = 1; k <= D; ++k) {
    binom = binom * double(d - k + 1) / double(k);
    inv[std::size_t(k)] = 1.0 / binom;
  }
  return inv;
}

double matched_eps(const Constraint& c) {
  switch (c.tag) {
    case Functional::E: return std::clamp(c.target, 0.0, 0.5);
    case Functional::H: return h2_inv(c.target);
    case Functional::B: return 0.5 * (1.0 - kernel_inv(Functional::B, c.target));
  }
  return 0.0;
}

void validate(const ObjectiveSpec& spec, std::size_t coords) {
  if (spec.tag == Functional::E) throw UsageError("symmetrized objective needs functional H or B");
  if (spec.d < spec.rho.degree())
    throw UsageError("symmetrized objective needs d >= deg(rho) (d=" + std::to_string(spec.d) +
                     ", deg=" + std::to_string(spec.rho.degree()) + ")");
  if (coords != std::size_t(spec.d))
    throw UsageError("expected " + std::to_string(spec.d) + " coordinates, got " + std::to_string(coords));
}

std::vector<Channel> to_channels(std::span<const TwoPointChannel> coords) {
  std::vector<Channel> out;
  out.reserve(coords.size());
  for (const auto& c : coords) out.push_back(c.channel());
  return out;
}

bool erasure_like(const TwoPointChannel& c) {
  const bool ends1 = c.eps1 == 0.0 || c.eps1 == 0.5;
  const bool ends2 = c.eps2 == 0.0 || c.eps2 == 0.5;
  return c.alpha >= 1.0 ? ends1 : c.alpha <= 0.0 ? ends2 : ends1 && ends2;
}

// Other coordinates with constant moments make the objective affine in the
// constrained functional of coordinate i, hence constant on the feasible set.
bool flat_in(const ObjectiveSpec& spec, const Constraint& c, std::span<const TwoPointChannel> coords, std::size_t i) {
  if (c.tag != spec.tag) return false;
  for (std::size_t j = 0; j < coords.size(); ++j)
    if (j != i && !erasure_like(coords[j])) return false;
  return true;
}

double sense_sign(Sense s) { return s == Sense::Minimize ? 1.0 : -1.0; }

}  // namespace

ObjectiveSpec ObjectiveSpec::area(const EnsembleParams& p, double h, Sense sense) {
  return ObjectiveSpec{p.area_polynomial(), Functional::H, p.dr(), double(p.dl() - 1), -h, sense};
}

Channel TwoPointChannel::channel() const {
  if (alpha >= 1.0 || eps1 == eps2) return bsc(eps1);
  if (alpha <= 0.0) return bsc(eps2);
  return Channel::from_points({{eps1, alpha}, {eps2, 1.0 - alpha}});
}

TwoPointChannel constrained_pair(const Constraint& c, double eps1, double eps2) {
  if (eps1 > eps2) std::swap(eps1, eps2);
  const double g1 = pointwise(c.tag, eps1);
  const double g2 = pointwise(c.tag, eps2);
  if (!(g1 <= c.target + 1e-15 && c.target <= g2 + 1e-15))
    throw DomainError("constrained_pair: target outside [g(eps1), g(eps2)]");
  if (g2 - g1 <= 1e-15) return {eps1, eps2, 1.0};
  return {eps1, eps2, std::clamp((g2 - c.target) / (g2 - g1), 0.0, 1.0)};
}

SeriesValue symmetrized_objective(const ObjectiveSpec& spec, std::span<const Channel> coords, double tol) {
  validate(spec, coords.size());
  const int d = spec.d, D = spec.rho.degree();
  const auto inv_binom = inverse_binomials(d, D);

  std::vector<SplitMoments> parts;
  std::vector<const SplitMoments*> refs;
  parts.reserve(coords.size());
  for (const auto& c : coords) parts.push_back(split(c));
  for (const auto& p : parts) refs.push_back(&p);

  std::vector<double> e, g(coords.size());
  auto q = [&](std::span<const double> values) {
    elementary(values, D, e);
    double s = 0.0;
    for (int k = 1; k <= D; ++k) s += spec.rho.coeff(k) * e[std::size_t(k)] * inv_binom[std::size_t(k)];
    return s;
  };

  for (std::size_t j = 0; j < parts.size(); ++j) g[j] = parts[j].w0;
  const double q_limit = q(g);

  double lipschitz = 0.0;
  for (int k = 1; k <= D; ++k) lipschitz += std::abs(spec.rho.coeff(k)) * double(k) / double(d);
  const std::size_t N = choose_terms(spec.tag, lipschitz, refs, tol);

  double sum = 0.0, bound = 0.0;
  if (N > 0) {
    std::vector<std::vector<double>> delta;
    for (const auto& p : parts) delta.push_back(decaying_moments(p, N + 1));
    const auto a = coefficients(spec.tag, N);
    for (std::size_t n = 0; n < N; ++n) {
      for (std::size_t j = 0; j < parts.size(); ++j) g[j] = parts[j].w0 + delta[j][n];
      sum += a[n] * (q(g) - q_limit);
    }
    double tail_decay = 0.0;
    for (const auto& dl : delta) tail_decay += dl[N];
    bound = coefficient_tail(spec.tag, N) * lipschitz * tail_decay;
  }
  const double phi = spec.rho(1.0) - q_limit - sum;
  return {spec.offset + spec.scale * phi, std::abs(spec.scale) * bound, N};
}

TwoPointChannel best_coordinate(const ObjectiveSpec& spec, std::span<const TwoPointChannel> coords, std::size_t i,
                                const Constraint& constraint, const OptimizerOptions& opts) {
  validate(spec, coords.size());
  if (i >= coords.size()) throw UsageError("coordinate index out of range");
  if (opts.grid < 2) throw UsageError("grid needs at least two points");
  const int d = spec.d, D = spec.rho.degree();
  const auto inv_binom = inverse_binomials(d, D);

  // With the others fixed, Phi~ = const - sum_n a_n gamma_{i,n} B_n where
  // B_n = sum_k c_k e_{k-1}(others at n) / C(d,k); against a BSC(eps) the
  // coordinate contributes S(x) = sum_n a_n B_n x^{2n}, x = 1 - 2 eps.
  std::vector<SplitMoments> others;
  std::vector<const SplitMoments*> refs;
  for (std::size_t j = 0; j < coords.size(); ++j)
    if (j != i) others.push_back(split(coords[j].channel()));
  for (const auto& p : others) refs.push_back(&p);

  std::vector<double> e, g(others.size());
  auto weight_of = [&](std::span<const double> values) {
    elementary(values, D - 1, e);
    double s = 0.0;
    for (int k = 1; k <= D; ++k) s += spec.rho.coeff(k) * e[std::size_t(k - 1)] * inv_binom[std::size_t(k)];
    return s;
  };
  for (std::size_t j = 0; j < others.size(); ++j) g[j] = others[j].w0;
  const double b_limit = weight_of(g);

  double lipschitz = 0.0;
  if (d > 1)
    for (int k = 2; k <= D; ++k)
      lipschitz += std::abs(spec.rho.coeff(k)) * double(k) * double(k - 1) / (double(d) * double(d - 1));
  const std::size_t N = choose_terms(spec.tag, lipschitz, refs, opts.series_tol);

  std::vector<double> series(N);
  if (N > 0) {
    std::vector<std::vector<double>> delta;
    for (const auto& p : others) delta.push_back(decaying_moments(p, N));
    const auto a = coefficients(spec.tag, N);
    for (std::size_t n = 0; n < N; ++n) {
      for (std::size_t j = 0; j < others.size(); ++j) g[j] = others[j].w0 + delta[j][n];
      series[n] = a[n] * (weight_of(g) - b_limit);
    }
  }
  // The optimizer maximizes the signed coordinate score.
  const double sign = sense_sign(spec.sense) * spec.scale;
  auto scores = [&](std::span<const double> eps) {
    std::vector<double> y(eps.size()), out(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k) {
      const double x = 1.0 - 2.0 * eps[k];
      y[k] = x * x;
    }
    kernels::series_at(series, y, out);
    for (std::size_t k = 0; k < eps.size(); ++k)
      out[k] = sign * (b_limit * (1.0 - kernel(spec.tag, 1.0 - 2.0 * eps[k])) + out[k]);
    return out;
  };

  const double target = constraint.target;
  const double star = matched_eps(constraint);
  const TwoPointChannel& current = coords[i];

  std::vector<double> cand;
  cand.reserve(std::size_t(opts.grid) + 3);
  for (int k = 0; k < opts.grid; ++k) cand.push_back(0.5 * double(k) / double(opts.grid - 1));
  cand.push_back(star);
  cand.push_back(current.eps1);
  cand.push_back(current.eps2);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  const std::vector<double> score = scores(cand);

  std::vector<std::size_t> low, high;
  std::vector<double> gval(cand.size());
  for (std::size_t k = 0; k < cand.size(); ++k) {
    gval[k] = pointwise(constraint.tag, cand[k]);
    if (gval[k] <= target) low.push_back(k);
    if (gval[k] >= target) high.push_back(k);
  }
  auto score_at = [&](double eps) {
    auto it = std::lower_bound(cand.begin(), cand.end(), eps);
    return score[std::size_t(it - cand.begin())];
  };

  auto pair_value = [](const TwoPointChannel& p, double s1, double s2) {
    return p.eps1 == p.eps2 || p.alpha >= 1.0 ? s1 : p.alpha * s1 + (1.0 - p.alpha) * s2;
  };

  TwoPointChannel best = current;
  double best_value = pair_value(current, score_at(current.eps1), score_at(current.eps2));
  auto consider = [&](const TwoPointChannel& p, double value) {
    if (value > best_value) {
      best = p;
      best_value = value;
    }
  };
  consider({star, star, 1.0}, score_at(star));
  for (std::size_t l : low) {
    for (std::size_t h : high) {
      if (cand[h] < cand[l]) continue;
      const double gl = gval[l], gh = gval[h];
      if (gh - gl <= 1e-15) continue;
      const double alpha = (gh - target) / (gh - gl);
      consider({cand[l], cand[h], alpha}, alpha * score[l] + (1.0 - alpha) * score[h]);
    }
  }

  // Local refinement around the winner.
  double step = 0.5 / double(opts.grid - 1);
  for (int level = 0; level < opts.refine_levels && best.eps1 != best.eps2; ++level) {
    step *= 0.5;
    std::vector<double> e1s, e2s;
    for (double off : {-step, 0.0, step}) {
      const double c1 = best.eps1 + off, c2 = best.eps2 + off;
      if (c1 >= 0.0 && c1 <= 0.5 && pointwise(constraint.tag, c1) <= target) e1s.push_back(c1);
      if (c2 >= 0.0 && c2 <= 0.5 && pointwise(constraint.tag, c2) >= target) e2s.push_back(c2);
    }
    std::vector<double> pts = e1s;
    pts.insert(pts.end(), e2s.begin(), e2s.end());
    const std::vector<double> s = scores(pts);
    for (std::size_t a1 = 0; a1 < e1s.size(); ++a1) {
      for (std::size_t a2 = 0; a2 < e2s.size(); ++a2) {
        if (e2s[a2] < e1s[a1]) continue;
        const double g1 = pointwise(constraint.tag, e1s[a1]), g2 = pointwise(constraint.tag, e2s[a2]);
        if (g2 - g1 <= 1e-15) continue;
        const double alpha = (g2 - target) / (g2 - g1);
        consider({e1s[a1], e2s[a2], alpha}, alpha * s[a1] + (1.0 - alpha) * s[e1s.size() + a2]);
      }
    }
  }
  // Copies of the other coordinates are checked last. When the score is flat
  // on the feasible set (every other coordinate has constant moments) a copy
  // wins the tie, which drives the tuple toward a common channel.
  std::vector<double> pts;
  std::vector<TwoPointChannel> copies;
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (j == i) continue;
    copies.push_back(coords[j]);
    pts.push_back(coords[j].eps1);
    pts.push_back(coords[j].eps2);
  }
  const std::vector<double> copy_scores = scores(pts);
  const double tie = 1e-13 * std::max(1.0, std::abs(best_value));
  const TwoPointChannel* pick = nullptr;
  double pick_value = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < copies.size(); ++c) {
    const double v = pair_value(copies[c], copy_scores[2 * c], copy_scores[2 * c + 1]);
    if (v >= best_value - tie && v > pick_value) {
      pick = &copies[c];
      pick_value = v;
    }
  }
  if (pick) return *pick;
  return best;
}

std::string_view to_string(ShapeVerdict v) {
  switch (v) {
    case ShapeVerdict::AllEqualBsc: return "ALL_EQUAL_BSC";
    case ShapeVerdict::AllEqualBec: return "ALL_EQUAL_BEC";
    case ShapeVerdict::Mixed: return "MIXED";
  }
  return "?";
}

Channel matched_bsc(const Constraint& c) { return bsc(matched_eps(c)); }

Channel matched_bec(const Constraint& c) {
  return c.tag == Functional::E ? bec(std::min(1.0, 2.0 * c.target)) : bec(c.target);
}

ShapeVerdict classify(std::span<const TwoPointChannel> coords, const Constraint& c, double threshold) {
  const Channel ref_bsc = matched_bsc(c), ref_bec = matched_bec(c);
  bool all_bsc = true, all_bec = true;
  for (const auto& p : coords) {
    const Channel ch = p.channel();
    all_bsc = all_bsc && transport_distance(ch, ref_bsc) <= threshold;
    all_bec = all_bec && transport_distance(ch, ref_bec) <= threshold;
  }
  if (all_bsc) return ShapeVerdict::AllEqualBsc;
  if (all_bec) return ShapeVerdict::AllEqualBec;
  return ShapeVerdict::Mixed;
}

bool DescentResult::monotone() const {
  for (std::size_t k = 1; k < trace.size(); ++k) {
    const bool worse = sense == Sense::Minimize ? trace[k] > trace[k - 1] : trace[k] < trace[k - 1];
    if (worse) return false;
  }
  return true;
}

DescentResult coordinate_descent(const ObjectiveSpec& spec, const Constraint& constraint, std::uint64_t seed,
                                 const OptimizerOptions& opts) {
  validate(spec, std::size_t(spec.d));
  if (opts.grid < 2 || opts.max_sweeps < 1) throw UsageError("optimizer needs grid >= 2 and max_sweeps >= 1");

  std::vector<double> low, high;
  for (int k = 0; k < opts.grid; ++k) {
    const double eps = 0.5 * double(k) / double(opts.grid - 1);
    const double gv = pointwise(constraint.tag, eps);
    if (gv <= constraint.target) low.push_back(eps);
    if (gv >= constraint.target) high.push_back(eps);
  }
  if (low.empty() || high.empty()) throw DomainError("constraint target unreachable on the grid");

  Rng rng(mix64(seed));
  DescentResult result;
  result.sense = spec.sense;
  auto& state = result.state;
  for (int k = 0; k < spec.d; ++k) {
    const double e1 = low[std::size_t(rng.integer(0, int(low.size()) - 1))];
    const double e2 = high[std::size_t(rng.integer(0, int(high.size()) - 1))];
    state.coords.push_back(constrained_pair(constraint, e1, e2));
  }

  const double sign = sense_sign(spec.sense);
  auto evaluate_tuple = [&](std::span<const TwoPointChannel> coords) {
    const auto channels = to_channels(coords);
    return symmetrized_objective(spec, channels, opts.series_tol).value;
  };
  state.objective = evaluate_tuple(state.coords);
  result.trace.push_back(state.objective);
  result.sweeps.push_back({0, state.objective, state.coords});

  for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    const double before = state.objective;
    for (std::size_t i = 0; i < state.coords.size(); ++i) {
      const TwoPointChannel cand = best_coordinate(spec, state.coords, i, constraint, opts);
      const TwoPointChannel& cur = state.coords[i];
      if (cand.eps1 != cur.eps1 || cand.eps2 != cur.eps2 || cand.alpha != cur.alpha) {
        if (flat_in(spec, constraint, state.coords, i)) {
          // The objective does not depend on this coordinate: the value is
          // unchanged, and re-evaluating would only add rounding noise.
          state.coords[i] = cand;
          result.trace.push_back(state.objective);
          continue;
        }
        std::vector<TwoPointChannel> trial = state.coords;
        trial[i] = cand;
        const double value = evaluate_tuple(trial);
        // Accept only what the full evaluation confirms as no worse.
        if (sign * value <= sign * state.objective) {
          state.coords = std::move(trial);
          state.objective = value;
        }
      }
      result.trace.push_back(state.objective);
    }
    state.sweeps = sweep;
    state.last_improvement = sign * (before - state.objective);
    result.sweeps.push_back({sweep, state.objective, state.coords});
    if (state.last_improvement < opts.tol) {
      result.converged = true;
      break;
    }
  }
  result.verdict = classify(state.coords, constraint, opts.verdict_threshold);
  return result;
}

std::string run_log_csv(const DescentResult& result, std::uint64_t seed) {
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::string out = "seed,sweep,objective";
  const std::size_t d = result.state.coords.size();
  for (std::size_t i = 1; i <= d; ++i) {
    const auto s = std::to_string(i);
    out += ",eps1_" + s + ",eps2_" + s + ",alpha_" + s;
  }
  out += "\n";
  for (const auto& rec : result.sweeps) {
    out += std::to_string(seed) + "," + std::to_string(rec.sweep) + "," + fmt(rec.objective);
    for (const auto& c : rec.coords) out += "," + fmt(c.eps1) + "," + fmt(c.eps2) + "," + fmt(c.alpha);
    out += "\n";
  }
  out += std::to_string(seed) + ",verdict," + fmt(result.state.objective) + "," +
         std::string(to_string(result.verdict)) + ",converged=" + (result.converged ? "1" : "0") +
         ",monotone=" + (result.monotone() ? "1" : "0") + "\n";
  return out;
}

}  // namespace infocomb
