#include "infocomb/channel.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "infocomb/error.hpp"

namespace infocomb {

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool parse_double(std::string_view token, double& out) {
  // from_chars rejects a leading '+', accept it for hand-written documents.
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

Channel Channel::from_points(std::vector<MassPoint> points, double sum_tolerance) {
  if (points.empty()) throw DomainError("channel has no mass points");
  for (const auto& p : points) {
    if (!std::isfinite(p.eps) || p.eps < 0.0 || p.eps > 0.5)
      throw DomainError("crossover probability " + fmt17(p.eps) + " outside [0, 1/2]");
    if (!std::isfinite(p.weight) || p.weight < 0.0)
      throw DomainError("invalid weight " + fmt17(p.weight));
  }
  std::sort(points.begin(), points.end(),
            [](const MassPoint& a, const MassPoint& b) { return a.eps < b.eps; });

  // Chain clustering: a point joins the current cluster when it lies within
  // the merge tolerance of the previous point. Cluster eps is the weighted mean.
  std::vector<MassPoint> merged;
  merged.reserve(points.size());
  std::size_t i = 0;
  while (i < points.size()) {
    double w = points[i].weight;
    double we = points[i].weight * points[i].eps;
    double first = points[i].eps;
    std::size_t j = i + 1;
    while (j < points.size() && points[j].eps - points[j - 1].eps <= kMergeTolerance) {
      w += points[j].weight;
      we += points[j].weight * points[j].eps;
      ++j;
    }
    double eps = w > 0.0 ? std::clamp(we / w, first, points[j - 1].eps) : first;
    if (j == i + 1) eps = first;
    merged.push_back({eps, w});
    i = j;
  }

  double dropped = 0.0;
  std::erase_if(merged, [&](const MassPoint& p) {
    if (p.weight < kDropWeight) {
      dropped += p.weight;
      return true;
    }
    return false;
  });
  if (dropped >= kMaxDroppedTotal)
    throw DomainError("negligible weights total " + fmt17(dropped) + ", too much to drop");
  if (merged.empty()) throw DomainError("channel has no mass points with positive weight");

  double total = 0.0;
  for (const auto& p : merged) total += p.weight;
  if (std::abs(total + dropped - 1.0) > sum_tolerance)
    throw DomainError("weights sum to " + fmt17(total + dropped) + ", expected 1");
  // Sums already equal to 1 up to summation rounding are left untouched so
  // documents round-trip digit for digit.
  const double rounding = 4.0 * std::numeric_limits<double>::epsilon() * double(merged.size());
  if (std::abs(total - 1.0) > rounding)
    for (auto& p : merged) p.weight /= total;
  return Channel(std::move(merged));
}

double Channel::perfect_weight() const noexcept {
  return !points_.empty() && points_.front().eps == 0.0 ? points_.front().weight : 0.0;
}

Channel bsc(double eps) {
  if (!(eps >= 0.0 && eps <= 0.5)) throw DomainError("bsc: eps must lie in [0, 1/2]");
  return Channel::from_points({{eps, 1.0}});
}

Channel bec(double h) {
  if (!(h >= 0.0 && h <= 1.0)) throw DomainError("bec: erasure probability must lie in [0, 1]");
  if (h == 0.0) return bsc(0.0);
  if (h == 1.0) return bsc(0.5);
  return Channel::from_points({{0.0, 1.0 - h}, {0.5, h}});
}

Channel mix(const Channel& a, const Channel& b, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("mix: alpha must lie in [0, 1]");
  if (alpha == 1.0) return a;
  if (alpha == 0.0) return b;
  std::vector<MassPoint> pts;
  pts.reserve(a.size() + b.size());
  for (const auto& p : a.points()) pts.push_back({p.eps, alpha * p.weight});
  for (const auto& p : b.points()) pts.push_back({p.eps, (1.0 - alpha) * p.weight});
  return Channel::from_points(std::move(pts));
}

double max_point_difference(const Channel& a, const Channel& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i].eps - b[i].eps));
    d = std::max(d, std::abs(a[i].weight - b[i].weight));
  }
  return d;
}

double transport_distance(const Channel& a, const Channel& b) {
  // Integrate |F_a - F_b| over the merged breakpoints.
  std::size_t i = 0, j = 0;
  double fa = 0.0, fb = 0.0, last = 0.0, dist = 0.0;
  while (i < a.size() || j < b.size()) {
    double next = std::min(i < a.size() ? a[i].eps : 1.0, j < b.size() ? b[j].eps : 1.0);
    dist += std::abs(fa - fb) * (next - last);
    last = next;
    while (i < a.size() && a[i].eps == next) fa += a[i++].weight;
    while (j < b.size() && b[j].eps == next) fb += b[j++].weight;
  }
  return dist;
}

Channel parse_channel(std::string_view text) {
  std::vector<MassPoint> pts;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != line.npos) line = line.substr(0, hash);

    std::vector<std::string_view> tokens;
    std::size_t k = 0;
    while (k < line.size()) {
      while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
      std::size_t start = k;
      while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
      if (k > start) tokens.push_back(line.substr(start, k - start));
    }
    if (tokens.empty()) continue;
    if (tokens.size() != 2) throw ParseError("expected `eps weight`", line_no);
    double eps = 0.0, w = 0.0;
    if (!parse_double(tokens[0], eps)) throw ParseError("bad eps `" + std::string(tokens[0]) + "`", line_no);
    if (!parse_double(tokens[1], w)) throw ParseError("bad weight `" + std::string(tokens[1]) + "`", line_no);
    if (!(eps >= 0.0 && eps <= 0.5)) throw ParseError("eps outside [0, 1/2]", line_no);
    if (!(w > 0.0 && w <= 1.0)) throw ParseError("weight outside (0, 1]", line_no);
    pts.push_back({eps, w});
  }
  if (pts.empty()) throw ParseError("document contains no mass points");
  double total = 0.0;
  for (const auto& p : pts) total += p.weight;
  if (std::abs(total - 1.0) > 1e-9)
    throw ParseError("weights sum to " + fmt17(total) + ", expected 1 within 1e-9");
  try {
    return Channel::from_points(std::move(pts), 1e-9);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_channel(const Channel& a) {
  std::string out;
  for (const auto& p : a.points()) out += fmt17(p.eps) + " " + fmt17(p.weight) + "\n";
  return out;
}

Channel load_channel_spec(std::string_view spec) {
  auto inline_value = [&](std::string_view prefix, double& v) {
    if (!spec.starts_with(prefix)) return false;
    if (!parse_double(spec.substr(prefix.size()), v))
      throw ParseError("bad number in `" + std::string(spec) + "`");
    return true;
  };
  double v = 0.0;
  try {
    if (inline_value("bsc:", v)) return bsc(v);
    if (inline_value("bec:", v)) return bec(v);
  } catch (const DomainError& e) {
    throw ParseError(std::string(spec) + ": " + e.what());
  }
  std::ifstream in{std::string(spec)};
  if (!in) throw ParseError("cannot open channel file `" + std::string(spec) + "`");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_channel(ss.str());
}

std::string to_string(const Channel& a) {
  std::string out = "{";
  for (std::size_t i = 0; i < a.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s(%.6g, %.6g)", i ? ", " : "", a[i].eps, a[i].weight);
    out += buf;
  }
  return out + "}";
}

}  // namespace infocomb
