#include "expflow/grid_function.hpp"

#include <algorithm>
#include <cmath>

#include "expflow/error.hpp"

namespace expflow {
namespace {

constexpr double kAlignTolerance = 1e-9;

}  // namespace

std::int64_t steps_of(double s, double h) {
  const double ratio = s / h;
  const double nearest = std::round(ratio);
  if (!std::isfinite(ratio) || std::abs(ratio - nearest) > kAlignTolerance * std::max(1.0, std::abs(ratio))) {
    throw Error(ErrorCode::kNonmultipleShift,
                "shift " + std::to_string(s) + " is not a multiple of h = " + std::to_string(h));
  }
  return static_cast<std::int64_t>(nearest);
}

GridFunction::GridFunction(double a, double h, std::vector<double> samples,
                           std::optional<SupportInterval> support)
    : a_(a), h_(h), samples_(std::move(samples)), support_(support) {
  if (!(h_ > 0.0) || !std::isfinite(a_) || samples_.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs h > 0, finite a and at least 2 samples");
  }
  if (support_) {
    const double slack = kAlignTolerance * h_;
    if (!(support_->u <= support_->v) || support_->u < a_ - slack || support_->v > b() + slack) {
      throw Error(ErrorCode::kInvalidArgument, "support hint must be an interval inside [a, b]");
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      const double xi = x(i);
      if ((xi < support_->u - slack || xi > support_->v + slack) && samples_[i] != 0.0) {
        throw Error(ErrorCode::kInvalidArgument, "nonzero sample outside the support hint");
      }
    }
  }
}

GridFunction GridFunction::sample(double a, double b, double h,
                                  const std::function<double(double)>& f,
                                  std::optional<SupportInterval> support) {
  const std::int64_t n = steps_of(b - a, h);
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "grid needs b > a");
  std::vector<double> values(static_cast<std::size_t>(n + 1));
  const double slack = kAlignTolerance * h;
  for (std::int64_t i = 0; i <= n; ++i) {
    const double xi = a + h * static_cast<double>(i);
    const bool outside = support && (xi < support->u - slack || xi > support->v + slack);
    values[static_cast<std::size_t>(i)] = outside ? 0.0 : f(xi);
  }
  return GridFunction(a, h, std::move(values), support);
}

std::optional<double> GridFunction::node(std::int64_t j) const {
  if (j >= 0 && j < static_cast<std::int64_t>(samples_.size())) {
    return samples_[static_cast<std::size_t>(j)];
  }
  if (support_) return 0.0;
  return std::nullopt;
}

double GridFunction::sup_norm() const {
  double worst = 0.0;
  for (const double v : samples_) worst = std::max(worst, std::abs(v));
  return worst;
}

double GridFunction::sup_distance(const GridFunction& other) const {
  if (std::abs(other.h_ - h_) > kAlignTolerance * h_) {
    throw Error(ErrorCode::kInvalidArgument, "grids have different spacing");
  }
  const std::int64_t offset = steps_of(other.a_ - a_, h_);
  const auto n = static_cast<std::int64_t>(samples_.size());
  const auto m = static_cast<std::int64_t>(other.samples_.size());
  const std::int64_t lo = std::min<std::int64_t>(0, offset);
  const std::int64_t hi = std::max<std::int64_t>(n, offset + m);
  double worst = 0.0;
  bool any = false;
  for (std::int64_t j = lo; j < hi; ++j) {
    const auto mine = node(j);
    const auto theirs = other.node(j - offset);
    if (!mine || !theirs) continue;
    any = true;
    worst = std::max(worst, std::abs(*mine - *theirs));
  }
  if (!any) throw Error(ErrorCode::kDomainUnderflow, "grids share no common node");
  return worst;
}

GridFunction GridFunction::restricted(double lo, double hi) const {
  const std::int64_t first = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil((lo - a_) / h_ - kAlignTolerance)));
  const std::int64_t last = std::min<std::int64_t>(static_cast<std::int64_t>(samples_.size()) - 1,
                                                   static_cast<std::int64_t>(std::floor((hi - a_) / h_ + kAlignTolerance)));
  if (last - first < 1) throw Error(ErrorCode::kDomainUnderflow, "restriction keeps fewer than 2 nodes");
  std::vector<double> values(samples_.begin() + first, samples_.begin() + last + 1);
  const double new_a = x(static_cast<std::size_t>(first));
  std::optional<SupportInterval> hint;
  if (support_) {
    const double new_b = new_a + h_ * static_cast<double>(last - first);
    if (support_->u >= new_a && support_->v <= new_b) hint = support_;
  }
  return GridFunction(new_a, h_, std::move(values), hint);
}

}  // namespace expflow
