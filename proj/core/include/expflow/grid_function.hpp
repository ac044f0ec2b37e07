#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace expflow {

struct SupportInterval {
  double u;
  double v;
};

// Real function sampled at x_i = a + i h, i = 0..n-1.  An optional support
// hint [u, v] inside the window states that the function vanishes outside
// it, which licenses zero extension beyond the window.
class GridFunction {
 public:
  GridFunction(double a, double h, std::vector<double> samples,
               std::optional<SupportInterval> support = std::nullopt);

  // Samples f on [a, b]; (b - a) / h must be integral.  Points outside the
  // support hint are set to exactly 0.
  static GridFunction sample(double a, double b, double h, const std::function<double(double)>& f,
                             std::optional<SupportInterval> support = std::nullopt);

  double a() const noexcept { return a_; }
  double b() const noexcept { return a_ + h_ * static_cast<double>(samples_.size() - 1); }
  double h() const noexcept { return h_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double x(std::size_t i) const noexcept { return a_ + h_ * static_cast<double>(i); }
  double operator[](std::size_t i) const { return samples_.at(i); }
  const std::vector<double>& samples() const noexcept { return samples_; }
  const std::optional<SupportInterval>& support() const noexcept { return support_; }

  // Value at grid node a + j h (j may lie outside the window); empty if the
  // node is outside the window and no support hint allows zero extension.
  std::optional<double> node(std::int64_t j) const;

  double sup_norm() const;
  // Largest |f - g| over nodes where both are defined (zero extension used
  // when a support hint permits it).  Throws if the grids are not aligned.
  double sup_distance(const GridFunction& other) const;

  GridFunction restricted(double lo, double hi) const;

 private:
  double a_;
  double h_;
  std::vector<double> samples_;
  std::optional<SupportInterval> support_;
};

// Number of grid steps in s; throws nonmultiple-shift unless s / h is an
// integer to within 1e-9.
std::int64_t steps_of(double s, double h);

}  // namespace expflow
