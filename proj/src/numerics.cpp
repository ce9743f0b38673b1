#include "decay/numerics.hpp"

namespace decay {

double half_height_width(const Eigen::Ref<const Eigen::ArrayXd>& omega,
                         const Eigen::Ref<const Eigen::ArrayXd>& eta, std::size_t peak_index) {
  const auto n = static_cast<std::size_t>(omega.size());
  if (static_cast<std::size_t>(eta.size()) != n) throw PreconditionError("half_height_width: size mismatch");
  if (peak_index == 0 || peak_index + 1 >= n) {
    throw PreconditionError("half_height_width: peak must be an interior sample");
  }
  const auto p = static_cast<Eigen::Index>(peak_index);
  const double peak = eta(p);
  if (!(peak > eta(p - 1) && peak > eta(p + 1))) {
    throw PreconditionError("half_height_width: no strict local maximum at peak_index");
  }
  const double half = 0.5 * peak;

  auto crossing = [&](Eigen::Index inside, Eigen::Index outside) {
    const double w = (eta(inside) - half) / (eta(inside) - eta(outside));
    return omega(inside) + w * (omega(outside) - omega(inside));
  };

  Eigen::Index right = p + 1;
  while (right < omega.size() && eta(right) > half) ++right;
  if (right == omega.size()) throw RangeTooNarrowError("no half-height crossing above the peak");
  Eigen::Index left = p - 1;
  while (left >= 0 && eta(left) > half) --left;
  if (left < 0) throw RangeTooNarrowError("no half-height crossing below the peak");

  return crossing(right - 1, right) - crossing(left + 1, left);
}

}  // namespace decay
