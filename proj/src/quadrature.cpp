#include "cesaro/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace cesaro {

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
    throw Error(ErrorKind::InvalidTolerance, "rel_tol must be positive");
  }
  if (nodes_per_cell < 2) throw Error(ErrorKind::InvalidInput, "nodes_per_cell must be >= 2");
  if (max_subdivisions < 0) throw Error(ErrorKind::InvalidInput, "max_subdivisions must be >= 0");
}

const GaussLegendreRule<double>& cached_gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule<double>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendreRule<double>>(gauss_legendre<double>(n));
  return *slot;
}

}  // namespace cesaro
