#include "tracbf/core.hpp"

namespace tracbf {

namespace detail {
void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}
}  // namespace detail

double weighted_quadratic(const VectorXd& v, const VectorXd& gamma_diag) {
  detail::require(v.size() == gamma_diag.size(),
                  "weighted_quadratic: dimension mismatch");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    detail::require(gamma_diag[i] > 0.0,
                    "weighted_quadratic: gamma entries must be positive");
    acc += v[i] * v[i] / gamma_diag[i];
  }
  return 0.5 * acc;
}

double min_eigen_diag(const VectorXd& diag) {
  detail::require(diag.size() > 0, "min_eigen_diag: empty diagonal");
  double m = diag[0];
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    detail::require(diag[i] > 0.0, "min_eigen_diag: entries must be positive");
    m = std::min(m, diag[i]);
  }
  return m;
}

}  // namespace tracbf
