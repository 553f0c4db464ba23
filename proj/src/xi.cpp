#include "twoiso/xi.hpp"

#include <cmath>
#include <string>

#include "twoiso/errors.hpp"

namespace twoiso {

double require_at_least_one(double x, const char* what) {
  if (!(x >= 1.0 - kUnitClamp) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + " must be a finite real >= 1, got " +
                      std::to_string(x));
  }
  return x < 1.0 ? 1.0 : x;
}

namespace {

void require_index(int n) {
  if (n < 0) throw DomainError("xi index must be nonnegative, got " + std::to_string(n));
}

}  // namespace

double xi_eval(int n, double x) {
  require_index(n);
  x = require_at_least_one(x, "xi argument");
  const double t = (x - 1.0) * (x + 1.0);
  const double nn = static_cast<double>(n);
  return std::sqrt((1.0 + (nn + 1.0) * t) / (1.0 + nn * t));
}

double xi_next(double beta) {
  beta = require_at_least_one(beta, "xi_next argument");
  const double b2 = beta * beta;
  return std::sqrt((2.0 * b2 - 1.0) / b2);
}

double xi_cumulative(int n, double x) {
  require_index(n);
  x = require_at_least_one(x, "xi argument");
  const double t = (x - 1.0) * (x + 1.0);
  return std::sqrt(1.0 + static_cast<double>(n) * t);
}

}  // namespace twoiso
