#include "miclust/types.hpp"

#include <atomic>

namespace miclust {

namespace {

std::atomic<double> construction_tol{1e-12};

}  // namespace

double Tolerances::construction() { return construction_tol.load(); }

void Tolerances::set_construction(double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("Tolerances: tolerance must be positive");
  }
  construction_tol.store(tol);
}

}  // namespace miclust
