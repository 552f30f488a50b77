#pragma once

#include <cmath>

#include "fracdiff/errors.hpp"

namespace fracdiff {

// Uniform mesh x_j = a + j dx, j = 0..N, on [a, b].
class Grid1D {
 public:
  Grid1D(double a, double b, long intervals) : a_(a), b_(b), n_(intervals) {
    if (!(std::isfinite(a) && std::isfinite(b) && b > a)) {
      throw DomainError("Grid1D: requires finite a < b");
    }
    if (intervals < 2) throw DomainError("Grid1D: requires N >= 2 intervals");
    dx_ = (b - a) / static_cast<double>(intervals);
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  long intervals() const noexcept { return n_; }
  long interior_size() const noexcept { return n_ - 1; }
  double dx() const noexcept { return dx_; }

  double node(long j) const noexcept {
    return j == n_ ? b_ : a_ + static_cast<double>(j) * dx_;
  }

 private:
  double a_;
  double b_;
  long n_;
  double dx_;
};

}  // namespace fracdiff
