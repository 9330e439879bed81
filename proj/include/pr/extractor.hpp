#pragma once

#include <functional>
#include <random>

#include "pr/types.hpp"

namespace pr {

// Numeric regressor extraction for maps that are exactly linear in a known
// monomial basis of the physical parameters.
//
// Given a basis map theta(phys) in R^d and an evaluator f(phys) in R^rows
// with f(phys) = Y * theta(phys) for some state-dependent Y, the matrix Y is
// recovered by evaluating f on a fixed set of S >= d sampled parameter
// vectors and solving the (exactly consistent) linear system
//   B = V Y^T,   V_{sj} = theta_j(phys_s),  B_{s,:} = f(phys_s)^T.
// V is sampled once per model with a fixed seed, column-equilibrated, and
// factorized once; each extraction is then S evaluations plus a solve.
class BasisExtractor {
 public:
  BasisExtractor() = default;

  BasisExtractor(const Vec& phys_true,
                 const std::function<Vec(const Vec&)>& basis, int dim,
                 int nsamples, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> mult(0.5, 1.6);
    const int np = static_cast<int>(phys_true.size());
    phis_.resize(nsamples, np);
    Mat V(nsamples, dim);
    for (int s = 0; s < nsamples; ++s) {
      for (int j = 0; j < np; ++j) phis_(s, j) = phys_true(j) * mult(gen);
      V.row(s) = basis(phis_.row(s)).transpose();
    }
    colscale_ = V.colwise().norm();
    for (int j = 0; j < dim; ++j)
      if (colscale_(j) == 0.0) colscale_(j) = 1.0;
    cod_.compute(V * colscale_.cwiseInverse().asDiagonal());
    if (cod_.rank() < dim)
      throw NumericFault("basis sample matrix is rank deficient");
  }

  // eval(phys) -> R^rows; returns Y (rows x dim).
  Mat extract(const std::function<Vec(const Vec&)>& eval, int rows) const {
    Mat B(phis_.rows(), rows);
    for (int s = 0; s < phis_.rows(); ++s)
      B.row(s) = eval(phis_.row(s)).transpose();
    Mat Yt = colscale_.cwiseInverse().asDiagonal() * cod_.solve(B);
    return Yt.transpose();
  }

  const Mat& samples() const { return phis_; }

 private:
  Mat phis_;       // nsamples x n_phys
  Vec colscale_;   // dim
  Eigen::CompleteOrthogonalDecomposition<Mat> cod_;
};

}  // namespace pr
