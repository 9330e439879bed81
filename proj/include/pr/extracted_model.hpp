#pragma once

#include "pr/extractor.hpp"
#include "pr/jacobian.hpp"
#include "pr/robot_model.hpp"

namespace pr {

// RobotModel base that realizes Ya_matrix / Yc_matrix through the generic
// basis extraction of extractor.hpp.  Concrete robots call init_extractors()
// at the end of their constructor (after the theta_* maps are usable) and
// may still override either matrix with a closed form.
class ExtractedRobotModel : public RobotModel {
 public:
  Mat Ya_matrix(const TaskState& s, const Vec& v_ref, const Vec& a_ref,
                const Vec& KS, const Vec& len) const override {
    const Vec base = Ya_base(s.X, KS);
    auto eval = [&](const Vec& phys) -> Vec {
      const DynamicsEval dyn = dynamics(s, phys, len);
      const Vec W = dyn.M * a_ref + dyn.C * v_ref + dyn.G - KS;
      JacobianFactorization jf{j_new_T(s.X, phys), len};
      const AdjugateSplit as = adjugate_determinant(jf, redundant());
      return as.R * W - base;
    };
    return ya_extractor_.extract(eval, m());
  }

  Mat Yc_matrix(const TaskState& s, const Vec& v_ref, const Vec& a_ref,
                const Vec& len) const override {
    auto eval = [&](const Vec& phys) -> Vec {
      const DynamicsEval dyn = dynamics(s, phys, len);
      return dyn.M * a_ref + dyn.C * v_ref + dyn.G;
    };
    return yc_extractor_.extract(eval, n());
  }

 protected:
  void init_extractors(int nsamples, unsigned seed) {
    const Vec pt = phys();
    ya_extractor_ = BasisExtractor(
        pt, [this](const Vec& ph) { return theta_a(ph); }, r(), nsamples, seed);
    yc_extractor_ = BasisExtractor(
        pt, [this](const Vec& ph) { return theta_c(ph); }, p(), nsamples,
        seed + 1);
  }

 private:
  BasisExtractor ya_extractor_;
  BasisExtractor yc_extractor_;
};

}  // namespace pr
