#pragma once
// Adaptive Simpson quadrature for smooth one-dimensional integrands.  The
// interval is bisected until |S(left)+S(right) - S(whole)| <= 15*tol on each
// piece, the classical accept rule from the Richardson error estimate of
// Simpson's rule.  Tolerance is split across halves, so the final error is
// bounded by the requested tolerance under the usual smoothness assumptions.
#include <functional>

namespace primelab {

struct quadrature_options {
    double rel_tol = 1e-10;   // target relative tolerance
    double abs_floor = 0.0;   // absolute tolerance floor for near-zero integrals
    int max_depth = 60;       // bisection depth limit per subinterval
};

// Integrate f over [lo, hi].  Throws error(errc::numeric) naming the achieved
// tolerance when the depth limit is hit before the accept rule is met.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const quadrature_options& opt = {});

}  // namespace primelab
