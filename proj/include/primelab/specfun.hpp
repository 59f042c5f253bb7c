#pragma once
// Special functions backing the distribution and statistics layers:
//   bessel_j0 : J0(x), power series for small |x|, Hankel asymptotic beyond
//   log_gamma : principal branch of log Gamma(z) on Re z > 0 (Lanczos, g = 7)
//   gamma_q   : regularised upper incomplete gamma Q(s, x)
// All double precision; the unit tests pin each one against independently
// computed reference values over the ranges the library actually uses.
#include <complex>

namespace primelab {

// J0 to absolute error well below 1e-12 for |x| <= 1e4.
double bessel_j0(double x);

// log Gamma(z) on the half plane Re z > 0, principal branch.
std::complex<double> log_gamma(std::complex<double> z);

// Q(s, x) = Gamma(s, x) / Gamma(s); s > 0, x >= 0.  Series for x < s + 1,
// continued fraction otherwise.
double gamma_q(double s, double x);

// Reduce an angle to [0, 2*pi).
double wrap_2pi(double phi);

// Circular distance between two angles, in [0, pi].
double angle_distance(double a, double b);

}  // namespace primelab
