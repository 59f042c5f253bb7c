#include "primelab/quadrature.hpp"

#include <cmath>
#include <string>

#include "primelab/errors.hpp"
#include "primelab/format.hpp"

namespace primelab {

namespace {

struct simpson_state {
    const std::function<double(double)>& f;
    int max_depth;
    double worst_residual = 0.0;  // largest unmet |S2 - S1| at the depth limit
    bool converged = true;

    // One Simpson estimate over [lo, hi] given endpoint/midpoint values.
    static double simpson(double lo, double hi, double flo, double fmid, double fhi) {
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    }

    double recurse(double lo, double hi, double flo, double fmid, double fhi,
                   double whole, double tol, int depth) {
        double mid = 0.5 * (lo + hi);
        double lmid = 0.5 * (lo + mid);
        double rmid = 0.5 * (mid + hi);
        double flmid = f(lmid);
        double frmid = f(rmid);
        double left = simpson(lo, mid, flo, flmid, fmid);
        double right = simpson(mid, hi, fmid, frmid, fhi);
        double s2 = left + right;
        double residual = s2 - whole;
        // Richardson: Simpson halving gains a factor 16, so |S2-S1| <= 15 tol
        // certifies the refined estimate to tol (plus the 1/15 correction).
        if (std::abs(residual) <= 15.0 * tol || depth >= max_depth) {
            if (std::abs(residual) > 15.0 * tol) {
                converged = false;
                worst_residual = std::max(worst_residual, std::abs(residual));
            }
            return s2 + residual / 15.0;
        }
        return recurse(lo, mid, flo, flmid, fmid, left, 0.5 * tol, depth + 1) +
               recurse(mid, hi, fmid, frmid, fhi, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const quadrature_options& opt) {
    if (!(lo < hi)) {
        if (lo == hi) return 0.0;
        throw error(errc::domain, "integrate: empty interval, lo > hi");
    }
    double flo = f(lo);
    double fhi = f(hi);
    double fmid = f(0.5 * (lo + hi));
    double whole = simpson_state::simpson(lo, hi, flo, fmid, fhi);
    // Relative tolerance against the first estimate, floored for integrals
    // that are genuinely tiny or initially estimated as 0.
    double tol = std::max(opt.rel_tol * std::abs(whole), opt.abs_floor);
    if (tol == 0.0) tol = 1e-300;
    simpson_state st{f, opt.max_depth};
    double result = st.recurse(lo, hi, flo, fmid, fhi, whole, tol, 0);
    if (!st.converged)
        throw error(errc::numeric,
                    "integrate: depth limit reached, residual " +
                        fmt_double(st.worst_residual) + " vs tolerance " + fmt_double(tol));
    return result;
}

}  // namespace primelab
