#include "forge/quadrature.hpp"

#include <cmath>

namespace forge {

namespace {

struct Simpson {
    const std::function<double(double)>& f;
    int max_depth;

    double recurse(double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) const {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        double flm = f(lm), frm = f(rm);
        double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        double err = left + right - whole;
        if (depth >= max_depth) {
            if (std::abs(err) > 1e3 * tol)
                throw QuadratureFailure("adaptive Simpson depth cap");
            return left + right + err / 15.0;
        }
        if (std::abs(err) <= 15.0 * tol)
            return left + right + err / 15.0;
        return recurse(a, m, fa, flm, fm, left, tol * 0.5, depth + 1) +
               recurse(m, b, fm, frm, fb, right, tol * 0.5, depth + 1);
    }
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_depth) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    Simpson s{f, max_depth};
    return s.recurse(a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace forge
