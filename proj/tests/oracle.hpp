#pragma once

// Reference evaluations that share no code with the library.

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cmath>

namespace oracle {

using hp = boost::multiprecision::cpp_dec_float_50;

/// Unclamped power coefficient in 50-digit decimal arithmetic; beta in degrees.
inline double cp_raw(double lambda_d, double beta_d) {
    const hp lambda(lambda_d);
    const hp beta(beta_d);
    const hp inv_li = hp(1) / (lambda + hp("0.08") * beta) - hp("0.035") / (beta * beta * beta + hp(1));
    const hp c1("0.4"), c2(116), c3("0.4"), c4(5), c5(21), c6("0.02");
    const hp v = c1 * (c2 * inv_li - c3 * beta - c4) * exp(-c5 * inv_li) + c6 * lambda;
    return v.convert_to<double>();
}

struct GridOptimum {
    double lambda = 0.0;
    double cp = 0.0;
};

/// Exhaustive beta = 0 scan over [0.5, 15] at step 1e-3.
inline GridOptimum cp_grid_scan() {
    GridOptimum best{0.0, -1.0};
    for (long i = 0; i <= 14500; ++i) {
        const double lambda = 0.5 + 1e-3 * static_cast<double>(i);
        const double cp = cp_raw(lambda, 0.0);
        if (cp > best.cp) best = {lambda, cp};
    }
    return best;
}

}  // namespace oracle
