#pragma once

#include <cmath>
#include <string>

namespace qaudit {

// A probability in [0,1]; construction rejects NaN and out-of-range values so
// a bad statistic can never masquerade as a verdict.
class PValue {
public:
    explicit PValue(double v);
    double value() const { return v_; }
    operator double() const { return v_; }

private:
    double v_;
};

// Complementary error function. Thin wrapper so every p-value kernel routes
// through one audited entry point.
double erfc(double x);

// Regularized upper incomplete gamma Q(a, x), a > 0, x >= 0. Series expansion
// for x < a+1, continued fraction otherwise.
double igamc(double a, double x);

// Standard normal CDF via erfc.
double normal_cdf(double x);

// Clamps tiny negative / >1 excursions from roundoff into [0,1].
double clamp_probability(double p);

} // namespace qaudit
