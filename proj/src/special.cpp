#include "qaudit/special.hpp"

#include <limits>
#include <stdexcept>

#include "qaudit/errors.hpp"

namespace qaudit {

PValue::PValue(double v) : v_(v) {
    if (std::isnan(v_) || v_ < 0.0 || v_ > 1.0)
        throw Error("p-value out of range: " + std::to_string(v));
}

double erfc(double x) { return std::erfc(x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double clamp_probability(double p) {
    if (p < 0.0) return 0.0;
    if (p > 1.0) return 1.0;
    return p;
}

namespace {

constexpr double kBig = 4.503599627370496e15;
constexpr double kBigInv = 2.22044604925031308085e-16;
constexpr double kMachEp = 1.11022302462515654042e-16;

// Lower regularized gamma P(a,x) by power series, valid for x < a+1.
double igam_series(double a, double x) {
    if (x <= 0.0) return 0.0;
    const double ax = a * std::log(x) - x - std::lgamma(a);
    if (ax < -700.0) return 0.0;
    double r = a;
    double c = 1.0;
    double ans = 1.0;
    do {
        r += 1.0;
        c *= x / r;
        ans += c;
    } while (c / ans > kMachEp);
    return ans * std::exp(ax) / a;
}

// Upper regularized gamma Q(a,x) by modified Lentz continued fraction,
// valid for x >= a+1.
double igamc_cf(double a, double x) {
    const double ax = a * std::log(x) - x - std::lgamma(a);
    if (ax < -700.0) return 0.0;

    double y = 1.0 - a;
    double z = x + y + 1.0;
    double c = 0.0;
    double pkm2 = 1.0;
    double qkm2 = x;
    double pkm1 = x + 1.0;
    double qkm1 = z * x;
    double ans = pkm1 / qkm1;
    double t;
    do {
        c += 1.0;
        y += 1.0;
        z += 2.0;
        const double yc = y * c;
        const double pk = pkm1 * z - pkm2 * yc;
        const double qk = qkm1 * z - qkm2 * yc;
        if (qk != 0.0) {
            const double r = pk / qk;
            t = std::fabs((ans - r) / r);
            ans = r;
        } else {
            t = 1.0;
        }
        pkm2 = pkm1;
        pkm1 = pk;
        qkm2 = qkm1;
        qkm1 = qk;
        if (std::fabs(pk) > kBig) {
            pkm2 *= kBigInv;
            pkm1 *= kBigInv;
            qkm2 *= kBigInv;
            qkm1 *= kBigInv;
        }
    } while (t > kMachEp);
    return ans * std::exp(ax);
}

} // namespace

double igamc(double a, double x) {
    if (!(a > 0.0) || std::isnan(x) || x < 0.0)
        throw Error("igamc domain: need a > 0 and x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return clamp_probability(1.0 - igam_series(a, x));
    return clamp_probability(igamc_cf(a, x));
}

} // namespace qaudit
