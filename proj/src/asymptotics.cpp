#include "ptoda/asymptotics.hpp"

#include <cmath>

namespace ptoda {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;
constexpr double kSingularTol = 1e-12;

}  // namespace

cd log_gamma(cd z) {
    if (!(z.real() > 0.0)) throw Error(ErrorCode::InvalidArgument, "log_gamma needs Re z > 0");
    cd shift = 0.0;
    while (std::abs(z) < 16.0 || z.real() < 8.0) {
        shift += std::log(z);
        z += 1.0;
    }
    static const double bern[] = {1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
                                  1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0};
    const cd zi = 1.0 / z;
    const cd zi2 = zi * zi;
    cd series = 0.0;
    cd pw = zi;
    for (double b : bern) {
        series += b * pw;
        pw *= zi2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift;
}

AsymptoticParams params_from_point(const MonodromyPoint& m) {
    if (m.A > 0.0) throw Error(ErrorCode::WrongComponent, "asymptotics need A < 0");
    if (m.A == 0.0) throw Error(ErrorCode::ZeroA, "A must be nonzero");
    const cd z(m.xr, m.yr);
    if (z == cd(0.0)) throw Error(ErrorCode::ZeroB, "x + iy vanishes, psi undefined");
    AsymptoticParams p;
    p.point = m;
    const cd I(0.0, 1.0);
    p.nu = -std::log(cd(3.0 * m.A, 0.0)) / (2.0 * kPi * I);
    p.nu0 = cd(0.0, p.nu.imag());
    p.drift = -p.nu.imag();
    p.s1 = constants::omega() * z / m.A;
    const cd lg = log_gamma(-p.nu);
    p.arg_gamma = lg.imag();
    const cd gamma = std::exp(lg);
    p.sigma = std::sqrt(2.0 * kPi) * std::exp(kPi * I * p.nu0 / 2.0) / (p.s1 * gamma);
    p.psi = std::arg(p.s1) + p.arg_gamma;
    return p;
}

PhaseEval theta_of_x(const AsymptoticParams& p, double x) {
    if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "x must be positive");
    PhaseEval e;
    e.x = x;
    e.theta = -2.0 * kSqrt3 * x + p.drift * std::log(24.0 * kSqrt3 * x) + kPi / 6.0 - p.psi;
    e.phi = e.theta + kPi / 3.0;
    return e;
}

double dtheta_dx(const AsymptoticParams& p, double x) { return -2.0 * kSqrt3 + p.drift / x; }

double v0_from_sin(double S) {
    if (std::abs(1.0 + S) < kSingularTol) throw Error(ErrorCode::AtSingularity, "sin(theta) = -1");
    return 0.5 * std::log((1.0 + S) / (2.0 - S));
}

double X_from_sin(double S) { return 3.0 / ((2.0 - S) * (1.0 + S)); }

double v0_asym(const AsymptoticParams& p, double x) {
    return v0_from_sin(std::sin(theta_of_x(p, x).theta));
}

double v0_asym_derivative(const AsymptoticParams& p, double x) {
    const double th = theta_of_x(p, x).theta;
    const double S = std::sin(th);
    if (std::abs(1.0 + S) < kSingularTol) throw Error(ErrorCode::AtSingularity, "sin(theta) = -1");
    return 0.5 * std::cos(th) * (1.0 / (1.0 + S) + 1.0 / (2.0 - S)) * dtheta_dx(p, x);
}

double monotone_threshold(const AsymptoticParams& p) {
    return std::max(0.0, p.drift / (2.0 * kSqrt3));
}

double root_formula(const AsymptoticParams& p, long n) {
    return (2.0 * kPi * n + 2.0 * kPi / 3.0 - p.psi + p.drift * std::log(24.0 * kPi * n)) / (2.0 * kSqrt3);
}

double root_formula_uncorrected(const AsymptoticParams& p, long n) {
    const double argz = std::atan2(p.point.yr, p.point.xr);
    return (2.0 * kPi * n + kPi / 3.0 + p.drift * std::log(24.0 * kPi * n) - argz - p.arg_gamma) /
           (2.0 * kSqrt3);
}

SingularitySet singularities(const AsymptoticParams& p, double xmin, double xmax, double eps) {
    if (!(xmin > 0.0 && xmax > xmin)) throw Error(ErrorCode::InvalidArgument, "need 0 < xmin < xmax");
    SingularitySet set;
    set.epsilon = eps;
    const double lo = std::max(xmin, 1.0001 * monotone_threshold(p) + 1e-9);
    if (lo >= xmax) return set;
    const double th_lo = theta_of_x(p, lo).theta;
    const double th_hi = theta_of_x(p, xmax).theta;
    const long n_first = static_cast<long>(std::ceil((-kPi / 2.0 - th_lo) / (2.0 * kPi)));
    const long n_last = static_cast<long>(std::floor((-kPi / 2.0 - th_hi) / (2.0 * kPi)));
    for (long n = n_first; n <= n_last; ++n) {
        const double target = -kPi / 2.0 - 2.0 * kPi * n;
        double a = lo, b = xmax;
        for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, b); ++it) {
            const double mid = 0.5 * (a + b);
            if (theta_of_x(p, mid).theta > target) a = mid; else b = mid;
        }
        SingularityPair sp;
        sp.n = n;
        sp.x_exact = 0.5 * (a + b);
        sp.x_asym = n > 0 ? root_formula(p, n) : std::nan("");
        sp.x_printed = n > 0 ? root_formula_uncorrected(p, n) : std::nan("");
        set.roots.push_back(sp);
    }
    return set;
}

bool in_exclusion(const SingularitySet& set, double x) {
    for (const auto& r : set.roots)
        if (std::abs(x - r.x_exact) < set.epsilon) return true;
    return false;
}

PiiiPoint piii_map(double v0, double x) {
    if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "x must be positive");
    PiiiPoint out;
    out.s = std::pow(4.0 * x / 3.0, 1.5);
    out.wtilde = std::cbrt(out.s) * std::exp(-2.0 * v0);
    return out;
}

std::pair<double, double> piii_unmap(double s, double wtilde) {
    if (!(s > 0.0) || !(wtilde > 0.0)) throw Error(ErrorCode::InvalidArgument, "s and wtilde must be positive");
    const double x = 0.75 * std::pow(s, 2.0 / 3.0);
    return {x, -0.5 * std::log(wtilde / std::cbrt(s))};
}

double wtilde_asym(const AsymptoticParams& p, double s) {
    if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "s must be positive");
    const double x = 0.75 * std::pow(s, 2.0 / 3.0);
    const double S = std::sin(theta_of_x(p, x).theta);
    if (std::abs(1.0 + S) < kSingularTol) throw Error(ErrorCode::AtSingularity, "sin(theta) = -1");
    return std::cbrt(s) * (2.0 - S) / (1.0 + S);
}

}  // namespace ptoda
