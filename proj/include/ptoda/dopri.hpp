#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "ptoda/core.hpp"

namespace ptoda {

struct DopriOptions {
    double rtol = 1e-10;
    double atol = 1e-10;
    double h0 = 0.0;
    double hmin_rel = 1e-13;
    long max_steps = 5000000;
};

enum class DopriStatus { Done, Stopped, StepCollapse, MaxSteps };

template <class State>
struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;
    State r1, r2, r3, r4, r5;

    State eval(double t) const {
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        return r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
    }
    State derivative(double t) const {
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        const State d = r2 + (th1 - th) * r3 + (2.0 * th - 3.0 * th * th) * r4 +
                        (2.0 * th * th1 * th1 - 2.0 * th * th * th1) * r5;
        return d / h;
    }
};

template <class State>
double dopri_norm(const State& err, const State& y0, const State& y1, double atol, double rtol) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sc = atol + rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
        const double r = std::abs(err(i)) / sc;
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(err.size()));
}

template <class State>
struct DopriResult {
    DopriStatus status = DopriStatus::Done;
    double t = 0.0;
    State y;
    double last_h = 0.0;
    long steps = 0;
};

// Integrates y' = f(t, y) from t0 to t1 (either direction). on_step receives each accepted
// dense step and returns false to stop.
template <class State, class F>
DopriResult<State> dopri45(F&& f, double t0, const State& y0, double t1, const DopriOptions& opt,
                           const std::function<bool(const DenseStep<State>&, const State&)>& on_step = {}) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                            a76 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
    static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    DopriResult<State> res;
    res.t = t0;
    res.y = y0;
    const double span = t1 - t0;
    if (span == 0.0) return res;
    const double dir = span > 0 ? 1.0 : -1.0;
    double h = opt.h0 > 0 ? opt.h0 : std::min(std::abs(span), 1e-3 * std::max(1.0, std::abs(span)));
    double t = t0;
    State y = y0;
    State k1 = f(t, y);
    const double hmin = opt.hmin_rel * std::max({1.0, std::abs(t0), std::abs(t1)});
    double fac_old = 1e-4;
    bool reject = false;
    while ((t1 - t) * dir > 0) {
        if (res.steps >= opt.max_steps) {
            res.status = DopriStatus::MaxSteps;
            break;
        }
        if (h < hmin) {
            res.status = DopriStatus::StepCollapse;
            break;
        }
        bool last = false;
        if ((t + dir * h - t1) * dir >= 0) {
            h = std::abs(t1 - t);
            last = true;
        }
        const double hs = dir * h;
        const State y2 = y + hs * (a21 * k1);
        const State k2 = f(t + c2 * hs, y2);
        const State k3 = f(t + c3 * hs, State(y + hs * (a31 * k1 + a32 * k2)));
        const State k4 = f(t + c4 * hs, State(y + hs * (a41 * k1 + a42 * k2 + a43 * k3)));
        const State k5 = f(t + c5 * hs, State(y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
        const State k6 = f(t + hs, State(y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
        const State ynew = y + hs * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        const State k7 = f(t + hs, ynew);
        const State err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double en = dopri_norm(err, y, ynew, opt.atol, opt.rtol);
        bool finite = true;
        for (Eigen::Index i = 0; i < ynew.size(); ++i)
            if (!std::isfinite(std::abs(ynew(i)))) finite = false;
        if (!finite || !std::isfinite(en)) en = 1e10;
        const double fac11 = std::pow(std::max(en, 1e-300), 0.2 - 0.04 * 0.75);
        double fac = fac11 / std::pow(fac_old, 0.04);
        fac = std::clamp(fac / 0.9, 0.1, 10.0);
        double hnew = h / fac;
        if (en <= 1.0) {
            fac_old = std::max(en, 1e-4);
            ++res.steps;
            DenseStep<State> ds;
            ds.t0 = t;
            ds.h = hs;
            ds.r1 = y;
            ds.r2 = ynew - y;
            ds.r3 = hs * k1 - ds.r2;
            ds.r4 = ds.r2 - hs * k7 - ds.r3;
            ds.r5 = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            t = last ? t1 : t + hs;
            y = ynew;
            k1 = k7;
            res.t = t;
            res.y = y;
            res.last_h = h;
            if (reject) hnew = std::min(hnew, h);
            reject = false;
            if (on_step && !on_step(ds, y)) {
                res.status = DopriStatus::Stopped;
                return res;
            }
        } else {
            hnew = h / std::min(10.0, fac11 / 0.9);
            reject = true;
        }
        h = hnew;
    }
    return res;
}

}  // namespace ptoda
