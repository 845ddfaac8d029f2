#include "ptoda/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ptoda {

namespace {

constexpr double kCollapsePoleLevel = 8.0;

bool blown_up(OdeKind kind, double y) {
    if (!std::isfinite(y)) return true;
    if (kind == OdeKind::PIIID7) return y <= 0.0 || std::abs(std::log(y)) > kBlowupThreshold;
    return std::abs(y) > kBlowupThreshold;
}

double blowup_level(OdeKind kind, double y) {
    if (kind == OdeKind::PIIID7) return y > 0.0 ? std::abs(std::log(y)) : kBlowupThreshold * 2;
    return std::abs(y);
}

const DenseStep<Vec2>* find_step(const std::vector<DenseStep<Vec2>>& steps, double x) {
    for (const auto& st : steps) {
        const double a = std::min(st.t0, st.t0 + st.h);
        const double b = std::max(st.t0, st.t0 + st.h);
        if (x >= a && x <= b) return &st;
    }
    return nullptr;
}


Vec2 field(OdeKind kind, double x, const Vec2& y) { return Vec2(y(1), ode_rhs(kind, x, y(0), y(1))); }

// Quintic Hermite through the endpoint states of a step, matching first and second derivatives.
// Used for residuals, where the derivative of the 4th-order dense output is too coarse.
class QuinticStep {
public:
    QuinticStep(OdeKind kind, const DenseStep<Vec2>& st) : t0_(st.t0), h_(st.h) {
        y0_ = st.eval(st.t0);
        y1_ = st.eval(st.t0 + st.h);
        d0_ = field(kind, t0_, y0_);
        d1_ = field(kind, t0_ + h_, y1_);
        s0_ = second(kind, t0_, y0_, d0_);
        s1_ = second(kind, t0_ + h_, y1_, d1_);
    }

    std::pair<Vec2, Vec2> eval(double x) const {
        const double t = (x - t0_) / h_, t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
        const double H0 = 1 - 10 * t3 + 15 * t4 - 6 * t5, H1 = t - 6 * t3 + 8 * t4 - 3 * t5;
        const double H2 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5), H3 = 0.5 * (t3 - 2 * t4 + t5);
        const double H4 = -4 * t3 + 7 * t4 - 3 * t5, H5 = 10 * t3 - 15 * t4 + 6 * t5;
        const double D0 = -30 * t2 + 60 * t3 - 30 * t4, D1 = 1 - 18 * t2 + 32 * t3 - 15 * t4;
        const double D2 = 0.5 * (2 * t - 9 * t2 + 12 * t3 - 5 * t4), D3 = 0.5 * (3 * t2 - 8 * t3 + 5 * t4);
        const double D4 = -12 * t2 + 28 * t3 - 15 * t4, D5 = -D0;
        const double hh = h_ * h_;
        const Vec2 y = H0 * y0_ + H1 * h_ * d0_ + H2 * hh * s0_ + H3 * hh * s1_ + H4 * h_ * d1_ + H5 * y1_;
        const Vec2 dy = (D0 * y0_ + D1 * h_ * d0_ + D2 * hh * s0_ + D3 * hh * s1_ + D4 * h_ * d1_ + D5 * y1_) / h_;
        return {y, dy};
    }

private:
    // d/dx of the field along the solution, by a central difference in the flow direction
    static Vec2 second(OdeKind kind, double x, const Vec2& y, const Vec2& f) {
        const double d = 1e-5 / std::max(1.0, f.cwiseAbs().maxCoeff());
        return (field(kind, x + d, y + d * f) - field(kind, x - d, y - d * f)) / (2.0 * d);
    }

    double t0_, h_;
    Vec2 y0_, y1_, d0_, d1_, s0_, s1_;
};

}  // namespace

const char* ode_kind_name(OdeKind k) {
    switch (k) {
        case OdeKind::Partner: return "partner";
        case OdeKind::RadialToda: return "radial";
        case OdeKind::PIIID7: return "piii-d7";
    }
    return "?";
}

double ode_rhs(OdeKind kind, double x, double y, double dy) {
    switch (kind) {
        case OdeKind::Partner: return -dy / x - 2.0 * std::exp(-2.0 * y) - 2.0 * std::exp(4.0 * y);
        case OdeKind::RadialToda: return -dy / x + 2.0 * std::exp(-2.0 * y) - 2.0 * std::exp(4.0 * y);
        case OdeKind::PIIID7: return dy * dy / y - dy / x + y * y / x + 1.0 / y;
    }
    return 0.0;
}

Vec2 Trajectory::at(double x) const {
    const DenseStep<Vec2>* st = find_step(steps, x);
    if (!st) throw Error(ErrorCode::InvalidArgument, "x outside the integrated range");
    return st->eval(x);
}

Trajectory integrate(OdeKind kind, double x0, double y0, double dy0, double x1, double tol) {
    if (!(x0 > 0.0) || !(x1 > 0.0)) throw Error(ErrorCode::InvalidArgument, "x0 and x1 must be positive");
    if (!(tol >= 1e-12 && tol <= 1e-6)) throw Error(ErrorCode::InvalidArgument, "tol must lie in [1e-12, 1e-6]");
    if (kind == OdeKind::PIIID7 && !(y0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "PIII(D7) needs a positive value");
    Trajectory traj;
    traj.kind = kind;
    traj.samples.push_back({x0, y0, dy0});
    auto f = [kind](double x, const Vec2& y) {
        return Vec2(y(1), ode_rhs(kind, x, y(0), y(1)));
    };
    DopriOptions opt;
    opt.rtol = tol;
    opt.atol = tol;
    bool pole = false;
    std::function<bool(const DenseStep<Vec2>&, const Vec2&)> cb = [&](const DenseStep<Vec2>& st, const Vec2& y) {
        if (blown_up(kind, y(0))) {
            pole = true;
            PoleEvent ev;
            ev.bracket_lo = std::min(st.t0, st.t0 + st.h);
            ev.bracket_hi = std::max(st.t0, st.t0 + st.h);
            ev.side = st.h > 0 ? 1 : -1;
            ev.blowup_sign = y(0) > 0 ? 1 : -1;
            traj.steps.push_back(st);
            traj.poles.push_back(ev);
            return false;
        }
        traj.steps.push_back(st);
        traj.samples.push_back({st.t0 + st.h, y(0), y(1)});
        return true;
    };
    const auto res = dopri45<Vec2>(f, x0, Vec2(y0, dy0), x1, opt, cb);
    if (res.status == DopriStatus::StepCollapse || res.status == DopriStatus::MaxSteps) {
        const Sample& last = traj.samples.back();
        if (blowup_level(kind, last.value) > kCollapsePoleLevel) {
            PoleEvent ev;
            ev.side = x1 > x0 ? 1 : -1;
            ev.bracket_lo = std::min(last.x, last.x + ev.side * 1e-6);
            ev.bracket_hi = std::max(last.x, last.x + ev.side * 1e-6);
            ev.blowup_sign = last.value > 0 ? 1 : -1;
            ev.x_pole = last.x;
            traj.poles.push_back(ev);
            pole = false;
        } else {
            std::ostringstream os;
            os << "step size collapsed at x = " << res.t << " with value " << last.value
               << " and derivative " << last.derivative;
            throw Error(ErrorCode::StepCollapseWithoutPole, os.str());
        }
    }
    if (pole) {
        PoleEvent& ev = traj.poles.back();
        ev.x_pole = pole_refine(traj, ev.bracket_lo, ev.bracket_hi);
    }
    traj.reached_end = traj.poles.empty() && res.status == DopriStatus::Done;
    if (x1 < x0) {
        std::reverse(traj.samples.begin(), traj.samples.end());
        std::reverse(traj.steps.begin(), traj.steps.end());
    }
    return traj;
}

Trajectory integrate_from_asymptotics(const AsymptoticParams& p, double x0, double x1, double tol) {
    return integrate(OdeKind::Partner, x0, v0_asym(p, x0), v0_asym_derivative(p, x0), x1, tol);
}

PiecewiseRun integrate_with_restarts(const AsymptoticParams& p, double x0, double x1, double eps, double tol) {
    if (!(x1 > x0)) throw Error(ErrorCode::InvalidArgument, "need x0 < x1");
    PiecewiseRun run;
    double start = x0;
    while (start < x1) {
        Trajectory seg = integrate_from_asymptotics(p, start, x1, tol);
        const bool hit = !seg.poles.empty();
        PoleEvent ev;
        if (hit) ev = seg.poles.front();
        run.segments.push_back(std::move(seg));
        if (!hit) break;
        run.poles.push_back(ev);
        const SingularitySet near = singularities(p, std::max(1e-3, ev.x_pole - 2.0), ev.x_pole + 2.0, eps);
        double root = ev.x_pole;
        double best = 1e300;
        for (const auto& r : near.roots)
            if (std::abs(r.x_exact - ev.x_pole) < best) {
                best = std::abs(r.x_exact - ev.x_pole);
                root = r.x_exact;
            }
        start = std::max(root, ev.x_pole) + eps;
    }
    return run;
}

double residual(const Trajectory& traj) {
    double worst = 0.0;
    for (const auto& st : traj.steps) {
        const Vec2 a = st.eval(st.t0), b = st.eval(st.t0 + st.h);
        if (blown_up(traj.kind, a(0)) || blown_up(traj.kind, b(0))) continue;
        const QuinticStep q(traj.kind, st);
        for (double th : {0.25, 0.5, 0.75}) {
            const double x = st.t0 + th * st.h;
            const auto [y, dy] = q.eval(x);
            const double f1 = ode_rhs(traj.kind, x, y(0), y(1));
            const double r = std::max(std::abs(dy(0) - y(1)) / std::max(1.0, std::abs(y(1))),
                                      std::abs(dy(1) - f1) / std::max(1.0, std::abs(f1)));
            worst = std::max(worst, r);
        }
    }
    return worst;
}

double piii_transform_residual(const Trajectory& partner) {
    if (partner.kind != OdeKind::Partner) throw Error(ErrorCode::InvalidArgument, "expects a partner trajectory");
    double worst = 0.0;
    const double c = std::sqrt(4.0 / 3.0);
    for (const auto& st : partner.steps) {
        if (blown_up(OdeKind::Partner, st.eval(st.t0)(0)) || blown_up(OdeKind::Partner, st.eval(st.t0 + st.h)(0)))
            continue;
        const double x = st.t0 + 0.5 * st.h;
        const auto [y, dy] = QuinticStep(OdeKind::Partner, st).eval(x);
        const double v = y(0), v1 = y(1), v2 = dy(1);
        const double g = c * std::sqrt(x) * std::exp(-2.0 * v);
        const double a = 0.5 / x - 2.0 * v1;
        const double g1 = g * a;
        const double g2 = g * (a * a - 0.5 / (x * x) - 2.0 * v2);
        const double s = std::pow(4.0 * x / 3.0, 1.5);
        const double xs = 0.5 * std::pow(s, -1.0 / 3.0);
        const double xss = -std::pow(s, -4.0 / 3.0) / 6.0;
        const double w = g, ws = g1 * xs, wss = g2 * xs * xs + g1 * xss;
        const double rhs = ode_rhs(OdeKind::PIIID7, s, w, ws);
        const double scale = std::max({1.0, std::abs(wss), std::abs(ws * ws / w), std::abs(w * w / s), std::abs(1.0 / w)});
        worst = std::max(worst, std::abs(wss - rhs) / scale);
    }
    return worst;
}

double pole_refine(const Trajectory& traj, double lo, double hi) {
    if (!(hi > lo)) throw Error(ErrorCode::InvalidArgument, "empty bracket");
    const DenseStep<Vec2>* hit = nullptr;
    for (const auto& st : traj.steps) {
        const double a = std::min(st.t0, st.t0 + st.h);
        const double b = std::max(st.t0, st.t0 + st.h);
        if (b < lo || a > hi) continue;
        const Vec2 end = st.eval(st.t0 + st.h);
        if (blown_up(traj.kind, end(0))) {
            hit = &st;
            break;
        }
    }
    if (!hit) {
        for (const auto& ev : traj.poles)
            if (ev.x_pole >= lo && ev.x_pole <= hi && ev.x_pole != 0.0) return ev.x_pole;
        throw Error(ErrorCode::NoBlowupInBracket, "no blow-up inside the bracket");
    }
    double a = hit->t0, b = hit->t0 + hit->h;
    for (int it = 0; it < 200 && std::abs(b - a) > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
        const double mid = 0.5 * (a + b);
        if (blown_up(traj.kind, hit->eval(mid)(0))) b = mid; else a = mid;
    }
    return 0.5 * (a + b);
}

}  // namespace ptoda
