#include "ptoda/direct_monodromy.hpp"

#include <cmath>
#include <vector>

#include "ptoda/dopri.hpp"

namespace ptoda {

namespace {

const cd I(0.0, 1.0);

struct EndData {
    Mat3 P, Q, R, G;
    std::array<cd, 3> mu;
};

// Psi' = x(-P/tau^2 + Q/tau + R) Psi in tau = x zeta (zero end) or tau = 1/(x zeta).
EndData end_data(const ZetaSystem& sys, Location loc) {
    const Mat3 V = V_matrix(sys.v0);
    const Mat3 W = W_matrix(sys.form, sys.v0);
    const Mat3 vx = diag3(sys.v0x, 0.0, -sys.v0x);
    const Mat3 ev = diag3(std::exp(sys.v0), 1.0, std::exp(-sys.v0));
    const Mat3 emv = diag3(std::exp(-sys.v0), 1.0, std::exp(sys.v0));
    const cd w = constants::omega();
    EndData d;
    if (loc == Location::Zero) {
        d.P = V;
        d.Q = -vx;
        d.R = -W;
        d.G = emv * constants::Omega();
        d.mu = {1.0, w, w * w};
    } else {
        d.P = -W;
        d.Q = vx;
        d.R = V;
        const Mat3 pre = sys.form == Form::PartnerForm ? Mat3(constants::J() * ev) : ev;
        d.G = pre * inverse(constants::Omega());
        d.mu = {-1.0, -w, -w * w};
    }
    return d;
}

std::vector<Mat3> formal_series(double x, const EndData& e, int N) {
    const Mat3 Gi = inverse(e.G);
    const Mat3 a1 = x * Gi * e.Q * e.G;
    const Mat3 a2 = x * Gi * e.R * e.G;
    std::vector<Mat3> F;
    F.push_back(Mat3::Identity());
    for (int k = 1; k <= N; ++k) {
        const Mat3& Fp = F[k - 1];
        const Mat3 Fpp = k >= 2 ? F[k - 2] : Mat3::Zero();
        const Mat3 Rk = a1 * Fp + a2 * Fpp - static_cast<double>(k - 1) * Fp;
        Mat3 Fk = Mat3::Zero();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j) Fk(i, j) = Rk(i, j) / (x * (e.mu[i] - e.mu[j]));
        const Mat3 a2F = a2 * Fp;
        for (int i = 0; i < 3; ++i) {
            cd acc = a2F(i, i);
            for (int m = 0; m < 3; ++m)
                if (m != i) acc += a1(i, m) * Fk(m, i);
            Fk(i, i) = acc / static_cast<double>(k);
        }
        F.push_back(Fk);
    }
    return F;
}

Mat3 system_matrix(double x, const EndData& e, cd tau) {
    return x * (-e.P / (tau * tau) + e.Q / tau + e.R);
}

// Copy of a ray angle placed by the sector window (-pi/6, 7pi/6).
double sector_angle(double theta) {
    const double lo = -kPi / 6.0, hi = lo + 4.0 * kPi / 3.0;
    while (theta < lo) theta += 2.0 * kPi;
    while (theta > hi) theta -= 2.0 * kPi;
    return theta;
}

DopriOptions contour_options(const FrameOptions& opt) {
    DopriOptions o;
    o.rtol = opt.rtol;
    o.atol = opt.atol;
    o.hmin_rel = 1e-15;
    return o;
}

// Column j (adjoint = false) or row j of the inverse (adjoint = true, returned transposed),
// integrated along its recessive ray in shifted variables.
Vec3 integrate_ray(double x, const EndData& e, int j, double theta, double r0, const Vec3& phi0,
                   const FrameOptions& opt, bool adjoint) {
    const cd dir = std::exp(I * theta);
    const cd muj = e.mu[j];
    const double sign = adjoint ? -1.0 : 1.0;
    auto f = [&](double r, const Vec3& y) -> Vec3 {
        const cd t = r * dir;
        Mat3 A = adjoint ? Mat3(-system_matrix(x, e, t).transpose()) : system_matrix(x, e, t);
        A.diagonal().array() += sign * x * muj / (t * t);
        return (A * y) * dir;
    };
    const auto res = dopri45<Vec3>(f, r0, phi0, 1.0, contour_options(opt));
    if (res.status != DopriStatus::Done)
        throw Error(ErrorCode::RadiusTooCoarse, "ray integration did not complete");
    return res.y * std::exp(sign * x * muj / dir);
}

Vec3 integrate_arc(double x, const EndData& e, const Vec3& y0, double from, double to, const FrameOptions& opt,
                   bool adjoint) {
    if (from == to) return y0;
    auto f = [&](double th, const Vec3& y) -> Vec3 {
        const cd t = std::exp(I * th);
        const Mat3 A = adjoint ? Mat3(-system_matrix(x, e, t).transpose()) : system_matrix(x, e, t);
        return (A * y) * (I * t);
    };
    const auto res = dopri45<Vec3>(f, from, y0, to, contour_options(opt));
    if (res.status != DopriStatus::Done) throw Error(ErrorCode::RadiusTooCoarse, "arc integration did not complete");
    return res.y;
}

// Coefficients of the inverse series (sum F_k t^k)^{-1}.
std::vector<Mat3> inverse_series(const std::vector<Mat3>& F) {
    std::vector<Mat3> H{Mat3::Identity()};
    for (size_t k = 1; k < F.size(); ++k) {
        Mat3 acc = Mat3::Zero();
        for (size_t m = 1; m <= k; ++m) acc -= F[m] * H[k - m];
        H.push_back(acc);
    }
    return H;
}

Mat3 eval_series(const std::vector<Mat3>& F, cd t) {
    Mat3 S = Mat3::Zero();
    cd pw = 1.0;
    for (const Mat3& Fk : F) {
        S += Fk * pw;
        pw *= t;
    }
    return S;
}

}  // namespace

const char* form_name(Form f) { return f == Form::PartnerForm ? "partner" : "radial"; }

Mat3 V_matrix(double v0) {
    const Mat3 ev = diag3(std::exp(v0), 1.0, std::exp(-v0));
    const Mat3 emv = diag3(std::exp(-v0), 1.0, std::exp(v0));
    return emv * constants::Pi() * ev;
}

Mat3 W_matrix(Form form, double v0) {
    const Mat3 Vt = V_matrix(v0).transpose();
    if (form == Form::RadialForm) return Vt;
    return constants::J() * Vt * constants::J();
}

Mat3 coefficient_matrix(const ZetaSystem& sys, cd zeta) {
    if (zeta == cd(0.0)) throw Error(ErrorCode::InvalidArgument, "zeta must be nonzero");
    const Mat3 vx = diag3(sys.v0x, 0.0, -sys.v0x);
    return -V_matrix(sys.v0) / (zeta * zeta) - (sys.x / zeta) * vx - sys.x * sys.x * W_matrix(sys.form, sys.v0);
}

CanonicalFrame canonical_solution(const ZetaSystem& sys, Location loc, const FrameOptions& opt) {
    if (!(sys.x > 0.0)) throw Error(ErrorCode::InvalidArgument, "x must be positive");
    const EndData e = end_data(sys, loc);
    const double x = sys.x;
    const std::vector<Mat3> F = formal_series(x, e, opt.terms);
    const std::vector<Mat3> H = inverse_series(F);
    const Mat3 Gi = inverse(e.G);
    CanonicalFrame fr;
    fr.location = loc;
    double c0 = opt.c0;
    double trunc = 0.0;
    for (int it = 0;; ++it) {
        const double r0 = c0 / x;
        trunc = std::max(max_abs(F.back()), max_abs(H.back())) * std::pow(r0, opt.terms);
        if (trunc <= opt.truncation_budget) break;
        if (it >= opt.max_refinements)
            throw Error(ErrorCode::RadiusTooCoarse, "series truncation error above budget");
        c0 *= 0.5;
    }
    const double r0 = c0 / x;
    fr.start_radius = r0;
    fr.truncation = trunc;
    for (int j = 0; j < 3; ++j) {
        const double theta = sector_angle(std::arg(-e.mu[j]));
        fr.ray_angle[j] = theta;
        const Vec3 phi0 = e.G * eval_series(F, r0 * std::exp(I * theta)).col(j);
        const Vec3 at_unit = integrate_ray(x, e, j, theta, r0, phi0, opt, false);
        fr.psi.col(j) = integrate_arc(x, e, at_unit, theta, 0.0, opt, false);

        // rows of the inverse are recessive on the opposite ray
        const double theta_r = sector_angle(std::arg(e.mu[j]));
        const Vec3 row0 = (eval_series(H, r0 * std::exp(I * theta_r)) * Gi).row(j).transpose();
        const Vec3 row_unit = integrate_ray(x, e, j, theta_r, r0, row0, opt, true);
        fr.psi_inv.row(j) = integrate_arc(x, e, row_unit, theta_r, 0.0, opt, true).transpose();
    }
    fr.det_drift = max_abs(fr.psi_inv * fr.psi - Mat3::Identity());
    return fr;
}

ConnectionResult connection_matrix(const ZetaSystem& sys, const FrameOptions& opt) {
    const CanonicalFrame f0 = canonical_solution(sys, Location::Zero, opt);
    const CanonicalFrame fi = canonical_solution(sys, Location::Infinity, opt);
    ConnectionResult c;
    c.raw = f0.psi_inv * fi.psi;
    c.truncation = std::max(f0.truncation, fi.truncation);
    c.det_drift = std::max(f0.det_drift, fi.det_drift);
    c.E1 = c.raw;
    // relative to the size of the terms in the expansion; entries grow exponentially with |Im nu0|
    const double e1 = std::max(1.0 / 3.0, max_abs(c.E1));
    c.det_residual = std::abs(determinant(c.E1) + 1.0 / 27.0) / (27.0 * e1 * e1 * e1);
    c.symmetry_residual = max_abs(c.E1 - c.E1.transpose()) / std::max(1.0, max_abs(c.E1));
    if (!(c.det_residual <= kGaugeTol) || !(c.symmetry_residual <= kGaugeTol))
        throw Error(ErrorCode::GaugeFitFailed, "connection matrix fails the symmetry or determinant check (det " +
                                                   std::to_string(c.det_residual) + ", symmetry " +
                                                   std::to_string(c.symmetry_residual) + ")");
    return c;
}

ExtractedPoint extract_point(const Mat3& E, double tol) {
    const cd w = constants::omega();
    ExtractedPoint out;
    const double A = E(0, 0).real();
    const cd B = E(0, 1);
    const cd z = w * B;
    // E11 - conj(B) = s (w A - w^2 B), E22 - B = s (w^2 A - w conj(B)).
    const cd c1 = w * A - w * w * B, r1 = E(1, 1) - std::conj(B);
    const cd c2 = w * w * A - w * std::conj(B), r2 = E(2, 2) - B;
    const double den = std::norm(c1) + std::norm(c2);
    if (!(den > 0.0)) throw Error(ErrorCode::ConstraintViolated, "degenerate s fit");
    const double s = (std::conj(c1) * r1 + std::conj(c2) * r2).real() / den;
    out.s_fit_residual = std::sqrt(std::norm(r1 - s * c1) + std::norm(r2 - s * c2)) /
                         std::max({1.0, std::abs(E(1, 1)), std::abs(E(2, 2))});
    out.point.A = A;
    out.point.s = s;
    out.point.xr = z.real();
    out.point.yr = z.imag();
    // scaled by the largest term of each constraint; |A| spans many decades for O(1) data
    const double scale1 = std::max({1.0, A * A, std::norm(B)});
    const double scale2 = std::max({1.0, std::abs((1.0 + s) * A), 2.0 * std::abs(out.point.xr)});
    out.residual1 = std::abs(out.point.residual1()) / scale1;
    out.residual2 = std::abs(out.point.residual2()) / scale2;
    const Mat3 pattern = connection_E1(out.point);
    out.pattern_residual = max_abs(pattern - E) / std::max(1.0, max_abs(E));
    if (!(out.residual1 <= tol) || !(out.residual2 <= tol)) {
        throw Error(ErrorCode::ConstraintViolated,
                    "extracted point violates the constraints: residuals " + std::to_string(out.residual1) + ", " +
                        std::to_string(out.residual2));
    }
    return out;
}

RoundtripReport roundtrip(const MonodromyPoint& m, double x0, bool recenter, const FrameOptions& opt) {
    const AsymptoticParams p = params_from_point(m);
    RoundtripReport r;
    r.input = m;
    r.x0_requested = x0;
    double x = x0;
    if (recenter) {
        // theta(x) = pi/2 - 2 pi k, nearest to x0.
        const double th = theta_of_x(p, x0).theta;
        const double k = std::round((kPi / 2.0 - th) / (2.0 * kPi));
        const double target = kPi / 2.0 - 2.0 * kPi * k;
        double a = x0 - kPi / std::sqrt(3.0), b = x0 + kPi / std::sqrt(3.0);
        a = std::max(a, 0.5 * x0);
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            if (theta_of_x(p, mid).theta > target) a = mid; else b = mid;
        }
        x = 0.5 * (a + b);
    }
    r.x0_used = x;
    r.v0 = v0_asym(p, x);
    r.v0x = v0_asym_derivative(p, x);
    const ConnectionResult c = connection_matrix({Form::PartnerForm, x, r.v0, r.v0x}, opt);
    const ExtractedPoint e = extract_point(c.E1, 1e-3);
    r.recovered = e.point;
    r.component = e.point.component();
    const std::array<double, 4> in = {m.A, m.s, m.xr, m.yr};
    const std::array<double, 4> out = {e.point.A, e.point.s, e.point.xr, e.point.yr};
    for (int i = 0; i < 4; ++i) {
        r.error[i] = std::abs(out[i] - in[i]) / std::max(std::abs(in[i]), 1.0);
        r.max_error = std::max(r.max_error, r.error[i]);
    }
    return r;
}

}  // namespace ptoda
