#include "ptoda/monodromy.hpp"

#include <cmath>
#include <sstream>

namespace ptoda {

using constants::omega;

const char* component_name(Component c) {
    return c == Component::RadialToda ? "RadialToda" : "Partner";
}

cd MonodromyPoint::B() const { return std::conj(omega()) * cd(xr, yr); }

double MonodromyPoint::residual1() const { return A * A - A / 3.0 - (xr * xr + yr * yr); }

double MonodromyPoint::residual2() const { return (1.0 + s) * A + 2.0 * xr - 1.0 / 3.0; }

MonodromyPoint validate_point(double A, double s, double xr, double yr, double tol) {
    if (!std::isfinite(A) || !std::isfinite(s) || !std::isfinite(xr) || !std::isfinite(yr))
        throw Error(ErrorCode::InvalidArgument, "non-finite coordinate");
    MonodromyPoint m{A, s, xr, yr};
    const double r1 = m.residual1();
    const double r2 = m.residual2();
    if (std::abs(r1) > tol || std::abs(r2) > tol) {
        std::ostringstream os;
        os.precision(17);
        os << "constraint residuals: first=" << r1 << " second=" << r2;
        throw Error(ErrorCode::ConstraintViolated, os.str());
    }
    if (A == 0.0) throw Error(ErrorCode::ZeroA, "A must be nonzero");
    return m;
}

MonodromyPoint from_chart_sy(const ChartSY& c) {
    const double s = c.s;
    const double y = c.y;
    if (!(s >= -3.0 && s < 1.0)) throw Error(ErrorCode::InvalidArgument, "chart (s, y) needs s in [-3, 1)");
    double A;
    if (s == -3.0) {
        A = -1.5 * y * y - 1.0 / 24.0;
    } else {
        const double root = std::sqrt(1.0 / 36.0 + (3.0 + s) / (1.0 - s) * (1.0 / 36.0 + y * y));
        A = 1.0 / (3.0 * (3.0 + s)) - 2.0 / (3.0 + s) * root;
    }
    const double xr = (1.0 - 3.0 * (1.0 + s) * A) / 6.0;
    return MonodromyPoint{A, s, xr, y};
}

double chart_spsi_radius(double s) {
    return std::sqrt((s - 1.0) / (36.0 * (3.0 + s)) - 1.0 / 36.0);
}

MonodromyPoint from_chart_spsi(const ChartSPsi& c) {
    const double s = c.s;
    if (!(s < -3.0)) throw Error(ErrorCode::InvalidArgument, "chart (s, psi) needs s < -3");
    const double R = chart_spsi_radius(s);
    const double A = 2.0 * R * std::cos(c.psi) / std::sqrt(-(3.0 + s) * (1.0 - s)) + 1.0 / (3.0 * (3.0 + s));
    const double y = R * std::sin(c.psi);
    const double xr = (1.0 - 3.0 * (1.0 + s) * A) / 6.0;
    const double scale = std::max({1.0, A * A, y * y});
    return validate_point(A, s, xr, y, kConstraintTol * scale);
}

ChartSY to_chart_sy(const MonodromyPoint& m) {
    if (!(m.s >= -3.0 && m.s < 1.0)) throw Error(ErrorCode::InvalidArgument, "point outside chart (s, y)");
    if (m.A > 0.0) throw Error(ErrorCode::WrongComponent, "chart (s, y) covers only A < 0");
    return ChartSY{m.s, m.yr};
}

ChartSPsi to_chart_spsi(const MonodromyPoint& m) {
    if (!(m.s < -3.0)) throw Error(ErrorCode::InvalidArgument, "point outside chart (s, psi)");
    const double s = m.s;
    const double R = chart_spsi_radius(s);
    const double costerm = (m.A - 1.0 / (3.0 * (3.0 + s))) * std::sqrt(-(3.0 + s) * (1.0 - s)) / 2.0;
    double psi = std::atan2(m.yr, costerm);
    if (R == 0.0) psi = 2.0 * kPi;
    if (psi <= 0.0) psi += 2.0 * kPi;
    return ChartSPsi{s, psi};
}

Mat3 connection_E1(const MonodromyPoint& m) {
    const cd w = omega();
    const cd A = m.A;
    const double s = m.s;
    const cd B = m.B();
    const cd Bb = std::conj(B);
    Mat3 E;
    E << A, B, Bb,
         B, w * s * A - w * w * s * B + Bb, A,
         Bb, A, w * w * s * A + B - w * s * Bb;
    return E;
}

StokesSet stokes_matrices(const MonodromyPoint& m) {
    const cd w = omega();
    const cd w2 = w * w;
    StokesSet st;
    const cd a = w2 * m.s;
    st.a = a;
    st.Qinf = {unit_with(0, 1, a), unit_with(2, 1, -a * w2), unit_with(2, 0, a),
               unit_with(1, 0, -a * w2), unit_with(1, 2, a), unit_with(0, 2, -a * w2)};
    st.Q0 = {unit_with(1, 0, -a), unit_with(1, 2, a * w2), unit_with(0, 2, -a),
             unit_with(0, 1, a * w2), unit_with(2, 1, -a), unit_with(2, 0, a * w2)};
    for (int n = 0; n < 2; ++n) {
        st.Sinf[n] = st.Qinf[3 * n] * st.Qinf[3 * n + 1] * st.Qinf[3 * n + 2];
        st.S0[n] = st.Q0[3 * n] * st.Q0[3 * n + 1] * st.Q0[3 * n + 2];
    }
    st.E1 = connection_E1(m);
    const Mat3 d = constants::d3();
    st.E2 = d * inverse(st.E1) * d / 9.0;
    return st;
}

Mat3 theta_matrix(cd zeta) {
    if (zeta == cd(0.0)) throw Error(ErrorCode::InvalidArgument, "zeta must be nonzero");
    const Mat3 d = constants::d3();
    return -zeta * d + d.conjugate() / zeta;
}

JumpFactors jump_factors(const MonodromyPoint& m, double x, cd zeta) {
    const cd w = omega();
    const cd w2 = w * w;
    const cd A = m.A;
    const cd b = m.B() / A;
    const cd bb = std::conj(m.B()) / A;
    const cd q = std::norm(m.B()) / (A * A);
    const cd s = m.s;
    const cd t = 3.0 * A;
    const cd ti = 1.0 / t;
    JumpFactors jf;
    auto& f = jf.bare;

    f[0].L << 1.0, -b - w2 * q, -bb, 0.0, 1.0, 0.0, 0.0, w2 * b, 1.0;
    f[0].D = diag3(ti, t, 1.0);
    f[0].R << 1.0, 0.0, 0.0, -bb - w * q, 1.0, w * bb, -b, 0.0, 1.0;

    f[1].L << 1.0, w * bb, 0.0, 0.0, 1.0, 0.0, -b, -w * q - w * s - bb, 1.0;
    f[1].D = diag3(1.0, t, ti);
    f[1].R << 1.0, 0.0, -bb, w2 * b, 1.0, -w2 * q - w2 * s - b, 0.0, 0.0, 1.0;

    f[2].L << 1.0, 0.0, 0.0, w2 * b, 1.0, 0.0, -w2 * q - b, -bb, 1.0;
    f[2].D = diag3(t, 1.0, ti);
    f[2].R << 1.0, w * bb, -w * q - bb, 0.0, 1.0, -b, 0.0, 0.0, 1.0;

    f[3].L << 1.0, 0.0, 0.0, -w * q - w * s - bb, 1.0, -b, w * bb, 0.0, 1.0;
    f[3].D = diag3(t, ti, 1.0);
    f[3].R << 1.0, -w2 * q - w2 * s - b, w2 * b, 0.0, 1.0, 0.0, 0.0, -bb, 1.0;

    f[4].L << 1.0, 0.0, w2 * b, -bb, 1.0, -w2 * q - b, 0.0, 0.0, 1.0;
    f[4].D = diag3(1.0, ti, t);
    f[4].R << 1.0, -b, 0.0, 0.0, 1.0, 0.0, w * bb, -w * q - bb, 1.0;

    f[5].L << 1.0, -b, -w * q - w * s - bb, 0.0, 1.0, w * bb, 0.0, 0.0, 1.0;
    f[5].D = diag3(ti, 1.0, t);
    f[5].R << 1.0, 0.0, 0.0, -bb, 1.0, 0.0, -w2 * q - w2 * s - b, w2 * b, 1.0;

    const Mat3 th = theta_matrix(zeta);
    cd e[3];
    for (int i = 0; i < 3; ++i) {
        const cd p = x * th(i, i);
        if (std::abs(p.real()) > 350.0)
            throw Error(ErrorCode::Overflow, "conjugation factor exp(x theta) out of range");
        e[i] = std::exp(p);
    }
    const Mat3 left = diag3(e[0], e[1], e[2]);
    const Mat3 right = diag3(1.0 / e[0], 1.0 / e[1], 1.0 / e[2]);
    for (int k = 0; k < 6; ++k) {
        jf.conjugated[k].L = left * f[k].L * right;
        jf.conjugated[k].D = f[k].D;
        jf.conjugated[k].R = left * f[k].R * right;
    }
    return jf;
}

}  // namespace ptoda
