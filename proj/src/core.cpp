#include "ptoda/core.hpp"

#include <cmath>

namespace ptoda {

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ConstraintViolated: return "ConstraintViolated";
        case ErrorCode::ZeroA: return "ZeroA";
        case ErrorCode::SingularMatrix: return "SingularMatrix";
        case ErrorCode::WrongComponent: return "WrongComponent";
        case ErrorCode::ZeroB: return "ZeroB";
        case ErrorCode::AtSingularity: return "AtSingularity";
        case ErrorCode::PoleAtU: return "PoleAtU";
        case ErrorCode::OnCut: return "OnCut";
        case ErrorCode::NearSingularSystem: return "NearSingularSystem";
        case ErrorCode::FitResidualTooLarge: return "FitResidualTooLarge";
        case ErrorCode::StepCollapseWithoutPole: return "StepCollapseWithoutPole";
        case ErrorCode::NoBlowupInBracket: return "NoBlowupInBracket";
        case ErrorCode::RadiusTooCoarse: return "RadiusTooCoarse";
        case ErrorCode::GaugeFitFailed: return "GaugeFitFailed";
        case ErrorCode::Overflow: return "Overflow";
    }
    return "Unknown";
}

namespace constants {

cd omega() {
    static const cd w = std::exp(cd(0.0, 2.0 * kPi / 3.0));
    return w;
}

Mat3 d3() {
    const cd w = omega();
    return diag3(1.0, w, w * w);
}

Mat3 Omega() {
    const cd w = omega();
    Mat3 m;
    m << 1.0, 1.0, 1.0,
         1.0, w, w * w,
         1.0, w * w, w;
    return m;
}

Mat3 Pi() {
    Mat3 m = Mat3::Zero();
    m(0, 1) = 1.0;
    m(1, 2) = 1.0;
    m(2, 0) = 1.0;
    return m;
}

Mat3 J() { return diag3(-1.0, 1.0, -1.0); }

Mat3 K() { return diag3(cd(0, 1), 1.0, cd(0, -1)); }

}  // namespace constants

cd determinant(const Mat3& m) { return m.determinant(); }

cd determinant(const Mat6& m) { return m.partialPivLu().determinant(); }

namespace {

template <class M>
double max_row_norm(const M& m) {
    double best = 0.0;
    for (int i = 0; i < m.rows(); ++i) best = std::max(best, m.row(i).norm());
    return best;
}

template <class M>
M checked_inverse(const M& m, double floor_rel) {
    const double scale = std::pow(max_row_norm(m), static_cast<double>(m.rows()));
    const cd det = determinant(m);
    if (!(std::abs(det) > floor_rel * scale))
        throw Error(ErrorCode::SingularMatrix, "matrix determinant below floor");
    return m.partialPivLu().inverse();
}

}  // namespace

Mat3 inverse(const Mat3& m, double floor_rel) { return checked_inverse(m, floor_rel); }
Mat6 inverse(const Mat6& m, double floor_rel) { return checked_inverse(m, floor_rel); }

Mat3 diag3(cd a, cd b, cd c) {
    Mat3 m = Mat3::Zero();
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}

Mat3 unit_with(int row, int col, cd value) {
    Mat3 m = Mat3::Identity();
    m(row, col) = value;
    return m;
}

double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace ptoda
