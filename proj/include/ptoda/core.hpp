#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ptoda {

using cd = std::complex<double>;
using Mat3 = Eigen::Matrix<cd, 3, 3>;
using Mat6 = Eigen::Matrix<cd, 6, 6>;
using Vec3 = Eigen::Matrix<cd, 3, 1>;
using Vec6 = Eigen::Matrix<cd, 6, 1>;

inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorCode {
    InvalidArgument = 1,
    ConstraintViolated,
    ZeroA,
    SingularMatrix,
    WrongComponent,
    ZeroB,
    AtSingularity,
    PoleAtU,
    OnCut,
    NearSingularSystem,
    FitResidualTooLarge,
    StepCollapseWithoutPole,
    NoBlowupInBracket,
    RadiusTooCoarse,
    GaugeFitFailed,
    Overflow,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

const char* error_name(ErrorCode code);

namespace constants {

cd omega();
Mat3 d3();
Mat3 Omega();
Mat3 Pi();
Mat3 J();
Mat3 K();

}  // namespace constants

cd determinant(const Mat3& m);
cd determinant(const Mat6& m);

// Throws SingularMatrix when |det| < floor_rel * (max row norm)^N.
Mat3 inverse(const Mat3& m, double floor_rel = 1e-14);
Mat6 inverse(const Mat6& m, double floor_rel = 1e-14);

Mat3 diag3(cd a, cd b, cd c);
Mat3 unit_with(int row, int col, cd value);

double max_abs(const Mat3& m);

}  // namespace ptoda
