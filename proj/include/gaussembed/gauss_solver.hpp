#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "gaussembed/curvature.hpp"

namespace gaussembed {

inline constexpr double kDefaultEps = 1e-9;

/// Candidate second fundamental form: symmetric 3x3.
struct SecondFundamentalForm {
    double h11 = 0, h12 = 0, h13 = 0, h22 = 0, h23 = 0, h33 = 0;

    double at(int i, int j) const {
        int lo = std::min(i, j), hi = std::max(i, j);
        if (lo == 1) return hi == 1 ? h11 : (hi == 2 ? h12 : h13);
        if (lo == 2) return hi == 2 ? h22 : h23;
        return h33;
    }
    double max_abs() const;
};

enum class GaussStatus { NoSolution, UniquePair, ContinuousFamily, FlatTrivial };
enum class NoSolutionReason { None, TNegative, SNonpositive, RankConditionFailed, DegenerateInconsistent };

const char* to_string(GaussStatus s);
const char* to_string(NoSolutionReason r);

enum class FamilyKind { DegenerateTwoParameter, RankOneSpectral };

/// Basepoint plus free-parameter description of a continuously deformable
/// solution set.
struct ContinuousFamilyInfo {
    SecondFundamentalForm basepoint;
    FamilyKind kind = FamilyKind::DegenerateTwoParameter;
    double h11 = 1.0, h12 = 0.0;  // chosen values of the free parameters
    std::string description;
};

struct GaussOutcome {
    GaussStatus status = GaussStatus::NoSolution;
    NoSolutionReason reason = NoSolutionReason::None;
    std::optional<SecondFundamentalForm> h;       // UNIQUE_PAIR representative, h11 > 0 sign
    std::optional<ContinuousFamilyInfo> family;   // CONTINUOUS_FAMILY data
    double T = 0.0;
    std::optional<double> S;                      // undefined when R2323 ~ 0
    std::vector<std::string> flags;               // UNVERIFIED, RANK_ONE_SPECTRAL
};

// Max absolute violation of the six quadratic equations
// h_ik h_jl - h_il h_jk = R_ijkl.
double gauss_residual(const SecondFundamentalForm& h, const CurvatureTensor& R);

// Determinant of the symmetric 3x3 curvature matrix
// [[R1212,R1213,R1223],[R1213,R1313,R1323],[R1223,R1323,R2323]].
double thomas_T(const CurvatureTensor& R);

// Inverse formula h_ij = eps/sqrt(T) * (2x2 curvature minors); requires
// T > 0, throws TNotPositive otherwise.  Sign normalized so the first
// nonzero of (h11, h12, h13, h22, h23, h33) is positive.
GaussOutcome thomas_inverse(const CurvatureTensor& R);

// Special-case solver for R1223 = R1323 = 0, R1212 != 0 (the structure of
// every non-flat canonical-frame algebra).  Throws PreconditionViolated
// when that structure is absent.
GaussOutcome solve_special(const CurvatureTensor& R, double eps = kDefaultEps);

// Solvability criterion for non-flat tensors: T > 0, or the curvature
// matrix has exactly one nonzero eigenvalue.  Throws ZeroCurvature on flat
// input.
bool jacobowitz_test(const CurvatureTensor& R, double eps = kDefaultEps);

// Dispatcher: flat -> FLAT_TRIVIAL; special-case structure -> solve_special;
// T > 0 -> thomas_inverse; remaining boundary handled via the eigenvalue
// criterion.  Always consistent with jacobowitz_test.
GaussOutcome solve(const CurvatureTensor& R, double eps = kDefaultEps);

// Eigenvalues of a symmetric 3x3 matrix by the closed-form characteristic
// cubic (trigonometric method), ascending order.
std::array<double, 3> sym3_eigenvalues(const std::array<std::array<double, 3>, 3>& m);

// A member of the rank-1 spectral solution family: kernel along the single
// curvature-matrix eigendirection, complementary eigenvalues (split*mu,
// 1/split) whose product is the nonzero eigenvalue mu, eigenpair rotated by
// theta.  split = 1, theta = 0 is the basepoint.  Returns nullopt when R is
// not rank-1 compatible (residual check fails).
std::optional<SecondFundamentalForm> rank_one_family_member(const CurvatureTensor& R, double split,
                                                            double theta);

}  // namespace gaussembed
