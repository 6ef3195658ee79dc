#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaussembed/gauss_solver.hpp"

namespace gaussembed {

/// Fully symmetric third-order tensor h_ijk; 10 independent components
/// stored for i <= j <= k in the order 111, 112, 113, 122, 123, 133, 222,
/// 223, 233, 333.
class ThirdFundamentalTensor {
public:
    double at(int i, int j, int k) const { return data_[index_of(i, j, k)]; }
    double component(int idx) const { return data_[idx]; }
    double& component(int idx) { return data_[idx]; }

    static int index_of(int i, int j, int k);
    static std::array<int, 3> triple_of(int idx);

    double max_abs() const {
        double m = 0.0;
        for (double x : data_) m = std::max(m, std::abs(x));
        return m;
    }

private:
    std::array<double, 10> data_{};
};

/// The linear system of the third-order obstruction: one row per
/// (p, independent ijkl slot), unknowns the 10 components of h_ijk.
struct DerivedSystem {
    struct RowLabel {
        int p;
        int slot;  // index into kCurvatureSlots
    };
    std::array<std::array<double, 10>, 18> matrix{};
    std::array<double, 18> rhs{};
    std::array<RowLabel, 18> labels{};
};

struct ClosedFormValues {
    std::optional<double> solvable_obstruction;        // (b+c)(R1313-R1212)+(a-d)R1213
    std::optional<std::array<double, 3>> simple_triple;  // (R2323 d1R1213, -R1313 d2R1223, R1212 d3R2313)
    std::optional<double> l1, l2;                      // simple-case polynomials, u != 0 only
};

struct DerivedObstructionReport {
    bool solvable = false;
    double residual = 0.0;                      // least-squares residual, inf-norm
    std::optional<ThirdFundamentalTensor> h3;   // minimum-norm solution when solvable
    ClosedFormValues closed_form;
    std::vector<std::string> flags;             // EXACT_DIAGONAL_ARGUMENT, EXHAUSTIVENESS_LIMITED
};

// Assembles the 18x10 system nabla_p R_ijkl = h_pik h_jl + h_ik h_pjl
// - h_pil h_jk - h_il h_pjk over the independent slots.
DerivedSystem build_system(const SecondFundamentalForm& h, const NablaR& dR);

// Rank-revealing least squares; solvable iff the minimal residual inf-norm
// is <= eps_rel * max(1, |rhs|_inf).  Returns the minimum-norm h3 when
// solvable.
DerivedObstructionReport solve_system(const DerivedSystem& sys, double eps_rel = 1e-8);

// Closed-form scalar whose non-vanishing obstructs the third-order system
// for solvable-family frames (t = 0); requires R1212 != 0, R2323 != 0,
// R1223 = R1323 = 0.
double obstruction_solvable_closed_form(const CanonicalFrame& frame, const CurvatureTensor& R,
                                        double eps = kDefaultEps);

struct SimpleObstruction {
    std::array<double, 3> triple;  // must be all equal for solvability
    std::optional<double> l1, l2;  // reported when u != 0
    bool triple_equal = false;
};

// Simple-family closed form: the products triple and (for u != 0) the two
// quartic polynomials whose simultaneous vanishing the triple equality
// forces.
SimpleObstruction obstruction_simple_closed_form(double u, double v, const CurvatureTensor& R,
                                                 const SimpleNablaComponents& named,
                                                 double eps = kDefaultEps);

/// Everything check() needs about the space under test.  The frame enables
/// the solvable-case closed form; simple_uv the simple-case one.
struct CheckContext {
    CurvatureTensor R;
    NablaR dR;
    std::optional<CanonicalFrame> frame;
    std::optional<std::pair<double, double>> simple_uv;
};

// Decides third-order solvability for a Gauss outcome: builds and solves
// the linear system (sweeping the free parameters for continuous families)
// and cross-fills the closed forms where the context matches them.
DerivedObstructionReport check(const CheckContext& ctx, const GaussOutcome& outcome,
                               double eps = kDefaultEps);
DerivedObstructionReport check(const FamilyPoint& point, const GaussOutcome& outcome,
                               double eps = kDefaultEps);
DerivedObstructionReport check(const CanonicalFrame& frame, const GaussOutcome& outcome,
                               double eps = kDefaultEps);

// Builds the context (curvature, nabla R, closed-form hooks) for a frame or
// family point.
CheckContext make_check_context(const CanonicalFrame& frame);
CheckContext make_check_context(const FamilyPoint& point);

}  // namespace gaussembed
