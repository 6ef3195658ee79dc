#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "gaussembed/metric_lie_algebra.hpp"

namespace gaussembed {

/// Levi-Civita connection in an orthonormal frame:
/// gamma(i,j,k) = <nabla_{e_i} e_j, e_k>, metric-compatible so
/// gamma(i,j,k) = -gamma(i,k,j).
struct ConnectionCoefficients {
    double gamma[3][3][3] = {};

    double operator()(int i, int j, int k) const { return gamma[i - 1][j - 1][k - 1]; }
    double& at(int i, int j, int k) { return gamma[i - 1][j - 1][k - 1]; }
};

// Independent slots of a (0,4) curvature-type tensor, in the fixed order
// 1212, 1313, 2323, 1213, 1223, 1323.
inline constexpr std::array<std::array<int, 4>, 6> kCurvatureSlots = {{
    {1, 2, 1, 2}, {1, 3, 1, 3}, {2, 3, 2, 3}, {1, 2, 1, 3}, {1, 2, 2, 3}, {1, 3, 2, 3},
}};

// Maps an index pair (i,j), i != j, to the slot-pair index of (min,max)
// in {12, 13, 23} -> {0, 1, 2} and the sign of the ordering.
inline int pair_index(int i, int j, double& sign) {
    sign = (i < j) ? 1.0 : -1.0;
    int lo = std::min(i, j), hi = std::max(i, j);
    if (lo == 1) return hi == 2 ? 0 : 1;
    return 2;
}

/// The six independent components R_{ijkl} with the sign convention
/// R(e_i,e_j,e_k,e_l) = -<R(e_i,e_j)e_k, e_l>.  The accessor reconstructs
/// every index combination via R_{ijkl} = -R_{jikl} = -R_{ijlk} = R_{klij};
/// degenerate pairs (i == j or k == l) give exactly 0.
class CurvatureTensor {
public:
    CurvatureTensor() = default;
    CurvatureTensor(double r1212, double r1313, double r2323, double r1213, double r1223,
                    double r1323)
        : comp_{r1212, r1313, r2323, r1213, r1223, r1323} {}

    double r1212() const { return comp_[0]; }
    double r1313() const { return comp_[1]; }
    double r2323() const { return comp_[2]; }
    double r1213() const { return comp_[3]; }
    double r1223() const { return comp_[4]; }
    double r1323() const { return comp_[5]; }

    double component(int slot) const { return comp_[slot]; }
    double& component(int slot) { return comp_[slot]; }

    double at(int i, int j, int k, int l) const {
        if (i == j || k == l) return 0.0;
        double s1, s2;
        int p = pair_index(i, j, s1);
        int q = pair_index(k, l, s2);
        return s1 * s2 * matrix_entry(p, q);
    }

    // Entry of the symmetric 3x3 curvature matrix in slot-pair coordinates.
    double matrix_entry(int p, int q) const {
        static constexpr int kSlotOf[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};
        return comp_[kSlotOf[p][q]];
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : comp_) m = std::max(m, std::abs(x));
        return m;
    }

private:
    std::array<double, 6> comp_{};
};

/// Covariant derivative nabla R: 18 independent components dr(p, slot); the
/// accessor applies the same (ijkl) pair symmetries as CurvatureTensor.
class NablaR {
public:
    double at(int p, int i, int j, int k, int l) const {
        if (i == j || k == l) return 0.0;
        double s1, s2;
        int a = pair_index(i, j, s1);
        int b = pair_index(k, l, s2);
        static constexpr int kSlotOf[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};
        return s1 * s2 * dr_[p - 1][kSlotOf[a][b]];
    }

    double component(int p, int slot) const { return dr_[p - 1][slot]; }
    double& component(int p, int slot) { return dr_[p - 1][slot]; }

    double max_abs() const {
        double m = 0.0;
        for (const auto& row : dr_)
            for (double x : row) m = std::max(m, std::abs(x));
        return m;
    }

private:
    std::array<std::array<double, 6>, 3> dr_{};
};

// Koszul formula 2<nabla_{e_i}e_j, e_k> = <[e_k,e_i],e_j> + <e_i,[e_k,e_j]>
// + <[e_i,e_j],e_k> for orthonormal-frame structure constants.
ConnectionCoefficients levi_civita(const StructureTensor& structure);

// Definitional curvature R(e_i,e_j)e_k = nabla_i nabla_j e_k - nabla_j
// nabla_i e_k - nabla_{[e_i,e_j]} e_k, lowered with the frame metric.
CurvatureTensor riemann_generic(const StructureTensor& structure);

// Closed-form curvature of the canonical-frame bracket; r1223 = r1323 = 0
// always.
CurvatureTensor riemann_closed_form(const CanonicalFrame& frame);

// Definitional nabla R (four-term contraction of the connection against the
// curvature accessor).
NablaR nabla_r_generic(const StructureTensor& structure);

/// The four nabla-R components of the solvable (t = 0) closed form.
struct SolvableNablaComponents {
    double d2_r1223;  // nabla_2 R_{1223}
    double d2_r3123;  // nabla_2 R_{3123}
    double d3_r1223;  // nabla_3 R_{1223}
    double d3_r3123;  // nabla_3 R_{3123}
};

// Requires frame.t() == 0.
SolvableNablaComponents nabla_r_closed_solvable(const CanonicalFrame& frame);

/// The three nabla-R components of the simple-family closed form.
struct SimpleNablaComponents {
    double d1_r1213;  // nabla_1 R_{1213}
    double d2_r1223;  // nabla_2 R_{1223}
    double d3_r2313;  // nabla_3 R_{2313}
};

// Requires u != +-v.
SimpleNablaComponents nabla_r_closed_simple(double u, double v);

}  // namespace gaussembed
