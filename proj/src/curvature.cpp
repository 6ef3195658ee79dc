#include "gaussembed/curvature.hpp"

#include <cmath>

namespace gaussembed {

ConnectionCoefficients levi_civita(const StructureTensor& s) {
    ConnectionCoefficients conn;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k)
                conn.at(i, j, k) = 0.5 * (s.c(j, k, i) + s.c(i, k, j) + s.c(k, i, j));
    return conn;
}

CurvatureTensor riemann_generic(const StructureTensor& s) {
    ConnectionCoefficients conn = levi_civita(s);
    CurvatureTensor R;
    for (int slot = 0; slot < 6; ++slot) {
        auto [i, j, k, l] = kCurvatureSlots[slot];
        // Coefficient of e_l in R(e_i,e_j)e_k.
        double coeff = 0.0;
        for (int m = 1; m <= 3; ++m)
            coeff += conn(j, k, m) * conn(i, m, l) - conn(i, k, m) * conn(j, m, l);
        for (int p = 1; p <= 3; ++p) coeff -= s.c(p, i, j) * conn(p, k, l);
        R.component(slot) = -coeff;
    }
    return R;
}

CurvatureTensor riemann_closed_form(const CanonicalFrame& f) {
    double a = f.a(), b = f.b(), c = f.c(), d = f.d(), t = f.t();
    if ((a + d) * t != 0.0)
        throw PreconditionViolated("riemann_closed_form requires (a+d)t = 0");
    double r1212 = -(a * a + 3 * b * b - c * c + 2 * b * c - t * t - 2 * (b + c) * t);
    double r1313 = -(-b * b + 3 * c * c + d * d + 2 * b * c - t * t + 2 * (b + c) * t);
    double r2323 = b * b + c * c - a * d + 2 * b * c - 3 * t * t + 2 * (b - c) * t;
    double r1213 = -2 * (a * c + b * d + a * t);
    return CurvatureTensor(r1212, r1313, r2323, r1213, 0.0, 0.0);
}

NablaR nabla_r_generic(const StructureTensor& s) {
    ConnectionCoefficients conn = levi_civita(s);
    CurvatureTensor R = riemann_generic(s);
    NablaR dR;
    for (int p = 1; p <= 3; ++p)
        for (int slot = 0; slot < 6; ++slot) {
            auto [i, j, k, l] = kCurvatureSlots[slot];
            double sum = 0.0;
            for (int m = 1; m <= 3; ++m)
                sum -= conn(p, i, m) * R.at(m, j, k, l) + conn(p, j, m) * R.at(i, m, k, l) +
                       conn(p, k, m) * R.at(i, j, m, l) + conn(p, l, m) * R.at(i, j, k, m);
            dR.component(p, slot) = sum;
        }
    return dR;
}

SolvableNablaComponents nabla_r_closed_solvable(const CanonicalFrame& f) {
    if (f.t() != 0.0)
        throw PreconditionViolated("nabla_r_closed_solvable requires t = 0");
    CurvatureTensor R = riemann_closed_form(f);
    double a = f.a(), bc = f.b() + f.c(), d = f.d();
    SolvableNablaComponents out;
    out.d2_r1223 = bc * (R.r1212() - R.r2323()) - a * R.r1213();
    out.d2_r3123 = a * (R.r1313() - R.r2323()) - bc * R.r1213();
    out.d3_r1223 = d * (R.r1212() - R.r2323()) - bc * R.r1213();
    out.d3_r3123 = bc * (R.r1313() - R.r2323()) - d * R.r1213();
    return out;
}

SimpleNablaComponents nabla_r_closed_simple(double u, double v) {
    if (u == v || u == -v)
        throw PreconditionViolated("nabla_r_closed_simple requires u != +-v");
    SimpleNablaComponents out;
    out.d1_r1213 = 0.5 * u * (v - 1) * (v - 1);
    out.d2_r1223 = 0.25 * (u - 1) * (u - 1) * (u - v + 2);
    out.d3_r2313 = -0.25 * (u + 1) * (u + 1) * (u + v - 2);
    return out;
}

}  // namespace gaussembed
