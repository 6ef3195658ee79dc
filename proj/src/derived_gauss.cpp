#include "gaussembed/derived_gauss.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace gaussembed {

int ThirdFundamentalTensor::index_of(int i, int j, int k) {
    int a = i, b = j, c = k;
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    // (a,b,c) with 1 <= a <= b <= c <= 3, listed in lexicographic order.
    static constexpr int kIndex[3][3][3] = {
        {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}},
        {{1, 3, 4}, {3, 6, 7}, {4, 7, 8}},
        {{2, 4, 5}, {4, 7, 8}, {5, 8, 9}},
    };
    return kIndex[a - 1][b - 1][c - 1];
}

std::array<int, 3> ThirdFundamentalTensor::triple_of(int idx) {
    static constexpr std::array<std::array<int, 3>, 10> kTriples = {{
        {1, 1, 1}, {1, 1, 2}, {1, 1, 3}, {1, 2, 2}, {1, 2, 3},
        {1, 3, 3}, {2, 2, 2}, {2, 2, 3}, {2, 3, 3}, {3, 3, 3},
    }};
    return kTriples[idx];
}

DerivedSystem build_system(const SecondFundamentalForm& h, const NablaR& dR) {
    DerivedSystem sys;
    int row = 0;
    for (int p = 1; p <= 3; ++p)
        for (int slot = 0; slot < 6; ++slot, ++row) {
            auto [i, j, k, l] = kCurvatureSlots[slot];
            sys.labels[row] = {p, slot};
            auto& coeff = sys.matrix[row];
            coeff[ThirdFundamentalTensor::index_of(p, i, k)] += h.at(j, l);
            coeff[ThirdFundamentalTensor::index_of(p, j, l)] += h.at(i, k);
            coeff[ThirdFundamentalTensor::index_of(p, i, l)] -= h.at(j, k);
            coeff[ThirdFundamentalTensor::index_of(p, j, k)] -= h.at(i, l);
            sys.rhs[row] = dR.at(p, i, j, k, l);
        }
    return sys;
}

DerivedObstructionReport solve_system(const DerivedSystem& sys, double eps_rel) {
    Eigen::Matrix<double, 18, 10> A;
    Eigen::Matrix<double, 18, 1> b;
    for (int r = 0; r < 18; ++r) {
        b(r) = sys.rhs[r];
        for (int c = 0; c < 10; ++c) A(r, c) = sys.matrix[r][c];
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix<double, 18, 10>> cod(A);
    Eigen::Matrix<double, 10, 1> x = cod.solve(b);
    double residual = (A * x - b).lpNorm<Eigen::Infinity>();
    double rhs_inf = b.lpNorm<Eigen::Infinity>();

    DerivedObstructionReport report;
    report.residual = residual;
    report.solvable = residual <= eps_rel * std::max(1.0, rhs_inf);
    if (report.solvable) {
        ThirdFundamentalTensor h3;
        for (int c = 0; c < 10; ++c) h3.component(c) = x(c);
        report.h3 = h3;
    }
    return report;
}

double obstruction_solvable_closed_form(const CanonicalFrame& f, const CurvatureTensor& R,
                                        double eps) {
    double tol = eps * std::max(1.0, R.max_abs());
    if (f.t() != 0.0)
        throw PreconditionViolated("obstruction_solvable_closed_form requires t = 0");
    if (std::abs(R.r1223()) > tol || std::abs(R.r1323()) > tol)
        throw PreconditionViolated("obstruction_solvable_closed_form requires R1223 = R1323 = 0");
    if (std::abs(R.r1212()) <= tol || std::abs(R.r2323()) <= tol)
        throw PreconditionViolated(
            "obstruction_solvable_closed_form requires R1212 != 0 and R2323 != 0");
    return (f.b() + f.c()) * (R.r1313() - R.r1212()) + (f.a() - f.d()) * R.r1213();
}

SimpleObstruction obstruction_simple_closed_form(double u, double v, const CurvatureTensor& R,
                                                 const SimpleNablaComponents& named, double eps) {
    if (u == v || u == -v)
        throw PreconditionViolated("obstruction_simple_closed_form requires u != +-v");
    SimpleObstruction out;
    out.triple = {R.r2323() * named.d1_r1213, -R.r1313() * named.d2_r1223,
                  R.r1212() * named.d3_r2313};
    double scale = 1.0;
    for (double x : out.triple) scale = std::max(scale, std::abs(x));
    double tol = eps * scale;
    out.triple_equal = std::abs(out.triple[0] - out.triple[1]) <= tol &&
                       std::abs(out.triple[1] - out.triple[2]) <= tol &&
                       std::abs(out.triple[0] - out.triple[2]) <= tol;
    if (u != 0.0) {
        out.l1 = u * u * u * u + (v - 1) * u * u * u + (v - 3) * u * u +
                 (4 * v * v - 9 * v + 5) * u - v + 2;
        out.l2 = (v - 3) * u * u * u + (3 * v - 5) * u * u + (4 * v * v - 5 * v + 3) * u + v + 1;
    }
    return out;
}

CheckContext make_check_context(const CanonicalFrame& frame) {
    CheckContext ctx;
    ctx.R = riemann_closed_form(frame);
    ctx.dR = nabla_r_generic(structure_tensor_of(frame));
    ctx.frame = frame;
    // Frames of the simple normal form (a = d = 0, t = 1/2) determine (u,v):
    // b = (v-u)/4, c = -(u+v)/4.
    if (frame.a() == 0.0 && frame.d() == 0.0 && frame.t() == 0.5) {
        double u = -2.0 * (frame.b() + frame.c());
        double v = 2.0 * (frame.b() - frame.c());
        if (u != v && u != -v) ctx.simple_uv = std::make_pair(u, v);
    }
    return ctx;
}

CheckContext make_check_context(const FamilyPoint& point) {
    CheckContext ctx = make_check_context(canonical_frame_of(point));
    if (point.family == Family::Simple) ctx.simple_uv = std::make_pair(point.u, point.v);
    return ctx;
}

namespace {

void fill_closed_forms(const CheckContext& ctx, DerivedObstructionReport& report, double eps) {
    double tol = eps * std::max(1.0, ctx.R.max_abs());
    if (ctx.frame && ctx.frame->t() == 0.0 && std::abs(ctx.R.r1212()) > tol &&
        std::abs(ctx.R.r2323()) > tol) {
        report.closed_form.solvable_obstruction =
            obstruction_solvable_closed_form(*ctx.frame, ctx.R, eps);
    }
    if (ctx.simple_uv) {
        auto [u, v] = *ctx.simple_uv;
        SimpleObstruction so =
            obstruction_simple_closed_form(u, v, ctx.R, nabla_r_closed_simple(u, v), eps);
        report.closed_form.simple_triple = so.triple;
        report.closed_form.l1 = so.l1;
        report.closed_form.l2 = so.l2;
    }
}

// The exact unsolvability deduction for a diagonal unique solution with
// nabla_1 R_{1212} = nabla_1 R_{1313} = nabla_1 R_{2323} = 0: rows (1,1212)
// and (1,1313) force h_122 = -h_111 h_22 / h_11 and h_133 = -h_111 h_33 /
// h_11, row (1,2323) then forces h_111 = 0, hence h_122 = 0, so row
// (2,1323) reads 0 = nabla_2 R_{1323} -- a contradiction whenever that
// component is nonzero.
struct ExactDiagonalResult {
    bool applicable = false;
    bool contradiction = false;
    double witness = 0.0;  // nabla_2 R_{1323}
};

ExactDiagonalResult exact_diagonal_argument(const SecondFundamentalForm& h, const NablaR& dR,
                                            double eps) {
    ExactDiagonalResult res;
    double hscale = std::max(1.0, h.max_abs());
    double dscale = std::max(1.0, dR.max_abs());
    bool diagonal = std::abs(h.h12) <= eps * hscale && std::abs(h.h13) <= eps * hscale &&
                    std::abs(h.h23) <= eps * hscale;
    bool nondegenerate = std::abs(h.h11) > eps * hscale && std::abs(h.h22) > eps * hscale &&
                         std::abs(h.h33) > eps * hscale;
    bool rows_vanish = std::abs(dR.at(1, 1, 2, 1, 2)) <= eps * dscale &&
                       std::abs(dR.at(1, 1, 3, 1, 3)) <= eps * dscale &&
                       std::abs(dR.at(1, 2, 3, 2, 3)) <= eps * dscale;
    if (!(diagonal && nondegenerate && rows_vanish)) return res;
    res.applicable = true;
    res.witness = dR.at(2, 1, 3, 2, 3);
    res.contradiction = std::abs(res.witness) > eps * dscale;
    return res;
}

SecondFundamentalForm degenerate_family_member(const CurvatureTensor& R, double h11, double h12) {
    double ratio = R.r1213() / R.r1212();
    SecondFundamentalForm h;
    h.h11 = h11;
    h.h12 = h12;
    h.h22 = (R.r1212() + h12 * h12) / h11;
    h.h23 = ratio * h.h22;
    h.h33 = ratio * ratio * h.h22;
    h.h13 = ratio * h12;
    return h;
}

}  // namespace

DerivedObstructionReport check(const CheckContext& ctx, const GaussOutcome& outcome, double eps) {
    if (outcome.status == GaussStatus::NoSolution)
        throw PreconditionViolated("check requires a Gauss-solvable outcome");

    DerivedObstructionReport report;
    if (outcome.status == GaussStatus::FlatTrivial) {
        report.solvable = true;
        report.residual = 0.0;
        report.h3 = ThirdFundamentalTensor{};
        fill_closed_forms(ctx, report, eps);
        return report;
    }

    if (outcome.status == GaussStatus::UniquePair) {
        report = solve_system(build_system(*outcome.h, ctx.dR));
        ExactDiagonalResult exact = exact_diagonal_argument(*outcome.h, ctx.dR, eps);
        if (exact.applicable && exact.contradiction) {
            report.solvable = false;
            report.h3.reset();
            report.flags.push_back("EXACT_DIAGONAL_ARGUMENT");
        }
        fill_closed_forms(ctx, report, eps);
        return report;
    }

    // Continuous family: the obstruction must fail for every member before
    // unsolvability may be claimed; sweep the free parameters and flag the
    // finite search.
    const ContinuousFamilyInfo& fam = *outcome.family;
    std::vector<SecondFundamentalForm> members;
    if (fam.kind == FamilyKind::DegenerateTwoParameter) {
        static constexpr double kH11[] = {1, -1, 0.25, -0.25, 0.5, -0.5, 2, -2, 4, -4};
        static constexpr double kH12[] = {0, 0.5, -0.5, 1, -1, 2, -2};
        for (double h11 : kH11)
            for (double h12 : kH12) members.push_back(degenerate_family_member(ctx.R, h11, h12));
    } else {
        static constexpr double kSplit[] = {1, 0.25, 0.5, 2, 4, -1, -0.5, -2};
        static constexpr double kTheta[] = {0.0, 0.5235987755982988, 1.0471975511965976};
        for (double split : kSplit)
            for (double theta : kTheta)
                if (auto h = rank_one_family_member(ctx.R, split, theta)) members.push_back(*h);
    }
    double best_residual = std::numeric_limits<double>::infinity();
    std::optional<ThirdFundamentalTensor> best_h3;
    bool solvable = false;
    for (const auto& member : members) {
        if (gauss_residual(member, ctx.R) > 1e-7 * std::max(1.0, ctx.R.max_abs())) continue;
        DerivedObstructionReport r = solve_system(build_system(member, ctx.dR));
        if (r.residual < best_residual) {
            best_residual = r.residual;
            best_h3 = r.h3;
        }
        if (r.solvable) {
            solvable = true;
            best_residual = r.residual;
            best_h3 = r.h3;
            break;
        }
    }
    report.solvable = solvable;
    report.residual = best_residual;
    report.h3 = solvable ? best_h3 : std::nullopt;
    if (!solvable) report.flags.push_back("EXHAUSTIVENESS_LIMITED");
    fill_closed_forms(ctx, report, eps);
    return report;
}

DerivedObstructionReport check(const FamilyPoint& point, const GaussOutcome& outcome, double eps) {
    return check(make_check_context(point), outcome, eps);
}

DerivedObstructionReport check(const CanonicalFrame& frame, const GaussOutcome& outcome,
                               double eps) {
    return check(make_check_context(frame), outcome, eps);
}

}  // namespace gaussembed
