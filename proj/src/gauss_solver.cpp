#include "gaussembed/gauss_solver.hpp"

#include <algorithm>
#include <cmath>

namespace gaussembed {

double SecondFundamentalForm::max_abs() const {
    double m = 0.0;
    for (double x : {h11, h12, h13, h22, h23, h33}) m = std::max(m, std::abs(x));
    return m;
}

const char* to_string(GaussStatus s) {
    switch (s) {
        case GaussStatus::NoSolution: return "NO_SOLUTION";
        case GaussStatus::UniquePair: return "UNIQUE_PAIR";
        case GaussStatus::ContinuousFamily: return "CONTINUOUS_FAMILY";
        case GaussStatus::FlatTrivial: return "FLAT_TRIVIAL";
    }
    return "?";
}

const char* to_string(NoSolutionReason r) {
    switch (r) {
        case NoSolutionReason::None: return "NONE";
        case NoSolutionReason::TNegative: return "T_NEGATIVE";
        case NoSolutionReason::SNonpositive: return "S_NONPOSITIVE";
        case NoSolutionReason::RankConditionFailed: return "RANK_CONDITION_FAILED";
        case NoSolutionReason::DegenerateInconsistent: return "DEGENERATE_INCONSISTENT";
    }
    return "?";
}

double gauss_residual(const SecondFundamentalForm& h, const CurvatureTensor& R) {
    double worst = 0.0;
    for (int slot = 0; slot < 6; ++slot) {
        auto [i, j, k, l] = kCurvatureSlots[slot];
        double lhs = h.at(i, k) * h.at(j, l) - h.at(i, l) * h.at(j, k);
        worst = std::max(worst, std::abs(lhs - R.component(slot)));
    }
    return worst;
}

double thomas_T(const CurvatureTensor& R) {
    double m[3][3];
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) m[p][q] = R.matrix_entry(p, q);
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[1][2]) -
           m[0][1] * (m[0][1] * m[2][2] - m[1][2] * m[0][2]) +
           m[0][2] * (m[0][1] * m[1][2] - m[1][1] * m[0][2]);
}

namespace {

// Flips the sign of h so the first nonzero of (h11, h12, h13, h22, h23, h33)
// is positive; "nonzero" judged against the overall magnitude.
void normalize_sign(SecondFundamentalForm& h, double eps) {
    double tol = eps * std::max(1.0, h.max_abs());
    for (double x : {h.h11, h.h12, h.h13, h.h22, h.h23, h.h33}) {
        if (std::abs(x) > tol) {
            if (x < 0) {
                h.h11 = -h.h11; h.h12 = -h.h12; h.h13 = -h.h13;
                h.h22 = -h.h22; h.h23 = -h.h23; h.h33 = -h.h33;
            }
            return;
        }
    }
}

}  // namespace

GaussOutcome thomas_inverse(const CurvatureTensor& R) {
    double T = thomas_T(R);
    if (!(T > 0.0)) throw TNotPositive("thomas_inverse requires T > 0");
    double rt = std::sqrt(T);
    SecondFundamentalForm h;
    h.h11 = (R.r1212() * R.r1313() - R.r1213() * R.r1213()) / rt;
    h.h12 = (R.r1212() * R.r1323() - R.r1223() * R.r1213()) / rt;
    h.h13 = (R.r1213() * R.r1323() - R.r1223() * R.r1313()) / rt;
    h.h22 = (R.r1212() * R.r2323() - R.r1223() * R.r1223()) / rt;
    h.h23 = (R.r1213() * R.r2323() - R.r1223() * R.r1323()) / rt;
    h.h33 = (R.r1313() * R.r2323() - R.r1323() * R.r1323()) / rt;
    normalize_sign(h, kDefaultEps);

    GaussOutcome out;
    out.status = GaussStatus::UniquePair;
    out.h = h;
    out.T = T;
    double r2323 = R.r2323();
    if (r2323 != 0.0) out.S = (R.r1212() * R.r1313() - R.r1213() * R.r1213()) / r2323;
    return out;
}

GaussOutcome solve_special(const CurvatureTensor& R, double eps) {
    double scale = std::max(1.0, R.max_abs());
    double tol = eps * scale;
    if (std::abs(R.r1223()) > tol || std::abs(R.r1323()) > tol)
        throw PreconditionViolated("solve_special requires R1223 = R1323 = 0");
    if (std::abs(R.r1212()) <= tol)
        throw PreconditionViolated("solve_special requires R1212 != 0");

    GaussOutcome out;
    out.T = thomas_T(R);
    double disc = R.r1212() * R.r1313() - R.r1213() * R.r1213();
    if (std::abs(R.r2323()) > tol) {
        double S = disc / R.r2323();
        out.S = S;
        if (S > 0.0) {
            SecondFundamentalForm h;
            h.h11 = std::sqrt(S);
            h.h22 = R.r1212() / h.h11;
            h.h33 = R.r1313() / h.h11;
            h.h23 = R.r1213() / h.h11;
            out.status = GaussStatus::UniquePair;
            out.h = h;
        } else {
            out.status = GaussStatus::NoSolution;
            out.reason = NoSolutionReason::SNonpositive;
        }
        return out;
    }
    // R2323 = 0: solvable iff R1212 R1313 = R1213^2, continuously deformable.
    if (std::abs(disc) <= eps * scale * scale) {
        ContinuousFamilyInfo fam;
        fam.kind = FamilyKind::DegenerateTwoParameter;
        fam.h11 = 1.0;
        fam.h12 = 0.0;
        double ratio = R.r1213() / R.r1212();
        SecondFundamentalForm h;
        h.h11 = fam.h11;
        h.h12 = fam.h12;
        h.h22 = (R.r1212() + fam.h12 * fam.h12) / fam.h11;
        h.h23 = ratio * h.h22;
        h.h33 = ratio * ratio * h.h22;
        h.h13 = ratio * fam.h12;
        fam.basepoint = h;
        fam.description =
            "free h11 != 0 and h12; h22=(R1212+h12^2)/h11, h23=(R1213/R1212)h22, "
            "h33=(R1213/R1212)^2 h22, h13=(R1213/R1212)h12";
        out.status = GaussStatus::ContinuousFamily;
        out.family = fam;
        out.h = h;
    } else {
        out.status = GaussStatus::NoSolution;
        out.reason = NoSolutionReason::DegenerateInconsistent;
    }
    return out;
}

std::array<double, 3> sym3_eigenvalues(const std::array<std::array<double, 3>, 3>& m) {
    double p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    std::array<double, 3> eig;
    if (p1 == 0.0) {
        eig = {m[0][0], m[1][1], m[2][2]};
        std::sort(eig.begin(), eig.end());
        return eig;
    }
    double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    double p2 = (m[0][0] - q) * (m[0][0] - q) + (m[1][1] - q) * (m[1][1] - q) +
                (m[2][2] - q) * (m[2][2] - q) + 2.0 * p1;
    double p = std::sqrt(p2 / 6.0);
    double b00 = (m[0][0] - q) / p, b11 = (m[1][1] - q) / p, b22 = (m[2][2] - q) / p;
    double b01 = m[0][1] / p, b02 = m[0][2] / p, b12 = m[1][2] / p;
    double detb = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) +
                  b02 * (b01 * b12 - b11 * b02);
    double r = std::clamp(detb / 2.0, -1.0, 1.0);
    double phi = std::acos(r) / 3.0;
    double e_hi = q + 2.0 * p * std::cos(phi);
    double e_lo = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    double e_mid = 3.0 * q - e_hi - e_lo;
    eig = {e_lo, e_mid, e_hi};
    std::sort(eig.begin(), eig.end());
    return eig;
}

namespace {

std::array<std::array<double, 3>, 3> curvature_matrix(const CurvatureTensor& R) {
    std::array<std::array<double, 3>, 3> m;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) m[p][q] = R.matrix_entry(p, q);
    return m;
}

int count_nonzero_eigenvalues(const CurvatureTensor& R, double tol) {
    auto m = curvature_matrix(R);
    auto eig = sym3_eigenvalues(m);
    int n = 0;
    for (double e : eig)
        if (std::abs(e) > tol) ++n;
    if (n <= 1) return n;
    // The trigonometric cubic resolves clustered roots only to about
    // sqrt(machine eps) * |M|; near-rank-1 counts defer to the 2x2 minors,
    // whose rounding error is O(eps * |M|^2).  max_minor / max_entry
    // estimates the second-largest eigenvalue magnitude.
    double max_entry = 0.0, max_minor = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) max_entry = std::max(max_entry, std::abs(m[i][j]));
    for (int r1 = 0; r1 < 3; ++r1)
        for (int r2 = r1 + 1; r2 < 3; ++r2)
            for (int c1 = 0; c1 < 3; ++c1)
                for (int c2 = c1 + 1; c2 < 3; ++c2)
                    max_minor = std::max(
                        max_minor, std::abs(m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]));
    if (max_entry > 0.0 && max_minor / max_entry <= tol) return 1;
    return n;
}

}  // namespace

// For a rank-1 curvature matrix the Gauss system reads adj(h) = A with
// A = K M K (K the exchange matrix with the middle axis negated).  A rank-2
// h with kernel along A's eigenvector and complementary eigenvalue product
// equal to A's nonzero eigenvalue solves it.
std::optional<SecondFundamentalForm> rank_one_family_member(const CurvatureTensor& R, double split,
                                                            double theta) {
    if (split == 0.0) return std::nullopt;
    auto m = curvature_matrix(R);
    std::array<std::array<double, 3>, 3> A{};
    static constexpr double K[3][3] = {{0, 0, 1}, {0, -1, 0}, {1, 0, 0}};
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
            double sum = 0.0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) sum += K[p][a] * m[a][b] * K[b][q];
            A[p][q] = sum;
        }
    // Dominant column of A is parallel to the eigenvector q of its single
    // nonzero eigenvalue.
    int best = 0;
    double best_norm = -1.0;
    for (int j = 0; j < 3; ++j) {
        double n2 = A[0][j] * A[0][j] + A[1][j] * A[1][j] + A[2][j] * A[2][j];
        if (n2 > best_norm) { best_norm = n2; best = j; }
    }
    if (best_norm <= 0.0) return std::nullopt;
    std::array<double, 3> q{A[0][best], A[1][best], A[2][best]};
    double qn = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
    for (double& x : q) x /= qn;
    int imax = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(q[i]) > std::abs(q[imax])) imax = i;
    if (q[imax] < 0)
        for (double& x : q) x = -x;
    double mu = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) mu += q[i] * A[i][j] * q[j];
    // Orthonormal completion {q1, q2, q}, rotated by theta in the plane.
    int smin = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(q[i]) < std::abs(q[smin])) smin = i;
    std::array<double, 3> q1{};
    q1[smin] = 1.0;
    double proj = q1[0] * q[0] + q1[1] * q[1] + q1[2] * q[2];
    for (int i = 0; i < 3; ++i) q1[i] -= proj * q[i];
    double q1n = std::sqrt(q1[0] * q1[0] + q1[1] * q1[1] + q1[2] * q1[2]);
    for (double& x : q1) x /= q1n;
    std::array<double, 3> q2{q[1] * q1[2] - q[2] * q1[1], q[2] * q1[0] - q[0] * q1[2],
                             q[0] * q1[1] - q[1] * q1[0]};
    if (theta != 0.0) {
        double ct = std::cos(theta), st = std::sin(theta);
        for (int i = 0; i < 3; ++i) {
            double r1 = ct * q1[i] + st * q2[i];
            double r2 = -st * q1[i] + ct * q2[i];
            q1[i] = r1;
            q2[i] = r2;
        }
    }
    double mu1 = split * mu;
    double mu2 = 1.0 / split;
    SecondFundamentalForm h;
    auto entry = [&](int i, int j) { return mu1 * q1[i] * q1[j] + mu2 * q2[i] * q2[j]; };
    h.h11 = entry(0, 0);
    h.h12 = entry(0, 1);
    h.h13 = entry(0, 2);
    h.h22 = entry(1, 1);
    h.h23 = entry(1, 2);
    h.h33 = entry(2, 2);
    if (gauss_residual(h, R) > 1e-7 * std::max(1.0, R.max_abs())) return std::nullopt;
    return h;
}

namespace {

std::optional<GaussOutcome> solve_rank_one(const CurvatureTensor& R, double /*eps*/) {
    auto h = rank_one_family_member(R, 1.0, 0.0);
    if (!h) return std::nullopt;
    GaussOutcome out;
    out.status = GaussStatus::ContinuousFamily;
    out.T = thomas_T(R);
    ContinuousFamilyInfo fam;
    fam.kind = FamilyKind::RankOneSpectral;
    fam.basepoint = *h;
    fam.description =
        "rank-1 curvature matrix; h = mu1 q1 q1^T + mu2 q2 q2^T with mu1 mu2 fixed, "
        "basis rotation free";
    out.family = fam;
    out.h = h;
    out.flags.push_back("RANK_ONE_SPECTRAL");
    return out;
}

}  // namespace

bool jacobowitz_test(const CurvatureTensor& R, double eps) {
    double scale = std::max(1.0, R.max_abs());
    double tol = eps * scale;
    if (R.max_abs() <= eps)
        throw ZeroCurvature("jacobowitz_test requires a non-flat curvature tensor");
    if (thomas_T(R) > eps * scale * scale * scale) return true;
    return count_nonzero_eigenvalues(R, tol) == 1;
}

GaussOutcome solve(const CurvatureTensor& R, double eps) {
    double scale = std::max(1.0, R.max_abs());
    double tol = eps * scale;
    if (R.max_abs() <= eps) {
        GaussOutcome out;
        out.status = GaussStatus::FlatTrivial;
        out.h = SecondFundamentalForm{};
        out.T = 0.0;
        return out;
    }
    if (std::abs(R.r1223()) <= tol && std::abs(R.r1323()) <= tol && std::abs(R.r1212()) > tol)
        return solve_special(R, eps);
    double T = thomas_T(R);
    double tolT = eps * scale * scale * scale;
    if (T > tolT) return thomas_inverse(R);

    GaussOutcome out;
    out.T = T;
    if (T < -tolT) {
        out.status = GaussStatus::NoSolution;
        out.reason = NoSolutionReason::TNegative;
        return out;
    }
    // T ~ 0 without the degenerate special structure: solvable exactly when the
    // curvature matrix has one nonzero eigenvalue.
    if (count_nonzero_eigenvalues(R, tol) == 1) {
        if (auto rank_one = solve_rank_one(R, eps)) return *rank_one;
    }
    out.status = GaussStatus::NoSolution;
    out.reason = NoSolutionReason::RankConditionFailed;
    out.flags.push_back("UNVERIFIED");
    return out;
}

}  // namespace gaussembed
