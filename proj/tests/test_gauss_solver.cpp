#include <doctest.h>

#include <cmath>
#include <random>

#include "gaussembed/gauss_solver.hpp"
#include "gaussembed/metric_lie_algebra.hpp"

using namespace gaussembed;

namespace {

CurvatureTensor family_curvature(const FamilyPoint& p) {
    return riemann_closed_form(canonical_frame_of(p));
}

CurvatureTensor round_so3() { return CurvatureTensor(0.25, 0.25, 0.25, 0, 0, 0); }
CurvatureTensor heisenberg_R() { return CurvatureTensor(-0.75, 0.25, 0.25, 0, 0, 0); }

SecondFundamentalForm negate(const SecondFundamentalForm& h) {
    SecondFundamentalForm n = h;
    n.h11 = -n.h11; n.h12 = -n.h12; n.h13 = -n.h13;
    n.h22 = -n.h22; n.h23 = -n.h23; n.h33 = -n.h33;
    return n;
}

double h_distance(const SecondFundamentalForm& a, const SecondFundamentalForm& b) {
    double d = 0.0;
    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j) d = std::max(d, std::abs(a.at(i, j) - b.at(i, j)));
    return d;
}

}  // namespace

TEST_CASE("gauss_residual") {
    SUBCASE("half identity solves the round so(3) tensor") {
        SecondFundamentalForm h;
        h.h11 = h.h22 = h.h33 = 0.5;
        CHECK(gauss_residual(h, round_so3()) == 0.0);
    }
    SUBCASE("zero against zero") {
        CHECK(gauss_residual(SecondFundamentalForm{}, CurvatureTensor{}) == 0.0);
    }
    SUBCASE("zero against heisenberg gives the largest component") {
        CHECK(gauss_residual(SecondFundamentalForm{}, heisenberg_R()) == 0.75);
    }
}

TEST_CASE("thomas_T") {
    CHECK(thomas_T(heisenberg_R()) == doctest::Approx(-3.0 / 64).epsilon(1e-14));
    CHECK(thomas_T(round_so3()) == doctest::Approx(1.0 / 64).epsilon(1e-14));
    CHECK(thomas_T(CurvatureTensor{}) == 0.0);
}

TEST_CASE("thomas_inverse") {
    SUBCASE("round so(3) yields h = diag(1/2)") {
        GaussOutcome out = thomas_inverse(round_so3());
        REQUIRE(out.status == GaussStatus::UniquePair);
        CHECK(out.h->h11 == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(out.h->h22 == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(out.h->h33 == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(std::abs(out.h->h12) <= 1e-14);
        CHECK(gauss_residual(*out.h, round_so3()) <= 1e-9);
    }
    SUBCASE("r3 at lambda 0.8 matches the S-based formulas") {
        CurvatureTensor R = family_curvature(FamilyPoint::solvable(0.8));
        GaussOutcome out = thomas_inverse(R);
        REQUIRE(out.status == GaussStatus::UniquePair);
        double S = (R.r1212() * R.r1313() - R.r1213() * R.r1213()) / R.r2323();
        double h11 = std::sqrt(S);
        CHECK(std::abs(out.h->h11 - h11) <= 1e-12);
        CHECK(std::abs(out.h->h22 - R.r1212() / h11) <= 1e-12);
        CHECK(std::abs(out.h->h33 - R.r1313() / h11) <= 1e-12);
        CHECK(std::abs(out.h->h23 - R.r1213() / h11) <= 1e-12);
        CHECK(std::abs(out.h->h12) <= 1e-14);
        CHECK(std::abs(out.h->h13) <= 1e-14);
        CHECK(gauss_residual(*out.h, R) <= 1e-9);
    }
    SUBCASE("rejects T <= 0") {
        CHECK_THROWS_AS(thomas_inverse(heisenberg_R()), TNotPositive);
        CHECK_THROWS_AS(thomas_inverse(CurvatureTensor{}), TNotPositive);
    }
    SUBCASE("sign canonicalization: first nonzero entry positive") {
        GaussOutcome out = thomas_inverse(family_curvature(FamilyPoint::solvable(0.8)));
        CHECK(out.h->h11 > 0.0);
    }
}

TEST_CASE("solve_special") {
    SUBCASE("heisenberg: S = -3/4, no solution") {
        GaussOutcome out = solve_special(heisenberg_R());
        CHECK(out.status == GaussStatus::NoSolution);
        CHECK(out.reason == NoSolutionReason::SNonpositive);
        REQUIRE(out.S.has_value());
        CHECK(*out.S == doctest::Approx(-0.75).epsilon(1e-14));
    }
    SUBCASE("r3 at lambda 1: degenerate inconsistent") {
        CurvatureTensor R = family_curvature(FamilyPoint::solvable(1.0));
        CHECK(R.r1212() == doctest::Approx(-4).epsilon(1e-14));
        CHECK(R.r1313() == 0.0);
        CHECK(R.r2323() == 0.0);
        CHECK(R.r1213() == doctest::Approx(-2).epsilon(1e-14));
        GaussOutcome out = solve_special(R);
        CHECK(out.status == GaussStatus::NoSolution);
        CHECK(out.reason == NoSolutionReason::DegenerateInconsistent);
        CHECK(!out.S.has_value());
    }
    SUBCASE("r3,0 at lambda 0: continuous family with the documented basepoint") {
        CurvatureTensor R(-1, 0, 0, 0, 0, 0);
        GaussOutcome out = solve_special(R);
        REQUIRE(out.status == GaussStatus::ContinuousFamily);
        REQUIRE(out.family.has_value());
        CHECK(out.family->h11 == 1.0);
        CHECK(out.family->h12 == 0.0);
        CHECK(out.family->basepoint.h22 == doctest::Approx(-1).epsilon(1e-14));
        CHECK(out.family->basepoint.h23 == 0.0);
        CHECK(out.family->basepoint.h33 == 0.0);
        CHECK(out.family->basepoint.h13 == 0.0);
        CHECK(gauss_residual(out.family->basepoint, R) <= 1e-12);
    }
    SUBCASE("rejects tensors without the special structure") {
        CHECK_THROWS_AS(solve_special(CurvatureTensor(-1, 0, 0, 0, 0.5, 0)),
                        PreconditionViolated);
        CHECK_THROWS_AS(solve_special(CurvatureTensor(0, 1, 1, 0, 0, 0)), PreconditionViolated);
    }
}

TEST_CASE("jacobowitz_test") {
    SUBCASE("r3,1: T < 0, three nonzero eigenvalues") {
        CHECK(!jacobowitz_test(CurvatureTensor(-1, -1, -1, 0, 0, 0)));
    }
    SUBCASE("rank one diagonal: exactly one nonzero eigenvalue") {
        CHECK(jacobowitz_test(CurvatureTensor(-1, 0, 0, 0, 0, 0)));
    }
    SUBCASE("round so(3): T > 0") {
        CHECK(jacobowitz_test(round_so3()));
    }
    SUBCASE("flat input throws") {
        CHECK_THROWS_AS(jacobowitz_test(CurvatureTensor{}), ZeroCurvature);
    }
}

TEST_CASE("sym3_eigenvalues closed form") {
    SUBCASE("diagonal") {
        auto e = sym3_eigenvalues({{{3, 0, 0}, {0, -1, 0}, {0, 0, 2}}});
        CHECK(e[0] == -1.0);
        CHECK(e[1] == 2.0);
        CHECK(e[2] == 3.0);
    }
    SUBCASE("known spectrum") {
        // [[2,1,0],[1,2,0],[0,0,5]] has eigenvalues 1, 3, 5.
        auto e = sym3_eigenvalues({{{2, 1, 0}, {1, 2, 0}, {0, 0, 5}}});
        CHECK(e[0] == doctest::Approx(1).epsilon(1e-12));
        CHECK(e[1] == doctest::Approx(3).epsilon(1e-12));
        CHECK(e[2] == doctest::Approx(5).epsilon(1e-12));
    }
    SUBCASE("characteristic polynomial vanishes on random symmetric matrices") {
        std::mt19937_64 rng(37);
        std::uniform_real_distribution<double> dist(-3.0, 3.0);
        for (int trial = 0; trial < 200; ++trial) {
            std::array<std::array<double, 3>, 3> m{};
            for (int i = 0; i < 3; ++i)
                for (int j = i; j < 3; ++j) m[i][j] = m[j][i] = dist(rng);
            auto eig = sym3_eigenvalues(m);
            for (double e : eig) {
                double det = (m[0][0] - e) * ((m[1][1] - e) * (m[2][2] - e) - m[1][2] * m[1][2]) -
                             m[0][1] * (m[0][1] * (m[2][2] - e) - m[1][2] * m[0][2]) +
                             m[0][2] * (m[0][1] * m[1][2] - (m[1][1] - e) * m[0][2]);
                CHECK(std::abs(det) <= 1e-9);
            }
        }
    }
}

TEST_CASE("solve dispatcher") {
    SUBCASE("zero tensor is flat-trivial") {
        GaussOutcome out = solve(CurvatureTensor{});
        CHECK(out.status == GaussStatus::FlatTrivial);
        CHECK(out.h->max_abs() == 0.0);
    }
    SUBCASE("heisenberg is unsolvable") {
        CHECK(solve(heisenberg_R()).status == GaussStatus::NoSolution);
    }
    SUBCASE("simple (0,3) has a unique pair") {
        GaussOutcome out = solve(family_curvature(FamilyPoint::simple(0, 3)));
        CHECK(out.status == GaussStatus::UniquePair);
    }
    SUBCASE("rank-one tensor off the special structure is continuously solvable") {
        // Only R2323 nonzero: R1212 = 0 defeats the special-case solver and
        // T = 0, but the curvature matrix has exactly one nonzero eigenvalue.
        CurvatureTensor R(0, 0, 1, 0, 0, 0);
        GaussOutcome out = solve(R);
        REQUIRE(out.status == GaussStatus::ContinuousFamily);
        CHECK(gauss_residual(out.family->basepoint, R) <= 1e-9);
        CHECK(std::find(out.flags.begin(), out.flags.end(), "RANK_ONE_SPECTRAL") !=
              out.flags.end());
    }
    SUBCASE("off-axis rank-one tensor") {
        // M = q q^T with q = (1,1,1): R1213 = R1223 = R1323 = 1 breaks the
        // special structure; eigenvalues are (3, 0, 0).
        CurvatureTensor R(1, 1, 1, 1, 1, 1);
        GaussOutcome out = solve(R);
        REQUIRE(out.status == GaussStatus::ContinuousFamily);
        CHECK(gauss_residual(out.family->basepoint, R) <= 1e-9);
    }
    SUBCASE("T ~ 0 with two nonzero eigenvalues and no special structure is refused") {
        CurvatureTensor R(0, 1, -1, 0, 0.0, 0.0);
        // R1212 = 0 so the special solver does not apply; T = 0.
        GaussOutcome out = solve(R);
        CHECK(out.status == GaussStatus::NoSolution);
        CHECK(out.reason == NoSolutionReason::RankConditionFailed);
        CHECK(std::find(out.flags.begin(), out.flags.end(), "UNVERIFIED") != out.flags.end());
    }
    SUBCASE("T < 0 without special structure reports T_NEGATIVE") {
        // Perturb the off-diagonals so the special precondition fails.
        CurvatureTensor R(-1, -1, -1, 0, 0.5, 0);
        GaussOutcome out = solve(R);
        CHECK(out.status == GaussStatus::NoSolution);
        CHECK(out.reason == NoSolutionReason::TNegative);
    }
}

TEST_CASE("solve is consistent with jacobowitz_test") {
    std::vector<CurvatureTensor> tensors = {
        heisenberg_R(),
        round_so3(),
        family_curvature(FamilyPoint::solvable(0.8)),
        family_curvature(FamilyPoint::solvable(1.0)),
        family_curvature(FamilyPoint::solvable(0.3)),
        family_curvature(FamilyPoint::solvable_alpha(-0.5, 0)),
        family_curvature(FamilyPoint::solvable_alpha(0.5, 1.1)),
        family_curvature(FamilyPoint::solvable_prime_alpha(1, 2)),
        family_curvature(FamilyPoint::solvable_prime_alpha(1, 3)),
        family_curvature(FamilyPoint::simple(0, 3)),
        family_curvature(FamilyPoint::simple(1.5, 1)),
        CurvatureTensor(0, 0, 1, 0, 0, 0),
        CurvatureTensor(1, 1, 1, 1, 1, 1),
        CurvatureTensor(0, 1, -1, 0, 0, 0),
        CurvatureTensor(-1, -1, -1, 0, 0.5, 0),
    };
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int i = 0; i < 200; ++i)
        tensors.push_back(CurvatureTensor(dist(rng), dist(rng), dist(rng), dist(rng), dist(rng),
                                          dist(rng)));
    for (const auto& R : tensors) {
        if (R.max_abs() <= 1e-9) continue;
        bool solvable_by_solve = solve(R).status != GaussStatus::NoSolution;
        CHECK(solvable_by_solve == jacobowitz_test(R));
    }
}

TEST_CASE("sign pair and statistical uniqueness") {
    CurvatureTensor R = family_curvature(FamilyPoint::solvable(0.8));
    GaussOutcome out = solve(R);
    REQUIRE(out.status == GaussStatus::UniquePair);
    const SecondFundamentalForm& h = *out.h;
    SecondFundamentalForm neg = negate(h);
    CHECK(gauss_residual(h, R) <= 1e-9);
    CHECK(gauss_residual(neg, R) <= 1e-9);

    // Random search: no sample far from +-h passes the residual test.
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int i = 0; i < 100000; ++i) {
        SecondFundamentalForm cand;
        cand.h11 = dist(rng); cand.h12 = dist(rng); cand.h13 = dist(rng);
        cand.h22 = dist(rng); cand.h23 = dist(rng); cand.h33 = dist(rng);
        if (gauss_residual(cand, R) <= 1e-9)
            CHECK(std::min(h_distance(cand, h), h_distance(cand, neg)) <= 1e-6);
    }
}

TEST_CASE("thomas_inverse and solve_special agree up to sign") {
    std::vector<FamilyPoint> points = {
        FamilyPoint::solvable(0.8),
        FamilyPoint::solvable(0.95),
        FamilyPoint::solvable_alpha(-0.5, 0.1),
        FamilyPoint::solvable_alpha(-1, 0.2),
        FamilyPoint::solvable_prime_alpha(1, 2),
        FamilyPoint::simple(0, 3),
        FamilyPoint::simple(2, 1),
        FamilyPoint::simple(0, 2),
    };
    for (const auto& p : points) {
        CurvatureTensor R = family_curvature(p);
        GaussOutcome special = solve_special(R);
        REQUIRE(special.status == GaussStatus::UniquePair);
        GaussOutcome thomas = thomas_inverse(R);
        double d_plus = h_distance(*thomas.h, *special.h);
        double d_minus = h_distance(*thomas.h, negate(*special.h));
        CHECK(std::min(d_plus, d_minus) <= 1e-9);
    }
}

TEST_CASE("thomas_inverse recovers a random h from its own minors") {
    // Forward map: the six 2x2 minors of any symmetric h with det(h) != 0
    // form a curvature tensor with T = det(h)^2 > 0; the inverse formula
    // must return +-h.  This exercises the general formula with all six
    // components nonzero, beyond the canonical-frame special structure.
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    int done = 0;
    while (done < 300) {
        SecondFundamentalForm h;
        h.h11 = dist(rng); h.h12 = dist(rng); h.h13 = dist(rng);
        h.h22 = dist(rng); h.h23 = dist(rng); h.h33 = dist(rng);
        double det = h.h11 * (h.h22 * h.h33 - h.h23 * h.h23) -
                     h.h12 * (h.h12 * h.h33 - h.h23 * h.h13) +
                     h.h13 * (h.h12 * h.h23 - h.h22 * h.h13);
        if (std::abs(det) < 0.1) continue;
        ++done;
        CurvatureTensor R(h.h11 * h.h22 - h.h12 * h.h12, h.h11 * h.h33 - h.h13 * h.h13,
                          h.h22 * h.h33 - h.h23 * h.h23, h.h11 * h.h23 - h.h13 * h.h12,
                          h.h12 * h.h23 - h.h13 * h.h22, h.h12 * h.h33 - h.h13 * h.h23);
        double T = thomas_T(R);
        CHECK(T > 0.0);
        CHECK(std::abs(T - det * det) <= 1e-9 * std::max(1.0, det * det));
        GaussOutcome out = thomas_inverse(R);
        REQUIRE(out.status == GaussStatus::UniquePair);
        double scale = std::max(1.0, h.max_abs());
        CHECK(std::min(h_distance(*out.h, h), h_distance(*out.h, negate(h))) <= 1e-9 * scale);
        CHECK(gauss_residual(*out.h, R) <= 1e-9 * scale * scale);
    }
}

TEST_CASE("solve handles minors of rank-2 forms through the rank-one branch") {
    // A rank-2 symmetric h has rank-1 minors tensor (T = 0); solve must
    // still report a continuously deformable solution.
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        // h = a a^T + b b^T with random a, b: rank <= 2.
        double a[3] = {dist(rng), dist(rng), dist(rng)};
        double b[3] = {dist(rng), dist(rng), dist(rng)};
        SecondFundamentalForm h;
        h.h11 = a[0] * a[0] + b[0] * b[0];
        h.h12 = a[0] * a[1] + b[0] * b[1];
        h.h13 = a[0] * a[2] + b[0] * b[2];
        h.h22 = a[1] * a[1] + b[1] * b[1];
        h.h23 = a[1] * a[2] + b[1] * b[2];
        h.h33 = a[2] * a[2] + b[2] * b[2];
        CurvatureTensor R(h.h11 * h.h22 - h.h12 * h.h12, h.h11 * h.h33 - h.h13 * h.h13,
                          h.h22 * h.h33 - h.h23 * h.h23, h.h11 * h.h23 - h.h13 * h.h12,
                          h.h12 * h.h23 - h.h13 * h.h22, h.h12 * h.h33 - h.h13 * h.h23);
        if (R.max_abs() < 1e-3) continue;  // nearly rank-1 h, nearly flat R
        GaussOutcome out = solve(R);
        CHECK(out.status != GaussStatus::NoSolution);
        if (out.h) CHECK(gauss_residual(*out.h, R) <= 1e-7 * std::max(1.0, R.max_abs()));
    }
}

TEST_CASE("T is nonnegative whenever a solution exists") {
    std::vector<CurvatureTensor> solvable = {
        round_so3(),
        family_curvature(FamilyPoint::solvable(0.8)),
        family_curvature(FamilyPoint::solvable_alpha(0, 0)),
        family_curvature(FamilyPoint::solvable_alpha(-0.5, 0)),
        CurvatureTensor(0, 0, 1, 0, 0, 0),
    };
    for (const auto& R : solvable) {
        GaussOutcome out = solve(R);
        REQUIRE(out.status != GaussStatus::NoSolution);
        CHECK(thomas_T(R) >= -1e-9);
    }
}

TEST_CASE("solvability status is scaling invariant") {
    std::vector<FamilyPoint> points = {
        FamilyPoint::heisenberg(),        FamilyPoint::solvable(0.8),
        FamilyPoint::solvable(1.0),       FamilyPoint::solvable_alpha(0, 0),
        FamilyPoint::simple(0, 3),        FamilyPoint::solvable_prime_alpha(1, 2),
        FamilyPoint::solvable_prime_alpha(1, 3),
    };
    for (const auto& p : points) {
        CurvatureTensor R = family_curvature(p);
        GaussOutcome base = solve(R);
        for (double k : {0.25, 4.0}) {
            CurvatureTensor scaled(R.r1212() / k, R.r1313() / k, R.r2323() / k, R.r1213() / k,
                                   R.r1223() / k, R.r1323() / k);
            GaussOutcome out = solve(scaled);
            CHECK(out.status == base.status);
            if (base.status == GaussStatus::UniquePair) {
                // h scales by 1/sqrt(k).
                double expect = base.h->h11 / std::sqrt(k);
                CHECK(std::abs(out.h->h11 - expect) <= 1e-9 * std::max(1.0, std::abs(expect)));
            }
        }
    }
}
