#include "gaussembed/selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "gaussembed/classifier.hpp"

namespace gaussembed {

namespace {

std::mt19937_64 make_rng() { return std::mt19937_64(0x67617573u); }

// Admissible random frame: parameters uniform in [-2,2]; alternates between
// the t = 0 branch and the a + d = 0 branch so both are exercised.
CanonicalFrame random_frame(std::mt19937_64& rng, bool force_t_zero) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    double a = dist(rng), b = dist(rng), c = dist(rng), d = dist(rng), t = dist(rng);
    if (force_t_zero) return CanonicalFrame(a, b, c, d, 0.0);
    return CanonicalFrame(a, b, c, -a, t);
}

struct Suite {
    std::ostream& out;
    bool all_ok = true;

    void run(const char* name, const std::function<bool(std::string&)>& body) {
        std::string detail;
        bool ok = body(detail);
        all_ok = all_ok && ok;
        out << (ok ? "[ ok ]" : "[FAIL]") << " " << name;
        if (!detail.empty()) out << " (" << detail << ")";
        out << "\n";
    }
};

bool closed_vs_generic(std::string& detail) {
    auto rng = make_rng();
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        CanonicalFrame f = random_frame(rng, i % 2 == 0);
        CurvatureTensor closed = riemann_closed_form(f);
        CurvatureTensor generic = riemann_generic(structure_tensor_of(f));
        for (int slot = 0; slot < 6; ++slot)
            worst = std::max(worst, std::abs(closed.component(slot) - generic.component(slot)));
    }
    detail = "worst " + std::to_string(worst);
    return worst <= 1e-10;
}

bool nabla_closed_vs_generic(std::string& detail) {
    auto rng = make_rng();
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        CanonicalFrame f = random_frame(rng, true);
        NablaR dR = nabla_r_generic(structure_tensor_of(f));
        SolvableNablaComponents closed = nabla_r_closed_solvable(f);
        worst = std::max({worst, std::abs(closed.d2_r1223 - dR.at(2, 1, 2, 2, 3)),
                          std::abs(closed.d2_r3123 - dR.at(2, 3, 1, 2, 3)),
                          std::abs(closed.d3_r1223 - dR.at(3, 1, 2, 2, 3)),
                          std::abs(closed.d3_r3123 - dR.at(3, 3, 1, 2, 3))});
    }
    for (int i = 0; i < 200; ++i) {
        double u = dist(rng), v = dist(rng);
        if (u == v || u == -v) continue;
        CanonicalFrame f(0, (v - u) / 4.0, -(u + v) / 4.0, 0, 0.5);
        NablaR dR = nabla_r_generic(structure_tensor_of(f));
        SimpleNablaComponents closed = nabla_r_closed_simple(u, v);
        worst = std::max({worst, std::abs(closed.d1_r1213 - dR.at(1, 1, 2, 1, 3)),
                          std::abs(closed.d2_r1223 - dR.at(2, 1, 2, 2, 3)),
                          std::abs(closed.d3_r2313 - dR.at(3, 2, 3, 1, 3))});
    }
    detail = "worst " + std::to_string(worst);
    return worst <= 1e-10;
}

bool tensor_symmetries(std::string& detail) {
    auto rng = make_rng();
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        CanonicalFrame f = random_frame(rng, i % 2 == 0);
        StructureTensor s = structure_tensor_of(f);
        CurvatureTensor R = riemann_generic(s);
        NablaR dR = nabla_r_generic(s);
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b)
                for (int c = 1; c <= 3; ++c)
                    for (int d = 1; d <= 3; ++d) {
                        // First Bianchi.
                        worst = std::max(worst, std::abs(R.at(a, b, c, d) + R.at(b, c, a, d) +
                                                         R.at(c, a, b, d)));
                        // Second Bianchi for every derivative slot.
                        for (int p = 1; p <= 3; ++p)
                            worst = std::max(worst,
                                             std::abs(dR.at(p, a, b, c, d) + dR.at(a, b, p, c, d) +
                                                      dR.at(b, p, a, c, d)));
                    }
    }
    detail = "worst " + std::to_string(worst);
    return worst <= 1e-10;
}

bool scaling_covariance(std::string& detail) {
    auto rng = make_rng();
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        CanonicalFrame f = random_frame(rng, i % 2 == 0);
        for (double k : {0.25, 4.0}) {
            double s = 1.0 / std::sqrt(k);
            CanonicalFrame g(f.a() * s, f.b() * s, f.c() * s, f.d() * s, f.t() * s);
            CurvatureTensor Rf = riemann_closed_form(f);
            CurvatureTensor Rg = riemann_closed_form(g);
            for (int slot = 0; slot < 6; ++slot)
                worst = std::max(worst,
                                 std::abs(Rg.component(slot) - Rf.component(slot) / k));
        }
    }
    detail = "worst " + std::to_string(worst);
    return worst <= 1e-10;
}

bool gauss_consistency(std::string& detail) {
    // Family points with a unique pair: residual, sign pair, and agreement
    // of the Thomas inverse with the special-case solver.
    std::vector<CurvatureTensor> tensors;
    tensors.push_back(riemann_closed_form(canonical_frame_of(FamilyPoint::solvable(0.8))));
    tensors.push_back(riemann_closed_form(canonical_frame_of(FamilyPoint::simple(0, 3))));
    tensors.push_back(riemann_closed_form(canonical_frame_of(FamilyPoint::simple(2, 1))));
    tensors.push_back(
        riemann_closed_form(canonical_frame_of(FamilyPoint::solvable_alpha(-0.5, 0.1))));
    tensors.push_back(
        riemann_closed_form(canonical_frame_of(FamilyPoint::solvable_prime_alpha(1, 2))));
    double worst = 0.0;
    for (const auto& R : tensors) {
        GaussOutcome special = solve(R);
        if (special.status != GaussStatus::UniquePair) return false;
        worst = std::max(worst, gauss_residual(*special.h, R));
        SecondFundamentalForm neg = *special.h;
        neg.h11 = -neg.h11; neg.h12 = -neg.h12; neg.h13 = -neg.h13;
        neg.h22 = -neg.h22; neg.h23 = -neg.h23; neg.h33 = -neg.h33;
        worst = std::max(worst, gauss_residual(neg, R));
        GaussOutcome thomas = thomas_inverse(R);
        double diff = 0.0, diff_neg = 0.0;
        for (int i = 1; i <= 3; ++i)
            for (int j = i; j <= 3; ++j) {
                diff = std::max(diff, std::abs(thomas.h->at(i, j) - special.h->at(i, j)));
                diff_neg = std::max(diff_neg, std::abs(thomas.h->at(i, j) + special.h->at(i, j)));
            }
        worst = std::max(worst, std::min(diff, diff_neg));
        if (!jacobowitz_test(R)) return false;
    }
    detail = "worst " + std::to_string(worst);
    return worst <= 1e-9;
}

bool simple_polynomial_identity(std::string& detail) {
    double worst = 0.0;
    for (int i = 0; i <= 60; ++i)
        for (int j = 0; j <= 60; ++j) {
            double u = -3.0 + 0.1 * i;
            double v = -3.0 + 0.1 * j;
            double l1 = u * u * u * u + (v - 1) * u * u * u + (v - 3) * u * u +
                        (4 * v * v - 9 * v + 5) * u - v + 2;
            double l2 = (v - 3) * u * u * u + (3 * v - 5) * u * u + (4 * v * v - 5 * v + 3) * u +
                        v + 1;
            double rhs = (u + 1) * (u + 1) * (u * u - 2 * v + 1);
            worst = std::max(worst, std::abs(l1 - l2 - rhs));
        }
    detail = "worst " + std::to_string(worst);
    return worst <= 1e-10;
}

bool derived_sign_independence(std::string& detail) {
    FamilyPoint p = FamilyPoint::solvable(0.8);
    CurvatureTensor R = riemann_closed_form(canonical_frame_of(p));
    GaussOutcome out = solve(R);
    GaussOutcome flipped = out;
    SecondFundamentalForm neg = *out.h;
    neg.h11 = -neg.h11; neg.h12 = -neg.h12; neg.h13 = -neg.h13;
    neg.h22 = -neg.h22; neg.h23 = -neg.h23; neg.h33 = -neg.h33;
    flipped.h = neg;
    DerivedObstructionReport a = check(p, out);
    DerivedObstructionReport b = check(p, flipped);
    detail = "residuals " + std::to_string(a.residual) + " / " + std::to_string(b.residual);
    return a.solvable == b.solvable && std::abs(a.residual - b.residual) <= 1e-12;
}

bool jacobi_families(std::string& detail) {
    double worst = 0.0;
    std::vector<FamilyPoint> points = {
        FamilyPoint::abelian(),           FamilyPoint::heisenberg(),
        FamilyPoint::solvable(0.8),       FamilyPoint::solvable_alpha(-0.5, 0.3),
        FamilyPoint::solvable_alpha(1, 0), FamilyPoint::solvable_prime_alpha(0.5, 1.5),
        FamilyPoint::simple(0, 2),        FamilyPoint::simple(2, 1),
    };
    for (const auto& p : points)
        worst = std::max(worst, jacobi_check(structure_tensor_of(canonical_frame_of(p))));
    detail = "worst " + std::to_string(worst);
    return worst <= 1e-12;
}

}  // namespace

bool run_selftest(std::ostream& out) {
    Suite suite{out};
    suite.run("curvature closed form vs generic (1000 frames)", closed_vs_generic);
    suite.run("nabla R closed forms vs generic (200+200 frames)", nabla_closed_vs_generic);
    suite.run("tensor symmetries and Bianchi identities", tensor_symmetries);
    suite.run("scaling covariance k in {0.25, 4}", scaling_covariance);
    suite.run("Gauss solver residual / sign pair / Thomas agreement", gauss_consistency);
    suite.run("simple-family polynomial identity l1-l2", simple_polynomial_identity);
    suite.run("derived check sign independence", derived_sign_independence);
    suite.run("Jacobi identity on family frames", jacobi_families);
    out << (suite.all_ok ? "selftest: all suites passed" : "selftest: FAILURES") << "\n";
    return suite.all_ok;
}

}  // namespace gaussembed
