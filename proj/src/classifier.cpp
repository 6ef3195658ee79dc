#include "gaussembed/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

namespace gaussembed {

const char* to_string(VerdictStatus v) {
    switch (v) {
        case VerdictStatus::EmbeddableKnown: return "EMBEDDABLE_KNOWN";
        case VerdictStatus::GaussObstructed: return "GAUSS_OBSTRUCTED";
        case VerdictStatus::DerivedGaussObstructed: return "DERIVED_GAUSS_OBSTRUCTED";
    }
    return "?";
}

namespace {

// Lower window bound shared by the r3,alpha branches.
double r3_alpha_bound(double alpha) {
    double a2 = alpha * alpha;
    return std::sqrt(std::sqrt((1 + a2) * (1 + a2) + 12 * a2) - (1 + a2)) /
           (std::sqrt(6.0) * (1 - alpha));
}

}  // namespace

bool simple_gauss_predicate(double u, double w) {
    if (u == 0.0) return w > 1.0;
    double au = std::abs(u);
    double a = std::abs((1 - u * u) / u);
    if (au <= 1.0) return (1 - u * u < w && w < a) || (w < -a);
    return (std::abs(w) < a) || (w < 1 - u * u);
}

double simple_boundary_distance(double u, double w) {
    if (u == 0.0) return std::abs(w - 1.0);
    double a = std::abs((1 - u * u) / u);
    return std::min({std::abs(w - (1 - u * u)), std::abs(w - a), std::abs(w + a)});
}

GaussWindow gauss_window(const FamilyPoint& p) {
    GaussWindow win;
    switch (p.family) {
        case Family::Abelian:
            win.solvable = true;
            win.description = "flat; any rank-<=1 h solves";
            return win;
        case Family::Heisenberg:
            win.solvable = false;
            win.description = "S = -3/4 < 0 for the unique metric";
            return win;
        case Family::Solvable:
            win.lower = 1.0 / std::sqrt(3.0);
            win.upper = 1.0;
            win.solvable = *win.lower < p.lambda && p.lambda < *win.upper;
            win.boundary_distance =
                std::min(std::abs(p.lambda - *win.lower), std::abs(p.lambda - *win.upper));
            win.description = "1/sqrt(3) < lambda < 1";
            return win;
        case Family::SolvableAlpha: {
            if (p.alpha == 1.0) {
                win.solvable = false;
                win.description = "r3,1: constant curvature -1, no solution";
                return win;
            }
            if (p.alpha == 0.0) {
                win.solvable = (p.lambda == 0.0);
                win.boundary_distance = std::abs(p.lambda);
                win.description = "solvable iff lambda = 0";
                return win;
            }
            double b = r3_alpha_bound(p.alpha);
            if (p.alpha < 0.0) {
                win.upper = b;
                win.solvable = std::abs(p.lambda) < b;
                win.boundary_distance = std::abs(std::abs(p.lambda) - b);
                win.description = "|lambda| < bound(alpha)";
            } else {
                double c = std::sqrt(p.alpha) / (1 - p.alpha);
                win.lower = b;
                win.upper = c;
                win.solvable = b < std::abs(p.lambda) && std::abs(p.lambda) < c;
                win.boundary_distance = std::min(std::abs(std::abs(p.lambda) - b),
                                                 std::abs(std::abs(p.lambda) - c));
                win.description = "bound(alpha) < |lambda| < sqrt(alpha)/(1-alpha)";
            }
            return win;
        }
        case Family::SolvablePrimeAlpha: {
            if (p.alpha == 0.0) {
                win.solvable = (p.lambda == 1.0);
                win.boundary_distance = std::abs(p.lambda - 1.0);
                win.description = "solvable iff lambda = 1 (flat)";
                return win;
            }
            double a2 = p.alpha * p.alpha;
            win.lower = std::sqrt((1 + 2 * a2 + 2 * std::sqrt(1 + a2 + a2 * a2)) / 3.0);
            win.upper = p.alpha + std::sqrt(1 + a2);
            win.solvable = *win.lower < p.lambda && p.lambda < *win.upper;
            win.boundary_distance =
                std::min(std::abs(p.lambda - *win.lower), std::abs(p.lambda - *win.upper));
            win.description = "sqrt((1+2a^2+2sqrt(1+a^2+a^4))/3) < lambda < a+sqrt(1+a^2)";
            return win;
        }
        case Family::Simple: {
            double w = 2 * (p.v - 1);
            win.solvable = simple_gauss_predicate(p.u, w);
            win.boundary_distance = simple_boundary_distance(p.u, w);
            if (p.u == 0.0) win.lower = 1.0;
            win.description = "sign conditions on w = 2(v-1) vs (1-u^2) and |(1-u^2)/u|";
            return win;
        }
    }
    throw InvalidPoint("unhandled family");
}

namespace {

constexpr double kBoundaryEps = 1e-6;
constexpr double kRoundSlack = 1e-12;

// Classification body shared by classify() and the scan's noncanonical
// simple cells (which bypass FamilyPoint validation).
ClassifierReport classify_core(const FamilyPoint& p, double eps) {
    ClassifierReport report;
    report.point = p;
    Verdict& v = report.verdict;
    v.window = gauss_window(p);

    bool embeddable = false;
    switch (p.family) {
        case Family::Abelian: embeddable = true; break;
        case Family::SolvableAlpha: embeddable = (p.alpha == 0.0 && p.lambda == 0.0); break;
        case Family::SolvablePrimeAlpha: embeddable = (p.alpha == 0.0 && p.lambda == 1.0); break;
        case Family::Simple:
            embeddable = std::abs(p.u) <= kRoundSlack && std::abs(p.v - 2.0) <= kRoundSlack;
            break;
        default: break;
    }
    if (embeddable)
        v.status = VerdictStatus::EmbeddableKnown;
    else
        v.status = v.window.solvable ? VerdictStatus::DerivedGaussObstructed
                                     : VerdictStatus::GaussObstructed;
    if (p.family == Family::Simple) report.w = 2 * (p.v - 1);

    // Numeric cross-check: closed-form curvature through the Gauss and
    // derived solvers, with the generic curvature path as a validation flag.
    CanonicalFrame frame = canonical_frame_of(p);
    CurvatureTensor R = riemann_closed_form(frame);
    CurvatureTensor Rgen = riemann_generic(structure_tensor_of(frame));
    for (int slot = 0; slot < 6; ++slot)
        if (std::abs(R.component(slot) - Rgen.component(slot)) > 1e-10) {
            v.flags.push_back("CLOSED_FORM_MISMATCH");
            break;
        }

    GaussOutcome outcome = solve(R, eps);
    v.T = outcome.T;
    v.S = outcome.S;
    v.gauss_status = outcome.status;
    for (const auto& f : outcome.flags) v.flags.push_back(f);

    if (outcome.status != GaussStatus::NoSolution) {
        CheckContext ctx = make_check_context(frame);
        if (p.family == Family::Simple) ctx.simple_uv = std::make_pair(p.u, p.v);
        DerivedObstructionReport rep = check(ctx, outcome, eps);
        v.derived_solvable = rep.solvable;
        v.obstruction = rep.closed_form.solvable_obstruction;
        v.simple_triple = rep.closed_form.simple_triple;
        for (const auto& f : rep.flags) v.flags.push_back(f);
    }

    switch (v.status) {
        case VerdictStatus::EmbeddableKnown:
            v.pipeline_agrees = outcome.status != GaussStatus::NoSolution &&
                                v.derived_solvable.value_or(false);
            break;
        case VerdictStatus::GaussObstructed:
            v.pipeline_agrees = outcome.status == GaussStatus::NoSolution;
            break;
        case VerdictStatus::DerivedGaussObstructed:
            v.pipeline_agrees = outcome.status != GaussStatus::NoSolution &&
                                !v.derived_solvable.value_or(true);
            break;
    }
    // Distance exactly 0 means the deciding comparison is an exact equality
    // (e.g. lambda == 1 on a grid), not a rounding-fragile near miss.
    if (v.window.boundary_distance > 0.0 && v.window.boundary_distance < kBoundaryEps)
        v.flags.push_back("BOUNDARY");
    return report;
}

}  // namespace

ClassifierReport classify(const FamilyPoint& p, double eps) {
    // Route through the factories so range violations surface as
    // InvalidPoint regardless of how the struct was filled.
    switch (p.family) {
        case Family::Abelian: FamilyPoint::abelian(); break;
        case Family::Heisenberg: FamilyPoint::heisenberg(); break;
        case Family::Solvable: FamilyPoint::solvable(p.lambda); break;
        case Family::SolvableAlpha: FamilyPoint::solvable_alpha(p.alpha, p.lambda); break;
        case Family::SolvablePrimeAlpha:
            FamilyPoint::solvable_prime_alpha(p.alpha, p.lambda);
            break;
        case Family::Simple: FamilyPoint::simple(p.u, p.v); break;
    }
    return classify_core(p, eps);
}

std::size_t GridRange::count() const {
    if (!(step > 0.0) || hi < lo) throw ParseError("grid range requires lo <= hi and step > 0");
    return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

GridRange GridRange::parse(const std::string& spec) {
    GridRange r;
    char c1, c2;
    std::istringstream in(spec);
    if (!(in >> r.lo >> c1 >> r.hi >> c2 >> r.step) || c1 != ':' || c2 != ':')
        throw ParseError("malformed range '" + spec + "' (expected lo:hi:step)");
    std::string rest;
    if (in >> rest) throw ParseError("malformed range '" + spec + "'");
    r.count();  // validates
    return r;
}

ScanRow scan_row_from_report(const ClassifierReport& rep) {
    ScanRow row;
    row.family = rep.point.family;
    const Verdict& v = rep.verdict;
    switch (rep.point.family) {
        case Family::Solvable:
            row.lambda = rep.point.lambda;
            break;
        case Family::SolvableAlpha:
        case Family::SolvablePrimeAlpha:
            row.alpha = rep.point.alpha;
            row.lambda = rep.point.lambda;
            break;
        case Family::Simple:
            row.u = rep.point.u;
            row.v = rep.point.v;
            row.w = rep.w;
            break;
        default: break;
    }
    row.gauss_solvable = v.window.solvable;
    row.derived_solvable = v.derived_solvable;
    row.verdict = v.status;
    row.T = v.T;
    row.S = v.S;
    row.pipeline_agrees = v.pipeline_agrees;
    for (const auto& f : v.flags)
        if (f == "BOUNDARY" || f == "NONCANONICAL" || f == "EXHAUSTIVENESS_LIMITED" ||
            f == "UNVERIFIED")
            row.flags.push_back(f);
    return row;
}

namespace {

ScanRow scan_cell(const GridSpec& spec, std::size_t index, double eps) {
    switch (spec.family) {
        case Family::Abelian:
            return scan_row_from_report(classify_core(FamilyPoint::abelian(), eps));
        case Family::Heisenberg:
            return scan_row_from_report(classify_core(FamilyPoint::heisenberg(), eps));
        case Family::Solvable: {
            double lambda = spec.lambda->at(index);
            try {
                return scan_row_from_report(classify_core(FamilyPoint::solvable(lambda), eps));
            } catch (const InvalidPoint&) {
                ScanRow row;
                row.family = spec.family;
                row.lambda = lambda;
                row.flags.push_back("INVALID_POINT");
                return row;
            }
        }
        case Family::SolvableAlpha:
        case Family::SolvablePrimeAlpha: {
            std::size_t nl = spec.lambda->count();
            double alpha = spec.alpha->at(index / nl);
            double lambda = spec.lambda->at(index % nl);
            try {
                FamilyPoint p = spec.family == Family::SolvableAlpha
                                    ? FamilyPoint::solvable_alpha(alpha, lambda)
                                    : FamilyPoint::solvable_prime_alpha(alpha, lambda);
                return scan_row_from_report(classify_core(p, eps));
            } catch (const InvalidPoint&) {
                ScanRow row;
                row.family = spec.family;
                row.alpha = alpha;
                row.lambda = lambda;
                row.flags.push_back("INVALID_POINT");
                return row;
            }
        }
        case Family::Simple: {
            std::size_t nw = spec.w->count();
            double u = spec.u->at(index / nw);
            double w = spec.w->at(index % nw);
            double v = w / 2.0 + 1.0;
            ScanRow row;
            row.family = spec.family;
            row.u = u;
            row.v = v;
            row.w = w;
            if (std::abs(u - v) <= kRoundSlack || std::abs(u + v) <= kRoundSlack) {
                row.flags.push_back("EXCLUDED_NOT_SIMPLE");
                return row;
            }
            FamilyPoint p{Family::Simple, 0, 0, u, v};
            ClassifierReport rep = classify_core(p, eps);
            row = scan_row_from_report(rep);
            if (u + v < 0.0) row.flags.push_back("NONCANONICAL");
            return row;
        }
    }
    throw InvalidPoint("unhandled family");
}

}  // namespace

std::vector<ScanRow> region_scan(const GridSpec& spec, double eps, unsigned threads) {
    std::size_t total = 0;
    switch (spec.family) {
        case Family::Abelian:
        case Family::Heisenberg:
            total = 1;
            break;
        case Family::Solvable:
            if (!spec.lambda) throw ParseError("r3 scan requires --lambda-range");
            total = spec.lambda->count();
            break;
        case Family::SolvableAlpha:
        case Family::SolvablePrimeAlpha:
            if (!spec.alpha || !spec.lambda)
                throw ParseError("scan requires --alpha-range and --lambda-range");
            total = spec.alpha->count() * spec.lambda->count();
            break;
        case Family::Simple:
            if (!spec.u || !spec.w) throw ParseError("simple scan requires --u-range and --w-range");
            total = spec.u->count() * spec.w->count();
            break;
    }
    if (total == 0) throw ParseError("empty grid");

    std::vector<ScanRow> rows(total);
    unsigned n = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    n = std::min<std::size_t>(n, total);
    if (n <= 1) {
        for (std::size_t i = 0; i < total; ++i) rows[i] = scan_cell(spec, i, eps);
        return rows;
    }
    std::vector<std::thread> workers;
    workers.reserve(n);
    for (unsigned t = 0; t < n; ++t)
        workers.emplace_back([&, t] {
            for (std::size_t i = t; i < total; i += n) rows[i] = scan_cell(spec, i, eps);
        });
    for (auto& w : workers) w.join();
    return rows;
}

}  // namespace gaussembed
