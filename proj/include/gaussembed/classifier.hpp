#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gaussembed/derived_gauss.hpp"

namespace gaussembed {

enum class VerdictStatus { EmbeddableKnown, GaussObstructed, DerivedGaussObstructed };

const char* to_string(VerdictStatus v);

/// Result of the published solvability inequality for a family point.
/// lower/upper are the window bounds (on lambda, |lambda| or w) when the
/// inequality has that shape; equality-branch families (r3,0 / r3',0) carry
/// only the description.
struct GaussWindow {
    bool solvable = false;
    std::optional<double> lower, upper;
    double boundary_distance = std::numeric_limits<double>::infinity();
    std::string description;
};

GaussWindow gauss_window(const FamilyPoint& point);

// The Prop G_simple inequalities as a pure function of (u, w = 2(v-1)).
// Valid for every u != +-v; exposed separately for region scans across the
// whole (u,w) plane.
bool simple_gauss_predicate(double u, double w);
double simple_boundary_distance(double u, double w);

struct Verdict {
    VerdictStatus status = VerdictStatus::GaussObstructed;
    double T = 0.0;
    std::optional<double> S;
    GaussWindow window;
    std::optional<double> obstruction;                  // solvable-case closed form
    std::optional<std::array<double, 3>> simple_triple; // simple-case closed form
    GaussStatus gauss_status = GaussStatus::NoSolution; // numeric pipeline
    std::optional<bool> derived_solvable;               // numeric pipeline
    bool pipeline_agrees = true;
    std::vector<std::string> flags;
};

struct ClassifierReport {
    FamilyPoint point;
    Verdict verdict;
    std::optional<double> w;  // 2(v-1), simple family only
};

// Exact-predicate classification cross-checked against the numeric
// curvature -> Gauss -> derived pipeline.  Throws InvalidPoint for
// out-of-range parameters.
ClassifierReport classify(const FamilyPoint& point, double eps = kDefaultEps);

struct GridRange {
    double lo = 0, hi = 0, step = 0;

    std::size_t count() const;
    double at(std::size_t i) const { return lo + static_cast<double>(i) * step; }
    static GridRange parse(const std::string& spec);  // "lo:hi:step"
};

struct GridSpec {
    Family family = Family::Abelian;
    std::optional<GridRange> alpha, lambda, u, w;
};

/// One scanned grid cell.  Rows without a verdict are excluded loci.
struct ScanRow {
    Family family = Family::Abelian;
    std::optional<double> alpha, lambda, u, v, w;
    std::optional<bool> gauss_solvable;   // exact predicate
    std::optional<bool> derived_solvable; // numeric check, Gauss-solvable cells only
    std::optional<VerdictStatus> verdict;
    std::optional<double> T, S;
    std::optional<bool> pipeline_agrees;
    std::vector<std::string> flags;  // BOUNDARY, EXCLUDED_NOT_SIMPLE, NONCANONICAL, INVALID_POINT
};

// Evaluates the grid; rejects empty grids (ParseError).  threads = 0 means
// hardware concurrency; rows are ordered by grid index regardless.
std::vector<ScanRow> region_scan(const GridSpec& spec, double eps = kDefaultEps,
                                 unsigned threads = 0);

// Flattens a report into the CSV row shape (flags reduced to the scan
// vocabulary).
ScanRow scan_row_from_report(const ClassifierReport& report);

}  // namespace gaussembed
