#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gaussembed/emit.hpp"
#include "gaussembed/selftest.hpp"

namespace ge = gaussembed;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitUnwritable = 3;
constexpr int kExitBadInput = 4;  // Jacobi violation, invalid frame, unsolvable precondition
constexpr int kExitGaussObstructed = 10;
constexpr int kExitDerivedObstructed = 11;

std::vector<double> parse_reals(const std::string& csv, std::size_t n, const char* what) {
    std::vector<double> values;
    std::istringstream in(csv);
    std::string token;
    while (std::getline(in, token, ',')) {
        try {
            std::size_t pos = 0;
            values.push_back(std::stod(token, &pos));
            if (pos != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw ge::ParseError(std::string(what) + ": bad real '" + token + "'");
        }
    }
    if (values.size() != n) {
        std::ostringstream msg;
        msg << what << ": expected " << n << " comma-separated reals, got " << values.size();
        throw ge::ParseError(msg.str());
    }
    return values;
}

struct PointArgs {
    std::string family;
    std::optional<double> alpha, lambda, u, v;

    void add_to(CLI::App* cmd, bool required) {
        auto* f = cmd->add_option("--family", family,
                                  "abelian | h3 | r3 | r3-alpha | r3-prime-alpha | simple");
        if (required) f->required();
        cmd->add_option("--alpha", alpha, "family parameter alpha");
        cmd->add_option("--lambda", lambda, "family parameter lambda");
        cmd->add_option("--u", u, "simple-family parameter u");
        cmd->add_option("--v", v, "simple-family parameter v");
    }

    ge::FamilyPoint resolve() const {
        ge::Family fam = ge::family_from_name(family);
        auto need = [&](const std::optional<double>& x, const char* name) {
            if (!x) throw ge::ParseError(std::string("family '") + family + "' requires --" + name);
            return *x;
        };
        switch (fam) {
            case ge::Family::Abelian: return ge::FamilyPoint::abelian();
            case ge::Family::Heisenberg: return ge::FamilyPoint::heisenberg();
            case ge::Family::Solvable: return ge::FamilyPoint::solvable(need(lambda, "lambda"));
            case ge::Family::SolvableAlpha:
                return ge::FamilyPoint::solvable_alpha(need(alpha, "alpha"),
                                                       need(lambda, "lambda"));
            case ge::Family::SolvablePrimeAlpha:
                return ge::FamilyPoint::solvable_prime_alpha(need(alpha, "alpha"),
                                                             need(lambda, "lambda"));
            case ge::Family::Simple:
                return ge::FamilyPoint::simple(need(u, "u"), need(v, "v"));
        }
        throw ge::ParseError("unhandled family");
    }
};

// Resolved geometry input: always a structure tensor in an orthonormal
// basis, plus the canonical frame / family point when they are known.
struct GeometryInput {
    ge::StructureTensor structure;
    std::optional<ge::CanonicalFrame> frame;
    std::optional<ge::FamilyPoint> point;
};

struct InputArgs {
    PointArgs point_args;
    std::string canonical;   // "a,b,c,d,t"
    std::string structure_path;
    std::string gram_path;

    void add_to(CLI::App* cmd) {
        point_args.add_to(cmd, false);
        cmd->add_option("--canonical", canonical, "canonical frame a,b,c,d,t");
        cmd->add_option("--structure", structure_path,
                        "structure-constant file: 27 reals c[1][1][1]..c[3][3][3]");
        cmd->add_option("--gram", gram_path, "Gram matrix file: 9 reals (default identity)");
    }

    int source_count() const {
        return (!point_args.family.empty() ? 1 : 0) + (!canonical.empty() ? 1 : 0) +
               (!structure_path.empty() ? 1 : 0);
    }

    GeometryInput resolve() const {
        if (source_count() != 1)
            throw ge::ParseError("give exactly one of --family, --canonical, --structure");
        if (!gram_path.empty() && structure_path.empty())
            throw ge::ParseError("--gram requires --structure");
        GeometryInput in;
        if (!point_args.family.empty()) {
            in.point = point_args.resolve();
            in.frame = ge::canonical_frame_of(*in.point);
            in.structure = ge::structure_tensor_of(*in.frame);
            return in;
        }
        if (!canonical.empty()) {
            auto c = parse_reals(canonical, 5, "--canonical");
            in.frame = ge::CanonicalFrame(c[0], c[1], c[2], c[3], c[4]);
            in.structure = ge::structure_tensor_of(*in.frame);
            return in;
        }
        ge::StructureTensor raw = ge::read_structure_file(structure_path);
        double violation = ge::jacobi_check(raw);
        if (violation > 1e-6) {
            std::ostringstream msg;
            msg << "input brackets violate the Jacobi identity (max violation "
                << ge::fmt_real(violation) << ")";
            throw ge::PreconditionViolated(msg.str());
        }
        ge::InnerProduct ip =
            gram_path.empty() ? ge::InnerProduct::identity() : ge::read_gram_file(gram_path);
        in.structure = ge::orthonormalize(raw, ip).structure;
        return in;
    }
};

ge::CurvatureTensor curvature_of(const GeometryInput& in) {
    return in.frame ? ge::riemann_closed_form(*in.frame) : ge::riemann_generic(in.structure);
}

ge::CheckContext context_of(const GeometryInput& in) {
    if (in.point) return ge::make_check_context(*in.point);
    if (in.frame) return ge::make_check_context(*in.frame);
    ge::CheckContext ctx;
    ctx.R = ge::riemann_generic(in.structure);
    ctx.dR = ge::nabla_r_generic(in.structure);
    return ctx;
}

int write_output(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return kExitUnwritable;
    }
    out << content;
    if (!out) {
        std::cerr << "error: write to '" << path << "' failed\n";
        return kExitUnwritable;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gauss / derived-Gauss solvability for left-invariant metrics on "
                 "3-dimensional Lie groups"};
    app.require_subcommand(1);

    double epsilon = 1e-9;
    unsigned threads = 0;
    app.add_option("--epsilon", epsilon, "numeric zero threshold")
        ->envname("GAUSS_EMBED_EPS")
        ->check(CLI::PositiveNumber);
    app.add_option("--threads", threads, "worker threads for scans (0 = hardware)");

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "embeddability verdict for a family point");
    PointArgs classify_point;
    classify_point.add_to(classify_cmd, true);
    std::string classify_format = "json";
    classify_cmd->add_option("--format", classify_format, "json | text | csv")
        ->check(CLI::IsMember({"json", "text", "csv"}));

    // curvature
    auto* curvature_cmd = app.add_subcommand("curvature", "curvature tensor R and nabla R");
    InputArgs curvature_input;
    curvature_input.add_to(curvature_cmd);

    // gauss
    auto* gauss_cmd = app.add_subcommand("gauss", "solve the codimension-1 Gauss equation");
    InputArgs gauss_input;
    gauss_input.add_to(gauss_cmd);
    std::string gauss_raw_R;
    gauss_cmd->add_option("--R", gauss_raw_R,
                          "curvature components r1212,r1313,r2323,r1213,r1223,r1323");

    // derived
    auto* derived_cmd = app.add_subcommand("derived", "solve the derived Gauss equation");
    InputArgs derived_input;
    derived_input.add_to(derived_cmd);

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "classify a parameter grid to CSV/JSON");
    std::string scan_family, scan_out;
    std::string scan_format = "csv";
    std::string alpha_range, lambda_range, u_range, w_range;
    scan_cmd->add_option("--family", scan_family, "family to scan")->required();
    scan_cmd->add_option("--out", scan_out, "output path")->required();
    scan_cmd->add_option("--format", scan_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    scan_cmd->add_option("--alpha-range", alpha_range, "lo:hi:step");
    scan_cmd->add_option("--lambda-range", lambda_range, "lo:hi:step");
    scan_cmd->add_option("--u-range", u_range, "lo:hi:step");
    scan_cmd->add_option("--w-range", w_range, "lo:hi:step (w = 2(v-1))");

    // selftest
    auto* selftest_cmd = app.add_subcommand("selftest", "run the library property suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (classify_cmd->parsed()) {
            ge::ClassifierReport report = ge::classify(classify_point.resolve(), epsilon);
            if (classify_format == "json") {
                std::cout << ge::classify_to_json(report) << "\n";
            } else if (classify_format == "text") {
                std::cout << ge::classify_to_text(report);
            } else {
                std::cout << ge::kCsvHeader << "\n"
                          << ge::csv_row(ge::scan_row_from_report(report)) << "\n";
            }
            switch (report.verdict.status) {
                case ge::VerdictStatus::EmbeddableKnown: return kExitOk;
                case ge::VerdictStatus::GaussObstructed: return kExitGaussObstructed;
                case ge::VerdictStatus::DerivedGaussObstructed: return kExitDerivedObstructed;
            }
        }

        if (curvature_cmd->parsed()) {
            GeometryInput in = curvature_input.resolve();
            ge::CurvatureTensor R = curvature_of(in);
            ge::NablaR dR = ge::nabla_r_generic(in.structure);
            std::cout << ge::curvature_to_json(R, dR) << "\n";
            return kExitOk;
        }

        if (gauss_cmd->parsed()) {
            ge::CurvatureTensor R;
            if (!gauss_raw_R.empty()) {
                if (gauss_input.source_count() != 0)
                    throw ge::ParseError("--R cannot be combined with another input source");
                auto r = parse_reals(gauss_raw_R, 6, "--R");
                R = ge::CurvatureTensor(r[0], r[1], r[2], r[3], r[4], r[5]);
            } else {
                R = curvature_of(gauss_input.resolve());
            }
            std::cout << ge::gauss_to_json(ge::solve(R, epsilon)) << "\n";
            return kExitOk;
        }

        if (derived_cmd->parsed()) {
            GeometryInput in = derived_input.resolve();
            ge::CheckContext ctx = context_of(in);
            ge::GaussOutcome outcome = ge::solve(ctx.R, epsilon);
            if (outcome.status == ge::GaussStatus::NoSolution) {
                std::cerr << "error: the Gauss equation has no solution ("
                          << ge::to_string(outcome.reason)
                          << "); the derived equation needs one\n";
                return kExitBadInput;
            }
            std::cout << ge::derived_to_json(ge::check(ctx, outcome, epsilon)) << "\n";
            return kExitOk;
        }

        if (scan_cmd->parsed()) {
            ge::GridSpec spec;
            spec.family = ge::family_from_name(scan_family);
            if (!alpha_range.empty()) spec.alpha = ge::GridRange::parse(alpha_range);
            if (!lambda_range.empty()) spec.lambda = ge::GridRange::parse(lambda_range);
            if (!u_range.empty()) spec.u = ge::GridRange::parse(u_range);
            if (!w_range.empty()) spec.w = ge::GridRange::parse(w_range);
            std::vector<ge::ScanRow> rows = ge::region_scan(spec, epsilon, threads);
            std::string content =
                scan_format == "csv" ? ge::scan_to_csv(rows) : ge::scan_to_json(rows);
            return write_output(scan_out, content);
        }

        if (selftest_cmd->parsed()) {
            return ge::run_selftest(std::cout) ? kExitOk : 1;
        }
    } catch (const ge::PreconditionViolated& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const ge::NotPositiveDefinite& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const ge::Error& e) {
        // ParseError, InvalidPoint and relatives are usage errors.
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
