#include "gaussembed/emit.hpp"

#include <cstdio>
#include <sstream>

namespace gaussembed {

std::string fmt_real(double x) {
    if (x == 0.0) return "0";  // normalizes -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::string opt_real(const std::optional<double>& x) { return x ? fmt_real(*x) : "null"; }

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

std::string flags_json(const std::vector<std::string>& flags) {
    std::string out = "[";
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (i) out += ",";
        out += quoted(flags[i]);
    }
    return out + "]";
}

std::string h_matrix_json(const SecondFundamentalForm& h) {
    std::ostringstream out;
    out << "[[" << fmt_real(h.h11) << "," << fmt_real(h.h12) << "," << fmt_real(h.h13) << "],["
        << fmt_real(h.h12) << "," << fmt_real(h.h22) << "," << fmt_real(h.h23) << "],["
        << fmt_real(h.h13) << "," << fmt_real(h.h23) << "," << fmt_real(h.h33) << "]]";
    return out.str();
}

const char* slot_name(int slot) {
    static constexpr const char* kNames[6] = {"1212", "1313", "2323", "1213", "1223", "1323"};
    return kNames[slot];
}

std::string join_flags(const std::vector<std::string>& flags) {
    std::string out;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (i) out += ";";
        out += flags[i];
    }
    return out;
}

}  // namespace

std::string curvature_to_json(const CurvatureTensor& R, const NablaR& dR) {
    std::ostringstream out;
    out << "{\"R\":{";
    for (int slot = 0; slot < 6; ++slot) {
        if (slot) out << ",";
        out << quoted(slot_name(slot)) << ":" << fmt_real(R.component(slot));
    }
    out << "},\"dR\":{";
    for (int p = 1; p <= 3; ++p) {
        if (p > 1) out << ",";
        out << "\"" << p << "\":{";
        for (int slot = 0; slot < 6; ++slot) {
            if (slot) out << ",";
            out << quoted(slot_name(slot)) << ":" << fmt_real(dR.component(p, slot));
        }
        out << "}";
    }
    out << "}}";
    return out.str();
}

std::string gauss_to_json(const GaussOutcome& o) {
    std::ostringstream out;
    out << "{\"status\":" << quoted(to_string(o.status));
    out << ",\"reason\":";
    if (o.status == GaussStatus::NoSolution)
        out << quoted(to_string(o.reason));
    else
        out << "null";
    out << ",\"T\":" << fmt_real(o.T);
    out << ",\"S\":" << opt_real(o.S);
    out << ",\"h\":" << (o.h ? h_matrix_json(*o.h) : "null");
    out << ",\"free_parameters\":";
    if (o.family) {
        out << "{\"h11\":" << fmt_real(o.family->h11) << ",\"h12\":" << fmt_real(o.family->h12)
            << ",\"description\":" << quoted(o.family->description) << "}";
    } else {
        out << "null";
    }
    out << ",\"flags\":" << flags_json(o.flags) << "}";
    return out.str();
}

std::string derived_to_json(const DerivedObstructionReport& r) {
    std::ostringstream out;
    out << "{\"solvable\":" << (r.solvable ? "true" : "false");
    out << ",\"residual\":" << fmt_real(r.residual);
    out << ",\"h3\":";
    if (r.h3) {
        out << "[";
        for (int i = 0; i < 10; ++i) {
            if (i) out << ",";
            out << fmt_real(r.h3->component(i));
        }
        out << "]";
    } else {
        out << "null";
    }
    out << ",\"closed_form\":{\"solvable_obstruction\":"
        << opt_real(r.closed_form.solvable_obstruction);
    out << ",\"simple_triple\":";
    if (r.closed_form.simple_triple) {
        const auto& t = *r.closed_form.simple_triple;
        out << "[" << fmt_real(t[0]) << "," << fmt_real(t[1]) << "," << fmt_real(t[2]) << "]";
    } else {
        out << "null";
    }
    out << ",\"l1\":" << opt_real(r.closed_form.l1) << ",\"l2\":" << opt_real(r.closed_form.l2)
        << "}";
    out << ",\"flags\":" << flags_json(r.flags) << "}";
    return out.str();
}

namespace {

bool has_param(const FamilyPoint& p, char which) {
    switch (p.family) {
        case Family::Solvable: return which == 'l';
        case Family::SolvableAlpha:
        case Family::SolvablePrimeAlpha: return which == 'a' || which == 'l';
        case Family::Simple: return which == 'u' || which == 'v';
        default: return false;
    }
}

}  // namespace

std::string classify_to_json(const ClassifierReport& rep) {
    const FamilyPoint& p = rep.point;
    const Verdict& v = rep.verdict;
    std::ostringstream out;
    out << "{\"family\":" << quoted(family_name(p.family));
    out << ",\"alpha\":" << (has_param(p, 'a') ? fmt_real(p.alpha) : "null");
    out << ",\"lambda\":" << (has_param(p, 'l') ? fmt_real(p.lambda) : "null");
    out << ",\"u\":" << (has_param(p, 'u') ? fmt_real(p.u) : "null");
    out << ",\"v\":" << (has_param(p, 'v') ? fmt_real(p.v) : "null");
    out << ",\"w\":" << opt_real(rep.w);
    out << ",\"verdict\":" << quoted(to_string(v.status));
    out << ",\"gauss_status\":" << quoted(to_string(v.gauss_status));
    out << ",\"derived_solvable\":";
    if (v.derived_solvable)
        out << (*v.derived_solvable ? "true" : "false");
    else
        out << "null";
    out << ",\"T\":" << fmt_real(v.T);
    out << ",\"S\":" << opt_real(v.S);
    out << ",\"window\":{\"solvable\":" << (v.window.solvable ? "true" : "false")
        << ",\"lower\":" << opt_real(v.window.lower) << ",\"upper\":" << opt_real(v.window.upper)
        << ",\"description\":" << quoted(v.window.description) << "}";
    out << ",\"obstruction\":" << opt_real(v.obstruction);
    out << ",\"simple_triple\":";
    if (v.simple_triple) {
        const auto& t = *v.simple_triple;
        out << "[" << fmt_real(t[0]) << "," << fmt_real(t[1]) << "," << fmt_real(t[2]) << "]";
    } else {
        out << "null";
    }
    out << ",\"pipeline_agrees\":" << (v.pipeline_agrees ? "true" : "false");
    out << ",\"flags\":" << flags_json(v.flags) << "}";
    return out.str();
}

std::string classify_to_text(const ClassifierReport& rep) {
    const FamilyPoint& p = rep.point;
    const Verdict& v = rep.verdict;
    std::ostringstream out;
    out << "family: " << family_name(p.family) << "\n";
    if (has_param(p, 'a')) out << "alpha: " << fmt_real(p.alpha) << "\n";
    if (has_param(p, 'l')) out << "lambda: " << fmt_real(p.lambda) << "\n";
    if (has_param(p, 'u'))
        out << "u: " << fmt_real(p.u) << "\nv: " << fmt_real(p.v)
            << "\nw: " << fmt_real(2 * (p.v - 1)) << "\n";
    out << "verdict: " << to_string(v.status) << "\n";
    out << "gauss: " << to_string(v.gauss_status);
    if (v.S) out << " (S = " << fmt_real(*v.S) << ")";
    out << "\nT: " << fmt_real(v.T) << "\n";
    if (v.window.lower || v.window.upper) {
        out << "window: ";
        out << (v.window.lower ? fmt_real(*v.window.lower) : std::string("-inf"));
        out << " .. ";
        out << (v.window.upper ? fmt_real(*v.window.upper) : std::string("inf"));
        out << "\n";
    }
    if (v.derived_solvable)
        out << "derived solvable: " << (*v.derived_solvable ? "yes" : "no") << "\n";
    if (v.obstruction) out << "obstruction: " << fmt_real(*v.obstruction) << "\n";
    out << "pipeline agrees: " << (v.pipeline_agrees ? "yes" : "no") << "\n";
    if (!v.flags.empty()) out << "flags: " << join_flags(v.flags) << "\n";
    return out.str();
}

std::string csv_row(const ScanRow& row) {
    auto cell = [](const std::optional<double>& x) { return x ? fmt_real(*x) : std::string(); };
    std::ostringstream out;
    out << family_name(row.family) << "," << cell(row.alpha) << "," << cell(row.lambda) << ","
        << cell(row.u) << "," << cell(row.v) << "," << cell(row.w) << "," << cell(row.T) << ","
        << cell(row.S) << ",";
    if (row.gauss_solvable) out << (*row.gauss_solvable ? "SOLVABLE" : "UNSOLVABLE");
    out << ",";
    if (row.derived_solvable) out << (*row.derived_solvable ? "SOLVABLE" : "UNSOLVABLE");
    out << ",";
    if (row.verdict) out << to_string(*row.verdict);
    out << "," << join_flags(row.flags);
    return out.str();
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
    std::ostringstream out;
    out << kCsvHeader << "\n";
    for (const auto& row : rows) out << csv_row(row) << "\n";
    return out.str();
}

std::string scan_to_json(const std::vector<ScanRow>& rows) {
    std::ostringstream out;
    out << "{\"rows\":[";
    bool first = true;
    for (const auto& row : rows) {
        if (!first) out << ",";
        first = false;
        out << "{\"family\":" << quoted(family_name(row.family));
        out << ",\"alpha\":" << opt_real(row.alpha) << ",\"lambda\":" << opt_real(row.lambda);
        out << ",\"u\":" << opt_real(row.u) << ",\"v\":" << opt_real(row.v)
            << ",\"w\":" << opt_real(row.w);
        out << ",\"T\":" << opt_real(row.T) << ",\"S\":" << opt_real(row.S);
        out << ",\"gauss_status\":";
        if (row.gauss_solvable)
            out << quoted(*row.gauss_solvable ? "SOLVABLE" : "UNSOLVABLE");
        else
            out << "null";
        out << ",\"derived_status\":";
        if (row.derived_solvable)
            out << quoted(*row.derived_solvable ? "SOLVABLE" : "UNSOLVABLE");
        else
            out << "null";
        out << ",\"verdict\":";
        if (row.verdict)
            out << quoted(to_string(*row.verdict));
        else
            out << "null";
        out << ",\"flag\":" << quoted(join_flags(row.flags)) << "}";
    }
    out << "]}";
    return out.str();
}

}  // namespace gaussembed
