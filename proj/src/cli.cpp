#include "grade3/cli.hpp"

#include "grade3/engine.hpp"
#include "grade3/permissibility.hpp"
#include "grade3/planner.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace grade3::cli {

namespace {

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidDocument, "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::InvalidDocument, "'" + path + "' is not valid JSON");
    }
}

void emit(const Json& doc, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << doc.dump(2) << "\n";
        return;
    }
    std::ofstream file(path);
    if (!file) throw Error(ErrorCode::InvalidDocument, "cannot write '" + path + "'");
    file << doc.dump(2) << "\n";
}

void print_report(const ClassifierReport& rep, const Format& f, std::ostream& out) {
    out << "class: " << label_or_unclassifiable(rep) << "\n";
    out << "format: " << to_string(f) << "\n";
    out << "invariants: p=" << rep.p << " q=" << rep.q << " r=" << rep.r << " s1=" << rep.s1 << "\n";
}

int status_exit(Status s) {
    switch (s) {
        case Status::Permissible: return Success;
        case Status::NotPermissible: return Negative;
        case Status::UnknownNecessaryOnly: return Undetermined;
    }
    return Undetermined;
}

struct Options {
    std::string file;
    std::string cls;
    int m = 0;
    int n = 0;
    std::string arrangement;
    std::string output;
    bool csv = false;
    int t1 = 0;
    bool phi2 = false;
    int max_m = 10;
    int max_n = 8;
};

void add_class_format(CLI::App* sub, Options& o) {
    sub->add_option("class", o.cls, "class label: B, C(3), G(r), H(p,q), T")->required();
    sub->add_option("m", o.m, "rank of F1")->required();
    sub->add_option("n", o.n, "rank of F3")->required();
}

int cmd_classify(const Options& o, std::ostream& out) {
    const auto a = presentation_from_json(read_json(o.file), {"splits", "index_map", "symbolic"});
    const auto rep = classify(a);
    print_report(rep, Format(a.m, a.n), out);
    return rep.label ? Success : Undetermined;
}

int cmd_canonical(const Options& o, std::ostream& out) {
    const auto c = parse_class_label(o.cls);
    const Format f(o.m, o.n);
    const auto a = o.arrangement.empty() ? canonical_presentation(c, f)
                                         : arranged_presentation(c, f, parse_arrangement(o.arrangement));
    emit(to_json(a), o.output, out);
    return Success;
}

int cmd_permissible(const Options& o, std::ostream& out) {
    const auto c = parse_class_label(o.cls);
    const Format f(o.m, o.n);
    const auto v = is_permissible(c, f);
    out << to_string(c) << " " << to_string(f) << ": " << to_string(v.status) << "\n";
    for (const auto& r : v.violated_rules) out << "  violated " << r.id << " [" << r.cite << "]\n";
    if (!v.basis.empty()) out << "  realized by: " << v.basis << "\n";
    if (v.status == Status::UnknownNecessaryOnly) out << "  only necessary conditions are known here\n";
    return status_exit(v.status);
}

int cmd_atlas(const Options& o, std::ostream& out) {
    const auto grid = atlas_grid(Format(o.m, o.n));
    out << (o.csv ? render_atlas_csv(grid) : render_atlas_text(grid));
    return Success;
}

int cmd_link(const Options& o, std::ostream& out) {
    const auto a = presentation_from_json(read_json(o.file));
    const auto lp = mapping_cone_presentation(a, LinkSpec{o.t1, o.phi2});
    if (!o.output.empty()) emit(to_json(lp), o.output, out);
    const auto rep = classify(lp.presentation);
    print_report(rep, lp.format(), out);
    out << "splits:";
    for (const auto& s : lp.splits) out << " " << s;
    out << (lp.splits.empty() ? " none\n" : "\n");
    if (!lp.symbolic.empty()) {
        out << "symbolic: " << lp.symbolic.size()
            << " product slots depend on the undetermined maps X, Y; classification uses determinate products\n";
    }
    return rep.label ? Success : Undetermined;
}

int cmd_realize(const Options& o, std::ostream& out) {
    const auto c = parse_class_label(o.cls);
    const Format f(o.m, o.n);
    const auto res = realize(c, f, planner_options_from_env());
    switch (res.kind) {
        case RealizeResult::Kind::Certificate: {
            const auto& cert = *res.certificate;
            if (o.output.empty()) {
                emit(to_json(cert), "", out);
            } else {
                emit(to_json(cert), o.output, out);
                out << "certificate: " << cert.axiom.family << " " << to_string(cert.axiom.state);
                for (const auto& s : cert.steps) out << " -" << to_string(s.rule) << "-> " << to_string(s.out);
                out << "\n";
            }
            return Success;
        }
        case RealizeResult::Kind::NotPermissible:
            out << to_string(c) << " " << to_string(f) << ": NotPermissible (" << res.reason << ")\n";
            return Negative;
        case RealizeResult::Kind::NotFound:
            out << to_string(c) << " " << to_string(f) << ": NotFound (" << res.reason << ")\n";
            return Undetermined;
    }
    return Undetermined;
}

int cmd_verify_theorems(const Options& o, std::ostream& out) {
    if (o.max_m < 5 || o.max_n < 3) {
        throw Error(ErrorCode::OutOfDomain, "verify-theorems needs --max-m >= 5 and --max-n >= 3");
    }
    const auto report = verify_linkage_theorems(o.max_m, o.max_n);
    for (const auto& s : report.scenarios) {
        out << (s.pass() ? "PASS " : "FAIL ") << s.name << " instances=" << s.instances
            << " failures=" << s.failures << "\n";
        for (const auto& f : s.failure_samples) out << "  " << f << "\n";
        if (!s.note.empty()) out << "  note: " << s.note << "\n";
    }
    return report.all_pass() ? Success : Negative;
}

int cmd_verify_cert(const Options& o, std::ostream& out) {
    const auto cert = certificate_from_json(read_json(o.file));
    const auto problem = certificate_problem(cert);
    if (problem.empty()) {
        out << "valid: " << to_string(cert.target) << " via " << cert.steps.size() << " step(s) from "
            << cert.axiom.family << "\n";
        return Success;
    }
    out << "invalid: " << problem << "\n";
    return Negative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"grade3: Tor algebra classes, permissibility, linkage and realizability"};
    app.name("grade3");
    app.require_subcommand(1);
    Options o;

    auto* classify_cmd = app.add_subcommand("classify", "classify a presentation document");
    classify_cmd->add_option("file", o.file, "presentation JSON")->required();

    auto* canonical_cmd = app.add_subcommand("canonical", "write the canonical presentation of a class");
    add_class_format(canonical_cmd, o);
    canonical_cmd->add_option("--arrangement", o.arrangement, "T-A, T-B, G-std, H-i, H-ii, H-iii, H-iv, H-v");
    canonical_cmd->add_option("-o,--output", o.output, "output file (default stdout)");

    auto* permissible_cmd = app.add_subcommand("permissible", "permissibility verdict with cited rules");
    add_class_format(permissible_cmd, o);

    auto* atlas_cmd = app.add_subcommand("atlas", "H(p,q) permissibility grid for a format");
    atlas_cmd->add_option("m", o.m, "rank of F1")->required();
    atlas_cmd->add_option("n", o.n, "rank of F3")->required();
    atlas_cmd->add_flag("--csv", o.csv, "CSV instead of the text grid");

    auto* link_cmd = app.add_subcommand("link", "mapping-cone linkage of a presentation");
    link_cmd->add_option("file", o.file, "presentation JSON")->required();
    link_cmd->add_option("--t", o.t1, "number of Koszul generators among e_1..e_3")->required()->check(CLI::Range(0, 3));
    link_cmd->add_flag("--phi2", o.phi2, "e1 e2 = f1 is a unit of phi_2");
    link_cmd->add_option("-o,--output", o.output, "write the linked presentation here");

    auto* realize_cmd = app.add_subcommand("realize", "derivation certificate for a class and format");
    add_class_format(realize_cmd, o);
    realize_cmd->add_option("-o,--output", o.output, "output file (default stdout)");

    auto* theorems_cmd = app.add_subcommand("verify-theorems", "replay the linkage theorems on structure constants");
    theorems_cmd->add_option("--max-m", o.max_m, "largest m")->capture_default_str();
    theorems_cmd->add_option("--max-n", o.max_n, "largest n")->capture_default_str();

    auto* cert_cmd = app.add_subcommand("verify-cert", "replay a certificate document");
    cert_cmd->add_option("file", o.file, "certificate JSON")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Success;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Success;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return InvalidInput;
    }

    try {
        if (*classify_cmd) return cmd_classify(o, out);
        if (*canonical_cmd) return cmd_canonical(o, out);
        if (*permissible_cmd) return cmd_permissible(o, out);
        if (*atlas_cmd) return cmd_atlas(o, out);
        if (*link_cmd) return cmd_link(o, out);
        if (*realize_cmd) return cmd_realize(o, out);
        if (*theorems_cmd) return cmd_verify_theorems(o, out);
        if (*cert_cmd) return cmd_verify_cert(o, out);
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return InvalidInput;
    } catch (const Json::exception& e) {
        err << "error: InvalidDocument: " << e.what() << "\n";
        return InvalidInput;
    }
    return InvalidInput;
}

}  // namespace grade3::cli
