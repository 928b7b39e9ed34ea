// Unified command-line interface for the toolkit.
//
// Subcommands: steenrod, basis, resolve, chart, pages, polytope, bracket.
// Exit codes: 0 success; 1 verification failure (the report is still
// written); 2 usage or parse errors (line-numbered for file inputs).
// All outputs are plain text and byte-deterministic for fixed inputs.

#include "adams/gf2.hpp"
#include "adams/polytope.hpp"
#include "adams/simplicial.hpp"
#include "adams/spectral.hpp"
#include "adams/steenrod.hpp"
#include "adams/toda.hpp"
#include "adams/unstable.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr const char* kVersionText =
    "adams 1.0.0\n"
    "formats: module 1, filtered 1, chart 1, problem 1, report 1\n";

// Exit codes per the interface contract.
constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsageError = 2;

int fail_usage(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return kUsageError;
}

// Writes to the path, or to stdout when the path is empty.
bool emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << content;
    return out.good();
}

// ---------------------------------------------------------------------------
// Module specs: `sphere:n`, `moore:n`, or a module-description file.
// ---------------------------------------------------------------------------

adams::unstable::Presentation load_module(const std::string& spec) {
    auto tail_int = [&](const std::string& prefix) -> std::optional<int> {
        if (spec.rfind(prefix, 0) != 0) return std::nullopt;
        std::string tail = spec.substr(prefix.size());
        try {
            std::size_t pos = 0;
            int n = std::stoi(tail, &pos);
            if (pos != tail.size()) throw std::invalid_argument("trailing");
            return n;
        } catch (const std::exception&) {
            throw std::invalid_argument("bad module spec '" + spec + "': expected " +
                                        prefix + "<integer>");
        }
    };
    if (auto n = tail_int("sphere:")) return adams::unstable::sphere_presentation(*n);
    if (auto n = tail_int("moore:")) return adams::unstable::moore_presentation(*n);
    try {
        return adams::unstable::parse_presentation_file(spec);
    } catch (const adams::unstable::ParseError& e) {
        throw adams::unstable::ParseError(e.line, spec + ": " + e.what());
    }
}

// Window defaults from the environment when flags are omitted.
int env_or_flag(int flag_value, const char* env_name, const char* flag_name) {
    if (flag_value >= 0) return flag_value;
    const char* env = std::getenv(env_name);
    if (env) {
        try {
            std::size_t pos = 0;
            int v = std::stoi(env, &pos);
            if (pos != std::string(env).size() || v < 0)
                throw std::invalid_argument("bad");
            return v;
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("environment variable ") + env_name +
                                        " is not a non-negative integer");
        }
    }
    throw std::invalid_argument(std::string("missing ") + flag_name + " (or set " +
                                env_name + ")");
}

// ---------------------------------------------------------------------------
// Report assembly helpers.
// ---------------------------------------------------------------------------

std::string coords_str(const std::vector<adams::BigInt>& v) {
    if (v.empty()) return "-";
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += v[i].str();
    }
    return s;
}

std::string bracket_report(const adams::toda::BracketValue& v,
                           const adams::toda::Indeterminacy& ind) {
    std::string out = v.text();
    out += "indeterminacy_trivial\t";
    out += ind.zero ? "yes" : "no";
    out += "\n";
    for (const auto& cls : ind.generator_classes)
        out += "indeterminacy_generator\t" + coords_str(cls) + "\n";
    return out;
}

std::string generator_table(const adams::simplicial::CWResolution& r) {
    std::string out = "s\tt\tname\n";
    for (int s = 0; s <= r.max_s(); ++s)
        for (const adams::unstable::Generator& g : r.complex.bar(s).generators())
            out += std::to_string(s) + "\t" + std::to_string(g.degree) + "\t" + g.name + "\n";
    return out;
}

std::string image_sum(const std::vector<std::string>& labels, const adams::gf2::Vec& v) {
    std::string s;
    for (int i = 0; i < v.size(); ++i) {
        if (!v.get(i)) continue;
        if (!s.empty()) s += " + ";
        s += labels[i];
    }
    return s.empty() ? "0" : s;
}

// Attaching data: stage-0 generators list their augmentation images in the
// presented module; stage-s generators (s >= 1) list their attaching images
// in the previous level's admissible basis.
std::string differential_table(const adams::simplicial::CWResolution& r) {
    std::string out = "generator\timage\n";
    const adams::unstable::FreeModule& lv0 = r.complex.level(0);
    const auto& gens0 = r.complex.bar(0).generators();
    for (std::size_t i = 0; i < gens0.size(); ++i) {
        int t = gens0[i].degree;
        int col = lv0.basis_offset(int(i), t);
        const adams::gf2::Matrix& blk = r.augmentation.block(t);
        adams::gf2::Vec img(blk.rows());
        for (int row = 0; row < blk.rows(); ++row)
            if (blk.get(row, col)) img.set(row, true);
        out += gens0[i].name + "\t" + image_sum(r.base->space().labels(t), img) + "\n";
    }
    for (int s = 1; s <= r.max_s(); ++s) {
        const auto& gens = r.complex.bar(s).generators();
        const auto& images = r.complex.attach_images(s);
        const adams::unstable::FreeModule& below = r.complex.level(s - 1);
        for (std::size_t i = 0; i < gens.size(); ++i)
            out += gens[i].name + "\t" +
                   image_sum(below.space().labels(gens[i].degree), images[i]) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subcommand drivers.
// ---------------------------------------------------------------------------

int run_steenrod_mul(const std::string& lhs, const std::string& rhs) {
    adams::steenrod::Monomial a = adams::steenrod::Monomial::parse(lhs);
    adams::steenrod::Monomial b = adams::steenrod::Monomial::parse(rhs);
    adams::steenrod::Element prod =
        adams::steenrod::multiply(adams::steenrod::Element(a), adams::steenrod::Element(b));
    std::string out = a.str() + "*" + b.str() + " = " + prod.str() + "\n";
    return emit("", out) ? kOk : kVerificationFailure;
}

int run_steenrod_basis(int degree, int max_excess) {
    if (degree < 0) return fail_usage("--degree must be non-negative");
    std::vector<adams::steenrod::Monomial> b =
        max_excess < 0 ? adams::steenrod::basis(degree)
                       : adams::steenrod::basis_excess_at_most(degree, max_excess);
    std::string out;
    for (const auto& m : b) out += m.str() + "\n";
    return emit("", out) ? kOk : kVerificationFailure;
}

int run_resolve(const std::string& module_spec, int max_s, int max_t, bool minimal,
                const std::string& out_path, const std::string& diff_path) {
    adams::unstable::Presentation p = load_module(module_spec);
    adams::simplicial::CWResolution r =
        adams::simplicial::cw_resolve(p, max_s, max_t, minimal);
    std::string gens = generator_table(r);
    std::string diffs = differential_table(r);
    if (out_path.empty() && diff_path.empty()) {
        return emit("", gens + "\n" + diffs) ? kOk : kVerificationFailure;
    }
    if (!emit(out_path, gens)) return fail_usage("cannot write " + out_path);
    if (!emit(diff_path, diffs)) return fail_usage("cannot write " + diff_path);
    return kOk;
}

int run_chart(const std::string& module_spec, int max_s, int max_t,
              const std::string& page, const std::string& out_path) {
    adams::unstable::Presentation p = load_module(module_spec);
    adams::simplicial::CWResolution r = adams::simplicial::cw_resolve(p, max_s, max_t);
    adams::spectral::ResolutionPages rp = adams::spectral::resolution_pages(r);
    const adams::spectral::SpectralPage& pg = page == "e1" ? rp.e1 : rp.e2;
    std::string out = adams::spectral::chart_tsv(pg);
    if (!emit(out_path, out)) return fail_usage("cannot write " + out_path);
    return kOk;
}

int run_pages(const std::string& filtered_path, int r_max, const std::string& out_path) {
    adams::spectral::FilteredComplex f =
        adams::spectral::parse_filtered_file(filtered_path);
    std::vector<adams::spectral::SpectralPage> ps = adams::spectral::pages(f, r_max);
    std::string out;
    for (const auto& p : ps) {
        if (!out.empty()) out += "\n";
        out += adams::spectral::page_text(p);
    }
    if (!out.empty()) out += "\n";
    out += adams::spectral::page_text(adams::spectral::limit_page(f));
    if (!emit(out_path, out)) return fail_usage("cannot write " + out_path);
    return kOk;
}

int run_polytope(int n, int k, bool modified, const std::string& labels,
                 const std::string& report_path) {
    adams::polytope::GluedComplex c = modified ? adams::polytope::build_modified(n, k)
                                               : adams::polytope::build_folding(n, k);
    std::string table;
    if (!labels.empty()) {
        adams::polytope::LabelVariant variant = adams::polytope::parse_variant(labels);
        bool standard = variant == adams::polytope::LabelVariant::standard;
        if (standard == modified)
            return fail_usage("label variant '" + labels +
                              "' belongs to the other simplex family");
        table = adams::polytope::facet_label_table(
            adams::polytope::facet_labels(n, k, variant));
    }
    adams::polytope::BallReport report = adams::polytope::verify_ball(c);
    if (!emit(report_path, report.text(table)))
        return fail_usage("cannot write " + report_path);
    return report.ok ? kOk : kVerificationFailure;
}

int run_bracket_example(int n, const std::string& out_path) {
    adams::toda::BracketProblem integral = adams::toda::moore_problem(n);
    adams::toda::BracketProblem reduced = adams::toda::moore_problem_reduced(n);
    std::string out = "example\tmoore\nn\t" + std::to_string(n) + "\n\n";
    out += "integral\n";
    out += bracket_report(adams::toda::toda_value(integral),
                          adams::toda::indeterminacy(integral));
    out += "\nreduced\n";
    out += bracket_report(adams::toda::toda_value(reduced),
                          adams::toda::indeterminacy(reduced));
    if (!emit(out_path, out)) return fail_usage("cannot write " + out_path);
    return kOk;
}

int run_bracket_problem(const std::string& path, const std::string& out_path) {
    adams::toda::BracketProblem p = adams::toda::parse_problem_file(path);
    try {
        std::string out =
            bracket_report(adams::toda::toda_value(p), adams::toda::indeterminacy(p));
        if (!emit(out_path, out)) return fail_usage("cannot write " + out_path);
        return kOk;
    } catch (const adams::toda::WitnessError& e) {
        std::string out = std::string("error\twitness\n") +
                          "degree\t" + std::to_string(e.degree) + "\n" +
                          "detail\t" + e.what() + "\n";
        emit(out_path, out);
        return kVerificationFailure;
    }
}

int run_bracket_obstruction(const std::string& module_spec, int coefficient, int max_s,
                            int max_t, const std::string& out_path) {
    adams::unstable::Presentation p = load_module(module_spec);
    adams::simplicial::CWResolution r = adams::simplicial::cw_resolve(p, max_s, max_t);
    adams::toda::ObstructionReport rep =
        adams::toda::filtration_obstruction(r, coefficient);
    if (!emit(out_path, rep.text())) return fail_usage("cannot write " + out_path);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unstable Adams spectral sequence toolkit"};
    app.set_version_flag("--version", std::string(kVersionText));
    int jobs = 0;
    app.add_option("--jobs", jobs, "Worker threads for batched eliminations (0 = auto)");
    app.require_subcommand(1);

    // steenrod mul / steenrod basis
    auto* steenrod = app.add_subcommand("steenrod", "Steenrod algebra operations");
    steenrod->require_subcommand(1);
    auto* mul = steenrod->add_subcommand("mul", "Multiply two monomial words");
    std::string mul_lhs, mul_rhs;
    mul->add_option("lhs", mul_lhs, "Left word, e.g. Sq3Sq1")->required();
    mul->add_option("rhs", mul_rhs, "Right word")->required();
    auto* sbasis = steenrod->add_subcommand("basis", "Admissible basis of a degree");
    int sbasis_degree = -1, sbasis_excess = -1;
    sbasis->add_option("--degree", sbasis_degree, "Internal degree")->required();
    sbasis->add_option("--max-excess", sbasis_excess, "Keep excess <= this bound");

    // top-level basis (same as steenrod basis)
    auto* basis = app.add_subcommand("basis", "Admissible Steenrod basis of a degree");
    int basis_degree = -1, basis_excess = -1;
    basis->add_option("--degree", basis_degree, "Internal degree")->required();
    basis->add_option("--max-excess", basis_excess, "Keep excess <= this bound");

    // resolve
    auto* resolve = app.add_subcommand("resolve", "CW resolution of a presented module");
    std::string resolve_module, resolve_out, resolve_diff;
    int resolve_max_s = -1, resolve_max_t = -1;
    bool resolve_any_basis = false;
    resolve->add_option("--module", resolve_module, "sphere:n, moore:n, or a module file")
        ->required();
    resolve->add_option("--max-s", resolve_max_s, "Top resolution stage (env ADAMS_MAX_S)");
    resolve->add_option("--max-t", resolve_max_t, "Top internal degree (env ADAMS_MAX_T)");
    resolve->add_flag("--any-basis", resolve_any_basis,
                      "Skip minimality (keep every covering generator)");
    bool resolve_minimal_flag = false;
    resolve->add_flag("--minimal", resolve_minimal_flag,
                      "Minimal stage generators (the default)");
    resolve->add_option("--out", resolve_out, "Generator TSV path (default stdout)");
    resolve->add_option("--diff-out", resolve_diff,
                        "Attaching-image table path (default stdout)");

    // chart
    auto* chart = app.add_subcommand("chart", "Spectral-sequence chart of a resolution");
    std::string chart_module, chart_out, chart_page = "e2";
    int chart_max_s = -1, chart_max_t = -1;
    chart->add_option("--module", chart_module, "sphere:n, moore:n, or a module file")
        ->required();
    chart->add_option("--max-s", chart_max_s, "Top resolution stage (env ADAMS_MAX_S)");
    chart->add_option("--max-t", chart_max_t, "Top internal degree (env ADAMS_MAX_T)");
    chart->add_option("--page", chart_page, "Which page to print: e1 or e2")
        ->check(CLI::IsMember({"e1", "e2"}));
    chart->add_option("--out", chart_out, "Chart TSV path (default stdout)");

    // pages
    auto* pages = app.add_subcommand("pages", "Pages of a filtered cochain complex");
    std::string pages_file, pages_out;
    int pages_rmax = -1;
    pages->add_option("--filtered", pages_file, "Filtered-complex file")->required();
    pages->add_option("--r-max", pages_rmax, "Last page to print")->required();
    pages->add_option("--out", pages_out, "Output path (default stdout)");

    // polytope
    auto* polytope = app.add_subcommand("polytope", "Folding polytope verification report");
    int poly_n = 0, poly_k = 0;
    bool poly_modified = false;
    std::string poly_labels, poly_report;
    polytope->add_option("--n", poly_n, "Dimension")->required();
    polytope->add_option("--k", poly_k, "Number of simplices")->required();
    polytope->add_flag("--modified", poly_modified, "Use the modified simplex family");
    polytope->add_option("--labels", poly_labels,
                         "Facet label variant: standard, modified, or filtration");
    polytope->add_option("--report", poly_report, "Report path (default stdout)");

    // bracket
    auto* bracket = app.add_subcommand("bracket", "Chain-level Toda brackets");
    std::string bracket_example, bracket_problem, bracket_out, bracket_module;
    int bracket_n = 3, bracket_coeff = 0, bracket_max_s = -1, bracket_max_t = -1;
    bool bracket_obstruction = false;
    auto* ex_opt = bracket->add_option("--example", bracket_example,
                                       "Built-in example: moore");
    bracket->add_option("--n", bracket_n, "Degree for the built-in example");
    auto* prob_opt =
        bracket->add_option("--problem", bracket_problem, "Bracket problem file");
    auto* obs_opt = bracket->add_flag(
        "--obstruction", bracket_obstruction,
        "Filtration placement of a multiple of the fundamental class");
    bracket->add_option("--module", bracket_module,
                        "Resolution input for --obstruction (sphere:n style)");
    bracket->add_option("--coefficient", bracket_coeff,
                        "Multiple of the fundamental class for --obstruction");
    bracket->add_option("--max-s", bracket_max_s, "Resolution stages for --obstruction");
    bracket->add_option("--max-t", bracket_max_t, "Degree window for --obstruction");
    bracket->add_option("--out", bracket_out, "Report path (default stdout)");
    ex_opt->excludes(prob_opt);
    ex_opt->excludes(obs_opt);
    prob_opt->excludes(obs_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }

    adams::gf2::set_default_jobs(jobs);

    try {
        if (mul->parsed()) return run_steenrod_mul(mul_lhs, mul_rhs);
        if (sbasis->parsed()) return run_steenrod_basis(sbasis_degree, sbasis_excess);
        if (basis->parsed()) return run_steenrod_basis(basis_degree, basis_excess);
        if (resolve->parsed()) {
            if (resolve_any_basis && resolve_minimal_flag)
                return fail_usage("--minimal and --any-basis are mutually exclusive");
            int s = env_or_flag(resolve_max_s, "ADAMS_MAX_S", "--max-s");
            int t = env_or_flag(resolve_max_t, "ADAMS_MAX_T", "--max-t");
            return run_resolve(resolve_module, s, t, !resolve_any_basis, resolve_out,
                               resolve_diff);
        }
        if (chart->parsed()) {
            int s = env_or_flag(chart_max_s, "ADAMS_MAX_S", "--max-s");
            int t = env_or_flag(chart_max_t, "ADAMS_MAX_T", "--max-t");
            return run_chart(chart_module, s, t, chart_page, chart_out);
        }
        if (pages->parsed()) {
            if (pages_rmax < 1) return fail_usage("--r-max must be at least 1");
            return run_pages(pages_file, pages_rmax, pages_out);
        }
        if (polytope->parsed())
            return run_polytope(poly_n, poly_k, poly_modified, poly_labels, poly_report);
        if (bracket->parsed()) {
            if (!bracket_example.empty()) {
                if (bracket_example != "moore")
                    return fail_usage("unknown example '" + bracket_example + "'");
                return run_bracket_example(bracket_n, bracket_out);
            }
            if (!bracket_problem.empty())
                return run_bracket_problem(bracket_problem, bracket_out);
            if (bracket_obstruction) {
                if (bracket_module.empty())
                    return fail_usage("--obstruction needs --module");
                int s = env_or_flag(bracket_max_s, "ADAMS_MAX_S", "--max-s");
                int t = env_or_flag(bracket_max_t, "ADAMS_MAX_T", "--max-t");
                return run_bracket_obstruction(bracket_module, bracket_coeff, s, t,
                                               bracket_out);
            }
            return fail_usage("bracket needs one of --example, --problem, --obstruction");
        }
    } catch (const adams::unstable::ParseError& e) {
        return fail_usage(e.what());
    } catch (const adams::simplicial::TruncationError& e) {
        return fail_usage(e.what());
    } catch (const std::invalid_argument& e) {
        return fail_usage(e.what());
    } catch (const adams::toda::WitnessError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerificationFailure;
    } catch (const std::runtime_error& e) {
        // unopenable input files surface here; everything else derived from
        // runtime_error is caught above
        return fail_usage(e.what());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerificationFailure;
    }
    return fail_usage("no subcommand dispatched");
}
