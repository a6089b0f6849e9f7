// Command-line surface: verification, classification, the forward and
// inverse parameter maps, the (u,z) scan, the brute-force oracle,
// cross-validation, and near-miss reports.
#include <algorithm>
#include <exception>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cuboid/arith.hpp"
#include "cuboid/characteristic.hpp"
#include "cuboid/model.hpp"
#include "cuboid/parametrization.hpp"
#include "cuboid/records.hpp"
#include "cuboid/search.hpp"

namespace {

using namespace cuboid;

constexpr int kExitOk = 0;
constexpr int kExitCheckedFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCheckpointMismatch = 3;
constexpr int kExitDiscovery = 42;

Integer parse_positive_integer(const std::string& text) {
    Integer v;
    try {
        v = Integer(text);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not an integer: '" + text + "'");
    }
    if (sgn(v) <= 0) {
        throw std::invalid_argument("expected a positive integer, got '" + text + "'");
    }
    return v;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string square_note(const Rational& value) {
    if (auto root = rational_sqrt(value)) {
        return "SQUARE (root " + root->str() + ")";
    }
    return "not a rational square";
}

int cmd_verify(const std::vector<std::string>& args) {
    if (args.size() != 7) {
        throw std::invalid_argument("verify expects 7 positive integers: a b c alpha beta gamma d");
    }
    std::vector<Integer> v;
    for (const std::string& s : args) {
        v.push_back(parse_positive_integer(s));
    }
    const CuboidSeptuple s{v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
    const Integer a2 = s.a * s.a, b2 = s.b * s.b, c2 = s.c * s.c;
    const bool e1 = a2 + b2 == s.gamma * s.gamma;
    const bool e2 = b2 + c2 == s.alpha * s.alpha;
    const bool e3 = c2 + a2 == s.beta * s.beta;
    const bool e4 = a2 + b2 + c2 == s.d * s.d;
    std::cout << "a^2 + b^2       = gamma^2 : " << yes_no(e1) << "\n";
    std::cout << "b^2 + c^2       = alpha^2 : " << yes_no(e2) << "\n";
    std::cout << "c^2 + a^2       = beta^2  : " << yes_no(e3) << "\n";
    std::cout << "a^2 + b^2 + c^2 = d^2     : " << yes_no(e4) << "\n";
    const bool perfect = e1 && e2 && e3 && e4;
    std::cout << (perfect ? "septuple is a perfect cuboid" : "septuple is not a perfect cuboid")
              << "\n";
    return perfect ? kExitOk : kExitCheckedFailure;
}

int cmd_classify(const std::vector<std::string>& args) {
    if (args.size() != 3) {
        throw std::invalid_argument("classify expects 3 positive integers: a b c");
    }
    const TripleClassification t = classify_triple(
        parse_positive_integer(args[0]), parse_positive_integer(args[1]),
        parse_positive_integer(args[2]));
    std::cout << "triple (" << t.a.get_str() << "," << t.b.get_str() << "," << t.c.get_str()
              << "): " << to_string(t.cls) << "\n";
    const auto show = [](const char* name, const std::optional<Integer>& v) {
        std::cout << name << (v ? v->get_str() : std::string("not integral")) << "\n";
    };
    show("gamma (ab face) = ", t.gamma);
    show("alpha (bc face) = ", t.alpha);
    show("beta  (ca face) = ", t.beta);
    show("d     (space)   = ", t.d);
    if (t.cls == CuboidClass::FaceCuboid) {
        const ParamUZ p = lift_face_cuboid(t);
        std::cout << "lift (u,z) = (" << p.u.str() << ", " << p.z.str() << ")\n";
    }
    return kExitOk;
}

int cmd_forward(const std::string& u_text, const std::string& z_text) {
    const Rational u = Rational::parse(u_text);
    const Rational z = Rational::parse(z_text);
    if (!in_domain_uz(u, z)) {
        throw std::domain_error("(u,z) must lie strictly inside the open unit square");
    }
    const ParamUZ p{u, z};
    const ForwardPoint f = forward(p);
    const SquaredAB sq = ab_squared(p);
    const AuxQuantities aux = aux_from_uz(p);
    const Rational residual = char_eval(u.squared(), sq.a_sq, sq.b_sq);
    std::cout << "u = " << u.str() << ", z = " << z.str() << "\n";
    std::cout << "x1 = " << f.x1.str() << "\n";
    std::cout << "x2 = " << f.x2.str() << "\n";
    std::cout << "x3 = " << f.x3.str() << "\n";
    std::cout << "d1 = " << f.d1.str() << "\n";
    std::cout << "d2^2 = " << d2_squared(p).str() << "  [" << square_note(d2_squared(p)) << "]\n";
    std::cout << "d3^2 = " << d3_squared(p).str() << "  [" << square_note(d3_squared(p)) << "]\n";
    std::cout << "a^2 = " << sq.a_sq.str() << "  [" << square_note(sq.a_sq) << "]\n";
    std::cout << "b^2 = " << sq.b_sq.str() << "  [" << square_note(sq.b_sq) << "]\n";
    std::cout << "xi = " << aux.xi.str() << "\n";
    std::cout << "zeta = " << aux.zeta.str() << "\n";
    std::cout << "theta = " << aux.theta.str() << "\n";
    std::cout << "characteristic residual = " << residual.str() << "\n";
    return kExitOk;
}

void print_root(const RootValue& r) {
    if (const auto* exact = std::get_if<Rational>(&r)) {
        std::cout << exact->str();
    } else {
        const auto& iv = std::get<RootInterval>(r);
        std::cout << "~" << iv.lo.to_double() << " (irrational, bracket width <= 2^-64)";
    }
}

int cmd_invert(const std::string& a_text, const std::string& b_text) {
    const Rational a_sq = Rational::parse(a_text);
    const Rational b_sq = Rational::parse(b_text);
    if (!(a_sq > Rational(0) && a_sq < Rational(1) && b_sq > Rational(0) && b_sq < Rational(1))) {
        throw std::domain_error("a^2 and b^2 must lie strictly inside (0,1)");
    }
    const CharCoefficients k = char_coefficients(a_sq, b_sq);
    std::cout << "A = " << k.A.str() << "\n";
    std::cout << "B = " << k.B.str() << "\n";
    std::cout << "C = " << k.C.str() << "\n";
    const CharRoots roots = solve_char_for_u(a_sq, b_sq);
    std::cout << "discriminant = " << roots.discriminant.str() << "\n";
    std::cout << "roots in t = u^2: ";
    if (roots.roots.empty()) {
        std::cout << "(none)";
    }
    for (std::size_t i = 0; i < roots.roots.size(); ++i) {
        if (i > 0) {
            std::cout << ", ";
        }
        print_root(roots.roots[i]);
    }
    std::cout << "\n";
    if (!roots.selection) {
        std::cout << "no root with 0 < t < 1\n";
        return kExitCheckedFailure;
    }
    std::cout << "selected t = ";
    print_root(*roots.selection);
    std::cout << "\n";
    const auto p = invert_ab(a_sq, b_sq);
    if (!p) {
        std::cout << "no rational inversion (u would be irrational)\n";
        return kExitOk;
    }
    std::cout << "(u,z) = (" << p->u.str() << ", " << p->z.str() << ")\n";
    return kExitOk;
}

int cmd_scan(const ScanOptions& options) {
    const ScanResult result = run_scan(options);
    const ScanSummary& s = result.summary;
    if (s.completed) {
        std::cout << "scan bound " << s.bound << " complete: " << s.records << " records\n";
    } else {
        std::cout << "scan bound " << s.bound << " stopped at a checkpoint: " << s.records
                  << " records so far; rerun the same command to resume\n";
    }
    std::cout << "NONE=" << s.counts[0] << " A_ONLY=" << s.counts[1] << " B_ONLY=" << s.counts[2]
              << " BOTH_SQUARE=" << s.counts[3] << "\n";
    std::cout << "output: " << options.out_path << "\n";
    if (!result.discoveries.empty()) {
        for (const CuboidSeptuple& d : result.discoveries) {
            std::cout << "PERFECT CUBOID FOUND: a=" << d.a.get_str() << " b=" << d.b.get_str()
                      << " c=" << d.c.get_str() << " alpha=" << d.alpha.get_str()
                      << " beta=" << d.beta.get_str() << " gamma=" << d.gamma.get_str()
                      << " d=" << d.d.get_str() << "\n";
        }
        return kExitDiscovery;
    }
    return kExitOk;
}

int cmd_oracle(std::uint64_t edges, unsigned workers, const std::string& out_path, Format format) {
    const std::vector<OracleRecord> records = brute_force_cuboids(edges, workers);
    const OracleSummary summary = summarize_oracle(edges, records);
    std::string body = file_header(format, /*oracle=*/true);
    for (const OracleRecord& r : records) {
        body += format_oracle_record(r, format);
    }
    body += oracle_summary_line(summary);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open output file " + out_path);
        }
        out << body;
    } else {
        std::cout << body;
    }
    std::cout << "edge bound " << edges << ": perfect=" << summary.perfect
              << " euler_brick=" << summary.euler_brick << " face_cuboid=" << summary.face_cuboid
              << "\n";
    return kExitOk;
}

int cmd_cross_validate(std::uint64_t edges, unsigned workers) {
    const CrossValidationReport report = cross_validate(edges, workers);
    std::cout << "cross-validation to edge bound " << edges << "\n";
    std::cout << "face cuboids: " << report.face_cuboids
              << ", checks passed: " << report.checks_passed << "\n";
    if (!report.ok()) {
        for (const std::string& f : report.failures) {
            std::cout << "FAILURE: " << f << "\n";
        }
        return kExitCheckedFailure;
    }
    std::cout << "all lifted face cuboids validated\n";
    return kExitOk;
}

int cmd_report(const std::string& in_path, Format format, std::size_t top,
               std::size_t verify_sample, std::uint64_t seed, unsigned long trial_bound) {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open input file " + in_path);
    }
    std::vector<SearchRecord> records;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line.rfind("#SUMMARY", 0) == 0) {
            continue;
        }
        if (first && format == Format::Csv) {
            first = false;
            continue;  // header row
        }
        first = false;
        records.push_back(parse_search_record(line, format));
    }
    std::cout << "records: " << records.size() << "\n";

    std::vector<std::pair<KernelResult, const SearchRecord*>> ranked;
    ranked.reserve(records.size());
    for (const SearchRecord& r : records) {
        if (r.verdict == Verdict::BothSquare) {
            std::cout << "BOTH_SQUARE record at (u,z) = (" << r.u.str() << ", " << r.z.str()
                      << ")\n";
            continue;
        }
        ranked.emplace_back(near_miss_kernel(r, trial_bound), &r);
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& x, const auto& y) { return x.first.kernel < y.first.kernel; });
    const std::size_t n = std::min(top, ranked.size());
    std::cout << "top " << n << " near misses (smaller kernel = closer to square):\n";
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [kernel, rec] = ranked[i];
        std::cout << kernel.kernel.get_str() << (kernel.complete ? "" : " (INCOMPLETE)") << "  "
                  << to_string(rec->verdict) << "  u=" << rec->u.str() << " z=" << rec->z.str()
                  << " a^2=" << rec->a_sq.str() << " b^2=" << rec->b_sq.str() << "\n";
    }

    if (verify_sample > 0 && !records.empty()) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, records.size() - 1);
        std::size_t ok = 0;
        for (std::size_t i = 0; i < verify_sample; ++i) {
            const SearchRecord& stored = records[pick(rng)];
            const SearchRecord fresh = evaluate_pair(stored.u, stored.z);
            if (fresh.a_sq == stored.a_sq && fresh.b_sq == stored.b_sq &&
                fresh.verdict == stored.verdict && fresh.residual == stored.residual &&
                fresh.witness_a == stored.witness_a && fresh.witness_b == stored.witness_b) {
                ++ok;
            } else {
                std::cout << "sample mismatch at (u,z) = (" << stored.u.str() << ", "
                          << stored.z.str() << ")\n";
            }
        }
        std::cout << "sample verification: " << ok << "/" << verify_sample << " reverified\n";
        if (ok != verify_sample) {
            return kExitCheckedFailure;
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for the perfect-cuboid characteristic-equation reduction"};
    app.require_subcommand(1);

    std::vector<std::string> verify_args;
    auto* verify = app.add_subcommand("verify", "check the four diagonal equations of a septuple");
    verify->add_option("values", verify_args, "a b c alpha beta gamma d")->expected(7);

    std::vector<std::string> classify_args;
    auto* classify = app.add_subcommand("classify", "classify an edge triple");
    classify->add_option("values", classify_args, "a b c")->expected(3);

    std::string fwd_u, fwd_z;
    auto* fwd = app.add_subcommand("forward", "map (u,z) to the unit-vector coordinates");
    fwd->add_option("u", fwd_u, "rational in (0,1)")->required();
    fwd->add_option("z", fwd_z, "rational in (0,1)")->required();

    std::string inv_a, inv_b;
    auto* inv = app.add_subcommand("invert", "solve the characteristic equation for (u,z)");
    inv->add_option("a_sq", inv_a, "a^2, rational in (0,1)")->required();
    inv->add_option("b_sq", inv_b, "b^2, rational in (0,1)")->required();

    ScanOptions scan_options;
    std::string scan_format = "jsonl";
    std::uint64_t scan_stop_after = 0;
    auto* scan = app.add_subcommand("scan", "scan all (u,z) pairs up to a denominator bound");
    scan->add_option("--bound", scan_options.bound, "denominator bound (>= 2)")->required();
    scan->add_option("--workers", scan_options.workers, "worker threads")->default_val(1);
    scan->add_option("--out", scan_options.out_path, "output file")->required();
    scan->add_option("--checkpoint", scan_options.checkpoint_path, "checkpoint file for resumption");
    scan->add_option("--format", scan_format, "jsonl or csv")->default_val("jsonl");
    scan->add_option("--stop-after", scan_stop_after,
                     "stop after this many u-blocks (requires --checkpoint)");

    std::uint64_t oracle_edges = 0;
    unsigned oracle_workers = 1;
    std::string oracle_out;
    std::string oracle_format = "jsonl";
    auto* oracle = app.add_subcommand("oracle", "brute-force integer cuboids up to an edge bound");
    oracle->add_option("--edges", oracle_edges, "edge bound (>= 3)")->required();
    oracle->add_option("--workers", oracle_workers, "worker threads")->default_val(1);
    oracle->add_option("--out", oracle_out, "output file (stdout when omitted)");
    oracle->add_option("--format", oracle_format, "jsonl or csv")->default_val("jsonl");

    std::uint64_t cv_edges = 0;
    unsigned cv_workers = 1;
    auto* cv = app.add_subcommand("cross-validate",
                                  "validate every lifted face cuboid end to end");
    cv->add_option("--edges", cv_edges, "edge bound (>= 3)")->required();
    cv->add_option("--workers", cv_workers, "worker threads")->default_val(1);

    std::string report_in;
    std::string report_format = "jsonl";
    std::size_t report_top = 20;
    std::size_t report_sample = 0;
    std::uint64_t report_seed = 1;
    unsigned long report_trial_bound = 10000;
    auto* report = app.add_subcommand("report", "rank near misses in a scan output file");
    report->add_option("--in", report_in, "scan output file")->required();
    report->add_option("--format", report_format, "jsonl or csv")->default_val("jsonl");
    report->add_option("--top", report_top, "how many records to print")->default_val(20);
    report->add_option("--verify-sample", report_sample,
                       "recompute this many randomly chosen records");
    report->add_option("--seed", report_seed, "seed for --verify-sample")->default_val(1);
    report->add_option("--trial-bound", report_trial_bound,
                       "trial-division bound for squarefree kernels")->default_val(10000);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*verify) {
            return cmd_verify(verify_args);
        }
        if (*classify) {
            return cmd_classify(classify_args);
        }
        if (*fwd) {
            return cmd_forward(fwd_u, fwd_z);
        }
        if (*inv) {
            return cmd_invert(inv_a, inv_b);
        }
        if (*scan) {
            scan_options.format = format_from_string(scan_format);
            if (scan->count("--stop-after") > 0) {
                scan_options.stop_after = scan_stop_after;
            }
            return cmd_scan(scan_options);
        }
        if (*oracle) {
            return cmd_oracle(oracle_edges, oracle_workers, oracle_out,
                              format_from_string(oracle_format));
        }
        if (*cv) {
            return cmd_cross_validate(cv_edges, cv_workers);
        }
        if (*report) {
            return cmd_report(report_in, format_from_string(report_format), report_top,
                              report_sample, report_seed, report_trial_bound);
        }
    } catch (const CheckpointMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckpointMismatch;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckedFailure;
    }
    return kExitUsage;
}
