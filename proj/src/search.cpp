#include "cuboid/search.hpp"

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "parallel.hpp"

namespace cuboid {

FareyEnumerator::FareyEnumerator(unsigned bound, unsigned q, unsigned p)
    : bound_(bound), q_(q), p_(p) {
    if (bound < 2) {
        throw std::invalid_argument("FareyEnumerator: bound must be >= 2");
    }
}

std::optional<Rational> FareyEnumerator::next() {
    while (q_ <= bound_) {
        while (p_ < q_) {
            const unsigned p = p_++;
            if (std::gcd(p, q_) == 1) {
                return Rational(Integer(p), Integer(q_));
            }
        }
        ++q_;
        p_ = 1;
    }
    return std::nullopt;
}

std::vector<Rational> enumerate_rationals(unsigned bound) {
    FareyEnumerator en(bound);
    std::vector<Rational> out;
    while (auto r = en.next()) {
        out.push_back(std::move(*r));
    }
    return out;
}

SearchRecord evaluate_pair(const Rational& u, const Rational& z) {
    if (!in_domain_uz(u, z)) {
        throw std::domain_error("evaluate_pair: (u,z) outside the domain");
    }
    SearchRecord rec;
    rec.u = u;
    rec.z = z;
    const SquaredAB sq = ab_squared(ParamUZ{u, z});
    rec.a_sq = sq.a_sq;
    rec.b_sq = sq.b_sq;
    rec.witness_a = rational_sqrt(sq.a_sq);
    rec.witness_b = rational_sqrt(sq.b_sq);
    if (rec.witness_a && rec.witness_b) {
        rec.verdict = Verdict::BothSquare;
    } else if (rec.witness_a) {
        rec.verdict = Verdict::AOnly;
    } else if (rec.witness_b) {
        rec.verdict = Verdict::BOnly;
    } else {
        rec.verdict = Verdict::None;
    }
    rec.residual = char_eval(u.squared(), sq.a_sq, sq.b_sq);
    if (!rec.residual.is_zero()) {
        throw std::logic_error("evaluate_pair: nonzero characteristic residual at (" + u.str() +
                               ", " + z.str() + ")");
    }
    return rec;
}

CuboidSeptuple reconstruct_perfect(const SearchRecord& rec) {
    if (rec.verdict != Verdict::BothSquare || !rec.witness_a || !rec.witness_b) {
        throw std::invalid_argument("reconstruct_perfect: record is not BOTH_SQUARE");
    }
    const ParamUZ p{rec.u, rec.z};
    const ForwardPoint fwd = forward(p);
    const auto [d2, d3] = recover_d2_d3(p, *rec.witness_a, *rec.witness_b);
    const UnitVectorPoint point{fwd.x1, fwd.x2, fwd.x3, fwd.d1, d2, d3};
    if (!satisfies_unit_equations(point)) {
        throw std::logic_error("reconstruct_perfect: unit-vector equations violated");
    }
    return denormalize(point);  // verifies the septuple internally
}

namespace {

struct ScanBlock {
    std::string lines;
    std::array<std::uint64_t, 4> counts{};
    std::uint64_t records = 0;
    std::vector<SearchRecord> both_square;
};

ScanBlock evaluate_block(const Rational& u, const std::vector<Rational>& zs, Format format) {
    ScanBlock block;
    for (const Rational& z : zs) {
        SearchRecord rec = evaluate_pair(u, z);
        block.lines += format_search_record(rec, format);
        ++block.counts[static_cast<std::size_t>(rec.verdict)];
        ++block.records;
        if (rec.verdict == Verdict::BothSquare) {
            block.both_square.push_back(std::move(rec));
        }
    }
    return block;
}

}  // namespace

ScanResult run_scan(const ScanOptions& options) {
    if (options.bound < 2) {
        throw std::invalid_argument("run_scan: bound must be >= 2");
    }
    if (options.out_path.empty()) {
        throw std::invalid_argument("run_scan: output path required");
    }
    if (options.stop_after && options.checkpoint_path.empty()) {
        throw std::invalid_argument("run_scan: stop_after requires a checkpoint path");
    }
    const std::vector<Rational> values = enumerate_rationals(options.bound);

    ScanResult result;
    result.summary.bound = options.bound;
    std::uint64_t start_block = 0;
    std::uint64_t output_bytes = 0;

    std::optional<ScanCheckpoint> cp;
    if (!options.checkpoint_path.empty()) {
        cp = load_checkpoint(options.checkpoint_path);
    }
    std::ofstream out;
    if (cp) {
        if (cp->bound != options.bound || cp->format != options.format) {
            throw CheckpointMismatch("checkpoint belongs to a different run (bound " +
                                     std::to_string(cp->bound) + ", format " +
                                     std::string(to_string(cp->format)) + ")");
        }
        std::error_code ec;
        const auto size = std::filesystem::file_size(options.out_path, ec);
        if (ec || size < cp->output_bytes) {
            throw CheckpointMismatch("checkpoint does not match the output file " +
                                     options.out_path);
        }
        // Drop any partially written block, then continue appending.
        std::filesystem::resize_file(options.out_path, cp->output_bytes);
        start_block = cp->completed_u;
        output_bytes = cp->output_bytes;
        result.summary.records = cp->records;
        result.summary.counts = cp->counts;
        out.open(options.out_path, std::ios::binary | std::ios::app);
    } else {
        out.open(options.out_path, std::ios::binary | std::ios::trunc);
        if (out) {
            const std::string header = file_header(options.format, /*oracle=*/false);
            out << header;
            output_bytes += header.size();
        }
    }
    if (!out) {
        throw std::runtime_error("cannot open output file " + options.out_path);
    }

    const std::uint64_t total_blocks = values.size();
    std::uint64_t committed_this_run = 0;
    bool stopped = false;

    const auto make_block = [&](std::size_t idx) {
        return evaluate_block(values[start_block + idx], values, options.format);
    };
    const auto commit_block = [&](std::size_t idx, ScanBlock&& block) {
        out << block.lines;
        out.flush();
        output_bytes += block.lines.size();
        result.summary.records += block.records;
        for (std::size_t i = 0; i < block.counts.size(); ++i) {
            result.summary.counts[i] += block.counts[i];
        }
        for (SearchRecord& rec : block.both_square) {
            result.both_square.push_back(std::move(rec));
        }
        if (!options.checkpoint_path.empty()) {
            save_checkpoint(options.checkpoint_path,
                            ScanCheckpoint{options.bound, options.format,
                                           start_block + idx + 1, output_bytes,
                                           result.summary.records, result.summary.counts});
        }
        ++committed_this_run;
        if (options.stop_after && committed_this_run >= *options.stop_after) {
            stopped = true;
            return false;
        }
        return true;
    };

    detail::parallel_ordered<ScanBlock>(total_blocks - start_block, options.workers, make_block,
                                        commit_block);

    if (!stopped) {
        result.summary.completed = true;
        out << scan_summary_line(result.summary);
        out.flush();
        if (!options.checkpoint_path.empty()) {
            std::error_code ec;
            std::filesystem::remove(options.checkpoint_path, ec);
        }
        for (const SearchRecord& rec : result.both_square) {
            result.discoveries.push_back(reconstruct_perfect(rec));
        }
    }
    return result;
}

bool u64_is_square(std::uint64_t n, std::uint64_t* root) {
    static constexpr auto kSquareMod64 = [] {
        std::array<bool, 64> t{};
        for (unsigned i = 0; i < 64; ++i) {
            t[(i * i) & 63] = true;
        }
        return t;
    }();
    if (!kSquareMod64[n & 63]) {
        return false;
    }
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<unsigned __int128>(r) * r > n) {
        --r;
    }
    while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) {
        ++r;
    }
    if (r * r != n) {
        return false;
    }
    if (root != nullptr) {
        *root = r;
    }
    return true;
}

std::vector<OracleRecord> brute_force_cuboids(std::uint64_t edge_bound, unsigned workers) {
    if (edge_bound < 3) {
        throw std::invalid_argument("brute_force_cuboids: edge bound must be >= 3");
    }
    if (edge_bound > 2000000000ULL) {
        throw std::invalid_argument("brute_force_cuboids: edge bound too large for the fast path");
    }

    const auto scan_a = [&](std::size_t idx) {
        const std::uint64_t a = idx + 1;
        const std::uint64_t a2 = a * a;
        std::vector<OracleRecord> found;
        for (std::uint64_t b = a; b <= edge_bound; ++b) {
            const std::uint64_t b2 = b * b;
            const bool sab = u64_is_square(a2 + b2);
            for (std::uint64_t c = b; c <= edge_bound; ++c) {
                const std::uint64_t c2 = c * c;
                const bool sbc = u64_is_square(b2 + c2);
                if (!sab && !sbc) {
                    continue;  // at most one face diagonal can be integral
                }
                const bool sac = u64_is_square(a2 + c2);
                if (static_cast<int>(sab) + static_cast<int>(sbc) + static_cast<int>(sac) < 2) {
                    continue;
                }
                TripleClassification t =
                    classify_triple(Integer(static_cast<unsigned long>(a)),
                                    Integer(static_cast<unsigned long>(b)),
                                    Integer(static_cast<unsigned long>(c)));
                if (t.cls == CuboidClass::Other) {
                    continue;
                }
                OracleRecord rec{std::move(t), std::nullopt};
                if (rec.triple.cls == CuboidClass::FaceCuboid) {
                    rec.lift = lift_face_cuboid(rec.triple);
                }
                found.push_back(std::move(rec));
            }
        }
        return found;
    };

    std::vector<OracleRecord> records;
    detail::parallel_ordered<std::vector<OracleRecord>>(
        edge_bound, workers, scan_a, [&](std::size_t, std::vector<OracleRecord>&& found) {
            for (OracleRecord& r : found) {
                records.push_back(std::move(r));
            }
            return true;
        });
    return records;
}

OracleSummary summarize_oracle(std::uint64_t edge_bound, const std::vector<OracleRecord>& records) {
    OracleSummary s;
    s.edge_bound = edge_bound;
    s.triples = edge_bound * (edge_bound + 1) * (edge_bound + 2) / 6;
    for (const OracleRecord& r : records) {
        switch (r.triple.cls) {
            case CuboidClass::Perfect: ++s.perfect; break;
            case CuboidClass::EulerBrick: ++s.euler_brick; break;
            case CuboidClass::FaceCuboid: ++s.face_cuboid; break;
            case CuboidClass::Other: break;
        }
    }
    return s;
}

std::vector<std::string> check_face_record(const OracleRecord& rec) {
    std::vector<std::string> failures;
    const auto describe = [&rec]() {
        return "(" + rec.triple.a.get_str() + "," + rec.triple.b.get_str() + "," +
               rec.triple.c.get_str() + ")";
    };
    if (rec.triple.cls != CuboidClass::FaceCuboid || !rec.lift) {
        failures.push_back("record " + describe() + " is not a lifted face cuboid");
        return failures;
    }
    const FaceLabeling f = relabel_face_cuboid(rec.triple);
    const ParamUZ& p = *rec.lift;

    // (i) forward(lift) reproduces the normalized coordinates.
    const ForwardPoint fwd = forward(p);
    if (fwd.x1 != Rational(f.a, f.d) || fwd.x2 != Rational(f.b, f.d) ||
        fwd.x3 != Rational(f.c, f.d) || fwd.d1 != Rational(f.alpha, f.d)) {
        failures.push_back("forward(lift) mismatch for " + describe());
    }

    // (ii) b^2 is a rational square and recovers the beta face diagonal.
    const SquaredAB sq = ab_squared(p);
    const auto b_root = rational_sqrt(sq.b_sq);
    if (!b_root) {
        failures.push_back("b^2 not a rational square for " + describe());
    } else if (recover_d2(p, *b_root) != Rational(f.beta, f.d)) {
        failures.push_back("recovered d2 mismatch for " + describe());
    }

    // (iii) the characteristic residual vanishes.
    if (!char_eval(p.u.squared(), sq.a_sq, sq.b_sq).is_zero()) {
        failures.push_back("nonzero characteristic residual for " + describe());
    }

    // (iv) the inverse map returns the same parameters.
    const auto inverted = invert_ab(sq.a_sq, sq.b_sq);
    if (!inverted || inverted->u != p.u || inverted->z != p.z) {
        failures.push_back("invert_ab round trip failed for " + describe());
    }
    return failures;
}

CrossValidationReport cross_validate(std::uint64_t edge_bound, unsigned workers) {
    CrossValidationReport report;
    for (const OracleRecord& rec : brute_force_cuboids(edge_bound, workers)) {
        if (rec.triple.cls != CuboidClass::FaceCuboid) {
            continue;
        }
        ++report.face_cuboids;
        const auto failures = check_face_record(rec);
        report.checks_passed += 4 - failures.size();
        for (const std::string& f : failures) {
            report.failures.push_back(f);
        }
    }
    return report;
}

namespace {

// Primes up to at least `bound`, cached across calls.
std::shared_ptr<const std::vector<std::uint32_t>> primes_up_to(unsigned long bound) {
    static std::mutex mu;
    static std::shared_ptr<const std::vector<std::uint32_t>> primes;
    static unsigned long sieved_to = 1;
    if (bound > 100000000UL) {
        throw std::invalid_argument("squarefree_kernel: trial bound too large");
    }
    std::lock_guard lock(mu);
    if (!primes || bound > sieved_to) {
        std::vector<bool> composite(bound + 1, false);
        auto sieve = std::make_shared<std::vector<std::uint32_t>>();
        for (unsigned long p = 2; p <= bound; ++p) {
            if (!composite[p]) {
                sieve->push_back(static_cast<std::uint32_t>(p));
                for (unsigned long m = p * p; m <= bound; m += p) {
                    composite[m] = true;
                }
            }
        }
        primes = std::move(sieve);
        sieved_to = bound;
    }
    return primes;
}

KernelResult u64_squarefree_kernel(std::uint64_t n, unsigned long trial_bound,
                                   const std::vector<std::uint32_t>& primes) {
    std::uint64_t kernel = 1;
    for (const std::uint32_t p : primes) {
        if (p > trial_bound || static_cast<std::uint64_t>(p) * p > n) {
            break;
        }
        unsigned exponent = 0;
        while (n % p == 0) {
            n /= p;
            ++exponent;
        }
        if (exponent % 2 == 1) {
            kernel *= p;
        }
    }
    KernelResult out{Integer(1), true};
    if (n > 1 && !u64_is_square(n)) {
        // A composite cofactor would have a prime factor <= sqrt(n), so the
        // cofactor is provably prime iff n <= trial_bound^2.
        out.complete = n / trial_bound <= trial_bound;
        kernel *= n;
    }
    out.kernel = Integer(static_cast<unsigned long>(kernel));
    return out;
}

}  // namespace

KernelResult squarefree_kernel(Integer n, unsigned long trial_bound) {
    if (sgn(n) < 0) {
        n = -n;
    }
    if (sgn(n) == 0) {
        throw std::invalid_argument("squarefree_kernel: zero has no kernel");
    }
    const auto primes_ptr = primes_up_to(trial_bound);
    const auto& primes = *primes_ptr;
    if (n.fits_ulong_p()) {
        return u64_squarefree_kernel(n.get_ui(), trial_bound, primes);
    }
    KernelResult out{Integer(1), true};
    for (const std::uint32_t p : primes) {
        if (mpz_cmp_ui(n.get_mpz_t(), static_cast<unsigned long>(p) * p) < 0) {
            break;
        }
        unsigned exponent = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++exponent;
        }
        if (exponent % 2 == 1) {
            out.kernel *= p;
        }
        if (n.fits_ulong_p()) {
            const KernelResult rest = u64_squarefree_kernel(n.get_ui(), trial_bound, primes);
            out.kernel *= rest.kernel;
            out.complete = rest.complete;
            return out;
        }
    }
    if (n == 1) {
        return out;
    }
    if (is_perfect_square(n)) {
        return out;  // even exponents throughout, kernel unaffected
    }
    // No prime factor <= trial_bound: prime iff n <= trial_bound^2, otherwise
    // the factorization is unknown and the kernel is an upper bound.
    if (n > Integer(trial_bound) * trial_bound) {
        out.complete = false;
    }
    out.kernel *= n;
    return out;
}

KernelResult near_miss_kernel(const SearchRecord& rec, unsigned long trial_bound) {
    if (rec.verdict == Verdict::BothSquare) {
        throw std::invalid_argument("near_miss_kernel: record is already both-square");
    }
    KernelResult out{Integer(1), true};
    for (const Rational* q : {&rec.a_sq, &rec.b_sq}) {
        const KernelResult k = squarefree_kernel(q->num() * q->den(), trial_bound);
        out.kernel *= k.kernel;
        out.complete = out.complete && k.complete;
    }
    return out;
}

Integer near_miss_rank(const SearchRecord& rec) { return near_miss_kernel(rec).kernel; }

}  // namespace cuboid
