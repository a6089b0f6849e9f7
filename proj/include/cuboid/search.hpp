// Search machinery: height-ordered rational enumeration, the (u,z) scan for
// rational-square verdicts with checkpointed resumption, the brute-force
// integer-cuboid oracle, cross-validation between the two, and squarefree
// near-miss ranking.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cuboid/arith.hpp"
#include "cuboid/characteristic.hpp"
#include "cuboid/model.hpp"
#include "cuboid/parametrization.hpp"
#include "cuboid/records.hpp"

namespace cuboid {

// Emits each reduced fraction p/q with 0 < p < q <= bound exactly once,
// by ascending q and ascending p within q. The (q,p) pair is the resumption
// cursor.
class FareyEnumerator {
public:
    explicit FareyEnumerator(unsigned bound, unsigned q = 2, unsigned p = 1);
    std::optional<Rational> next();
    unsigned cursor_q() const { return q_; }
    unsigned cursor_p() const { return p_; }

private:
    unsigned bound_;
    unsigned q_;
    unsigned p_;
};

/// All fractions of the enumeration, materialized. Throws
/// std::invalid_argument for bound < 2.
std::vector<Rational> enumerate_rationals(unsigned bound);

/// Evaluates one (u,z) pair: squared image, square witnesses, verdict, and
/// the characteristic residual. The residual is asserted to be exactly zero
/// (std::logic_error otherwise - that would falsify the polynomial identity
/// the scan rests on). Throws std::domain_error outside the domain.
SearchRecord evaluate_pair(const Rational& u, const Rational& z);

/// Escalation for a BOTH_SQUARE record: rebuilds the full six-component
/// unit-vector point, scales it to integers and verifies the septuple.
/// Any failure is a std::logic_error (such a record proves a perfect cuboid,
/// so reconstruction cannot fail in a correct implementation).
CuboidSeptuple reconstruct_perfect(const SearchRecord& rec);

struct ScanOptions {
    unsigned bound = 0;
    unsigned workers = 1;
    Format format = Format::Jsonl;
    std::string out_path;
    std::string checkpoint_path;  // empty: no checkpointing
    // Commit at most this many u-blocks in this invocation, then stop with a
    // checkpoint (simulates an interruption). Requires checkpoint_path.
    std::optional<std::uint64_t> stop_after;
};

struct ScanResult {
    ScanSummary summary;
    std::vector<SearchRecord> both_square;       // escalated records, if any
    std::vector<CuboidSeptuple> discoveries;     // verified perfect cuboids
};

/// Runs (or resumes) a scan over all ordered pairs of enumerated rationals,
/// writing one record line per pair plus a final summary line. Resuming from
/// a checkpoint continues the identical byte stream. Throws
/// CheckpointMismatch when an existing checkpoint belongs to different
/// options.
ScanResult run_scan(const ScanOptions& options);

/// Enumerates 1 <= a <= b <= c <= edge_bound and returns the PERFECT,
/// EULER_BRICK and FACE_CUBOID triples in lexicographic order, face cuboids
/// with their lift. Throws std::invalid_argument for edge_bound < 3.
std::vector<OracleRecord> brute_force_cuboids(std::uint64_t edge_bound, unsigned workers = 1);

OracleSummary summarize_oracle(std::uint64_t edge_bound, const std::vector<OracleRecord>& records);

/// The four consistency checks for one face-cuboid oracle record; returns a
/// description of each failed check (empty = all four passed).
std::vector<std::string> check_face_record(const OracleRecord& rec);

struct CrossValidationReport {
    std::uint64_t face_cuboids = 0;
    std::uint64_t checks_passed = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Brute-forces to edge_bound and runs check_face_record on every face
/// cuboid found.
CrossValidationReport cross_validate(std::uint64_t edge_bound, unsigned workers = 1);

// Squarefree kernel (product of primes with odd exponent). Factorization is
// trial division up to trial_bound; when a cofactor cannot be resolved it is
// folded into the kernel and the result is flagged incomplete.
struct KernelResult {
    Integer kernel;
    bool complete = true;
};

KernelResult squarefree_kernel(Integer n, unsigned long trial_bound = 1000000);

/// Ranking key for near-miss reports: the product over a_sq and b_sq of the
/// squarefree kernel of numerator*denominator (1 for a rational square, so
/// for single-witness verdicts this is the kernel of the non-square side).
/// Smaller = closer to a perfect-cuboid point. Throws std::invalid_argument
/// for BOTH_SQUARE records.
KernelResult near_miss_kernel(const SearchRecord& rec, unsigned long trial_bound = 1000000);
Integer near_miss_rank(const SearchRecord& rec);

/// Exact perfect-square test on machine words; the fast path of the oracle,
/// cross-checked against is_perfect_square in the tests.
bool u64_is_square(std::uint64_t n, std::uint64_t* root = nullptr);

}  // namespace cuboid
