// Record vocabulary for the search pipeline and its line-oriented file
// formats: one JSON object (or CSV row) per record, all rationals as reduced
// "p/q" strings, plus a trailing "#SUMMARY {...}" line and scan checkpoints.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cuboid/arith.hpp"
#include "cuboid/model.hpp"
#include "cuboid/parametrization.hpp"

namespace cuboid {

enum class Verdict { None = 0, AOnly = 1, BOnly = 2, BothSquare = 3 };

const char* to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

// One scanned (u,z) pair: the squared image, which of a^2/b^2 are rational
// squares (with the roots as witnesses), and the characteristic residual
// (identically zero; stored so files are self-checking).
struct SearchRecord {
    Rational u, z;
    Rational a_sq, b_sq;
    Verdict verdict = Verdict::None;
    std::optional<Rational> witness_a;
    std::optional<Rational> witness_b;
    Rational residual;
};

// One interesting edge triple from the brute-force oracle; face cuboids
// carry their lift into (u,z) coordinates.
struct OracleRecord {
    TripleClassification triple;
    std::optional<ParamUZ> lift;
};

enum class Format { Jsonl, Csv };

Format format_from_string(std::string_view s);
const char* to_string(Format f);

/// Header line for CSV output (empty for JSONL).
std::string file_header(Format f, bool oracle);

std::string format_search_record(const SearchRecord& r, Format f);
SearchRecord parse_search_record(std::string_view line, Format f);

std::string format_oracle_record(const OracleRecord& r, Format f);
OracleRecord parse_oracle_record(std::string_view line);

struct ScanSummary {
    unsigned bound = 0;
    std::uint64_t records = 0;
    std::array<std::uint64_t, 4> counts{};  // indexed by Verdict
    bool completed = false;
};

std::string scan_summary_line(const ScanSummary& s);

struct OracleSummary {
    std::uint64_t edge_bound = 0;
    std::uint64_t triples = 0;
    std::uint64_t perfect = 0;
    std::uint64_t euler_brick = 0;
    std::uint64_t face_cuboid = 0;
};

std::string oracle_summary_line(const OracleSummary& s);

// Resume state for an interrupted scan: everything needed to continue the
// enumeration and reproduce a byte-identical output file.
struct ScanCheckpoint {
    unsigned bound = 0;
    Format format = Format::Jsonl;
    std::uint64_t completed_u = 0;
    std::uint64_t output_bytes = 0;
    std::uint64_t records = 0;
    std::array<std::uint64_t, 4> counts{};
};

// Raised when a checkpoint does not belong to the requested run (different
// bound or format, or missing output file).
struct CheckpointMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void save_checkpoint(const std::string& path, const ScanCheckpoint& cp);
std::optional<ScanCheckpoint> load_checkpoint(const std::string& path);

}  // namespace cuboid
