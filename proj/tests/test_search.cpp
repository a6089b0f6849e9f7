#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cuboid/records.hpp"
#include "cuboid/search.hpp"
#include "test_util.hpp"

using namespace cuboid;

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("cuboid_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

unsigned long naive_phi(unsigned long n) {
    unsigned long count = 0;
    for (unsigned long k = 1; k < n; ++k) {
        if (std::gcd(k, n) == 1) {
            ++count;
        }
    }
    return count;
}

}  // namespace

TEST_CASE("enumerate_rationals ordering and counts") {
    const auto three = enumerate_rationals(3);
    REQUIRE(three.size() == 3);
    CHECK(three[0] == Rational(1, 2));
    CHECK(three[1] == Rational(1, 3));
    CHECK(three[2] == Rational(2, 3));

    CHECK(enumerate_rationals(5).size() == 9);

    // Count matches the totient sum, computed here by brute force.
    for (unsigned bound : {7u, 12u, 30u}) {
        unsigned long expected = 0;
        for (unsigned long q = 2; q <= bound; ++q) {
            expected += naive_phi(q);
        }
        CHECK(enumerate_rationals(bound).size() == expected);
    }

    // Reduced, inside (0,1), grouped by ascending denominator then numerator.
    const auto all = enumerate_rationals(40);
    for (std::size_t i = 0; i < all.size(); ++i) {
        const Rational& v = all[i];
        CHECK(v > Rational(0));
        CHECK(v < Rational(1));
        Integer g;
        mpz_gcd(g.get_mpz_t(), v.num().get_mpz_t(), v.den().get_mpz_t());
        CHECK(g == 1);
        if (i > 0) {
            const Rational& prev = all[i - 1];
            const bool ordered = prev.den() < v.den() ||
                                 (prev.den() == v.den() && prev.num() < v.num());
            CHECK(ordered);
        }
    }
    CHECK_THROWS_AS(enumerate_rationals(1), std::invalid_argument);
}

TEST_CASE("FareyEnumerator cursor resumes mid-stream") {
    FareyEnumerator full(12);
    std::vector<Rational> reference;
    while (auto r = full.next()) {
        reference.push_back(*r);
    }
    FareyEnumerator head(12);
    for (int i = 0; i < 17; ++i) {
        head.next();
    }
    FareyEnumerator tail(12, head.cursor_q(), head.cursor_p());
    std::vector<Rational> resumed(reference.begin(), reference.begin() + 17);
    while (auto r = tail.next()) {
        resumed.push_back(*r);
    }
    CHECK(resumed == reference);
}

TEST_CASE("evaluate_pair verdicts and residuals") {
    const SearchRecord none = evaluate_pair(Rational(1, 2), Rational(1, 3));
    CHECK(none.verdict == Verdict::None);
    CHECK(none.a_sq == Rational(13, 37));
    CHECK(none.b_sq == Rational(8, 17));
    CHECK_FALSE(none.witness_a.has_value());
    CHECK_FALSE(none.witness_b.has_value());
    CHECK(none.residual == Rational(0));

    const SearchRecord b_only = evaluate_pair(Rational(16, 21), Rational(9, 17));
    CHECK(b_only.verdict == Verdict::BOnly);
    CHECK(b_only.witness_b == Rational(4, 5));
    CHECK_FALSE(b_only.witness_a.has_value());

    const SearchRecord a_only = evaluate_pair(Rational(1, 9), Rational(1, 13));
    CHECK(a_only.verdict == Verdict::AOnly);
    CHECK(a_only.witness_a == Rational(5, 37));
    CHECK(a_only.a_sq == Rational(25, 1369));

    CHECK_THROWS_AS(evaluate_pair(Rational(1), Rational(1, 2)), std::domain_error);

    auto rng = testutil::make_rng();
    for (int i = 0; i < 500; ++i) {
        const SearchRecord r = evaluate_pair(testutil::random_unit_rational(rng),
                                             testutil::random_unit_rational(rng));
        CHECK(r.residual == Rational(0));
    }
}

TEST_CASE("reconstruct_perfect rejects non-discovery records") {
    const SearchRecord rec = evaluate_pair(Rational(16, 21), Rational(9, 17));
    CHECK_THROWS_AS(reconstruct_perfect(rec), std::invalid_argument);
}

TEST_CASE("u64_is_square agrees with the exact kernel") {
    std::uint64_t root = 0;
    CHECK(u64_is_square(0, &root));
    CHECK(root == 0);
    CHECK(u64_is_square(485809, &root));
    CHECK(root == 697);
    CHECK_FALSE(u64_is_square(474993));

    auto rng = testutil::make_rng();
    for (int i = 0; i < 20000; ++i) {
        const std::uint64_t n = rng() >> (i % 33);
        const bool fast = u64_is_square(n);
        Integer big;
        mpz_import(big.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
        CHECK(fast == is_perfect_square(big).has_value());
    }
    // Dense check near squares, where off-by-one bugs live.
    for (std::uint64_t k = 1; k < 2000; ++k) {
        CHECK(u64_is_square(k * k));
        CHECK_FALSE(u64_is_square(k * k + 1));
        if (k > 1) {
            CHECK_FALSE(u64_is_square(k * k - 1));
        }
    }
}

TEST_CASE("brute force finds the known corpus") {
    CHECK_THROWS_AS(brute_force_cuboids(2), std::invalid_argument);

    const auto small = brute_force_cuboids(10);
    CHECK(small.empty());

    const auto to240 = brute_force_cuboids(240);
    REQUIRE(to240.size() == 1);
    CHECK(to240[0].triple.a == 44);
    CHECK(to240[0].triple.b == 117);
    CHECK(to240[0].triple.c == 240);
    CHECK(to240[0].triple.cls == CuboidClass::EulerBrick);
    for (const auto& rec : to240) {
        CHECK(rec.triple.cls != CuboidClass::Perfect);
    }
}

TEST_CASE("brute force is worker-count independent") {
    const auto one = brute_force_cuboids(300, 1);
    const auto four = brute_force_cuboids(300, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].triple.a == four[i].triple.a);
        CHECK(one[i].triple.b == four[i].triple.b);
        CHECK(one[i].triple.c == four[i].triple.c);
        CHECK(one[i].triple.cls == four[i].triple.cls);
    }
}

TEST_CASE("cross_validate") {
    SUBCASE("vacuous at tiny bounds") {
        const CrossValidationReport r = cross_validate(3);
        CHECK(r.face_cuboids == 0);
        CHECK(r.ok());
    }
    SUBCASE("corrupted record fails the checks") {
        auto t = classify_triple(104, 153, 672);
        OracleRecord good{t, lift_face_cuboid(t)};
        CHECK(check_face_record(good).empty());

        OracleRecord corrupted{t, ParamUZ{Rational(16, 21), Rational(10, 17)}};
        CHECK_FALSE(check_face_record(corrupted).empty());

        OracleRecord missing_lift{classify_triple(44, 117, 240), std::nullopt};
        CHECK_FALSE(check_face_record(missing_lift).empty());
    }
}

TEST_CASE("squarefree kernels") {
    CHECK(squarefree_kernel(Integer(13) * 37).kernel == 481);
    CHECK(squarefree_kernel(Integer(16) * 25).kernel == 1);
    // 801 = 9 * 89, so kernel(593 * 801) = 593 * 89.
    const KernelResult k = squarefree_kernel(Integer(593) * 801);
    CHECK(k.kernel == Integer(593) * 89);
    CHECK(k.complete);
    CHECK(squarefree_kernel(Integer(1)).kernel == 1);
    CHECK_THROWS_AS(squarefree_kernel(Integer(0)), std::invalid_argument);

    // Large prime-squared cofactor is still resolved as a square.
    const Integer p(1000003);
    CHECK(squarefree_kernel(p * p, 1000).kernel == 1);
    // A semiprime beyond the trial bound is flagged incomplete.
    const KernelResult inc = squarefree_kernel(p * 1000033, 1000);
    CHECK_FALSE(inc.complete);
    CHECK(inc.kernel == p * 1000033);

    auto rng = testutil::make_rng();
    for (int i = 0; i < 300; ++i) {
        const Integer n = testutil::random_integer(rng, 40) + 1;
        const KernelResult kr = squarefree_kernel(n, 100000);
        // kernel divides n and the cofactor n/kernel is a perfect square.
        Integer quotient, rem;
        mpz_fdiv_qr(quotient.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), kr.kernel.get_mpz_t());
        CHECK(rem == 0);
        if (kr.complete) {
            CHECK(is_perfect_square(quotient).has_value());
        }
    }
}

TEST_CASE("near-miss ranking") {
    const SearchRecord none = evaluate_pair(Rational(1, 2), Rational(1, 3));
    // a^2 = 13/37 contributes 481, b^2 = 8/17 contributes kernel(8*17) = 34.
    CHECK(near_miss_rank(none) == Integer(481) * 34);

    const SearchRecord b_only = evaluate_pair(Rational(16, 21), Rational(9, 17));
    // Only a^2 = 593/801 is non-square: kernel = 593 * 89 = 52777.
    CHECK(near_miss_rank(b_only) == 52777);

    SearchRecord fake = b_only;
    fake.verdict = Verdict::BothSquare;
    CHECK_THROWS_AS(near_miss_rank(fake), std::invalid_argument);
}

TEST_CASE("record serialization round trips") {
    auto rng = testutil::make_rng();
    for (int i = 0; i < 200; ++i) {
        const SearchRecord rec = evaluate_pair(testutil::random_unit_rational(rng, 60),
                                               testutil::random_unit_rational(rng, 60));
        for (const Format f : {Format::Jsonl, Format::Csv}) {
            const std::string line = format_search_record(rec, f);
            const SearchRecord back = parse_search_record(
                std::string_view(line).substr(0, line.size() - 1), f);
            CHECK(back.u == rec.u);
            CHECK(back.z == rec.z);
            CHECK(back.a_sq == rec.a_sq);
            CHECK(back.b_sq == rec.b_sq);
            CHECK(back.verdict == rec.verdict);
            CHECK(back.witness_a == rec.witness_a);
            CHECK(back.witness_b == rec.witness_b);
            CHECK(back.residual == rec.residual);
        }
    }

    const auto t = classify_triple(104, 153, 672);
    const OracleRecord rec{t, lift_face_cuboid(t)};
    const std::string line = format_oracle_record(rec, Format::Jsonl);
    const OracleRecord back = parse_oracle_record(line);
    CHECK(back.triple.a == rec.triple.a);
    CHECK(back.triple.cls == rec.triple.cls);
    REQUIRE(back.lift.has_value());
    CHECK(back.lift->u == rec.lift->u);
    CHECK(back.lift->z == rec.lift->z);
}

TEST_CASE("scan writes records, summary and respects workers") {
    TempDir tmp;
    const auto out1 = (tmp.path / "one.jsonl").string();
    const auto out4 = (tmp.path / "four.jsonl").string();

    ScanOptions opt;
    opt.bound = 10;
    opt.out_path = out1;
    const ScanResult r1 = run_scan(opt);
    CHECK(r1.summary.completed);
    CHECK(r1.summary.records == 31 * 31);  // totient sum to 10 is 31
    CHECK(r1.summary.counts[3] == 0);
    CHECK(r1.both_square.empty());
    CHECK(r1.discoveries.empty());

    opt.out_path = out4;
    opt.workers = 4;
    const ScanResult r4 = run_scan(opt);
    CHECK(slurp(out1) == slurp(out4));

    // Every line parses and carries residual zero; one summary at the end.
    std::ifstream in(out1);
    std::string line;
    std::size_t lines = 0, summaries = 0;
    while (std::getline(in, line)) {
        if (line.rfind("#SUMMARY", 0) == 0) {
            ++summaries;
            continue;
        }
        const SearchRecord rec = parse_search_record(line, Format::Jsonl);
        CHECK(rec.residual == Rational(0));
        ++lines;
    }
    CHECK(lines == 961);
    CHECK(summaries == 1);
}

TEST_CASE("interrupted scans resume to byte-identical output") {
    TempDir tmp;
    const auto reference_path = (tmp.path / "ref.jsonl").string();
    ScanOptions ref;
    ref.bound = 12;
    ref.out_path = reference_path;
    run_scan(ref);
    const std::string reference = slurp(reference_path);

    for (const std::uint64_t stop_at : {1ULL, 7ULL, 20ULL, 44ULL}) {
        const auto out = (tmp.path / ("resume" + std::to_string(stop_at) + ".jsonl")).string();
        const auto cp = (tmp.path / ("cp" + std::to_string(stop_at) + ".json")).string();
        ScanOptions opt;
        opt.bound = 12;
        opt.out_path = out;
        opt.checkpoint_path = cp;
        opt.stop_after = stop_at;
        const ScanResult partial = run_scan(opt);
        CHECK_FALSE(partial.summary.completed);
        CHECK(std::filesystem::exists(cp));

        opt.stop_after.reset();
        const ScanResult resumed = run_scan(opt);
        CHECK(resumed.summary.completed);
        CHECK(resumed.summary.records == 45 * 45);
        CHECK_FALSE(std::filesystem::exists(cp));
        CHECK(slurp(out) == reference);
    }
}

TEST_CASE("checkpoint mismatch is rejected") {
    TempDir tmp;
    const auto out = (tmp.path / "scan.jsonl").string();
    const auto cp = (tmp.path / "cp.json").string();
    ScanOptions opt;
    opt.bound = 10;
    opt.out_path = out;
    opt.checkpoint_path = cp;
    opt.stop_after = 3;
    run_scan(opt);

    ScanOptions other = opt;
    other.stop_after.reset();
    other.bound = 11;
    CHECK_THROWS_AS(run_scan(other), CheckpointMismatch);

    ScanOptions different_format = opt;
    different_format.stop_after.reset();
    different_format.format = Format::Csv;
    CHECK_THROWS_AS(run_scan(different_format), CheckpointMismatch);

    // Unchanged options resume fine.
    opt.stop_after.reset();
    const ScanResult done = run_scan(opt);
    CHECK(done.summary.completed);
}

TEST_CASE("checkpoint save/load round trip") {
    TempDir tmp;
    const auto path = (tmp.path / "cp.json").string();
    ScanCheckpoint cp;
    cp.bound = 50;
    cp.format = Format::Csv;
    cp.completed_u = 123;
    cp.output_bytes = 456789;
    cp.records = 777;
    cp.counts = {700, 40, 30, 7};
    save_checkpoint(path, cp);
    const auto back = load_checkpoint(path);
    REQUIRE(back.has_value());
    CHECK(back->bound == cp.bound);
    CHECK(back->format == cp.format);
    CHECK(back->completed_u == cp.completed_u);
    CHECK(back->output_bytes == cp.output_bytes);
    CHECK(back->records == cp.records);
    CHECK(back->counts == cp.counts);
    CHECK_FALSE(load_checkpoint((tmp.path / "missing.json").string()).has_value());
}

TEST_CASE("csv scan output parses back") {
    TempDir tmp;
    const auto out = (tmp.path / "scan.csv").string();
    ScanOptions opt;
    opt.bound = 6;
    opt.format = Format::Csv;
    opt.out_path = out;
    const ScanResult r = run_scan(opt);
    CHECK(r.summary.completed);

    std::ifstream in(out);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "u,z,a_sq,b_sq,verdict,witness_a,witness_b,residual");
    std::size_t records = 0;
    while (std::getline(in, line)) {
        if (line.rfind("#SUMMARY", 0) == 0) {
            continue;
        }
        parse_search_record(line, Format::Csv);
        ++records;
    }
    CHECK(records == r.summary.records);
}
