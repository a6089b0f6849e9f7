#include "cuboid/records.hpp"

#include <filesystem>
#include <fstream>
#include <vector>

#include "json.hpp"

namespace cuboid {

namespace {

using nlohmann::json;

std::string quote(const Rational& r) { return "\"" + r.str() + "\""; }

std::string opt_int(const std::optional<Integer>& v) {
    return v ? v->get_str() : std::string("null");
}

std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::optional<Rational> parse_opt_rational(const json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) {
        return std::nullopt;
    }
    return Rational::parse(j[key].get<std::string>());
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::None: return "NONE";
        case Verdict::AOnly: return "A_ONLY";
        case Verdict::BOnly: return "B_ONLY";
        case Verdict::BothSquare: return "BOTH_SQUARE";
    }
    return "NONE";
}

Verdict verdict_from_string(std::string_view s) {
    if (s == "NONE") return Verdict::None;
    if (s == "A_ONLY") return Verdict::AOnly;
    if (s == "B_ONLY") return Verdict::BOnly;
    if (s == "BOTH_SQUARE") return Verdict::BothSquare;
    throw std::invalid_argument("unknown verdict '" + std::string(s) + "'");
}

Format format_from_string(std::string_view s) {
    if (s == "jsonl") return Format::Jsonl;
    if (s == "csv") return Format::Csv;
    throw std::invalid_argument("unknown format '" + std::string(s) + "' (expected jsonl or csv)");
}

const char* to_string(Format f) { return f == Format::Jsonl ? "jsonl" : "csv"; }

std::string file_header(Format f, bool oracle) {
    if (f == Format::Jsonl) {
        return "";
    }
    return oracle ? "a,b,c,class,gamma,alpha,beta,d,u,z\n"
                  : "u,z,a_sq,b_sq,verdict,witness_a,witness_b,residual\n";
}

std::string format_search_record(const SearchRecord& r, Format f) {
    if (f == Format::Csv) {
        std::string out = r.u.str() + "," + r.z.str() + "," + r.a_sq.str() + "," + r.b_sq.str() +
                          "," + to_string(r.verdict) + ",";
        if (r.witness_a) out += r.witness_a->str();
        out += ",";
        if (r.witness_b) out += r.witness_b->str();
        out += "," + r.residual.str() + "\n";
        return out;
    }
    std::string witnesses = "null";
    if (r.witness_a && r.witness_b) {
        witnesses = "{\"a\":" + quote(*r.witness_a) + ",\"b\":" + quote(*r.witness_b) + "}";
    } else if (r.witness_a) {
        witnesses = "{\"a\":" + quote(*r.witness_a) + "}";
    } else if (r.witness_b) {
        witnesses = "{\"b\":" + quote(*r.witness_b) + "}";
    }
    return "{\"u\":" + quote(r.u) + ",\"z\":" + quote(r.z) + ",\"a_sq\":" + quote(r.a_sq) +
           ",\"b_sq\":" + quote(r.b_sq) + ",\"verdict\":\"" + to_string(r.verdict) +
           "\",\"witnesses\":" + witnesses + ",\"residual\":" + quote(r.residual) + "}\n";
}

SearchRecord parse_search_record(std::string_view line, Format f) {
    SearchRecord r;
    if (f == Format::Csv) {
        const auto fields = split_csv(line);
        if (fields.size() != 8) {
            throw std::invalid_argument("malformed CSV search record");
        }
        r.u = Rational::parse(fields[0]);
        r.z = Rational::parse(fields[1]);
        r.a_sq = Rational::parse(fields[2]);
        r.b_sq = Rational::parse(fields[3]);
        r.verdict = verdict_from_string(fields[4]);
        if (!fields[5].empty()) r.witness_a = Rational::parse(fields[5]);
        if (!fields[6].empty()) r.witness_b = Rational::parse(fields[6]);
        r.residual = Rational::parse(fields[7]);
        return r;
    }
    const json j = json::parse(line);
    r.u = Rational::parse(j.at("u").get<std::string>());
    r.z = Rational::parse(j.at("z").get<std::string>());
    r.a_sq = Rational::parse(j.at("a_sq").get<std::string>());
    r.b_sq = Rational::parse(j.at("b_sq").get<std::string>());
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    if (!j.at("witnesses").is_null()) {
        const json& w = j.at("witnesses");
        r.witness_a = parse_opt_rational(w, "a");
        r.witness_b = parse_opt_rational(w, "b");
    }
    r.residual = Rational::parse(j.at("residual").get<std::string>());
    return r;
}

std::string format_oracle_record(const OracleRecord& r, Format f) {
    const TripleClassification& t = r.triple;
    if (f == Format::Csv) {
        std::string out = t.a.get_str() + "," + t.b.get_str() + "," + t.c.get_str() + "," +
                          to_string(t.cls) + ",";
        out += t.gamma ? t.gamma->get_str() : "";
        out += ",";
        out += t.alpha ? t.alpha->get_str() : "";
        out += ",";
        out += t.beta ? t.beta->get_str() : "";
        out += ",";
        out += t.d ? t.d->get_str() : "";
        out += ",";
        if (r.lift) out += r.lift->u.str();
        out += ",";
        if (r.lift) out += r.lift->z.str();
        out += "\n";
        return out;
    }
    std::string out = "{\"a\":" + t.a.get_str() + ",\"b\":" + t.b.get_str() +
                      ",\"c\":" + t.c.get_str() + ",\"class\":\"" + to_string(t.cls) +
                      "\",\"gamma\":" + opt_int(t.gamma) + ",\"alpha\":" + opt_int(t.alpha) +
                      ",\"beta\":" + opt_int(t.beta) + ",\"d\":" + opt_int(t.d);
    if (r.lift) {
        out += ",\"u\":" + quote(r.lift->u) + ",\"z\":" + quote(r.lift->z);
    } else {
        out += ",\"u\":null,\"z\":null";
    }
    return out + "}\n";
}

OracleRecord parse_oracle_record(std::string_view line) {
    const json j = json::parse(line);
    OracleRecord r;
    const auto integer_at = [&](const char* key) { return Integer(j.at(key).dump()); };
    r.triple = classify_triple(integer_at("a"), integer_at("b"), integer_at("c"));
    if (!j.at("u").is_null()) {
        r.lift = ParamUZ{Rational::parse(j.at("u").get<std::string>()),
                         Rational::parse(j.at("z").get<std::string>())};
    }
    return r;
}

std::string scan_summary_line(const ScanSummary& s) {
    return "#SUMMARY {\"bound\":" + std::to_string(s.bound) +
           ",\"records\":" + std::to_string(s.records) +
           ",\"none\":" + std::to_string(s.counts[0]) +
           ",\"a_only\":" + std::to_string(s.counts[1]) +
           ",\"b_only\":" + std::to_string(s.counts[2]) +
           ",\"both_square\":" + std::to_string(s.counts[3]) + "}\n";
}

std::string oracle_summary_line(const OracleSummary& s) {
    return "#SUMMARY {\"edge_bound\":" + std::to_string(s.edge_bound) +
           ",\"triples\":" + std::to_string(s.triples) +
           ",\"perfect\":" + std::to_string(s.perfect) +
           ",\"euler_brick\":" + std::to_string(s.euler_brick) +
           ",\"face_cuboid\":" + std::to_string(s.face_cuboid) + "}\n";
}

void save_checkpoint(const std::string& path, const ScanCheckpoint& cp) {
    json j;
    j["kind"] = "scan";
    j["bound"] = cp.bound;
    j["format"] = to_string(cp.format);
    j["completed_u"] = cp.completed_u;
    j["output_bytes"] = cp.output_bytes;
    j["records"] = cp.records;
    j["none"] = cp.counts[0];
    j["a_only"] = cp.counts[1];
    j["b_only"] = cp.counts[2];
    j["both_square"] = cp.counts[3];
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write checkpoint file " + tmp);
        }
        out << j.dump() << "\n";
    }
    std::filesystem::rename(tmp, path);
}

std::optional<ScanCheckpoint> load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    json j;
    try {
        in >> j;
        ScanCheckpoint cp;
        cp.bound = j.at("bound").get<unsigned>();
        cp.format = format_from_string(j.at("format").get<std::string>());
        cp.completed_u = j.at("completed_u").get<std::uint64_t>();
        cp.output_bytes = j.at("output_bytes").get<std::uint64_t>();
        cp.records = j.at("records").get<std::uint64_t>();
        cp.counts = {j.at("none").get<std::uint64_t>(), j.at("a_only").get<std::uint64_t>(),
                     j.at("b_only").get<std::uint64_t>(), j.at("both_square").get<std::uint64_t>()};
        return cp;
    } catch (const json::exception& e) {
        throw CheckpointMismatch("corrupt checkpoint file " + path + ": " + e.what());
    }
}

}  // namespace cuboid
