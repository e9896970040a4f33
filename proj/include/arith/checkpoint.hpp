#pragma once

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "arith/errors.hpp"
#include "arith/inequality.hpp"

namespace arith {

inline constexpr const char* kScanEngineVersion = "arith-scan/1";
inline constexpr const char* kScanCsvHeader = "x,pi_x,pi_x_over_e,g_sign,margin_log10\n";

inline std::string format_scan_row(const InequalityReport& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%s,%.6f\n", r.x, r.pi_x,
                  r.pi_x_over_e, to_string(r.g_sign), r.margin_log10);
    return buf;
}

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

struct ScanIdentity {
    u64 range_lo = 2;
    u64 range_hi = 2;
    bool primes_only = false;
    u64 chunk = 1'000'000;
    std::string engine_version = kScanEngineVersion;

    friend bool operator==(const ScanIdentity&, const ScanIdentity&) = default;
};

struct Checkpoint {
    ScanIdentity scan;
    u64 last_completed_x = 0;  // range_lo - 1 before the first chunk
    std::string csv_path;      // empty when no CSV is written
    u64 csv_bytes = 0;         // CSV length consistent with last_completed_x
    ScanSummary partial;

    bool complete() const { return last_completed_x >= scan.range_hi; }
};

inline nlohmann::json checkpoint_content(const Checkpoint& cp) {
    nlohmann::json j;
    j["scan"] = {{"range_lo", cp.scan.range_lo},
                 {"range_hi", cp.scan.range_hi},
                 {"primes_only", cp.scan.primes_only},
                 {"step_rule", step_rule_name(cp.scan.primes_only)},
                 {"chunk", cp.scan.chunk},
                 {"engine_version", cp.scan.engine_version}};
    j["last_completed_x"] = cp.last_completed_x;
    j["csv_path"] = cp.csv_path;
    j["csv_bytes"] = cp.csv_bytes;
    j["summary"] = {{"holds", cp.partial.holds_count},
                    {"fails", cp.partial.fails_count},
                    {"indeterminate", cp.partial.indeterminate_count},
                    {"counterexamples", cp.partial.counterexamples}};
    return j;
}

inline nlohmann::json to_json(const Checkpoint& cp) {
    nlohmann::json j;
    j["content"] = checkpoint_content(cp);
    j["hash"] = fnv1a_hex(j["content"].dump());
    return j;
}

inline Checkpoint checkpoint_from_json(const nlohmann::json& j) {
    try {
        const auto& c = j.at("content");
        if (fnv1a_hex(c.dump()) != j.at("hash").get<std::string>())
            throw integrity_error("checkpoint hash mismatch");
        Checkpoint cp;
        const auto& s = c.at("scan");
        cp.scan.range_lo = s.at("range_lo").get<u64>();
        cp.scan.range_hi = s.at("range_hi").get<u64>();
        cp.scan.primes_only = s.at("primes_only").get<bool>();
        cp.scan.chunk = s.at("chunk").get<u64>();
        cp.scan.engine_version = s.at("engine_version").get<std::string>();
        cp.last_completed_x = c.at("last_completed_x").get<u64>();
        cp.csv_path = c.at("csv_path").get<std::string>();
        cp.csv_bytes = c.at("csv_bytes").get<u64>();
        const auto& sum = c.at("summary");
        cp.partial.range_lo = cp.scan.range_lo;
        cp.partial.range_hi = cp.scan.range_hi;
        cp.partial.step_rule = step_rule_name(cp.scan.primes_only);
        cp.partial.holds_count = sum.at("holds").get<u64>();
        cp.partial.fails_count = sum.at("fails").get<u64>();
        cp.partial.indeterminate_count = sum.at("indeterminate").get<u64>();
        cp.partial.counterexamples = sum.at("counterexamples").get<std::vector<u64>>();
        if (cp.scan.engine_version != kScanEngineVersion)
            throw integrity_error("checkpoint written by " + cp.scan.engine_version);
        if (cp.scan.chunk == 0 || cp.scan.range_lo > cp.scan.range_hi ||
            cp.last_completed_x + 1 < cp.scan.range_lo || cp.last_completed_x > cp.scan.range_hi)
            throw integrity_error("checkpoint fields out of range");
        return cp;
    } catch (const nlohmann::json::exception& e) {
        throw integrity_error(std::string("malformed checkpoint: ") + e.what());
    }
}

inline void save_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
        out << to_json(cp).dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

inline Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw integrity_error("cannot read checkpoint " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw integrity_error(std::string("malformed checkpoint: ") + e.what());
    }
    return checkpoint_from_json(j);
}

struct CheckpointedRun {
    ScanSummary summary;
    bool complete = false;
    u64 chunks_run = 0;
};

namespace detail {

inline CheckpointedRun continue_scan(Checkpoint cp, const std::filesystem::path& checkpoint_path,
                                     const PrimeCountEngine& engine, ScanOptions opts,
                                     std::optional<u64> max_chunks) {
    std::ofstream csv;
    if (!cp.csv_path.empty()) {
        const std::filesystem::path p(cp.csv_path);
        if (cp.last_completed_x + 1 == cp.scan.range_lo) {
            csv.open(p, std::ios::binary | std::ios::trunc);
            csv << kScanCsvHeader;
            csv.flush();
            cp.csv_bytes = std::filesystem::file_size(p);
        } else {
            // Drop rows written after the checkpoint was last saved.
            if (!std::filesystem::exists(p) || std::filesystem::file_size(p) < cp.csv_bytes)
                throw integrity_error("scan CSV " + cp.csv_path + " is shorter than checkpoint");
            std::filesystem::resize_file(p, cp.csv_bytes);
            csv.open(p, std::ios::binary | std::ios::app);
        }
        if (!csv) throw std::runtime_error("cannot open " + cp.csv_path);
        opts.on_row = [&csv](const InequalityReport& r) { csv << format_scan_row(r); };
    }

    CheckpointedRun run;
    while (!cp.complete() && (!max_chunks || run.chunks_run < *max_chunks)) {
        const u64 lo = cp.last_completed_x + 1;
        const u64 hi = std::min(cp.scan.range_hi, lo + cp.scan.chunk - 1);
        cp.partial.merge(scan_range(lo, hi, cp.scan.primes_only, engine, opts));
        if (csv.is_open()) {
            csv.flush();
            cp.csv_bytes = static_cast<u64>(csv.tellp());
        }
        cp.last_completed_x = hi;
        save_checkpoint(checkpoint_path, cp);
        ++run.chunks_run;
    }
    run.summary = cp.partial;
    run.complete = cp.complete();
    return run;
}

}  // namespace detail

/// Scans in chunks, saving a checkpoint after each. If the checkpoint file
/// already exists it must describe the same scan, and the run picks up from
/// it. Stops early after max_chunks chunks.
inline CheckpointedRun run_checkpointed_scan(const ScanIdentity& scan,
                                             const std::filesystem::path& checkpoint_path,
                                             const std::string& csv_path,
                                             const PrimeCountEngine& engine,
                                             const ScanOptions& opts = {},
                                             std::optional<u64> max_chunks = std::nullopt) {
    if (scan.range_lo > scan.range_hi) throw std::invalid_argument("scan: empty range");
    if (scan.range_lo < 2) throw std::domain_error("scan: range_lo must be >= 2");
    if (scan.chunk == 0) throw std::invalid_argument("scan: chunk must be >= 1");
    Checkpoint cp;
    if (std::filesystem::exists(checkpoint_path)) {
        cp = load_checkpoint(checkpoint_path);
        if (!(cp.scan == scan))
            throw integrity_error("checkpoint " + checkpoint_path.string() +
                                  " describes a different scan");
        if (cp.csv_path != csv_path)
            throw integrity_error("checkpoint was written for CSV '" + cp.csv_path + "'");
    } else {
        cp.scan = scan;
        cp.last_completed_x = scan.range_lo - 1;
        cp.csv_path = csv_path;
        cp.partial.range_lo = scan.range_lo;
        cp.partial.range_hi = scan.range_hi;
        cp.partial.step_rule = step_rule_name(scan.primes_only);
        save_checkpoint(checkpoint_path, cp);
    }
    return detail::continue_scan(std::move(cp), checkpoint_path, engine, opts, max_chunks);
}

/// Completes the scan recorded in a checkpoint file.
inline CheckpointedRun resume(const std::filesystem::path& checkpoint_path,
                              const PrimeCountEngine& engine, const ScanOptions& opts = {},
                              std::optional<u64> max_chunks = std::nullopt) {
    return detail::continue_scan(load_checkpoint(checkpoint_path), checkpoint_path, engine, opts,
                                 max_chunks);
}

}  // namespace arith
