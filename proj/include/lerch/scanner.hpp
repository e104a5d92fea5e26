#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lerch/identities.hpp"

namespace lerch {

/// Primes in [lo, hi], segmented sieve. lo/hi may be anything < 2^40 or so;
/// the scans here stay below 2^31.
std::vector<u64> primes_in(u64 lo, u64 hi);

/// What to look for at each prime:
///   "s:<N>:<k>"  zeros of s(k,N)
///   "q<base>"    zeros of the Fermat quotient q_p(base)
///   a check id   primes where that check fires (conditional) or fails
struct ScanTarget {
    enum class Kind { Sum, Quotient, Check };
    Kind kind = Kind::Sum;
    u32 n = 0;
    i64 k = 0;
    u64 base = 0;
    std::string check_id;

    static ScanTarget parse(const std::string& text);
    std::string str() const;
    bool operator==(const ScanTarget&) const = default;
};

struct ScanHit {
    u32 p = 0;
    std::string target;
    u32 value = 0;  // the witnessed residue (0 for a zero hit)
    u32 q2 = 0;     // context: q_p(2), q_p(3) when defined at p
    u32 q3 = 0;
    bool failed = false;  // check target only: residual was nonzero

    bool operator==(const ScanHit&) const = default;
};

struct ScanOptions {
    int threads = 0;             // 0 = OpenMP default
    u64 floor = 5;               // primes below this are skipped
    u64 segment = 1u << 16;      // width of one work unit
    int batch_segments = 0;      // segments per parallel sweep; 0 = 4*threads
    int checkpoint_interval = 1; // batches between checkpoint writes
    std::string checkpoint_path; // empty = no checkpointing
    bool resume = false;
    int abort_after_checkpoints = 0;  // test hook: stop early after N writes
};

struct ScanResult {
    std::vector<ScanHit> hits;
    u64 next_lo = 0;   // first unprocessed value
    bool complete = true;
    u64 primes_seen = 0;
    u64 tables_built = 0;  // sum tables computed; targets sharing an N share one
};

struct CheckpointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Digest of everything that must match for a checkpoint to be resumable.
u64 scan_config_digest(u64 lo, u64 hi, const std::vector<ScanTarget>& targets,
                       const ScanOptions& opt);

/// Parallel scan of primes in [lo, hi]. Hits come back ordered by (p, target
/// position) regardless of thread count. With a checkpoint path set, progress
/// is written every checkpoint_interval batches and an interrupted scan can be
/// resumed with opt.resume = true.
ScanResult scan(u64 lo, u64 hi, const std::vector<ScanTarget>& targets,
                const ScanOptions& opt = {});

/// Serial reference implementation with identical output; kept for testing
/// and benchmarking against the parallel kernel.
ScanResult scan_serial(u64 lo, u64 hi, const std::vector<ScanTarget>& targets,
                       const ScanOptions& opt = {});

struct CheckTally {
    std::string id;
    u64 pass = 0;
    u64 fail = 0;
    u64 vacuous = 0;
    u64 fired = 0;
};

struct VerifySummary {
    u64 primes = 0;
    std::vector<CheckTally> tallies;            // one per check id, id order
    std::vector<CheckReport> failures;          // every failing report
    bool ok() const { return failures.empty(); }
};

/// Run the identity catalog at every prime in [lo, hi] (>= opt.floor),
/// OpenMP over primes. Empty filter = all checks.
VerifySummary verify_range(u64 lo, u64 hi, const std::vector<std::string>& filter = {},
                           int n_small = 24, int n_large = 48, int threads = 0,
                           u64 floor = 5);

void write_hits_csv(std::ostream& os, const std::vector<ScanHit>& hits);
void write_hits_jsonl(std::ostream& os, const std::vector<ScanHit>& hits);

}  // namespace lerch
