#include "lerch/scanner.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace lerch {

std::vector<u64> primes_in(u64 lo, u64 hi) {
    std::vector<u64> out;
    if (hi < 2 || hi < lo) return out;
    if (hi >= (1ull << 31)) throw RangeError("primes_in: range must stay below 2^31");
    lo = std::max<u64>(lo, 2);
    u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi))) + 2;
    std::vector<bool> base(root + 1, true);
    std::vector<u64> base_primes;
    for (u64 i = 2; i <= root; ++i) {
        if (!base[i]) continue;
        base_primes.push_back(i);
        for (u64 j = i * i; j <= root; j += i) base[j] = false;
    }
    std::vector<bool> seg(hi - lo + 1, true);
    for (u64 q : base_primes) {
        u64 start = std::max(q * q, (lo + q - 1) / q * q);
        for (u64 j = start; j <= hi; j += q) seg[j - lo] = false;
    }
    for (u64 v = lo; v <= hi; ++v)
        if (seg[v - lo] && v >= 2) out.push_back(v);
    return out;
}

ScanTarget ScanTarget::parse(const std::string& text) {
    ScanTarget t;
    if (text.rfind("s:", 0) == 0) {
        size_t colon = text.find(':', 2);
        if (colon == std::string::npos)
            throw std::invalid_argument("bad sum target (want s:<N>:<k>): " + text);
        t.kind = Kind::Sum;
        t.n = static_cast<u32>(std::stoul(text.substr(2, colon - 2)));
        t.k = std::stoll(text.substr(colon + 1));
        if (t.n == 0) throw std::invalid_argument("bad sum target, N = 0: " + text);
        if (t.k < 0 || t.k >= static_cast<i64>(t.n))
            throw std::invalid_argument("sum target needs 0 <= k < N: " + text);
        return t;
    }
    if (text.size() > 1 && text[0] == 'q' &&
        std::all_of(text.begin() + 1, text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        t.kind = Kind::Quotient;
        t.base = std::stoull(text.substr(1));
        if (t.base < 2) throw std::invalid_argument("quotient base must be >= 2: " + text);
        return t;
    }
    if (!find_check(text)) throw std::invalid_argument("unknown scan target: " + text);
    t.kind = Kind::Check;
    t.check_id = text;
    return t;
}

std::string ScanTarget::str() const {
    switch (kind) {
        case Kind::Sum:
            return "s:" + std::to_string(n) + ":" + std::to_string(k);
        case Kind::Quotient:
            return "q" + std::to_string(base);
        case Kind::Check:
            return check_id;
    }
    return "?";
}

namespace {

void eval_prime(u32 p, const std::vector<ScanTarget>& targets, std::vector<ScanHit>& out,
                u64& tables_built) {
    PrimeContext ctx(p);
    SumCache cache(ctx);
    u32 q2 = p != 2 ? cache.q(2) : 0;
    u32 q3 = p != 3 ? cache.q(3) : 0;
    for (const auto& t : targets) {
        switch (t.kind) {
            case ScanTarget::Kind::Sum: {
                // p > N keeps every bucket non-empty; below that a zero is
                // a vacuous artifact, not a table entry
                if (p <= t.n) break;
                u32 v = cache.s(t.n, t.k);
                if (v == 0) out.push_back({p, t.str(), v, q2, q3, false});
                break;
            }
            case ScanTarget::Kind::Quotient: {
                if (t.base % p == 0) break;
                u32 v = cache.q(t.base);
                if (v == 0) out.push_back({p, t.str(), v, q2, q3, false});
                break;
            }
            case ScanTarget::Kind::Check: {
                auto reports = run_all(cache, {t.check_id});
                for (const auto& rep : reports) {
                    if (rep.pass && !rep.fired) continue;
                    u32 v = 0;
                    for (u32 r : rep.residuals)
                        if (r != 0) {
                            v = r;
                            break;
                        }
                    out.push_back({p, t.str(), v, q2, q3, !rep.pass});
                    break;  // one hit per (p, target)
                }
                break;
            }
        }
    }
    tables_built += cache.tables_built();
}

std::vector<ScanHit> scan_segment(u64 lo, u64 hi, const std::vector<ScanTarget>& targets,
                                  u64 floor, u64& primes_seen, u64& tables_built) {
    std::vector<ScanHit> out;
    for (u64 p : primes_in(std::max(lo, floor), hi)) {
        if (p < 5) continue;  // tables and quotients need p >= 5
        ++primes_seen;
        eval_prime(static_cast<u32>(p), targets, out, tables_built);
    }
    return out;
}

nlohmann::json hit_to_json(const ScanHit& h) {
    return {{"p", h.p},   {"target", h.target}, {"value", h.value},
            {"q2", h.q2}, {"q3", h.q3},         {"failed", h.failed}};
}

ScanHit hit_from_json(const nlohmann::json& j) {
    ScanHit h;
    h.p = j.at("p").get<u32>();
    h.target = j.at("target").get<std::string>();
    h.value = j.at("value").get<u32>();
    h.q2 = j.at("q2").get<u32>();
    h.q3 = j.at("q3").get<u32>();
    h.failed = j.at("failed").get<bool>();
    return h;
}

void write_checkpoint(const std::string& path, u64 digest, u64 lo, u64 hi,
                      const std::vector<ScanTarget>& targets, u64 next_lo,
                      const std::vector<ScanHit>& hits, u64 primes_seen,
                      u64 tables_built) {
    nlohmann::json j;
    j["config_digest"] = digest;
    j["range"] = {lo, hi};
    auto tj = nlohmann::json::array();
    for (const auto& t : targets) tj.push_back(t.str());
    j["targets"] = std::move(tj);
    j["cursor"] = next_lo;
    j["primes_seen"] = primes_seen;
    j["tables_built"] = tables_built;
    auto arr = nlohmann::json::array();
    for (const auto& h : hits) arr.push_back(hit_to_json(h));
    j["hits"] = std::move(arr);
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::trunc);
        if (!os) throw CheckpointError("cannot write checkpoint: " + tmp);
        os << j.dump(1, '\t') << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw CheckpointError("cannot move checkpoint into place: " + path);
}

ScanResult scan_impl(u64 lo, u64 hi, const std::vector<ScanTarget>& targets,
                     const ScanOptions& opt, bool parallel) {
    if (targets.empty()) throw std::invalid_argument("scan: no targets");
    u64 digest = scan_config_digest(lo, hi, targets, opt);
    ScanResult res;
    u64 pos = std::max(lo, opt.floor);

    if (opt.resume) {
        if (opt.checkpoint_path.empty())
            throw CheckpointError("resume requested without a checkpoint path");
        std::ifstream is(opt.checkpoint_path);
        if (!is) throw CheckpointError("cannot read checkpoint: " + opt.checkpoint_path);
        nlohmann::json j = nlohmann::json::parse(is);
        if (j.at("config_digest").get<u64>() != digest)
            throw CheckpointError("checkpoint does not match this scan configuration");
        pos = std::max(pos, j.at("cursor").get<u64>());
        res.primes_seen = j.at("primes_seen").get<u64>();
        res.tables_built = j.at("tables_built").get<u64>();
        for (const auto& hj : j.at("hits")) res.hits.push_back(hit_from_json(hj));
    }

    int nthreads = opt.threads > 0 ? opt.threads : omp_get_max_threads();
    if (!parallel) nthreads = 1;
    int batch = opt.batch_segments > 0 ? opt.batch_segments : 4 * std::max(nthreads, 1);
    u64 seg_w = std::max<u64>(opt.segment, 64);

    int batches_done = 0;
    int checkpoints_written = 0;
    while (pos <= hi) {
        std::vector<std::pair<u64, u64>> segs;
        for (int b = 0; b < batch && pos <= hi; ++b) {
            u64 end = std::min(pos + seg_w - 1, hi);
            segs.emplace_back(pos, end);
            pos = end + 1;
        }
        std::vector<std::vector<ScanHit>> results(segs.size());
        std::vector<u64> counts(segs.size(), 0);
        std::vector<u64> tables(segs.size(), 0);
        if (parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
            for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(segs.size()); ++i)
                results[i] = scan_segment(segs[i].first, segs[i].second, targets,
                                          opt.floor, counts[i], tables[i]);
        } else {
            for (size_t i = 0; i < segs.size(); ++i)
                results[i] = scan_segment(segs[i].first, segs[i].second, targets,
                                          opt.floor, counts[i], tables[i]);
        }
        for (size_t i = 0; i < segs.size(); ++i) {
            res.primes_seen += counts[i];
            res.tables_built += tables[i];
            for (auto& h : results[i]) res.hits.push_back(std::move(h));
        }
        ++batches_done;
        if (!opt.checkpoint_path.empty() &&
            (batches_done % std::max(opt.checkpoint_interval, 1) == 0 || pos > hi)) {
            write_checkpoint(opt.checkpoint_path, digest, lo, hi, targets, pos, res.hits,
                             res.primes_seen, res.tables_built);
            ++checkpoints_written;
            if (opt.abort_after_checkpoints > 0 &&
                checkpoints_written >= opt.abort_after_checkpoints && pos <= hi) {
                res.next_lo = pos;
                res.complete = false;
                return res;
            }
        }
    }
    res.next_lo = hi + 1;
    res.complete = true;
    return res;
}

}  // namespace

u64 scan_config_digest(u64 lo, u64 hi, const std::vector<ScanTarget>& targets,
                       const ScanOptions& opt) {
    std::string s = std::to_string(lo) + ".." + std::to_string(hi) +
                    "|floor=" + std::to_string(opt.floor);
    for (const auto& t : targets) s += "|" + t.str();
    u64 h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

ScanResult scan(u64 lo, u64 hi, const std::vector<ScanTarget>& targets,
                const ScanOptions& opt) {
    return scan_impl(lo, hi, targets, opt, true);
}

ScanResult scan_serial(u64 lo, u64 hi, const std::vector<ScanTarget>& targets,
                       const ScanOptions& opt) {
    return scan_impl(lo, hi, targets, opt, false);
}

VerifySummary verify_range(u64 lo, u64 hi, const std::vector<std::string>& filter,
                           int n_small, int n_large, int threads, u64 floor) {
    auto primes = primes_in(std::max(lo, floor), hi);
    VerifySummary sum;
    sum.primes = primes.size();
    std::map<std::string, CheckTally> tallies;
    int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nthreads)
    {
        std::map<std::string, CheckTally> local;
        std::vector<CheckReport> local_fail;
#pragma omp for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(primes.size()); ++i) {
            PrimeContext ctx(static_cast<u32>(primes[i]));
            SumCache cache(ctx);
            for (const auto& rep : run_all(cache, filter, n_small, n_large)) {
                auto& t = local[rep.id];
                t.id = rep.id;
                if (rep.vacuous)
                    ++t.vacuous;
                else if (rep.pass)
                    ++t.pass;
                if (rep.fired) ++t.fired;
                if (!rep.pass) {
                    ++t.fail;
                    local_fail.push_back(rep);
                }
            }
        }
#pragma omp critical
        {
            for (auto& [id, t] : local) {
                auto& g = tallies[id];
                g.id = id;
                g.pass += t.pass;
                g.fail += t.fail;
                g.vacuous += t.vacuous;
                g.fired += t.fired;
            }
            sum.failures.insert(sum.failures.end(), local_fail.begin(), local_fail.end());
        }
    }
    for (auto& [id, t] : tallies) sum.tallies.push_back(t);
    std::sort(sum.failures.begin(), sum.failures.end(),
              [](const CheckReport& a, const CheckReport& b) {
                  return std::tie(a.p, a.id, a.params) < std::tie(b.p, b.id, b.params);
              });
    return sum;
}

void write_hits_csv(std::ostream& os, const std::vector<ScanHit>& hits) {
    os << "p,target,value,q2,q3\n";
    for (const auto& h : hits)
        os << h.p << ',' << h.target << ',' << h.value << ',' << h.q2 << ',' << h.q3
           << '\n';
}

void write_hits_jsonl(std::ostream& os, const std::vector<ScanHit>& hits) {
    for (const auto& h : hits) os << hit_to_json(h).dump() << '\n';
}

}  // namespace lerch
