#pragma once

#include <cstddef>
#include <map>

#include "lerch/modarith.hpp"

namespace lerch {

/// The vector (s(0,N), ..., s(N-1,N)) mod p for one (p, N), where s(k,N)
/// sums the inverses of j with floor(kp/N) < j <= floor((k+1)p/N), j != p.
struct SumTable {
    u32 p;
    u32 n;
    std::vector<u32> values;
};

/// One pass over j = 1..p-1 with batch inversion. Requires gcd(N, p) = 1.
SumTable sum_table(const PrimeContext& ctx, u32 n);

/// Memoizing evaluator for the whole family of sums at one prime. Tables
/// are built once per distinct N; tables_built() exposes the count so the
/// scanner's work-sharing is observable.
class SumCache {
   public:
    explicit SumCache(const PrimeContext& ctx) : ctx_(ctx) {}

    const PrimeContext& ctx() const { return ctx_; }
    u32 p() const { return ctx_.p; }

    const SumTable& table(u32 n);
    size_t tables_built() const { return tables_built_; }

    /// Fermat quotient q_p(b), memoized.
    u32 q(u64 base);

    u32 s(u32 n, i64 k);

    // Filtered variants, each computed two ways (direct filtered summation
    // and the half/third-table closed form) which must agree.
    u32 s_prime(u32 n, i64 k);   // odd denominators;    == 1/2 * s(N+k, 2N)
    u32 s_dprime(u32 n, i64 k);  // even denominators;   == 1/2 * s(k, 2N)
    u32 s_tprime(u32 n, i64 k);  // denominators % 3 = 0; == 1/3 * s(k, 3N)
    u32 s_star(u32 n, i64 k);    // s''(k,N) - s'(k,N)

    /// Residue-class sum: 1/j over j in [1, p-1] with j = r*p (mod N);
    /// checked against -1/N * s(r-1, N).
    u32 k_sum(u32 n, i64 r);

    /// Sum of b^j / j over the s(k,N) range, b = b_num/b_den mod p.
    u32 b_sum(i64 b_num, i64 b_den, i64 k, u32 n);

   private:
    const PrimeContext& ctx_;
    std::map<u32, SumTable> tables_;
    std::map<u64, u32> quotients_;
    size_t tables_built_ = 0;

    u32 filtered_range_sum(u32 n, i64 k, u32 step_mod, u32 step_res);
};

// Single-shot convenience wrappers over a throwaway SumCache.
u32 s(const PrimeContext& ctx, u32 n, i64 k);
u32 s_prime(const PrimeContext& ctx, u32 n, i64 k);
u32 s_dprime(const PrimeContext& ctx, u32 n, i64 k);
u32 s_tprime(const PrimeContext& ctx, u32 n, i64 k);
u32 s_star(const PrimeContext& ctx, u32 n, i64 k);
u32 k_sum(const PrimeContext& ctx, u32 n, i64 r);
u32 b_sum(const PrimeContext& ctx, i64 b_num, i64 b_den, i64 k, u32 n);

}  // namespace lerch
