#include "lerch/sums.hpp"

#include <numeric>
#include <string>

namespace lerch {

namespace {

constexpr size_t kBlock = 8192;

i64 norm_index(i64 k, u32 n) {
    i64 r = k % static_cast<i64>(n);
    return r < 0 ? r + n : r;
}

struct Range {
    u64 lo;  // inclusive
    u64 hi;  // inclusive; lo > hi means empty
};

// s(k,N) covers floor(kp/N) < j <= floor((k+1)p/N), truncated at p-1 so the
// formal j = p term of the last bucket never appears.
Range bucket_range(u32 p, u32 n, i64 k) {
    u64 kk = static_cast<u64>(norm_index(k, n));
    u64 lo = kk * p / n + 1;
    u64 hi = std::min((kk + 1) * p / n, static_cast<u64>(p) - 1);
    return {lo, hi};
}

void check_coprime(u32 p, u32 n) {
    if (n == 0 || n % p == 0)
        throw BadModulusError("p divides N (p=" + std::to_string(p) +
                              ", N=" + std::to_string(n) + ")");
}

}  // namespace

SumTable sum_table(const PrimeContext& ctx, u32 n) {
    check_coprime(ctx.p, n);
    SumTable t{ctx.p, n, std::vector<u32>(n, 0)};
    std::vector<u64> block;
    std::vector<u64> sums(n, 0);
    block.reserve(kBlock);
    u64 p = ctx.p;
    for (u64 j = 1; j < p; j += kBlock) {
        u64 end = std::min(j + kBlock, p);
        block.clear();
        for (u64 v = j; v < end; ++v) block.push_back(v);
        auto invs = batch_inverse(block, p);
        for (size_t i = 0; i < block.size(); ++i) {
            u64 k = (block[i] * n - 1) / p;
            sums[k] += invs[i];
        }
        for (auto& sv : sums) sv %= p;
    }
    for (u32 k = 0; k < n; ++k) t.values[k] = static_cast<u32>(sums[k] % p);
    return t;
}

const SumTable& SumCache::table(u32 n) {
    auto it = tables_.find(n);
    if (it == tables_.end()) {
        it = tables_.emplace(n, sum_table(ctx_, n)).first;
        ++tables_built_;
    }
    return it->second;
}

u32 SumCache::q(u64 base) {
    base %= ctx_.p_squared;
    auto it = quotients_.find(base);
    if (it == quotients_.end())
        it = quotients_.emplace(base, fermat_quotient(base, ctx_)).first;
    return it->second;
}

u32 SumCache::s(u32 n, i64 k) {
    check_coprime(ctx_.p, n);
    return table(n).values[norm_index(k, n)];
}

u32 SumCache::filtered_range_sum(u32 n, i64 k, u32 step_mod, u32 step_res) {
    auto [lo, hi] = bucket_range(ctx_.p, n, k);
    std::vector<u64> terms;
    for (u64 j = lo; j <= hi; ++j)
        if (j % step_mod == step_res) terms.push_back(j);
    u64 acc = 0;
    for (size_t i = 0; i < terms.size(); i += kBlock) {
        size_t end = std::min(i + kBlock, terms.size());
        auto invs = batch_inverse(std::span(terms).subspan(i, end - i), ctx_.p);
        for (u64 v : invs) acc += v;
        acc %= ctx_.p;
    }
    return static_cast<u32>(acc);
}

namespace {

u32 agree(u32 direct, u32 closed, const char* what) {
    if (direct != closed)
        throw ConsistencyError(std::string(what) + ": filtered sum and closed form disagree");
    return direct;
}

}  // namespace

u32 SumCache::s_prime(u32 n, i64 k) {
    check_coprime(ctx_.p, n);
    u32 direct = filtered_range_sum(n, k, 2, 1);
    u64 half = mod_inv(2, ctx_.p);
    u32 closed = static_cast<u32>(half * s(2 * n, static_cast<i64>(n) + k) % ctx_.p);
    return agree(direct, closed, "s_prime");
}

u32 SumCache::s_dprime(u32 n, i64 k) {
    check_coprime(ctx_.p, n);
    u32 direct = filtered_range_sum(n, k, 2, 0);
    u64 half = mod_inv(2, ctx_.p);
    u32 closed = static_cast<u32>(half * s(2 * n, k) % ctx_.p);
    return agree(direct, closed, "s_dprime");
}

u32 SumCache::s_tprime(u32 n, i64 k) {
    check_coprime(ctx_.p, n);
    check_coprime(ctx_.p, 3);
    u32 direct = filtered_range_sum(n, k, 3, 0);
    u64 third = mod_inv(3, ctx_.p);
    u32 closed = static_cast<u32>(third * s(3 * n, k) % ctx_.p);
    return agree(direct, closed, "s_tprime");
}

u32 SumCache::s_star(u32 n, i64 k) {
    u32 a = s_dprime(n, k);
    u32 b = s_prime(n, k);
    return static_cast<u32>((static_cast<u64>(a) + ctx_.p - b) % ctx_.p);
}

u32 SumCache::k_sum(u32 n, i64 r) {
    check_coprime(ctx_.p, n);
    i64 rr = norm_index(r, n);
    u32 c = static_cast<u32>(static_cast<u64>(rr) * ctx_.p % n);
    std::vector<u64> terms;
    for (u64 j = c == 0 ? n : c; j < ctx_.p; j += n) terms.push_back(j);
    u64 acc = 0;
    for (size_t i = 0; i < terms.size(); i += kBlock) {
        size_t end = std::min(i + kBlock, terms.size());
        auto invs = batch_inverse(std::span(terms).subspan(i, end - i), ctx_.p);
        for (u64 v : invs) acc += v;
        acc %= ctx_.p;
    }
    u32 direct = static_cast<u32>(acc);
    u64 ninv = mod_inv(n, ctx_.p);
    u32 closed = static_cast<u32>((ctx_.p - mul_mod(ninv, s(n, rr - 1), ctx_.p)) % ctx_.p);
    return agree(direct, closed, "k_sum");
}

u32 SumCache::b_sum(i64 b_num, i64 b_den, i64 k, u32 n) {
    check_coprime(ctx_.p, n);
    u64 p = ctx_.p;
    i64 bn = ((b_num % static_cast<i64>(p)) + p) % static_cast<i64>(p);
    if (bn == 0) throw NotUnitError("b_sum: p divides numerator of b");
    u64 b = mul_mod(static_cast<u64>(bn), mod_inv(b_den, p), p);
    auto [lo, hi] = bucket_range(ctx_.p, n, k);
    if (lo > hi) return 0;
    std::vector<u64> terms;
    for (u64 j = lo; j <= hi; ++j) terms.push_back(j);
    u64 acc = 0;
    u64 pw = mod_pow(b, lo, p);
    size_t idx = 0;
    for (size_t i = 0; i < terms.size(); i += kBlock) {
        size_t end = std::min(i + kBlock, terms.size());
        auto invs = batch_inverse(std::span(terms).subspan(i, end - i), p);
        for (u64 v : invs) {
            acc += mul_mod(pw, v, p);
            pw = mul_mod(pw, b, p);
            ++idx;
        }
        acc %= p;
    }
    return static_cast<u32>(acc);
}

u32 s(const PrimeContext& ctx, u32 n, i64 k) {
    SumCache c(ctx);
    return c.s(n, k);
}
u32 s_prime(const PrimeContext& ctx, u32 n, i64 k) {
    SumCache c(ctx);
    return c.s_prime(n, k);
}
u32 s_dprime(const PrimeContext& ctx, u32 n, i64 k) {
    SumCache c(ctx);
    return c.s_dprime(n, k);
}
u32 s_tprime(const PrimeContext& ctx, u32 n, i64 k) {
    SumCache c(ctx);
    return c.s_tprime(n, k);
}
u32 s_star(const PrimeContext& ctx, u32 n, i64 k) {
    SumCache c(ctx);
    return c.s_star(n, k);
}
u32 k_sum(const PrimeContext& ctx, u32 n, i64 r) {
    SumCache c(ctx);
    return c.k_sum(n, r);
}
u32 b_sum(const PrimeContext& ctx, i64 b_num, i64 b_den, i64 k, u32 n) {
    SumCache c(ctx);
    return c.b_sum(b_num, b_den, k, n);
}

}  // namespace lerch
