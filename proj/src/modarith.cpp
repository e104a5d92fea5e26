#include "lerch/modarith.hpp"

#include <string>

namespace lerch {

u64 mod_pow(u64 b, u64 e, u64 m) {
    if (m < 2) throw BadModulusError("mod_pow: modulus must be >= 2");
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return r;
}

u64 mod_inv(i64 a, u64 m) {
    if (m < 2) throw BadModulusError("mod_inv: modulus must be >= 2");
    i64 mm = static_cast<i64>(m);
    i64 r = ((a % mm) + mm) % mm;
    i64 old_r = mm;
    i64 t = 1, old_t = 0;
    while (r != 0) {
        i64 q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_t -= q * t;
        std::swap(old_t, t);
    }
    if (old_r != 1)
        throw NonInvertibleError("mod_inv: gcd(" + std::to_string(a) + ", " +
                                 std::to_string(m) + ") = " + std::to_string(old_r));
    return static_cast<u64>(((old_t % mm) + mm) % mm);
}

std::vector<u64> batch_inverse(std::span<const u64> values, u64 m) {
    std::vector<u64> out(values.size());
    if (values.empty()) return out;
    // forward prefix products
    u64 acc = 1;
    for (size_t i = 0; i < values.size(); ++i) {
        u64 v = values[i] % m;
        if (v == 0)
            throw NonInvertibleError("batch_inverse: element " + std::to_string(i) +
                                     " not invertible");
        out[i] = acc;
        acc = mul_mod(acc, v, m);
    }
    u64 inv_acc;
    try {
        inv_acc = mod_inv(static_cast<i64>(acc), m);
    } catch (const NonInvertibleError&) {
        // locate the first offending index for the error message
        for (size_t i = 0; i < values.size(); ++i) {
            try {
                mod_inv(static_cast<i64>(values[i] % m), m);
            } catch (const NonInvertibleError&) {
                throw NonInvertibleError("batch_inverse: element " + std::to_string(i) +
                                         " not invertible");
            }
        }
        throw;
    }
    for (size_t i = values.size(); i-- > 0;) {
        out[i] = mul_mod(out[i], inv_acc, m);
        inv_acc = mul_mod(inv_acc, values[i] % m, m);
    }
    return out;
}

namespace {

bool miller_rabin(u64 n, u64 a) {
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u64 x = mod_pow(a % n, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // witness set valid for all n < 2^64 (Sinclair)
    for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        if (a % n == 0) continue;
        if (!miller_rabin(n, a)) return false;
    }
    return true;
}

PrimeContext::PrimeContext(u32 prime) : p(prime), p_squared(u64(prime) * prime) {
    if (p < 5) throw std::invalid_argument("PrimeContext: p must be >= 5");
    if (!is_prime(p)) throw std::invalid_argument("PrimeContext: " + std::to_string(p) + " is not prime");
}

u32 fermat_quotient(u64 b, const PrimeContext& ctx) {
    b %= ctx.p_squared;
    if (b % ctx.p == 0)
        throw NotUnitError("fermat_quotient: p divides base");
    u64 x = mod_pow(b, ctx.p - 1, ctx.p_squared);
    if (x % ctx.p != 1)
        throw ConsistencyError("fermat_quotient: b^(p-1) != 1 mod p; p not prime?");
    return static_cast<u32>(((x - 1) / ctx.p) % ctx.p);
}

int legendre(i64 a, const PrimeContext& ctx) {
    i64 r = a % static_cast<i64>(ctx.p);
    if (r < 0) r += ctx.p;
    if (r == 0) return 0;
    u64 e = mod_pow(static_cast<u64>(r), (ctx.p - 1) / 2, ctx.p);
    return e == ctx.p - 1 ? -1 : static_cast<int>(e);
}

}  // namespace lerch
