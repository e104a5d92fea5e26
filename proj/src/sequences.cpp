#include "lerch/sequences.hpp"

#include <string>
#include <utility>

namespace lerch {

u64 lucas_u(const LucasParams& params, u64 n, u64 m) {
    if (m < 2) throw BadModulusError("lucas_u: modulus must be >= 2");
    u64 P = static_cast<u64>(((params.P % static_cast<i64>(m)) + static_cast<i64>(m)) % static_cast<i64>(m));
    u64 Q = static_cast<u64>(((params.Q % static_cast<i64>(m)) + static_cast<i64>(m)) % static_cast<i64>(m));
    // (u, v) = (U_k, U_{k+1}), descending through the bits of n:
    //   U_{2k}   = U_k * (2*U_{k+1} - P*U_k)
    //   U_{2k+1} = U_{k+1}^2 - Q*U_k^2
    u64 u = 0, v = 1 % m;
    if (n == 0) return 0;
    int bits = 63;
    while (bits > 0 && !((n >> bits) & 1)) --bits;
    for (int i = bits; i >= 0; --i) {
        u64 t = mul_mod(v, 2, m) + m - mul_mod(P, u, m);
        u64 even = mul_mod(u, t % m, m);                                   // U_{2k}
        u64 odd = (mul_mod(v, v, m) + m - mul_mod(Q, mul_mod(u, u, m), m)) % m;  // U_{2k+1}
        if ((n >> i) & 1) {
            u = odd;
            v = (mul_mod(P, odd, m) + m - mul_mod(Q, even, m)) % m;  // U_{2k+2}
        } else {
            u = even;
            v = odd;
        }
    }
    return u;
}

LucasQuotient lucas_quotient(const LucasParams& params, const PrimeContext& ctx) {
    if ((2 * params.D) % ctx.p == 0)
        throw BadModulusError("lucas_quotient: p divides 2D");
    int e = legendre(params.D, ctx);
    u64 n = e >= 0 ? ctx.p - static_cast<u64>(e) : ctx.p + 1;
    u64 un = lucas_u(params, n, ctx.p_squared);
    if (un % ctx.p != 0)
        throw DivisibilityError("lucas_quotient: p does not divide U_{p-(D/p)} at p=" +
                                std::to_string(ctx.p));
    u64 u = (un / ctx.p) % ctx.p;
    u32 w = static_cast<u32>(e == -1 ? (ctx.p - u) % ctx.p : u);
    return {params, e, w};
}

}  // namespace lerch
