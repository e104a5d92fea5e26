#pragma once

#include "lerch/modarith.hpp"

namespace lerch {

/// Parameters of a Lucas sequence U_n(P, Q) with discriminant D = P^2 - 4Q.
struct LucasParams {
    i64 P;
    i64 Q;
    i64 D;

    static constexpr LucasParams fibonacci() { return {1, -1, 5}; }
    static constexpr LucasParams pell() { return {2, -1, 8}; }
    // the sequence 0, 1, 4, 15, 56, ... tied to s(k, 12)
    static constexpr LucasParams u41() { return {4, 1, 12}; }
};

/// U_n(P, Q) mod m by fast doubling. U_0 = 0, U_1 = 1,
/// U_{k+1} = P*U_k - Q*U_{k-1}.
u64 lucas_u(const LucasParams& params, u64 n, u64 m);

/// The scaled quotient w = (D/p) * U_n/p mod p with n = p - (D/p).
/// p | U_n is the rank-of-apparition divisibility; its failure signals a
/// non-prime p or wrong parameters and raises DivisibilityError.
struct LucasQuotient {
    LucasParams params;
    int twist;  // (D/p)
    u32 w;
};

LucasQuotient lucas_quotient(const LucasParams& params, const PrimeContext& ctx);

}  // namespace lerch
