#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace lerch {

using u32 = uint32_t;
using u64 = uint64_t;
using i64 = int64_t;
using u128 = unsigned __int128;

struct NonInvertibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotUnitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadModulusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};
struct DivisibilityError : std::logic_error {
    using std::logic_error::logic_error;
};
struct RangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(u128(a) * b % m);
}

/// b^e mod m by square-and-multiply; e = 0 gives 1.
u64 mod_pow(u64 b, u64 e, u64 m);

/// Modular inverse by extended gcd (works for any modulus, prime or not).
/// Throws NonInvertibleError if gcd(a, m) != 1.
u64 mod_inv(i64 a, u64 m);

/// Simultaneous inversion: one mod_inv plus 3 multiplications per element
/// via the prefix-product trick. Output order matches input order.
std::vector<u64> batch_inverse(std::span<const u64> values, u64 m);

/// Deterministic Miller-Rabin, exact for all n < 2^64.
bool is_prime(u64 n);

/// An odd prime p with its square; the arithmetic substrate for one prime.
/// Immutable after construction and safe to share between threads.
struct PrimeContext {
    u32 p;
    u64 p_squared;

    explicit PrimeContext(u32 prime);
};

/// Fermat quotient q_p(b) = (b^(p-1) - 1)/p mod p, for p not dividing b.
u32 fermat_quotient(u64 b, const PrimeContext& ctx);

/// Legendre symbol (a/p) in {-1, 0, +1} via Euler's criterion.
int legendre(i64 a, const PrimeContext& ctx);

}  // namespace lerch
