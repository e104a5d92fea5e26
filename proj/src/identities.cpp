#include "lerch/identities.hpp"

#include <algorithm>
#include <map>

#include "lerch/sequences.hpp"

namespace lerch {

std::string CheckParams::label() const {
    std::string out;
    auto put = [&](const char* name, int v) {
        if (v == 0) return;
        if (!out.empty()) out += ',';
        out += name;
        out += '=';
        out += std::to_string(v);
    };
    put("N", n);
    put("M", m);
    put("a", a);
    put("b", b);
    return out;
}

namespace {

using Params = std::vector<CheckParams>;

i64 redp(i64 x, u32 p) {
    x %= p;
    return x < 0 ? x + p : x;
}

// Evaluation scratch: s/q accessors in the classical argument order s(k, N),
// rational coefficients as num/den mod p, and residual collection.
struct Ev {
    SumCache& c;
    CheckReport& rep;
    u32 p;

    Ev(SumCache& cache, CheckReport& r) : c(cache), rep(r), p(cache.p()) {}

    i64 s(i64 k, u32 n) { return c.s(n, k); }
    i64 q(i64 b) { return c.q(static_cast<u64>(b)); }
    i64 rat(i64 num, i64 den) {
        return static_cast<i64>(mul_mod(static_cast<u64>(redp(num, p)),
                                        mod_inv(den, p), p));
    }
    void row(i64 residual) {
        u32 r = static_cast<u32>(redp(residual, p));
        rep.residuals.push_back(r);
        if (r != 0) rep.pass = false;
    }
};

Params fixed(int, int) { return {CheckParams{}}; }

std::function<Params(int, int)> each_n(int lo, int step, bool large = false) {
    return [lo, step, large](int n_small, int n_large) {
        Params out;
        for (int n = lo; n <= (large ? n_large : n_small); n += step)
            out.push_back({.n = n});
        return out;
    };
}

bool coprime_n(const PrimeContext& ctx, const CheckParams& pr) {
    return pr.n >= 1 && pr.n % ctx.p != 0;
}
bool always(const PrimeContext&, const CheckParams&) { return true; }

// raw progression sum: 1/j over j <= limit with j = res (mod step)
u32 raw_progression(const PrimeContext& ctx, u64 limit, u32 step, u32 res) {
    std::vector<u64> terms;
    for (u64 j = res == 0 ? step : res; j <= limit; j += step) terms.push_back(j);
    if (terms.empty()) return 0;
    auto invs = batch_inverse(terms, ctx.p);
    u64 acc = 0;
    for (size_t i = 0; i < invs.size(); ++i) {
        acc += invs[i];
        if ((i & 1023) == 1023) acc %= ctx.p;
    }
    return static_cast<u32>(acc % ctx.p);
}

std::vector<IdentityCheck> build_registry() {
    std::vector<IdentityCheck> reg;
    auto add = [&](IdentityCheck chk) { reg.push_back(std::move(chk)); };

    add({"lerch_main", "Lerch (1905): N*q_p(N) = sum k*s(k,N)", false,
         each_n(2, 1),
         coprime_n,
         [](SumCache& c, const CheckParams& pr, CheckReport& rep) {
             Ev e(c, rep);
             int N = pr.n;
             i64 acc = N * e.q(N);
             for (int k = 1; k < N; ++k) acc -= i64(k) * e.s(k, N);
             e.row(acc);
         }});

    add({"lerch_split", "Lerch (1905), half-range form with weights N-1, N-3, ...", false,
         each_n(2, 1),
         coprime_n,
         [](SumCache& c, const CheckParams& pr, CheckReport& rep) {
             Ev e(c, rep);
             int N = pr.n;
             i64 acc = N * e.q(N);
             for (int i = 0; i < N / 2; ++i) acc += i64(N - 1 - 2 * i) * e.s(i, N);
             e.row(acc);
         }});

    add({"mirror", "reflection j -> p-j: s(k,N) = -s(N-1-k,N)", false,
         each_n(1, 1),
         coprime_n,
         [](SumCache& c, const CheckParams& pr, CheckReport& rep) {
             Ev e(c, rep);
             int N = pr.n;
             for (int k = 0; k < N; ++k) e.row(e.s(k, N) + e.s(N - 1 - k, N));
         }});

    add({"log_property", "Eisenstein: q(ab) = q(a) + q(b)", false,
         [](int, int) {
             Params out;
             for (auto [a, b] : {std::pair{2, 3}, {2, 5}, {3, 5}, {2, 2}, {3, 3}, {2, 7}, {5, 7}})
                 out.push_back({.a = a, .b = b});
             return out;
         },
         [](const PrimeContext& ctx, const CheckParams& pr) {
             return (pr.a * pr.b) % static_cast<int>(ctx.p) != 0;
         },
         [](SumCache& c, const CheckParams& pr, CheckReport& rep) {
             Ev e(c, rep);
             e.row(e.q(i64(pr.a) * pr.b) - e.q(pr.a) - e.q(pr.b));
         }});

    add({"table1", "classical evaluations (Glaisher 1901; Lerch 1905; Lehmer 1938; Granville & Sun 1996)",
         false, fixed, always,
         [](SumCache& c, const CheckParams&, CheckReport& rep) {
             Ev e(c, rep);
             i64 q2 = e.q(2), q3 = e.q(3), h3 = e.rat(3, 2);
             e.row(e.s(0, 1));
             e.row(e.s(0, 2) + 2 * q2);
             e.row(e.s(0, 3) + mul_mod(h3, q3, e.p));
             e.row(e.s(1, 3));
             e.row(e.s(0, 4) + 3 * q2);
             e.row(e.s(1, 4) - q2);
             e.row(e.s(0, 6) + 2 * q2 + mul_mod(h3, q3, e.p));
             e.row(e.s(1, 6) - 2 * q2);
             e.row(e.s(2, 6) + 2 * q2 - mul_mod(h3, q3, e.p));
             e.row(e.s(2, 12) + q2 - mul_mod(h3, q3, e.p));
             e.row(e.s(3, 12) - 3 * q2 + mul_mod(h3, q3, e.p));
         }});

    add({"theorem1", "composite-order collection: row sums over a proper divisor M of N", false,
         [](int, int n_large) {
             Params out;
             for (int n = 4; n <= n_large; ++n)
                 for (int m = 2; m < n; ++m)
                     if (n % m == 0) out.push_back({.n = n, .m = m});
             return out;
         },
         coprime_n,
         [](SumCache& c, const CheckParams& pr, CheckReport& rep) {
             Ev e(c, rep);
             int N = pr.n, M = pr.m;
             int rows = N / M;
             for (int r = 0; r < rows; ++r) {
                 i64 left = 0, mid = 0;
                 for (int t = 0; t < M; ++t) left += e.s(i64(t) * rows + r, N);
                 for (int i = 0; i < M; ++i) mid += e.s(i64(r) * M + i, N);
                 mid *= M;
                 e.row(left - mid);
                 e.row(mid - i64(M) * e.s(r, N / M));
             }
         }});

    add({"corollary1", "s(0,2x) + 2s(1,2x) + s(x-1,2x) = 0", false,
         each_n(1, 1),
         [](const PrimeContext& ctx, const CheckParams& pr) {
             return pr.n >= 1 && (2 * pr.n) % static_cast<int>(ctx.p) != 0;
         },
         [](SumCache& c, const CheckParams& pr, CheckReport& rep) {
             Ev e(c, rep);
             int x = pr.n;
             e.row(e.s(0, 2 * x) + 2 * e.s(1, 2 * x) + e.s(x - 1, 2 * x));
         }});

    add({"cor1_even_x", "s(0,2x) + s(x-2,2x) = 2s(0,x) + s(x/2-1,x), x even", false,
         each_n(2, 2),
         [](const PrimeContext& ctx, const CheckParams& pr) {
             return pr.n % 2 == 0 && (2 * pr.n) % static_cast<int>(ctx.p) != 0;
         },
         [](SumCache& c, const CheckParams& pr, CheckReport& rep) {
             Ev e(c, rep);
             int x = pr.n;
             e.row(e.s(0, 2 * x) + e.s(x - 2, 2 * x) - 2 * e.s(0, x) - e.s(x / 2 - 1, x));
         }});

    add({"cor1_sub", "s(1,2x) + s(x-1,2x) = -s(0,x)", false,
         each_n(1, 1),
         [](const PrimeContext& ctx, const CheckParams& pr) {
             return pr.n >= 1 && (2 * pr.n) % static_cast<int>(ctx.p) != 0;
         },
         [](SumCache& c, const CheckParams& pr, CheckReport& rep) {
             Ev e(c, rep);
             int x = pr.n;
             e.row(e.s(1, 2 * x) + e.s(x - 1, 2 * x) + e.s(0, x));
         }});

    add({"sstar_rule", "s*(0,x) = -s(1,2x)", false,
         each_n(1, 1),
         [](const PrimeContext& ctx, const CheckParams& pr) {
             return pr.n >= 1 && (2 * pr.n) % static_cast<int>(ctx.p) != 0;
         },
         [](SumCache& c, const CheckParams& pr, CheckReport& rep) {
             Ev e(c, rep);
             int x = pr.n;
             e.row(i64(c.s_star(x, 0)) + e.s(1, 2 * x));
         }});

    add({"corollary2", "s*(0,x) + s*(1,x) = -s(1,x) (cf. Z.-H. Sun 1992)", false,
         each_n(2, 1),
         [](const PrimeContext& ctx, const CheckParams& pr) {
             return pr.n >= 2 && (2 * pr.n) % static_cast<int>(ctx.p) != 0;
         },
         [](SumCache& c, const CheckParams& pr, CheckReport& rep) {
             Ev e(c, rep);
             int x = pr.n;
             e.row(i64(c.s_star(x, 0)) + c.s_star(x, 1) + e.s(1, x));
         }});

    add({"corollary3", "even/odd index halves sum to -N*q2 / +N*q2", false,
         each_n(2, 2),
         coprime_n,
         [](SumCache& c, const CheckParams& pr, CheckReport& rep) {
             Ev e(c, rep);
             int N = pr.n;
             i64 q2 = e.q(2), ev = 0, od = 0, lo = 0, hi = 0;
             for (int k = 0; k < N; k += 2) ev += e.s(k, N);
             for (int k = 1; k < N; k += 2) od += e.s(k, N);
             for (int k = 0; k < N / 2; ++k) lo += e.s(k, N);
             for (int k = N / 2; k < N; ++k) hi += e.s(k, N);
             e.row(ev - (N / 2) * lo);
             e.row(ev + i64(N) * q2);
             e.row(od - (N / 2) * hi);
             e.row(od - i64(N) * q2);
         }});

    add({"m3_rows", "M=3 rows: s(0,3x)+s(x,3x)+s(2x,3x) = 3s(0,x), and r=1", false,
         each_n(1, 1),
         [](const PrimeContext& ctx, const CheckParams& pr) {
             return pr.n >= 1 && (3 * pr.n) % static_cast<int>(ctx.p) != 0;
         },
         [](SumCache& c, const CheckParams& pr, CheckReport& rep) {
             Ev e(c, rep);
             int x = pr.n, N = 3 * x;
             i64 left = e.s(0, N) + e.s(x, N) + e.s(2 * x, N);
             i64 mid = 3 * (e.s(0, N) + e.s(1, N) + e.s(2, N));
             e.row(left - mid);
             e.row(mid - 3 * e.s(0, x));
             if (x >= 2) {
                 i64 l1 = e.s(1, N) + e.s(x + 1, N) + e.s(2 * x + 1, N);
                 i64 m1 = 3 * (e.s(3, N) + e.s(4, N) + e.s(5, N));
                 e.row(l1 - m1);
                 e.row(m1 - 3 * e.s(1, x));
             }
         }});

    add({"corollary4", "index classes mod 3 sum to -(N/2)q3, 0, +(N/2)q3", false,
         each_n(3, 3),
         [](const PrimeContext& ctx, const CheckParams& pr) {
             return pr.n % 3 == 0 && (3 * pr.n) % static_cast<int>(ctx.p) != 0;
         },
         [](SumCache& c, const CheckParams& pr, CheckReport& rep) {
             Ev e(c, rep);
             int N = pr.n;
             i64 q3 = e.q(3), half_n = e.rat(N, 2);
             i64 rhs[3] = {-i64(mul_mod(half_n, q3, e.p)), 0, i64(mul_mod(half_n, q3, e.p))};
             for (int t = 0; t < 3; ++t) {
                 i64 cls = 0, blk = 0;
                 for (int k = t; k < N; k += 3) cls += e.s(k, N);
                 for (int k = t * (N / 3); k < (t + 1) * (N / 3); ++k) blk += e.s(k, N);
                 e.row(cls - (N / 3) * blk);
                 e.row(cls - rhs[t]);
             }
         }});

    // Residue-class harmonic sums with their quotient evaluations.
    auto k_group = [](u32 N, std::function<std::vector<i64>(Ev&)> rhs_fn) {
        return [N, rhs_fn](SumCache& c, const CheckParams&, CheckReport& rep) {
            Ev e(c, rep);
            auto rhs = rhs_fn(e);
            for (u32 r = 0; r < N; ++r) {
                i64 K = c.k_sum(N, r);
                i64 link = mul_mod(mod_inv(N, e.p), c.s(N, i64(N) - r), e.p);
                e.row(K - link);
                e.row(K - rhs[r]);
            }
        };
    };
    add({"k_mod3", "K(r,3) values (Glaisher 1901; Lerch 1905)", false, fixed, always,
         k_group(3, [](Ev& e) {
             i64 q3 = e.q(3), h = e.rat(1, 2);
             return std::vector<i64>{-i64(mul_mod(h, q3, e.p)), i64(mul_mod(h, q3, e.p)), 0};
         })});
    add({"k_mod4", "K(r,4) values (Stern; Glaisher 1901)", false, fixed, always,
         k_group(4, [](Ev& e) {
             i64 q2 = e.q(2), q = e.rat(1, 4), t = e.rat(3, 4);
             return std::vector<i64>{-i64(mul_mod(t, q2, e.p)), i64(mul_mod(t, q2, e.p)),
                                     -i64(mul_mod(q, q2, e.p)), i64(mul_mod(q, q2, e.p))};
         })});
    add({"k_mod6", "K(r,6) values (Lehmer 1938)", false, fixed, always,
         k_group(6, [](Ev& e) {
             i64 a = mul_mod(e.rat(1, 3), e.q(2), e.p);  // q2/3
             i64 b = mul_mod(e.rat(1, 4), e.q(3), e.p);  // q3/4
             auto r = [&](i64 x) { return redp(x, e.p); };
             return std::vector<i64>{r(-a - b), r(a + b), r(-a), r(a - b), r(-a + b), r(a)};
         })});

    add({"half_range_mod3", "first-half progressions mod 3 (Lehmer 1938; Z.-H. Sun 1992)", false,
         fixed, always,
         [](SumCache& c, const CheckParams&, CheckReport& rep) {
             Ev e(c, rep);
             u64 half = (e.p - 1) / 2;
             i64 third = e.rat(1, 3);
             // s(.,6) index for the progression class c mod 3, by p mod 6
             int cls_to_k[3];
             if (e.p % 6 == 1) {
                 cls_to_k[1] = 4;
                 cls_to_k[2] = 2;
                 cls_to_k[0] = 0;
             } else {
                 cls_to_k[1] = 2;
                 cls_to_k[2] = 4;
                 cls_to_k[0] = 0;
             }
             i64 q2 = e.q(2), q3 = e.q(3);
             i64 two_thirds = e.rat(2, 3), h = e.rat(1, 2);
             i64 tq = i64(mul_mod(two_thirds, q2, e.p)), hq = i64(mul_mod(h, q3, e.p));
             std::map<int, i64> quot = {{4, redp(-tq, e.p)},
                                        {2, redp(-tq + hq, e.p)},
                                        {0, redp(-tq - hq, e.p)}};
             for (int cls : {1, 2, 0}) {
                 i64 raw = raw_progression(c.ctx(), half, 3, cls);
                 i64 k6 = cls_to_k[cls];
                 e.row(raw - mul_mod(third, e.s(k6, 6), e.p));
                 e.row(raw - quot[k6]);
             }
         }});

    add({"theorem2", "parity halves below N/2 (Skula 2008 for the odd row)", false,
         each_n(2, 2, /*large=*/true),
         coprime_n,
         [](SumCache& c, const CheckParams& pr, CheckReport& rep) {
             Ev e(c, rep);
             int N = pr.n;
             i64 q2 = e.q(2), a = 0, b = 0;
             for (int k = 0; k < N / 2; k += 2) a += e.s(k, N);
             for (int k = 1; k < N / 2; k += 2) b += e.s(k, N);
             e.row(a + mul_mod(e.rat(N + 2, 2), q2, e.p));
             e.row(b - mul_mod(e.rat(N - 2, 2), q2, e.p));
         }});

    add({"skula_tree", "dovetailed even-index rows: both columns = -(m+1)*q2", false,
         [](int n_small, int) {
             Params out;
             for (int m = 1; 2 * m + 4 <= n_small; ++m) out.push_back({.m = m});
             return out;
         },
         [](const PrimeContext& ctx, const CheckParams& pr) {
             int p = static_cast<int>(ctx.p);
             return (2 * pr.m) % p != 0 && (2 * pr.m + 4) % p != 0;
         },
         [](SumCache& c, const CheckParams& pr, CheckReport& rep) {
             Ev e(c, rep);
             int m = pr.m, nl = 2 * m, nr = 2 * m + 4;
             i64 rhs = -i64(m + 1) * e.q(2);
             i64 left = 0, right = 0;
             for (int k = 0; k < m; k += 2) left += e.s(k, nl);
             // the right column dovetails: even k with m+1 < k < 2m+4
             for (int k = m % 2 ? m + 3 : m + 2; k < nr; k += 2) right += e.s(k, nr);
             e.row(left - rhs);
             e.row(right - rhs);
         }});

    add({"glaisher_half", "s'(0,2) = -q2/2, s''(0,2) = -3q2/2 (Glaisher 1901)", false,
         fixed, always,
         [](SumCache& c, const CheckParams&, CheckReport& rep) {
             Ev e(c, rep);
             i64 q2 = e.q(2);
             i64 sp = c.s_prime(2, 0), sdp = c.s_dprime(2, 0);
             e.row(sp - mul_mod(e.rat(1, 4), e.s(0, 2), e.p));
             e.row(sp + mul_mod(e.rat(1, 2), q2, e.p));
             e.row(sdp - mul_mod(e.rat(3, 4), e.s(0, 2), e.p));
             e.row(sdp + mul_mod(e.rat(3, 2), q2, e.p));
         }});

    add({"table2_pell", "s(k,8) via the Pell quotient U_{p-(2/p)}(2,-1)/p (Williams 1991)", false,
         fixed, always,
         [](SumCache& c, const CheckParams&, CheckReport& rep) {
             Ev e(c, rep);
             auto lq = lucas_quotient(LucasParams::pell(), c.ctx());
             // the tabulated coefficient is the bare quotient U_n/p
             i64 u = redp(i64(lq.twist) * lq.w, e.p);
             i64 q2 = e.q(2);
             e.row(e.s(0, 8) + 4 * q2 + 2 * u);
             e.row(e.s(1, 8) - q2 - 2 * u);
             e.row(e.s(2, 8) + q2 - 2 * u);
             e.row(e.s(3, 8) - 2 * q2 + 2 * u);
         }});

    add({"table3_lucas", "s(k,12) via (3/p)*U_{p-(3/p)}(4,1)/p (Williams 1991)", false,
         fixed, always,
         [](SumCache& c, const CheckParams&, CheckReport& rep) {
             Ev e(c, rep);
             auto lq = lucas_quotient(LucasParams::u41(), c.ctx());
             i64 v = lq.w;
             i64 q2 = e.q(2), q3 = e.q(3);
             i64 h3 = mul_mod(e.rat(3, 2), q3, e.p);
             e.row(e.s(0, 12) + 3 * q2 + h3 + 3 * v);
             e.row(e.s(1, 12) - q2 - 3 * v);
             e.row(e.s(2, 12) + q2 - h3);
             e.row(e.s(3, 12) - 3 * q2 + h3);
             e.row(e.s(4, 12) + 3 * q2 - 3 * v);
             e.row(e.s(5, 12) - q2 - h3 + 3 * v);
         }});

    add({"n8_conditional", "q2 = 0 iff s(0,8) = -s(1,8) = -s(2,8) = s(3,8)", true,
         fixed, always,
         [](SumCache& c, const CheckParams&, CheckReport& rep) {
             Ev e(c, rep);
             if (e.q(2) != 0) {
                 rep.vacuous = true;
                 return;
             }
             rep.fired = true;
             e.row(e.s(0, 8) + e.s(1, 8));
             e.row(e.s(1, 8) - e.s(2, 8));
             e.row(e.s(2, 8) + e.s(3, 8));
         }});

    add({"n16_relations", "N=16 collection rows; 2s(0,16)+3s(1,16)+s(9,16)=0 when q2=0", true,
         fixed, always,
         [](SumCache& c, const CheckParams&, CheckReport& rep) {
             Ev e(c, rep);
             e.row(e.s(0, 16) + e.s(4, 16) + e.s(8, 16) + e.s(12, 16) - 4 * e.s(0, 4));
             i64 mid0 = 2 * (e.s(0, 16) + e.s(1, 16));
             e.row(e.s(0, 16) + e.s(8, 16) - mid0);
             e.row(mid0 - 2 * e.s(0, 8));
             i64 mid1 = 2 * (e.s(2, 16) + e.s(3, 16));
             e.row(e.s(1, 16) + e.s(9, 16) - mid1);
             e.row(mid1 - 2 * e.s(1, 8));
             e.row(e.s(0, 16) + 2 * e.s(1, 16) - e.s(8, 16));
             if (e.q(2) == 0) {
                 rep.fired = true;
                 e.row(2 * e.s(0, 16) + 3 * e.s(1, 16) + e.s(9, 16));
             }
         }});

    add({"n12_rows", "N=12 M=2 rows; s(1,12)-s(4,12) = 4*q2", false,
         fixed, always,
         [](SumCache& c, const CheckParams&, CheckReport& rep) {
             Ev e(c, rep);
             i64 q2 = e.q(2), q3 = e.q(3);
             i64 mid0 = 2 * (e.s(0, 12) + e.s(1, 12));
             e.row(e.s(0, 12) + e.s(6, 12) - mid0);
             e.row(mid0 - 2 * e.s(0, 6));
             e.row(2 * e.s(0, 6) + 4 * q2 + 3 * q3);
             i64 mid1 = 2 * (e.s(2, 12) + e.s(3, 12));
             e.row(e.s(1, 12) + e.s(7, 12) - mid1);
             e.row(mid1 - 2 * e.s(1, 6));
             e.row(2 * e.s(1, 6) - 4 * q2);
             e.row(e.s(1, 12) - e.s(4, 12) - 4 * q2);
         }});

    add({"n24_subtractions", "s(k,24) by subtraction for k = 2,3,8,9 (Z.-W. Sun 2006)", false,
         fixed, always,
         [](SumCache& c, const CheckParams&, CheckReport& rep) {
             Ev e(c, rep);
             e.row(e.s(2, 24) - e.s(0, 8) + e.s(0, 12));
             e.row(e.s(2, 24) - e.s(1, 12) - e.s(2, 12) + e.s(1, 8));
             e.row(e.s(3, 24) - e.s(0, 6) + e.s(0, 8));
             e.row(e.s(3, 24) - e.s(1, 8) + e.s(2, 12));
             e.row(e.s(8, 24) - e.s(2, 6) + e.s(3, 8));
             e.row(e.s(8, 24) - e.s(2, 8) + e.s(3, 12));
             e.row(e.s(9, 24) - e.s(3, 8) + e.s(5, 12));
             e.row(e.s(9, 24) - e.s(3, 12) - e.s(4, 12) + e.s(2, 8));
         }});

    add({"n24_m2_rows", "N=24 M=2 third and fourth rows", false,
         fixed, always,
         [](SumCache& c, const CheckParams&, CheckReport& rep) {
             Ev e(c, rep);
             i64 mid2 = 2 * (e.s(4, 24) + e.s(5, 24));
             e.row(e.s(2, 24) + e.s(14, 24) - mid2);
             e.row(mid2 - 2 * e.s(2, 12));
             i64 mid3 = 2 * (e.s(6, 24) + e.s(7, 24));
             e.row(e.s(3, 24) + e.s(15, 24) - mid3);
             e.row(mid3 - 2 * e.s(3, 12));
         }});

    add({"n9_relation", "2s(0,9) + 3s(1,9) + 4s(2,9) - s(3,9) = 0", false,
         fixed, always,
         [](SumCache& c, const CheckParams&, CheckReport& rep) {
             Ev e(c, rep);
             e.row(2 * e.s(0, 9) + 3 * e.s(1, 9) + 4 * e.s(2, 9) - e.s(3, 9));
         }});

    add({"n18_relations", "N=18: three-term relation plus parity-half sums", false,
         fixed, always,
         [](SumCache& c, const CheckParams&, CheckReport& rep) {
             Ev e(c, rep);
             i64 q2 = e.q(2);
             e.row(e.s(0, 18) + 2 * e.s(1, 18) + e.s(8, 18));
             e.row(e.s(1, 18) + e.s(7, 18) + e.s(13, 18) - 6 * q2);
             i64 ev = 0, od = 0;
             for (int k = 0; k < 9; k += 2) ev += e.s(k, 18);
             for (int k = 1; k < 9; k += 2) od += e.s(k, 18);
             e.row(ev + 10 * q2);
             e.row(od - 8 * q2);
         }});

    add({"n5_conditional", "consequences of q5 = 0 for s(k,5) and s(k,10)", true,
         fixed,
         [](const PrimeContext& ctx, const CheckParams&) { return ctx.p != 5; },
         [](SumCache& c, const CheckParams&, CheckReport& rep) {
             Ev e(c, rep);
             bool q5_zero = e.q(5) == 0;
             bool q2_zero = e.q(2) == 0;
             if (!q5_zero) {
                 rep.vacuous = true;
                 return;
             }
             rep.fired = true;
             e.row(-2 * e.s(0, 5) - e.s(1, 5));
             // the s(k,5) <-> s(k,10) matches additionally need q2 = 0:
             // s(0,5) - s(4,10) = 2q2 - (5/2)q5 identically.
             if (q2_zero) {
                 e.row(e.s(0, 5) - e.s(4, 10));
                 e.row(e.s(1, 5) - e.s(1, 10));
                 e.row(e.s(1, 10) + e.s(3, 10));
             }
         }});

    add({"n10_relations", "N=10 relations (Skula 2008); s(1,10)+s(3,10) = 4*q2", true,
         fixed,
         [](const PrimeContext& ctx, const CheckParams&) { return ctx.p != 5; },
         [](SumCache& c, const CheckParams&, CheckReport& rep) {
             Ev e(c, rep);
             i64 q2 = e.q(2);
             e.row(e.s(0, 10) + 2 * e.s(1, 10) + e.s(4, 10));
             e.row(2 * e.s(0, 10) + 3 * e.s(1, 10) + 2 * e.s(2, 10) + 3 * e.s(3, 10) +
                   2 * e.s(4, 10));
             e.row(e.s(1, 10) + e.s(3, 10) + e.s(0, 6) + e.s(2, 6));
             e.row(e.s(1, 10) + e.s(3, 10) - 4 * q2);
             if (q2 == 0) {
                 rep.fired = true;
                 e.row(e.s(1, 10) + e.s(3, 10));
                 e.row(e.s(0, 10) + e.s(2, 10) + e.s(4, 10));
                 if (e.q(5) == 0) {
                     i64 chain[5] = {4 * e.s(0, 10), -6 * e.s(1, 10), -3 * e.s(2, 10),
                                     6 * e.s(3, 10), 12 * e.s(4, 10)};
                     for (int i = 0; i + 1 < 5; ++i) e.row(chain[i] - chain[i + 1]);
                 }
             }
         }});

    add({"dilcher_skula_sum", "sum of the two parity halves is s(0,2) = -2*q2", false,
         each_n(2, 2),
         coprime_n,
         [](SumCache& c, const CheckParams& pr, CheckReport& rep) {
             Ev e(c, rep);
             int N = pr.n;
             i64 acc = 0;
             for (int k = 0; k < N / 2; ++k) acc += e.s(k, N);
             e.row(acc - e.s(0, 2));
             e.row(e.s(0, 2) + 2 * e.q(2));
         }});

    add({"b_sum_checks", "B(1/2,0,1)=q2 (Bachmann 1912); B(2,0,1)=-2q2; B(1/2,0,2)=-s(2,8)", false,
         fixed, always,
         [](SumCache& c, const CheckParams&, CheckReport& rep) {
             Ev e(c, rep);
             i64 q2 = e.q(2);
             e.row(i64(c.b_sum(1, 2, 0, 1)) - q2);
             e.row(i64(c.b_sum(2, 1, 0, 1)) + 2 * q2);
             e.row(i64(c.b_sum(1, 2, 0, 2)) + e.s(2, 8));
             e.row(i64(c.b_sum(1, 2, 0, 1)) - 4 * i64(c.k_sum(4, -1)));
         }});

    add({"lerch_diff", "N*q(N) - N*q(N/2) = N*q2 = -sum of even-index s(k,N)", false,
         each_n(2, 2),
         coprime_n,
         [](SumCache& c, const CheckParams& pr, CheckReport& rep) {
             Ev e(c, rep);
             int N = pr.n;
             i64 q2 = e.q(2);
             i64 left = i64(N) * e.q(N) - i64(N) * e.q(std::max(N / 2, 1));
             e.row(left - i64(N) * q2);
             i64 ev = 0;
             for (int k = 0; k < N; k += 2) ev += e.s(k, N);
             e.row(i64(N) * q2 + ev);
         }});

    add({"frobenius_chain", "q2 = q3 = 0 implies s(0,12) = -s(1,12) = -s(4,12) = s(5,12) (Frobenius 1914)",
         true, fixed, always,
         [](SumCache& c, const CheckParams&, CheckReport& rep) {
             Ev e(c, rep);
             if (e.q(2) != 0 || e.q(3) != 0) {
                 rep.vacuous = true;
                 return;
             }
             rep.fired = true;
             e.row(e.s(0, 12) + e.s(1, 12));
             e.row(e.s(1, 12) - e.s(4, 12));
             e.row(e.s(4, 12) + e.s(5, 12));
         }});

    return reg;
}

}  // namespace

const std::vector<IdentityCheck>& registry() {
    static const std::vector<IdentityCheck> reg = build_registry();
    return reg;
}

const IdentityCheck* find_check(const std::string& id) {
    for (const auto& chk : registry())
        if (chk.id == id) return &chk;
    return nullptr;
}

CheckReport run_check(const std::string& id, SumCache& cache, const CheckParams& params) {
    const IdentityCheck* chk = find_check(id);
    if (!chk) throw UnknownCheckError("unknown check id: " + id);
    if (!chk->applicable(cache.ctx(), params))
        throw NotApplicableError("check " + id + " not applicable at p=" +
                                 std::to_string(cache.p()) +
                                 (params.label().empty() ? "" : " with " + params.label()));
    CheckReport rep;
    rep.p = cache.p();
    rep.id = id;
    rep.params = params;
    chk->evaluate(cache, params, rep);
    if (!rep.fired && !rep.vacuous && rep.residuals.empty()) rep.vacuous = true;
    return rep;
}

std::vector<CheckReport> run_all(SumCache& cache, const std::vector<std::string>& filter,
                                 int n_small, int n_large) {
    std::vector<CheckReport> out;
    std::vector<const IdentityCheck*> chks;
    for (const auto& chk : registry()) {
        if (!filter.empty() &&
            std::find(filter.begin(), filter.end(), chk.id) == filter.end())
            continue;
        chks.push_back(&chk);
    }
    std::sort(chks.begin(), chks.end(),
              [](const IdentityCheck* a, const IdentityCheck* b) { return a->id < b->id; });
    for (const IdentityCheck* chk : chks) {
        auto params = chk->enumerate(n_small, n_large);
        std::sort(params.begin(), params.end());
        for (const auto& pr : params) {
            if (!chk->applicable(cache.ctx(), pr)) continue;
            out.push_back(run_check(chk->id, cache, pr));
        }
    }
    return out;
}

}  // namespace lerch
