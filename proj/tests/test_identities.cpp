#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "lerch/identities.hpp"

using namespace lerch;

namespace {

CheckReport run_at(u32 p, const std::string& id, CheckParams params = {}) {
    PrimeContext ctx(p);
    SumCache cache(ctx);
    return run_check(id, cache, params);
}

bool all_pass(u32 p, const std::vector<std::string>& filter = {}) {
    PrimeContext ctx(p);
    SumCache cache(ctx);
    for (const auto& rep : run_all(cache, filter))
        if (!rep.pass) return false;
    return true;
}

}  // namespace

TEST_CASE("registry is complete and queryable") {
    const auto& reg = registry();
    CHECK(reg.size() == 36);  // 34 catalog entries, K-groups split by modulus
    for (const char* id :
         {"lerch_main", "lerch_split", "mirror", "log_property", "table1", "theorem1",
          "corollary1", "cor1_even_x", "cor1_sub", "sstar_rule", "corollary2",
          "corollary3", "m3_rows", "corollary4", "k_mod3", "k_mod4", "k_mod6",
          "half_range_mod3", "theorem2", "skula_tree", "glaisher_half", "table2_pell",
          "table3_lucas", "n8_conditional", "n16_relations", "n12_rows",
          "n24_subtractions", "n24_m2_rows", "n9_relation", "n18_relations",
          "n5_conditional", "n10_relations", "dilcher_skula_sum", "b_sum_checks",
          "lerch_diff", "frobenius_chain"})
        CHECK(find_check(id) != nullptr);
    CHECK(find_check("nope") == nullptr);
    PrimeContext ctx(7);
    SumCache cache(ctx);
    CHECK_THROWS_AS(run_check("nope", cache), UnknownCheckError);
    CHECK_THROWS_AS(run_check("lerch_main", cache, {.n = 7}), NotApplicableError);
}

TEST_CASE("desk check at p = 7: table1 residuals are all zero") {
    auto rep = run_at(7, "table1");
    CHECK(rep.pass);
    CHECK(rep.residuals.size() == 11);
    for (u32 r : rep.residuals) CHECK(r == 0);
}

TEST_CASE("lerch_main at small primes and N") {
    for (u32 p : {5u, 7u, 11u, 101u})
        for (int n = 2; n <= 12; ++n) {
            if (n % p == 0) continue;
            CAPTURE(p);
            CAPTURE(n);
            CHECK(run_at(p, "lerch_main", {.n = n}).pass);
        }
}

TEST_CASE("the whole catalog passes at a spread of primes") {
    for (u32 p : {5u, 7u, 13u, 97u, 101u, 1009u, 1093u}) {
        CAPTURE(p);
        CHECK(all_pass(p));
    }
}

TEST_CASE("Pell and Lucas tables at p = 7 (desk derivation)") {
    // s(k,8) = [0,1,4,5,...], q2 = 2, u = U_6/7 = 10 -> 3:
    //   s(0,8) = -4*2 - 2*3 = -14 = 0, s(1,8) = 2+6 = 8 = 1, etc.
    CHECK(run_at(7, "table2_pell").pass);
    CHECK(run_at(7, "table3_lucas").pass);
}

TEST_CASE("conditional checks fire and pass at the Wieferich primes") {
    for (u32 p : {1093u, 3511u}) {
        CAPTURE(p);
        auto n8 = run_at(p, "n8_conditional");
        CHECK(n8.fired);
        CHECK_FALSE(n8.vacuous);
        CHECK(n8.pass);
        auto n16 = run_at(p, "n16_relations");
        CHECK(n16.fired);
        CHECK(n16.pass);
        auto n10 = run_at(p, "n10_relations");
        CHECK(n10.fired);
        CHECK(n10.pass);
        // s(1,12) - s(4,12) = 4*q2 = 0 here, covered by n12_rows
        CHECK(run_at(p, "n12_rows").pass);
    }
}

TEST_CASE("conditional checks stay vacuous at ordinary primes") {
    auto n8 = run_at(101, "n8_conditional");
    CHECK(n8.vacuous);
    CHECK_FALSE(n8.fired);
    CHECK(n8.pass);
    CHECK(n8.residuals.empty());
}

TEST_CASE("q3 premise at the Mirimanoff primes; frobenius_chain stays vacuous") {
    PrimeContext ctx(11);
    SumCache cache(ctx);
    CHECK(cache.q(3) == 0);
    CHECK(cache.q(2) != 0);
    auto rep = run_check("frobenius_chain", cache);
    CHECK(rep.vacuous);
    CHECK_FALSE(rep.fired);
}

TEST_CASE("base-5 quotient zero at p = 20771 drives n5_conditional") {
    PrimeContext ctx(20771);
    SumCache cache(ctx);
    CHECK(cache.q(5) == 0);
    auto rep = run_check("n5_conditional", cache);
    CHECK(rep.fired);
    CHECK(rep.pass);
    // q2 != 0 here, so only the single-row consequence is checked
    CHECK(rep.residuals.size() == 1);
}

TEST_CASE("run_all ordering and filtering") {
    PrimeContext ctx(13);
    SumCache cache(ctx);
    auto reps = run_all(cache, {"mirror", "lerch_main"});
    REQUIRE(!reps.empty());
    for (size_t i = 1; i < reps.size(); ++i) {
        auto a = std::tie(reps[i - 1].id, reps[i - 1].params);
        auto b = std::tie(reps[i].id, reps[i].params);
        CHECK(a < b);
    }
    for (const auto& r : reps) CHECK((r.id == "mirror" || r.id == "lerch_main"));
    // p | N combinations are skipped: N = 13 and 26 never appear
    for (const auto& r : reps) CHECK(r.params.n % 13 != 0);
}

TEST_CASE("theorem1 and theorem2 at the large-N cap") {
    PrimeContext ctx(997);
    SumCache cache(ctx);
    for (const auto& rep : run_all(cache, {"theorem1", "theorem2"}, 24, 48)) {
        CAPTURE(rep.params.n);
        CAPTURE(rep.params.m);
        CHECK(rep.pass);
    }
}
