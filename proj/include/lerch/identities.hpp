#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lerch/sums.hpp"

namespace lerch {

struct UnknownCheckError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotApplicableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parameters of one check instance. Meaning depends on the check: n is the
/// modulus-like order N (or x for the Corollary-1 family), m a divisor of n,
/// a/b are quotient bases.
struct CheckParams {
    int n = 0;
    int m = 0;
    int a = 0;
    int b = 0;

    bool operator==(const CheckParams&) const = default;
    auto operator<=>(const CheckParams&) const = default;
    std::string label() const;
};

struct CheckReport {
    u32 p = 0;
    std::string id;
    CheckParams params;
    std::vector<u32> residuals;  // lhs - rhs per row, all zero <=> pass
    bool pass = true;
    bool vacuous = false;  // empty statement at this prime / premise not fired
    bool fired = false;    // a conditional premise held and was checked
};

/// A named congruence: who stated it, when it applies, and a residual
/// evaluator. evaluate() appends one residual per row so failures localize.
struct IdentityCheck {
    std::string id;
    std::string citation;
    bool conditional = false;
    std::function<std::vector<CheckParams>(int n_small, int n_large)> enumerate;
    std::function<bool(const PrimeContext&, const CheckParams&)> applicable;
    std::function<void(SumCache&, const CheckParams&, CheckReport&)> evaluate;
};

/// The immutable registry of all checks, in catalog order.
const std::vector<IdentityCheck>& registry();
const IdentityCheck* find_check(const std::string& id);

CheckReport run_check(const std::string& id, SumCache& cache, const CheckParams& params = {});

/// Every applicable (id, params) combination for the given caps; ids not in
/// `filter` are skipped when the filter is non-empty. Reports are ordered by
/// (id, params). Inapplicable combinations are silently skipped.
std::vector<CheckReport> run_all(SumCache& cache, const std::vector<std::string>& filter = {},
                                 int n_small = 24, int n_large = 48);

}  // namespace lerch
