#pragma once

#include <gmpxx.h>

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace etaq {

using Int = mpz_class;
using Rat = mpq_class;

// Exceptions shared across the library. Each names the condition that was
// violated; callers that want verdicts instead of exceptions catch these.
struct ZeroLeadingCoefficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IntegralityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonzeroResidual : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotUnimodular : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonzeroWeight : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValuationViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BoundViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrefactorMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SignViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ExtractionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValuationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MembershipFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CounterexampleFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos) : std::runtime_error(msg), position(pos) {}
    std::size_t position;
};

inline long div_floor(long a, long b) {
    long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

inline long div_ceil(long a, long b) { return -div_floor(-a, b); }

inline Int pow_int(Int base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int pow7(unsigned long e) { return pow_int(Int(7), e); }

// 7-adic valuation. nullopt encodes +infinity (the valuation of 0).
// Negative values arise for rationals with 7 in the denominator.
inline std::optional<long> seven_adic_valuation(const Int& n) {
    if (n == 0) return std::nullopt;
    Int m = n;
    long v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), 7)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), 7);
        ++v;
    }
    return v;
}

inline std::optional<long> seven_adic_valuation(const Rat& q) {
    if (q == 0) return std::nullopt;
    long vn = *seven_adic_valuation(Int(q.get_num()));
    long vd = *seven_adic_valuation(Int(q.get_den()));
    return vn - vd;
}

inline bool is_integral(const Rat& q) { return q.get_den() == 1; }

// mpq_class(num, den) does not canonicalize; every ratio built from parts
// that may share a factor goes through here.
template <typename N, typename D>
inline Rat ratio(const N& num, const D& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Inverse of a modulo m, m > 1, gcd(a, m) = 1.
inline Int inv_mod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::invalid_argument("inv_mod: not invertible");
    return r;
}

}  // namespace etaq
