#pragma once

#include <functional>
#include <string>
#include <vector>

#include "etaq/operators.hpp"

namespace etaq {

// ---------------------------------------------------------------------------
// Coefficient families
// ---------------------------------------------------------------------------

enum class Family { cphi4, cpsi4_0, cpsi4_1, cpsi4_2 };

inline const char* family_tag(Family f) {
    switch (f) {
        case Family::cphi4: return "cphi4";
        case Family::cpsi4_0: return "cpsi4_0";
        case Family::cpsi4_1: return "cpsi4_1";
        case Family::cpsi4_2: return "cpsi4_2";
    }
    return "?";
}

struct FamilyCoefficients {
    Family family;
    std::vector<Int> values;  // index n -> count
    std::string source;       // generating-function tag

    const Int& at(std::size_t n) const {
        if (n >= values.size()) throw PrecisionError("family coefficient index beyond computed range");
        return values[n];
    }
    std::size_t size() const { return values.size(); }
};

// cpsi_{4,1}(0..N-1) from 4 * prod (1-q^{2n})^6 / (1-q^n)^7.
inline FamilyCoefficients cpsi41_coefficients(long N) {
    auto [pre, core] = expand(EtaQuotient({{2, 6}, {1, -7}}, 2), N);
    if (pre != 5) throw PrefactorMismatch("cpsi41: prefactor must be 5/24");
    core.assert_integral("cpsi41 core");
    FamilyCoefficients out{Family::cpsi4_1, {}, "4*q^(-5/24)*eta2^6/eta1^7"};
    out.values.reserve(static_cast<std::size_t>(N));
    for (long n = 0; n < N; ++n) {
        Rat v = core.at(n) * 4;
        if (v < 0) throw SignViolation("cpsi41(" + std::to_string(n) + ") negative");
        out.values.push_back(Int(v.get_num()));
    }
    return out;
}

// cpsi_{4,2}(n) and cpsi_{4,0}(n) from prod (1-q^n)^6 / (1-q^{2n})^7:
// even coefficients are cpsi_{4,2}, odd coefficients are -cpsi_{4,0}.
inline std::pair<FamilyCoefficients, FamilyCoefficients> cpsi40_42_coefficients(long N) {
    long M = 2 * N + 1;
    auto [pre, core] = expand(EtaQuotient({{1, 6}, {2, -7}}, 2), M);
    if (pre != -8) throw PrefactorMismatch("cpsi40/42: prefactor must be -8/24");
    core.assert_integral("cpsi40/42 core");
    FamilyCoefficients b0{Family::cpsi4_0, {}, "odd part of eta1^6/eta2^7"};
    FamilyCoefficients b2{Family::cpsi4_2, {}, "even part of eta1^6/eta2^7"};
    b0.values.reserve(static_cast<std::size_t>(N));
    b2.values.reserve(static_cast<std::size_t>(N));
    for (long n = 0; n < N; ++n) {
        Rat even = core.at(2 * n);
        Rat odd = core.at(2 * n + 1);
        if (even < 0) throw SignViolation("cpsi42(" + std::to_string(n) + ") negative");
        if (odd > 0) throw SignViolation("cpsi40(" + std::to_string(n) + ") sign violation");
        b2.values.push_back(Int(even.get_num()));
        b0.values.push_back(Int(-Int(odd.get_num())));
    }
    return {std::move(b0), std::move(b2)};
}

// cphi4(0..N-1) from the two-quotient generating function
//   q^{1/6} eta4^15/(eta8^6 eta2^6 eta1^4) + 12 q^{1/6} eta8^2 eta4^3/(eta2^2 eta1^4).
// The 1/24-unit bookkeeping must cancel to integer q-shifts 0 and 1.
inline FamilyCoefficients cphi4_coefficients(long N) {
    auto [pre1, c1] = expand(EtaQuotient({{4, 15}, {8, -6}, {2, -6}, {1, -4}}, 8), N);
    auto [pre2, c2] = expand(EtaQuotient({{8, 2}, {4, 3}, {2, -2}, {1, -4}}, 8), N);
    if ((pre1 + 4) % 24 != 0 || (pre1 + 4) / 24 != 0)
        throw PrefactorMismatch("cphi4 term 1: q^{1/6} does not cancel the eta prefactor");
    if ((pre2 + 4) % 24 != 0 || (pre2 + 4) / 24 != 1)
        throw PrefactorMismatch("cphi4 term 2: expected net shift q^1");
    QSeries gf = c1 + c2.shift(1).scale(12);
    gf.assert_integral("cphi4");
    FamilyCoefficients out{Family::cphi4, {}, "eq. sum of eta4^15/(eta8^6 eta2^6 eta1^4) and 12 eta8^2 eta4^3/(eta2^2 eta1^4)"};
    out.values.reserve(static_cast<std::size_t>(N));
    for (long n = 0; n < N; ++n) {
        Rat v = gf.at(n);
        if (v < 0) throw SignViolation("cphi4(" + std::to_string(n) + ") negative");
        out.values.push_back(Int(v.get_num()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Residue classes
// ---------------------------------------------------------------------------

struct LambdaClass {
    int beta = 0;
    long alpha = 1;
    Int lambda;   // minimal nonnegative solution of 24 n == 3 beta^2 - 8 (mod 7^alpha)
    Int modulus;  // 7^alpha
};

// Closed forms printed for the three families. For beta = 2 the printed
// (1+5*7^a)/8 is never an integer; (1+5*7^a)/6 matches the congruence and is
// returned as the presumed intended form (flagged by callers).
inline std::optional<Int> lambda_closed_form(int beta, long alpha) {
    Int pa = pow7(static_cast<unsigned long>(alpha));
    if (beta == 1) {
        Int num = (alpha % 2 == 1) ? Int(-5 + 11 * pa) : Int(-5 + 5 * pa);
        if (num % 24 != 0) return std::nullopt;
        return num / 24;
    }
    if (beta == 0) {
        Int num = pa - 1;
        if (num % 3 != 0) return std::nullopt;
        return num / 3;
    }
    if (beta == 2) {
        Int num = 1 + 5 * pa;
        if (num % 6 != 0) return std::nullopt;  // printed /8 form is non-integral; /6 satisfies the congruence
        return num / 6;
    }
    return std::nullopt;
}

inline LambdaClass lambda_class(int beta, long alpha) {
    if (beta < 0 || beta > 2) throw std::invalid_argument("beta must be 0, 1 or 2");
    if (alpha < 1) throw std::invalid_argument("alpha must be >= 1");
    LambdaClass lc;
    lc.beta = beta;
    lc.alpha = alpha;
    lc.modulus = pow7(static_cast<unsigned long>(alpha));
    Int target = ((Int(3 * beta * beta - 8) % lc.modulus) + lc.modulus) % lc.modulus;
    lc.lambda = (inv_mod(Int(24), lc.modulus) * target) % lc.modulus;
    auto closed = lambda_closed_form(beta, alpha);
    if (closed && *closed != lc.lambda)
        throw std::logic_error("lambda closed form disagrees with congruence definition");
    return lc;
}

// ---------------------------------------------------------------------------
// X-space profiles and membership
// ---------------------------------------------------------------------------

enum class XSpace { X0, X1 };

struct XSpaceProfile {
    XSpace space = XSpace::X0;
    bool mirrored = false;  // X^(0)bar / X^(1)bar use the {tbar, p1bar, p2bar} basis

    std::string name() const {
        std::string s = (space == XSpace::X0) ? "X0" : "X1";
        if (mirrored) s += "bar";
        return s;
    }
};

// Valuation floor for part (1..3) at t-degree n; nullopt = the term is
// forbidden by the profile. Mirrored profiles share the same floors.
inline std::optional<long> x_floor(XSpace space, int part, long n) {
    if (n < 0) return std::nullopt;
    if (space == XSpace::X0) {
        if (part == 1) return n == 0 ? 0 : n == 1 ? 1 : div_floor(7 * n - 2, 4);
        if (part == 2) return n == 0 ? std::optional<long>() : n == 1 ? 1 : div_floor(7 * n - 2, 4);
        return n == 0 ? std::optional<long>() : n == 1 ? 0 : div_floor(7 * n - 6, 4);
    }
    if (part == 1) return n == 0 ? std::optional<long>() : n == 1 ? 0 : div_floor(7 * n - 7, 4);
    if (part == 2) return n <= 1 ? 0 : div_floor(7 * n - 7, 4);
    return n <= 1 ? 0 : div_floor(7 * n - 11, 4);
}

struct MembershipVerdict {
    bool ok = true;
    int part = 0;
    long degree = 0;
    std::string reason;
};

// Check every structural constraint of the profile against dec/7^{divide7}:
// allowed degrees, per-degree 7-adic valuation floors, and integrality of the
// extracted r_i(n) = coefficient / 7^{floor}.
inline MembershipVerdict x_membership(const BasisDecomposition& dec, const XSpaceProfile& profile,
                                      long divide7 = 0) {
    Rat div(pow7(static_cast<unsigned long>(divide7)));
    const LaurentPoly* parts[3] = {&dec.part1, &dec.part2, &dec.part3};
    for (int p = 1; p <= 3; ++p) {
        for (auto& [n, raw] : parts[p - 1]->c) {
            Rat v = raw / div;
            if (v == 0) continue;
            auto fl = x_floor(profile.space, p, n);
            if (!fl) return {false, p, n, "term forbidden by " + profile.name()};
            if (!is_integral(v)) return {false, p, n, "coefficient not divisible by 7^" + std::to_string(divide7)};
            long val = *seven_adic_valuation(v);
            if (val < *fl)
                return {false, p, n,
                        "valuation " + std::to_string(val) + " below floor " + std::to_string(*fl)};
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// L and K sequences
// ---------------------------------------------------------------------------

struct LKEntry {
    int alpha = 0;
    QSeries series;
    long valuation_floor = 0;       // ceil(alpha/2), verified coefficientwise
    BasisDecomposition dec;          // exact decomposition (series-solved or table transport)
    std::string dec_method;          // "eliminate", "transport" or "none"
    long solve_deg_max = -1;         // highest t-degree column offered to the solver
    MembershipVerdict membership;
    XSpaceProfile profile;
    bool extraction_ok = false;
    long extraction_terms = 0;
    long reconstruction_window = 0;  // q-window on which dec reproduces series
};

// Precision of A (resp. A') needed so L_{alpha_max} (K_{alpha_max}) keeps
// `window` coefficients. U_7 divides precision by 7; multiplying by A costs
// its pole order 10 (A' costs nothing, its order is +16).
inline long required_terms(int alpha_max, long window, bool kside) {
    long w = window;
    for (int a = alpha_max; a >= 1; --a) {
        w = 7 * w;
        if (a % 2 == 1 && !kside) w += 12;  // ord(A) = -10 plus slack
    }
    return w;
}

namespace detail {

inline QSeries lk_extraction_lhs(const QSeries& L, int alpha, bool kside, long window_cap) {
    // Left-hand side series whose coefficients are the sliced family counts.
    long prec = std::min(L.precision(), window_cap);
    if (!kside) {
        // odd alpha: 4 q L / W7core ; even alpha: 4 L / Vcore
        if (alpha % 2 == 1) {
            auto [p, inv] = expand(EtaQuotient({{14, 6}, {7, -7}}, 14), prec + 20);
            return (L * inv).scale(4).shift(1).truncate(prec + 1);
        }
        auto [p, inv] = expand(EtaQuotient({{2, 6}, {1, -7}}, 2), prec + 2);
        return (L * inv).scale(4).truncate(prec);
    }
    // K side: odd alpha: K * G(q^7) ; even alpha: K * G(q)
    if (alpha % 2 == 1) {
        auto [p, g] = expand(EtaQuotient({{1, 6}, {2, -7}}, 2), div_ceil(prec + 1, 7) + 2);
        return (L * g.substitute(7)).truncate(prec);
    }
    auto [p, g] = expand(EtaQuotient({{1, 6}, {2, -7}}, 2), prec + 2);
    return (L * g).truncate(prec);
}

}  // namespace detail

struct LKOptions {
    int alpha_max = 2;
    long window = 60;         // coefficients retained by the last entry
    int membership_max = -1;  // verify membership for alpha <= this (-1: all)
};

// Compute L_1..L_alpha_max (kside = false) or K_1..K_alpha_max (kside = true)
// with (i) extraction identities against the family coefficients, (ii) the
// coefficientwise 7^{ceil(alpha/2)} divisibility, and (iii) exact
// decomposition plus X-space membership. Decompositions are solved from the
// series window where that window suffices and by exact table transport
// otherwise; either way the reconstruction must match the series exactly.
inline std::vector<LKEntry> lk_sequence(bool kside, U7Tables& tables, LKOptions opt) {
    if (opt.alpha_max < 1) throw std::invalid_argument("alpha_max >= 1");
    long NA = required_terms(opt.alpha_max, opt.window, kside);
    QSeries A = expand_folded(kside ? eq_Aprime() : eq_A(), NA);
    A.assert_integral(kside ? "A'" : "A");

    // family coefficients for the extraction checks: the deepest slice reads
    // index 7^a * n + lambda_a with 7^a * n bounded by the precision of A
    long idx_max = NA + static_cast<long>(pow7(static_cast<unsigned long>(opt.alpha_max)).get_si()) + 8;
    FamilyCoefficients f41{Family::cpsi4_1, {}, ""};
    FamilyCoefficients f40{Family::cpsi4_0, {}, ""}, f42{Family::cpsi4_2, {}, ""};
    if (!kside)
        f41 = cpsi41_coefficients(idx_max + 1);
    else {
        auto pr = cpsi40_42_coefficients(idx_max + 1);
        f40 = std::move(pr.first);
        f42 = std::move(pr.second);
    }

    std::vector<LKEntry> out;
    QSeries cur = QSeries::one(A.precision());
    BasisDecomposition cur_dec;  // decomposition of L_alpha (== K_alpha over bars)
    for (int a = 1; a <= opt.alpha_max; ++a) {
        LKEntry e;
        e.alpha = a;
        cur = (a % 2 == 1) ? (A * cur).u_operator(7) : cur.u_operator(7);
        e.series = cur;
        e.profile = XSpaceProfile{(a % 2 == 1) ? XSpace::X1 : XSpace::X0, kside};
        e.valuation_floor = (a + 1) / 2;

        // (ii) coefficientwise divisibility by 7^{ceil(a/2)}
        cur.assert_integral("L/K series");
        Int divisor = pow7(static_cast<unsigned long>(e.valuation_floor));
        for (long n = cur.is_zero() ? cur.precision() : cur.order(); n < cur.precision(); ++n) {
            if (Int(cur.at(n).get_num()) % divisor != 0)
                throw ValuationFailure((kside ? std::string("K_") : std::string("L_")) + std::to_string(a) +
                                       ": coefficient at q^" + std::to_string(n) + " not divisible by 7^" +
                                       std::to_string(e.valuation_floor));
        }

        // (i) extraction identity
        {
            LambdaClass lam = lambda_class(kside ? 2 : 1, a);
            LambdaClass lam0 = kside ? lambda_class(0, a) : lam;
            QSeries lhs = detail::lk_extraction_lhs(cur, a, kside, cur.precision());
            long lo = lhs.is_zero() ? lhs.precision() : lhs.order();
            long checked = 0;
            Int pa = pow7(static_cast<unsigned long>(a));
            for (long n = lo; n < lhs.precision(); ++n) {
                Int want;
                if (!kside) {
                    Int idx = pa * n + lam.lambda;
                    if (idx < 0 || idx >= Int(static_cast<long>(f41.size()))) break;
                    want = f41.at(static_cast<std::size_t>(idx.get_si()));
                } else {
                    // exponent pattern: odd exponents carry +cpsi42 slices,
                    // even exponents -cpsi40 slices, offset q^3 (odd a) / q^1 (even a)
                    long base = (a % 2 == 1) ? 3 : 1;
                    if (n < base && lhs.at(n) != 0)
                        throw ExtractionMismatch("K_" + std::to_string(a) + ": unexpected term below q^" +
                                                 std::to_string(base));
                    if (n < base) continue;
                    long m = (n - base) / 2;
                    bool odd_slot = ((n - base) % 2) == 1;
                    Int idx = pa * m + (odd_slot ? lam.lambda : lam0.lambda);
                    if (idx >= Int(static_cast<long>(f40.size()))) break;
                    want = odd_slot ? f42.at(static_cast<std::size_t>(idx.get_si()))
                                    : -f40.at(static_cast<std::size_t>(idx.get_si()));
                }
                if (Rat(want) != lhs.at(n))
                    throw ExtractionMismatch((kside ? std::string("K_") : std::string("L_")) + std::to_string(a) +
                                             ": extraction mismatch at q^" + std::to_string(n));
                ++checked;
            }
            e.extraction_ok = true;
            e.extraction_terms = checked;
        }

        // (iii) decomposition + membership. Decompositions transport exactly
        // through the U_7 tables; they are only materialized while needed.
        int dec_max = opt.membership_max < 0 ? opt.alpha_max : opt.membership_max;
        long ord = cur.is_zero() ? cur.precision() : cur.order();
        long win = cur.precision() - ord;
        bool memb = a <= dec_max;
        e.dec_method = "none";
        if (memb) {
            cur_dec = (a == 1) ? decomposition_of(appendix_row(U7Family::A, 0))
                               : tables.transport(cur_dec, a % 2 == 1);
            e.dec = cur_dec;
            e.dec_method = "transport";
            // Solve from the series where the window can pin every degree;
            // the table transport is exact either way and must agree.
            long deg_max = std::max<long>(cur_dec.max_degree() + 2, 16);
            long need_rows = 3 * (deg_max + 1) + 40;
            long recon_prec = std::min(cur.precision(), ord + std::max<long>(need_rows, 600));
            TBasis basis = TBasis::build(std::max<long>(recon_prec + 6, 24));
            if (win >= need_rows) {
                DecomposeOptions dopt;
                dopt.mirrored = kside;
                dopt.deg_max = deg_max;
                BasisDecomposition solved = decompose(cur.truncate(ord + need_rows), basis, dopt);
                auto same = [](const LaurentPoly& x, const LaurentPoly& y) { return x.c == y.c; };
                if (!same(solved.part1, cur_dec.part1) || !same(solved.part2, cur_dec.part2) ||
                    !same(solved.part3, cur_dec.part3))
                    throw NonzeroResidual("series-solved decomposition disagrees with table transport");
                e.dec_method = "eliminate";
                e.solve_deg_max = deg_max;
            }
            QSeries rec = reconstruct(e.dec, basis, kside, recon_prec);
            auto diff = QSeries::first_difference(cur.truncate(recon_prec), rec);
            if (diff)
                throw NonzeroResidual("decomposition residual at q^" + std::to_string(diff->exponent));
            e.reconstruction_window = recon_prec - ord;
            e.membership = x_membership(e.dec, e.profile, e.valuation_floor);
            if (!e.membership.ok)
                throw MembershipFailure((kside ? std::string("K_") : std::string("L_")) + std::to_string(a) +
                                        " not in " + e.profile.name() + ": part " +
                                        std::to_string(e.membership.part) + " t^" +
                                        std::to_string(e.membership.degree) + " (" + e.membership.reason + ")");
        }
        out.push_back(std::move(e));
    }
    return out;
}

inline std::vector<LKEntry> l_sequence(U7Tables& tables, LKOptions opt) { return lk_sequence(false, tables, opt); }
inline std::vector<LKEntry> k_sequence(U7Tables& tables, LKOptions opt) { return lk_sequence(true, tables, opt); }

// ---------------------------------------------------------------------------
// Theorem certification
// ---------------------------------------------------------------------------

struct CongruenceCertificate {
    std::string family;
    int beta = 0;
    long alpha = 1;
    Int lambda;
    Int class_modulus;   // 7^{2 alpha - 1}
    Int divisor;         // 7^alpha
    long n_checked_lo = 0, n_checked_hi = 0;  // inclusive range of n
    std::string status;  // "verified"
    long precision = 0;  // coefficient supply used
    std::string notes;
};

// For every n in [0, n_max) the index lambda + n * 7^{2 alpha - 1} must give
// a coefficient divisible by 7^alpha.
inline CongruenceCertificate verify_theorem(int beta, long alpha, long n_max,
                                            const FamilyCoefficients& coeffs) {
    LambdaClass lam = lambda_class(beta, 2 * alpha - 1);
    CongruenceCertificate cert;
    cert.family = family_tag(coeffs.family);
    cert.beta = beta;
    cert.alpha = alpha;
    cert.lambda = lam.lambda;
    cert.class_modulus = lam.modulus;
    cert.divisor = pow7(static_cast<unsigned long>(alpha));
    cert.n_checked_lo = 0;
    cert.n_checked_hi = n_max - 1;
    cert.precision = static_cast<long>(coeffs.size());
    Int need = lam.lambda + lam.modulus * (n_max - 1);
    if (need >= Int(static_cast<long>(coeffs.size())))
        throw BudgetError("verify_theorem: coefficient supply " + std::to_string(coeffs.size()) +
                          " does not reach index " + need.get_str());
    for (long n = 0; n < n_max; ++n) {
        Int idx = lam.lambda + lam.modulus * n;
        const Int& v = coeffs.at(static_cast<std::size_t>(idx.get_si()));
        if (v % cert.divisor != 0)
            throw CounterexampleFound("beta=" + std::to_string(beta) + " alpha=" + std::to_string(alpha) +
                                      ": coefficient at n=" + idx.get_str() + " = " + v.get_str() +
                                      " not divisible by 7^" + std::to_string(alpha));
    }
    cert.status = "verified";
    if (beta == 2)
        cert.notes =
            "lambda from congruence 24n == 4 (mod 7^a); printed closed form (1+5*7^a)/8 is non-integral, "
            "(1+5*7^a)/6 matches; cpsi_{4,2} = cphi4";
    return cert;
}

// lambda minimality scan: brute force over residues for alpha <= alpha_max.
inline bool lambda_minimality_scan(int alpha_max) {
    for (int beta = 0; beta <= 2; ++beta) {
        for (int a = 1; a <= alpha_max; ++a) {
            LambdaClass lc = lambda_class(beta, a);
            Int target = ((Int(3 * beta * beta - 8) % lc.modulus) + lc.modulus) % lc.modulus;
            for (Int n = 0; n < lc.lambda; ++n) {
                if ((24 * n) % lc.modulus == target) return false;
            }
            if ((24 * lc.lambda) % lc.modulus != target) return false;
        }
    }
    return true;
}

}  // namespace etaq
