#pragma once

#include <array>
#include <atomic>
#include <set>
#include <thread>

#include "etaq/appendix_data.hpp"
#include "etaq/basis.hpp"

namespace etaq {

namespace detail {

template <typename Fn>
void parallel_for(long n, int jobs, Fn&& fn) {
    if (jobs <= 1 || n <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    auto worker = [&] {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int nt = static_cast<int>(std::min<long>(jobs, n));
    pool.reserve(static_cast<std::size_t>(nt));
    for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The degree-7 U_7 recurrence (modular equation of t)
// ---------------------------------------------------------------------------

// U_7(u t^k) = sum_{j=0}^{6} a_j(t) U_7(u t^{k+j-7}) for every u and k, where
// a_j(t) = sum_{l=1}^{7} s(j,l) 7^{floor((7l+j-4)/4)} t^l with integer s(j,l).
struct RecurrenceTable {
    std::array<LaurentPoly, 7> a;            // a_0 .. a_6, integer coefficients
    std::array<std::array<Int, 7>, 7> s{};   // s[j][l-1]
    long verified_terms = 0;                 // q-window on which the a_j were verified

    static long valuation_floor(int j, int l) { return div_floor(7L * l + j - 4, 4); }
};

// Derive the a_j from the seven power sums 7 U_7(t^r), r = 1..7, via Newton's
// identities, fit them as polynomials in t, and verify the valuation pattern.
// N is the precision used for t (the verification window is about N/7).
inline RecurrenceTable derive_recurrence(long N) {
    if (N < 200) throw std::invalid_argument("derive_recurrence: N >= 200 recommended; refusing less");
    QSeries t = expand_folded(eq_t(), N);
    std::array<QSeries, 8> tp;  // t^1..t^7 at full precision
    tp[1] = t;
    for (int r = 2; r <= 7; ++r) tp[static_cast<std::size_t>(r)] = tp[static_cast<std::size_t>(r - 1)] * t;

    // Power sums of the seven conjugates t((tau+lambda)/7).
    std::array<QSeries, 8> P;
    for (int r = 1; r <= 7; ++r) P[static_cast<std::size_t>(r)] = tp[static_cast<std::size_t>(r)].u_operator(7).scale(7);

    // Newton's identities: e_i = (1/i) sum_{j=1..i} (-1)^{j-1} e_{i-j} P_j.
    std::array<QSeries, 8> E;
    E[0] = QSeries::one(P[1].precision());
    for (int i = 1; i <= 7; ++i) {
        QSeries s = QSeries::zero(P[1].precision());
        for (int j = 1; j <= i; ++j) {
            QSeries term = E[static_cast<std::size_t>(i - j)] * P[static_cast<std::size_t>(j)];
            s = (j % 2 == 1) ? s + term : s - term;
        }
        E[static_cast<std::size_t>(i)] = s.scale(ratio(1, i));
    }

    // a_j = (-1)^j e_{7-j}; fit as a polynomial in t with degrees 1..7 by
    // forward substitution (t^l starts at q^l with leading coefficient 1),
    // then require the residual to vanish on the whole window.
    RecurrenceTable table;
    QSeries u7 = P[1];  // for the verification window bound
    table.verified_terms = P[1].precision();
    for (int j = 0; j <= 6; ++j) {
        QSeries aj = (j % 2 == 0) ? E[static_cast<std::size_t>(7 - j)] : -E[static_cast<std::size_t>(7 - j)];
        if (!aj.is_zero() && aj.order() < 1)
            throw ValuationViolation("a_" + std::to_string(j) + " has a term below t^1");
        LaurentPoly poly;
        QSeries resid = aj;
        for (int l = 1; l <= 7; ++l) {
            Rat v = resid.at(l);
            if (v != 0) {
                poly.set(l, v);
                resid = resid - tp[static_cast<std::size_t>(l)].scale(v);
            }
        }
        if (!resid.is_zero())
            throw NonzeroResidual("a_" + std::to_string(j) + ": residual at q^" + std::to_string(resid.order()));
        for (int l = 1; l <= 7; ++l) {
            Rat v = poly.coeff(l);
            long fl = RecurrenceTable::valuation_floor(j, l);
            if (v == 0) {
                table.s[static_cast<std::size_t>(j)][static_cast<std::size_t>(l - 1)] = 0;
                continue;
            }
            if (!is_integral(v))
                throw ValuationViolation("a_" + std::to_string(j) + " coefficient at t^" + std::to_string(l) +
                                         " is not an integer");
            auto val = seven_adic_valuation(v);
            if (*val < fl)
                throw ValuationViolation("a_" + std::to_string(j) + " at t^" + std::to_string(l) + ": valuation " +
                                         std::to_string(*val) + " below floor " + std::to_string(fl));
            table.s[static_cast<std::size_t>(j)][static_cast<std::size_t>(l - 1)] = Int(v.get_num()) / pow7(static_cast<unsigned long>(fl));
        }
        table.a[static_cast<std::size_t>(j)] = std::move(poly);
    }
    return table;
}

// ---------------------------------------------------------------------------
// Exact decomposition tables for the six families, extended from the seeds
// ---------------------------------------------------------------------------

// Rows k <= 0 come from the appendix seeds; rows k >= 1 follow from the
// recurrence: U_7(u t^k) = sum_j a_j(t) U_7(u t^{k+j-7}). All arithmetic is
// exact Laurent-polynomial algebra.
class U7Tables {
  public:
    explicit U7Tables(RecurrenceTable rec) : rec_(std::move(rec)) {
        for (auto& row : appendix_rows()) rows_[{row.family, row.k}] = decomposition_of(row);
    }

    const RecurrenceTable& recurrence() const { return rec_; }

    const BasisDecomposition& row(U7Family fam, int k) {
        auto it = rows_.find({fam, k});
        if (it != rows_.end()) return it->second;
        if (k < -6) throw std::out_of_range("U7Tables: k below seed range");
        ensure(fam, k);
        return rows_.at({fam, k});
    }

    // U_7( (A if with_A) * (part1(t) + p1 part2(t) + p2 part3(t)) ) as an
    // exact decomposition, by linearity over the table rows.
    BasisDecomposition transport(const BasisDecomposition& dec, bool with_A) {
        const U7Family f1 = with_A ? U7Family::A : U7Family::T;
        const U7Family f2 = with_A ? U7Family::AP1 : U7Family::P1;
        const U7Family f3 = with_A ? U7Family::AP2 : U7Family::P2;
        BasisDecomposition out;
        auto acc = [&](const LaurentPoly& part, U7Family fam) {
            for (auto& [n, v] : part.c) {
                if (n > static_cast<long>(std::numeric_limits<int>::max()))
                    throw std::out_of_range("transport: degree too large");
                out += row(fam, static_cast<int>(n)).scaled(v);
            }
        };
        acc(dec.part1, f1);
        acc(dec.part2, f2);
        acc(dec.part3, f3);
        return out;
    }

  private:
    void ensure(U7Family fam, int k) {
        int have = 0;
        while (rows_.count({fam, have + 1})) ++have;
        for (int kk = have + 1; kk <= k; ++kk) {
            BasisDecomposition d;
            for (int j = 0; j <= 6; ++j) {
                const BasisDecomposition& prev = rows_.at({fam, kk + j - 7});
                const LaurentPoly& aj = rec_.a[static_cast<std::size_t>(j)];
                d.part1 += aj * prev.part1;
                d.part2 += aj * prev.part2;
                d.part3 += aj * prev.part3;
            }
            rows_.emplace(std::make_pair(fam, kk), std::move(d));
        }
    }

    RecurrenceTable rec_;
    std::map<std::pair<U7Family, int>, BasisDecomposition> rows_;
};

// Shared context for computing the family left-hand sides U_7(prefix * t^k):
// the six prefixes and the powers of t are computed once.
class FamilySeriesContext {
  public:
    FamilySeriesContext(const TBasis& basis, QSeries A_series) : basis_(basis), tp_(basis.t) {
        prefixes_[idx(U7Family::A)] = std::move(A_series);
        prefixes_[idx(U7Family::AP1)] = prefixes_[idx(U7Family::A)] * basis.p1;
        prefixes_[idx(U7Family::AP2)] = prefixes_[idx(U7Family::A)] * basis.p2;
        prefixes_[idx(U7Family::T)] = QSeries::one(basis.precision);
        prefixes_[idx(U7Family::P1)] = basis.p1;
        prefixes_[idx(U7Family::P2)] = basis.p2;
    }

    // Precompute t^k for k in [kmin, kmax] so that lhs() is safe to call from
    // several threads at once.
    void warm(int kmin, int kmax) {
        for (int k = kmin; k <= kmax; ++k)
            if (k != 0) tp_(k);
    }

    QSeries lhs(U7Family fam, int k) const {
        const QSeries& prefix = prefixes_[idx(fam)];
        if (k == 0) return prefix.u_operator(7);
        return (prefix * tp_(k)).u_operator(7);
    }

    const TBasis& basis() const { return basis_; }

  private:
    static std::size_t idx(U7Family f) {
        switch (f) {
            case U7Family::A: return 0;
            case U7Family::AP1: return 1;
            case U7Family::AP2: return 2;
            case U7Family::T: return 3;
            case U7Family::P1: return 4;
            case U7Family::P2: return 5;
        }
        return 0;
    }
    const TBasis& basis_;
    mutable PowerCache tp_;
    std::array<QSeries, 6> prefixes_;
};

inline QSeries family_lhs_series(U7Family fam, int k, const TBasis& basis, const QSeries& A_series) {
    PowerCache tp(basis.t);
    QSeries prefix;
    switch (fam) {
        case U7Family::A: prefix = A_series; break;
        case U7Family::AP1: prefix = A_series * basis.p1; break;
        case U7Family::AP2: prefix = A_series * basis.p2; break;
        case U7Family::T: prefix = QSeries::one(basis.precision); break;
        case U7Family::P1: prefix = basis.p1; break;
        case U7Family::P2: prefix = basis.p2; break;
    }
    if (k == 0) return prefix.u_operator(7);
    return (prefix * tp(k)).u_operator(7);
}

// Lemma-style shape constraints per family: starting t-degree and 7-adic
// valuation floor for each part, as functions of k (valid for k >= 0).
struct FamilyShape {
    // index 0,1,2 = part1, part2, part3
    std::array<long, 3> ord_offset;   // ord_t >= ceil((k + off)/7)
    std::array<long, 3> val_offset;   // val_7 >= floor((7n - k + off)/4)
    std::array<bool, 3> present;      // family d has only part1
};

inline FamilyShape family_shape(U7Family fam) {
    switch (fam) {
        case U7Family::A: return {{4, -3, -3}, {-3, -2, -6}, {true, true, true}};
        case U7Family::AP1: return {{5, -2, -2}, {-2, -3, -6}, {true, true, true}};
        case U7Family::AP2: return {{3, -4, -4}, {-2, -2, -6}, {true, true, true}};
        case U7Family::T: return {{0, 0, 0}, {-1, 0, 0}, {true, false, false}};
        case U7Family::P1: return {{0, 3, 7}, {0, -1, -4}, {true, true, true}};
        case U7Family::P2: return {{0, 3, 6}, {0, 0, -4}, {true, true, true}};
    }
    throw std::invalid_argument("bad family");
}

// Assert the order and valuation floors of a row with k >= 0. Throws
// BoundViolation naming the (k, part, degree) triple.
inline void assert_family_bounds(U7Family fam, int k, const BasisDecomposition& d) {
    if (k < 0) throw std::invalid_argument("bounds are stated for k >= 0");
    FamilyShape sh = family_shape(fam);
    const LaurentPoly* parts[3] = {&d.part1, &d.part2, &d.part3};
    for (int p = 0; p < 3; ++p) {
        const LaurentPoly& poly = *parts[p];
        if (!sh.present[static_cast<std::size_t>(p)] && !poly.empty())
            throw BoundViolation("family " + std::string(family_name(fam)) + " k=" + std::to_string(k) +
                                 ": part " + std::to_string(p + 1) + " should be absent");
        long omin = div_ceil(k + sh.ord_offset[static_cast<std::size_t>(p)], 7);
        for (auto& [n, v] : poly.c) {
            if (!is_integral(v))
                throw BoundViolation("k=" + std::to_string(k) + " part " + std::to_string(p + 1) + " t^" +
                                     std::to_string(n) + ": non-integral");
            if (n < omin)
                throw BoundViolation("k=" + std::to_string(k) + " part " + std::to_string(p + 1) + " t^" +
                                     std::to_string(n) + ": below order bound " + std::to_string(omin));
            long floor_v = div_floor(7 * n - k + sh.val_offset[static_cast<std::size_t>(p)], 4);
            auto val = seven_adic_valuation(v);
            if (*val < floor_v)
                throw BoundViolation("k=" + std::to_string(k) + " part " + std::to_string(p + 1) + " t^" +
                                     std::to_string(n) + ": valuation " + std::to_string(*val) + " < " +
                                     std::to_string(floor_v));
        }
    }
}

// ---------------------------------------------------------------------------
// Appendix verification
// ---------------------------------------------------------------------------

struct IdentityVerdict {
    std::string id;  // e.g. "I.k0"
    bool ok = false;
    long terms_verified = 0;
    long bound_used = 0;  // max(valence bound of the RHS terms, configured floor)
    std::optional<QSeries::Mismatch> mismatch;
};

inline std::string group_roman(U7Family f) {
    switch (f) {
        case U7Family::A: return "I";
        case U7Family::AP1: return "II";
        case U7Family::AP2: return "III";
        case U7Family::T: return "IV";
        case U7Family::P1: return "V";
        case U7Family::P2: return "VI";
    }
    return "?";
}

// Cusp-order table of the eta-quotient terms appearing in a reconstruction
// (p2 t^n splits into its two quotient terms). Gives the valence bound used
// to size the verification window for the identity's right-hand side.
inline long rhs_valence_bound(const BasisDecomposition& d) {
    std::vector<EtaQuotient> terms;
    auto tpow = [&](long n) {
        return EtaQuotient({{7, 4 * n}, {1, -4 * n}}, 14);
    };
    for (auto& [n, v] : d.part1.c)
        if (n != 0) terms.push_back(tpow(n));
    for (auto& [n, v] : d.part2.c) terms.push_back(eq_p1().times(tpow(n)));
    for (auto& [n, v] : d.part3.c) {
        terms.push_back(eq_p2_head().times(tpow(n)));
        terms.push_back(eq_p1().times(tpow(n)));
    }
    if (terms.empty()) return 1;
    return valence_bound(min_cusp_orders(terms));
}

struct VerifyAppendixOptions {
    long terms = 500;  // verification floor in q-coefficients of the image
    int jobs = 1;
};

// Verify the printed identities of the requested groups (1..6) bit-exactly:
// LHS by the coefficient-level U_7 of the exact product series, RHS from the
// printed basis combination. Every identity is checked to
// max(rhs valence bound, terms) coefficients.
inline std::vector<IdentityVerdict> verify_appendix(const std::set<int>& groups, VerifyAppendixOptions opt = {}) {
    std::vector<const AppendixRow*> todo;
    for (auto& row : appendix_rows())
        if (groups.count(static_cast<int>(group_roman(row.family) == "I"    ? 1
                                          : group_roman(row.family) == "II"  ? 2
                                          : group_roman(row.family) == "III" ? 3
                                          : group_roman(row.family) == "IV"  ? 4
                                          : group_roman(row.family) == "V"   ? 5
                                                                             : 6)))
            todo.push_back(&row);

    long floor_terms = opt.terms;
    long maxbound = floor_terms;
    std::vector<long> bounds(todo.size());
    for (std::size_t i = 0; i < todo.size(); ++i) {
        bounds[i] = std::max(rhs_valence_bound(decomposition_of(*todo[i])), floor_terms);
        maxbound = std::max(maxbound, bounds[i]);
    }

    // The image window [ -2, maxbound ) needs the input series to exponent
    // 7*maxbound; t^-6 and A shift the window start down by 16.
    long N = 7 * maxbound + 40;
    TBasis basis = TBasis::build(N);
    FamilySeriesContext ctx(basis, expand_folded(eq_A(), N));
    ctx.warm(-6, 0);

    std::vector<IdentityVerdict> out(todo.size());
    detail::parallel_for(static_cast<long>(todo.size()), opt.jobs, [&](long i) {
        const AppendixRow& row = *todo[static_cast<std::size_t>(i)];
        IdentityVerdict v;
        v.id = group_roman(row.family) + ".k" + std::to_string(row.k);
        v.bound_used = bounds[static_cast<std::size_t>(i)];
        QSeries lhs = ctx.lhs(row.family, row.k);
        lhs = lhs.truncate(std::min(lhs.precision(), (lhs.is_zero() ? 0 : lhs.order()) + v.bound_used));
        BasisDecomposition dec = decomposition_of(row);
        QSeries rhs = reconstruct(dec, basis, false, lhs.precision());
        auto diff = QSeries::first_difference(lhs, rhs);
        if (diff) {
            v.ok = false;
            v.mismatch = *diff;
        } else {
            v.ok = true;
        }
        long lo = lhs.is_zero() ? 0 : lhs.order();
        v.terms_verified = lhs.precision() - lo;
        out[static_cast<std::size_t>(i)] = std::move(v);
    });
    return out;
}

// Re-verify a table row against a direct coefficient-level computation of
// U_7(prefix t^k) on the available window; returns the verified window size.
inline long verify_row_direct(U7Family fam, int k, const BasisDecomposition& dec, const TBasis& basis,
                              const QSeries& A_series) {
    QSeries lhs = family_lhs_series(fam, k, basis, A_series);
    QSeries rhs = reconstruct(dec, basis, false, lhs.precision());
    auto diff = QSeries::first_difference(lhs, rhs);
    if (diff)
        throw NonzeroResidual("row " + std::string(family_name(fam)) + " k=" + std::to_string(k) +
                              ": first mismatch at q^" + std::to_string(diff->exponent));
    long lo = lhs.is_zero() ? 0 : lhs.order();
    return lhs.precision() - lo;
}

}  // namespace etaq
