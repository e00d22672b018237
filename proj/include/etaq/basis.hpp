#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "etaq/eta_quotient.hpp"
#include "etaq/qseries.hpp"

namespace etaq {

// The Gamma0(14) eta quotients underlying every decomposition here.
inline const EtaQuotient& eq_t() {
    static const EtaQuotient q({{7, 4}, {1, -4}}, 14);
    return q;
}
inline const EtaQuotient& eq_p1() {
    static const EtaQuotient q({{14, 4}, {1, 4}, {7, -4}, {2, -4}}, 14);
    return q;
}
// p2 = eq_p2_head - p1
inline const EtaQuotient& eq_p2_head() {
    static const EtaQuotient q({{7, 3}, {1, 3}, {14, -3}, {2, -3}}, 14);
    return q;
}
inline const EtaQuotient& eq_tbar() {
    static const EtaQuotient q({{14, 4}, {2, -4}}, 14);
    return q;
}
inline const EtaQuotient& eq_p1bar() {
    static const EtaQuotient q({{7, 4}, {2, 4}, {14, -4}, {1, -4}}, 14);
    return q;
}
// p2bar = 8 * eq_p2bar_head - p1bar
inline const EtaQuotient& eq_p2bar_head() {
    static const EtaQuotient q({{14, 3}, {2, 3}, {7, -3}, {1, -3}}, 14);
    return q;
}
inline const EtaQuotient& eq_A() {
    static const EtaQuotient q({{2, 6}, {49, 7}, {1, -7}, {98, -6}}, 98);
    return q;
}
inline const EtaQuotient& eq_Aprime() {
    static const EtaQuotient q({{1, 6}, {98, 7}, {2, -7}, {49, -6}}, 98);
    return q;
}

// Working basis {t, p1, p2} on Gamma0(14) and its Atkin-Lehner mirror
// {tbar, p1bar, p2bar}, all expanded to one precision.
struct TBasis {
    QSeries t, p1, p2;
    QSeries tbar, p1bar, p2bar;
    long precision = 0;

    static TBasis build(long N) {
        if (N < 8) throw std::invalid_argument("build_basis: N >= 8 required");
        TBasis b;
        b.precision = N;
        b.t = expand_folded(eq_t(), N);
        b.p1 = expand_folded(eq_p1(), N);
        b.p2 = expand_folded(eq_p2_head(), N) - b.p1;
        b.tbar = expand_folded(eq_tbar(), N);
        b.p1bar = expand_folded(eq_p1bar(), N);
        b.p2bar = expand_folded(eq_p2bar_head(), N).scale(8) - b.p1bar;
        auto check = [](const QSeries& s, long ord, const char* name) {
            if (s.order() != ord)
                throw PrecisionError(std::string(name) + ": expected order " + std::to_string(ord) +
                                     ", got " + std::to_string(s.order()));
        };
        check(b.t, 1, "t");
        check(b.p1, 1, "p1");
        check(b.p2, -1, "p2");
        check(b.tbar, 2, "tbar");
        check(b.p1bar, -1, "p1bar");
        check(b.p2bar, -1, "p2bar");
        return b;
    }
};

// Finitely supported Laurent polynomial in t with exact rational coefficients.
struct LaurentPoly {
    std::map<long, Rat> c;  // degree -> coefficient, nonzero entries only

    bool empty() const { return c.empty(); }

    Rat coeff(long n) const {
        auto it = c.find(n);
        return it == c.end() ? Rat(0) : it->second;
    }

    void set(long n, Rat v) {
        if (v == 0)
            c.erase(n);
        else
            c[n] = std::move(v);
    }

    void add(long n, const Rat& v) {
        if (v == 0) return;
        auto [it, ins] = c.emplace(n, v);
        if (!ins) {
            it->second += v;
            if (it->second == 0) c.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (auto& [n, v] : o.c) add(n, v);
        return *this;
    }

    LaurentPoly scaled(const Rat& k) const {
        LaurentPoly r;
        if (k == 0) return r;
        for (auto& [n, v] : c) r.c[n] = v * k;
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (auto& [n, v] : a.c)
            for (auto& [m, w] : b.c) r.add(n + m, v * w);
        return r;
    }

    long min_degree() const { return c.empty() ? 0 : c.begin()->first; }
    long max_degree() const { return c.empty() ? 0 : c.rbegin()->first; }

    bool is_integral() const {
        for (auto& [n, v] : c)
            if (!etaq::is_integral(v)) return false;
        return true;
    }

    std::string to_string() const {
        if (c.empty()) return "0";
        std::string s;
        for (auto& [n, v] : c) {
            if (!s.empty()) s += " + ";
            s += v.get_str() + "*t^" + std::to_string(n);
        }
        return s;
    }
};

// Representation c0 + P1(t) + p1 P2(t) + p2 P3(t) of a Gamma0(14) function
// (with the constant folded into part1's degree 0).
struct BasisDecomposition {
    LaurentPoly part1, part2, part3;
    long residual_checked_to = 0;  // exclusive q-exponent bound of the verified window

    bool empty() const { return part1.empty() && part2.empty() && part3.empty(); }

    BasisDecomposition& operator+=(const BasisDecomposition& o) {
        part1 += o.part1;
        part2 += o.part2;
        part3 += o.part3;
        return *this;
    }

    BasisDecomposition scaled(const Rat& k) const {
        BasisDecomposition r;
        r.part1 = part1.scaled(k);
        r.part2 = part2.scaled(k);
        r.part3 = part3.scaled(k);
        r.residual_checked_to = residual_checked_to;
        return r;
    }

    bool is_integral() const { return part1.is_integral() && part2.is_integral() && part3.is_integral(); }

    long max_degree() const {
        long d = std::numeric_limits<long>::min();
        for (auto* p : {&part1, &part2, &part3})
            if (!p->empty()) d = std::max(d, p->max_degree());
        return d;
    }
    long min_degree() const {
        long d = std::numeric_limits<long>::max();
        for (auto* p : {&part1, &part2, &part3})
            if (!p->empty()) d = std::min(d, p->min_degree());
        return d;
    }
};

// Cache of powers of a fixed series; powers of t dominate reconstruction cost.
class PowerCache {
  public:
    explicit PowerCache(QSeries base) : base_(std::move(base)) {
        pows_[0] = QSeries::one(base_.precision() - base_.order());
        pows_[1] = base_;
    }
    const QSeries& operator()(long n) {
        auto it = pows_.find(n);
        if (it != pows_.end()) return it->second;
        if (n > 1) {
            QSeries v = (*this)(n - 1) * base_;
            return pows_.emplace(n, std::move(v)).first->second;
        }
        QSeries v = (*this)(n + 1) * inv_();
        return pows_.emplace(n, std::move(v)).first->second;
    }

  private:
    const QSeries& inv_() {
        if (inv_cache_.precision() == 0 && inv_cache_.is_zero()) inv_cache_ = base_.invert();
        return inv_cache_;
    }
    QSeries base_;
    QSeries inv_cache_;
    std::map<long, QSeries> pows_;
};

inline QSeries eval_poly_in(const LaurentPoly& p, PowerCache& tp, long prec) {
    QSeries out = QSeries::zero(prec);
    for (auto& [n, v] : p.c) out = out + tp(n).scale(v).truncate(prec);
    return out;
}

// part1(t) + p1 * part2(t) + p2 * part3(t), truncated to prec. Terms whose
// t-degree starts beyond the window contribute nothing and are skipped, so a
// decomposition with degrees past the window still reconstructs exactly on it.
inline QSeries reconstruct(const BasisDecomposition& d, const TBasis& basis, bool mirrored, long prec) {
    PowerCache tp((mirrored ? basis.tbar : basis.t).truncate(prec + 2));
    const QSeries P1 = (mirrored ? basis.p1bar : basis.p1).truncate(prec + 2);
    const QSeries P2 = (mirrored ? basis.p2bar : basis.p2).truncate(prec + 2);
    auto clip = [&](const LaurentPoly& p, long start_shift) {
        LaurentPoly q;
        for (auto& [n, v] : p.c) {
            long start = (mirrored ? 2 * n : n) + start_shift;
            if (start < prec) q.c.emplace(n, v);
        }
        return q;
    };
    QSeries out = eval_poly_in(clip(d.part1, 0), tp, prec);
    out = out + P1 * eval_poly_in(clip(d.part2, mirrored ? -1 : 1), tp, prec + 2);
    out = out + P2 * eval_poly_in(clip(d.part3, -1), tp, prec + 2);
    return out.truncate(prec);
}

// ---------------------------------------------------------------------------
// Exact decomposition by Gaussian elimination on q-coefficients
// ---------------------------------------------------------------------------

struct DecomposeOptions {
    long deg_min = 0;           // lowest t-degree column in every part
    long deg_max = -1;          // highest t-degree column; -1 = derive from window
    bool mirrored = false;      // use {tbar, p1bar, p2bar}
    bool require_integral = false;
};

// Solve target = part1(t) + p1 part2(t) + p2 part3(t) exactly on the joint
// window, matching q-coefficients from the lowest exponent up. The system is
// overdetermined; rows beyond the rank must be satisfied exactly or
// NonzeroResidual is thrown. Rank deficiency throws SingularSystem. The
// window must extend past the highest included t-degree, otherwise the
// lowest omitted column could absorb part of the target.
inline BasisDecomposition decompose(const QSeries& target, const TBasis& basis, DecomposeOptions opt = {}) {
    long prec = std::min(target.precision(), basis.precision);
    const QSeries t = (opt.mirrored ? basis.tbar : basis.t).truncate(prec + 2);
    const QSeries p1 = (opt.mirrored ? basis.p1bar : basis.p1).truncate(prec + 2);
    const QSeries p2 = (opt.mirrored ? basis.p2bar : basis.p2).truncate(prec + 2);

    if (!target.is_zero()) {
        long lo_t = target.order();
        if (lo_t - 1 < opt.deg_min) opt.deg_min = lo_t - 1;
    }
    if (opt.deg_max < 0) {
        // 3 unknowns per degree; leave slack so the system stays overdetermined.
        long window = prec - std::min<long>(opt.deg_min - 1, target.is_zero() ? 0 : target.order());
        opt.deg_max = std::max<long>(opt.deg_min, window / 3 - 4);
    }

    PowerCache tp(t);
    struct Column {
        int part;  // 1, 2, 3
        long deg;
        QSeries series;
    };
    std::vector<Column> cols;
    for (long n = opt.deg_min; n <= opt.deg_max; ++n) cols.push_back({1, n, tp(n).truncate(prec)});
    for (long n = opt.deg_min; n <= opt.deg_max; ++n) cols.push_back({2, n, (p1 * tp(n)).truncate(prec)});
    for (long n = opt.deg_min; n <= opt.deg_max; ++n) cols.push_back({3, n, (p2 * tp(n)).truncate(prec)});

    // negative t-powers carry slightly less precision than the basis; the
    // solve window is the joint one
    for (auto& col : cols) prec = std::min(prec, col.series.precision());
    long lo = target.is_zero() ? prec : target.order();
    for (auto& col : cols) lo = std::min(lo, col.series.is_zero() ? prec : col.series.order());
    const long rows = prec - lo;
    const long ncol = static_cast<long>(cols.size());
    if (rows < ncol)
        throw SingularSystem("decompose: window of " + std::to_string(rows) + " rows cannot determine " +
                             std::to_string(ncol) + " columns");

    std::vector<std::vector<Rat>> M(static_cast<std::size_t>(rows));
    for (long i = 0; i < rows; ++i) {
        auto& row = M[static_cast<std::size_t>(i)];
        row.resize(static_cast<std::size_t>(ncol) + 1);
        for (long j = 0; j < ncol; ++j) row[static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j)].series.at(lo + i);
        row[static_cast<std::size_t>(ncol)] = target.at(lo + i);
    }

    std::vector<long> pivot_of_col(static_cast<std::size_t>(ncol), -1);
    long rank = 0;
    for (long c = 0; c < ncol && rank < rows; ++c) {
        long pr = -1;
        for (long i = rank; i < rows; ++i)
            if (M[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(M[static_cast<std::size_t>(rank)], M[static_cast<std::size_t>(pr)]);
        Rat pv = M[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
        for (auto& x : M[static_cast<std::size_t>(rank)]) x /= pv;
        for (long i = 0; i < rows; ++i) {
            if (i == rank) continue;
            Rat f = M[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            if (f == 0) continue;
            auto& ri = M[static_cast<std::size_t>(i)];
            auto& rr = M[static_cast<std::size_t>(rank)];
            for (long j = c; j <= ncol; ++j)
                ri[static_cast<std::size_t>(j)] -= f * rr[static_cast<std::size_t>(j)];
        }
        pivot_of_col[static_cast<std::size_t>(c)] = rank;
        ++rank;
    }
    for (long c = 0; c < ncol; ++c)
        if (pivot_of_col[static_cast<std::size_t>(c)] < 0)
            throw SingularSystem("decompose: dependent column (part " +
                                 std::to_string(cols[static_cast<std::size_t>(c)].part) + ", degree " +
                                 std::to_string(cols[static_cast<std::size_t>(c)].deg) + ")");
    for (long i = rank; i < rows; ++i) {
        if (M[static_cast<std::size_t>(i)][static_cast<std::size_t>(ncol)] != 0)
            throw NonzeroResidual("decompose: residual at q^" + std::to_string(lo + i) + " = " +
                                  M[static_cast<std::size_t>(i)][static_cast<std::size_t>(ncol)].get_str());
    }

    BasisDecomposition out;
    out.residual_checked_to = prec;
    for (long c = 0; c < ncol; ++c) {
        const Rat& v = M[static_cast<std::size_t>(pivot_of_col[static_cast<std::size_t>(c)])][static_cast<std::size_t>(ncol)];
        if (v == 0) continue;
        auto& col = cols[static_cast<std::size_t>(c)];
        (col.part == 1 ? out.part1 : col.part == 2 ? out.part2 : out.part3).set(col.deg, v);
    }
    if (opt.require_integral && !out.is_integral())
        throw IntegralityError("decompose: non-integral coefficient in decomposition");
    return out;
}

}  // namespace etaq
