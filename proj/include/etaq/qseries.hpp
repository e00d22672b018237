#pragma once

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <utility>
#include <vector>

#include "etaq/arith.hpp"

namespace etaq {

// Truncated Laurent series with exact rational coefficients.
//
// A QSeries represents  sum_{n >= lowest} c(n) q^n + O(q^precision).
// Coefficients at exponents >= precision are unknown; coefficients below the
// stored window are exactly zero. Precision is propagated pessimistically:
// every operation documents the bound it guarantees, and reading a
// coefficient at or beyond the precision throws instead of fabricating a zero.
class QSeries {
  public:
    QSeries() : low_(0), prec_(0) {}

    static QSeries zero(long prec) { return QSeries(prec, {}, prec); }

    static QSeries one(long prec) { return monomial(0, 1, prec); }

    static QSeries monomial(long e, Rat coeff, long prec) {
        if (coeff == 0 || e >= prec) return zero(prec);
        return QSeries(e, {std::move(coeff)}, prec);
    }

    QSeries(long low, std::vector<Rat> coeffs, long prec) : low_(low), prec_(prec), c_(std::move(coeffs)) {
        normalize();
    }

    long precision() const { return prec_; }
    bool is_zero() const { return c_.empty(); }
    std::size_t stored_terms() const { return c_.size(); }

    // Exponent of the first nonzero coefficient. Undefined question for the
    // zero series, which throws.
    long order() const {
        if (c_.empty()) throw ZeroLeadingCoefficient("order(): series is zero on its window");
        return low_;
    }

    const Rat& leading_coefficient() const {
        if (c_.empty()) throw ZeroLeadingCoefficient("leading_coefficient(): zero series");
        return c_.front();
    }

    // Coefficient of q^e. Below the window the coefficient is exactly zero;
    // at or beyond the precision it is unknown and asking for it is a bug.
    const Rat& at(long e) const {
        if (e >= prec_)
            throw PrecisionError("coefficient at q^" + std::to_string(e) + " is beyond precision " +
                                 std::to_string(prec_));
        if (e < low_ || e >= low_ + static_cast<long>(c_.size())) return zero_rat();
        return c_[static_cast<std::size_t>(e - low_)];
    }

    // precision = min of operands' precisions.
    friend QSeries operator+(const QSeries& a, const QSeries& b) {
        long prec = std::min(a.prec_, b.prec_);
        long lo = std::min(a.window_low(prec), b.window_low(prec));
        if (lo >= prec) return zero(prec);
        std::vector<Rat> c(static_cast<std::size_t>(prec - lo));
        a.add_into(c, lo, prec, false);
        b.add_into(c, lo, prec, false);
        return QSeries(lo, std::move(c), prec);
    }

    friend QSeries operator-(const QSeries& a, const QSeries& b) {
        long prec = std::min(a.prec_, b.prec_);
        long lo = std::min(a.window_low(prec), b.window_low(prec));
        if (lo >= prec) return zero(prec);
        std::vector<Rat> c(static_cast<std::size_t>(prec - lo));
        a.add_into(c, lo, prec, false);
        b.add_into(c, lo, prec, true);
        return QSeries(lo, std::move(c), prec);
    }

    QSeries operator-() const {
        std::vector<Rat> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
        return QSeries(low_, std::move(c), prec_);
    }

    // Cauchy product; precision = min(a.prec + ord b, b.prec + ord a).
    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        if (a.is_zero() || b.is_zero()) {
            long prec = a.is_zero() ? (b.is_zero() ? std::min(a.prec_ + b.prec_, a.prec_ + b.prec_)
                                                   : a.prec_ + b.order())
                                    : b.prec_ + a.order();
            return zero(prec);
        }
        long prec = std::min(a.prec_ + b.low_, b.prec_ + a.low_);
        long lo = a.low_ + b.low_;
        if (lo >= prec) return zero(prec);
        std::vector<Rat> c(static_cast<std::size_t>(prec - lo));
        const std::size_t na = a.c_.size(), nb = b.c_.size();
        for (std::size_t i = 0; i < na; ++i) {
            const Rat& ai = a.c_[i];
            if (ai == 0) continue;
            long base = a.low_ + static_cast<long>(i) + b.low_ - lo;
            std::size_t jmax = std::min<std::size_t>(nb, static_cast<std::size_t>(std::max<long>(
                                                             0, prec - lo - base)));
            for (std::size_t j = 0; j < jmax; ++j) {
                if (b.c_[j] != 0) c[static_cast<std::size_t>(base) + j] += ai * b.c_[j];
            }
        }
        return QSeries(lo, std::move(c), prec);
    }

    QSeries scale(const Rat& k) const {
        if (k == 0) return zero(prec_);
        std::vector<Rat> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * k;
        return QSeries(low_, std::move(c), prec_);
    }

    // Multiply by q^e.
    QSeries shift(long e) const { return QSeries(low_ + e, c_, prec_ + e); }

    // Two-sided inverse to joint precision. With ord a = l and relative
    // window w = prec - l, the inverse carries window [-l, w - l),
    // i.e. precision prec - 2l.
    QSeries invert() const {
        if (c_.empty()) throw ZeroLeadingCoefficient("invert(): zero leading coefficient");
        long l = low_;
        long relp = prec_ - l;
        std::vector<Rat> b(static_cast<std::size_t>(relp));
        const Rat& a0 = c_[0];
        b[0] = 1 / a0;
        for (long n = 1; n < relp; ++n) {
            Rat s = 0;
            long jmax = std::min<long>(n, static_cast<long>(c_.size()) - 1);
            for (long j = 1; j <= jmax; ++j) {
                if (c_[static_cast<std::size_t>(j)] != 0)
                    s += c_[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(n - j)];
            }
            b[static_cast<std::size_t>(n)] = -s / a0;
        }
        return QSeries(-l, std::move(b), prec_ - 2 * l);
    }

    // a^k by binary exponentiation; k < 0 routes through invert().
    // Precision: prec + (k-1) * ord for k >= 1; relative window preserved.
    QSeries pow(long k) const {
        if (k == 0) {
            if (c_.empty()) return one(prec_);
            return one(prec_ - low_);
        }
        if (k < 0) return invert().pow(-k);
        const QSeries* base = this;
        QSeries acc;
        bool have = false;
        QSeries sq;
        unsigned long kk = static_cast<unsigned long>(k);
        while (true) {
            if (kk & 1) {
                acc = have ? acc * (*base) : *base;
                have = true;
            }
            kk >>= 1;
            if (kk == 0) break;
            sq = (*base) * (*base);
            base = &sq;
        }
        return acc;
    }

    // a(q^m): exponent n -> m n; precision scales to m * precision.
    QSeries substitute(long m) const {
        if (m < 1) throw std::invalid_argument("substitute: m must be >= 1");
        if (m == 1) return *this;
        if (c_.empty()) return zero(prec_ * m);
        std::vector<Rat> c(static_cast<std::size_t>((c_.size() - 1) * static_cast<std::size_t>(m) + 1));
        for (std::size_t i = 0; i < c_.size(); ++i) c[i * static_cast<std::size_t>(m)] = c_[i];
        return QSeries(low_ * m, std::move(c), prec_ * m);
    }

    // Coefficient-level U_m: result coefficient at n is the coefficient at
    // m n. Precision ceil(prec / m).
    QSeries u_operator(long m) const {
        if (m < 1) throw std::invalid_argument("u_operator: m must be >= 1");
        if (m == 1) return *this;
        long lo = div_ceil(low_, m);
        long prec = div_ceil(prec_, m);
        if (c_.empty() || lo >= prec) return zero(prec);
        std::vector<Rat> c(static_cast<std::size_t>(prec - lo));
        for (long n = lo; n < prec; ++n) {
            long e = n * m;
            if (e >= low_ && e < low_ + static_cast<long>(c_.size()))
                c[static_cast<std::size_t>(n - lo)] = c_[static_cast<std::size_t>(e - low_)];
        }
        return QSeries(lo, std::move(c), prec);
    }

    QSeries truncate(long prec) const {
        if (prec >= prec_) return *this;
        std::vector<Rat> c;
        if (low_ < prec) {
            std::size_t n = static_cast<std::size_t>(std::min<long>(prec - low_, static_cast<long>(c_.size())));
            c.assign(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n));
        }
        return QSeries(low_, std::move(c), prec);
    }

    bool is_integral(long* first_bad = nullptr) const {
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (!etaq::is_integral(c_[i])) {
                if (first_bad) *first_bad = low_ + static_cast<long>(i);
                return false;
            }
        }
        return true;
    }

    void assert_integral(const char* what = "series") const {
        long e;
        if (!is_integral(&e))
            throw IntegralityError(std::string(what) + ": non-integral coefficient at q^" + std::to_string(e));
    }

    struct Mismatch {
        long exponent;
        Rat lhs, rhs;
    };

    // Compare on the joint known window [min(ord), min(prec)).
    static std::optional<Mismatch> first_difference(const QSeries& a, const QSeries& b) {
        long prec = std::min(a.prec_, b.prec_);
        long lo = std::min(a.window_low(prec), b.window_low(prec));
        for (long e = lo; e < prec; ++e) {
            const Rat& x = a.at(e);
            const Rat& y = b.at(e);
            if (x != y) return Mismatch{e, x, y};
        }
        return std::nullopt;
    }

    static bool agree(const QSeries& a, const QSeries& b) { return !first_difference(a, b).has_value(); }

    // CSV dump: "# precision=N" header, then "exponent,numerator,denominator"
    // with ascending exponents.
    void dump_csv(std::ostream& os, std::optional<long> prefactor24 = std::nullopt) const {
        os << "# precision=" << prec_ << "\n";
        if (prefactor24) os << "# prefactor24=" << *prefactor24 << "\n";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            os << (low_ + static_cast<long>(i)) << "," << c_[i].get_num() << "," << c_[i].get_den() << "\n";
        }
    }

    static QSeries parse_csv(std::istream& is) {
        std::string line;
        long prec = 0;
        bool have_prec = false;
        long low = 0;
        std::vector<Rat> c;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            if (line[0] == '#') {
                auto p = line.find("precision=");
                if (p != std::string::npos) {
                    prec = std::stol(line.substr(p + 10));
                    have_prec = true;
                }
                continue;
            }
            std::istringstream ls(line);
            std::string se, sn, sd;
            if (!std::getline(ls, se, ',') || !std::getline(ls, sn, ',') || !std::getline(ls, sd))
                throw ParseError("bad CSV coefficient line: " + line, 0);
            long e = std::stol(se);
            if (c.empty()) low = e;
            while (low + static_cast<long>(c.size()) < e) c.emplace_back(0);
            c.emplace_back(ratio(Int(sn), Int(sd)));
        }
        if (!have_prec) throw ParseError("missing '# precision=' header", 0);
        return QSeries(low, std::move(c), prec);
    }

  private:
    long low_;
    long prec_;
    std::vector<Rat> c_;

    static const Rat& zero_rat() {
        static const Rat z(0);
        return z;
    }

    long window_low(long prec) const { return c_.empty() ? prec : low_; }

    void add_into(std::vector<Rat>& c, long lo, long prec, bool negate) const {
        for (std::size_t i = 0; i < c_.size(); ++i) {
            long e = low_ + static_cast<long>(i);
            if (e < lo || e >= prec) continue;
            if (negate)
                c[static_cast<std::size_t>(e - lo)] -= c_[i];
            else
                c[static_cast<std::size_t>(e - lo)] += c_[i];
        }
    }

    void normalize() {
        std::size_t i = 0;
        while (i < c_.size() && c_[i] == 0) ++i;
        if (i > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(i));
            low_ += static_cast<long>(i);
        }
        if (low_ + static_cast<long>(c_.size()) > prec_) {
            if (low_ >= prec_)
                c_.clear();
            else
                c_.resize(static_cast<std::size_t>(prec_ - low_));
            // re-trim in case truncation exposed leading zeros (cannot happen
            // for front, but trailing zeros after resize are harmless)
        }
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
        if (c_.empty()) low_ = prec_;
    }
};

namespace detail {

// Sparse signed factor prod_j (1 - q^{delta j}) via the pentagonal number
// theorem: exponents delta*k(3k-1)/2 and delta*k(3k+1)/2 with sign (-1)^k.
struct SparseFactor {
    std::vector<std::pair<long, int>> terms;  // (exponent, +-1), ascending
};

inline SparseFactor pentagonal_factor(long delta, long prec) {
    SparseFactor f;
    f.terms.emplace_back(0, 1);
    for (long k = 1;; ++k) {
        long e1 = delta * (k * (3 * k - 1) / 2);
        long e2 = delta * (k * (3 * k + 1) / 2);
        int s = (k % 2 == 0) ? 1 : -1;
        bool any = false;
        if (e1 < prec) {
            f.terms.emplace_back(e1, s);
            any = true;
        }
        if (e2 < prec) {
            f.terms.emplace_back(e2, s);
            any = true;
        }
        if (!any) break;
    }
    std::sort(f.terms.begin(), f.terms.end());
    return f;
}

// c <- c * f on a window of length n (dense coefficients, exponent offset
// irrelevant since f has exponent 0 leading term).
inline void mul_sparse(std::vector<Rat>& c, const SparseFactor& f) {
    const long n = static_cast<long>(c.size());
    std::vector<Rat> out(static_cast<std::size_t>(n));
    for (auto [e, s] : f.terms) {
        if (s > 0) {
            for (long i = 0; i + e < n; ++i)
                if (c[static_cast<std::size_t>(i)] != 0) out[static_cast<std::size_t>(i + e)] += c[static_cast<std::size_t>(i)];
        } else {
            for (long i = 0; i + e < n; ++i)
                if (c[static_cast<std::size_t>(i)] != 0) out[static_cast<std::size_t>(i + e)] -= c[static_cast<std::size_t>(i)];
        }
    }
    c = std::move(out);
}

// c <- c / f (leading term of f is q^0 with coefficient 1).
inline void div_sparse(std::vector<Rat>& c, const SparseFactor& f) {
    const long n = static_cast<long>(c.size());
    for (long i = 0; i < n; ++i) {
        Rat s = 0;
        for (auto [e, sg] : f.terms) {
            if (e == 0) continue;
            if (e > i) break;
            if (c[static_cast<std::size_t>(i - e)] != 0) {
                if (sg > 0)
                    s += c[static_cast<std::size_t>(i - e)];
                else
                    s -= c[static_cast<std::size_t>(i - e)];
            }
        }
        c[static_cast<std::size_t>(i)] -= s;
    }
}

}  // namespace detail

// prod_{j>=1} (1 - q^j) to precision N (pentagonal number theorem).
inline QSeries euler_product(long N) {
    if (N < 1) throw std::invalid_argument("euler_product: N >= 1 required");
    auto f = detail::pentagonal_factor(1, N);
    std::vector<Rat> c(static_cast<std::size_t>(N));
    for (auto [e, s] : f.terms) c[static_cast<std::size_t>(e)] = s;
    return QSeries(0, std::move(c), N);
}

inline QSeries add(const QSeries& a, const QSeries& b) { return a + b; }
inline QSeries mul(const QSeries& a, const QSeries& b) { return a * b; }
inline QSeries invert(const QSeries& a) { return a.invert(); }
inline QSeries pow(const QSeries& a, long k) { return a.pow(k); }
inline QSeries substitute(const QSeries& a, long m) { return a.substitute(m); }
inline QSeries u_operator(const QSeries& a, long m) { return a.u_operator(m); }

}  // namespace etaq
