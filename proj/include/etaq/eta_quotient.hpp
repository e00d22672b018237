#pragma once

#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "etaq/qseries.hpp"

namespace etaq {

// Symbolic finite product  prod_{delta | N} eta(delta tau)^{r_delta}.
// The q-expansion is q^{prefactor24/24} * core where core is the pure
// product of (1 - q^{delta j}) powers with integer exponents.
struct EtaQuotient {
    std::map<long, long> exponents;  // delta -> r_delta, r_delta != 0
    long declared_level = 1;         // N, every delta divides N

    EtaQuotient() = default;

    EtaQuotient(std::map<long, long> exps, long level) : exponents(std::move(exps)), declared_level(level) {
        for (auto it = exponents.begin(); it != exponents.end();) {
            if (it->second == 0) {
                it = exponents.erase(it);
                continue;
            }
            if (it->first < 1) throw std::invalid_argument("eta level must be positive");
            if (declared_level % it->first != 0)
                throw std::invalid_argument("eta level " + std::to_string(it->first) +
                                            " does not divide declared level " + std::to_string(declared_level));
            ++it;
        }
    }

    // weight = (1/2) sum r_delta
    Rat weight() const {
        long s = 0;
        for (auto& [d, r] : exponents) s += r;
        return ratio(s, 2);
    }

    // sum delta r_delta, the q-prefactor exponent in units of 1/24.
    long prefactor24() const {
        long s = 0;
        for (auto& [d, r] : exponents) s += d * r;
        return s;
    }

    EtaQuotient inverse() const {
        std::map<long, long> e;
        for (auto& [d, r] : exponents) e[d] = -r;
        return EtaQuotient(std::move(e), declared_level);
    }

    EtaQuotient times(const EtaQuotient& o) const {
        std::map<long, long> e = exponents;
        for (auto& [d, r] : o.exponents) e[d] += r;
        return EtaQuotient(std::move(e), std::lcm(declared_level, o.declared_level));
    }

    // Text format: comma-separated "level:exponent" tokens, e.g.
    // "2:6,49:7,1:-7,98:-6". Round-trips bit-exactly.
    std::string to_string() const {
        std::string s;
        for (auto& [d, r] : exponents) {
            if (!s.empty()) s += ',';
            s += std::to_string(d) + ':' + std::to_string(r);
        }
        return s;
    }

    static EtaQuotient parse(const std::string& text, std::optional<long> level = std::nullopt) {
        std::map<long, long> exps;
        std::size_t i = 0;
        const std::size_t n = text.size();
        auto read_long = [&](bool allow_sign) -> long {
            std::size_t start = i;
            if (allow_sign && i < n && (text[i] == '-' || text[i] == '+')) ++i;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
                throw ParseError("expected integer", start);
            return std::stol(text.substr(start, i - start));
        };
        if (n == 0) return EtaQuotient({}, level.value_or(1));
        while (true) {
            long d = read_long(false);
            if (i >= n || text[i] != ':') throw ParseError("expected ':' after level", i);
            ++i;
            long r = read_long(true);
            if (exps.count(d)) throw ParseError("duplicate level " + std::to_string(d), i);
            if (r != 0) exps[d] = r;
            if (i == n) break;
            if (text[i] != ',') throw ParseError("expected ',' between tokens", i);
            ++i;
        }
        long lev = level.value_or(1);
        if (!level) {
            for (auto& [d, r] : exps) lev = std::lcm(lev, d);
        }
        return EtaQuotient(std::move(exps), lev);
    }
};

// Expand to precision N: returns (prefactor24, core series). The caller owns
// the q^{prefactor24/24}; expand_folded below folds it when it is integral.
inline std::pair<long, QSeries> expand(const EtaQuotient& eq, long N) {
    if (N < 1) throw std::invalid_argument("expand: N >= 1 required");
    std::vector<Rat> c(static_cast<std::size_t>(N));
    c[0] = 1;
    for (auto& [d, r] : eq.exponents) {
        auto f = detail::pentagonal_factor(d, N);
        for (long i = 0; i < std::labs(r); ++i) {
            if (r > 0)
                detail::mul_sparse(c, f);
            else
                detail::div_sparse(c, f);
        }
    }
    return {eq.prefactor24(), QSeries(0, std::move(c), N)};
}

// Full object as an integer-exponent series; requires 24 | prefactor24.
// Result precision is N (absolute).
inline QSeries expand_folded(const EtaQuotient& eq, long N) {
    long pre = eq.prefactor24();
    if (pre % 24 != 0)
        throw PrefactorMismatch("prefactor " + std::to_string(pre) + "/24 is not an integer power of q");
    long sh = pre / 24;
    auto [p, core] = expand(eq, N - sh);
    return core.shift(sh);
}

struct NewmanDiagnostic {
    bool ok = false;
    bool sum_delta_r_mod24 = false;  // sum delta r == 0 (mod 24)
    bool sum_coDelta_r_mod24 = false;  // sum (N/delta) r == 0 (mod 24)
    bool weight_zero = false;
    bool product_square = false;  // prod delta^{r_delta} is a rational square
    std::string describe() const {
        std::string s;
        auto add = [&](bool b, const char* name) {
            if (!b) {
                if (!s.empty()) s += ", ";
                s += name;
            }
        };
        add(sum_delta_r_mod24, "sum delta*r != 0 mod 24");
        add(sum_coDelta_r_mod24, "sum (N/delta)*r != 0 mod 24");
        add(weight_zero, "weight != 0");
        add(product_square, "prod delta^r not a rational square");
        return s.empty() ? "ok" : s;
    }
};

// Criteria for a weight-0 modular function on Gamma0(N).
inline NewmanDiagnostic newman_modularity_check(const EtaQuotient& eq) {
    NewmanDiagnostic d;
    long s1 = 0, s2 = 0;
    const long N = eq.declared_level;
    for (auto& [del, r] : eq.exponents) {
        s1 += del * r;
        s2 += (N / del) * r;
    }
    d.sum_delta_r_mod24 = (s1 % 24 == 0);
    d.sum_coDelta_r_mod24 = (s2 % 24 == 0);
    d.weight_zero = (eq.weight() == 0);
    // prod delta^{r} is a square iff every prime occurs to an even power.
    std::map<long, long> primes;
    for (auto& [del, r] : eq.exponents) {
        long m = del;
        for (long p = 2; p * p <= m; ++p) {
            while (m % p == 0) {
                primes[p] += r;
                m /= p;
            }
        }
        if (m > 1) primes[m] += r;
    }
    d.product_square = true;
    for (auto& [p, e] : primes)
        if (e % 2 != 0) d.product_square = false;
    d.ok = d.sum_delta_r_mod24 && d.sum_coDelta_r_mod24 && d.weight_zero && d.product_square;
    return d;
}

// Ligozat order of the quotient at the cusp with denominator c | N, in
// local-parameter units: (N / (24 gcd(c^2, N))) * sum gcd(c, delta)^2 r / delta.
inline Rat ligozat_order_at_cusp(const EtaQuotient& eq, long c) {
    const long N = eq.declared_level;
    if (c < 1 || N % c != 0) throw std::invalid_argument("cusp denominator must divide N");
    Rat s = 0;
    for (auto& [del, r] : eq.exponents) {
        long g = std::gcd(c, del);
        s += ratio(g * g * r, del);
    }
    return s * ratio(N, 24 * std::gcd(c * c, N));
}

// One row per divisor c of N; representative a/c with a = 1 (the cusp with
// c = N is the cusp at infinity). multiplicity = number of Gamma0(N) cusp
// classes sharing this denominator (phi(gcd(c, N/c))); the eta-quotient
// order is constant across them.
struct CuspOrderTable {
    struct Row {
        long c = 1;
        Rat order;
        long multiplicity = 1;
    };
    long level = 1;
    std::vector<Row> rows;
};

inline long euler_phi(long n) {
    long r = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

inline CuspOrderTable cusp_orders(const EtaQuotient& eq) {
    CuspOrderTable t;
    const long N = eq.declared_level;
    t.level = N;
    for (long c = 1; c <= N; ++c) {
        if (N % c != 0) continue;
        CuspOrderTable::Row row;
        row.c = c;
        row.order = ligozat_order_at_cusp(eq, c);
        row.multiplicity = euler_phi(std::gcd(c, N / c));
        t.rows.push_back(std::move(row));
    }
    return t;
}

// Number of q-coefficients whose vanishing forces a weight-0 function with
// the given cusp-order lower bounds to vanish identically:
// 1 + sum over cusps (with multiplicity) of max(0, -floor(order)).
inline long valence_bound(const CuspOrderTable& table) {
    Rat total = 0;
    for (auto& row : table.rows) {
        if (row.order < 0) total += Rat(row.multiplicity) * (-row.order);
    }
    // round up to an integer count
    Int num = total.get_num(), den = total.get_den();
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q.get_si() + 1;
}

// Pointwise minimum of cusp orders across several quotients on one level;
// lower bound table for a sum of eta quotients.
inline CuspOrderTable min_cusp_orders(const std::vector<EtaQuotient>& qs) {
    if (qs.empty()) throw std::invalid_argument("min_cusp_orders: empty");
    CuspOrderTable acc = cusp_orders(qs[0]);
    for (std::size_t i = 1; i < qs.size(); ++i) {
        CuspOrderTable t = cusp_orders(qs[i]);
        if (t.level != acc.level) throw std::invalid_argument("min_cusp_orders: level mismatch");
        for (std::size_t j = 0; j < acc.rows.size(); ++j)
            acc.rows[j].order = std::min(acc.rows[j].order, t.rows[j].order);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Dedekind eta multiplier
// ---------------------------------------------------------------------------

struct SL2 {
    long a = 1, b = 0, c = 0, d = 1;
    long det() const { return a * d - b * c; }
};

namespace detail {

// Dedekind sum s(d, c) = sum_{n=1}^{c-1} ((n/c)) ((nd/c)), c > 0.
inline Rat dedekind_sum(long d, long c) {
    auto saw = [](long num, long den) -> Rat {
        long m = ((num % den) + den) % den;
        if (m == 0) return Rat(0);
        return ratio(m, den) - ratio(1, 2);
    };
    Rat s = 0;
    for (long n = 1; n < c; ++n) s += saw(n, c) * saw(n * d, c);
    return s;
}

}  // namespace detail

// The exact multiplier nu_eta(M) = e^{pi i k / 12} with
// eta(M tau) = nu_eta(M) (c tau + d)^{1/2} eta(tau) (principal branch).
// Returns k mod 24.
inline int eta_multiplier_k24(const SL2& M) {
    if (M.det() != 1) throw NotUnimodular("eta_multiplier: det != 1");
    if (M.c == 0) {
        // M = +-(1, b; 0, 1). For the minus sign, (c tau + d)^{1/2} = i.
        long k = (M.a == 1) ? M.b : (-M.b - 6);
        return static_cast<int>(((k % 24) + 24) % 24);
    }
    if (M.c < 0) {
        // nu(M) = i * nu(-M): (c tau + d)^{1/2} = i (-c tau - d)^{1/2} for c < 0.
        SL2 neg{-M.a, -M.b, -M.c, -M.d};
        return (eta_multiplier_k24(neg) + 6) % 24;
    }
    // c > 0: k = (a + d)/c - 12 s(d, c) - 3, an integer.
    Rat k = ratio(M.a + M.d, M.c) - 12 * detail::dedekind_sum(M.d, M.c) - 3;
    if (!is_integral(k)) throw std::logic_error("eta multiplier exponent not integral");
    long ki = static_cast<long>(k.get_num().get_si());
    return static_cast<int>(((ki % 24) + 24) % 24);
}

// ---------------------------------------------------------------------------
// Atkin-Lehner involutions
// ---------------------------------------------------------------------------

// W_e = (a e, b; c N, d e) with det = e, e || N (e | N and gcd(e, N/e) = 1).
struct AtkinLehnerMatrix {
    long a = 1, b = 0, c = 0, d = 1;
    long e = 1, N = 1;

    AtkinLehnerMatrix() = default;
    AtkinLehnerMatrix(long a_, long b_, long c_, long d_, long e_, long N_)
        : a(a_), b(b_), c(c_), d(d_), e(e_), N(N_) {
        if (e < 1 || N % e != 0 || std::gcd(e, N / e) != 1)
            throw std::invalid_argument("Atkin-Lehner: need e || N");
        if (a * d * e - b * c * (N / e) != 1)
            throw std::invalid_argument("Atkin-Lehner: determinant is not e");
    }

    // Matrix entries ((ae, b), (cN, de)).
    long m00() const { return a * e; }
    long m01() const { return b; }
    long m10() const { return c * N; }
    long m11() const { return d * e; }

    // A canonical W_e when one exists with small entries: solve
    // a d e - b c (N/e) = 1 with c = 1, b = 1.
    static AtkinLehnerMatrix canonical(long e, long N) {
        if (e < 1 || N % e != 0 || std::gcd(e, N / e) != 1)
            throw std::invalid_argument("Atkin-Lehner: need e || N");
        long m = N / e;
        // a d e == 1 (mod m) with b = c = 1: pick d = 1, a = e^{-1} mod m.
        if (m == 1) return AtkinLehnerMatrix(0, -1, 1, 0, e, N);  // the Fricke matrix (0,-1;N,0)
        Int ainv = inv_mod(Int(e), Int(m));
        long a = static_cast<long>(ainv.get_si());
        long d = 1;
        // b = (a d e - 1) / m, c = 1
        long b = (a * d * e - 1) / m;
        return AtkinLehnerMatrix(a, b, 1, d, e, N);
    }
};

struct AtkinLehnerImage {
    EtaQuotient image;   // levels mapped by delta -> e delta / gcd(e, delta)^2
    Rat scalar;          // exact scalar: F | W = scalar * image
    int nu_k24 = 0;      // root-of-unity part exponent (0 or 12 folded into scalar sign)
};

// Symbolic Atkin-Lehner image of a weight-0 quotient. Each eta level maps as
// delta -> e delta / gcd(e, delta)^2; the aggregate scalar is
// prod nu_eta(M_delta)^{r_delta} * prod gcd(e, delta)^{-r_delta/2},
// which for weight 0 must come out as an exact rational (it does for every
// quotient used here; otherwise this throws). The numeric module confirms the
// scalar at sample points.
inline AtkinLehnerImage atkin_lehner_image(const EtaQuotient& eq, const AtkinLehnerMatrix& W) {
    if (eq.weight() != 0) throw NonzeroWeight("atkin_lehner_image: weight must be 0");
    std::map<long, long> img;
    long k24 = 0;              // accumulated nu exponent, mod 24
    std::map<long, Rat> half;  // prime -> exponent of the rational part (may be half-integers)
    for (auto& [t, r] : eq.exponents) {
        if (W.N % t != 0) throw std::invalid_argument("eta level does not divide W.N");
        long delta = std::gcd(W.e, t);
        long nt = (W.e * t) / (delta * delta);
        img[nt] += r;
        // M = (a delta, b t/delta; c N delta/(e t), d e/delta) in SL2(Z)
        SL2 M{W.a * delta, W.b * (t / delta), (W.c * W.N * delta) / (W.e * t), (W.d * W.e) / delta};
        k24 = (k24 + static_cast<long>(eta_multiplier_k24(M)) * r) % 24;
        // ((cN tau + de)/delta)^{r/2} contributes delta^{-r/2}; the tau parts
        // cancel since the total weight is 0.
        long m = delta;
        for (long p = 2; p * p <= m; ++p)
            while (m % p == 0) {
                half[p] += ratio(-r, 2);
                m /= p;
            }
        if (m > 1) half[m] += ratio(-r, 2);
    }
    k24 = ((k24 % 24) + 24) % 24;
    Rat scalar(1);
    if (k24 == 12)
        scalar = -1;
    else if (k24 != 0)
        throw std::logic_error("Atkin-Lehner scalar has a non-real root-of-unity part (k24=" +
                               std::to_string(k24) + ")");
    for (auto& [p, ex] : half) {
        if (!is_integral(ex)) throw std::logic_error("Atkin-Lehner scalar is irrational");
        long e = static_cast<long>(ex.get_num().get_si());
        if (e >= 0)
            scalar *= Rat(pow_int(Int(p), static_cast<unsigned long>(e)));
        else
            scalar /= Rat(pow_int(Int(p), static_cast<unsigned long>(-e)));
    }
    AtkinLehnerImage out;
    out.image = EtaQuotient(std::move(img), W.N);
    out.scalar = scalar;
    out.nu_k24 = static_cast<int>(k24);
    return out;
}

}  // namespace etaq
