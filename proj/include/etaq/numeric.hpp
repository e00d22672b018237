#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "etaq/basis.hpp"
#include "etaq/eta_quotient.hpp"

namespace etaq {

using cplx = std::complex<double>;

struct ConvergenceBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TailTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sample point in the upper half plane. The raw q-series evaluators require
// y >= 0.05 so that |q| <= e^{-0.1 pi}; the reduced eta evaluator has no
// such restriction.
struct UpperHalfPoint {
    double x = 0.0, y = 1.0;
    cplx tau() const { return {x, y}; }
};

inline constexpr double kMinImag = 0.05;

namespace numeric_detail {

inline cplx ipow(cplx z, long n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    cplx r = 1.0;
    while (n) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

}  // namespace numeric_detail

// Dedekind eta by the pentagonal series; error below the first dropped term.
inline cplx eval_eta_series(cplx tau, int max_terms = 64) {
    if (tau.imag() < kMinImag)
        throw ConvergenceBudgetExceeded("eval_eta_series: Im tau < 0.05");
    const cplx q = std::exp(cplx(0, 2 * M_PI) * tau);
    cplx sum = 1.0;
    double qabs = std::abs(q);
    for (int k = 1; k <= max_terms; ++k) {
        long e1 = static_cast<long>(k) * (3L * k - 1) / 2;
        long e2 = static_cast<long>(k) * (3L * k + 1) / 2;
        double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        cplx term = sgn * (numeric_detail::ipow(q, e1) + numeric_detail::ipow(q, e2));
        sum += term;
        if (std::pow(qabs, static_cast<double>(e1)) < 1e-19) break;
        if (k == max_terms) throw ConvergenceBudgetExceeded("eval_eta_series: term budget exhausted");
    }
    return std::exp(cplx(0, 2 * M_PI) * (tau / 24.0)) * sum;
}

// Dedekind eta anywhere in H, by reduction with the classical laws
// eta(tau+1) = e^{i pi/12} eta(tau) and eta(-1/tau) = sqrt(-i tau) eta(tau).
inline cplx eval_eta(cplx tau) {
    cplx factor = 1.0;
    for (int guard = 0; guard < 256; ++guard) {
        double n = std::nearbyint(tau.real());
        if (n != 0.0) {
            tau -= n;
            factor *= std::exp(cplx(0, M_PI * n / 12.0));
        }
        if (std::norm(tau) < 1.0) {
            // eta(z) = sqrt(i/z) eta(-1/z)
            factor *= std::sqrt(cplx(0, 1) / tau);
            tau = -1.0 / tau;
            continue;
        }
        if (tau.imag() >= 0.5) break;
    }
    return factor * eval_eta_series(tau);
}

inline cplx eval_eta_quotient(const EtaQuotient& eq, cplx tau) {
    cplx v = 1.0;
    for (auto& [d, r] : eq.exponents) v *= numeric_detail::ipow(eval_eta(static_cast<double>(d) * tau), r);
    return v;
}

// Direct summation of a QSeries at tau, optionally multiplied by q^{e24/24}.
// Returns the value together with a geometric tail estimate.
struct SeriesValue {
    cplx value{0.0, 0.0};
    double tail_bound = 0.0;
    long terms = 0;
};

inline SeriesValue eval_qseries(const QSeries& s, cplx tau, long e24 = 0) {
    if (tau.imag() < kMinImag) throw ConvergenceBudgetExceeded("eval_qseries: Im tau < 0.05");
    const cplx q = std::exp(cplx(0, 2 * M_PI) * tau);
    const double r = std::abs(q);
    SeriesValue out;
    if (s.is_zero()) return out;
    double last_mag = 0.0;
    cplx qe = numeric_detail::ipow(q, s.order());
    for (long n = s.order(); n < s.precision(); ++n, qe *= q) {
        const Rat& c = s.at(n);
        if (c != 0) {
            cplx term = c.get_d() * qe;
            out.value += term;
            last_mag = std::abs(term);
        }
        ++out.terms;
    }
    out.tail_bound = last_mag * r / (1.0 - r);
    if (e24 != 0) out.value *= std::exp(cplx(0, 2 * M_PI) * (tau * (static_cast<double>(e24) / 24.0)));
    return out;
}

inline SeriesValue eval_family_sum(const std::vector<Int>& coeffs, cplx tau, long e24) {
    if (tau.imag() < kMinImag) throw ConvergenceBudgetExceeded("eval_family_sum: Im tau < 0.05");
    const cplx q = std::exp(cplx(0, 2 * M_PI) * tau);
    const double r = std::abs(q);
    SeriesValue out;
    cplx qe = 1.0;
    double last_mag = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n, qe *= q) {
        cplx term = coeffs[n].get_d() * qe;
        out.value += term;
        last_mag = std::abs(term);
        ++out.terms;
        if (n > 24 && last_mag < 1e-22 * std::abs(out.value)) break;
    }
    out.tail_bound = last_mag * r / (1.0 - r);
    out.value *= std::exp(cplx(0, 2 * M_PI) * (tau * (static_cast<double>(e24) / 24.0)));
    return out;
}

// Value of part1(t) + p1 part2(t) + p2 part3(t) at tau, with t, p1, p2 (or
// their mirrors) evaluated as eta quotients via the reduced evaluator.
inline cplx eval_decomposition(const BasisDecomposition& d, bool mirrored, cplx tau) {
    cplx vt, vp1, vp2;
    if (!mirrored) {
        vt = eval_eta_quotient(eq_t(), tau);
        vp1 = eval_eta_quotient(eq_p1(), tau);
        vp2 = eval_eta_quotient(eq_p2_head(), tau) - vp1;
    } else {
        vt = eval_eta_quotient(eq_tbar(), tau);
        vp1 = eval_eta_quotient(eq_p1bar(), tau);
        vp2 = 8.0 * eval_eta_quotient(eq_p2bar_head(), tau) - vp1;
    }
    auto poly = [&](const LaurentPoly& p) {
        cplx s = 0.0;
        for (auto& [n, v] : p.c) s += v.get_d() * numeric_detail::ipow(vt, n);
        return s;
    };
    return poly(d.part1) + vp1 * poly(d.part2) + vp2 * poly(d.part3);
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct NumericReport {
    std::string check;
    std::vector<UpperHalfPoint> samples;
    double max_dev = 0.0;
    double tolerance = 0.0;
    double tail_bound = 0.0;
    long terms = 0;
    bool ok = false;
    std::string detail;  // first failing clause, if any

    void record(double dev, const char* clause, const UpperHalfPoint& p) {
        if (dev > max_dev) max_dev = dev;
        if (dev > tolerance && detail.empty())
            detail = std::string(clause) + " at tau=(" + std::to_string(p.x) + "," + std::to_string(p.y) +
                     "): dev " + std::to_string(dev);
    }
    void finish() { ok = detail.empty(); }
};

inline std::vector<UpperHalfPoint> sample_points(std::uint64_t seed, int count, double ymin = 0.45,
                                                 double ymax = 0.95, double xspan = 0.35) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-xspan, xspan), uy(ymin, ymax);
    std::vector<UpperHalfPoint> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        double x = ux(rng), y = uy(rng);
        pts.push_back({x, y});
    }
    return pts;
}

// Weight -1/2 transformation of the vector (f_{4,0}, f_{4,1}, f_{4,2}) under
// T = (1,1;0,1) and S = (0,-1;1,0), f_{4,beta} = q^{1/3 - beta^2/8} CPsi_{4,beta}.
// The q-prefactor exponents in 1/24 units are 8, 5, -4.
struct VectorTransformData {
    std::vector<Int> f0, f1, f2;  // cpsi coefficient tables
};

inline NumericReport check_vector_transform(const VectorTransformData& data,
                                            const std::vector<UpperHalfPoint>& samples, double tolerance) {
    NumericReport rep;
    rep.check = "vector_transform";
    rep.samples = samples;
    rep.tolerance = tolerance;
    const long e24[3] = {8, 5, -4};
    const cplx Tdiag[3] = {std::polar(1.0, 2 * M_PI * 8 / 24.0), std::polar(1.0, 2 * M_PI * 5 / 24.0),
                           std::polar(1.0, 2 * M_PI * -4 / 24.0)};
    const double s2 = std::sqrt(2.0);
    const cplx s = (s2 / 4.0) * cplx(1, 1);
    const cplx S[3][3] = {{s, -2.0 * s, s}, {-s, 0.0, s}, {s, 2.0 * s, s}};

    for (auto& p : samples) {
        cplx tau = p.tau();
        const std::vector<Int>* tabs[3] = {&data.f0, &data.f1, &data.f2};
        cplx f[3], fT[3], fS[3];
        for (int b = 0; b < 3; ++b) {
            auto v = eval_family_sum(*tabs[b], tau, e24[b]);
            rep.tail_bound = std::max(rep.tail_bound, v.tail_bound);
            rep.terms = std::max(rep.terms, v.terms);
            f[b] = v.value;
            fT[b] = eval_family_sum(*tabs[b], tau + 1.0, e24[b]).value;
            // weight -1/2 slash: f |_{-1/2} S (tau) = tau^{1/2} f(-1/tau),
            // i.e. (c tau + d)^{-k} with the principal square root
            fS[b] = eval_family_sum(*tabs[b], -1.0 / tau, e24[b]).value * std::sqrt(tau);
        }
        for (int b = 0; b < 3; ++b) {
            double scale = std::max(1.0, std::abs(f[b]));
            rep.record(std::abs(fT[b] - Tdiag[b] * f[b]) / scale, "T-law", p);
        }
        for (int row = 0; row < 3; ++row) {
            cplx rhs = S[row][0] * f[0] + S[row][1] * f[1] + S[row][2] * f[2];
            double scale = std::max(1.0, std::abs(rhs));
            rep.record(std::abs(fS[row] - rhs) / scale, "S-law", p);
        }
        // highlighted consequence: f_{4,1}|S = (sqrt2 (1+i)/4)(f_{4,2} - f_{4,0})
        {
            cplx rhs = s * (f[2] - f[0]);
            rep.record(std::abs(fS[1] - rhs) / std::max(1.0, std::abs(rhs)), "f41|S consequence", p);
        }
        // f_{4,1} against the eta form 4 eta(2 tau)^6 / eta(tau)^7
        {
            cplx etaform = 4.0 * numeric_detail::ipow(eval_eta(2.0 * tau), 6) / numeric_detail::ipow(eval_eta(tau), 7);
            rep.record(std::abs(etaform - f[1]) / std::max(1.0, std::abs(f[1])), "f41 eta form", p);
        }
        // f_{4,2}(2 tau) - f_{4,0}(2 tau) = eta(tau)^6 / eta(2 tau)^7
        {
            cplx lhs = eval_family_sum(data.f2, 2.0 * tau, -4).value - eval_family_sum(data.f0, 2.0 * tau, 8).value;
            cplx rhs = numeric_detail::ipow(eval_eta(tau), 6) / numeric_detail::ipow(eval_eta(2.0 * tau), 7);
            rep.record(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)), "difference eta form", p);
        }
    }
    rep.finish();
    return rep;
}

// Atkin-Lehner bridge checks: (i) A(W tau) = A'(tau); (ii) U_7(A)(W tau) =
// U_7(A')(tau) through the exact decomposition of U_7(A); (iii) L_a(W tau) =
// K_a(tau). W = (50, 1; 98, 2) acts by tau -> (50 tau + 1)/(98 tau + 2); the
// left-hand sides are evaluated with the reduced eta evaluator since W tau
// has tiny imaginary part.
struct CommutationData {
    std::vector<std::pair<BasisDecomposition, QSeries>> pairs;  // (L_a decomposition, K_a series), a = 1..
    QSeries aprime_series;                                      // A' folded series
};

inline NumericReport check_commutation_and_involution(const CommutationData& data,
                                                      const std::vector<UpperHalfPoint>& samples,
                                                      double tolerance) {
    NumericReport rep;
    rep.check = "commutation_and_involution";
    rep.samples = samples;
    rep.tolerance = tolerance;
    for (auto& p : samples) {
        cplx tau = p.tau();
        cplx wtau = (50.0 * tau + 1.0) / (98.0 * tau + 2.0);
        {
            cplx lhs = eval_eta_quotient(eq_A(), wtau);
            auto rhs = eval_qseries(data.aprime_series, tau);
            rep.tail_bound = std::max(rep.tail_bound, rhs.tail_bound);
            rep.terms = std::max(rep.terms, rhs.terms);
            rep.record(std::abs(lhs - rhs.value) / std::max(1.0, std::abs(rhs.value)), "A|W = A'", p);
        }
        for (std::size_t i = 0; i < data.pairs.size(); ++i) {
            cplx lhs = eval_decomposition(data.pairs[i].first, false, wtau);
            auto rhs = eval_qseries(data.pairs[i].second, tau);
            rep.tail_bound = std::max(rep.tail_bound, rhs.tail_bound);
            const char* clause = (i == 0) ? "U7(A)|W = U7(A')" : "L_a|W = K_a";
            rep.record(std::abs(lhs - rhs.value) / std::max(1.0, std::abs(rhs.value)), clause, p);
        }
        {
            // scalar matrices act trivially
            auto direct = eval_qseries(data.aprime_series, tau);
            auto scaled = eval_qseries(data.aprime_series, (2.0 * tau + 0.0) / cplx(2.0));
            rep.record(std::abs(direct.value - scaled.value) / std::max(1.0, std::abs(direct.value)),
                       "scalar matrix identity", p);
        }
    }
    rep.finish();
    return rep;
}

// eta(M tau) = e^{i pi k/12} (c tau + d)^{1/2} eta(tau) for random M in
// SL2(Z), with k from the Dedekind-sum formula.
inline NumericReport check_eta_multiplier_law(std::uint64_t seed, int count, double tolerance) {
    NumericReport rep;
    rep.check = "eta_multiplier_law";
    rep.tolerance = tolerance;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> uc(1, 11), ud(-11, 11);
    std::uniform_real_distribution<double> uy(0.8, 1.4), ux(-0.4, 0.4);
    int done = 0;
    while (done < count) {
        long c = uc(rng), d = ud(rng);
        if (std::gcd(c, std::labs(d)) != 1) continue;
        // extend (c, d) to a determinant-1 matrix: a d - b c = 1 by extended gcd
        long a = 0, b = -1;
        long g0 = d, g1 = c, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
        while (g1 != 0) {
            long qd = g0 / g1;
            std::tie(g0, g1) = std::make_pair(g1, g0 - qd * g1);
            std::tie(x0, x1) = std::make_pair(x1, x0 - qd * x1);
            std::tie(y0, y1) = std::make_pair(y1, y0 - qd * y1);
        }
        if (g0 < 0) {
            g0 = -g0;
            x0 = -x0;
            y0 = -y0;
        }
        if (g0 != 1) continue;
        a = x0;       // a d + y0 c = 1
        b = -y0;      // a d - b c = 1
        if (rng() & 1) {  // also exercise c < 0 via -M
            a = -a;
            b = -b;
            c = -c;
            d = -d;
        }
        SL2 M{a, b, c, d};
        if (M.det() != 1) continue;
        UpperHalfPoint p{ux(rng), uy(rng)};
        cplx tau = p.tau();
        cplx mtau = (static_cast<double>(a) * tau + static_cast<double>(b)) /
                    (static_cast<double>(c) * tau + static_cast<double>(d));
        int k = eta_multiplier_k24(M);
        cplx rhs = std::exp(cplx(0, M_PI * k / 12.0)) *
                   std::sqrt(static_cast<double>(c) * tau + static_cast<double>(d)) * eval_eta(tau);
        cplx lhs = eval_eta(mtau);
        rep.record(std::abs(lhs - rhs) / std::max(1e-3, std::abs(rhs)), "multiplier law", p);
        ++done;
    }
    rep.terms = count;
    rep.finish();
    return rep;
}

}  // namespace etaq
