#include <catch2/catch_amalgamated.hpp>

#include "etaq/congruence.hpp"
#include "etaq/numeric.hpp"

using namespace etaq;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-12, std::abs(b)); }

}  // namespace

TEST_CASE("eval_eta at i against the gamma-function closed form") {
    // eta(i) = Gamma(1/4) / (2 pi^{3/4})
    double expect = std::tgamma(0.25) / (2.0 * std::pow(M_PI, 0.75));
    cplx v = eval_eta_series(cplx(0, 1));
    CHECK(std::abs(v.imag()) < 1e-14);
    CHECK(std::abs(v.real() - expect) < 1e-13);
    CHECK(rel(eval_eta(cplx(0, 1)), v) < 1e-13);
}

TEST_CASE("translation and inversion laws of eta") {
    for (double x : {-0.3, 0.11, 0.42}) {
        for (double y : {0.6, 1.1}) {
            cplx tau(x, y);
            CHECK(rel(eval_eta_series(tau + 1.0), std::exp(cplx(0, M_PI / 12)) * eval_eta_series(tau)) < 1e-12);
            cplx lhs = eval_eta(-1.0 / tau);
            cplx rhs = std::sqrt(cplx(0, -1) * tau) * eval_eta_series(tau);
            CHECK(rel(lhs, rhs) < 1e-12);
        }
    }
}

TEST_CASE("reduced evaluation matches the series where both apply, and survives tiny Im") {
    cplx tau(0.2, 0.8);
    CHECK(rel(eval_eta(tau), eval_eta_series(tau)) < 1e-13);
    // near the real axis the series is useless but the law pins the value
    cplx low(0.125, 0.004);
    cplx via_law = std::sqrt(cplx(0, -1) * low) * eval_eta(low);  // = eta(-1/low)
    CHECK(rel(eval_eta(-1.0 / low), via_law) < 1e-10);
}

TEST_CASE("eta multiplier law on 50 seeded SL2(Z) matrices") {
    NumericReport rep = check_eta_multiplier_law(424243, 50, 1e-10);
    INFO(rep.detail);
    CHECK(rep.ok);
    CHECK(rep.max_dev < 1e-10);
}

TEST_CASE("vector transform laws at seeded samples") {
    VectorTransformData data;
    data.f1 = cpsi41_coefficients(420).values;
    auto pr = cpsi40_42_coefficients(420);
    data.f0 = std::move(pr.first.values);
    data.f2 = std::move(pr.second.values);

    auto samples = sample_points(20140907, 5);
    NumericReport rep = check_vector_transform(data, samples, 1e-8);
    INFO(rep.detail);
    CHECK(rep.ok);
    CHECK(rep.tail_bound < 1e-9);

    // two-sided: doubling y must keep every identity inside tolerance
    std::vector<UpperHalfPoint> doubled;
    for (auto& p : samples) doubled.push_back({p.x, 2 * p.y});
    NumericReport rep2 = check_vector_transform(data, doubled, 1e-8);
    CHECK(rep2.ok);

    // convergence: doubling the coefficient supply moves nothing
    cplx tau(0.13, 1.1);
    VectorTransformData twice;
    twice.f1 = cpsi41_coefficients(840).values;
    auto pr2 = cpsi40_42_coefficients(840);
    twice.f0 = std::move(pr2.first.values);
    twice.f2 = std::move(pr2.second.values);
    auto a = eval_family_sum(data.f1, tau, 5);
    auto b = eval_family_sum(twice.f1, tau, 5);
    CHECK(std::abs(a.value - b.value) < 1e-12);
}

TEST_CASE("T-matrix diagonal equals the printed radicals") {
    // e^{2 pi i 8/24}, e^{2 pi i 5/24}, e^{-2 pi i 4/24} against
    // (-1+sqrt(3)i)/2, (sqrt6-sqrt2)/4 + (sqrt6+sqrt2)/4 i, (1-sqrt(3)i)/2
    cplx t0 = std::polar(1.0, 2 * M_PI * 8 / 24.0);
    cplx t1 = std::polar(1.0, 2 * M_PI * 5 / 24.0);
    cplx t2 = std::polar(1.0, -2 * M_PI * 4 / 24.0);
    CHECK(std::abs(t0 - cplx(-0.5, std::sqrt(3) / 2)) < 1e-15);
    CHECK(std::abs(t1 - cplx((std::sqrt(6.0) - std::sqrt(2.0)) / 4, (std::sqrt(6.0) + std::sqrt(2.0)) / 4)) <
          1e-15);
    CHECK(std::abs(t2 - cplx(0.5, -std::sqrt(3) / 2)) < 1e-15);
}

TEST_CASE("commutation and involution checks across the Atkin-Lehner bridge") {
    static U7Tables tables(derive_recurrence(420));
    CommutationData cd;
    cd.aprime_series = expand_folded(eq_Aprime(), 280);
    LKOptions opt;
    opt.alpha_max = 2;
    opt.window = 64;
    auto Ls = l_sequence(tables, opt);
    auto Ks = k_sequence(tables, opt);
    for (int i = 0; i < 2; ++i)
        cd.pairs.emplace_back(Ls[static_cast<std::size_t>(i)].dec, Ks[static_cast<std::size_t>(i)].series);

    auto samples = sample_points(20140907, 5);
    NumericReport rep = check_commutation_and_involution(cd, samples, 1e-8);
    INFO(rep.detail);
    CHECK(rep.ok);

    std::vector<UpperHalfPoint> doubled;
    for (auto& p : samples) doubled.push_back({p.x, 2 * p.y});
    NumericReport rep2 = check_commutation_and_involution(cd, doubled, 1e-8);
    CHECK(rep2.ok);
}

TEST_CASE("raw series evaluation refuses points below the convergence floor") {
    CHECK_THROWS_AS(eval_eta_series(cplx(0.1, 0.01)), ConvergenceBudgetExceeded);
    QSeries s = expand_folded(eq_Aprime(), 40);
    CHECK_THROWS_AS(eval_qseries(s, cplx(0.1, 0.01)), ConvergenceBudgetExceeded);
}
