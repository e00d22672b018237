// Command-line frontend: eta-quotient expansion, appendix identity
// verification, U_7 table derivation, congruence certification, and numeric
// spot checks.
//
// Exit codes: 0 all-pass, 1 verification failure, 2 usage/parse error.
// Progress goes to stderr; stdout carries data only.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "etaq/report.hpp"

namespace {

using namespace etaq;

struct OutputTarget {
    std::string path;  // empty = stdout
    std::ofstream file;
    std::ostream& stream() {
        if (path.empty()) return std::cout;
        if (!file.is_open()) {
            file.open(path, std::ios::binary | std::ios::trunc);
            if (!file) throw std::runtime_error("cannot open output file " + path);
        }
        return file;
    }
};

json to_json_lambda(const LambdaClass& lc) {
    return json{{"beta", lc.beta},
                {"alpha", lc.alpha},
                {"lambda", lc.lambda.get_str()},
                {"modulus", lc.modulus.get_str()}};
}

int cmd_expand(const std::string& spec, long terms, const std::string& format, OutputTarget& out) {
    EtaQuotient eq;
    try {
        eq = EtaQuotient::parse(spec);
    } catch (const ParseError& pe) {
        std::cerr << "error: cannot parse eta quotient: " << pe.what() << "\n  " << spec << "\n  "
                  << std::string(pe.position, ' ') << "^\n";
        return 2;
    }
    auto [pre, core] = expand(eq, terms);
    if (format == "csv") {
        core.dump_csv(out.stream(), pre);
    } else {
        json j{{"eta_quotient", eq.to_string()},
               {"prefactor24", pre},
               {"precision", core.precision()},
               {"coefficients", json::array()}};
        for (long n = core.is_zero() ? core.precision() : core.order(); n < core.precision(); ++n) {
            const Rat& c = core.at(n);
            if (c == 0) continue;
            j["coefficients"].push_back(
                json{{"exponent", n}, {"numerator", c.get_num().get_str()}, {"denominator", c.get_den().get_str()}});
        }
        out.stream() << j.dump(2) << "\n";
    }
    return 0;
}

std::set<int> parse_groups(const std::vector<std::string>& tokens) {
    std::map<std::string, int> roman{{"I", 1}, {"II", 2}, {"III", 3}, {"IV", 4}, {"V", 5}, {"VI", 6}};
    std::set<int> out;
    for (auto& t : tokens) {
        auto it = roman.find(t);
        if (it != roman.end()) {
            out.insert(it->second);
            continue;
        }
        try {
            int g = std::stoi(t);
            if (g < 1 || g > 6) throw std::out_of_range("group");
            out.insert(g);
        } catch (...) {
            throw CLI::ValidationError("--groups", "unknown group '" + t + "' (use I..VI or 1..6)");
        }
    }
    if (out.empty())
        for (int g = 1; g <= 6; ++g) out.insert(g);
    return out;
}

int cmd_verify_appendix(const std::set<int>& groups, long terms, int jobs, const std::string& format,
                        OutputTarget& out) {
    VerifyAppendixOptions opt;
    opt.terms = terms;
    opt.jobs = jobs;
    std::cerr << "verifying appendix groups (" << groups.size() << " of 6) at >= " << terms
              << " coefficients...\n";
    auto verdicts = verify_appendix(groups, opt);
    long okct = 0;
    json arr = json::array();
    for (auto& v : verdicts) {
        if (v.ok) ++okct;
        arr.push_back(to_json(v));
    }
    if (format == "csv") {
        auto& os = out.stream();
        os << "identity,status,terms_verified,bound_used\n";
        for (auto& v : verdicts)
            os << v.id << "," << (v.ok ? "ok" : "mismatch") << "," << v.terms_verified << "," << v.bound_used
               << "\n";
    } else {
        json j{{"check", "appendix"},
               {"groups", json::array()},
               {"floor_terms", terms},
               {"passed", okct},
               {"total", static_cast<long>(verdicts.size())},
               {"identities", arr}};
        for (int g : groups) j["groups"].push_back(g);
        out.stream() << j.dump(2) << "\n";
    }
    std::cerr << okct << "/" << verdicts.size() << " identities ok\n";
    return okct == static_cast<long>(verdicts.size()) ? 0 : 1;
}

// A sweep depth per alpha: full n_max at alpha = 1, at least 10 classes deeper.
long sweep_count(long n_max, int alpha) {
    long n = n_max;
    for (int i = 1; i < alpha; ++i) n /= 49;
    return std::max<long>(n, 10);
}

int cmd_certify(std::vector<int> betas, int alpha_max, long n_max, long user_terms, bool terms_given,
                long seed, OutputTarget& out) {
    if (betas.empty()) betas = {0, 1, 2};
    std::sort(betas.begin(), betas.end());
    betas.erase(std::unique(betas.begin(), betas.end()), betas.end());
    for (int b : betas)
        if (b < 0 || b > 2) throw CLI::ValidationError("--beta", "beta must be 0, 1 or 2");

    // Coefficient budget: the deepest sweep reads index lambda + 7^{2a-1}(n-1);
    // the structural checks need A to required_terms().
    long need = 0;
    for (int beta : betas)
        for (int a = 1; a <= alpha_max; ++a) {
            LambdaClass lam = lambda_class(beta, 2 * a - 1);
            Int top = lam.lambda + lam.modulus * (sweep_count(n_max, a) - 1) + 1;
            need = std::max(need, static_cast<long>(top.get_si()));
        }
    int structural_alpha = std::min(alpha_max, 2);
    long needA = required_terms(structural_alpha, 240, false);
    if (terms_given && user_terms < std::max(need, needA)) {
        std::cerr << "error: --terms " << user_terms << " is under-budgeted for alpha-max " << alpha_max
                  << " and n-max " << n_max << " (need >= " << std::max(need, needA)
                  << " terms); refusing to emit a vacuous certificate\n";
        return 2;
    }
    long supply = std::max(need, terms_given ? user_terms : need);

    std::cerr << "computing coefficient families to " << supply << " terms...\n";
    FamilyCoefficients f41 = cpsi41_coefficients(supply);
    auto [f40, f42] = cpsi40_42_coefficients(supply);
    FamilyCoefficients fphi = cphi4_coefficients(std::min<long>(supply, 3600));

    json bundle{{"generator", "etaq certify"},
                {"config",
                 json{{"betas", betas},
                      {"alpha_max", alpha_max},
                      {"n_max", n_max},
                      {"terms", supply},
                      {"seed", seed}}},
                {"lambdas", json::array()},
                {"sweeps", json::array()},
                {"structural", json::array()},
                {"notes",
                 json::array({"lambda for beta=2 uses the congruence definition 24 n == 4 (mod 7^a); the printed "
                              "closed form (1+5*7^a)/8 is non-integral and (1+5*7^a)/6 matches",
                              "cpsi_{4,2}(n) = cphi4(n); cross-checked against the independent cphi4 generating "
                              "function on the computed overlap"})}};

    try {
        for (int beta : betas)
            for (int a = 1; a <= alpha_max; ++a) bundle["lambdas"].push_back(to_json_lambda(lambda_class(beta, a)));

        for (std::size_t n = 0; n < fphi.size() && n < f42.size(); ++n)
            if (fphi.values[n] != f42.values[n])
                throw CounterexampleFound("cpsi42 != cphi4 at n=" + std::to_string(n));

        for (int beta : betas) {
            const FamilyCoefficients& fam = (beta == 1) ? f41 : (beta == 0) ? f40 : f42;
            for (int a = 1; a <= alpha_max; ++a) {
                long nm = sweep_count(n_max, a);
                std::cerr << "sweep beta=" << beta << " alpha=" << a << " (" << nm << " classes)\n";
                bundle["sweeps"].push_back(to_json(verify_theorem(beta, a, nm, fam)));
            }
        }

        std::cerr << "structural L/K checks to alpha=" << structural_alpha << "...\n";
        RecurrenceTable rec = derive_recurrence(420);
        U7Tables tables(rec);
        LKOptions lopt;
        lopt.alpha_max = structural_alpha;
        lopt.window = 240;
        for (auto& e : l_sequence(tables, lopt)) bundle["structural"].push_back(to_json(e, false));
        for (auto& e : k_sequence(tables, lopt)) bundle["structural"].push_back(to_json(e, true));
        bundle["recurrence"] = recurrence_to_json(rec);
    } catch (const std::exception& ex) {
        std::cerr << "certification FAILED: " << ex.what() << "\n";
        bundle["status"] = "failed";
        bundle["error"] = ex.what();
        out.stream() << bundle.dump(2) << "\n";
        return 1;
    }
    bundle["status"] = "verified";
    out.stream() << bundle.dump(2) << "\n";
    std::cerr << "certificate bundle: verified\n";
    return 0;
}

int cmd_tables(int k_max, long terms, OutputTarget& out) {
    std::cerr << "deriving the U_7 recurrence and extending tables to k = " << k_max << "...\n";
    RecurrenceTable rec = derive_recurrence(std::max<long>(terms, 280));
    U7Tables tables(rec);
    long N = 7 * (40 + 8 * k_max) + 140;
    TBasis basis = TBasis::build(N);
    QSeries A = expand_folded(eq_A(), N);
    json rows = json::array();
    for (U7Family fam : {U7Family::A, U7Family::AP1, U7Family::AP2, U7Family::T, U7Family::P1, U7Family::P2}) {
        for (int k = 0; k <= k_max; ++k) {
            const BasisDecomposition& d = tables.row(fam, k);
            assert_family_bounds(fam, k, d);
            long window = verify_row_direct(fam, k, d, basis, A);
            rows.push_back(json{{"family", family_name(fam)},
                                {"k", k},
                                {"max_t_degree", d.max_degree()},
                                {"verified_terms", window},
                                {"status", "ok"}});
        }
    }
    json j{{"recurrence", recurrence_to_json(rec)}, {"rows", rows}};
    out.stream() << j.dump(2) << "\n";
    std::cerr << "all rows verified against direct U_7 computation\n";
    return 0;
}

int cmd_numeric(long terms, long seed, double tolerance, OutputTarget& out) {
    std::cerr << "numeric checks with " << terms << " coefficient terms, seed " << seed << "...\n";
    auto samples = sample_points(static_cast<std::uint64_t>(seed), 5);

    VectorTransformData vt;
    {
        FamilyCoefficients f41 = cpsi41_coefficients(terms);
        auto pair40_42 = cpsi40_42_coefficients(terms);
        vt.f0 = std::move(pair40_42.first.values);
        vt.f1 = std::move(f41.values);
        vt.f2 = std::move(pair40_42.second.values);
    }
    NumericReport r1 = check_vector_transform(vt, samples, tolerance);

    CommutationData cd;
    cd.aprime_series = expand_folded(eq_Aprime(), 280);
    {
        RecurrenceTable rec = derive_recurrence(420);
        U7Tables tables(rec);
        LKOptions opt;
        opt.alpha_max = 2;
        opt.window = 64;
        auto Ls = l_sequence(tables, opt);
        auto Ks = k_sequence(tables, opt);
        for (int i = 0; i < 2; ++i)
            cd.pairs.emplace_back(Ls[static_cast<std::size_t>(i)].dec, Ks[static_cast<std::size_t>(i)].series);
    }
    NumericReport r2 = check_commutation_and_involution(cd, samples, tolerance);
    NumericReport r3 = check_eta_multiplier_law(static_cast<std::uint64_t>(seed) + 1, 50, 1e-10);

    json j = json::array({to_json(r1), to_json(r2), to_json(r3)});
    out.stream() << j.dump(2) << "\n";
    bool ok = r1.ok && r2.ok && r3.ok;
    std::cerr << (ok ? "numeric checks ok\n" : "numeric checks FAILED\n");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-series toolkit for 4-colored Frobenius partition congruences mod powers of 7"};
    app.require_subcommand(1);

    long terms = 500;
    int alpha_max = 2;
    int k_max = 10;
    std::vector<int> betas;
    std::vector<std::string> group_tokens;
    std::string out_path, format = "json";
    int jobs = 1;
    long n_max = 300;
    long seed = 20140907;
    double tolerance = 1e-8;

    auto* terms_opt =
        app.add_option("--terms", terms, "q-expansion precision / verification floor")->envname("ETAQ_TERMS");
    app.add_option("--jobs", jobs, "parallel workers")->envname("ETAQ_JOBS")->check(CLI::PositiveNumber);
    app.add_option("--out", out_path, "output file (default stdout)")->envname("ETAQ_OUT");
    app.add_option("--format", format, "output format: json or csv")
        ->envname("ETAQ_FORMAT")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", seed, "seed for sample-point generation")->envname("ETAQ_SEED");
    app.add_option("--tolerance", tolerance, "numeric tolerance")->envname("ETAQ_TOLERANCE");
    app.add_option("--k-max", k_max, "table extension depth")->envname("ETAQ_K_MAX");
    app.add_option("--alpha-max", alpha_max, "verify 7^alpha divisibility up to this alpha")
        ->envname("ETAQ_ALPHA_MAX");

    auto* sub_expand = app.add_subcommand("expand", "expand an eta quotient given as level:exponent tokens");
    std::string spec;
    sub_expand->add_option("quotient", spec, "e.g. \"2:6,1:-7\"")->required();

    auto* sub_verify = app.add_subcommand("verify-appendix", "verify the 42 basis identities bit-exactly");
    sub_verify->add_option("--groups", group_tokens, "groups I..VI (default all)")->delimiter(',');

    auto* sub_certify = app.add_subcommand("certify", "congruence sweeps plus structural L/K certificates");
    sub_certify->add_option("--beta", betas, "families to certify (0,1,2; default all)")->delimiter(',');
    sub_certify->add_option("--n-max", n_max, "residue classes swept at alpha = 1");

    auto* sub_tables = app.add_subcommand("tables", "derive the U_7 recurrence and extend the image tables");

    auto* sub_numeric = app.add_subcommand("numeric", "complex-analytic spot checks (transforms, Atkin-Lehner)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    OutputTarget out;
    out.path = out_path;
    try {
        if (sub_expand->parsed()) return cmd_expand(spec, terms, format, out);
        if (sub_verify->parsed()) return cmd_verify_appendix(parse_groups(group_tokens), terms, jobs, format, out);
        if (sub_certify->parsed())
            return cmd_certify(betas, alpha_max, n_max, terms, terms_opt->count() > 0, seed, out);
        if (sub_tables->parsed()) return cmd_tables(k_max, terms, out);
        if (sub_numeric->parsed()) return cmd_numeric(std::max<long>(terms, 400), seed, tolerance, out);
    } catch (const ParseError& pe) {
        std::cerr << "error: " << pe.what() << "\n";
        return 2;
    } catch (const BudgetError& be) {
        std::cerr << "error: " << be.what() << "\n";
        return 2;
    } catch (const CLI::Error& ce) {
        std::cerr << "error: " << ce.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "verification failure: " << ex.what() << "\n";
        return 1;
    }
    return 2;
}
