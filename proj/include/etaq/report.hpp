#pragma once

#include <json.hpp>

#include "etaq/congruence.hpp"
#include "etaq/numeric.hpp"
#include "etaq/operators.hpp"

namespace etaq {

// ordered_json keeps insertion order, so reports are byte-reproducible for a
// fixed (config, seed).
using json = nlohmann::ordered_json;

inline json to_json(const QSeries::Mismatch& m) {
    return json{{"exponent", m.exponent}, {"lhs", m.lhs.get_str()}, {"rhs", m.rhs.get_str()}};
}

inline json to_json(const IdentityVerdict& v) {
    json j{{"identity_id", v.id},
           {"status", v.ok ? "ok" : "mismatch"},
           {"terms_verified", v.terms_verified},
           {"bound_used", v.bound_used}};
    if (v.mismatch) j["first_mismatch"] = to_json(*v.mismatch);
    return j;
}

inline json to_json(const CuspOrderTable& t) {
    json arr = json::array();
    for (auto& row : t.rows) {
        arr.push_back(json{{"cusp", "1/" + std::to_string(row.c)},
                           {"order", row.order.get_str()},
                           {"multiplicity", row.multiplicity}});
    }
    return arr;
}

inline json to_json(const CongruenceCertificate& c) {
    json j{{"family", c.family},
           {"beta", c.beta},
           {"alpha", c.alpha},
           {"lambda", c.lambda.get_str()},
           {"modulus_class", "7^" + std::to_string(2 * c.alpha - 1)},
           {"divisor", "7^" + std::to_string(c.alpha)},
           {"n_checked", json::array({c.n_checked_lo, c.n_checked_hi})},
           {"status", c.status},
           {"precision", c.precision}};
    if (!c.notes.empty()) j["notes"] = c.notes;
    return j;
}

inline json to_json(const LKEntry& e, bool kside) {
    return json{{"sequence", kside ? "K" : "L"},
                {"alpha", e.alpha},
                {"valuation_floor", e.valuation_floor},
                {"space", e.profile.name()},
                {"membership", e.membership.ok},
                {"decomposition_method", e.dec_method},
                {"max_t_degree", e.dec.max_degree()},
                {"extraction_terms", e.extraction_terms},
                {"reconstruction_window", e.reconstruction_window}};
}

inline json to_json(const NumericReport& r) {
    json samples = json::array();
    for (auto& p : r.samples) samples.push_back(json::array({p.x, p.y}));
    json j{{"check", r.check},           {"samples", samples}, {"max_dev", r.max_dev},
           {"tolerance", r.tolerance},   {"terms", r.terms},   {"tail_bound", r.tail_bound},
           {"status", r.ok ? "ok" : "fail"}};
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

inline json recurrence_to_json(const RecurrenceTable& rec) {
    json rows = json::array();
    for (int j = 0; j <= 6; ++j) {
        json srow = json::array();
        for (int l = 1; l <= 7; ++l)
            srow.push_back(rec.s[static_cast<std::size_t>(j)][static_cast<std::size_t>(l - 1)].get_str());
        rows.push_back(std::move(srow));
    }
    return json{{"s_rows_j0_to_j6", rows},
                {"valuation_floor", "7^floor((7l+j-4)/4)"},
                {"verified_terms", rec.verified_terms}};
}

}  // namespace etaq
