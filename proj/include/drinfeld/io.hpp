/*
   Copyright 2026 the drinfeld authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// JSON readers and writers for every document the CLI consumes or emits.
// Emission uses ordered JSON with fixed field order, so identical inputs
// produce byte-identical outputs. Every reader rejects malformed input with
// a ParseError naming the offending field or token.

#ifndef DRINFELD_IO_HPP
#define DRINFELD_IO_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "drinfeld/bound.hpp"
#include "drinfeld/iwasawa.hpp"

namespace drinfeld {

using Json = nlohmann::ordered_json;

namespace io_detail {

inline const Json& require_field(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

inline std::string require_string(const Json& j, const char* key) {
    const Json& v = require_field(j, key);
    if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

inline std::int64_t require_int(const Json& j, const char* key) {
    const Json& v = require_field(j, key);
    if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
    return v.get<std::int64_t>();
}

}  // namespace io_detail

// ---------------------------------------------------------------------------
// Drinfeld module documents

struct ModuleDoc {
    Fq fq;
    FuncField F;
    FModule mod;
    std::string note;
};

// { "p": 3, "m": 1, "modulus": null, "phi_T": ["T", "1"], "note": "..." }
// with coefficients a_1..a_r as polynomial strings and gamma(T) = T implied.
inline ModuleDoc module_from_json(const Json& j) {
    using io_detail::require_field;
    using io_detail::require_int;
    std::int64_t p = require_int(j, "p");
    std::int64_t m = require_int(j, "m");
    if (p < 2 || m < 1) throw ParseError("field parameters must satisfy p >= 2, m >= 1");
    std::optional<std::string> modulus;
    if (j.contains("modulus") && !j["modulus"].is_null()) {
        if (!j["modulus"].is_string()) throw ParseError("field 'modulus' must be a string or null");
        modulus = j["modulus"].get<std::string>();
    }
    Fq fq = [&] {
        if (m == 1) {
            if (modulus) throw ParseError("prime fields take no modulus");
            return Fq(static_cast<std::uint32_t>(p));
        }
        if (!modulus) throw ParseError("extension fields need a modulus polynomial in g");
        // the modulus is written in the generator symbol g over the prime field
        std::string s = *modulus;
        for (auto& ch : s)
            if (ch == 'g') ch = 'T';
        Fq prime(static_cast<std::uint32_t>(p));
        FqPoly mp = parse_poly(prime, s);
        if (poly_deg<Fq>(mp) != m) throw ParseError("modulus degree does not match m");
        std::vector<std::uint32_t> digits;
        for (auto& c : mp) digits.push_back(static_cast<std::uint32_t>(c.rep));
        return Fq(static_cast<std::uint32_t>(p), digits);
    }();
    const Json& coeffs = require_field(j, "phi_T");
    if (!coeffs.is_array() || coeffs.empty())
        throw ParseError("field 'phi_T' must be a nonempty array of coefficient strings");
    FuncField F(fq);
    std::vector<RationalFunction> cs;
    for (const auto& c : coeffs) {
        if (!c.is_string()) throw ParseError("coefficients in 'phi_T' must be strings");
        cs.push_back(parse_rational(fq, c.get<std::string>()));
    }
    if (F.is_zero(cs.back())) throw ParseError("leading coefficient a_r must be nonzero");
    std::string note = j.contains("note") && j["note"].is_string() ? j["note"].get<std::string>() : "";
    FModule mod = make_f_module(F, std::move(cs));
    return {std::move(fq), std::move(F), std::move(mod), std::move(note)};
}

inline Json module_to_json(const ModuleDoc& doc) {
    Json j;
    j["p"] = doc.fq.p();
    j["m"] = doc.fq.m();
    if (doc.fq.m() == 1) {
        j["modulus"] = nullptr;
    } else {
        FqPoly mp;
        Fq prime(doc.fq.p());
        for (auto c : doc.fq.modulus()) mp.push_back(prime.from_int(c));
        j["modulus"] = print_poly(prime, mp, "g");
    }
    Json arr = Json::array();
    for (const auto& c : doc.mod.coeffs) arr.push_back(print_rational(doc.fq, c));
    j["phi_T"] = arr;
    if (!doc.note.empty()) j["note"] = doc.note;
    return j;
}

// ---------------------------------------------------------------------------
// Iwasawa series and elementary module documents

struct SeriesDoc {
    ORing O;
    IwasawaSeries series;
};

// { "p_place": "T", "prec_pi": 32, "coeffs_T": ["...", ...] } plus optional
// "prec_T" (defaults to the coefficient count) and "polynomial" (defaults
// to true: a finite coefficient list is a polynomial).
inline SeriesDoc series_from_json(const Fq& fq, const Json& j) {
    using io_detail::require_field;
    using io_detail::require_int;
    using io_detail::require_string;
    Place p = parse_place(fq, require_string(j, "p_place"));
    if (p.infinite) throw ParseError("field 'p_place' must be a finite place");
    std::int64_t prec_pi = require_int(j, "prec_pi");
    if (prec_pi < 1) throw ParseError("field 'prec_pi' must be >= 1");
    const Json& coeffs = require_field(j, "coeffs_T");
    if (!coeffs.is_array()) throw ParseError("field 'coeffs_T' must be an array of strings");
    std::int64_t prec_T = j.contains("prec_T") ? require_int(j, "prec_T")
                                               : static_cast<std::int64_t>(coeffs.size());
    if (prec_T < 1 || static_cast<std::size_t>(prec_T) < coeffs.size())
        throw ParseError("field 'prec_T' must cover the given coefficients");
    bool polynomial = true;
    if (j.contains("polynomial")) {
        if (!j["polynomial"].is_boolean()) throw ParseError("field 'polynomial' must be a boolean");
        polynomial = j["polynomial"].get<bool>();
    }
    ORing O(fq, p, static_cast<unsigned>(prec_pi));
    std::vector<ORing::Elem> c;
    for (const auto& s : coeffs) {
        if (!s.is_string()) throw ParseError("coefficients in 'coeffs_T' must be strings");
        c.push_back(O.from_poly(parse_poly(fq, s.get<std::string>())));
    }
    IwasawaSeries series = series_make(O, std::move(c), static_cast<unsigned>(prec_T), polynomial);
    return {std::move(O), std::move(series)};
}

inline Json series_to_json(const ORing& O, const IwasawaSeries& s) {
    Json j;
    j["p_place"] = print_place(O.base_fq(), O.place());
    j["prec_pi"] = O.prec();
    Json arr = Json::array();
    for (const auto& c : s.c) arr.push_back(O.to_string(c));
    j["coeffs_T"] = arr;
    j["prec_T"] = s.prec_T();
    j["polynomial"] = s.is_polynomial;
    return j;
}

struct ElementaryDoc {
    ORing O;
    unsigned prec_T;
    ElementaryModule mod;
};

// { "p_place": "T", "prec_pi": 32, "prec_T": 64, "free_rank": 0,
//   "mu_parts": [1, 2], "poly_parts": [["T", "0", "1"], ...] }
inline ElementaryDoc elementary_from_json(const Fq& fq, const Json& j) {
    using io_detail::require_field;
    using io_detail::require_int;
    using io_detail::require_string;
    Place p = parse_place(fq, require_string(j, "p_place"));
    if (p.infinite) throw ParseError("field 'p_place' must be a finite place");
    std::int64_t prec_pi = require_int(j, "prec_pi");
    std::int64_t prec_T = require_int(j, "prec_T");
    if (prec_pi < 1 || prec_T < 1) throw ParseError("precisions must be >= 1");
    std::int64_t free_rank = require_int(j, "free_rank");
    if (free_rank < 0) throw ParseError("field 'free_rank' must be >= 0");
    ORing O(fq, p, static_cast<unsigned>(prec_pi));
    std::vector<unsigned> mu_parts;
    for (const auto& m : require_field(j, "mu_parts")) {
        if (!m.is_number_integer() || m.get<std::int64_t>() < 1)
            throw ParseError("entries of 'mu_parts' must be integers >= 1");
        mu_parts.push_back(m.get<unsigned>());
    }
    std::vector<IwasawaSeries> poly_parts;
    for (const auto& part : require_field(j, "poly_parts")) {
        if (!part.is_array()) throw ParseError("entries of 'poly_parts' must be coefficient arrays");
        std::vector<ORing::Elem> c;
        for (const auto& s : part) {
            if (!s.is_string()) throw ParseError("coefficients in 'poly_parts' must be strings");
            c.push_back(O.from_poly(parse_poly(fq, s.get<std::string>())));
        }
        poly_parts.push_back(series_make(O, std::move(c), static_cast<unsigned>(prec_T), true));
    }
    ElementaryModule mod = make_elementary(O, static_cast<unsigned>(free_rank), std::move(mu_parts),
                                           std::move(poly_parts));
    return {std::move(O), static_cast<unsigned>(prec_T), std::move(mod)};
}

inline Json elementary_to_json(const ORing& O, unsigned prec_T, const ElementaryModule& M) {
    Json j;
    j["p_place"] = print_place(O.base_fq(), O.place());
    j["prec_pi"] = O.prec();
    j["prec_T"] = prec_T;
    j["free_rank"] = M.free_rank;
    j["mu_parts"] = M.mu_parts;
    Json parts = Json::array();
    for (const auto& g : M.poly_parts) {
        Json arr = Json::array();
        long deg = series_poly_degree(O, g);
        for (long i = 0; i <= deg; ++i) arr.push_back(O.to_string(g.c[static_cast<std::size_t>(i)]));
        parts.push_back(arr);
    }
    j["poly_parts"] = parts;
    return j;
}

// ---------------------------------------------------------------------------
// bound reports

inline Json bound_report_to_json(const ModuleDoc& doc, const BoundReport& report) {
    const Fq& fq = doc.fq;
    Json j;
    j["module"] = module_to_json(doc);
    j["prime"] = print_place(fq, report.prime);
    Json s = Json::array();
    for (const auto& sp : report.s) {
        Json e;
        e["place"] = print_place(fq, sp.place);
        e["reason"] = sp.reason;
        s.push_back(e);
    }
    j["S"] = s;
    Json rows = Json::array();
    for (const auto& row : report.rows) {
        Json r;
        r["place"] = print_place(fq, row.place);
        r["degree"] = row.degree;
        r["splitting_count"] = row.splitting_count;
        if (row.local_dim)
            r["local_dim"] = *row.local_dim;
        else
            r["local_dim"] = nullptr;
        r["method"] = to_string(row.method);
        r["contribution"] = row.contribution;
        rows.push_back(r);
    }
    j["rows"] = rows;
    j["residual_dim"] = report.residual_dim;
    j["residual_dim_provenance"] = report.residual_dim_provenance;
    j["bound"] = report.bound;
    j["exact"] = report.exact;
    return j;
}

inline LocalMethod method_from_string(const std::string& s) {
    if (s == "Unramified") return LocalMethod::Unramified;
    if (s == "Eisenstein") return LocalMethod::Eisenstein;
    if (s == "NewtonHensel") return LocalMethod::NewtonHensel;
    if (s == "WorstCase") return LocalMethod::WorstCase;
    throw ParseError("unknown method '" + s + "'");
}

// Reads a bound report back; the module document inside is re-parsed, so a
// report is a self-contained restartable artifact.
inline std::pair<ModuleDoc, BoundReport> bound_report_from_json(const Json& j) {
    using io_detail::require_field;
    using io_detail::require_int;
    using io_detail::require_string;
    ModuleDoc doc = module_from_json(require_field(j, "module"));
    const Fq& fq = doc.fq;
    BoundReport report;
    report.prime = parse_place(fq, require_string(j, "prime"));
    report.rank = doc.mod.rank();
    for (const auto& e : require_field(j, "S"))
        report.s.push_back({parse_place(fq, io_detail::require_string(e, "place")),
                            io_detail::require_string(e, "reason")});
    for (const auto& r : require_field(j, "rows")) {
        BoundRow row;
        row.place = parse_place(fq, io_detail::require_string(r, "place"));
        row.degree = static_cast<unsigned>(io_detail::require_int(r, "degree"));
        row.splitting_count = static_cast<unsigned>(io_detail::require_int(r, "splitting_count"));
        const Json& dim = io_detail::require_field(r, "local_dim");
        if (dim.is_null())
            row.local_dim = std::nullopt;
        else if (dim.is_number_integer())
            row.local_dim = dim.get<unsigned>();
        else
            throw ParseError("field 'local_dim' must be an integer or null");
        row.method = method_from_string(io_detail::require_string(r, "method"));
        row.contribution = static_cast<unsigned>(io_detail::require_int(r, "contribution"));
        report.rows.push_back(std::move(row));
    }
    report.residual_dim = static_cast<unsigned>(require_int(j, "residual_dim"));
    report.residual_dim_provenance = require_string(j, "residual_dim_provenance");
    report.bound = static_cast<unsigned>(require_int(j, "bound"));
    const Json& exact = require_field(j, "exact");
    if (!exact.is_boolean()) throw ParseError("field 'exact' must be a boolean");
    report.exact = exact.get<bool>();
    return {std::move(doc), std::move(report)};
}

}  // namespace drinfeld

#endif  // DRINFELD_IO_HPP
