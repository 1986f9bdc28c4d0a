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

// Assembly of the lambda-invariant bound: the S-set (the distinguished
// prime, infinity, and the places of non-good reduction), one local row per
// place with its splitting multiplicity and H^0 tensor term, and the total
//
//   bound = residual_dim + sum over S of splitting_count * local_term,
//
// where an Unknown local term is soundly replaced by the rank. The residual
// dimension is always caller-supplied; this library never fabricates it.

#ifndef DRINFELD_BOUND_HPP
#define DRINFELD_BOUND_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "drinfeld/local.hpp"

namespace drinfeld {

struct SPlace {
    Place place;
    std::string reason;  // "p" | "infinity" | "bad-reduction"
};

// S = {p, infinity} together with every prime divisor of the integral
// leading coefficient at which reduction is not certified good.
inline std::vector<SPlace> s_set(const FModule& mod, const Place& p, std::uint64_t seed) {
    if (p.infinite) throw MathError("the distinguished prime must be finite");
    const Fq& fq = mod.field.base_fq();
    std::vector<SPlace> out;
    out.push_back({p, "p"});
    out.push_back({place_infinity(), "infinity"});
    FModule integr = integral_model(mod, seed).mod;
    const RationalFunction& lead = integr.coeffs.back();
    for (auto& [l, e] : factor(fq, lead.num, seed).factors) {
        (void)e;
        Place v{false, l};
        if (place_eq(fq, v, p)) continue;
        if (reduction_type(mod, v, seed).tag != ReductionTag::Good) out.push_back({v, "bad-reduction"});
    }
    std::sort(out.begin(), out.end(),
              [&](const SPlace& a, const SPlace& b) { return place_less(fq, a.place, b.place); });
    return out;
}

struct BoundRow {
    Place place;
    unsigned degree = 1;
    unsigned splitting_count = 1;
    std::optional<unsigned> local_dim;  // nullopt = Unknown
    LocalMethod method = LocalMethod::WorstCase;
    unsigned contribution = 0;
};

struct BoundReport {
    Place prime;
    unsigned rank = 1;
    std::vector<SPlace> s;
    std::vector<BoundRow> rows;
    unsigned residual_dim = 0;
    std::string residual_dim_provenance;
    unsigned bound = 0;
    bool exact = true;
};

// Recompute the total from the rows; used both by lambda_bound and by
// what-if analyses that force rows to Unknown.
inline void assemble_bound(BoundReport& report) {
    unsigned total = report.residual_dim;
    bool exact = true;
    for (auto& row : report.rows) {
        unsigned term = row.local_dim ? *row.local_dim : report.rank;
        if (!row.local_dim) exact = false;
        row.contribution = row.splitting_count * term;
        total += row.contribution;
    }
    report.bound = total;
    report.exact = exact;
}

inline BoundReport lambda_bound(const FModule& mod, const Place& p, unsigned residual_dim,
                                std::string provenance, const Config& cfg) {
    const Fq& fq = mod.field.base_fq();
    BoundReport report;
    report.prime = p;
    report.rank = mod.rank();
    report.residual_dim = residual_dim;
    report.residual_dim_provenance = std::move(provenance);
    report.s = s_set(mod, p, cfg.seed);
    for (const auto& sp : report.s) {
        BoundRow row;
        row.place = sp.place;
        row.degree = sp.place.degree();
        row.splitting_count = splitting_count(fq, sp.place).count;
        LocalH0 term = h0_tensor_term(mod, p, sp.place, cfg);
        row.local_dim = term.dim;
        row.method = term.method;
        report.rows.push_back(std::move(row));
    }
    assemble_bound(report);
    return report;
}

}  // namespace drinfeld

#endif  // DRINFELD_BOUND_HPP
