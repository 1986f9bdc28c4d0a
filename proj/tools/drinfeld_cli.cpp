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

// Command-line frontend. Subcommands:
//
//   reduction     classify reduction at a finite place
//   torsion       torsion kernel and module structure over a residue tower
//   local-h0      local H^0 tensor term (and optionally one layer)
//   weierstrass   Weierstrass preparation of a truncated series
//   mu-lambda     mu/lambda invariants of a series or elementary module
//   lambda-bound  the assembled lambda-invariant bound report
//
// Results go to standard output as a single JSON document (indented with
// --pretty); diagnostics go to standard error. Exit codes: 0 success,
// 2 parse error, 3 precision error, 4 mathematical precondition violation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "drinfeld/drinfeld.hpp"

namespace {

using drinfeld::Json;

// --module/--series arguments accept a file path or an inline JSON object.
Json load_json_arg(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg[0] != '{') {
        std::ifstream in(arg);
        if (!in) throw drinfeld::ParseError("cannot open input file '" + arg + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw drinfeld::ParseError(std::string("invalid JSON: ") + e.what());
    }
}

// Series and elementary-module documents default to F_3 unless they carry
// their own "p"/"m"/"modulus" fields (module documents always do).
drinfeld::Fq field_of(const Json& j) {
    std::int64_t p = 3, m = 1;
    if (j.contains("p")) p = j["p"].get<std::int64_t>();
    if (j.contains("m")) m = j["m"].get<std::int64_t>();
    if (p < 2) throw drinfeld::ParseError("field 'p' must be a prime");
    if (m == 1) return drinfeld::Fq(static_cast<std::uint32_t>(p));
    if (!j.contains("modulus") || !j["modulus"].is_string())
        throw drinfeld::ParseError("extension fields need a modulus polynomial in g");
    std::string s = j["modulus"].get<std::string>();
    for (auto& ch : s)
        if (ch == 'g') ch = 'T';
    drinfeld::Fq prime(static_cast<std::uint32_t>(p));
    drinfeld::FqPoly mp = drinfeld::parse_poly(prime, s);
    std::vector<std::uint32_t> digits;
    for (auto& c : mp) digits.push_back(static_cast<std::uint32_t>(c.rep));
    return drinfeld::Fq(static_cast<std::uint32_t>(p), digits);
}

struct Options {
    drinfeld::Config cfg;
    bool pretty = false;
    std::string out_path;

    std::string module_arg;
    std::string series_arg;
    std::string elementary_arg;
    std::string place_arg;
    std::string prime_arg;
    std::string a_arg;
    unsigned ext_degree = 1;
    int layer_n = -1;
    int layer_m = -1;
    long residual_dim = -1;
    std::string residual_provenance = "user-supplied";
};

void emit(const Options& opt, Json j) {
    j["seed"] = opt.cfg.seed;
    std::string text = opt.pretty ? j.dump(2) : j.dump();
    if (opt.out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(opt.out_path);
        if (!out) throw drinfeld::ParseError("cannot open output file '" + opt.out_path + "'");
        out << text << "\n";
    }
}

int run_reduction(const Options& opt) {
    auto doc = drinfeld::module_from_json(load_json_arg(opt.module_arg));
    drinfeld::Place v = drinfeld::parse_place(doc.fq, opt.place_arg);
    auto rt = drinfeld::reduction_type(doc.mod, v, opt.cfg.seed);
    Json j;
    j["place"] = drinfeld::print_place(doc.fq, v);
    j["degree"] = v.degree();
    switch (rt.tag) {
        case drinfeld::ReductionTag::Good: j["type"] = "Good"; break;
        case drinfeld::ReductionTag::StableBad: j["type"] = "StableBad"; break;
        case drinfeld::ReductionTag::Undetermined: j["type"] = "Undetermined"; break;
    }
    if (rt.tag != drinfeld::ReductionTag::Undetermined) {
        j["reduced_rank"] = rt.reduced_rank;
        j["normalizing_valuation"] = rt.w;
        j["unit_indices"] = rt.unit_indices;
        j["tie"] = rt.tie;
    }
    if (rt.tag == drinfeld::ReductionTag::Good)
        j["height"] = drinfeld::height_of_reduction(doc.mod, v, opt.cfg.seed);
    emit(opt, j);
    return 0;
}

int run_torsion(const Options& opt) {
    auto doc = drinfeld::module_from_json(load_json_arg(opt.module_arg));
    drinfeld::Place v = drinfeld::parse_place(doc.fq, opt.place_arg);
    if (v.infinite) throw drinfeld::MathError("torsion needs a finite place of stable reduction");
    drinfeld::FqPoly a = drinfeld::parse_poly(doc.fq, opt.a_arg);
    auto red = drinfeld::reduce(doc.mod, v, opt.cfg.seed);
    auto tk = drinfeld::torsion_kernel(red, a, opt.ext_degree, opt.cfg.seed);
    auto st = drinfeld::torsion_module_structure(red, a, opt.ext_degree, opt.cfg.seed);
    Json j;
    j["place"] = drinfeld::print_place(doc.fq, v);
    j["a"] = drinfeld::print_poly(doc.fq, a);
    j["ext_degree"] = opt.ext_degree;
    j["dimension_fq"] = tk.dim_fq;
    Json basis = Json::array();
    for (const auto& b : tk.basis) basis.push_back(tk.ext.to_string(b));
    j["basis"] = basis;
    Json elem = Json::array();
    for (const auto& part : st.elementary) {
        Json e;
        e["prime"] = drinfeld::print_poly(doc.fq, part.prime);
        e["exponent"] = part.exponent;
        e["count"] = part.count;
        elem.push_back(e);
    }
    j["elementary"] = elem;
    Json chain = Json::array();
    for (const auto& b : st.invariant_chain) chain.push_back(drinfeld::print_poly(doc.fq, b));
    j["invariant_chain"] = chain;
    emit(opt, j);
    return 0;
}

int run_local_h0(const Options& opt) {
    auto doc = drinfeld::module_from_json(load_json_arg(opt.module_arg));
    drinfeld::Place p = drinfeld::parse_place(doc.fq, opt.prime_arg);
    drinfeld::Place v = drinfeld::parse_place(doc.fq, opt.place_arg);
    auto term = drinfeld::h0_tensor_term(doc.mod, p, v, opt.cfg);
    Json j;
    j["prime"] = drinfeld::print_place(doc.fq, p);
    j["place"] = drinfeld::print_place(doc.fq, v);
    if (term.dim)
        j["tensor_dim"] = *term.dim;
    else
        j["tensor_dim"] = nullptr;
    j["method"] = drinfeld::to_string(term.method);
    j["layers"] = term.layers;
    if (opt.layer_n >= 0) {
        unsigned m = opt.layer_m >= 0 ? static_cast<unsigned>(opt.layer_m) : 0;
        Json layer;
        layer["n"] = opt.layer_n;
        layer["m"] = m;
        layer["dim"] = drinfeld::h0_layer(doc.mod, p, static_cast<unsigned>(opt.layer_n), v, m,
                                          opt.cfg.seed);
        j["layer"] = layer;
    }
    emit(opt, j);
    return 0;
}

int run_weierstrass(const Options& opt) {
    Json in = load_json_arg(opt.series_arg);
    drinfeld::Fq fq = field_of(in);
    auto sdoc = drinfeld::series_from_json(fq, in);
    auto parts = drinfeld::weierstrass_prep(sdoc.O, sdoc.series);
    drinfeld::ORing Oe(fq, sdoc.O.place(), parts.prec_pi_effective);
    Json j;
    j["p_place"] = drinfeld::print_place(fq, sdoc.O.place());
    j["prec_pi"] = sdoc.O.prec();
    j["prec_pi_effective"] = parts.prec_pi_effective;
    j["prec_T"] = sdoc.series.prec_T();
    j["mu"] = parts.mu;
    j["lambda"] = parts.lambda;
    Json g = Json::array();
    for (unsigned i = 0; i <= parts.lambda; ++i)
        g.push_back(Oe.to_string(parts.distinguished.c[i]));
    j["distinguished"] = g;
    Json u = Json::array();
    for (const auto& c : parts.unit.c) u.push_back(Oe.to_string(c));
    j["unit"] = u;
    emit(opt, j);
    return 0;
}

int run_mu_lambda(const Options& opt) {
    if (opt.series_arg.empty() == opt.elementary_arg.empty())
        throw drinfeld::ParseError("give exactly one of --series or --elementary");
    Json j;
    if (!opt.series_arg.empty()) {
        Json in = load_json_arg(opt.series_arg);
        drinfeld::Fq fq = field_of(in);
        auto sdoc = drinfeld::series_from_json(fq, in);
        auto ml = drinfeld::mu_lambda(sdoc.O, sdoc.series);
        j["source"] = "series";
        j["mu"] = ml.first;
        j["lambda"] = ml.second;
    } else {
        Json in = load_json_arg(opt.elementary_arg);
        drinfeld::Fq fq = field_of(in);
        auto edoc = drinfeld::elementary_from_json(fq, in);
        auto ml = drinfeld::mu_lambda(edoc.O, edoc.mod);
        auto fin = drinfeld::finiteness_predicates(edoc.O, edoc.mod);
        j["source"] = "elementary";
        j["mu"] = ml.first;
        j["lambda"] = ml.second;
        j["cofg_cotorsion_mu0"] = fin.cofg_cotorsion_mu0;
        if (fin.dim_residual)
            j["dim_residual"] = *fin.dim_residual;
        else
            j["dim_residual"] = nullptr;
        j["lambda_bound_check"] = fin.lambda_bound_check;
    }
    emit(opt, j);
    return 0;
}

int run_lambda_bound(const Options& opt) {
    if (opt.residual_dim < 0)
        throw drinfeld::MathError("residual dimension must be a nonnegative integer");
    auto doc = drinfeld::module_from_json(load_json_arg(opt.module_arg));
    drinfeld::Place p = drinfeld::parse_place(doc.fq, opt.prime_arg);
    auto report = drinfeld::lambda_bound(doc.mod, p, static_cast<unsigned>(opt.residual_dim),
                                         opt.residual_provenance, opt.cfg);
    emit(opt, drinfeld::bound_report_to_json(doc, report));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Drinfeld module arithmetic over F_q(T): reduction, torsion, local H^0 terms, "
                 "Weierstrass preparation and lambda-invariant bounds"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    Options opt;
    if (const char* env = std::getenv("DRINFELD_PRECISION")) {
        unsigned n = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
        if (n >= 1) {
            opt.cfg.prec_pi = n;
            opt.cfg.local_prec = n;
            opt.cfg.prec_T = 2 * n;
        }
    }
    app.add_option("--seed", opt.cfg.seed, "seed for every randomized subroutine");
    app.add_option("--prec-pi", opt.cfg.prec_pi, "pi-adic precision for O = A_p");
    app.add_option("--prec-T", opt.cfg.prec_T, "T-adic truncation for Iwasawa series");
    app.add_option("--local-N", opt.cfg.local_prec, "digit precision for local-field elements");
    app.add_option("--max-n", opt.cfg.max_n, "torsion level cap for H^0 stabilization");
    app.add_option("--max-m", opt.cfg.max_m, "tower layer cap for H^0 stabilization");
    app.add_flag("--pretty", opt.pretty, "indent the JSON output");
    app.add_option("--out", opt.out_path, "write the JSON document to a file instead of stdout");

    auto* reduction = app.add_subcommand("reduction", "classify reduction at a finite place");
    reduction->add_option("--module", opt.module_arg, "module JSON (path or inline)")->required();
    reduction->add_option("--place", opt.place_arg, "finite place, e.g. T+1")->required();

    auto* torsion = app.add_subcommand("torsion", "torsion kernel over a residue extension");
    torsion->add_option("--module", opt.module_arg, "module JSON (path or inline)")->required();
    torsion->add_option("--place", opt.place_arg, "finite place of stable reduction")->required();
    torsion->add_option("--a", opt.a_arg, "torsion polynomial a, coprime to the place")->required();
    torsion->add_option("--ext", opt.ext_degree, "residue extension degree (default 1)");

    auto* local = app.add_subcommand("local-h0", "local H^0 tensor term at a place");
    local->add_option("--module", opt.module_arg, "module JSON (path or inline)")->required();
    local->add_option("--prime", opt.prime_arg, "the distinguished finite prime p")->required();
    local->add_option("--place", opt.place_arg, "the place v (finite or inf)")->required();
    local->add_option("--n", opt.layer_n, "also report one layer: torsion level n");
    local->add_option("--m", opt.layer_m, "layer: tower index m (default 0)");

    auto* wprep = app.add_subcommand("weierstrass", "Weierstrass preparation of a series");
    wprep->add_option("--series", opt.series_arg, "series JSON (path or inline)")->required();

    auto* mul = app.add_subcommand("mu-lambda", "mu/lambda invariants");
    mul->add_option("--series", opt.series_arg, "series JSON (path or inline)");
    mul->add_option("--elementary", opt.elementary_arg, "elementary module JSON (path or inline)");

    auto* bound = app.add_subcommand("lambda-bound", "assemble the lambda-invariant bound report");
    bound->add_option("--module", opt.module_arg, "module JSON (path or inline)")->required();
    bound->add_option("--prime", opt.prime_arg, "the distinguished finite prime p")->required();
    bound->add_option("--residual-dim", opt.residual_dim,
                      "dimension of the residual fine Selmer group (input datum)")
        ->required();
    bound->add_option("--residual-dim-provenance", opt.residual_provenance,
                      "where the residual dimension comes from");

    try {
        app.parse(argc, argv);
        if (opt.cfg.prec_pi < 1 || opt.cfg.prec_T < 1 || opt.cfg.local_prec < 1)
            throw drinfeld::ParseError("precisions must be >= 1");
        if (reduction->parsed()) return run_reduction(opt);
        if (torsion->parsed()) return run_torsion(opt);
        if (local->parsed()) return run_local_h0(opt);
        if (wprep->parsed()) return run_weierstrass(opt);
        if (mul->parsed()) return run_mu_lambda(opt);
        if (bound->parsed()) return run_lambda_bound(opt);
        std::cerr << "error: no subcommand given\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const drinfeld::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const drinfeld::PrecisionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const drinfeld::MathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
