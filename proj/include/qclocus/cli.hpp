#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qclocus/heights.hpp"
#include "qclocus/locus.hpp"
#include "qclocus/nilpotent.hpp"
#include "qclocus/reduction.hpp"
#include "qclocus/residues.hpp"
#include "qclocus/torsor.hpp"

namespace qclocus::cli {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

struct CurveInput {
    WeierstrassModel model;
    std::string label;
    bool rank_zero_asserted = false;
};

struct AnalysisConfig {
    long n_max = 12;
    long degree_max = 4;
    long precision_budget = 64;
    int jobs = 1;
};

// --- serialization helpers ------------------------------------------------

inline std::string rat_str(const Rational& q) { return q.str(); }

inline Json j_rat_list(const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(rat_str(q));
    return a;
}

inline Json j_poly(const RatPoly& p) {
    Json a = Json::array();
    for (long i = 0; i <= p.degree(); ++i) a.push_back(rat_str(p.coeff(static_cast<size_t>(i))));
    return a;
}

inline Json j_tower(const TowerPtr& t) {
    Json j;
    j["degree"] = t->degree();
    j["base_poly"] = j_poly(t->base_poly());
    if (t->has_quadratic_layer()) {
        j["quadratic_layer"] = Json{{"c1", j_poly(t->quad_c1())}, {"c0", j_poly(t->quad_c0())}};
    } else {
        j["quadratic_layer"] = nullptr;
    }
    return j;
}

inline Json j_tower_element(const TowerElement& e) {
    Json a = Json::array();
    for (const auto& c : e.coordinates()) a.push_back(rat_str(c));
    return a;
}

inline Json j_point(const CurvePoint& p) {
    if (p.is_infinity()) return Json{{"infinity", true}};
    Json j;
    j["x"] = j_tower_element(p.x());
    j["y"] = j_tower_element(p.y());
    j["tower"] = j_tower(p.tower());
    return j;
}

inline Json j_value_set(const ValueSet& w) {
    Json a = Json::array();
    for (const auto& q : w) a.push_back(rat_str(q));
    return a;
}

inline Json j_exponent_map(const PrimeExponentMap& m) {
    Json j = Json::object();
    for (const auto& [p, e] : m.entries()) j[p.get_str()] = rat_str(e);
    return j;
}

inline Json j_radical(const FormalRadical& r) {
    Json a = Json::array();
    for (const auto& f : r.factors())
        a.push_back(Json{{"base", j_tower_element(f.base)},
                         {"base_tower", f.base.tower()->str()},
                         {"exponent", rat_str(f.exponent)}});
    return a;
}

inline Json j_model(const WeierstrassModel& e) {
    return Json::array({rat_str(e.a1()), rat_str(e.a2()), rat_str(e.a3()), rat_str(e.a4()), rat_str(e.a6())});
}

inline Json j_transform(const ModelTransform& t) {
    return Json{{"u", rat_str(t.u)}, {"r", rat_str(t.r)}, {"s", rat_str(t.s)}, {"t", rat_str(t.t)}};
}

// --- input parsing ----------------------------------------------------------

inline CurveInput parse_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON input: ") + e.what());
    }
    std::vector<std::string> raw;
    if (doc.contains("a_invariants")) {
        for (const auto& v : doc["a_invariants"]) raw.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    } else if (doc.contains("ainvs")) {
        // LMFDB-style [a1, a2, a3, a4, a6]
        for (const auto& v : doc["ainvs"]) raw.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    } else {
        throw ParseError("input file needs an 'a_invariants' or 'ainvs' array");
    }
    if (raw.size() != 5) throw ParseError("expected exactly 5 a-invariants");
    std::vector<Rational> a;
    for (const auto& s : raw) a.push_back(Rational::parse(s));
    CurveInput out{WeierstrassModel(a[0], a[1], a[2], a[3], a[4]), "", false};
    if (doc.contains("label")) out.label = doc["label"].get<std::string>();
    if (doc.contains("rank_zero_asserted")) out.rank_zero_asserted = doc["rank_zero_asserted"].get<bool>();
    return out;
}

// --- report assembly --------------------------------------------------------

inline Json base_report(const std::string& command, const CurveInput* input, const AnalysisConfig& cfg) {
    Json j;
    j["command"] = command;
    if (input) {
        Json c;
        c["a_invariants"] = j_model(input->model);
        if (!input->label.empty()) c["label"] = input->label;
        c["rank_zero_asserted"] = input->rank_zero_asserted;
        j["curve"] = c;
    } else {
        j["curve"] = nullptr;
    }
    j["config"] = Json{{"version", kVersion},
                       {"n_max", cfg.n_max},
                       {"degree_max", cfg.degree_max},
                       {"precision_budget", cfg.precision_budget}};
    j["result"] = Json::object();
    j["warnings"] = Json::array();
    j["undecided"] = Json::array();
    return j;
}

inline Json delta_factorization(const Rational& delta) {
    Json j = Json::object();
    for (const auto& [p, e] : factor_integer(delta.num()))
        j[p.get_str()] = e;
    return j;
}

inline Json cmd_invariants(const CurveInput& input, const AnalysisConfig& cfg) {
    Json j = base_report("invariants", &input, cfg);
    auto v = input.model.invariants();
    Json r;
    r["b2"] = rat_str(v.b2);
    r["b4"] = rat_str(v.b4);
    r["b6"] = rat_str(v.b6);
    r["b8"] = rat_str(v.b8);
    r["c4"] = rat_str(v.c4);
    r["c6"] = rat_str(v.c6);
    r["delta"] = rat_str(v.delta);
    r["j"] = rat_str(v.j);
    if (v.delta.is_integer()) {
        r["delta_sign"] = v.delta.sign();
        r["delta_factorization"] = delta_factorization(v.delta);
    }
    j["result"] = r;
    return j;
}

inline Json cmd_reduction(const CurveInput& input, const AnalysisConfig& cfg) {
    Json j = base_report("reduction", &input, cfg);
    auto [emin, T] = minimal_model(input.model);
    Json r;
    r["minimal_model"] = j_model(emin);
    r["transform_to_minimal"] = j_transform(T);
    Rational dmin = emin.invariants().delta;
    r["delta_min"] = rat_str(dmin);
    Json primes = Json::array();
    for (const auto& [p, e] : factor_integer(dmin.num())) {
        ReductionProfile prof = tate_local(emin, p);
        Json pj;
        pj["prime"] = p.get_str();
        pj["kodaira_type"] = prof.type.str();
        pj["tamagawa"] = prof.tamagawa;
        if (prof.split.has_value()) pj["split"] = *prof.split;
        pj["v_delta_min"] = prof.v_delta_min;
        long good_count = 1;
        if (prof.type.cls == KodairaType::Class::I0 && p < 5)
            good_count = count_affine_smooth_points_mod_l(emin, p);
        pj["w_min"] = j_value_set(w_min(prof, good_count, p));
        pj["w_st"] = j_value_set(w_st(input.model, p));
        primes.push_back(pj);
    }
    r["bad_primes"] = primes;
    j["result"] = r;
    return j;
}

inline Json cmd_hst(const CurveInput& input, const AnalysisConfig& cfg, long n_override) {
    Json j = base_report("hst", &input, cfg);
    auto torsion = torsion_enumerate(input.model, cfg.n_max, cfg.degree_max);
    Json points = Json::array();
    for (const auto& tp : torsion) {
        long n = tp.order;
        if (n_override > 0) {
            if (n_override % tp.order != 0) continue;
            n = n_override;
        }
        HstValue h = hst_of_point(input.model, tp.point, n);
        Json pj;
        pj["point"] = j_point(tp.point);
        pj["order"] = tp.order;
        pj["n_used"] = n;
        pj["radical"] = j_radical(h.radical);
        if (h.rational_part.has_value()) {
            pj["rational_part"] = j_exponent_map(*h.rational_part);
        } else {
            pj["rational_part"] = nullptr;
        }
        points.push_back(pj);
    }
    j["result"]["points"] = points;
    j["result"]["completeness"] = "complete-within-bounds";
    j["warnings"].push_back("torsion enumeration is complete only within the configured bounds");
    return j;
}

inline Json j_locus_entry(const LocusEntry& e) {
    Json j;
    j["point"] = j_point(e.torsion.point);
    j["order"] = e.torsion.order;
    j["tower"] = j_tower(e.torsion.tower);
    if (e.decision.hst.rational_part.has_value())
        j["hst_rational_part"] = j_exponent_map(*e.decision.hst.rational_part);
    else
        j["hst_rational_part"] = nullptr;
    if (e.decision.reason.has_value()) j["reason"] = e.decision.reason->str();
    Json witness = Json::array();
    for (const auto& [p, v, w] : e.decision.witness)
        witness.push_back(Json{{"prime", p.get_str()}, {"valuation", rat_str(v)}, {"w_st", j_value_set(w)}});
    j["witness"] = witness;
    return j;
}

inline Json locus_to_json(const LocusReport& report) {
    Json r;
    Json members = Json::array(), rejected = Json::array();
    for (const auto& m : report.members) members.push_back(j_locus_entry(m));
    for (const auto& m : report.rejected) rejected.push_back(j_locus_entry(m));
    r["members"] = members;
    r["rejected"] = rejected;
    r["galois_stable"] = report.galois_stable;
    r["completeness"] = "complete-within-bounds";
    return r;
}

inline Json cmd_locus(const CurveInput& input, const AnalysisConfig& cfg) {
    if (!input.rank_zero_asserted)
        throw ContractError("locus analysis requires the rank-zero assertion "
                            "(--assert-rank-zero or \"rank_zero_asserted\": true)");
    Json j = base_report("locus", &input, cfg);
    auto report = locus_compute(input.model, cfg.n_max, cfg.degree_max, cfg.jobs);
    j["result"] = locus_to_json(report);
    j["warnings"].push_back("membership list is complete only within the configured bounds");
    return j;
}

inline Json cmd_qp(const CurveInput& input, const AnalysisConfig& cfg, const Int& p) {
    if (!input.rank_zero_asserted)
        throw ContractError("qp analysis requires the rank-zero assertion "
                            "(--assert-rank-zero or \"rank_zero_asserted\": true)");
    Json j = base_report("qp", &input, cfg);
    auto report = locus_compute(input.model, cfg.n_max, cfg.degree_max, cfg.jobs);
    auto qp = qp_report(report, p, cfg.precision_budget);
    Json r;
    r["prime"] = p.get_str();
    auto fill = [&](const std::vector<QpMemberStatus>& v) {
        Json a = Json::array();
        for (const auto& st : v) {
            Json e;
            e["point"] = j_point(st.entry->torsion.point);
            e["order"] = st.entry->torsion.order;
            if (st.embedding_count.has_value()) e["embeddings"] = *st.embedding_count;
            a.push_back(e);
        }
        return a;
    };
    r["embeddable"] = fill(qp.embeddable);
    r["non_embeddable"] = fill(qp.non_embeddable);
    r["completeness"] = "complete-within-bounds";
    j["result"] = r;
    for (const auto& st : qp.undecided) {
        Json e;
        e["point"] = j_point(st.entry->torsion.point);
        e["kind"] = "qp-embedding-undecided";
        j["undecided"].push_back(e);
    }
    return j;
}

inline Json cmd_heights(const CurveInput& input, const AnalysisConfig& cfg, const Rational& px, const Rational& py,
                        const Int& ell) {
    Json j = base_report("heights", &input, cfg);
    auto [emin, T] = minimal_model(input.model);
    auto [mx, my] = transform_point(T, px, py);
    CurvePoint q(emin, mx, my);
    auto place = places_over(NumberTower::rationals(), ell).front();
    Json r;
    r["minimal_model"] = j_model(emin);
    r["point_on_minimal_model"] = Json::array({rat_str(mx), rat_str(my)});
    r["prime"] = ell.get_str();
    if (!reduces_to_nonsingular(emin, q, place)) {
        throw CapabilityError("heights: the point reduces to a singular point at " + ell.get_str() +
                              "; singular-fibre heights are outside scope");
    }
    r["local_height"] = rat_str(local_height_nonsingular(emin, q, place));
    j["result"] = r;
    return j;
}

inline Json cmd_witt(const AnalysisConfig& cfg, long genus, const std::vector<Int>& dims) {
    Json j = base_report("witt", nullptr, cfg);
    GradedDims d;
    Json r;
    if (genus > 0) {
        d = surface_group_two_step_dims(genus);
        r["genus"] = genus;
    } else {
        if (dims.size() != 3) throw ParseError("witt: --dims needs exactly three integers");
        d = GradedDims{dims[0], dims[1], dims[2]};
    }
    r["dims"] = Json{{"d1", d.d1.get_str()}, {"d2", d.d2.get_str()}, {"d3", d.d3.get_str()}};
    r["obstructed"] = realizability_obstructed(d);
    j["result"] = r;
    return j;
}

inline Json cmd_beta_check(const CurveInput& input, const AnalysisConfig& cfg, long n, long m, long samples) {
    Json j = base_report("beta-check", &input, cfg);
    auto pts = torsor_sample_points(input.model, static_cast<size_t>(samples), n * m);
    bool holds = beta_s_compose_check(n, m, pts);
    j["result"] = Json{{"n", n}, {"m", m}, {"samples", samples}, {"holds", holds}};
    return j;
}

// --- driver -----------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"quadratic Chabauty locus computations for rank-0 punctured elliptic curves"};
    app.set_version_flag("--version", std::string(kVersion));

    std::string input_path, output_path;
    AnalysisConfig cfg;
    bool assert_rank_zero = false;
    long n_flag = 0, m_flag = 2, genus = 0, samples = 20;
    std::string prime_str = "0";
    std::string point_x, point_y;
    std::vector<std::string> dims_raw;

    app.add_option("--input", input_path, "curve input file (JSON)");
    app.add_option("--output", output_path, "report output path (default: stdout)");
    app.add_option("--n-max", cfg.n_max, "torsion order bound");
    app.add_option("--degree-max", cfg.degree_max, "coordinate tower degree bound");
    app.add_option("--precision", cfg.precision_budget, "p-adic precision budget");
    app.add_option("--jobs", cfg.jobs, "parallel decision workers");
    app.add_flag("--assert-rank-zero", assert_rank_zero, "assert the curve has Mordell-Weil rank 0");

    auto* c_inv = app.add_subcommand("invariants", "model invariants");
    auto* c_red = app.add_subcommand("reduction", "reduction types, Tamagawa numbers and value sets");
    auto* c_hst = app.add_subcommand("hst", "stable heights of torsion points");
    c_hst->add_option("--n", n_flag, "multiplier to use (default: each point's exact order)");
    auto* c_locus = app.add_subcommand("locus", "the locus decision for all torsion within bounds");
    auto* c_qp = app.add_subcommand("qp", "Q_p embedding report for locus members");
    c_qp->add_option("--prime", prime_str, "the prime p")->required();
    auto* c_heights = app.add_subcommand("heights", "local height of a rational point");
    c_heights->add_option("--point-x", point_x, "x-coordinate (exact rational)")->required();
    c_heights->add_option("--point-y", point_y, "y-coordinate (exact rational)")->required();
    c_heights->add_option("--prime", prime_str, "the prime l")->required();
    auto* c_witt = app.add_subcommand("witt", "nilpotent realizability obstruction");
    c_witt->add_option("--genus", genus, "surface group genus (>= 2)");
    c_witt->add_option("--dims", dims_raw, "graded dimensions d1 d2 d3")->expected(3);
    auto* c_beta = app.add_subcommand("beta-check", "torsor self-map composition check");
    c_beta->add_option("--n", n_flag, "first index")->required();
    c_beta->add_option("--m", m_flag, "second index")->required();
    c_beta->add_option("--samples", samples, "number of sample points");

    for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();
    app.require_subcommand(1);

    std::vector<std::string> argv_like = args;
    try {
        std::vector<const char*> argv;
        argv.push_back("qclocus");
        for (const auto& a : argv_like) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "argument error: " << e.what() << "\n";
        return 2;
    }

    try {
        std::optional<CurveInput> input;
        if (!input_path.empty()) {
            input = parse_curve_file(input_path);
            if (assert_rank_zero) input->rank_zero_asserted = true;
        }
        auto need_input = [&]() -> CurveInput& {
            if (!input) throw ParseError("this command needs --input");
            return *input;
        };

        Json report;
        if (c_inv->parsed()) {
            report = cmd_invariants(need_input(), cfg);
        } else if (c_red->parsed()) {
            report = cmd_reduction(need_input(), cfg);
        } else if (c_hst->parsed()) {
            report = cmd_hst(need_input(), cfg, n_flag);
        } else if (c_locus->parsed()) {
            report = cmd_locus(need_input(), cfg);
        } else if (c_qp->parsed()) {
            Int p(prime_str);
            if (!is_prime(p)) throw ParseError("--prime must be a prime number");
            report = cmd_qp(need_input(), cfg, p);
        } else if (c_heights->parsed()) {
            Int p(prime_str);
            if (!is_prime(p)) throw ParseError("--prime must be a prime number");
            report = cmd_heights(need_input(), cfg, Rational::parse(point_x), Rational::parse(point_y), p);
        } else if (c_witt->parsed()) {
            std::vector<Int> dims;
            for (const auto& s : dims_raw) dims.push_back(Int(s));
            if (genus == 0 && dims.empty()) throw ParseError("witt: provide --genus or --dims");
            report = cmd_witt(cfg, genus, dims);
        } else if (c_beta->parsed()) {
            if (n_flag < 1 || m_flag < 1) throw ParseError("beta-check: --n and --m must be >= 1");
            report = cmd_beta_check(need_input(), cfg, n_flag, m_flag, samples);
        } else {
            err << "no command given\n";
            return 2;
        }

        std::string text = report.dump(2);
        text += "\n";
        if (output_path.empty()) {
            out << text;
        } else {
            std::ofstream f(output_path);
            if (!f) throw ParseError("cannot open output path '" + output_path + "'");
            f << text;
        }
        return 0;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ContractError& e) {
        err << "contract violation: " << e.what() << "\n";
        return 3;
    } catch (const CapabilityError& e) {
        err << "capability error: " << e.what() << "\n";
        return 4;
    } catch (const PrecisionError& e) {
        err << "capability error (precision): " << e.what() << "\n";
        return 4;
    }
}

} // namespace qclocus::cli
