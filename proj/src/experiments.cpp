#include "quench/experiments.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <istream>
#include <ostream>
#include <sstream>

#include "quench/bose_hubbard.hpp"
#include "quench/dispersion.hpp"
#include "quench/ec3.hpp"
#include "quench/gap_scan.hpp"
#include "quench/modes.hpp"
#include "quench/rng.hpp"
#include "quench/scaling.hpp"
#include "quench/spinor.hpp"
#include "quench/sweep_profile.hpp"

namespace quench {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// parameter access helpers

double as_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("key '" + key + "': expected a number");
    return v.get<double>();
}

double get_number(const json& params, const std::string& key) {
    if (!params.contains(key)) throw ConfigError("missing required key '" + key + "'");
    return as_number(params.at(key), key);
}

double get_number_or(const json& params, const std::string& key, double fallback) {
    if (!params.contains(key)) return fallback;
    return as_number(params.at(key), key);
}

std::int64_t get_integer(const json& params, const std::string& key) {
    if (!params.contains(key)) throw ConfigError("missing required key '" + key + "'");
    const json& v = params.at(key);
    if (!v.is_number_integer()) throw ConfigError("key '" + key + "': expected an integer");
    return v.get<std::int64_t>();
}

std::int64_t get_integer_or(const json& params, const std::string& key, std::int64_t fallback) {
    if (!params.contains(key)) return fallback;
    const json& v = params.at(key);
    if (!v.is_number_integer()) throw ConfigError("key '" + key + "': expected an integer");
    return v.get<std::int64_t>();
}

std::string get_string_or(const json& params, const std::string& key, std::string fallback) {
    if (!params.contains(key)) return fallback;
    const json& v = params.at(key);
    if (!v.is_string()) throw ConfigError("key '" + key + "': expected a string");
    return v.get<std::string>();
}

// number array, or a {"min","max","points","log"} grid object
std::vector<double> get_grid(const json& params, const std::string& key) {
    if (!params.contains(key)) throw ConfigError("missing required key '" + key + "'");
    const json& v = params.at(key);
    std::vector<double> out;
    if (v.is_array()) {
        for (const auto& x : v) out.push_back(as_number(x, key));
        if (out.empty()) throw ConfigError("key '" + key + "': empty grid");
        return out;
    }
    if (v.is_object()) {
        const double lo = get_number(v, key + ".min");
        const double hi = get_number(v, key + ".max");
        const std::int64_t pts = get_integer(v, key + ".points");
        const bool log_spaced = v.value("log", false);
        if (pts < 2) throw ConfigError("key '" + key + ".points': need >= 2");
        if (log_spaced && !(lo > 0.0)) throw ConfigError("key '" + key + "': log grid needs min > 0");
        for (std::int64_t i = 0; i < pts; ++i) {
            const double f = static_cast<double>(i) / static_cast<double>(pts - 1);
            out.push_back(log_spaced ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
        }
        return out;
    }
    throw ConfigError("key '" + key + "': expected an array or a {min,max,points} object");
}

SweepProfile parse_profile(const json& obj, const std::string& key) {
    if (!obj.is_object()) throw ConfigError("key '" + key + "': expected a profile object");
    const std::string form = get_string_or(obj, "form", "");
    if (form.empty()) throw ConfigError("key '" + key + ".form': missing profile form");

    TimeDomain dom;
    const bool has_domain = obj.contains("t_start") || obj.contains("t_end");
    if (obj.contains("t_start")) dom.t_start = as_number(obj.at("t_start"), key + ".t_start");
    if (obj.contains("t_end")) dom.t_end = as_number(obj.at("t_end"), key + ".t_end");

    if (form == "constant") {
        return SweepProfile::constant(get_number(obj, "value"), dom);
    }
    if (form == "exponential") {
        return SweepProfile::exponential(get_number(obj, "v0"), get_number(obj, "gamma"), dom);
    }
    if (form == "power_law") {
        const double v0 = get_number(obj, "v0");
        const double t0 = get_number(obj, "t0");
        const double x = get_number(obj, "x");
        return has_domain ? SweepProfile::power_law(v0, t0, x, dom)
                          : SweepProfile::power_law(v0, t0, x);
    }
    if (form == "linear") {
        return SweepProfile::linear(get_number(obj, "v0"), get_number(obj, "rate"), dom);
    }
    if (form == "tabulated") {
        std::vector<double> t, v;
        if (!obj.contains("t") || !obj.contains("v")) {
            throw ConfigError("key '" + key + "': tabulated profile needs 't' and 'v' arrays");
        }
        for (const auto& x : obj.at("t")) t.push_back(as_number(x, key + ".t"));
        for (const auto& x : obj.at("v")) v.push_back(as_number(x, key + ".v"));
        return SweepProfile::tabulated(std::move(t), std::move(v));
    }
    throw ConfigError("key '" + key + ".form': unknown profile form '" + form + "'");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_cell(const ResultTable::Cell& c) {
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
    return std::get<std::string>(c);
}

// ---------------------------------------------------------------------------
// experiment runners

ResultTable run_bh_variance(const ExperimentConfig& cfg) {
    const double filling = get_number(cfg.parameters, "filling");
    const auto nus = get_grid(cfg.parameters, "nu");
    ResultTable t;
    t.columns = {"nu", "variance"};
    for (double nu : nus) {
        t.rows.push_back({nu, frozen_number_variance(filling, nu)});
    }
    return t;
}

ResultTable run_horizon(const ExperimentConfig& cfg) {
    const SweepProfile profile = parse_profile(cfg.parameters.at("profile"), "profile");
    const auto ts = get_grid(cfg.parameters, "t");
    double t_end = kInfinity;
    if (cfg.parameters.contains("t_end")) {
        const json& v = cfg.parameters.at("t_end");
        if (v.is_string() && v.get<std::string>() == "inf") {
            t_end = kInfinity;
        } else {
            t_end = as_number(v, "t_end");
        }
    }
    const double h = get_number_or(cfg.parameters, "shrink_step", 0.0);

    ResultTable t;
    t.columns = {"t", "status", "horizon_size"};
    if (h > 0.0) t.columns.push_back("shrink_rate");
    for (double ti : ts) {
        const HorizonSize hs = horizon_size(profile, ti, t_end);
        std::vector<ResultTable::Cell> row{ti,
                                           std::string(hs.is_divergent() ? "divergent" : "finite"),
                                           hs.is_divergent() ? kInfinity : hs.value()};
        if (h > 0.0) {
            row.push_back(hs.is_divergent() ? kInfinity : horizon_shrink_rate(profile, ti, h, t_end));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

DispersionRelation parse_relation(const json& obj) {
    const std::string kind = get_string_or(obj, "kind", "");
    auto param = [&](const char* key) -> SweepProfile {
        const json& v = obj.at(key);
        if (v.is_number()) return SweepProfile::constant(v.get<double>());
        return parse_profile(v, key);
    };
    if (kind == "quadratic") {
        if (!obj.contains("mass_sq") || !obj.contains("speed_sq")) {
            throw ConfigError("quadratic relation needs 'mass_sq' and 'speed_sq'");
        }
        return DispersionRelation::quadratic(param("mass_sq"), param("speed_sq"));
    }
    if (kind == "roton") {
        if (!obj.contains("k_crit") || !obj.contains("delta") || !obj.contains("curvature")) {
            throw ConfigError("roton relation needs 'k_crit', 'delta' and 'curvature'");
        }
        return DispersionRelation::roton(param("k_crit"), param("delta"), param("curvature"));
    }
    if (kind == "tabulated") {
        std::vector<double> ks, ws;
        for (const auto& x : obj.at("k_sq")) ks.push_back(as_number(x, "relation.k_sq"));
        for (const auto& x : obj.at("omega_sq")) ws.push_back(as_number(x, "relation.omega_sq"));
        return DispersionRelation::tabulated(std::move(ks), std::move(ws));
    }
    throw ConfigError("key 'relation.kind': unknown dispersion kind '" + kind + "'");
}

ResultTable run_dispersion(const ExperimentConfig& cfg) {
    if (!cfg.parameters.contains("relation")) throw ConfigError("missing required key 'relation'");
    const DispersionRelation d = parse_relation(cfg.parameters.at("relation"));
    const double t = get_number_or(cfg.parameters, "t", 0.0);
    const double k_max = get_number(cfg.parameters, "k_max");
    const InstabilityClass cls = classify_dispersion(d, t, k_max);
    const char* names[] = {"stable", "roton", "mass_gap", "stiffness"};
    ResultTable out;
    out.columns = {"t", "classification", "k_min", "omega_sq_min"};
    out.rows.push_back(
        {t, std::string(names[static_cast<int>(cls.kind)]), cls.k_min, cls.omega_sq_min});
    return out;
}

ResultTable run_bh_sweep(const ExperimentConfig& cfg) {
    BHParams p{get_number(cfg.parameters, "filling"), get_number(cfg.parameters, "repulsion"),
               get_number(cfg.parameters, "spacing"),
               parse_profile(cfg.parameters.at("hopping"), "hopping")};
    const auto ks = get_grid(cfg.parameters, "k");
    const double t0 = get_number(cfg.parameters, "t0");
    const double t1 = get_number(cfg.parameters, "t1");
    const auto results = simulate_bh_sweep(p, ks, t0, t1, {}, cfg.threads);
    const char* names[] = {"frozen", "oscillating", "decaying_to_zero", "ambiguous"};
    ResultTable out;
    out.columns = {"k", "outcome", "frozen_value", "drift", "final_over_initial", "extrema"};
    for (const auto& r : results) {
        out.rows.push_back({r.k, std::string(names[static_cast<int>(r.outcome)]), r.frozen_value,
                            r.drift, r.final_over_initial, static_cast<std::int64_t>(r.extrema)});
    }
    return out;
}

ResultTable run_spinor(const ExperimentConfig& cfg) {
    SpinorQuenchParams p;
    p.grid_size = static_cast<int>(get_integer_or(cfg.parameters, "grid", 96));
    p.spacing = get_number_or(cfg.parameters, "spacing", 1.0);
    p.mass_sq_pre = get_number_or(cfg.parameters, "mass_sq_pre", 1.0);
    p.mass_sq_post = get_number_or(cfg.parameters, "mass_sq_post", -1.0);
    p.stiffness = get_number_or(cfg.parameters, "stiffness", 1.0);
    p.growth_time = get_number_or(cfg.parameters, "growth_time", 6.0);
    p.cutoff_k = get_number_or(cfg.parameters, "cutoff_k", kInfinity);
    const auto radii = get_grid(cfg.parameters, "radii");
    const std::int64_t samples = get_integer(cfg.parameters, "samples");
    if (samples < 1) throw ConfigError("key 'samples': need >= 1");

    const WindingReport rep = winding_statistics(p, radii, static_cast<std::size_t>(samples),
                                                 cfg.seed, cfg.threads);
    const ScalingFit fit = scaling_fit(rep);

    ResultTable out;
    out.columns = {"radius",   "n_mean",        "n_mean_se", "n_sq_mean", "n_sq_se",
                   "best_model", "log_log_slope", "amp_r",     "ssr_r",     "amp_r_log_r",
                   "ssr_r_log_r", "amp_r_sq",     "ssr_r_sq"};
    for (std::size_t i = 0; i < rep.radii.size(); ++i) {
        out.rows.push_back({rep.radii[i], rep.n_mean[i], rep.n_mean_se[i], rep.n_sq_mean[i],
                            rep.n_sq_se[i], fit.models[static_cast<std::size_t>(fit.best_index)].name,
                            fit.log_log_slope, fit.models[0].amplitude, fit.models[0].weighted_ssr,
                            fit.models[1].amplitude, fit.models[1].weighted_ssr,
                            fit.models[2].amplitude, fit.models[2].weighted_ssr});
    }
    return out;
}

Ec3Instance instance_from_config(const ExperimentConfig& cfg, std::uint64_t seed) {
    const int n = static_cast<int>(get_integer(cfg.parameters, "n"));
    if (cfg.parameters.contains("clauses")) {
        std::vector<Ec3Clause> clauses;
        for (const auto& c : cfg.parameters.at("clauses")) {
            if (!c.is_array() || c.size() != 3) {
                throw ConfigError("key 'clauses': each clause must be a 3-element array "
                                  "(1-based variable indices)");
            }
            clauses.push_back({c[0].get<int>() - 1, c[1].get<int>() - 1, c[2].get<int>() - 1});
        }
        return Ec3Instance::make(n, std::move(clauses));
    }
    const int m = static_cast<int>(get_integer(cfg.parameters, "m"));
    Ec3Options opts;
    opts.require_unique_solution = cfg.parameters.value("unique_solution", true);
    return random_ec3_instance(n, m, seed, opts);
}

ResultTable run_aqc_scan(const ExperimentConfig& cfg) {
    const Ec3Instance inst = instance_from_config(cfg, cfg.seed);
    const std::string scheme = get_string_or(cfg.parameters, "scheme", "xy");
    const std::string rule = get_string_or(cfg.parameters, "weight_rule", "clause_degree");
    if (scheme != "x" && scheme != "xy") {
        throw ConfigError("key 'scheme': expected 'x' or 'xy'");
    }
    const SpinHamiltonian h_out = build_h_out(inst);
    const SpinHamiltonian h_in =
        scheme == "x" ? build_h_in_x(inst, rule == "unit" ? WeightRule::Unit
                                                          : WeightRule::ClauseDegree)
                      : build_h_in_xy(inst);

    GapScanOptions opts;
    opts.grid_points = static_cast<int>(get_integer_or(cfg.parameters, "grid_points", 33));
    std::string sector_label = "full";
    if (cfg.parameters.contains("sector")) {
        const json& s = cfg.parameters.at("sector");
        if (s.is_number_integer()) {
            opts.sector = s.get<int>();
        } else if (s.is_string() && s.get<std::string>() == "solution") {
            const auto sols = ec3_solutions(inst, 1);
            if (sols.empty()) throw ConfigError("key 'sector': instance has no solution");
            opts.sector = 2 * std::popcount(sols.front()) - inst.n;
        } else if (!(s.is_string() && s.get<std::string>() == "full")) {
            throw ConfigError("key 'sector': expected an integer, 'solution' or 'full'");
        }
    } else if (scheme == "xy") {
        const auto sols = ec3_solutions(inst, 1);
        if (sols.empty()) throw ConfigError("xy scan default sector: instance has no solution");
        opts.sector = 2 * std::popcount(sols.front()) - inst.n;
    }
    if (opts.sector) sector_label = std::to_string(*opts.sector);

    const GapScan scan = gap_scan(h_in, h_out, opts);
    ResultTable out;
    out.metadata.push_back({"scheme", scheme});
    out.metadata.push_back({"sector", sector_label});
    out.columns = {"g", "e0", "e1", "gap", "matrix_element", "min_gap", "min_gap_g", "sector"};
    for (const auto& p : scan.points) {
        out.rows.push_back({p.g, p.e0, p.e1, p.gap, p.matrix_element, scan.min_gap, scan.min_gap_g,
                            sector_label});
    }
    return out;
}

ResultTable run_aqc_compare(const ExperimentConfig& cfg) {
    const int n = static_cast<int>(get_integer(cfg.parameters, "n"));
    const int m = static_cast<int>(get_integer(cfg.parameters, "m"));
    const std::int64_t count = get_integer(cfg.parameters, "count");
    if (count < 1) throw ConfigError("key 'count': need >= 1");
    const std::string rule = get_string_or(cfg.parameters, "weight_rule", "clause_degree");

    std::vector<Ec3Instance> batch;
    std::vector<std::uint64_t> seeds;
    Ec3Options opts;
    opts.require_unique_solution = cfg.parameters.value("unique_solution", true);
    for (std::int64_t i = 0; i < count; ++i) {
        const std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
        seeds.push_back(s);
        batch.push_back(random_ec3_instance(n, m, s, opts));
    }
    GapScanOptions base;
    base.grid_points = static_cast<int>(get_integer_or(cfg.parameters, "grid_points", 33));
    const SchemeComparison cmp = compare_schemes(
        batch, rule == "unit" ? WeightRule::Unit : WeightRule::ClauseDegree, cfg.threads, base);

    ResultTable out;
    out.columns = {"index",       "instance_seed",     "solution_weight",
                   "x_min_gap",   "x_runtime",         "xy_min_gap_sector",
                   "xy_min_gap_full", "xy_runtime",    "x_median_runtime",
                   "xy_median_runtime", "xy_wins",     "x_wins",
                   "ties"};
    for (std::size_t i = 0; i < cmp.rows.size(); ++i) {
        const auto& r = cmp.rows[i];
        out.rows.push_back({static_cast<std::int64_t>(r.index),
                            static_cast<std::int64_t>(seeds[i]),
                            static_cast<std::int64_t>(r.solution_weight), r.x_min_gap, r.x_runtime,
                            r.xy_min_gap_sector, r.xy_min_gap_full, r.xy_runtime,
                            cmp.x_median_runtime, cmp.xy_median_runtime,
                            static_cast<std::int64_t>(cmp.xy_wins),
                            static_cast<std::int64_t>(cmp.x_wins),
                            static_cast<std::int64_t>(cmp.ties)});
    }
    return out;
}

ResultTable run_scaling(const ExperimentConfig& cfg) {
    const FirstOrderModel model{get_number(cfg.parameters, "overlap_decay"),
                                static_cast<int>(get_integer(cfg.parameters, "poly_degree"))};
    const double g = get_number_or(cfg.parameters, "tfim_g", 1.0);
    const double j = get_number_or(cfg.parameters, "tfim_j", 1.0);
    const auto ns = get_grid(cfg.parameters, "n");
    ResultTable out;
    out.columns = {"n", "first_order_gap", "tfim_gap", "tfim_gap_times_n"};
    for (double nd : ns) {
        const int n = static_cast<int>(nd);
        out.rows.push_back({static_cast<std::int64_t>(n), first_order_gap(model, n),
                            tfim_gap(n, g, j), tfim_gap(n, g, j) * n});
    }
    return out;
}

ResultTable run_decoherence(const ExperimentConfig& cfg) {
    if (!cfg.parameters.contains("bath")) throw ConfigError("missing required key 'bath'");
    const json& b = cfg.parameters.at("bath");
    const BathSpectrum bath = BathSpectrum::power_law(
        get_number(b, "eta"), get_number(b, "exponent"), get_number_or(b, "cutoff", kInfinity));
    const double prefactor = get_number_or(cfg.parameters, "prefactor", 1.0);
    if (!cfg.parameters.contains("first_order")) {
        throw ConfigError("missing required key 'first_order'");
    }
    const json& fo = cfg.parameters.at("first_order");
    const FirstOrderModel model{get_number(fo, "overlap_decay"),
                                static_cast<int>(get_integer(fo, "poly_degree"))};

    std::function<double(int)> gap2;
    if (cfg.parameters.contains("second_order")) {
        const json& so = cfg.parameters.at("second_order");
        const std::string form = get_string_or(so, "form", "tfim");
        if (form == "tfim") {
            const double j = get_number_or(so, "j", 1.0);
            gap2 = [j](int n) { return tfim_gap(n, 1.0, j); };
        } else if (form == "power") {
            const double coeff = get_number(so, "coefficient");
            const double expo = get_number(so, "exponent");
            gap2 = [coeff, expo](int n) { return coeff * std::pow(n, -expo); };
        } else {
            throw ConfigError("key 'second_order.form': expected 'tfim' or 'power'");
        }
    } else {
        gap2 = [](int n) { return tfim_gap(n, 1.0, 1.0); };
    }

    const auto nd = get_grid(cfg.parameters, "n");
    std::vector<int> ns;
    for (double x : nd) ns.push_back(static_cast<int>(x));
    const VulnerabilityReport rep = scheme_vulnerability_report(model, gap2, bath, ns, prefactor);
    ResultTable out;
    out.columns = {"n",
                   "first_order_gap",
                   "first_order_error",
                   "second_order_gap",
                   "second_order_error",
                   "first_order_ir_controlled",
                   "second_order_growing"};
    for (const auto& r : rep.rows) {
        out.rows.push_back({static_cast<std::int64_t>(r.n), r.first_order_gap, r.first_order_error,
                            r.second_order_gap, r.second_order_error,
                            static_cast<std::int64_t>(rep.first_order_infrared_controlled ? 1 : 0),
                            static_cast<std::int64_t>(rep.second_order_growing ? 1 : 0)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// schema description used by validate_config

enum class FieldKind { Number, Integer, String, Array, Object, NumberArrayOrGrid, Any };

struct FieldSpec {
    const char* name;
    FieldKind kind;
    bool required;
};

const std::vector<FieldSpec>& schema_for(const std::string& experiment) {
    static const std::map<std::string, std::vector<FieldSpec>> schemas = {
        {"bh-variance",
         {{"filling", FieldKind::Number, true}, {"nu", FieldKind::NumberArrayOrGrid, true}}},
        {"horizon",
         {{"profile", FieldKind::Object, true},
          {"t", FieldKind::NumberArrayOrGrid, true},
          {"t_end", FieldKind::Any, false},
          {"shrink_step", FieldKind::Number, false}}},
        {"dispersion",
         {{"relation", FieldKind::Object, true},
          {"t", FieldKind::Number, false},
          {"k_max", FieldKind::Number, true}}},
        {"bh-sweep",
         {{"filling", FieldKind::Number, true},
          {"repulsion", FieldKind::Number, true},
          {"spacing", FieldKind::Number, true},
          {"hopping", FieldKind::Object, true},
          {"k", FieldKind::NumberArrayOrGrid, true},
          {"t0", FieldKind::Number, true},
          {"t1", FieldKind::Number, true}}},
        {"spinor",
         {{"grid", FieldKind::Integer, false},
          {"spacing", FieldKind::Number, false},
          {"mass_sq_pre", FieldKind::Number, false},
          {"mass_sq_post", FieldKind::Number, false},
          {"stiffness", FieldKind::Number, false},
          {"growth_time", FieldKind::Number, false},
          {"cutoff_k", FieldKind::Number, false},
          {"radii", FieldKind::NumberArrayOrGrid, true},
          {"samples", FieldKind::Integer, true}}},
        {"aqc-scan",
         {{"n", FieldKind::Integer, true},
          {"m", FieldKind::Integer, false},
          {"clauses", FieldKind::Array, false},
          {"scheme", FieldKind::String, false},
          {"weight_rule", FieldKind::String, false},
          {"grid_points", FieldKind::Integer, false},
          {"sector", FieldKind::Any, false},
          {"unique_solution", FieldKind::Any, false}}},
        {"aqc-compare",
         {{"n", FieldKind::Integer, true},
          {"m", FieldKind::Integer, true},
          {"count", FieldKind::Integer, true},
          {"weight_rule", FieldKind::String, false},
          {"grid_points", FieldKind::Integer, false},
          {"unique_solution", FieldKind::Any, false}}},
        {"scaling",
         {{"overlap_decay", FieldKind::Number, true},
          {"poly_degree", FieldKind::Integer, true},
          {"tfim_g", FieldKind::Number, false},
          {"tfim_j", FieldKind::Number, false},
          {"n", FieldKind::NumberArrayOrGrid, true}}},
        {"decoherence",
         {{"bath", FieldKind::Object, true},
          {"prefactor", FieldKind::Number, false},
          {"first_order", FieldKind::Object, true},
          {"second_order", FieldKind::Object, false},
          {"n", FieldKind::NumberArrayOrGrid, true}}},
    };
    auto it = schemas.find(experiment);
    if (it == schemas.end()) throw ConfigError("unknown experiment '" + experiment + "'");
    return it->second;
}

bool kind_matches(const json& v, FieldKind k) {
    switch (k) {
        case FieldKind::Number: return v.is_number();
        case FieldKind::Integer: return v.is_number_integer();
        case FieldKind::String: return v.is_string();
        case FieldKind::Array: return v.is_array();
        case FieldKind::Object: return v.is_object();
        case FieldKind::NumberArrayOrGrid: return v.is_array() || v.is_object();
        case FieldKind::Any: return true;
    }
    return false;
}

const char* kind_name(FieldKind k) {
    switch (k) {
        case FieldKind::Number: return "number";
        case FieldKind::Integer: return "integer";
        case FieldKind::String: return "string";
        case FieldKind::Array: return "array";
        case FieldKind::Object: return "object";
        case FieldKind::NumberArrayOrGrid: return "array or grid object";
        case FieldKind::Any: return "any";
    }
    return "?";
}

}  // namespace

std::vector<std::string> list_experiments() {
    return {"horizon",  "bh-sweep",    "bh-variance", "dispersion", "spinor",
            "aqc-compare", "aqc-scan", "scaling",     "decoherence"};
}

ExperimentConfig parse_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    ExperimentConfig cfg;
    if (!doc.contains("experiment") || !doc.at("experiment").is_string()) {
        throw ConfigError("missing required key 'experiment' (string)");
    }
    cfg.experiment = doc.at("experiment").get<std::string>();
    const auto known = list_experiments();
    if (std::find(known.begin(), known.end(), cfg.experiment) == known.end()) {
        throw ConfigError("unknown experiment '" + cfg.experiment + "'");
    }
    if (!doc.contains("parameters") || !doc.at("parameters").is_object()) {
        throw ConfigError("missing required key 'parameters' (object)");
    }
    cfg.parameters = doc.at("parameters");
    if (doc.contains("seed")) {
        const json& s = doc.at("seed");
        if (!s.is_number_unsigned() && !s.is_number_integer()) {
            throw ConfigError("key 'seed': expected a 64-bit unsigned integer");
        }
        cfg.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("output")) {
        if (!doc.at("output").is_string()) throw ConfigError("key 'output': expected a string");
        cfg.output = doc.at("output").get<std::string>();
    }
    if (doc.contains("format")) {
        const std::string f = doc.at("format").is_string() ? doc.at("format").get<std::string>() : "";
        if (f == "csv") {
            cfg.format = OutputFormat::Csv;
        } else if (f == "json") {
            cfg.format = OutputFormat::Json;
        } else {
            throw ConfigError("key 'format': expected 'csv' or 'json'");
        }
    }
    if (doc.contains("threads")) {
        const json& t = doc.at("threads");
        if (!t.is_number_integer() || t.get<std::int64_t>() < 1) {
            throw ConfigError("key 'threads': expected an integer >= 1");
        }
        cfg.threads = static_cast<unsigned>(t.get<std::int64_t>());
    }
    return cfg;
}

ValidationReport validate_config(const nlohmann::json& doc) {
    ValidationReport rep;
    ExperimentConfig cfg;
    try {
        cfg = parse_config(doc);
    } catch (const ConfigError& e) {
        rep.errors.push_back(e.what());
        return rep;
    }
    const auto& schema = schema_for(cfg.experiment);
    for (const auto& field : schema) {
        if (!cfg.parameters.contains(field.name)) {
            if (field.required) {
                rep.errors.push_back(std::string("missing required key '") + field.name + "'");
            }
            continue;
        }
        if (!kind_matches(cfg.parameters.at(field.name), field.kind)) {
            rep.errors.push_back(std::string("key '") + field.name + "': expected " +
                                 kind_name(field.kind));
        }
    }
    for (const auto& [key, value] : cfg.parameters.items()) {
        (void)value;
        bool known = false;
        for (const auto& field : schema) {
            if (key == field.name) known = true;
        }
        if (!known) rep.warnings.push_back("unknown key '" + key + "'");
    }
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "experiment" && key != "parameters" && key != "seed" && key != "output" &&
            key != "format" && key != "threads") {
            rep.warnings.push_back("unknown top-level key '" + key + "'");
        }
    }
    // aqc-scan needs either a clause list or a clause count
    if (cfg.experiment == "aqc-scan" && !cfg.parameters.contains("clauses") &&
        !cfg.parameters.contains("m")) {
        rep.errors.push_back("aqc-scan needs either 'clauses' or 'm'");
    }
    return rep;
}

ResultTable run_experiment(const ExperimentConfig& cfg) {
    ResultTable table;
    if (cfg.experiment == "bh-variance") {
        table = run_bh_variance(cfg);
    } else if (cfg.experiment == "horizon") {
        table = run_horizon(cfg);
    } else if (cfg.experiment == "dispersion") {
        table = run_dispersion(cfg);
    } else if (cfg.experiment == "bh-sweep") {
        table = run_bh_sweep(cfg);
    } else if (cfg.experiment == "spinor") {
        table = run_spinor(cfg);
    } else if (cfg.experiment == "aqc-scan") {
        table = run_aqc_scan(cfg);
    } else if (cfg.experiment == "aqc-compare") {
        table = run_aqc_compare(cfg);
    } else if (cfg.experiment == "scaling") {
        table = run_scaling(cfg);
    } else if (cfg.experiment == "decoherence") {
        table = run_decoherence(cfg);
    } else {
        throw ConfigError("unknown experiment '" + cfg.experiment + "'");
    }

    std::vector<std::pair<std::string, std::string>> meta;
    meta.push_back({"experiment", cfg.experiment});
    meta.push_back({"seed", std::to_string(cfg.seed)});
    meta.push_back({"threads", std::to_string(cfg.threads)});
    meta.push_back({"version", "0.1.0"});
    const auto now = std::chrono::system_clock::now();
    meta.push_back({"generated_unix", std::to_string(std::chrono::duration_cast<std::chrono::seconds>(
                                                         now.time_since_epoch())
                                                         .count())});
    meta.insert(meta.end(), table.metadata.begin(), table.metadata.end());
    table.metadata = std::move(meta);
    return table;
}

std::string data_section(const ResultTable& table) {
    std::ostringstream out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << format_cell(row[c]);
        }
        out << "\n";
    }
    return out.str();
}

void write_csv(const ResultTable& table, std::ostream& out) {
    for (const auto& [key, value] : table.metadata) {
        out << "# " << key << ": " << value << "\n";
    }
    out << data_section(table);
}

void write_json(const ResultTable& table, std::ostream& out) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json meta;
    for (const auto& [key, value] : table.metadata) meta[key] = value;
    doc["meta"] = std::move(meta);
    doc["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& cell : row) {
            if (std::holds_alternative<double>(cell)) {
                const double v = std::get<double>(cell);
                if (std::isfinite(v)) {
                    r.push_back(v);
                } else {
                    r.push_back(format_double(v));  // JSON has no inf literal
                }
            } else if (std::holds_alternative<std::int64_t>(cell)) {
                r.push_back(std::get<std::int64_t>(cell));
            } else {
                r.push_back(std::get<std::string>(cell));
            }
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << "\n";
}

ResultTable read_csv(std::istream& in) {
    ResultTable table;
    std::string line;
    bool header_done = false;
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::string cur;
        for (char ch : s) {
            if (ch == ',') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        parts.push_back(cur);
        return parts;
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto colon = line.find(':');
            if (colon != std::string::npos) {
                std::string key = line.substr(1, colon - 1);
                std::string value = line.substr(colon + 1);
                auto trim = [](std::string& s) {
                    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
                    while (!s.empty() && s.back() == ' ') s.pop_back();
                };
                trim(key);
                trim(value);
                table.metadata.push_back({key, value});
            }
            continue;
        }
        if (!header_done) {
            table.columns = split(line);
            header_done = true;
            continue;
        }
        std::vector<ResultTable::Cell> row;
        for (const auto& cell : split(line)) {
            try {
                std::size_t pos = 0;
                const long long iv = std::stoll(cell, &pos);
                if (pos == cell.size()) {
                    row.push_back(static_cast<std::int64_t>(iv));
                    continue;
                }
            } catch (...) {
            }
            try {
                std::size_t pos = 0;
                const double dv = std::stod(cell, &pos);
                if (pos == cell.size()) {
                    row.push_back(dv);
                    continue;
                }
            } catch (...) {
            }
            row.push_back(cell);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace quench
