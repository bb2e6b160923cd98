#ifndef NCL_IO_HPP
#define NCL_IO_HPP

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ncl/ass_state.hpp"
#include "ncl/criteria.hpp"
#include "ncl/fock.hpp"
#include "ncl/measurement.hpp"
#include "ncl/moment_table.hpp"

namespace ncl {

using json = nlohmann::json;

/// Lossless decimal form used in CSV output.
inline std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

/// Accepts [re, im] or a bare real number.
inline cplx complex_from_json(const json& j, const char* what)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ValidationError(std::string(what) + " must be a number or [re, im]");
}

// ---- state specifications ----

struct BuiltState
{
    State state;
    std::string type;
    std::optional<AssParams> ass;
};

namespace detail {

inline double number_field(const json& spec, const char* key)
{
    if (!spec.contains(key) || !spec[key].is_number())
        throw ValidationError(std::string("state spec needs numeric \"") + key + "\"");
    return spec[key].get<double>();
}

inline int int_field(const json& spec, const char* key)
{
    if (!spec.contains(key) || !spec[key].is_number_integer())
        throw ValidationError(std::string("state spec needs integer \"") + key + "\"");
    return spec[key].get<int>();
}

} // namespace detail

/// Builds a state from {"type": ..., params..., "dim": n}. A missing "dim"
/// falls back to default_dim.
inline BuiltState build_state(const json& spec, int default_dim)
{
    if (!spec.is_object() || !spec.contains("type") || !spec["type"].is_string())
        throw ValidationError("state spec must be an object with a string \"type\"");
    const std::string type = spec["type"].get<std::string>();
    const int dim = spec.contains("dim") ? detail::int_field(spec, "dim") : default_dim;
    if (dim < 1)
        throw ValidationError("state dim must be >= 1");

    if (type == "fock") {
        const int n = detail::int_field(spec, "n");
        if (n < 0)
            throw ValidationError("Fock number must be >= 0");
        if (n >= dim)
            throw TruncationError("Fock level outside truncated space", 1.0, n + 1);
        return {make_fock(n, dim), type, std::nullopt};
    }
    if (type == "coherent") {
        if (!spec.contains("alpha"))
            throw ValidationError("coherent spec needs \"alpha\"");
        return {make_coherent(complex_from_json(spec["alpha"], "alpha"), dim), type, std::nullopt};
    }
    if (type == "thermal") {
        const double nbar = detail::number_field(spec, "nbar");
        if (nbar < 0.0)
            throw ValidationError("thermal nbar must be >= 0");
        return {make_thermal(nbar, dim), type, std::nullopt};
    }
    if (type == "squeezed_vacuum") {
        cplx z;
        if (spec.contains("z")) {
            z = complex_from_json(spec["z"], "z");
        } else {
            const double r = detail::number_field(spec, "r");
            const double phi = spec.contains("phi") ? detail::number_field(spec, "phi") : 0.0;
            z = std::polar(r, phi);
        }
        return {apply_squeeze(make_fock(0, dim), z), type, std::nullopt};
    }
    if (type == "ass") {
        const int m = detail::int_field(spec, "m");
        const double lambda = detail::number_field(spec, "lambda");
        auto [psi, params] = make_ass_state(m, lambda, dim);
        return {std::move(psi), type, params};
    }
    throw ValidationError("unknown state type '" + type + "'");
}

// ---- moment tables ----

inline json to_json(const MomentTable& t)
{
    json out = json::array();
    for (int k = 0; k <= t.max_order(); ++k)
        for (int l = 0; l <= k; ++l)
            if (t.has(k, l)) {
                const cplx v = t(k, l);
                out.push_back({{"k", k}, {"l", l}, {"re", v.real()}, {"im", v.imag()}});
            }
    return out;
}

inline MomentTable moment_table_from_json(const json& j)
{
    if (!j.is_array())
        throw ValidationError("moment table must be a JSON array");
    int order = 0;
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("k") || !e.contains("l") || !e.contains("re") || !e.contains("im"))
            throw ValidationError("moment table entries need k, l, re, im");
        order = std::max({order, e["k"].get<int>(), e["l"].get<int>()});
    }
    MomentTable t(order);
    for (const auto& e : j) {
        const int k = e["k"].get<int>();
        const int l = e["l"].get<int>();
        if (k < 0 || l < 0)
            throw ValidationError("moment indices must be >= 0");
        t.set(k, l, {e["re"].get<double>(), e["im"].get<double>()});
    }
    return t;
}

// ---- criterion reports ----

inline json to_json(const CriterionReport& r)
{
    json dets = json::array();
    for (const auto& d : r.determinants)
        dets.push_back({{"N", d.order}, {"value", d.value}});
    json wit = json::object();
    for (const auto& [name, value] : r.witnesses)
        wit[name] = value;
    json out{{"kind", to_string(r.kind)},
             {"phi", r.phi},
             {"determinants", dets},
             {"witnesses", wit},
             {"tolerance", r.tolerance}};
    out["first_negative_order"] = r.first_negative_order ? json(*r.first_negative_order) : json(nullptr);
    return out;
}

// ---- detection records ----

inline json to_json(const LOConfig& lo)
{
    return {{"alpha", complex_to_json(lo.alpha)},
            {"t0", complex_to_json(lo.t0)},
            {"r0", complex_to_json(lo.r0)},
            {"depth", lo.depth}};
}

inline LOConfig lo_from_json(const json& j)
{
    if (!j.is_object())
        throw ValidationError("lo must be an object");
    LOConfig lo;
    lo.alpha = complex_from_json(j.at("alpha"), "lo.alpha");
    lo.t0 = complex_from_json(j.at("t0"), "lo.t0");
    lo.r0 = complex_from_json(j.at("r0"), "lo.r0");
    lo.depth = j.at("depth").get<int>();
    return lo;
}

inline json to_json(const DetectionRecord& rec)
{
    json corr = json::array();
    for (const auto& c : rec.correlations)
        corr.push_back({{"detectors", c.detectors}, {"blocked_lo", c.blocked_lo}, {"value", c.value}});
    json fn = json::array();
    for (const auto& s : rec.fn_samples)
        fn.push_back({{"n", s.n}, {"phi", s.phi}, {"value", s.value}});
    return {{"scheme", to_string(rec.scheme)},
            {"lo", to_json(rec.lo)},
            {"phi", rec.phi},
            {"correlations", corr},
            {"fn_samples", fn}};
}

inline DetectionRecord detection_record_from_json(const json& j)
{
    try {
        DetectionRecord rec;
        rec.scheme = scheme_from_string(j.at("scheme").get<std::string>());
        rec.lo = lo_from_json(j.at("lo"));
        rec.phi = j.value("phi", 0.0);
        for (const auto& c : j.value("correlations", json::array())) {
            auto dets = c.at("detectors").get<std::vector<int>>();
            std::sort(dets.begin(), dets.end());
            rec.correlations.push_back({dets, c.value("blocked_lo", false), c.at("value").get<double>()});
        }
        for (const auto& s : j.value("fn_samples", json::array()))
            rec.fn_samples.push_back({s.at("n").get<int>(), s.at("phi").get<double>(), s.at("value").get<double>()});
        return rec;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed detection record: ") + e.what());
    }
}

inline json to_json(const SchemeBMoments& m)
{
    return {{"scheme", "b"}, {"theta", m.theta}, {"n", m.n},  {"x", m.x},
            {"p", m.p},      {"xx", m.xx},       {"pp", m.pp}, {"xp", m.xp}};
}

inline json to_json(const SchemeCMoments& m)
{
    return {{"scheme", "c"}, {"theta", m.theta}, {"n", m.n}, {"x", m.x}, {"nn", m.nn}, {"xx", m.xx}, {"nx", m.nx}};
}

} // namespace ncl

#endif // NCL_IO_HPP
