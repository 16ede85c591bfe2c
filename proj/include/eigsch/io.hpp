#pragma once

// JSON interchange for tensors, determinantal tuples, points and reports.
// Polynomials travel as strings in the canonical text format; exact
// coordinates as rational strings; complex coordinates as [re, im] pairs.

#include "algorithms.hpp"
#include "geometry.hpp"
#include "hilbert.hpp"
#include "solver.hpp"
#include "tensor.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace eigsch {

using Json = nlohmann::ordered_json;

/// Thrown on payloads that do not match the expected schema.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline int require_int(const Json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_number_integer()) throw SchemaError(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

inline Poly parse_poly_field(const Json& v, int nvars) {
    if (!v.is_string()) throw SchemaError("polynomials must be strings");
    try {
        return Poly::parse(v.get<std::string>(), nvars);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
}

inline Rational parse_rational_field(const Json& v) {
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long>());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    throw SchemaError("exact coordinates must be integers or rational strings");
}

template <typename F>
auto wrap(F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Tensors

using AnyTensor = std::variant<PSTensor, SymTensor>;

inline Json to_json(const PSTensor& t) {
    Json j{{"n", t.n}, {"d", t.d}, {"kind", "partially_symmetric"}, {"forms", Json::array()}};
    for (const auto& g : t.forms) j["forms"].push_back(g.to_string());
    return j;
}

inline Json to_json(const SymTensor& t) {
    return Json{{"n", t.n}, {"d", t.d}, {"kind", "symmetric"}, {"forms", Json::array({t.f.to_string()})}};
}

/// {"n", "d", "kind", "forms"}: one form when symmetric, n+1 otherwise. Without
/// "kind" a single form means symmetric.
inline AnyTensor tensor_from_json(const Json& j) {
    int n = detail::require_int(j, "n");
    int d = detail::require_int(j, "d");
    if (n < 1 || d < 2) throw SchemaError("tensor needs n >= 1 and d >= 2");
    const auto& forms = detail::require(j, "forms");
    if (!forms.is_array()) throw SchemaError("\"forms\" must be an array");
    bool symmetric = forms.size() == 1;
    if (j.contains("kind")) {
        const auto& k = j.at("kind");
        if (k == "symmetric")
            symmetric = true;
        else if (k == "partially_symmetric")
            symmetric = false;
        else
            throw SchemaError("\"kind\" must be \"symmetric\" or \"partially_symmetric\"");
    }
    std::vector<Poly> gs;
    for (const auto& g : forms) gs.push_back(detail::parse_poly_field(g, n + 1));
    if (symmetric) {
        if (gs.size() != 1) throw SchemaError("a symmetric tensor has exactly one form");
        return detail::wrap([&] { return SymTensor::make(n, d, gs.front()); });
    }
    return detail::wrap([&] { return PSTensor::make(n, d, gs); });
}

inline PSTensor as_partially_symmetric(const AnyTensor& t) {
    if (const auto* s = std::get_if<SymTensor>(&t)) return gradient_tensor(*s);
    return std::get<PSTensor>(t);
}

// ---------------------------------------------------------------------------
// Determinantal tuples

inline Json to_json(const DetTuple& f) {
    Json j{{"n", f.n}, {"d", f.d}, {"minors", Json::array()}};
    for (auto [i, k] : index_pairs(f.n)) j["minors"].push_back(Json{{"i", i}, {"j", k}, {"f", f.at(i, k).to_string()}});
    return j;
}

/// {"n", "d", "minors": [{"i", "j", "f"}, ...]}; omitted minors are zero.
inline DetTuple det_tuple_from_json(const Json& j) {
    int n = detail::require_int(j, "n");
    int d = detail::require_int(j, "d");
    if (n < 1 || d < 2) throw SchemaError("tuple needs n >= 1 and d >= 2");
    const auto& minors = detail::require(j, "minors");
    if (!minors.is_array()) throw SchemaError("\"minors\" must be an array");
    std::vector<Poly> entries(pair_count(n), Poly(n + 1));
    std::vector<bool> seen(entries.size(), false);
    for (const auto& m : minors) {
        int i = detail::require_int(m, "i");
        int k = detail::require_int(m, "j");
        if (i < 0 || k > n || i >= k) throw SchemaError("minor indices must satisfy 0 <= i < j <= n");
        auto idx = pair_index(n, i, k);
        if (seen[idx]) throw SchemaError("duplicate minor");
        seen[idx] = true;
        entries[idx] = detail::parse_poly_field(detail::require(m, "f"), n + 1);
    }
    return detail::wrap([&] { return DetTuple::make(n, d, entries); });
}

// ---------------------------------------------------------------------------
// Points

inline Json to_json(const RatPoint& p) {
    Json j = Json::array();
    for (const auto& c : p.coords) j.push_back(to_string(c));
    return j;
}

inline Json to_json(const ComplexPoint& p) {
    Json j = Json::array();
    for (const auto& c : p.coords) j.push_back(Json::array({c.real(), c.imag()}));
    return j;
}

inline Json to_json(const ProjPoint& p) {
    return std::visit([](const auto& q) { return to_json(q); }, p);
}

/// A point is exact when every coordinate is a string or integer, complex when
/// every coordinate is an [re, im] pair.
inline ProjPoint point_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw SchemaError("a point must be a nonempty array");
    if (j.front().is_array()) {
        ComplexPoint p;
        for (const auto& c : j) {
            if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
                throw SchemaError("complex coordinates must be [re, im] pairs");
            p.coords.emplace_back(c[0].get<double>(), c[1].get<double>());
        }
        return p;
    }
    RatPoint p;
    for (const auto& c : j) p.coords.push_back(detail::parse_rational_field(c));
    return p;
}

inline std::vector<ProjPoint> points_from_json(const Json& j) {
    const auto& pts = detail::require(j, "points");
    if (!pts.is_array()) throw SchemaError("\"points\" must be an array");
    std::vector<ProjPoint> out;
    for (const auto& p : pts) out.push_back(point_from_json(p));
    if (!out.empty()) {
        std::size_t len = std::visit([](const auto& q) { return q.coords.size(); }, out.front());
        bool exact = std::holds_alternative<RatPoint>(out.front());
        for (const auto& p : out) {
            if (std::visit([](const auto& q) { return q.coords.size(); }, p) != len)
                throw SchemaError("points must have equal length");
            if (std::holds_alternative<RatPoint>(p) != exact) throw SchemaError("points must be all exact or all complex");
        }
    }
    return out;
}

inline Json to_json(const EigenpointSet& s) {
    Json j{{"count", s.size()}, {"points", Json::array()}};
    bool any_complex = false;
    for (std::size_t k = 0; k < s.size(); ++k) {
        j["points"].push_back(to_json(s.points[k]));
        any_complex = any_complex || std::holds_alternative<ComplexPoint>(s.points[k]);
    }
    j["multiplicity"] = s.multiplicity;
    if (any_complex) {
        j["residual"] = s.residual;
        j["polished"] = s.polished;
    }
    if (!s.chart_failures.empty()) j["chart_failures"] = s.chart_failures;
    return j;
}

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const BettiTable& t) {
    Json j{{"n", t.n}, {"d", t.d}, {"modules", Json::array()}};
    for (int i = 1; i <= t.n; ++i) {
        Json terms = Json::array();
        for (const auto& e : t.at_index(i)) terms.push_back(Json{{"twist", e.twist}, {"rank", e.multiplicity.get_str()}});
        j["modules"].push_back(Json{{"index", i}, {"summands", terms}});
    }
    return j;
}

inline Json to_json(const std::vector<HilbertRecord>& rows) {
    Json j = Json::array();
    for (const auto& r : rows)
        j.push_back(Json{{"degree", r.degree}, {"predicted", r.predicted.get_str()}, {"actual", r.actual.get_str()}, {"agree", r.agree}});
    return j;
}

inline Json to_json(const PluckerVector& w) {
    Json j{{"n", w.n}, {"coords", Json::array()}};
    auto pairs = index_pairs(w.n);
    for (std::size_t k = 0; k < pairs.size(); ++k)
        j["coords"].push_back(Json{{"i", pairs[k].first}, {"j", pairs[k].second}, {"value", to_string(w.coords[k])}});
    return j;
}

inline Json to_json(const ConfigReport& r) {
    auto lines = [](const std::vector<LineIncidence>& ls) {
        Json a = Json::array();
        for (const auto& l : ls) a.push_back(l.points);
        return a;
    };
    Json curves = Json::array();
    for (const auto& c : r.curve_candidates) curves.push_back(Json{{"k", c.k}, {"curve", c.curve}, {"points", c.points}, {"irreducibility", "unchecked"}});
    return Json{{"collinear_violations", lines(r.collinear_violations)},
                {"sharp_lines", lines(r.sharp_lines)},
                {"curve_candidates", curves},
                {"curve_search_complete", r.curve_search_complete}};
}

inline Json to_json(const WitnessResult& w) {
    Json j{{"found", w.found}, {"kernel_dim", w.kernel_dim}, {"trivial_dim", w.trivial_dim}};
    if (const auto* t = std::get_if<PSTensor>(&w.witness)) j["witness"] = to_json(*t);
    if (const auto* t = std::get_if<SymTensor>(&w.witness)) j["witness"] = to_json(*t);
    return j;
}

}  // namespace eigsch
