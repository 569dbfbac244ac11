#pragma once

// JSON formats.
//
// Spec file:
//   {"field": "rational" | {"prime": p},
//    "period": p,
//    "bands": [{"offset": r, "values": [v_1, ..., v_p]}, ...],
//    "exceptional": [{"i": i, "j": j, "value": v}, ...],      (optional)
//    "block_size": s,                                          (optional)
//    "block_weights": {"A": [[..]], "B": .., "C": .., "D": ..}} (optional)
// Values are JSON integers or strings "n" / "n/d"; floats are rejected.
// Explicit block weights replace the reduction of V; cross-checking then
// compares them against V itself.
//
// Weight sequence file:
//   {"weights": [{"residue": i, "initial": [...], "poly": [c0, c1, ...]}, ...]}
// Affine recursion file:
//   {"dimY": d, "T": [[...]], "l": [...],
//    "y_rule": {"weights": [{"residue": i, "coordinate": c, "initial": [...], "poly": [...]}, ...]}}
// Polynomial: {"dx": dx, "dz": dz, "coeffs": [[c_00, c_01, ...], ...]} with
// coeffs[i][j] the coefficient of x^i z^j.
//
// Output values are always exact strings.

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bandgf/alg_cert.hpp"
#include "bandgf/banded_spec.hpp"
#include "bandgf/section5.hpp"
#include "bandgf/series.hpp"

namespace bandgf {

using json = nlohmann::ordered_json;

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("malformed JSON: ") + e.what());
    }
}

namespace detail {

inline const json& require(const json& j, const char* key, const char* context) {
    if (!j.is_object() || !j.contains(key)) throw parse_error(std::string(context) + ": missing \"" + key + "\"");
    return j.at(key);
}

inline std::size_t as_index(const json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw parse_error(std::string(what) + " must be a nonnegative integer");
    return j.get<std::size_t>();
}

inline long long as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw parse_error(std::string(what) + " must be an integer");
    return j.get<long long>();
}

}  // namespace detail

inline FieldConfig field_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "rational") return FieldConfig::rationals();
    if (j.is_object() && j.contains("prime")) {
        const json& p = j.at("prime");
        if (!p.is_number_unsigned()) throw parse_error("prime modulus must be a positive integer");
        try {
            return FieldConfig::prime(p.get<std::uint64_t>());
        } catch (const error& e) {
            throw parse_error(e.what());
        }
    }
    throw parse_error("field must be \"rational\" or {\"prime\": p}");
}

inline json field_to_json(const FieldConfig& f) {
    if (f.kind() == FieldKind::rationals) return "rational";
    return json{{"prime", f.modulus()}};
}

template <FieldScalar T>
T value_from_json(const FieldConfig& f, const json& j) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return T::parse(f, std::to_string(j.get<std::uint64_t>()));
        return T::parse(f, std::to_string(j.get<long long>()));
    }
    if (j.is_string()) return T::parse(f, j.get<std::string>());
    throw parse_error("value must be an integer or a string \"n/d\", got " + j.dump());
}

template <FieldScalar T>
std::vector<T> values_from_json(const FieldConfig& f, const json& j, const char* what) {
    if (!j.is_array()) throw parse_error(std::string(what) + " must be an array");
    std::vector<T> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(value_from_json<T>(f, v));
    return out;
}

template <FieldScalar T>
Matrix<T> matrix_from_json(const FieldConfig& f, const json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw parse_error(std::string(what) + " must be a nonempty array of rows");
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    Matrix<T> m(f, j.size(), cols);
    for (std::size_t r = 0; r < j.size(); ++r) {
        auto row = values_from_json<T>(f, j[r], what);
        if (row.size() != cols) throw parse_error(std::string(what) + " has ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = std::move(row[c]);
    }
    return m;
}

template <FieldScalar T>
json matrix_to_json(const Matrix<T>& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

/// The field named in a spec document (or the override, if given).
inline FieldConfig spec_field(const json& doc, const std::optional<FieldConfig>& override_field = std::nullopt) {
    if (override_field) return *override_field;
    if (!doc.is_object() || !doc.contains("field")) return FieldConfig::rationals();
    return field_from_json(doc.at("field"));
}

template <FieldScalar T>
BandedSpec<T> spec_from_json(const json& doc, const FieldConfig& f) {
    if (!doc.is_object()) throw parse_error("spec must be a JSON object");
    const std::size_t period = detail::as_index(detail::require(doc, "period", "spec"), "period");
    std::vector<Band<T>> bands;
    for (const auto& b : detail::require(doc, "bands", "spec")) {
        bands.push_back(Band<T>{detail::as_int(detail::require(b, "offset", "band"), "offset"),
                                values_from_json<T>(f, detail::require(b, "values", "band"), "band values")});
    }
    std::vector<ExceptionalEntry<T>> exc;
    if (doc.contains("exceptional")) {
        for (const auto& e : doc.at("exceptional")) {
            exc.push_back(ExceptionalEntry<T>{detail::as_index(detail::require(e, "i", "exceptional entry"), "i"),
                                              detail::as_index(detail::require(e, "j", "exceptional entry"), "j"),
                                              value_from_json<T>(f, detail::require(e, "value", "exceptional entry"))});
        }
    }
    std::optional<std::size_t> s;
    if (doc.contains("block_size")) s = detail::as_index(doc.at("block_size"), "block_size");
    return BandedSpec<T>(f, period, std::move(bands), std::move(exc), s);
}

/// Explicit block weights from a spec document, if present.
template <FieldScalar T>
std::optional<BlockWeights<T>> block_weights_from_json(const json& doc, const FieldConfig& f) {
    if (!doc.is_object() || !doc.contains("block_weights")) return std::nullopt;
    const json& w = doc.at("block_weights");
    try {
        return BlockWeights<T>::from(matrix_from_json<T>(f, detail::require(w, "A", "block_weights"), "A"),
                                     matrix_from_json<T>(f, detail::require(w, "B", "block_weights"), "B"),
                                     matrix_from_json<T>(f, detail::require(w, "C", "block_weights"), "C"),
                                     matrix_from_json<T>(f, detail::require(w, "D", "block_weights"), "D"));
    } catch (const shape_error& e) {
        throw parse_error(std::string("block_weights: ") + e.what());
    }
}

template <FieldScalar T>
json spec_to_json(const BandedSpec<T>& spec) {
    json doc;
    doc["field"] = field_to_json(spec.field());
    doc["period"] = spec.period();
    json bands = json::array();
    for (const auto& b : spec.bands()) {
        json vals = json::array();
        for (const auto& v : b.values) vals.push_back(v.to_string());
        bands.push_back(json{{"offset", b.offset}, {"values", std::move(vals)}});
    }
    doc["bands"] = std::move(bands);
    json exc = json::array();
    for (const auto& e : spec.exceptional()) exc.push_back(json{{"i", e.i}, {"j", e.j}, {"value", e.value.to_string()}});
    doc["exceptional"] = std::move(exc);
    if (spec.block_size_hint()) doc["block_size"] = *spec.block_size_hint();
    return doc;
}

template <FieldScalar T>
json weights_to_json(const BlockWeights<T>& w) {
    return json{{"s", w.s}, {"A", matrix_to_json(w.A)}, {"B", matrix_to_json(w.B)}, {"C", matrix_to_json(w.C)}, {"D", matrix_to_json(w.D)}};
}

namespace detail {

template <FieldScalar T>
ResidueRule<T> rule_from_json(const FieldConfig& f, const json& r) {
    ResidueRule<T> rule;
    if (r.contains("initial")) rule.initial = values_from_json<T>(f, r.at("initial"), "initial");
    if (r.contains("poly")) rule.poly = values_from_json<T>(f, r.at("poly"), "poly");
    return rule;
}

/// Rules indexed by residue 1..stride; every residue must appear exactly once.
template <FieldScalar T>
std::vector<ResidueRule<T>> collect_rules(std::vector<std::pair<std::size_t, ResidueRule<T>>> entries, const char* what) {
    std::size_t stride = 0;
    for (const auto& [i, r] : entries) stride = std::max(stride, i);
    if (stride == 0) throw parse_error(std::string(what) + ": no residue rules");
    std::vector<std::optional<ResidueRule<T>>> slots(stride);
    for (auto& [i, r] : entries) {
        if (i == 0) throw parse_error(std::string(what) + ": residues are 1-based");
        if (slots[i - 1]) throw parse_error(std::string(what) + ": residue " + std::to_string(i) + " given twice");
        slots[i - 1] = std::move(r);
    }
    std::vector<ResidueRule<T>> out;
    for (std::size_t i = 0; i < stride; ++i) {
        if (!slots[i]) throw parse_error(std::string(what) + ": residue " + std::to_string(i + 1) + " missing");
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

}  // namespace detail

template <FieldScalar T>
EventuallyPolySeq<T> sequence_from_json(const json& doc, const FieldConfig& f) {
    std::vector<std::pair<std::size_t, ResidueRule<T>>> entries;
    for (const auto& r : detail::require(doc, "weights", "weight file")) {
        entries.emplace_back(detail::as_index(detail::require(r, "residue", "weight rule"), "residue"),
                             detail::rule_from_json<T>(f, r));
    }
    return EventuallyPolySeq<T>(f, detail::collect_rules(std::move(entries), "weights"));
}

template <FieldScalar T>
AffineRecursion<T> recursion_from_json(const json& doc, const FieldConfig& f) {
    const std::size_t d = detail::as_index(detail::require(doc, "dimY", "recursion"), "dimY");
    if (d == 0) throw parse_error("dimY must be positive");
    Matrix<T> t = matrix_from_json<T>(f, detail::require(doc, "T", "recursion"), "T");
    std::vector<T> l = values_from_json<T>(f, detail::require(doc, "l", "recursion"), "l");
    std::vector<std::vector<std::pair<std::size_t, ResidueRule<T>>>> per_coord(d);
    const json& y = detail::require(doc, "y_rule", "recursion");
    for (const auto& r : detail::require(y, "weights", "y_rule")) {
        const std::size_t c = detail::as_index(detail::require(r, "coordinate", "y rule"), "coordinate");
        if (c == 0 || c > d) throw parse_error("y rule coordinate " + std::to_string(c) + " outside 1.." + std::to_string(d));
        per_coord[c - 1].emplace_back(detail::as_index(detail::require(r, "residue", "y rule"), "residue"),
                                      detail::rule_from_json<T>(f, r));
    }
    std::vector<EventuallyPolySeq<T>> seqs;
    for (auto& entries : per_coord) seqs.emplace_back(f, detail::collect_rules(std::move(entries), "y_rule"));
    AffineRecursion<T> rec{std::move(t), std::move(l), std::move(seqs)};
    try {
        rec.validate();
    } catch (const shape_error& e) {
        throw parse_error(e.what());
    }
    return rec;
}

template <FieldScalar T>
json series_to_json(const Series<T>& s) {
    json c = json::array();
    for (const auto& x : s.coefficients()) c.push_back(x.to_string());
    return c;
}

template <FieldScalar T>
json poly_to_json(const AnnihilatorPoly<T>& p) {
    json rows = json::array();
    for (const auto& row : p.coefficients()) {
        json r = json::array();
        for (const auto& x : row) r.push_back(x.to_string());
        rows.push_back(std::move(r));
    }
    return json{{"dx", p.degree_x()}, {"dz", p.degree_z()}, {"coeffs", std::move(rows)}};
}

template <FieldScalar T>
AnnihilatorPoly<T> poly_from_json(const json& doc, const FieldConfig& f) {
    const json& rows = detail::require(doc, "coeffs", "polynomial");
    if (!rows.is_array() || rows.empty()) throw parse_error("polynomial coeffs must be a nonempty array");
    std::vector<std::vector<T>> c;
    for (const auto& r : rows) c.push_back(values_from_json<T>(f, r, "polynomial row"));
    try {
        return AnnihilatorPoly<T>(f, std::move(c));
    } catch (const field_mismatch_error&) {
        throw;
    } catch (const error& e) {
        throw parse_error(e.what());
    }
}

}  // namespace bandgf
