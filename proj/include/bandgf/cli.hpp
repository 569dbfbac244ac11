#pragma once

// Command-line front end. Every command writes one JSON document (stdout or
// --out) and returns 0 on success, 1 when a mathematical check fails and 2
// on bad input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "bandgf/alg_cert.hpp"
#include "bandgf/fixtures.hpp"
#include "bandgf/genfun.hpp"
#include "bandgf/identities.hpp"
#include "bandgf/io.hpp"
#include "bandgf/section5.hpp"

namespace bandgf::cli {

enum ExitCode : int { pass = 0, mismatch = 1, input_error = 2 };

struct Options {
    std::string command;
    std::string spec_path;
    std::string example;
    std::size_t order = 40;
    std::size_t degx = 0;
    std::size_t degz = 0;
    std::size_t length = 10;
    std::size_t extra = 40;
    std::string field;
    std::string out_path;
    std::string weights_path;
    std::string recursion_path;
    std::string poly_path;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline FieldConfig parse_field_flag(const std::string& text) {
    if (text == "rational") return FieldConfig::rationals();
    if (text.rfind("p:", 0) == 0) {
        const std::string digits = text.substr(2);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw parse_error("--field expects rational or p:PRIME, got " + text);
        try {
            return FieldConfig::prime(std::stoull(digits));
        } catch (const std::out_of_range&) {
            throw parse_error("modulus " + digits + " does not fit in 64 bits");
        } catch (const error& e) {
            throw parse_error(e.what());
        }
    }
    throw parse_error("--field expects rational or p:PRIME, got " + text);
}

namespace detail {

inline json results_to_json(const std::vector<IdentityResult>& rs) {
    json arr = json::array();
    for (const auto& r : rs) {
        json j{{"name", r.name}, {"ok", r.ok}, {"order", r.order}};
        j["first_failure"] = r.first_failure ? json(*r.first_failure) : json(nullptr);
        arr.push_back(std::move(j));
    }
    return arr;
}

inline json agreements_to_json(const std::vector<RouteAgreement>& a) {
    json arr = json::array();
    for (const auto& r : a) arr.push_back(json{{"left", r.left}, {"right", r.right}, {"orders", r.orders}});
    return arr;
}

template <FieldScalar T>
BlockWeights<T> weights_for(const json& doc, const BandedSpec<T>& spec, const FieldConfig& f) {
    if (auto w = block_weights_from_json<T>(doc, f)) return *w;
    return block_reduce(spec);
}

template <FieldScalar T>
Series<T> checked_series(const BandedSpec<T>& spec, const BlockWeights<T>& w, std::size_t order, std::size_t length,
                         json& out) {
    CrossCheckReport<T> rep = cross_check(spec, w, order, length);
    out["block_size"] = rep.block_size;
    out["routes"] = agreements_to_json(rep.agreements);
    return rep.GV;
}

template <FieldScalar T>
SqrtClosedForm<T> closed_form_of(const FieldConfig& f, const IntClosedForm& c) {
    return SqrtClosedForm<T>{poly_from_ints<T>(f, c.radicand),
                             {poly_from_ints<T>(f, c.num_rational), poly_from_ints<T>(f, c.num_radical)},
                             {poly_from_ints<T>(f, c.den_rational), poly_from_ints<T>(f, c.den_radical)}};
}

template <FieldScalar T>
json verify_to_json(const VerifyResult& v) {
    json j{{"ok", v.ok}, {"order", v.order}};
    j["first_nonzero"] = v.first_nonzero ? json(*v.first_nonzero) : json(nullptr);
    return j;
}

template <FieldScalar T>
int cmd_series(const Options& o, const json& doc, const FieldConfig& f, json& out) {
    const BandedSpec<T> spec = spec_from_json<T>(doc, f);
    const BlockWeights<T> w = weights_for(doc, spec, f);
    const Series<T> g = checked_series(spec, w, o.order, o.length, out);
    out["coefficients"] = series_to_json(g);
    return pass;
}

template <FieldScalar T>
int cmd_annihilate(const Options& o, const json& doc, const FieldConfig& f, json& out) {
    const BandedSpec<T> spec = spec_from_json<T>(doc, f);
    const BlockWeights<T> w = weights_for(doc, spec, f);
    const Series<T> g = checked_series(spec, w, o.order, o.length, out);
    std::optional<AnnihilatorPoly<T>> p;
    if (!o.poly_path.empty()) {
        p = poly_from_json<T>(parse_json_text(read_file(o.poly_path)), f);
    } else {
        if (o.degx == 0) throw parse_error("annihilate needs --degx >= 1 (or --poly)");
        p = reconstruct(g, o.degx, o.degz);
        if (!p) {
            out["polynomial"] = nullptr;
            out["note"] = "no annihilator within bounds";
            return mismatch;
        }
    }
    out["polynomial"] = poly_to_json(*p);
    out["pretty"] = p->pretty();
    const VerifyResult v = verify(*p, direct_route(spec, o.order + o.extra));
    out["verification"] = verify_to_json<T>(v);
    return v.ok ? pass : mismatch;
}

template <FieldScalar T>
int cmd_oracle(const Options& o, const json& doc, const FieldConfig& f, json& out) {
    if (o.length > default_enumeration_ceiling)
        throw resource_limit_error("--length " + std::to_string(o.length) + " exceeds the enumeration ceiling " +
                                   std::to_string(default_enumeration_ceiling));
    const BandedSpec<T> spec = spec_from_json<T>(doc, f);
    const BlockWeights<T> w = weights_for(doc, spec, f);
    checked_series(spec, w, o.length, o.length, out);
    const auto rs = oracle_compare(w, o.length);
    out["length"] = o.length;
    out["comparisons"] = results_to_json(rs);
    return all_ok(rs) ? pass : mismatch;
}

template <FieldScalar T>
int cmd_check_identity(const Options& o, const json& doc, const FieldConfig& f, json& out) {
    const BandedSpec<T> spec = spec_from_json<T>(doc, f);
    const BlockWeights<T> w = weights_for(doc, spec, f);
    const auto rs = identity_suite(w, o.order, std::min(o.length, default_enumeration_ceiling), &spec);
    out["block_size"] = w.s;
    out["identities"] = results_to_json(rs);
    return all_ok(rs) ? pass : mismatch;
}

template <FieldScalar T>
int cmd_weighted(const Options& o, const json& doc, const FieldConfig& f, json& out) {
    if (o.weights_path.empty()) throw parse_error("weighted needs --weights PATH");
    const BandedSpec<T> spec = spec_from_json<T>(doc, f);
    const BlockWeights<T> w = weights_for(doc, spec, f);
    const EventuallyPolySeq<T> a = sequence_from_json<T>(parse_json_text(read_file(o.weights_path)), f);
    out["block_size"] = w.s;
    out["coefficients"] = series_to_json(weighted_series(w, a, o.order));
    return pass;
}

template <FieldScalar T>
int cmd_affine(const Options& o, const json& doc, const FieldConfig& f, json& out) {
    if (o.recursion_path.empty()) throw parse_error("affine needs --recursion PATH");
    const BandedSpec<T> spec = spec_from_json<T>(doc, f);
    const BlockWeights<T> w = weights_for(doc, spec, f);
    const AffineRecursion<T> rec = recursion_from_json<T>(parse_json_text(read_file(o.recursion_path)), f);
    out["block_size"] = w.s;
    out["coefficients"] = series_to_json(affine_pipeline(w, rec, o.order));
    return pass;
}

template <FieldScalar T>
int cmd_verify_example(const Options& o, const ExampleFixture& fx, const FieldConfig& f, json& out) {
    const json doc = parse_json_text(fx.spec_json);
    const BandedSpec<T> spec = spec_from_json<T>(doc, f);
    const BlockWeights<T> w = block_reduce(spec);
    bool ok = true;
    out["example"] = fx.name;
    out["summary"] = fx.summary;

    Series<T> g = checked_series(spec, w, o.order, o.length, out);
    if (fx.recursion_json) {
        const AffineRecursion<T> rec = recursion_from_json<T>(parse_json_text(*fx.recursion_json), f);
        g = affine_pipeline(w, rec, o.order);
    }
    out["coefficients"] = series_to_json(g);

    {
        const std::size_t n = std::min(fx.known_prefix.size(), g.order() + 1);
        bool prefix_ok = true;
        for (std::size_t k = 0; k < n; ++k) prefix_ok = prefix_ok && g[k] == T::from_int(f, fx.known_prefix[k]);
        out["known_prefix"] = json{{"ok", prefix_ok}, {"terms", n}};
        ok = ok && prefix_ok;
    }

    if (fx.annihilator) {
        const AnnihilatorPoly<T> ref = AnnihilatorPoly<T>::from_ints(f, *fx.annihilator);
        const VerifyResult v = verify(ref, g);
        json a{{"polynomial", poly_to_json(ref)}, {"pretty", ref.pretty()}, {"residual", verify_to_json<T>(v)}};
        ok = ok && v.ok;
        const std::size_t needed = (fx.degx + 1) * (fx.degz + 1) + default_reconstruction_guard;
        if (g.order() >= needed) {
            const auto rec = reconstruct(g, fx.degx, fx.degz);
            const bool match = rec && same_up_to_scalar(*rec, ref);
            a["reconstruction"] = json{{"bounds", json::array({fx.degx, fx.degz})},
                                       {"polynomial", rec ? poly_to_json(*rec) : json(nullptr)},
                                       {"pretty", rec ? json(rec->pretty()) : json(nullptr)},
                                       {"matches_reference", match}};
            ok = ok && match;
        } else {
            a["reconstruction"] = "skipped: needs --order >= " + std::to_string(needed);
        }
        out["annihilator"] = std::move(a);
    }

    if (fx.closed_form) {
        const ClosedFormCheck c = check_closed_form_sqrt(g, closed_form_of<T>(f, *fx.closed_form));
        json j{{"ok", c.ok}, {"order", c.order}};
        j["first_difference"] = c.first_difference ? json(*c.first_difference) : json(nullptr);
        out["closed_form"] = std::move(j);
        ok = ok && c.ok;
    }

    if (fx.kernel_determinant) {
        std::mt19937 rng(20240607);
        std::uniform_int_distribution<long long> pick(-30, 30);
        json samples = json::array();
        bool det_ok = true;
        for (int k = 0; k < 5; ++k) {
            const T zv = T::from_int(f, pick(rng));
            std::vector<T> expected;
            for (const auto& row : *fx.kernel_determinant) {
                T acc = zero_of<T>(f);
                for (std::size_t d = row.size(); d-- > 0;) acc = acc * zv + T::from_int(f, row[d]);
                expected.push_back(acc);
            }
            while (expected.size() > 1 && expected.back().is_zero()) expected.pop_back();
            const std::vector<T> got = kernel_determinant_in_x(w, zv);
            const bool same = got == expected;
            det_ok = det_ok && same;
            samples.push_back(json{{"z", zv.to_string()}, {"ok", same}});
        }
        out["kernel_determinant"] = json{{"ok", det_ok}, {"samples", std::move(samples)}};
        ok = ok && det_ok;
    }
    return ok ? pass : mismatch;
}

template <FieldScalar T>
int dispatch(const Options& o, const FieldConfig& f, const json* doc, json& out) {
    if (o.command == "verify-example") {
        const ExampleFixture* fx = find_fixture(o.example);
        if (fx == nullptr) throw parse_error("unknown example " + o.example + " (expected ex4.1, ex4.2, ex4.3 or ex5.12)");
        return cmd_verify_example<T>(o, *fx, f, out);
    }
    if (o.command == "series") return cmd_series<T>(o, *doc, f, out);
    if (o.command == "annihilate") return cmd_annihilate<T>(o, *doc, f, out);
    if (o.command == "oracle") return cmd_oracle<T>(o, *doc, f, out);
    if (o.command == "check-identity") return cmd_check_identity<T>(o, *doc, f, out);
    if (o.command == "weighted") return cmd_weighted<T>(o, *doc, f, out);
    if (o.command == "affine") return cmd_affine<T>(o, *doc, f, out);
    throw parse_error("unknown command " + o.command);
}

}  // namespace detail

/// Runs one command. Returns the exit code.
inline int execute(const Options& o, std::ostream& out, std::ostream& err) {
    json result;
    result["command"] = o.command;
    int code = pass;
    try {
        std::optional<FieldConfig> override_field;
        if (!o.field.empty()) override_field = parse_field_flag(o.field);
        std::optional<json> doc;
        FieldConfig f = override_field.value_or(FieldConfig::rationals());
        if (o.command != "verify-example") {
            if (o.spec_path.empty()) throw parse_error(o.command + " needs --spec PATH");
            doc = parse_json_text(read_file(o.spec_path));
            f = spec_field(*doc, override_field);
        }
        result["field"] = f.name();
        result["order"] = o.order;
        if (f.kind() == FieldKind::rationals) {
            code = detail::dispatch<Rational>(o, f, doc ? &*doc : nullptr, result);
        } else {
            code = detail::dispatch<ModP>(o, f, doc ? &*doc : nullptr, result);
        }
    } catch (const route_mismatch_error& e) {
        result["error"] = e.what();
        result["mismatch_order"] = e.order();
        code = mismatch;
    } catch (const internal_consistency_error& e) {
        result["error"] = e.what();
        code = mismatch;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }
    result["status"] = code == pass ? "pass" : "fail";

    const std::string text = result.dump(2) + "\n";
    if (o.out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(o.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << o.out_path << "\n";
            return input_error;
        }
        file << text;
    }
    return code;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Generating functions of banded, eventually periodic matrices"};
    app.require_subcommand(1);
    Options o;

    auto common = [&o](CLI::App* sub, bool needs_spec) {
        if (needs_spec) sub->add_option("--spec", o.spec_path, "matrix spec (JSON)")->required();
        sub->add_option("--order", o.order, "truncation order N")->capture_default_str();
        sub->add_option("--length", o.length, "walk enumeration length L")->capture_default_str();
        sub->add_option("--field", o.field, "rational or p:PRIME (overrides the spec)");
        sub->add_option("--out", o.out_path, "write JSON here instead of stdout");
    };

    auto* series = app.add_subcommand("series", "G(V) to order N, cross-checked across routes");
    common(series, true);

    auto* annihilate = app.add_subcommand("annihilate", "reconstruct and verify an annihilating polynomial");
    common(annihilate, true);
    annihilate->add_option("--degx", o.degx, "x-degree bound");
    annihilate->add_option("--degz", o.degz, "z-degree bound");
    annihilate->add_option("--extra", o.extra, "extra orders for verification")->capture_default_str();
    annihilate->add_option("--poly", o.poly_path, "verify this polynomial (JSON) instead of reconstructing");

    auto* example = app.add_subcommand("verify-example", "check a built-in example");
    common(example, false);
    example->add_option("name", o.example, "ex4.1, ex4.2, ex4.3 or ex5.12")->required();

    auto* oracle = app.add_subcommand("oracle", "engine against explicit walk enumeration");
    common(oracle, true);

    auto* identity = app.add_subcommand("check-identity", "run the identity suite");
    common(identity, true);

    auto* weighted = app.add_subcommand("weighted", "sum_n (sum_j a_j (V^n)_{j,1}) z^n");
    common(weighted, true);
    weighted->add_option("--weights", o.weights_path, "weight sequence (JSON)")->required();

    auto* affine = app.add_subcommand("affine", "sum_n l(y^(n)) z^n for an affine recursion");
    common(affine, true);
    affine->add_option("--recursion", o.recursion_path, "recursion (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return pass;
        }
        err << "error: " << e.what() << "\n";
        return input_error;
    }
    o.command = app.get_subcommands().front()->get_name();
    return execute(o, out, err);
}

}  // namespace bandgf::cli
