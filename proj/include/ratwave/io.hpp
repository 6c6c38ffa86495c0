#ifndef RATWAVE_IO_HPP
#define RATWAVE_IO_HPP

#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ratwave/param_maps.hpp"
#include "ratwave/rational.hpp"
#include "ratwave/rationalize.hpp"
#include "ratwave/wavelet_bank.hpp"

namespace ratwave::io {

using json = nlohmann::json;

enum class Field { rational, float64 };

inline std::string to_string(Field f) { return f == Field::rational ? "rational" : "float64"; }

inline Field parse_field(const std::string& s) {
    if (s == "rational") return Field::rational;
    if (s == "float64") return Field::float64;
    throw ParseError("unknown field '" + s + "' (expected rational or float64)");
}

template <Scalar T>
constexpr Field field_of() {
    return is_exact_v<T> ? Field::rational : Field::float64;
}

// Scalars -------------------------------------------------------------------

inline json to_json(const BigRational& x) { return x.str(); }
inline json to_json(double x) { return x; }

template <Scalar T>
T scalar_from_json(const json& j);

template <>
inline BigRational scalar_from_json<BigRational>(const json& j) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return BigRational(j.get<std::uint64_t>());
        return BigRational(j.get<std::int64_t>());
    }
    if (j.is_number_float())
        throw ModeMismatch("binary float " + j.dump() + " in a rational field; write it as a \"p/q\" string");
    if (j.is_string()) return BigRational::parse(j.get<std::string>());
    throw ParseError("expected a rational scalar, got " + j.dump());
}

template <>
inline double scalar_from_json<double>(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s.find('/') != std::string::npos)
            throw ModeMismatch("rational literal \"" + s + "\" in a float64 field");
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
            throw ParseError("malformed float literal \"" + s + "\"");
        return v;
    }
    throw ParseError("expected a numeric scalar, got " + j.dump());
}

template <Scalar T>
std::vector<T> scalars_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<T> out;
    for (const auto& e : j) out.push_back(scalar_from_json<T>(e));
    return out;
}

template <Scalar T>
json scalars_to_json(const std::vector<T>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

/// Field of a document: the explicit "field" key if present, else float64
/// when any listed scalar is a binary float, else rational.
inline Field detect_field(const json& doc, std::initializer_list<const char*> scalar_arrays) {
    if (doc.contains("field")) return parse_field(doc.at("field").get<std::string>());
    std::function<bool(const json&)> has_float = [&](const json& j) {
        if (j.is_number_float()) return true;
        if (j.is_array() || j.is_object())
            for (const auto& e : j)
                if (has_float(e)) return true;
        return false;
    };
    for (const char* key : scalar_arrays)
        if (doc.contains(key) && has_float(doc.at(key))) return Field::float64;
    return Field::rational;
}

inline const json& require(const json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
    return doc.at(key);
}

inline int require_int(const json& doc, const char* key) {
    const auto& v = require(doc, key);
    if (!v.is_number_integer()) throw ParseError(std::string("\"") + key + "\" must be an integer");
    return v.get<int>();
}

// Laurent polynomials -------------------------------------------------------

template <Scalar T>
json to_json(const LaurentPoly<T>& p) {
    json c = json::array();
    for (const auto& x : p.coefficients()) c.push_back(to_json(x));
    return {{"lowest_exponent", p.lowest_exponent()}, {"coefficients", c}};
}

template <Scalar T>
LaurentPoly<T> laurent_from_json(const json& j) {
    return LaurentPoly<T>(require_int(j, "lowest_exponent"), scalars_from_json<T>(require(j, "coefficients"), "coefficients"));
}

// Parameters ----------------------------------------------------------------

template <Scalar T>
json to_json(const PhiParam<T>& phi) {
    return {{"field", to_string(field_of<T>())}, {"n", phi.n}, {"gammas", scalars_to_json(phi.gammas)}};
}

template <Scalar T>
PhiParam<T> phi_from_json(const json& j) {
    const int n = require_int(j, "n");
    if (n < 0) throw ParseError("\"n\" must be nonnegative");
    auto g = scalars_from_json<T>(require(j, "gammas"), "gammas");
    if (g.size() != static_cast<std::size_t>(n))
        throw ParseError("\"gammas\" has " + std::to_string(g.size()) + " entries for n = " + std::to_string(n));
    return PhiParam<T>(n, std::move(g));
}

template <Scalar T>
json to_json(const ParamPair<T>& p) {
    return {{"field", to_string(field_of<T>())}, {"alpha", to_json(p.alpha)}, {"beta", to_json(p.beta)}};
}

template <Scalar T>
ParamPair<T> pair_from_json(const json& j) {
    return {laurent_from_json<T>(require(j, "alpha")), laurent_from_json<T>(require(j, "beta"))};
}

// Banks ---------------------------------------------------------------------

template <Scalar T>
json to_json(const WaveletBank2<T>& bank) {
    return {{"genus", bank.genus()},
            {"field", to_string(field_of<T>())},
            {"h0", scalars_to_json(bank.h0())},
            {"h1", scalars_to_json(bank.h1())}};
}

/// Reads a bank; "h1", when present, must match the row derived from "h0".
template <Scalar T>
WaveletBank2<T> bank_from_json(const json& j, double tol = kDefaultTolerance) {
    const int genus = require_int(j, "genus");
    auto h0 = scalars_from_json<T>(require(j, "h0"), "h0");
    if (genus < 1 || h0.size() != static_cast<std::size_t>(2 * genus))
        throw ParseError("\"h0\" must hold 2 * genus = " + std::to_string(2 * genus) + " taps");
    WaveletBank2<T> bank(std::move(h0));
    if (j.contains("h1")) {
        const auto h1 = scalars_from_json<T>(j.at("h1"), "h1");
        if (h1.size() != bank.taps()) throw ParseError("\"h1\" length differs from \"h0\"");
        for (std::size_t k = 0; k < h1.size(); ++k)
            if (!residual_ok(abs_value(h1[k] - bank.h1()[k]), tol))
                throw ParseError("\"h1\"[" + std::to_string(k) + "] does not follow the interleaved bank structure");
    }
    return bank;
}

using AnyBank = std::variant<WaveletBank2<BigRational>, WaveletBank2<double>>;

/// Loads a bank document, or the "bank" member of a rationalization result.
/// `force` converts to the requested field (float -> rational is exact).
inline AnyBank load_bank(const json& doc, std::optional<Field> force = {}) {
    const json& j = doc.is_object() && doc.contains("bank") && !doc.contains("h0") ? doc.at("bank") : doc;
    const Field declared = detect_field(j, {"h0", "h1"});
    AnyBank bank = declared == Field::rational ? AnyBank(bank_from_json<BigRational>(j))
                                               : AnyBank(bank_from_json<double>(j));
    if (!force || *force == declared) return bank;
    if (*force == Field::rational) return convert_bank<BigRational>(std::get<WaveletBank2<double>>(bank));
    return convert_bank<double>(std::get<WaveletBank2<BigRational>>(bank));
}

// Results -------------------------------------------------------------------

inline json to_json(const RationalizationResult& r) {
    json m = json::array();
    for (const auto& v : r.moment_report.values) m.push_back(to_json(v));
    return {{"phi_q", to_json(r.phi_q)},
            {"bank", to_json(r.bank)},
            {"max_tap_denominator", r.max_tap_denominator.str()},
            {"moments", m},
            {"input_distance", r.input_distance}};
}

// CSV -----------------------------------------------------------------------

/// One row per tap: k, h0, h0 decimal, h1, h1 decimal; then one row per
/// moment: M_p, value, decimal.
template <Scalar T>
std::string bank_csv(const WaveletBank2<T>& bank, int pmax) {
    std::ostringstream os;
    os << "k,h0,h0_decimal,h1,h1_decimal\n";
    for (std::size_t k = 0; k < bank.taps(); ++k)
        os << k << ',' << scalar_traits<T>::to_string(bank.h0()[k]) << ',' << decimal_string(bank.h0()[k]) << ','
           << scalar_traits<T>::to_string(bank.h1()[k]) << ',' << decimal_string(bank.h1()[k]) << '\n';
    const auto m = moments(bank, pmax);
    for (std::size_t p = 0; p < m.values.size(); ++p)
        os << 'M' << p << ',' << scalar_traits<T>::to_string(m.values[p]) << ',' << decimal_string(m.values[p])
           << ",,\n";
    return os.str();
}

} // namespace ratwave::io

#endif // RATWAVE_IO_HPP
