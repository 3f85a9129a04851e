#ifndef TWISTLAB_SERIALIZE_HPP
#define TWISTLAB_SERIALIZE_HPP

#include <twistlab/curves.hpp>
#include <twistlab/density.hpp>
#include <twistlab/fiber.hpp>
#include <twistlab/localsol.hpp>
#include <twistlab/poly.hpp>

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>

namespace twistlab {

using nlohmann::json;

// Integers that may exceed 64 bits are emitted as decimal strings.

inline json polynomial_to_json(const IntPolynomial& f)
{
    json arr = json::array();
    for (const auto& c : f.coeffs())
        arr.push_back(c.str());
    return arr;
}

inline IntPolynomial polynomial_from_json(const json& arr)
{
    std::vector<Integer> coeffs;
    for (const auto& c : arr)
        coeffs.push_back(parse_integer(c.get<std::string>()));
    return IntPolynomial(std::move(coeffs));
}

inline json shape_to_json(const FactorShape& shape)
{
    return json(shape);
}

inline json to_json(const HyperellipticTwist& c)
{
    return {{"f", polynomial_to_json(c.f())}, {"d", c.d().str()}, {"genus", c.genus()}};
}

inline HyperellipticTwist twist_from_json(const json& j)
{
    return HyperellipticTwist(polynomial_from_json(j.at("f")), parse_integer(j.at("d").get<std::string>()));
}

inline json to_json(const PrimeClassification& c)
{
    json j{{"p", std::to_string(c.p)}, {"kind", std::string(to_string(c.kind))}};
    if (is_good(c.kind)) {
        j["root_count"] = c.root_count;
        j["shape"] = shape_to_json(*c.shape);
    }
    return j;
}

inline json to_json(const Witness& w)
{
    return {{"chart", std::string(to_string(w.chart))},
            {"kind", std::string(to_string(w.kind))},
            {"base", w.base.str()},
            {"precision", w.precision},
            {"valuation", w.valuation},
            {"y_unit", std::to_string(w.y_unit)}};
}

inline json to_json(const SolubilityVerdict& v, std::optional<Prediction> prediction = std::nullopt)
{
    json j{{"status", std::string(to_string(v.status))},
           {"witness", v.witness ? to_json(*v.witness) : json(nullptr)},
           {"depth_used", v.depth_used},
           {"max_depth", v.max_depth},
           {"classes_examined", v.classes_examined}};
    if (prediction)
        j["prediction"] = std::string(to_string(*prediction));
    return j;
}

inline json to_json(const FiberGraph& f)
{
    json comps = json::array();
    for (const auto& c : f.components) {
        comps.push_back({{"name", c.name},
                         {"mult", c.multiplicity},
                         {"self_int", c.self_intersection},
                         {"genus", c.genus},
                         {"orbit", c.orbit}});
    }
    return {{"components", comps}, {"pairings", f.pairings}};
}

inline std::string shape_key(const FactorShape& shape)
{
    std::string s;
    for (std::size_t i = 0; i < shape.size(); ++i)
        s += (i ? "," : "") + std::to_string(shape[i]);
    return s;
}

inline json to_json(const SieveReport& r)
{
    json histogram = json::array();
    for (const auto& sf : shape_frequencies(r))
        histogram.push_back({{"shape", shape_to_json(sf.shape)}, {"count", sf.count}, {"frequency", sf.frequency}});
    const auto [lo, hi] = r.wilson_interval();
    json j{{"bound", r.bound},
           {"primes_total", r.primes_total},
           {"excluded", r.excluded},
           {"primes_scanned", r.primes_scanned},
           {"s_f_members", r.s_f_members},
           {"density_estimate", r.density_estimate()},
           {"density_fraction", std::to_string(r.s_f_members) + "/" + std::to_string(r.primes_scanned)},
           {"wilson95", {lo, hi}},
           {"shape_histogram", histogram},
           {"bad_primes", r.bad_primes}};
    if (!r.members.empty())
        j["members"] = r.members;
    return j;
}

/// CSV rows "p,shape,in_S_f" with the shape as a space-separated list.
inline std::string sieve_csv(const SieveReport& r)
{
    std::ostringstream os;
    os << "p,shape,in_S_f\n";
    for (const auto& row : r.rows) {
        os << row.p << ',';
        for (std::size_t i = 0; i < row.shape.size(); ++i)
            os << (i ? " " : "") << row.shape[i];
        os << ',' << (row.in_s_f ? 1 : 0) << '\n';
    }
    return os.str();
}

inline json to_json(const TwistSearchReport& r)
{
    json rows = json::array();
    for (const auto& e : r.entries) {
        rows.push_back({{"p", std::to_string(e.p)},
                        {"verdict", std::string(to_string(e.verdict.status))},
                        {"prediction", std::string(to_string(e.prediction))},
                        {"agreement", std::string(to_string(e.agreement))}});
    }
    json irr{{"status", std::string(to_string(r.irreducibility.status))}};
    irr["prime"] = r.irreducibility.prime ? json(std::to_string(*r.irreducibility.prime)) : json(nullptr);
    return {{"bound", r.bound},
            {"irreducibility", irr},
            {"entries", rows},
            {"confirmed", r.confirmed},
            {"falsifications", r.falsifications},
            {"inconclusive", r.inconclusive}};
}

} // namespace twistlab

#endif // TWISTLAB_SERIALIZE_HPP
