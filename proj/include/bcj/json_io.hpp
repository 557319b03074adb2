#ifndef BCJ_JSON_IO_HPP
#define BCJ_JSON_IO_HPP

#include <fstream>
#include <json.hpp>

#include "bcj/abelian_cycles.hpp"
#include "bcj/homology_bounds.hpp"

namespace bcj {

using json = nlohmann::json;

// Coordinates serialize as JSON numbers when they fit int64 and as decimal
// strings beyond that, so round-trips are bit-exact at any magnitude.
inline json scalar_to_json(const IntScalar& x) {
    static const IntScalar lo = std::numeric_limits<std::int64_t>::min();
    static const IntScalar hi = std::numeric_limits<std::int64_t>::max();
    if (x >= lo && x <= hi) return static_cast<std::int64_t>(x);
    return x.str();
}

inline IntScalar scalar_from_json(const json& j) {
    if (j.is_number_integer()) return IntScalar(j.get<std::int64_t>());
    if (j.is_string()) return IntScalar(j.get<std::string>());
    throw ParseError("expected integer or decimal string");
}

inline json vector_to_json(const IntVector& v) {
    json arr = json::array();
    for (const auto& x : v.c) arr.push_back(scalar_to_json(x));
    return arr;
}

inline IntVector vector_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected coordinate array");
    IntVector v(static_cast<int>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v.c[i] = scalar_from_json(j[i]);
    return v;
}

inline json raw_subgroup_to_json(const RawSubgroup& s) {
    json arr = json::array();
    for (const auto& v : s) arr.push_back(vector_to_json(v));
    return arr;
}

inline RawSubgroup raw_subgroup_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected subgroup basis array");
    RawSubgroup s;
    for (const auto& v : j) s.push_back(vector_from_json(v));
    return s;
}

inline json certificate_to_json(const Certificate& cert) {
    json steps = json::array();
    for (const CertStep& s : cert.steps) {
        json step;
        step["rule"] = s.rule == StepRule::KeyRelation ? "KeyRelation" : "Gen3Subsurface";
        json lhs = json::array(), rhs = json::array();
        for (const auto& part : s.lhs) lhs.push_back(raw_subgroup_to_json(part));
        for (const auto& part : s.rhs) rhs.push_back(raw_subgroup_to_json(part));
        step["lhs"] = lhs;
        step["rhs"] = rhs;
        json witnesses = json::object();
        const std::string tag = s.rule == StepRule::KeyRelation ? "U" : "W";
        for (std::size_t i = 0; i < s.witness.size(); i += 2) {
            std::string idx = std::to_string(i / 2 + 1);
            witnesses[tag + ".x" + idx] = vector_to_json(s.witness[i]);
            if (i + 1 < s.witness.size()) witnesses[tag + ".y" + idx] = vector_to_json(s.witness[i + 1]);
        }
        step["witnesses"] = witnesses;
        steps.push_back(step);
    }
    return json{{"g", cert.g}, {"steps", steps}};
}

inline Certificate certificate_from_json(const json& j) {
    Certificate cert;
    if (!j.contains("g") || !j["g"].is_number_integer())
        throw ParseError("certificate needs an integer g");
    cert.g = j["g"].get<int>();
    if (!j.contains("steps") || !j["steps"].is_array())
        throw ParseError("certificate needs a steps array");
    for (const auto& sj : j["steps"]) {
        CertStep step;
        std::string rule = sj.at("rule").get<std::string>();
        if (rule == "KeyRelation") step.rule = StepRule::KeyRelation;
        else if (rule == "Gen3Subsurface") step.rule = StepRule::Gen3Subsurface;
        else throw ParseError("unknown rule: " + rule);
        for (const auto& part : sj.at("lhs")) step.lhs.push_back(raw_subgroup_from_json(part));
        for (const auto& part : sj.at("rhs")) step.rhs.push_back(raw_subgroup_from_json(part));
        const std::string tag = step.rule == StepRule::KeyRelation ? "U" : "W";
        const json& w = sj.at("witnesses");
        for (std::size_t i = 1;; ++i) {
            std::string xk = tag + ".x" + std::to_string(i);
            std::string yk = tag + ".y" + std::to_string(i);
            if (!w.contains(xk)) break;
            step.witness.push_back(vector_from_json(w[xk]));
            if (w.contains(yk)) step.witness.push_back(vector_from_json(w[yk]));
        }
        cert.steps.push_back(std::move(step));
    }
    return cert;
}

inline void write_certificate(const Certificate& cert, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot open certificate file for writing: " + path);
    out << certificate_to_json(cert).dump(2) << "\n";
}

inline Certificate read_certificate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open certificate file: " + path);
    json j = json::parse(in);
    return certificate_from_json(j);
}

inline json dim_report_to_json(const DimReport& r) {
    return json{{"g", r.g},
                {"k", r.k},
                {"upper_bound", r.upper_bound},
                {"lower_bound", r.lower_bound},
                {"sigma_ambient_dim", r.sigma_ambient_dim},
                {"elapsed_seconds", r.elapsed_seconds}};
}

} // namespace bcj

#endif
