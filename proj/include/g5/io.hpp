// io.hpp
//
// Serialization contracts. Field elements of F3 travel as the integers
// 0/1/2. The wire formats:
//
//   hyperelliptic model: {"family":"hyperelliptic","c":1,"b1":1,"b2":0,
//                         "a":[a0,...,a9]}
//   trigonal model:      {"family":"trigonal","type":"split|nonsplit|cusp",
//                         "case":n,"coeffs":[21 ints]}
//
// The 21 trigonal coefficients follow the documented monomial order of
// forms.hpp (z-degree descending, then x-degree descending). Census reports:
//
//   {family, count_field, max_points, num_candidates, num_rejected,
//    num_tuples, classes:[{rep_model, members:[indices], weil:[11 ints], q}],
//    num_isogeny_classes, runtime_seconds}
//
// CSV: one row per surviving tuple
//   enumeration_index, case, coefficients (space-separated), count, class_id.

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "g5/hyperelliptic.hpp"
#include "g5/trigonal.hpp"

namespace g5::io {

using json = nlohmann::ordered_json;

inline json to_json(const hyper::HyperModel& m) {
    json j;
    j["family"] = "hyperelliptic";
    j["c"] = m.c;
    j["b1"] = m.b1;
    j["b2"] = m.b2;
    j["a"] = m.a;
    return j;
}

inline hyper::HyperModel hyper_from_json(const json& j) {
    if (j.value("family", "") != "hyperelliptic") throw std::invalid_argument("model is not hyperelliptic");
    hyper::HyperModel m;
    m.c = j.at("c").get<int>();
    m.b1 = j.at("b1").get<int>();
    m.b2 = j.at("b2").get<int>();
    auto a = j.at("a").get<std::vector<int>>();
    if (a.size() != 10) throw std::invalid_argument("expected 10 low-order coefficients");
    for (int i = 0; i < 10; ++i) {
        if (a[i] < 0 || a[i] > 2) throw std::invalid_argument("coefficients live in F3");
        m.a[i] = a[i];
    }
    if (m.c != 1 && m.c != 2) throw std::invalid_argument("c must be 1 or 2");
    hyper::hyper_index_of(m);  // validates the (b1, b2) pattern
    return m;
}

inline json to_json(const trig::QuinticModel& m) {
    json j;
    j["family"] = "trigonal";
    j["type"] = trig::sing_type_name(m.type);
    j["case"] = m.case_id;
    j["coeffs"] = m.c;
    return j;
}

inline trig::QuinticModel trigonal_from_json(const json& j) {
    if (j.value("family", "") != "trigonal") throw std::invalid_argument("model is not trigonal");
    trig::QuinticModel m;
    m.type = trig::sing_type_from_name(j.at("type").get<std::string>());
    m.case_id = j.value("case", 0);
    auto c = j.at("coeffs").get<std::vector<int>>();
    if (c.size() != 21) throw std::invalid_argument("expected 21 quintic coefficients");
    for (int i = 0; i < 21; ++i) {
        if (c[i] < 0 || c[i] > 2) throw std::invalid_argument("coefficients live in F3");
        m.c[i] = static_cast<std::uint8_t>(c[i]);
    }
    if (m.c[0] != 0 || m.c[1] != 0 || m.c[2] != 0)
        throw std::invalid_argument("quintic has z-degree > 3 terms");
    // the z^3 layer must match the declared singularity type
    bool ok = false;
    switch (m.type) {
        case trig::SingType::split: ok = m.c[3] == 0 && m.c[4] == 1 && m.c[5] == 0; break;
        case trig::SingType::nonsplit: ok = m.c[3] == 1 && m.c[4] == 0 && m.c[5] == 1; break;
        case trig::SingType::cusp: ok = m.c[3] == 1 && m.c[4] == 0 && m.c[5] == 0; break;
    }
    if (!ok) throw std::invalid_argument("z^3 layer does not match the singularity type");
    if (m.case_id == 0) {
        try {
            m.case_id = trig::trigonal_model_at(trig::trigonal_index_of(m)).case_id;
        } catch (const std::invalid_argument&) {
            // model outside the reduced families; keep case 0
        }
    }
    return m;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace g5::io
