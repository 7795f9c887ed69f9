#pragma once

// File formats: relay map JSON, subspace class dumps and BER CSV.

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubenc/fadespace.hpp"
#include "cubenc/latincube.hpp"
#include "cubenc/metrics.hpp"
#include "cubenc/simulator.hpp"

namespace cubenc::io {

using nlohmann::json;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline json to_json(GaussianInt z) { return json::array({z.re, z.im}); }

inline json to_json(const DiffVector& v) { return json::array({to_json(v[0]), to_json(v[1]), to_json(v[2])}); }

inline GaussianInt gaussian_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw FormatError("expected [re, im] integer pair");
    return {j[0].get<int>(), j[1].get<int>()};
}

inline DiffVector diff_vector_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw FormatError("expected three [re, im] pairs");
    DiffVector v{{gaussian_from_json(j[0]), gaussian_from_json(j[1]), gaussian_from_json(j[2])}};
    if (!v.is_valid()) throw FormatError("vector is not a nonzero element of D^3");
    return v;
}

/// A relay map plus the subspace it was built to remove, if any.
struct MapFile {
    RelayMap map;
    std::optional<int> class_id;
    std::optional<DiffVector> canonical;
};

inline json to_json(const MapFile& f) {
    json cells = json::array();
    for (int a = 0; a < 4; ++a) {
        json file = json::array();
        for (int b = 0; b < 4; ++b) {
            json row = json::array();
            for (int c = 0; c < 4; ++c) row.push_back(f.map.label(a, b, c));
            file.push_back(row);
        }
        cells.push_back(file);
    }
    json j;
    j["t"] = f.map.label_count();
    j["cells"] = cells;
    j["class_id"] = f.class_id ? json(*f.class_id) : json(nullptr);
    j["canonical"] = f.canonical ? to_json(*f.canonical) : json(nullptr);
    return j;
}

inline MapFile map_file_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("map file must be a JSON object");
    for (const char* key : {"t", "cells"})
        if (!j.contains(key)) throw FormatError(std::string("map file lacks \"") + key + "\"");
    if (!j["t"].is_number_integer()) throw FormatError("\"t\" must be an integer");

    const json& cells = j["cells"];
    RelayMap::Cells flat{};
    auto bad_shape = [] { return FormatError("\"cells\" must be a 4x4x4 array of non-negative integers"); };
    if (!cells.is_array() || cells.size() != 4) throw bad_shape();
    for (int a = 0; a < 4; ++a) {
        const json& file = cells[std::size_t(a)];
        if (!file.is_array() || file.size() != 4) throw bad_shape();
        for (int b = 0; b < 4; ++b) {
            const json& row = file[std::size_t(b)];
            if (!row.is_array() || row.size() != 4) throw bad_shape();
            for (int c = 0; c < 4; ++c) {
                const json& v = row[std::size_t(c)];
                if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() >= kCells) throw bad_shape();
                flat[std::size_t(Cell{a, b, c}.index())] = v.get<int>();
            }
        }
    }

    MapFile f{RelayMap{flat}, std::nullopt, std::nullopt};
    if (j["t"].get<int>() != f.map.label_count())
        throw FormatError("\"t\" is " + std::to_string(j["t"].get<int>()) + " but cells use labels 0.." +
                          std::to_string(f.map.label_count() - 1));
    if (!f.map.labels_contiguous()) throw FormatError("labels are not contiguous from 0 to t-1");
    if (j.contains("class_id") && !j["class_id"].is_null()) {
        if (!j["class_id"].is_number_integer()) throw FormatError("\"class_id\" must be an integer or null");
        f.class_id = j["class_id"].get<int>();
    }
    if (j.contains("canonical") && !j["canonical"].is_null()) f.canonical = diff_vector_from_json(j["canonical"]);
    return f;
}

inline MapFile parse_map_file(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    return map_file_from_json(j);
}

inline const char* case_name(FadeCase c) {
    switch (c) {
    case FadeCase::Case1: return "case1";
    case FadeCase::Case2: return "case2";
    default: return "case3";
    }
}

inline json to_json(const SubspaceClass& k) {
    json members = json::array();
    for (const auto& m : k.members) members.push_back(to_json(m));
    return {{"id", k.id},
            {"case", case_name(k.fade_case)},
            {"removable", k.removable},
            {"canonical", to_json(k.canonical)},
            {"members", members}};
}

struct Census {
    int case1 = 0;
    int case2 = 0;
    int case3 = 0;
    std::array<int, 4> case3_by_d1{};  // index = number of D1 components
    int total() const { return case1 + case2 + case3; }
};

inline Census census(const std::vector<SubspaceClass>& classes) {
    Census c;
    for (const auto& k : classes) {
        switch (k.fade_case) {
        case FadeCase::Case1: ++c.case1; break;
        case FadeCase::Case2: ++c.case2; break;
        case FadeCase::Case3:
            ++c.case3;
            ++c.case3_by_d1[std::size_t(k.d1_components)];
            break;
        }
    }
    return c;
}

inline std::string census_line(const Census& c) {
    return "case1=" + std::to_string(c.case1) + " case2=" + std::to_string(c.case2) +
           " case3=" + std::to_string(c.case3) + " total=" + std::to_string(c.total());
}

inline json to_json(const Census& c) {
    return {{"case1", c.case1},
            {"case2", c.case2},
            {"case3", c.case3},
            {"case3_one_d1", c.case3_by_d1[1]},
            {"case3_two_d1", c.case3_by_d1[2]},
            {"case3_all_d1", c.case3_by_d1[3]},
            {"total", c.total()}};
}

/// "start:step:stop" (inclusive) or a comma-separated list.
inline std::vector<double> parse_snr_range(const std::string& spec) {
    std::vector<double> out;
    auto num = [&](const std::string& s) {
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw FormatError("bad SNR value \"" + s + "\"");
        }
        if (pos != s.size()) throw FormatError("bad SNR value \"" + s + "\"");
        return v;
    };
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw FormatError("SNR range must be start:step:stop");
        const double start = num(parts[0]), step = num(parts[1]), stop = num(parts[2]);
        if (!(step > 0) || stop < start) throw FormatError("SNR range needs step > 0 and stop >= start");
        const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
        for (long i = 0; i <= n; ++i) out.push_back(start + double(i) * step);
    } else {
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ',');) out.push_back(num(p));
    }
    if (out.empty()) throw FormatError("empty SNR list");
    return out;
}

/// Three "re,im" tokens separated by whitespace.
inline FadeState parse_fade_state(const std::string& spec) {
    std::stringstream ss(spec);
    std::vector<cplx> vals;
    for (std::string tok; ss >> tok;) {
        const auto comma = tok.find(',');
        if (comma == std::string::npos) throw FormatError("fade gain \"" + tok + "\" must be re,im");
        try {
            std::size_t p1 = 0, p2 = 0;
            const std::string re = tok.substr(0, comma), im = tok.substr(comma + 1);
            const double r = std::stod(re, &p1), i = std::stod(im, &p2);
            if (p1 != re.size() || p2 != im.size()) throw std::invalid_argument(tok);
            vals.emplace_back(r, i);
        } catch (const std::exception&) {
            throw FormatError("fade gain \"" + tok + "\" must be re,im");
        }
    }
    if (vals.size() != 3) throw FormatError("expected three fade gains \"re,im re,im re,im\"");
    FadeState h{vals[0], vals[1], vals[2]};
    if (!h.is_finite()) throw FormatError("fade gains must be finite");
    return h;
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline void write_ber_csv(std::ostream& os, Scheme scheme, double rician_k_db, const std::vector<BerRecord>& records,
                          bool header = true) {
    if (header) os << "scheme,rician_k_db,snr_db,node,bit_errors,bits_total,ber\n";
    for (const auto& r : records)
        os << scheme_name(scheme) << ',' << format_double(rician_k_db) << ',' << format_double(r.snr_db) << ','
           << node_name(r.node) << ',' << r.bit_errors << ',' << r.bits_total << ',' << format_double(r.ber())
           << '\n';
}

}  // namespace cubenc::io
