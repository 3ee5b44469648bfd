#pragma once

#include "mtt/checks.hpp"
#include "mtt/datum.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

// JSON interchange for every artifact the engine reads or writes. Emission
// uses nlohmann::ordered_json with fixed insertion order and ascending
// integer keys, so identical values always serialize to identical bytes and
// canonical files round-trip exactly.

namespace mtt {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Emission

inline Json to_json(const Mat& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c)
            row.push_back(to_string(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const BoundedComplex& x) {
    Json dims = Json::object();
    for (const auto& [n, d] : x.dims())
        dims[std::to_string(n)] = d;
    Json diffs = Json::object();
    for (const auto& [n, m] : x.diffs())
        if (!m.is_zero())
            diffs[std::to_string(n)] = to_json(m);
    return Json{{"dims", std::move(dims)}, {"diffs", std::move(diffs)}};
}

inline Json to_json(const TransportKernel& k) {
    Json j = to_json(k.kernel);
    Json out = Json::object();
    out["label"] = k.label;
    out["source"] = k.source_sector;
    out["target"] = k.target_sector;
    out["dims"] = std::move(j["dims"]);
    out["diffs"] = std::move(j["diffs"]);
    return out;
}

inline Json to_json(const StatePackage& s) {
    Json c = Json::array();
    for (const auto& x : s.c_sigma)
        c.push_back(to_string(x));
    return Json{{"vertices", s.vertices}, {"basis_labels", s.basis_labels},
                {"c_sigma", std::move(c)}};
}

inline Json to_json(const MTTDatum& d) {
    Json out = Json::object();
    out["nodes"] = d.nodes;
    Json phi = Json::array(), psi = Json::array(), sh = Json::array();
    for (const auto& k : d.phi)
        phi.push_back(to_json(k));
    for (const auto& k : d.psi)
        psi.push_back(to_json(k));
    for (const auto& k : d.shadow_kernels)
        sh.push_back(to_json(k));
    Json probes = Json::array(), shadows = Json::array();
    for (const auto& p : d.probes)
        probes.push_back(to_json(p));
    for (const auto& q : d.shadow_objects)
        shadows.push_back(to_json(q));
    out["phi"] = std::move(phi);
    out["psi"] = std::move(psi);
    out["probes"] = std::move(probes);
    out["shadow_kernels"] = std::move(sh);
    out["shadow_objects"] = std::move(shadows);
    out["support"] = d.support;
    out["state"] = to_json(d.state);
    return out;
}

inline Json to_json(const LaurentPoly& p) {
    Json out = Json::object();
    for (const auto& [e, c] : p.coeffs())
        out[std::to_string(e)] = c;
    return out;
}

inline Json to_json(const GradedInteractionMatrix& m) {
    Json rows = Json::array();
    for (int i = 1; i <= m.size; ++i) {
        Json row = Json::array();
        for (int j = 1; j <= m.size; ++j)
            row.push_back(to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const InheritedPackage& pkg) {
    Json spec_rows = Json::array();
    const int r = pkg.graded.size;
    for (int i = 1; i <= r; ++i) {
        Json row = Json::array();
        for (int j = 1; j <= r; ++j) {
            const auto& [wtot, wchi] = pkg.spec_at(i, j);
            row.push_back(Json::array({wtot, wchi}));
        }
        spec_rows.push_back(std::move(row));
    }
    return Json{{"state", to_json(pkg.state)},
                {"support", pkg.support},
                {"graded", to_json(pkg.graded)},
                {"specializations", std::move(spec_rows)}};
}

inline Json to_json(const ChannelReport& rep) {
    return Json{{"channel", Json::array({rep.channel_i, rep.channel_j})},
                {"supported", rep.supported},
                {"content_left_nonzero", rep.content_left_nonzero},
                {"content_right_nonzero", rep.content_right_nonzero},
                {"detector_holds_at_probe", rep.detector_holds_at_probe},
                {"H_nonzero", rep.h_nonzero},
                {"P", to_json(rep.p)},
                {"w_tot", rep.p.eval(1)},
                {"w_chi", rep.p.eval(-1)},
                {"bridge_consistent", rep.bridge_consistent}};
}

inline std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

inline const Json& field(const Json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end())
        throw ParseError(std::string("missing field '") + name + "'");
    return *it;
}

inline int parse_degree_key(const std::string& key) {
    try {
        std::size_t used = 0;
        const int n = std::stoi(key, &used);
        if (used != key.size())
            throw std::invalid_argument(key);
        return n;
    } catch (const std::exception&) {
        throw ParseError("bad integer key '" + key + "'");
    }
}

}  // namespace detail

inline Mat mat_from_json(const Json& j, int expected_rows, int expected_cols) {
    if (!j.is_array())
        throw ParseError("matrix must be a list of rows");
    const int rows = static_cast<int>(j.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(j.at(0).size());
    if (rows != expected_rows || cols != expected_cols)
        throw ParseError("matrix has shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                         ", expected " + std::to_string(expected_rows) + "x" +
                         std::to_string(expected_cols));
    Mat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const Json& row = j.at(r);
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ParseError("ragged matrix row " + std::to_string(r));
        for (int c = 0; c < cols; ++c) {
            const Json& e = row.at(c);
            if (!e.is_string())
                throw ParseError("matrix entries must be rational strings");
            m(r, c) = parse_rational(e.get<std::string>());
        }
    }
    return m;
}

inline BoundedComplex complex_from_json(const Json& j) {
    if (!j.is_object())
        throw ParseError("complex must be an object with 'dims' and 'diffs'");
    std::map<int, int> dims;
    for (const auto& [key, value] : detail::field(j, "dims").items()) {
        if (!value.is_number_integer())
            throw ParseError("dimension at degree " + key + " must be an integer");
        const int d = value.get<int>();
        if (d < 0)
            throw ParseError("dimension at degree " + key + " is negative");
        if (d > 0)
            dims[detail::parse_degree_key(key)] = d;
    }
    auto dim_of = [&](int n) {
        auto it = dims.find(n);
        return it == dims.end() ? 0 : it->second;
    };
    std::map<int, Mat> diffs;
    if (j.contains("diffs"))
        for (const auto& [key, value] : j.at("diffs").items()) {
            const int n = detail::parse_degree_key(key);
            diffs[n] = mat_from_json(value, dim_of(n + 1), dim_of(n));
        }
    return BoundedComplex(std::move(dims), std::move(diffs));
}

inline TransportKernel kernel_from_json(const Json& j) {
    TransportKernel k;
    k.label = detail::field(j, "label").get<std::string>();
    k.source_sector = detail::field(j, "source").get<std::string>();
    k.target_sector = detail::field(j, "target").get<std::string>();
    k.kernel = complex_from_json(j);
    return k;
}

inline StatePackage state_from_json(const Json& j) {
    StatePackage s;
    s.vertices = detail::field(j, "vertices").get<std::vector<std::string>>();
    s.basis_labels = detail::field(j, "basis_labels").get<std::vector<std::string>>();
    for (const auto& entry : detail::field(j, "c_sigma")) {
        if (!entry.is_string())
            throw ParseError("c_sigma entries must be rational strings");
        s.c_sigma.push_back(parse_rational(entry.get<std::string>()));
    }
    return s;
}

inline LaurentPoly laurent_from_json(const Json& j) {
    LaurentPoly p;
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number_integer())
            throw ParseError("polynomial coefficient at q^" + key + " must be an integer");
        p.set(detail::parse_degree_key(key), value.get<std::int64_t>());
    }
    return p;
}

/// Structural parse of a datum (no mathematical validation); sector names
/// come from the kernels themselves.
inline MTTDatum datum_from_json(const Json& j) {
    if (!j.is_object())
        throw ParseError("datum must be a JSON object");
    MTTDatum d;
    d.nodes = detail::field(j, "nodes").get<std::vector<std::string>>();
    for (const auto& k : detail::field(j, "phi"))
        d.phi.push_back(kernel_from_json(k));
    for (const auto& k : detail::field(j, "psi"))
        d.psi.push_back(kernel_from_json(k));
    for (const auto& p : detail::field(j, "probes"))
        d.probes.push_back(complex_from_json(p));
    for (const auto& k : detail::field(j, "shadow_kernels"))
        d.shadow_kernels.push_back(kernel_from_json(k));
    for (const auto& q : detail::field(j, "shadow_objects"))
        d.shadow_objects.push_back(complex_from_json(q));
    d.support = detail::field(j, "support").get<std::vector<std::vector<int>>>();
    d.state = state_from_json(detail::field(j, "state"));
    for (const auto& k : d.phi)
        d.local_sectors.push_back(k.source_sector);
    d.bulk_sector = d.phi.empty() ? "bulk" : d.phi.front().target_sector;
    d.shadow_sector = d.shadow_kernels.empty() ? "shadow" : d.shadow_kernels.front().target_sector;
    return d;
}

inline GradedInteractionMatrix graded_from_json(const Json& j) {
    GradedInteractionMatrix m;
    m.size = static_cast<int>(j.size());
    for (const auto& row : j) {
        if (static_cast<int>(row.size()) != m.size)
            throw ParseError("graded matrix is not square");
        for (const auto& entry : row)
            m.entries.push_back(laurent_from_json(entry));
    }
    return m;
}

inline InheritedPackage package_from_json(const Json& j) {
    InheritedPackage pkg;
    pkg.state = state_from_json(detail::field(j, "state"));
    pkg.support = detail::field(j, "support").get<std::vector<std::vector<int>>>();
    pkg.graded = graded_from_json(detail::field(j, "graded"));
    for (const auto& row : detail::field(j, "specializations"))
        for (const auto& entry : row) {
            if (!entry.is_array() || entry.size() != 2)
                throw ParseError("specializations entries must be [w_tot, w_chi] pairs");
            pkg.specializations.push_back(
                {entry.at(0).get<std::int64_t>(), entry.at(1).get<std::int64_t>()});
        }
    return pkg;
}

// ---------------------------------------------------------------------------
// File-level entry points

struct ParseResult {
    std::optional<MTTDatum> datum;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return datum.has_value() && diagnostics.empty(); }
};

/// Parse + full validation; diagnostics name the offending field, degree, or
/// node instead of throwing.
inline ParseResult parse_datum_text(const std::string& text) {
    ParseResult result;
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        result.diagnostics.push_back({"json", e.what()});
        return result;
    }
    MTTDatum d;
    try {
        d = datum_from_json(j);
    } catch (const std::exception& e) {
        result.diagnostics.push_back({"structure", e.what()});
        return result;
    }
    result.diagnostics = validate_datum(d);
    if (result.diagnostics.empty())
        result.datum = std::move(d);
    return result;
}

inline std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        return false;
    out << content;
    return out.good();
}

inline ParseResult parse_datum_file(const std::string& path) {
    const auto text = read_file(path);
    if (!text) {
        ParseResult r;
        r.diagnostics.push_back({"file", "cannot read '" + path + "'"});
        return r;
    }
    return parse_datum_text(*text);
}

/// Obstruction demos ship as {"first": datum, "second": datum}.
inline bool looks_like_pair(const Json& j) {
    return j.is_object() && j.contains("first") && j.contains("second");
}

struct PairParseResult {
    std::optional<std::pair<MTTDatum, MTTDatum>> pair;
    std::vector<Diagnostic> diagnostics;
};

inline PairParseResult parse_datum_pair(const Json& j) {
    PairParseResult result;
    MTTDatum first, second;
    try {
        first = datum_from_json(detail::field(j, "first"));
        second = datum_from_json(detail::field(j, "second"));
    } catch (const std::exception& e) {
        result.diagnostics.push_back({"structure", e.what()});
        return result;
    }
    for (const auto& [name, d] : {std::pair<const char*, const MTTDatum*>{"first", &first},
                                  {"second", &second}})
        for (const auto& diag : validate_datum(*d))
            result.diagnostics.push_back({std::string(name) + "." + diag.where, diag.message});
    if (result.diagnostics.empty())
        result.pair = {std::move(first), std::move(second)};
    return result;
}

}  // namespace mtt
