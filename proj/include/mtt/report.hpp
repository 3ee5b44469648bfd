#pragma once

#include "mtt/models.hpp"
#include "mtt/serialize.hpp"
#include "mtt/verify.hpp"

#include <string>
#include <vector>

// Report assembly: the inherited package with bridge verdicts rendered as
// JSON, Markdown, or CSV, plus the nodewise/off-diagonal diff used by the
// obstruction pair demo.

namespace mtt {

/// Everything about one node that is computable from the shadow-side residue
/// alone (probe, shadow object, state entries). Deliberately contains no
/// transported quantity.
inline Json nodewise_report(const MTTDatum& d, int node_index) {
    const int k = node_index - 1;
    Json probe_h = Json::object(), shadow_h = Json::object();
    for (const auto& [n, v] : homology_dims(d.probes[k]))
        probe_h[std::to_string(n)] = v;
    for (const auto& [n, v] : homology_dims(d.shadow_objects[k]))
        shadow_h[std::to_string(n)] = v;
    const BoundedComplex image = apply(d.shadow_kernels[k], d.probes[k]);
    return Json{{"node", d.nodes[k]},
                {"probe_homology", std::move(probe_h)},
                {"shadow_homology", std::move(shadow_h)},
                {"shadow_compatible",
                 homology_dims(image) == homology_dims(d.shadow_objects[k]) ? 1 : 0},
                {"diag_shadow_poincare",
                 to_json(poincare(d.shadow_objects[k], d.shadow_objects[k]))},
                {"basis_label", d.state.basis_labels[k]},
                {"c", to_string(d.state.c_sigma[k])}};
}

inline Json nodewise_reports(const MTTDatum& d) {
    Json out = Json::array();
    for (int k = 1; k <= d.size(); ++k)
        out.push_back(nodewise_report(d, k));
    return out;
}

struct DatumReport {
    InheritedPackage package;
    std::vector<std::vector<int>> derived;
    std::vector<ChannelReport> channels;
};

inline DatumReport build_report(const MTTDatum& d) {
    DatumReport rep;
    rep.package = inherited_package(d);
    rep.derived = derived_nonvanishing(rep.package.graded);
    rep.channels = bridge_verdict(d);
    return rep;
}

inline Json to_json(const DatumReport& rep, const MTTDatum& d) {
    Json channels = Json::array();
    for (const auto& c : rep.channels)
        channels.push_back(to_json(c));
    return Json{{"package", to_json(rep.package)},
                {"derived_nonvanishing", rep.derived},
                {"nodewise", nodewise_reports(d)},
                {"channels", std::move(channels)}};
}

namespace detail {

inline std::string bits_row(const std::vector<int>& row) {
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i)
            out += " ";
        out += std::to_string(row[i]);
    }
    return out;
}

}  // namespace detail

inline std::string render_markdown(const DatumReport& rep, const MTTDatum& d) {
    std::string md;
    md += "# Inherited package\n\n";
    md += "## State\n\n";
    md += "| vertex | basis | c |\n|---|---|---|\n";
    for (int k = 0; k < d.size(); ++k)
        md += "| " + d.state.vertices[k] + " | " + d.state.basis_labels[k] + " | " +
              to_string(d.state.c_sigma[k]) + " |\n";
    md += "\n## Support (input) and derived nonvanishing\n\n";
    md += "| i | support row | derived row |\n|---|---|---|\n";
    for (int i = 0; i < d.size(); ++i)
        md += "| " + std::to_string(i + 1) + " | " + detail::bits_row(rep.package.support[i]) +
              " | " + detail::bits_row(rep.derived[i]) + " |\n";
    md += "\n## Graded interaction matrix\n\n";
    md += "| i \\ j |";
    for (int j = 1; j <= d.size(); ++j)
        md += " " + std::to_string(j) + " |";
    md += "\n|---|";
    for (int j = 1; j <= d.size(); ++j)
        md += "---|";
    md += "\n";
    for (int i = 1; i <= d.size(); ++i) {
        md += "| " + std::to_string(i) + " |";
        for (int j = 1; j <= d.size(); ++j)
            md += " " + rep.package.graded.at(i, j).printed() + " |";
        md += "\n";
    }
    md += "\n## Bridge verdicts\n\n";
    md += "| i | j | supported | content | detector | P_ij | w_tot | w_chi | consistent |\n";
    md += "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& c : rep.channels) {
        const int content = (c.content_left_nonzero || c.content_right_nonzero) ? 1 : 0;
        md += "| " + std::to_string(c.channel_i) + " | " + std::to_string(c.channel_j) + " | " +
              std::to_string(c.supported) + " | " + std::to_string(content) + " | " +
              std::to_string(c.detector_holds_at_probe) + " | " + c.p.printed() + " | " +
              std::to_string(c.p.eval(1)) + " | " + std::to_string(c.p.eval(-1)) + " | " +
              std::to_string(c.bridge_consistent) + " |\n";
    }
    return md;
}

inline std::string render_csv(const DatumReport& rep) {
    std::string csv =
        "i,j,supported,content_left,content_right,detector,P,w_tot,w_chi,consistent\n";
    for (const auto& c : rep.channels)
        csv += std::to_string(c.channel_i) + "," + std::to_string(c.channel_j) + "," +
               std::to_string(c.supported) + "," + std::to_string(c.content_left_nonzero) + "," +
               std::to_string(c.content_right_nonzero) + "," +
               std::to_string(c.detector_holds_at_probe) + ",\"" + c.p.printed() + "\"," +
               std::to_string(c.p.eval(1)) + "," + std::to_string(c.p.eval(-1)) + "," +
               std::to_string(c.bridge_consistent) + "\n";
    return csv;
}

// ---------------------------------------------------------------------------
// Obstruction pair diff

struct PairDiff {
    bool nodewise_identical = false;
    std::vector<std::pair<int, int>> differing_channels;  // 1-based (i, j)
    GradedInteractionMatrix first, second;
};

/// Diff of two data sharing the same node set: nodewise reports compared
/// entry-by-entry, then the graded matrices compared channel-by-channel.
inline PairDiff diff_pair(const MTTDatum& a, const MTTDatum& b) {
    PairDiff diff;
    diff.nodewise_identical =
        nodewise_reports(a) == nodewise_reports(b) && a.support == b.support &&
        a.state == b.state;
    diff.first = graded_matrix(a);
    diff.second = graded_matrix(b);
    for (int i = 1; i <= diff.first.size; ++i)
        for (int j = 1; j <= diff.first.size; ++j)
            if (diff.first.at(i, j) != diff.second.at(i, j))
                diff.differing_channels.push_back({i, j});
    return diff;
}

inline Json to_json(const PairDiff& diff, const MTTDatum& a, const MTTDatum& b) {
    Json channels = Json::array();
    for (const auto& [i, j] : diff.differing_channels)
        channels.push_back(Json::array({i, j}));
    return Json{{"pair", true},
                {"nodewise_identical", diff.nodewise_identical},
                {"nodewise_first", nodewise_reports(a)},
                {"nodewise_second", nodewise_reports(b)},
                {"graded_first", to_json(diff.first)},
                {"graded_second", to_json(diff.second)},
                {"differing_channels", std::move(channels)}};
}

inline std::string render_pair_markdown(const PairDiff& diff) {
    std::string md = "# Obstruction pair diff\n\n";
    md += std::string("Nodewise data identical: ") +
          (diff.nodewise_identical ? "yes" : "NO") + "\n\n";
    md += "| i | j | P_ij (first) | P_ij (second) | differs |\n|---|---|---|---|---|\n";
    for (int i = 1; i <= diff.first.size; ++i)
        for (int j = 1; j <= diff.first.size; ++j) {
            const bool differs = diff.first.at(i, j) != diff.second.at(i, j);
            md += "| " + std::to_string(i) + " | " + std::to_string(j) + " | " +
                  diff.first.at(i, j).printed() + " | " + diff.second.at(i, j).printed() +
                  " | " + (differs ? "yes" : "no") + " |\n";
        }
    return md;
}

// ---------------------------------------------------------------------------
// Verify report

inline Json to_json(const std::vector<SuiteResult>& suites, const std::string& mode,
                    std::uint64_t seed, int trials) {
    Json sj = Json::array();
    bool all_pass = true;
    for (const auto& s : suites) {
        Json one{{"name", s.name}, {"trials", s.trials}, {"pass", s.passed}, {"fail", s.failed}};
        if (s.first_failure)
            one["first_failure"] = *s.first_failure;
        all_pass = all_pass && s.failed == 0;
        sj.push_back(std::move(one));
    }
    return Json{{"command", "verify"},
                {"mode", mode},
                {"seed", seed},
                {"trials", trials},
                {"suites", std::move(sj)},
                {"all_pass", all_pass}};
}

}  // namespace mtt
