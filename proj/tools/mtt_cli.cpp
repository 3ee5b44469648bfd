// mtt-lab: exact transport-interaction engine over bounded rational
// complexes. Subcommands: validate, compute, verify, demo, report.
//
// Outputs are byte-deterministic for identical inputs and flags; the only
// environment knob is MTT_THREADS (worker cap for independent channels and
// trials), which never changes results.

#include "mtt/mttlab.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

int emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return 0;
    }
    if (!mtt::write_file(out_path, content)) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return 1;
    }
    return 0;
}

void print_diagnostics(const std::vector<mtt::Diagnostic>& diagnostics) {
    mtt::Json out;
    out["error"] = "validation";
    mtt::Json list = mtt::Json::array();
    for (const auto& d : diagnostics)
        list.push_back(mtt::Json{{"where", d.where}, {"message", d.message}});
    out["diagnostics"] = std::move(list);
    std::cerr << mtt::dump_canonical(out);
}

std::optional<mtt::MTTDatum> load_datum_or_report(const std::string& path) {
    const mtt::ParseResult parsed = mtt::parse_datum_file(path);
    if (!parsed.ok()) {
        print_diagnostics(parsed.diagnostics);
        return std::nullopt;
    }
    return parsed.datum;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mtt-lab: exact graded interaction packages from transport data"};
    app.require_subcommand(1);

    // --- validate ---------------------------------------------------------
    std::string validate_path;
    auto* cmd_validate = app.add_subcommand("validate", "validate a datum file");
    cmd_validate->add_option("file", validate_path, "datum JSON file")->required();

    // --- compute ----------------------------------------------------------
    std::string compute_path, compute_out;
    std::vector<int> compute_channel;
    bool compute_all = false;
    auto* cmd_compute = app.add_subcommand("compute", "compute P_ij or the inherited package");
    cmd_compute->add_option("file", compute_path, "datum JSON file")->required();
    auto* channel_opt = cmd_compute
                            ->add_option("--channel", compute_channel,
                                         "ordered channel i j (1-based)")
                            ->expected(2);
    cmd_compute->add_flag("--all", compute_all, "all channels: emit the inherited package");
    cmd_compute->add_option("-o,--output", compute_out, "output path (default stdout)");

    // --- verify -----------------------------------------------------------
    std::string verify_path, verify_suite = "all", verify_out;
    bool verify_random = false;
    std::uint64_t verify_seed = 0;
    int verify_trials = 20;
    auto* cmd_verify = app.add_subcommand("verify", "run property suites");
    cmd_verify->add_option("file", verify_path, "datum JSON file to verify against");
    cmd_verify->add_flag("--random", verify_random, "verify seeded random data instead");
    cmd_verify->add_option("--suite", verify_suite, "les|visibility|bridge|euler|oracle|all");
    cmd_verify->add_option("--seed", verify_seed, "base seed (default 0)");
    cmd_verify->add_option("--trials", verify_trials, "trials per suite (default 20)");
    cmd_verify->add_option("-o,--output", verify_out, "output path (default stdout)");

    // --- demo -------------------------------------------------------------
    std::string demo_name, demo_out;
    int demo_d = 1, demo_m0 = 0, demo_a = 1, demo_b = 1, demo_m = 0;
    auto* cmd_demo = app.add_subcommand("demo", "write a generated datum");
    cmd_demo->add_option("name", demo_name,
                         "single-degree|two-degree|directedness|obstruction|"
                         "visibility-right|visibility-left|bridge")
        ->required();
    cmd_demo->add_option("-o,--output", demo_out, "output path (default stdout)");
    cmd_demo->add_option("--d", demo_d, "single-degree: dimension d (default 1)");
    cmd_demo->add_option("--m0", demo_m0, "single-degree: degree m0 (default 0)");
    cmd_demo->add_option("--a", demo_a, "two-degree: dim in degree m (default 1)");
    cmd_demo->add_option("--b", demo_b, "two-degree: dim in degree m+1 (default 1)");
    cmd_demo->add_option("--m", demo_m, "two-degree: lower degree m (default 0)");

    // --- report -----------------------------------------------------------
    std::string report_path, report_format = "md", report_out;
    auto* cmd_report = app.add_subcommand("report", "render package and bridge verdicts");
    cmd_report->add_option("file", report_path, "datum (or obstruction pair) JSON file")
        ->required();
    cmd_report->add_option("--format", report_format, "json|md|csv (default md)");
    cmd_report->add_option("-o,--output", report_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_validate) {
            const mtt::ParseResult parsed = mtt::parse_datum_file(validate_path);
            if (!parsed.ok()) {
                print_diagnostics(parsed.diagnostics);
                return 1;
            }
            std::cout << mtt::dump_canonical(
                mtt::Json{{"valid", true}, {"nodes", parsed.datum->size()}});
            return 0;
        }

        if (*cmd_compute) {
            const auto datum = load_datum_or_report(compute_path);
            if (!datum)
                return 1;
            if (!compute_all && channel_opt->count() == 0)
                compute_all = true;  // documented default
            std::string content;
            if (compute_all) {
                content = mtt::dump_canonical(mtt::to_json(mtt::inherited_package(*datum)));
            } else {
                const int i = compute_channel.at(0), j = compute_channel.at(1);
                mtt::require_channel(*datum, i, j);
                const mtt::LaurentPoly p = mtt::interaction_polynomial(*datum, i, j);
                content = mtt::dump_canonical(mtt::Json{{"channel", mtt::Json::array({i, j})},
                                                        {"P", mtt::to_json(p)},
                                                        {"P_printed", p.printed()},
                                                        {"w_tot", p.eval(1)},
                                                        {"w_chi", p.eval(-1)}});
            }
            return emit(content, compute_out);
        }

        if (*cmd_verify) {
            if (verify_random == !verify_path.empty()) {
                std::cerr << "error: pass exactly one of <file> or --random\n";
                return 2;
            }
            std::optional<mtt::MTTDatum> fixed;
            if (!verify_path.empty()) {
                fixed = load_datum_or_report(verify_path);
                if (!fixed)
                    return 1;
            }
            const auto suites =
                mtt::run_suites(verify_suite, verify_seed, verify_trials, fixed);
            const mtt::Json report = mtt::to_json(
                suites, verify_random ? "random" : "file", verify_seed, verify_trials);
            const int rc = emit(mtt::dump_canonical(report), verify_out);
            if (rc != 0)
                return rc;
            return report.at("all_pass").get<bool>() ? 0 : 1;
        }

        if (*cmd_demo) {
            std::string content;
            if (demo_name == "single-degree")
                content = mtt::dump_canonical(mtt::to_json(mtt::gen_single_degree(demo_d, demo_m0)));
            else if (demo_name == "two-degree")
                content = mtt::dump_canonical(mtt::to_json(mtt::gen_two_degree(demo_a, demo_b, demo_m)));
            else if (demo_name == "directedness")
                content = mtt::dump_canonical(mtt::to_json(mtt::gen_directedness_witness()));
            else if (demo_name == "obstruction") {
                const auto [first, second] = mtt::gen_obstruction_demo();
                content = mtt::dump_canonical(
                    mtt::Json{{"first", mtt::to_json(first)}, {"second", mtt::to_json(second)}});
            } else if (demo_name == "visibility-right")
                content = mtt::dump_canonical(mtt::to_json(mtt::gen_visibility_right_demo()));
            else if (demo_name == "visibility-left")
                content = mtt::dump_canonical(mtt::to_json(mtt::gen_visibility_left_demo()));
            else if (demo_name == "bridge")
                content = mtt::dump_canonical(mtt::to_json(mtt::gen_bridge_demo()));
            else {
                std::cerr << "error: unknown demo '" << demo_name << "'\n";
                return 2;
            }
            return emit(content, demo_out);
        }

        if (*cmd_report) {
            const auto text = mtt::read_file(report_path);
            if (!text) {
                std::cerr << "error: cannot read '" << report_path << "'\n";
                return 1;
            }
            mtt::Json j;
            try {
                j = mtt::Json::parse(*text);
            } catch (const std::exception& e) {
                print_diagnostics({{"json", e.what()}});
                return 1;
            }
            std::string content;
            if (mtt::looks_like_pair(j)) {
                const mtt::PairParseResult pair = mtt::parse_datum_pair(j);
                if (!pair.pair) {
                    print_diagnostics(pair.diagnostics);
                    return 1;
                }
                const auto& [first, second] = *pair.pair;
                const mtt::PairDiff diff = mtt::diff_pair(first, second);
                if (report_format == "json")
                    content = mtt::dump_canonical(mtt::to_json(diff, first, second));
                else if (report_format == "md")
                    content = mtt::render_pair_markdown(diff);
                else if (report_format == "csv") {
                    content = "i,j,P_first,P_second,differs\n";
                    for (int i = 1; i <= diff.first.size; ++i)
                        for (int jj = 1; jj <= diff.first.size; ++jj) {
                            const bool differs = diff.first.at(i, jj) != diff.second.at(i, jj);
                            content += std::to_string(i) + "," + std::to_string(jj) + ",\"" +
                                       diff.first.at(i, jj).printed() + "\",\"" +
                                       diff.second.at(i, jj).printed() + "\"," +
                                       (differs ? "1" : "0") + "\n";
                        }
                } else {
                    std::cerr << "error: unknown format '" << report_format << "'\n";
                    return 2;
                }
            } else {
                const mtt::ParseResult parsed = mtt::parse_datum_text(*text);
                if (!parsed.ok()) {
                    print_diagnostics(parsed.diagnostics);
                    return 1;
                }
                const mtt::DatumReport rep = mtt::build_report(*parsed.datum);
                if (report_format == "json")
                    content = mtt::dump_canonical(mtt::to_json(rep, *parsed.datum));
                else if (report_format == "md")
                    content = mtt::render_markdown(rep, *parsed.datum);
                else if (report_format == "csv")
                    content = mtt::render_csv(rep);
                else {
                    std::cerr << "error: unknown format '" << report_format << "'\n";
                    return 2;
                }
            }
            return emit(content, report_out);
        }
    } catch (const std::exception& e) {
        std::cerr << mtt::dump_canonical(mtt::Json{{"error", e.what()}});
        return 1;
    }
    return 2;
}
