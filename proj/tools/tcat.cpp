// Command-line surface: validation, nerves, cohomology, classifying classes,
// and fundamental double groupoid models, over the JSON file formats.
#include <CLI11.hpp>
#include <iostream>

#include "tcat/io.hpp"

using namespace tcat;
using io::json;

namespace {

int run_validate(const std::string& input, const std::string& output) {
    json j = io::load_file(input);
    std::string schema = io::schema_of(j);
    std::vector<std::string> bad;
    if (schema == "gpd/v1") {
        if (j.contains("inv"))
            bad = io::load_groupoid(j).validate();
        else
            bad = io::load_cat(j).validate();
    } else if (schema == "ssset/v1") {
        bad = io::load_sset(j).validate();
    } else if (schema == "bisset/v1") {
        bad = io::load_bisset(j).validate();
    } else if (schema == "track/v1") {
        bad = track::validate_track(io::load_track(j));
    } else if (schema == "dgpd/v1") {
        bad = io::load_dgpd(j).validate();
    } else if (schema == "dgpd-sym/v1") {
        auto s = io::load_dgpd_sym(j);
        bad = s.dg.validate();
        if (bad.empty() && !dblgpd::is_symmetric(s.dg).has_value())
            bad.push_back("double groupoid is not symmetric");
    } else if (schema == "twotrack/v1") {
        bad = twotrack::validate_two_track(io::load_twotrack(j));
    } else if (schema == "extension/v1") {
        bad = io::validate_extension(io::load_extension(j));
    } else {
        throw io::SchemaError("no validator for schema " + schema);
    }
    json report{{"schema", "report/v1"}, {"command", "validate"}, {"input_schema", schema},
                {"violations", bad}};
    if (!output.empty()) io::save_file(output, report);
    if (bad.empty()) {
        std::cout << "valid " << schema << "\n";
        return 0;
    }
    std::cout << bad.size() << " violation(s); first: " << bad.front() << "\n";
    return 1;
}

int run_nerve(const std::string& input, int degree, const std::string& output) {
    json j = io::load_file(input);
    std::string schema = io::schema_of(j);
    simp::TruncSSet x;
    if (schema == "gpd/v1") {
        auto c = io::load_cat(j);
        auto bad = c.validate();
        if (!bad.empty()) {
            std::cout << "invalid input: " << bad.front() << "\n";
            return 1;
        }
        x = gpd::nerve(c, degree);
    } else if (schema == "track/v1") {
        auto d = io::load_track(j);
        auto bad = track::validate_track(d);
        if (!bad.empty()) {
            std::cout << "invalid input: " << bad.front() << "\n";
            return 1;
        }
        x = bwcoh::track_nerve(d, degree).x;
    } else {
        throw io::SchemaError("nerve expects gpd/v1 or track/v1");
    }
    if (!output.empty()) io::save_file(output, io::save_sset(x));
    std::cout << "nerve through dimension " << degree << ":";
    for (int l = 0; l <= degree; ++l) std::cout << " " << x.size(l);
    std::cout << "\n";
    return 0;
}

int run_cohomology(const std::string& input, const std::string& coeff, int degree,
                   const std::string& output, bool oracle) {
    auto d = io::load_track(io::load_file(input));
    auto bad = track::validate_track(d);
    if (!bad.empty()) {
        std::cout << "invalid track category: " << bad.front() << "\n";
        return 1;
    }
    auto k = io::load_natsys(d, io::load_file(coeff));
    auto badk = track::validate_natsys(d, k);
    if (!badk.empty()) {
        std::cout << "invalid natural system: " << badk.front() << "\n";
        return 1;
    }
    auto hs = bwcoh::bw_cohomology_range(d, k, degree);
    for (int n = 0; n <= degree; ++n)
        std::cout << "H^" << n << " = " << hs[(std::size_t)n].str() << "\n";
    if (oracle && d.tracks.size() == d.base.arrows.size()) {
        bool all_id = true;
        for (std::size_t t = 0; t < d.tracks.size(); ++t)
            if (d.tsrc[t] != d.ttgt[t]) all_id = false;
        if (all_id) {
            auto cls = bwcoh::classical_bw_range(d.base, k, degree);
            bool agree = true;
            for (int n = 0; n <= degree; ++n)
                if (!(cls[(std::size_t)n] == hs[(std::size_t)n])) agree = false;
            std::cout << "classical-nerve cross-check: " << (agree ? "agree" : "DISAGREE") << "\n";
            if (!agree) return 1;
        }
    }
    if (!output.empty()) io::save_file(output, io::cohomology_report(hs));
    return 0;
}

int run_bw_class(const std::string& input, int seed, const std::string& output) {
    auto b = io::load_extension(io::load_file(input));
    auto bad = io::validate_extension(b);
    if (!bad.empty()) {
        std::cout << "invalid extension bundle: " << bad.front() << "\n";
        return 1;
    }
    auto cls = twotrack::bw_class(b.g, std::max(1, seed + 1));
    std::cout << "H^4 = " << cls.h4.str() << "\nclass = (";
    for (std::size_t i = 0; i < cls.coords.size(); ++i)
        std::cout << (i ? "," : "") << cls.coords[i];
    std::cout << ")\n";
    if (!output.empty()) {
        json t = json::array();
        for (auto& v : cls.coords) t.push_back(v.str());
        json jt = json::array();
        for (auto& v : cls.h4.torsion) jt.push_back(v.str());
        io::save_file(output, json{{"schema", "bwclass/v1"},
                                   {"h4_rank", cls.h4.rank},
                                   {"h4_torsion", jt},
                                   {"class", t}});
    }
    return 0;
}

int run_pt_model(const std::string& input, bool debug_fillers, const std::string& output) {
    auto x = io::load_sset(io::load_file(input));
    auto bad = x.validate();
    if (!bad.empty()) {
        std::cout << "invalid simplicial set: " << bad.front() << "\n";
        return 1;
    }
    auto r = dblgpd::pt_of_kan(x, debug_fillers);
    std::cout << "fundamental double groupoid: " << r.dg.points.size() << " points, "
              << r.dg.vert.arrows.size() << " vertical edges, " << r.dg.horiz.arrows.size()
              << " horizontal edges, " << r.dg.squares.size() << " squares\n";
    std::cout << "weakly globular: " << (dblgpd::is_weakly_globular(r.dg) ? "yes" : "no")
              << ", symmetric: " << (dblgpd::is_symmetric(r.dg).has_value() ? "yes" : "no")
              << "\n";
    if (!output.empty()) io::save_file(output, io::save_dgpd(r.dg));
    return 0;
}

int run_roundtrip(const std::string& input, bool oracle) {
    auto g = io::load_groupoid(io::load_file(input));
    auto bad = g.validate();
    if (!bad.empty()) {
        std::cout << "invalid groupoid: " << bad.front() << "\n";
        return 1;
    }
    auto r = dblgpd::pt_of_kan(gpd::nerve(g, 5), oracle);
    auto fg = dblgpd::fundamental_groupoid_dg(r.dg);
    bool iso = gpd::isomorphic(fg, g);
    bool pi2_ok = true;
    for (std::size_t p = 0; p < r.dg.points.size(); ++p)
        if (!dblgpd::pi2_at(r.dg, (int)p).group.trivial()) pi2_ok = false;
    std::cout << "fundamental double groupoid of the nerve recovers the groupoid: "
              << (iso ? "yes" : "NO") << "\n";
    std::cout << "pi2 trivial at every point: " << (pi2_ok ? "yes" : "NO") << "\n";
    return (iso && pi2_ok) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations for track categories and two-track extensions"};
    app.require_subcommand(1);

    std::string input, coeff, output;
    int degree = -1;
    int seed = 0;
    bool debug_fillers = false, oracle = false;

    auto add_common = [&](CLI::App* cmd, bool need_coeff = false) {
        cmd->add_option("--input", input, "input file")->required();
        if (need_coeff) cmd->add_option("--coefficients", coeff, "natural system file")->required();
        cmd->add_option("--degree", degree, "degree bound");
        cmd->add_option("--seed", seed, "section seed");
        cmd->add_option("--output", output, "machine-readable report path");
        cmd->add_flag("--debug-fillers", debug_fillers, "exhaustive filler verification");
        cmd->add_flag("--oracle", oracle, "enable brute-force cross-checks");
    };
    add_common(app.add_subcommand("validate", "full invariant report for any schema"));
    add_common(app.add_subcommand("nerve", "nerve of a category or track category"));
    add_common(app.add_subcommand("cohomology", "Baues-Wirsching cohomology, degrees 0..N"), true);
    add_common(app.add_subcommand("bw-class", "classifying class of a two-track extension"));
    add_common(app.add_subcommand("pt-model", "fundamental double groupoid of a Kan complex"));
    add_common(app.add_subcommand("roundtrip", "composite self-checks on a groupoid"));

    CLI11_PARSE(app, argc, argv);
    try {
        if (app.got_subcommand("validate")) return run_validate(input, output);
        if (app.got_subcommand("nerve")) return run_nerve(input, degree < 0 ? 5 : degree, output);
        if (app.got_subcommand("cohomology"))
            return run_cohomology(input, coeff, degree < 0 ? 4 : degree, output, oracle);
        if (app.got_subcommand("bw-class")) return run_bw_class(input, seed, output);
        if (app.got_subcommand("pt-model")) return run_pt_model(input, debug_fillers, output);
        if (app.got_subcommand("roundtrip")) return run_roundtrip(input, oracle);
    } catch (const io::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
