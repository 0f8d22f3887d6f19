// qwalk: command-line front end for the walk laboratory.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qwalk/calibration.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/instances.hpp"
#include "qwalk/locality.hpp"
#include "qwalk/markov.hpp"
#include "qwalk/quantum.hpp"
#include "qwalk/search.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/verify.hpp"

namespace {

using json = nlohmann::json;
using qwalk::Index;

struct Common {
    std::uint64_t seed = 1;
    std::string out;
    std::string constants = qwalk::default_calibration_path().string();
};

std::optional<qwalk::Calibration> try_constants(const Common& common) {
    if (!std::filesystem::exists(common.constants)) return std::nullopt;
    return qwalk::load_calibration(common.constants);
}

qwalk::Calibration require_constants(const Common& common) {
    auto k = try_constants(common);
    if (!k)
        throw std::runtime_error("calibration file " + common.constants +
                                 " not found; run `qwalk calibrate` or pass --constants");
    return *k;
}

json envelope(const std::string& command, json spec, const Common& common,
              const std::optional<qwalk::Calibration>& constants, json result) {
    spec["seed"] = common.seed;
    return {{"tool", "qwalk"},
            {"version", QWALK_VERSION},
            {"command", command},
            {"spec", std::move(spec)},
            {"seed", common.seed},
            {"constants", constants ? qwalk::to_json(*constants) : json(nullptr)},
            {"constants_hash", constants ? json(constants->hash()) : json(nullptr)},
            {"result", std::move(result)}};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// JSON goes to --out when given (with a one-line summary on stdout),
// otherwise to stdout.
void emit(const Common& common, const json& doc, const std::string& summary) {
    const std::string text = doc.dump(2) + "\n";
    if (common.out.empty()) {
        std::cout << text;
    } else {
        write_text(common.out, text);
        std::cout << summary << "\n";
    }
}

void add_common(CLI::App* cmd, Common& common, bool with_constants) {
    cmd->add_option("--seed", common.seed, "random seed")->capture_default_str();
    cmd->add_option("--out", common.out, "output file");
    if (with_constants)
        cmd->add_option("--constants", common.constants, "calibration constants file")->capture_default_str();
}

std::string fixed(double v, int digits = 6) {
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qwalk: classical and quantum walk laboratory for torus search"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(QWALK_VERSION));

    Common common;
    int status = 0;

    // build
    std::string graph_text;
    Index partition_d = 0;
    auto* build = app.add_subcommand("build", "emit a graph (and optional torus partition) as JSON");
    build->add_option("--graph", graph_text, "torus:<n> or grid:<n>")->required();
    build->add_option("--partition", partition_d, "cut parameter d for a torus partition");
    add_common(build, common, false);

    // dump
    std::string marked_text, walk_kind = "plain", meta_path;
    double s_param = 0.0;
    auto* dump = app.add_subcommand("dump", "export a walk matrix as 'row col value' triplets");
    dump->add_option("--graph", graph_text, "torus:<n> or grid:<n>")->required();
    dump->add_option("--marked", marked_text, "marked set (needed for absorbing and interpolated walks)");
    dump->add_option("--walk", walk_kind, "plain, absorbing, interpolated or discriminant")
        ->check(CLI::IsMember({"plain", "absorbing", "interpolated", "discriminant"}))
        ->capture_default_str();
    dump->add_option("--s", s_param, "interpolation parameter")->capture_default_str();
    dump->add_option("--meta", meta_path, "write JSON metadata here");
    add_common(dump, common, false);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "hitting, escape and extended hitting times of one instance");
    analyze->add_option("--graph", graph_text, "torus:<n> or grid:<n>")->required();
    analyze->add_option("--marked", marked_text, "marked set")->required();
    add_common(analyze, common, false);

    // locality
    std::string mode = "line";
    Index steps = 100, torus_n = 32;
    std::int64_t trials = 100000;
    auto* locality = app.add_subcommand("locality", "Monte Carlo localization experiments");
    locality->add_option("--mode", mode, "line, grid or coverage")
        ->check(CLI::IsMember({"line", "grid", "coverage"}))
        ->capture_default_str();
    locality->add_option("--T", steps, "walk length")->capture_default_str();
    locality->add_option("--trials", trials, "number of walks")->capture_default_str();
    locality->add_option("--n", torus_n, "torus side (coverage)")->capture_default_str();
    locality->add_option("--marked", marked_text, "marked set (coverage)");
    add_common(locality, common, false);

    // search
    std::string k_text;
    bool sample = false;
    auto* search = app.add_subcommand("search", "multi-marked search on the torus");
    search->add_option("--n", torus_n, "torus side")->required();
    search->add_option("--marked", marked_text, "marked set")->required();
    search->add_option("--k", k_text, "exponent of the marked-mass estimate, or 'sweep'");
    search->add_flag("--sample", sample, "also draw k, a block and a vertex with the seed");
    add_common(search, common, true);

    // sweep
    std::vector<Index> sizes = {8, 16, 32};
    std::vector<std::string> families = {"singleton", "row", "clusters", "half", "halfcheck"};
    auto* sweep = app.add_subcommand("sweep", "search over sizes and families, CSV table");
    sweep->add_option("--sizes", sizes, "torus sides")->delimiter(',')->capture_default_str();
    sweep->add_option("--families", families, "marked families")->delimiter(',')->capture_default_str();
    add_common(sweep, common, true);

    // calibrate
    auto* calibrate = app.add_subcommand("calibrate", "run the calibration sweep and write the constants file");
    calibrate->add_option("--out", common.out, "constants file (default: the constants path)");

    // verify
    std::string suite = "all";
    std::vector<Index> search_sizes;
    auto* verify = app.add_subcommand("verify", "run acceptance checks");
    verify->add_option("suite", suite, "oracle, extended, theorems, escape, locality, finding, search, all")
        ->check(CLI::IsMember(qwalk::suite_names()))
        ->capture_default_str();
    verify->add_option("--trials", trials, "Monte Carlo trials")->capture_default_str();
    verify->add_option("--n", search_sizes, "torus sides for the search suite")->delimiter(',');
    add_common(verify, common, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) {
            const auto spec = qwalk::parse_graph_spec(graph_text);
            const auto g = qwalk::build_graph(spec);
            json result = {{"graph", qwalk::to_json(g)}};
            json params = {{"graph", spec.str()}};
            if (partition_d > 0) {
                if (spec.kind != qwalk::GraphKind::torus) throw std::invalid_argument("--partition needs a torus");
                const auto layout = qwalk::partition_torus(spec.n, partition_d);
                result["partition"] = qwalk::to_json(layout);
                result["cut_edges"] = qwalk::cut_edge_count(layout);
                params["partition"] = partition_d;
            }
            emit(common, envelope("build", params, common, std::nullopt, result),
                 spec.str() + ": " + std::to_string(g.n_vertices()) + " vertices");
        } else if (*dump) {
            const auto spec = qwalk::parse_graph_spec(graph_text);
            const auto g = qwalk::build_graph(spec);
            qwalk::WalkMatrix P = qwalk::walk_from_graph(g);
            if (walk_kind == "absorbing" || walk_kind == "interpolated") {
                if (marked_text.empty()) throw std::invalid_argument("--marked is required for --walk " + walk_kind);
                const auto M = qwalk::parse_marked(marked_text, g.rows(), g.cols());
                const auto absorbing = qwalk::make_absorbing(P, M);
                P = walk_kind == "absorbing" ? absorbing : qwalk::interpolate(P, absorbing, s_param);
            }
            std::ostringstream triplets;
            json meta = qwalk::matrix_metadata(P);
            if (walk_kind == "discriminant") {
                const auto d = qwalk::discriminant(P);
                qwalk::write_triplets(triplets, d.sparse());
                meta["kind"] = "discriminant";
                meta["nnz"] = d.sparse().nonZeros();
            } else {
                qwalk::write_triplets(triplets, P.sparse());
            }
            if (common.out.empty())
                std::cout << triplets.str();
            else
                write_text(common.out, triplets.str());
            if (!meta_path.empty()) {
                json params = {{"graph", spec.str()}, {"marked", marked_text}, {"walk", walk_kind}, {"s", s_param}};
                write_text(meta_path, envelope("dump", params, common, std::nullopt, meta).dump(2) + "\n");
            }
        } else if (*analyze) {
            const auto spec = qwalk::parse_graph_spec(graph_text);
            const auto g = qwalk::build_graph(spec);
            const auto P = qwalk::walk_from_graph(g);
            const auto M = qwalk::parse_marked(marked_text, g.rows(), g.cols());
            const auto h = qwalk::analyze(P, M);
            json result = qwalk::to_json(h);
            result["instance"] = spec.str() + " " + marked_text;
            const bool ok = std::abs(h.ht - h.ht_linear) <= 1e-6 * std::max(1.0, h.ht);
            result["oracle_agreement"] = ok;
            status = ok ? 0 : 1;
            emit(common, envelope("analyze", {{"graph", spec.str()}, {"marked", marked_text}}, common, std::nullopt, result),
                 "ht " + fixed(h.ht) + "  ht_linear " + fixed(h.ht_linear) + "  eht " + fixed(h.eht));
        } else if (*locality) {
            json params = {{"mode", mode}, {"T", steps}, {"trials", trials}};
            json result;
            std::string summary;
            if (mode == "coverage") {
                if (marked_text.empty()) throw std::invalid_argument("--marked is required for --mode coverage");
                const auto M = qwalk::parse_marked(marked_text, torus_n, torus_n);
                const auto r = qwalk::subgrid_coverage(torus_n, M, steps, trials, common.seed);
                params["n"] = torus_n;
                params["marked"] = marked_text;
                result = qwalk::to_json(r);
                const bool asserted = r.p_hat >= 1.0 / 74.0;
                const bool ok = !asserted || r.p_g >= r.p_hat / 5.0 - 3.0 * r.sigma(r.p_hat);
                result["asserted"] = asserted;
                result["passed"] = ok;
                status = ok ? 0 : 1;
                summary = "p_hat " + fixed(r.p_hat) + "  p_G " + fixed(r.p_g);
            } else {
                const bool line = mode == "line";
                const auto r = line ? qwalk::line_localization(steps, trials, common.seed)
                                    : qwalk::grid_localization(steps, trials, common.seed);
                const double target = line ? 1.0 - 1.0 / 745.0 : 1.0 - 2.0 / 745.0;
                result = qwalk::to_json(r);
                result["target"] = target;
                result["passed"] = r.wilson.low >= target;
                status = r.wilson.low >= target ? 0 : 1;
                summary = "localized " + fixed(r.fraction) + "  wilson_low " + fixed(r.wilson.low);
            }
            emit(common, envelope("locality", params, common, std::nullopt, result), summary);
        } else if (*search) {
            const auto constants = require_constants(common);
            const auto M = qwalk::parse_marked(marked_text, torus_n, torus_n);
            qwalk::SearchConfig config;
            config.n = torus_n;
            config.marked.assign(M.members().begin(), M.members().end());
            config.seed = common.seed;
            config.constants = constants;
            config.sample = sample;
            const bool is_sweep = k_text == "sweep";
            if (!k_text.empty() && !is_sweep) config.k = std::stoi(k_text);
            const auto report = is_sweep ? qwalk::run_k_sweep(config) : qwalk::run_search(config);
            json result = qwalk::to_json(report);
            double success = is_sweep ? *report.sweep_success : report.best_success;
            const bool asserted = !config.k;
            const bool ok = !asserted || success >= 1.0 / 50.0;
            result["asserted"] = asserted;
            result["passed"] = ok;
            status = ok ? 0 : 1;
            json params = {{"n", torus_n}, {"marked", marked_text}, {"k", k_text.empty() ? "best" : k_text},
                           {"sample", sample}};
            emit(common, envelope("search", params, common, constants, result),
                 "success " + fixed(success) + "  steps " + std::to_string(report.ledger.steps()) + "  verdict " +
                     report.verdict());
        } else if (*sweep) {
            const auto constants = require_constants(common);
            std::ostringstream csv;
            csv << "n,family,marked,h_tilde,capped,d,block_side,T,best_k,best_success,uniform_success,steps,h_eff,"
                   "bound,ratio\n";
            bool ok = true;
            for (Index n : sizes) {
                for (const auto& family : families) {
                    const auto M = qwalk::parse_marked(family, n, n);
                    qwalk::SearchConfig config;
                    config.n = n;
                    config.marked.assign(M.members().begin(), M.members().end());
                    config.seed = common.seed;
                    config.constants = constants;
                    const auto r = qwalk::run_search(config);
                    const auto P = qwalk::walk_from_graph(qwalk::build_torus(n));
                    const auto h_eff = static_cast<double>(qwalk::effective_hitting_time(P, M));
                    const auto check = qwalk::verify_cost_bound(r, h_eff, constants.c3);
                    ok = ok && r.best_success >= 1.0 / 50.0 && check.ratio <= 1.0;
                    csv << n << ',' << family << ',' << M.size() << ',' << r.estimate.h_tilde << ','
                        << (r.estimate.capped ? 1 : 0) << ',' << r.d << ',' << r.block_side << ','
                        << r.steps_per_block << ',' << r.best_k << ',' << r.best_success << ','
                        << r.uniform_success << ',' << check.steps << ',' << h_eff << ',' << check.bound << ','
                        << check.ratio << '\n';
                }
            }
            status = ok ? 0 : 1;
            if (common.out.empty())
                std::cout << csv.str();
            else
                write_text(common.out, csv.str());
        } else if (*calibrate) {
            const std::string path = common.out.empty() ? common.constants : common.out;
            const auto record = qwalk::calibrate([](const std::string& line) { std::cout << line << "\n"; });
            std::filesystem::path p(path);
            if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
            write_text(path, qwalk::format_calibration(record));
            std::cout << "wrote " << path << " (hash " << record.constants.hash() << ")\n";
        } else if (*verify) {
            const auto constants = require_constants(common);
            qwalk::VerifyOptions options;
            options.seed = common.seed;
            options.trials = trials;
            options.constants = constants;
            if (!search_sizes.empty()) options.search_sizes = search_sizes;
            const auto results = qwalk::run_suite(suite, options);
            json list = json::array();
            bool ok = true;
            std::ostringstream summary;
            for (const auto& r : results) {
                ok = ok && r.passed;
                list.push_back(qwalk::to_json(r));
                summary << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << "  " << r.name << "\n";
            }
            status = ok ? 0 : 1;
            json params = {{"suite", suite}, {"trials", trials}, {"search_sizes", options.search_sizes}};
            const json doc = envelope("verify", params, common, constants, {{"criteria", list}, {"passed", ok}});
            if (common.out.empty()) {
                std::cout << doc.dump(2) << "\n";
            } else {
                write_text(common.out, doc.dump(2) + "\n");
                std::cout << summary.str();
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "qwalk: usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "qwalk: " << e.what() << "\n";
        return 3;
    }
    return status;
}
