#include "qwalk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qwalk/graph.hpp"
#include "qwalk/instances.hpp"
#include "qwalk/locality.hpp"
#include "qwalk/parallel.hpp"
#include "qwalk/quantum.hpp"
#include "qwalk/search.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

namespace {

using json = nlohmann::json;

std::vector<Index> random_subset(Index n, Index size, std::mt19937_64& engine) {
    std::vector<Index> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), Index{0});
    for (Index i = 0; i < size; ++i) {
        std::uniform_int_distribution<Index> pick(i, n - 1);
        std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(pick(engine))]);
    }
    all.resize(static_cast<std::size_t>(size));
    return all;
}

Index uniform_index(Index lo, Index hi, std::mt19937_64& engine) {
    return std::uniform_int_distribution<Index>(lo, hi)(engine);
}

struct Band {
    double lo = 0.0;
    double hi = 0.0;
    double ratio() const { return hi / lo; }
};

Band band(const std::vector<double>& values) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return {*lo, *hi};
}

json band_json(const Band& b) { return {{"lo", b.lo}, {"hi", b.hi}, {"ratio", b.ratio()}}; }

WalkMatrix lattice_walk(GraphKind kind, Index n) {
    return walk_from_graph(kind == GraphKind::torus ? build_torus(n) : build_grid(n));
}

std::string lattice_name(GraphKind kind, Index n) { return std::string(to_string(kind)) + ":" + std::to_string(n); }

}  // namespace

json to_json(const CriterionResult& r) {
    return {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"measured", r.measured}};
}

WalkMatrix random_reversible_chain(Index n, std::mt19937_64& engine) {
    if (n < 2) throw std::invalid_argument("chain needs at least two states");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        const Index j = (i + 1) % n;
        const double ring = 0.5 + unit(engine);
        w(i, j) += ring;
        w(j, i) += ring;
        w(i, i) += 0.1 + unit(engine);
    }
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (unit(engine) < 0.3) {
                const double chord = unit(engine);
                w(i, j) += chord;
                w(j, i) += chord;
            }
    for (Index col = 0; col < n; ++col) w.col(col) /= w.col(col).sum();
    return WalkMatrix::from_dense(w);
}

CriterionResult verify_oracle(const VerifyOptions& options) {
    struct Instance {
        std::string name;
        WalkMatrix P;
        std::vector<Index> marked;
    };
    std::mt19937_64 engine(options.seed);
    std::vector<Instance> instances;
    for (int i = 0; i < 50; ++i) {
        const Index n = uniform_index(3, 32, engine);
        WalkMatrix P = random_reversible_chain(n, engine);
        auto m = random_subset(n, uniform_index(1, n / 2, engine), engine);
        instances.push_back({"chain:" + std::to_string(i) + " N=" + std::to_string(n), std::move(P), std::move(m)});
    }
    for (GraphKind kind : {GraphKind::torus, GraphKind::grid})
        for (Index n : {3, 4, 5, 8})
            for (int rep = 0; rep < 3; ++rep) {
                const Index total = n * n;
                auto m = random_subset(total, uniform_index(1, std::max<Index>(1, total / 4), engine), engine);
                instances.push_back({lattice_name(kind, n), lattice_walk(kind, n), std::move(m)});
            }

    std::vector<json> rows(instances.size());
    std::vector<char> ok(instances.size(), 0);
    parallel_for(static_cast<std::ptrdiff_t>(instances.size()), [&](std::ptrdiff_t i) {
        const auto& inst = instances[static_cast<std::size_t>(i)];
        const MarkedSet M(inst.P.dim(), inst.marked);
        const double spectral = hitting_time_spectral(inst.P, M, SpectralRoute::eigen);
        const double resolvent = hitting_time_spectral(inst.P, M, SpectralRoute::resolvent);
        const double linear = hitting_time_linear(inst.P, M);
        const double scale = std::max(1.0, spectral);
        const double err = std::abs(spectral - linear) / scale;
        const double err_resolvent = std::abs(resolvent - linear) / scale;
        ok[static_cast<std::size_t>(i)] = err <= 1e-6 && err_resolvent <= 1e-6;
        rows[static_cast<std::size_t>(i)] = {{"instance", inst.name},
                                             {"marked", inst.marked.size()},
                                             {"ht", spectral},
                                             {"ht_linear", linear},
                                             {"rel_error", err},
                                             {"rel_error_resolvent", err_resolvent}};
    });
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max({worst, r["rel_error"].get<double>(), r["rel_error_resolvent"].get<double>()});
    const bool passed = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
    return {1, "hitting time: spectral formula equals linear-solve oracle", passed,
            {{"instances", rows.size()}, {"tolerance", 1e-6}, {"max_rel_error", worst}, {"records", rows}}};
}

CriterionResult verify_extended(const VerifyOptions&) {
    struct Row {
        std::string name;
        double ht = 0.0, eht = 0.0, limit = 0.0;
        bool singleton = true;
    };
    std::vector<Row> rows = {{"torus:5 singleton"}, {"torus:9 singleton"}, {"torus:17 singleton"},
                             {"torus:8 half", 0, 0, 0, false}};
    const Index sides[] = {5, 9, 17, 8};
    parallel_for(static_cast<std::ptrdiff_t>(rows.size()), [&](std::ptrdiff_t i) {
        auto& row = rows[static_cast<std::size_t>(i)];
        const Index n = sides[i];
        const WalkMatrix P = walk_from_graph(build_torus(n));
        const MarkedSet M = row.singleton ? MarkedSet(P.dim(), {0}) : parse_marked("half", n, n);
        row.ht = hitting_time_spectral(P, M);
        row.eht = extended_hitting_time(P, M).value;
        row.limit = extended_hitting_time_limit(P, M).limit;
    });
    std::vector<double> ratios;
    json records = json::array();
    bool limits_ok = true;
    for (const auto& r : rows) {
        const double agreement = r.limit / r.eht;
        const bool within = agreement >= 0.1 && agreement <= 10.0;
        limits_ok = limits_ok && within;
        if (r.singleton) ratios.push_back(r.eht / r.ht);
        records.push_back({{"instance", r.name},
                           {"ht", r.ht},
                           {"eht", r.eht},
                           {"eht_over_ht", r.eht / r.ht},
                           {"limit", r.limit},
                           {"limit_over_eht", agreement},
                           {"limit_within_factor_10", within}});
    }
    const Band b = band(ratios);
    return {2, "extended hitting time: singleton ratio band and interpolation limit", b.ratio() <= 4.0 && limits_ok,
            {{"ratio_band", band_json(b)}, {"band_limit", 4.0}, {"records", records}}};
}

CriterionResult verify_theorems(const VerifyOptions& options) {
    struct Instance {
        std::string name;
        WalkMatrix P;
        std::vector<std::vector<Index>> parts;
    };
    std::mt19937_64 engine(options.seed ^ 0x5eedULL);
    std::vector<Instance> instances;
    for (int i = 0; i < 200; ++i) {
        std::string name;
        WalkMatrix P = [&] {
            if (i % 2 == 0) {
                const Index n = uniform_index(4, 32, engine);
                name = "chain:" + std::to_string(i) + " N=" + std::to_string(n);
                return random_reversible_chain(n, engine);
            }
            const auto kind = (i % 4 == 1) ? GraphKind::torus : GraphKind::grid;
            const Index n = uniform_index(3, 6, engine);
            name = lattice_name(kind, n);
            return lattice_walk(kind, n);
        }();
        const Index total = P.dim();
        const Index size = uniform_index(2, std::min<Index>(total - 1, 12), engine);
        const auto members = random_subset(total, size, engine);
        const Index n_parts = uniform_index(2, std::min<Index>(4, size), engine);
        std::vector<std::vector<Index>> parts(static_cast<std::size_t>(n_parts));
        for (Index j = 0; j < size; ++j) {
            const Index part = j < n_parts ? j : uniform_index(0, n_parts - 1, engine);
            parts[static_cast<std::size_t>(part)].push_back(members[static_cast<std::size_t>(j)]);
        }
        instances.push_back({std::move(name), std::move(P), std::move(parts)});
    }

    struct Outcome {
        double average_slack = 0.0, maximum_slack = 0.0, subadd_slack = 0.0;
    };
    std::vector<Outcome> outcomes(instances.size());
    parallel_for(static_cast<std::ptrdiff_t>(instances.size()), [&](std::ptrdiff_t i) {
        const auto& inst = instances[static_cast<std::size_t>(i)];
        const auto pi = stationary(inst.P);
        const auto spectrum = decompose(discriminant(inst.P));
        auto escape = [&](const std::vector<Index>& s) { return escape_time(spectrum, subset_state(pi, s)); };
        auto mass = [&](const std::vector<Index>& s) {
            double e = 0.0;
            for (Index x : s) e += pi[x];
            return e;
        };
        std::vector<Index> all;
        for (const auto& p : inst.parts) all.insert(all.end(), p.begin(), p.end());
        const double eps = mass(all);
        const double lhs = escape(all) / eps;

        double weighted = 0.0;
        for (const auto& p : inst.parts) weighted += (mass(p) / eps) * (escape(p) / mass(p));
        double single_max = 0.0;
        for (Index m : all) single_max = std::max(single_max, escape({m}) / pi[m]);
        std::vector<Index> pair = inst.parts[0];
        pair.insert(pair.end(), inst.parts[1].begin(), inst.parts[1].end());

        auto& out = outcomes[static_cast<std::size_t>(i)];
        out.average_slack = weighted + 1e-9 - lhs;
        out.maximum_slack = single_max + 1e-9 - lhs;
        out.subadd_slack = escape(inst.parts[0]) + escape(inst.parts[1]) + 1e-9 - escape(pair);
    });

    int average_fail = 0, maximum_fail = 0, subadd_fail = 0;
    double min_average = INFINITY, min_maximum = INFINITY, min_subadd = INFINITY;
    for (const auto& o : outcomes) {
        average_fail += o.average_slack < 0.0;
        maximum_fail += o.maximum_slack < 0.0;
        subadd_fail += o.subadd_slack < 0.0;
        min_average = std::min(min_average, o.average_slack);
        min_maximum = std::min(min_maximum, o.maximum_slack);
        min_subadd = std::min(min_subadd, o.subadd_slack);
    }
    return {3, "escape-time inequalities: partition average, singleton maximum, subadditivity",
            average_fail + maximum_fail + subadd_fail == 0,
            {{"instances", instances.size()},
             {"violations", {{"partition_average", average_fail}, {"singleton_maximum", maximum_fail}, {"subadditivity", subadd_fail}}},
             {"min_slack", {{"partition_average", min_average}, {"singleton_maximum", min_maximum}, {"subadditivity", min_subadd}}}}};
}

CriterionResult verify_escape(const VerifyOptions&) {
    const std::vector<Index> sides = {4, 8, 16, 32};
    const auto count = static_cast<std::ptrdiff_t>(sides.size());
    std::vector<double> torus(sides.size()), grid(sides.size()), unique(sides.size());
    parallel_for(3 * count, [&](std::ptrdiff_t job) {
        const auto i = static_cast<std::size_t>(job % count);
        const Index n = sides[i];
        const double n_states = static_cast<double>(n * n);
        const double log_n = std::log(n_states);
        if (job < count) {
            const WalkMatrix P = walk_from_graph(build_torus(n));
            torus[i] = escape_time_subset(P, std::vector<Index>{0}) / log_n;
        } else if (job < 2 * count) {
            const WalkMatrix P = walk_from_graph(build_grid(n));
            grid[i] = escape_time_subset(P, std::vector<Index>{0}) / log_n;
        } else {
            unique[i] = static_cast<double>(unique_hitting_time(n)) / (n_states * log_n);
        }
    });
    const Band bt = band(torus), bg = band(grid), bu = band(unique);
    const bool passed = bt.ratio() <= 3.0 && bg.ratio() <= 3.0 && bu.ratio() <= 3.0;
    return {4, "singleton escape time grows like log N; unique hitting time like N log N", passed,
            {{"sides", sides},
             {"torus_escape_over_lnN", torus},
             {"grid_escape_over_lnN", grid},
             {"h_unique_over_NlnN", unique},
             {"torus_band", band_json(bt)},
             {"grid_band", band_json(bg)},
             {"h_unique_band", band_json(bu)},
             {"band_limit", 3.0}}};
}

CriterionResult verify_localization(const VerifyOptions& options) {
    const Index steps[] = {25, 100, 400};
    std::vector<LocalityReport> reports;
    bool passed = true;
    json records = json::array();
    std::uint64_t seed = options.seed;
    for (LatticeKind kind : {LatticeKind::line, LatticeKind::grid}) {
        const double target = kind == LatticeKind::line ? 1.0 - 1.0 / 745.0 : 1.0 - 2.0 / 745.0;
        for (Index t : steps) {
            const auto r = kind == LatticeKind::line ? line_localization(t, options.trials, seed)
                                                     : grid_localization(t, options.trials, seed);
            ++seed;
            const double tail = static_cast<double>(r.endpoint_escapes) / static_cast<double>(r.trials);
            const double k = static_cast<double>(r.threshold);
            const double dims = kind == LatticeKind::line ? 1.0 : 2.0;
            const double azuma = dims * 2.0 * std::exp(-k * k / (2.0 * static_cast<double>(t)));
            const double sigma = std::sqrt(std::max(tail * (1.0 - tail), 1.0 / static_cast<double>(r.trials)) /
                                           static_cast<double>(r.trials));
            const bool ok = r.wilson.low >= target && tail <= azuma + 3.0 * sigma;
            passed = passed && ok;
            json j = to_json(r);
            j["target"] = target;
            j["endpoint_tail"] = tail;
            j["azuma_bound"] = azuma;
            j["passed"] = ok;
            records.push_back(std::move(j));
        }
    }
    return {5, "walk localization within ceil(4 sqrt T) on the line and the grid", passed, {{"records", records}}};
}

CriterionResult verify_coverage(const VerifyOptions& options) {
    struct Candidate {
        Index n;
        Index steps;
        std::string marked;
    };
    std::vector<Candidate> candidates = {{32, 16, "row"}};
    std::mt19937_64 engine(options.seed ^ 0xc0feULL);
    const Index sides[] = {32, 48, 64};
    const Index walk_steps[] = {1, 2, 4, 9};
    for (int i = 0; i < 80; ++i) {
        const Index n = sides[uniform_index(0, 2, engine)];
        const Index t = walk_steps[uniform_index(0, 3, engine)];
        const Index r = uniform_index(0, n - 1, engine), c = uniform_index(0, n - 1, engine);
        std::string marked;
        switch (i % 4) {
            case 0: marked = "rows:" + std::to_string(r); break;
            case 1: marked = "cols:" + std::to_string(c) + "," + std::to_string((c + n / 2) % n); break;
            case 2: {
                // 3 x 3 cluster
                for (Index dr = 0; dr < 3; ++dr)
                    for (Index dc = 0; dc < 3; ++dc)
                        marked += (marked.empty() ? "cells:(" : ";(") + std::to_string((r + dr) % n) + "," +
                                  std::to_string((c + dc) % n) + ")";
                break;
            }
            default:
                marked = "random:" + std::to_string(uniform_index(4, 24, engine)) + ":" + std::to_string(engine() % 100000);
        }
        candidates.push_back({n, t, std::move(marked)});
    }

    constexpr double p_min = 1.0 / 74.0;
    constexpr std::size_t wanted = 20;
    json records = json::array();
    json skipped = json::array();
    bool passed = true;
    std::size_t accepted = 0;
    std::uint64_t seed = options.seed;
    for (const auto& c : candidates) {
        if (accepted == wanted) break;
        const MarkedSet M = parse_marked(c.marked, c.n, c.n);
        const auto r = subgrid_coverage(c.n, M, c.steps, options.trials, seed++);
        json j = to_json(r);
        j["marked"] = c.marked;
        if (r.p_hat < p_min) {
            skipped.push_back({{"n", c.n}, {"T", c.steps}, {"marked", c.marked}, {"p_hat", r.p_hat}});
            continue;
        }
        ++accepted;
        const double s_hat = r.sigma(r.p_hat), s_ml = r.sigma(r.p_ml), s_gl = r.sigma(r.p_gl);
        const bool main = r.p_g >= r.p_hat / 5.0 - 3.0 * s_hat;
        const bool chain1 = r.p_hat - 2.0 / 745.0 <= r.p_ml + 3.0 * std::max(s_hat, s_ml);
        const bool chain2 = r.p_ml <= r.p_gl + 3.0 * std::max(s_ml, s_gl);
        const bool chain3 = r.p_gl <= 4.0 * r.p_g + 3.0 * s_gl;
        j["p_g_bound"] = main;
        j["chain"] = {chain1, chain2, chain3};
        passed = passed && main && chain1 && chain2 && chain3;
        records.push_back(std::move(j));
    }
    passed = passed && accepted == wanted;
    return {6, "marked sub-grid mass versus walk hitting probability", passed,
            {{"accepted", accepted}, {"records", records}, {"skipped_low_p", skipped}}};
}

CriterionResult verify_finding(const VerifyOptions& options) {
    struct Instance {
        Index n;
        std::string marked;
    };
    const std::vector<Instance> instances = {{4, "singleton"},
                                             {5, "singleton"},
                                             {8, "singleton"},
                                             {8, "cells:(0,0);(4,4)"},
                                             {8, "cells:(0,0);(0,1);(5,3)"},
                                             {8, "cells:(1,1);(1,6);(6,1);(6,6)"}};
    const double ratios[] = {2.0 / 3.0, 1.0, 4.0 / 3.0};
    const auto n_inst = static_cast<std::ptrdiff_t>(instances.size());
    std::vector<json> rows(static_cast<std::size_t>(3 * n_inst));
    std::vector<char> ok(rows.size(), 0);
    parallel_for(3 * n_inst, [&](std::ptrdiff_t job) {
        const auto& inst = instances[static_cast<std::size_t>(job / 3)];
        const double ratio = ratios[job % 3];
        const WalkMatrix P = walk_from_graph(build_torus(inst.n));
        const MarkedSet M = parse_marked(inst.marked, inst.n, inst.n);
        const double eht = extended_hitting_time(P, M).value;
        const Index steps = std::max<Index>(1, static_cast<Index>(std::ceil(options.constants.c2 * std::sqrt(eht))));
        const double eps = ratio * M.mass(stationary(P));
        const auto found = find_via_interpolation(P, M, eps, steps);
        ok[static_cast<std::size_t>(job)] = found.success >= 0.2;
        rows[static_cast<std::size_t>(job)] = {{"instance", "torus:" + std::to_string(inst.n) + " " + inst.marked},
                                               {"eps_ratio", ratio},
                                               {"eht", eht},
                                               {"T", steps},
                                               {"s", found.s},
                                               {"success", found.success}};
    });
    double worst = 1.0;
    for (const auto& r : rows) worst = std::min(worst, r["success"].get<double>());
    const bool passed = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
    return {7, "interpolated walk finds a marked vertex with probability at least 1/5", passed,
            {{"c2", options.constants.c2}, {"min_success", worst}, {"records", rows}}};
}

std::vector<CriterionResult> verify_search(const VerifyOptions& options) {
    const std::vector<std::string> families = {"singleton", "row", "clusters", "half", "halfcheck"};
    struct Job {
        Index n;
        std::string family;
        SearchReport report;
        double h_eff = 0.0;
    };
    std::vector<Job> jobs;
    for (Index n : options.search_sizes)
        for (const auto& f : families) jobs.push_back({n, f, {}, 0.0});
    parallel_for(static_cast<std::ptrdiff_t>(jobs.size()), [&](std::ptrdiff_t i) {
        auto& job = jobs[static_cast<std::size_t>(i)];
        const WalkMatrix P = walk_from_graph(build_torus(job.n));
        const MarkedSet M = parse_marked(job.family, job.n, job.n);
        SearchConfig config;
        config.n = job.n;
        config.marked.assign(M.members().begin(), M.members().end());
        config.seed = options.seed;
        config.constants = options.constants;
        job.report = run_search(config);
        job.h_eff = static_cast<double>(effective_hitting_time(P, M));
    });

    bool search_ok = true, cost_ok = true;
    json search_rows = json::array(), cost_rows = json::array();
    for (const auto& job : jobs) {
        const auto& r = job.report;
        const double floor_uniform = (1.0 / 50.0) / static_cast<double>(max_exponent(job.n));
        double mixture_error = 0.0;
        for (const auto& k : r.per_k) {
            double total = 0.0;
            for (std::size_t b = 0; b < r.blocks.size(); ++b) total += r.blocks[b].weight * k.block_success[b];
            mixture_error = std::max(mixture_error, std::abs(total - k.success));
        }
        const bool ok = r.best_success >= 1.0 / 50.0 && r.uniform_success >= floor_uniform && mixture_error <= 1e-12;
        search_ok = search_ok && ok;
        const std::string name = "torus:" + std::to_string(job.n) + " " + job.family;
        search_rows.push_back({{"instance", name},
                               {"h_tilde", r.estimate.h_tilde},
                               {"capped", r.estimate.capped},
                               {"d", r.d},
                               {"blocks", r.blocks.size()},
                               {"block_side", r.block_side},
                               {"T", r.steps_per_block},
                               {"best_k", r.best_k},
                               {"best_success", r.best_success},
                               {"uniform_success", r.uniform_success},
                               {"uniform_floor", floor_uniform},
                               {"mixture_error", mixture_error},
                               {"passed", ok}});
        const CostCheck check = verify_cost_bound(r, job.h_eff, options.constants.c3);
        cost_ok = cost_ok && check.ratio <= 1.0;
        json c = to_json(check);
        c["instance"] = name;
        c["h_eff"] = job.h_eff;
        cost_rows.push_back(std::move(c));
    }

    // Separation: steps / sqrt(HT+) on halfcheck, and the contiguous half for reference.
    struct Sep {
        Index n;
        std::string family;
        std::int64_t steps = 0;
        double eht = 0.0;
    };
    std::vector<Sep> seps;
    for (Index n : options.separation_sizes)
        for (const char* f : {"halfcheck", "half"}) seps.push_back({n, f});
    parallel_for(static_cast<std::ptrdiff_t>(seps.size()), [&](std::ptrdiff_t i) {
        auto& s = seps[static_cast<std::size_t>(i)];
        const WalkMatrix P = walk_from_graph(build_torus(s.n));
        const MarkedSet M = parse_marked(s.family, s.n, s.n);
        SearchConfig config;
        config.n = s.n;
        config.marked.assign(M.members().begin(), M.members().end());
        config.seed = options.seed;
        config.constants = options.constants;
        s.steps = run_search(config).ledger.steps();
        s.eht = extended_hitting_time(P, M).value;
    });
    json sep_rows = json::array(), ref_rows = json::array();
    bool decreasing = true;
    double previous = INFINITY;
    for (const auto& s : seps) {
        const double ratio = static_cast<double>(s.steps) / std::sqrt(s.eht);
        json row = {{"n", s.n}, {"steps", s.steps}, {"eht", s.eht}, {"steps_over_sqrt_eht", ratio}};
        if (s.family == "halfcheck") {
            decreasing = decreasing && ratio < previous;
            previous = ratio;
            sep_rows.push_back(std::move(row));
        } else {
            ref_rows.push_back(std::move(row));
        }
    }

    CriterionResult c8{8, "end-to-end search: best-k success at least 1/50", search_ok, {{"records", search_rows}}};
    CriterionResult c9{9, "search cost within c3 min{sqrt(H ln H), sqrt(N ln N)}; sub-sqrt(HT+) on halfcheck",
                       cost_ok && decreasing,
                       {{"c3", options.constants.c3},
                        {"records", cost_rows},
                        {"separation_halfcheck", sep_rows},
                        {"separation_decreasing", decreasing},
                        {"reference_half", ref_rows}}};
    return {std::move(c8), std::move(c9)};
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"oracle", "extended", "theorems", "escape",
                                                   "locality", "finding", "search", "all"};
    return names;
}

std::vector<CriterionResult> run_suite(const std::string& name, const VerifyOptions& options) {
    std::vector<CriterionResult> out;
    const bool all = name == "all";
    if (all || name == "oracle") out.push_back(verify_oracle(options));
    if (all || name == "extended") out.push_back(verify_extended(options));
    if (all || name == "theorems") out.push_back(verify_theorems(options));
    if (all || name == "escape") out.push_back(verify_escape(options));
    if (all || name == "locality") {
        out.push_back(verify_localization(options));
        out.push_back(verify_coverage(options));
    }
    if (all || name == "finding") out.push_back(verify_finding(options));
    if (all || name == "search")
        for (auto& r : verify_search(options)) out.push_back(std::move(r));
    if (out.empty()) throw std::invalid_argument("unknown verify suite '" + name + "'");
    return out;
}

}  // namespace qwalk
