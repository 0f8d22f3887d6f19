#include "qwalk/search.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qwalk/parallel.hpp"

namespace qwalk {

int max_exponent(Index n) {
    const auto total = static_cast<std::uint64_t>(n * n);
    int k = 0;
    while ((std::uint64_t{2} << k) <= total) ++k;
    return k;
}

Index block_steps(Index side, double c2) {
    const auto d = static_cast<double>(side);
    return static_cast<Index>(std::ceil(c2 * d * std::sqrt(std::max(1.0, std::log(d)))));
}

std::string SearchReport::verdict() const {
    if (!sample) return "probability";
    return sample->marked ? "found" : "unsuccessful search";
}

namespace {

struct BlockInstance {
    Block block;
    double weight = 0.0;
    std::vector<Index> local_marked;
    std::optional<WalkMatrix> walk;
};

std::vector<BlockInstance> block_instances(const PartitionLayout& layout, const MarkedSet& marked) {
    const Index n = layout.n();
    std::vector<BlockInstance> out;
    for (const Block& b : layout.blocks()) {
        BlockInstance inst;
        inst.block = b;
        inst.weight = static_cast<double>(b.size()) / static_cast<double>(n * n);
        out.push_back(std::move(inst));
    }
    for (Index m : marked.members()) {
        const Index r = m / n, c = m % n;
        auto& inst = out[static_cast<std::size_t>(layout.block_of(m))];
        inst.local_marked.push_back((r - inst.block.rows.begin) * inst.block.cols.size() + (c - inst.block.cols.begin));
    }
    for (auto& inst : out) {
        const auto size = static_cast<std::size_t>(inst.block.size());
        if (!inst.local_marked.empty() && inst.local_marked.size() < size)
            inst.walk = walk_from_graph(build_grid(inst.block.rows.size(), inst.block.cols.size()));
    }
    return out;
}

FindResult find_in_block(const BlockInstance& inst, double eps_tilde, Index steps) {
    return find_via_interpolation(*inst.walk, MarkedSet(inst.walk->dim(), inst.local_marked), eps_tilde, steps);
}

double block_success(const BlockInstance& inst, double eps_tilde, Index steps) {
    if (inst.local_marked.empty()) return 0.0;
    if (!inst.walk) return 1.0;
    return find_in_block(inst, eps_tilde, steps).success;
}

}  // namespace

SearchReport run_search(const SearchConfig& config) {
    const Index n = config.n;
    if (n < 2) throw std::invalid_argument("torus side must be at least 2");
    const WalkMatrix P = walk_from_graph(build_torus(n));
    const MarkedSet marked(P.dim(), config.marked);
    const int kmax = max_exponent(n);
    if (config.k && (*config.k < 1 || *config.k > kmax))
        throw std::invalid_argument("k must lie in [1, " + std::to_string(kmax) + "]");
    if (!(config.constants.c2 > 0.0)) throw std::invalid_argument("calibration constant c2 must be positive");

    SearchReport report;
    report.n = n;
    report.h_unique = unique_hitting_time(n);
    report.estimate = cap_estimate(P, marked, n);
    const auto h = static_cast<double>(std::max<Index>(1, report.estimate.h_tilde));
    report.d = std::min(n, 2 * static_cast<Index>(std::ceil(4.0 * std::sqrt(h))));
    report.layout = partition_torus(n, report.d);
    report.block_side = report.layout.min_side();
    report.steps_per_block = block_steps(report.block_side, config.constants.c2);

    const auto instances = block_instances(report.layout, marked);
    std::vector<int> ks;
    if (config.k)
        ks.push_back(*config.k);
    else
        for (int k = 1; k <= kmax; ++k) ks.push_back(k);

    const auto n_blocks = static_cast<std::ptrdiff_t>(instances.size());
    const auto n_ks = static_cast<std::ptrdiff_t>(ks.size());
    std::vector<double> success(static_cast<std::size_t>(n_blocks * n_ks), 0.0);
    parallel_for(n_blocks * n_ks, [&](std::ptrdiff_t job) {
        const auto& inst = instances[static_cast<std::size_t>(job % n_blocks)];
        const double eps_tilde = std::ldexp(1.0, -ks[static_cast<std::size_t>(job / n_blocks)]);
        success[static_cast<std::size_t>(job)] = block_success(inst, eps_tilde, report.steps_per_block);
    });

    for (std::ptrdiff_t i = 0; i < n_ks; ++i) {
        KOutcome out;
        out.k = ks[static_cast<std::size_t>(i)];
        out.eps_tilde = std::ldexp(1.0, -out.k);
        for (std::ptrdiff_t b = 0; b < n_blocks; ++b) {
            const double s = success[static_cast<std::size_t>(i * n_blocks + b)];
            out.block_success.push_back(s);
            out.success += instances[static_cast<std::size_t>(b)].weight * s;
        }
        out.success = std::clamp(out.success, 0.0, 1.0);
        if (out.success > report.best_success || report.per_k.empty()) {
            report.best_success = out.success;
            report.best_k = out.k;
        }
        report.uniform_success += out.success / static_cast<double>(n_ks);
        report.per_k.push_back(std::move(out));
    }

    const auto best = static_cast<std::size_t>(
        std::find_if(report.per_k.begin(), report.per_k.end(), [&](const KOutcome& o) { return o.k == report.best_k; }) -
        report.per_k.begin());
    for (std::ptrdiff_t b = 0; b < n_blocks; ++b) {
        const auto& inst = instances[static_cast<std::size_t>(b)];
        report.blocks.push_back({b, inst.block.rows, inst.block.cols, inst.weight,
                                 static_cast<Index>(inst.local_marked.size()),
                                 report.per_k[best].block_success[static_cast<std::size_t>(b)]});
    }

    report.ledger = report.estimate.ledger;
    report.ledger.charge_setup();
    report.ledger.charge_steps(report.steps_per_block);

    if (config.sample) {
        std::mt19937_64 engine(config.seed);
        SampleOutcome s;
        if (config.k) {
            s.k = *config.k;
        } else {
            std::uniform_int_distribution<int> pick(1, kmax);
            s.k = pick(engine);
        }
        std::vector<double> weights;
        for (const auto& inst : instances) weights.push_back(inst.weight);
        std::discrete_distribution<Index> pick_block(weights.begin(), weights.end());
        s.block = pick_block(engine);
        const auto& inst = instances[static_cast<std::size_t>(s.block)];
        const Index rows = inst.block.rows.size(), cols = inst.block.cols.size();
        Index local = 0;
        if (inst.walk) {
            const auto found = find_in_block(inst, std::ldexp(1.0, -s.k), report.steps_per_block);
            const Eigen::VectorXd& p = found.average_distribution;
            std::discrete_distribution<Index> pick_vertex(p.data(), p.data() + p.size());
            local = pick_vertex(engine);
        } else {
            std::uniform_int_distribution<Index> pick_vertex(0, rows * cols - 1);
            local = pick_vertex(engine);
        }
        s.vertex = (inst.block.rows.begin + local / cols) * n + inst.block.cols.begin + local % cols;
        s.marked = marked.contains(s.vertex);
        report.sample = s;
    }
    return report;
}

SearchReport run_k_sweep(const SearchConfig& config) {
    SearchConfig all = config;
    all.k.reset();
    SearchReport report = run_search(all);
    double miss = 1.0;
    for (const auto& o : report.per_k) miss *= 1.0 - o.success;
    report.sweep_success = 1.0 - miss;
    CostLedger ledger = report.estimate.ledger;
    const auto runs = static_cast<std::int64_t>(report.per_k.size());
    ledger.charge_setup(runs);
    ledger.charge_steps(runs * report.steps_per_block);
    report.sweep_ledger = ledger;
    return report;
}

nlohmann::json to_json(const SearchReport& r) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : r.blocks)
        blocks.push_back({{"block", b.block},
                          {"rows", {b.rows.begin, b.rows.end}},
                          {"cols", {b.cols.begin, b.cols.end}},
                          {"weight", b.weight},
                          {"marked", b.marked_count},
                          {"contains_marked", b.marked_count > 0},
                          {"success", b.success}});
    nlohmann::json per_k = nlohmann::json::array();
    for (const auto& o : r.per_k)
        per_k.push_back({{"k", o.k}, {"eps_tilde", o.eps_tilde}, {"success", o.success}});
    nlohmann::json layout = {{"n", r.layout.n()},
                             {"d", r.layout.d()},
                             {"q", r.layout.q()},
                             {"min_side", r.layout.min_side()},
                             {"max_side", r.layout.max_side()}};
    nlohmann::json j = {{"n", r.n},
                        {"h_unique", r.h_unique},
                        {"estimate", to_json(r.estimate)},
                        {"d", r.d},
                        {"layout", std::move(layout)},
                        {"block_side", r.block_side},
                        {"steps_per_block", r.steps_per_block},
                        {"blocks", std::move(blocks)},
                        {"per_k", std::move(per_k)},
                        {"best_k", r.best_k},
                        {"best_success", r.best_success},
                        {"uniform_success", r.uniform_success},
                        {"ledger", to_json(r.ledger)},
                        {"verdict", r.verdict()}};
    if (r.sweep_success) j["sweep_success"] = *r.sweep_success;
    if (r.sweep_ledger) j["sweep_ledger"] = to_json(*r.sweep_ledger);
    if (r.sample)
        j["sample"] = {{"k", r.sample->k},
                       {"block", r.sample->block},
                       {"vertex", r.sample->vertex},
                       {"marked", r.sample->marked}};
    return j;
}

double cost_scale(double h_eff, Index n_vertices, bool* h_branch) {
    const double h = std::max(1.0, h_eff);
    const auto n = static_cast<double>(n_vertices);
    const double via_h = std::sqrt(h * std::max(1.0, std::log(h)));
    const double via_n = std::sqrt(n * std::log(n));
    if (h_branch) *h_branch = via_h <= via_n;
    return std::min(via_h, via_n);
}

CostCheck verify_cost_bound(const SearchReport& report, double h_eff, double c3) {
    CostCheck out;
    out.steps = report.ledger.steps();
    out.bound = c3 * cost_scale(h_eff, report.n * report.n, &out.h_branch);
    out.ratio = static_cast<double>(out.steps) / out.bound;
    return out;
}

nlohmann::json to_json(const CostCheck& c) {
    return {{"steps", c.steps}, {"bound", c.bound}, {"ratio", c.ratio}, {"h_branch", c.h_branch}};
}

}  // namespace qwalk
