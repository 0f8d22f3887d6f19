#include "qwalk/locality.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qwalk/parallel.hpp"

namespace qwalk {

namespace {

class BitSource {
public:
    explicit BitSource(std::mt19937_64& engine) : engine_(engine) {}

    unsigned bit() {
        if (left_ == 0) {
            word_ = engine_();
            left_ = 64;
        }
        const auto b = static_cast<unsigned>(word_ & 1u);
        word_ >>= 1;
        --left_;
        return b;
    }

private:
    std::mt19937_64& engine_;
    std::uint64_t word_ = 0;
    int left_ = 0;
};

std::mt19937_64 chunk_engine(std::uint64_t seed, std::int64_t chunk) {
    const auto lo = static_cast<std::uint32_t>(seed);
    const auto hi = static_cast<std::uint32_t>(seed >> 32);
    std::seed_seq seq{lo, hi, static_cast<std::uint32_t>(chunk)};
    return std::mt19937_64(seq);
}

std::int64_t chunk_count(std::int64_t trials) { return (trials + kTrialChunk - 1) / kTrialChunk; }

std::int64_t chunk_size(std::int64_t trials, std::int64_t chunk) {
    return std::min(kTrialChunk, trials - chunk * kTrialChunk);
}

void move(LatticeKind kind, BitSource& bits, Index& x, Index& y) {
    if (kind == LatticeKind::line) {
        x += bits.bit() ? 1 : -1;
        return;
    }
    const unsigned axis = bits.bit();
    const Index delta = bits.bit() ? 1 : -1;
    (axis ? y : x) += delta;
}

struct LocalityCounts {
    std::int64_t localized = 0;
    std::int64_t escapes = 0;
};

LocalityReport localization(LatticeKind kind, Index steps, std::int64_t trials, std::uint64_t seed) {
    if (steps < 0) throw std::invalid_argument("step count must be non-negative");
    if (trials <= 0) throw std::invalid_argument("trial count must be positive");
    const Index k = localization_threshold(steps);
    const auto chunks = chunk_count(trials);
    std::vector<LocalityCounts> counts(static_cast<std::size_t>(chunks));

    parallel_for(chunks, [&](std::ptrdiff_t chunk) {
        auto engine = chunk_engine(seed, chunk);
        BitSource bits(engine);
        LocalityCounts c;
        for (std::int64_t i = 0; i < chunk_size(trials, chunk); ++i) {
            Index x = 0, y = 0, reach = 0;
            for (Index t = 0; t < steps; ++t) {
                move(kind, bits, x, y);
                reach = std::max({reach, x < 0 ? -x : x, y < 0 ? -y : y});
            }
            if (reach <= k) ++c.localized;
            if (std::max(std::abs(x), std::abs(y)) > k) ++c.escapes;
        }
        counts[static_cast<std::size_t>(chunk)] = c;
    });

    LocalityReport r;
    r.kind = kind;
    r.steps = steps;
    r.trials = trials;
    r.threshold = k;
    r.seed = seed;
    for (const auto& c : counts) {
        r.localized += c.localized;
        r.endpoint_escapes += c.escapes;
    }
    r.fraction = static_cast<double>(r.localized) / static_cast<double>(trials);
    r.wilson = wilson_interval(r.localized, trials);
    return r;
}

}  // namespace

Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
    if (trials <= 0 || successes < 0 || successes > trials)
        throw std::invalid_argument("invalid binomial counts");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    const double half = z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

Index localization_threshold(Index steps) {
    return static_cast<Index>(std::ceil(4.0 * std::sqrt(static_cast<double>(steps))));
}

WalkTrajectory sample_walk(const WalkMatrix& P, Index start, Index steps, std::uint64_t seed) {
    if (start < 0 || start >= P.dim()) throw std::invalid_argument("start state out of range");
    if (steps < 0) throw std::invalid_argument("step count must be non-negative");
    auto engine = chunk_engine(seed, 0);
    WalkTrajectory out;
    out.start = start;
    out.states.reserve(static_cast<std::size_t>(steps));
    Index x = start;
    for (Index t = 0; t < steps; ++t) {
        const double u = std::generate_canonical<double, 64>(engine);
        double acc = 0.0;
        Index next = -1;
        for (SparseMatrix::InnerIterator it(P.sparse(), x); it; ++it) {
            next = it.row();
            acc += it.value();
            if (u < acc) break;
        }
        x = next;
        out.states.push_back(x);
    }
    return out;
}

LatticePath sample_lattice_walk(LatticeKind kind, Index steps, std::uint64_t seed) {
    if (steps < 0) throw std::invalid_argument("step count must be non-negative");
    auto engine = chunk_engine(seed, 0);
    BitSource bits(engine);
    LatticePath out;
    out.positions.reserve(static_cast<std::size_t>(steps + 1));
    out.positions.push_back({0, 0});
    Index x = 0, y = 0;
    for (Index t = 0; t < steps; ++t) {
        move(kind, bits, x, y);
        out.positions.push_back({x, y});
        out.max_displacement.row = std::max(out.max_displacement.row, std::abs(x));
        out.max_displacement.col = std::max(out.max_displacement.col, std::abs(y));
    }
    return out;
}

LocalityReport line_localization(Index steps, std::int64_t trials, std::uint64_t seed) {
    return localization(LatticeKind::line, steps, trials, seed);
}

LocalityReport grid_localization(Index steps, std::int64_t trials, std::uint64_t seed) {
    return localization(LatticeKind::grid, steps, trials, seed);
}

nlohmann::json to_json(const LocalityReport& r) {
    return {{"kind", r.kind == LatticeKind::line ? "line" : "grid"},
            {"T", r.steps},
            {"trials", r.trials},
            {"threshold", r.threshold},
            {"localized", r.localized},
            {"endpoint_escapes", r.endpoint_escapes},
            {"fraction", r.fraction},
            {"wilson_low", r.wilson.low},
            {"wilson_high", r.wilson.high},
            {"seed", r.seed}};
}

double CoverageReport::sigma(double p) const {
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials));
}

CoverageReport subgrid_coverage(Index n, const MarkedSet& marked, Index steps, std::int64_t trials,
                                std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("torus side must be at least 2");
    if (marked.n_states() != n * n) throw std::invalid_argument("marked set does not match the torus");
    if (steps < 0) throw std::invalid_argument("step count must be non-negative");
    if (trials <= 0) throw std::invalid_argument("trial count must be positive");

    CoverageReport r;
    r.n = n;
    r.steps = steps;
    r.threshold = localization_threshold(steps);
    r.d = std::min(n, 2 * r.threshold);
    r.trials = trials;
    r.seed = seed;

    const PartitionLayout layout = partition_torus(n, r.d);
    const auto blocks = layout.blocks();
    std::vector<char> block_marked(blocks.size(), 0);
    for (Index m : marked.members()) block_marked[static_cast<std::size_t>(layout.block_of(m))] = 1;
    const double total = static_cast<double>(n * n);
    r.blocks = static_cast<Index>(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (!block_marked[b]) continue;
        ++r.marked_blocks;
        r.p_g += static_cast<double>(blocks[b].size()) / total;
    }

    struct Counts {
        std::int64_t hits = 0, localized_hits = 0, localized_block_hits = 0;
    };
    const auto chunks = chunk_count(trials);
    std::vector<Counts> counts(static_cast<std::size_t>(chunks));
    parallel_for(chunks, [&](std::ptrdiff_t chunk) {
        auto engine = chunk_engine(seed, chunk);
        std::uniform_int_distribution<Index> start_dist(0, n * n - 1);
        Counts c;
        for (std::int64_t i = 0; i < chunk_size(trials, chunk); ++i) {
            const Index start = start_dist(engine);
            BitSource bits(engine);
            const Index r0 = start / n, c0 = start % n;
            Index dr = 0, dc = 0, reach = 0;
            auto vertex = [&] { return ((r0 + dr) % n + n) % n * n + ((c0 + dc) % n + n) % n; };
            bool hit = marked.contains(start);
            bool block_hit = block_marked[static_cast<std::size_t>(layout.block_of(start))] != 0;
            for (Index t = 0; t < steps; ++t) {
                move(LatticeKind::grid, bits, dr, dc);
                reach = std::max({reach, std::abs(dr), std::abs(dc)});
                const Index v = vertex();
                hit = hit || marked.contains(v);
                block_hit = block_hit || block_marked[static_cast<std::size_t>(layout.block_of(v))] != 0;
            }
            const bool localized = reach <= r.threshold;
            c.hits += hit;
            c.localized_hits += hit && localized;
            c.localized_block_hits += block_hit && localized;
        }
        counts[static_cast<std::size_t>(chunk)] = c;
    });
    for (const auto& c : counts) {
        r.hits += c.hits;
        r.localized_hits += c.localized_hits;
        r.localized_block_hits += c.localized_block_hits;
    }
    const auto t = static_cast<double>(trials);
    r.p_hat = static_cast<double>(r.hits) / t;
    r.p_ml = static_cast<double>(r.localized_hits) / t;
    r.p_gl = static_cast<double>(r.localized_block_hits) / t;
    return r;
}

nlohmann::json to_json(const CoverageReport& r) {
    return {{"n", r.n},
            {"T", r.steps},
            {"threshold", r.threshold},
            {"d", r.d},
            {"trials", r.trials},
            {"seed", r.seed},
            {"hits", r.hits},
            {"localized_hits", r.localized_hits},
            {"localized_block_hits", r.localized_block_hits},
            {"p_hat", r.p_hat},
            {"p_ml", r.p_ml},
            {"p_gl", r.p_gl},
            {"p_g", r.p_g},
            {"sigma_p_hat", r.sigma(r.p_hat)},
            {"blocks", r.blocks},
            {"marked_blocks", r.marked_blocks}};
}

}  // namespace qwalk
