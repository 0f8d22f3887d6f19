#include "qwalk/calibration.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qwalk/graph.hpp"
#include "qwalk/instances.hpp"
#include "qwalk/markov.hpp"
#include "qwalk/parallel.hpp"
#include "qwalk/quantum.hpp"
#include "qwalk/search.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

namespace {

constexpr double kGrid = 0.05;
constexpr int kMaxGridSteps = 200;  // constants up to 10
constexpr double kDetectionOverlap = 0.9;
constexpr double kFindSuccess = 0.2;
constexpr double kCostMargin = 1.25;
constexpr Index kSweepLo = 4;
constexpr Index kSweepHi = 16;

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("cannot format constant");
    return std::string(buf, ptr);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double grid_value(int j) { return static_cast<double>(j) / (1.0 / kGrid); }

int grid_ceil(double v) { return static_cast<int>(std::ceil(v / kGrid - 1e-9)); }

Index steps_for(double c, double scale) { return std::max<Index>(1, static_cast<Index>(std::ceil(c * scale))); }

struct Curve {
    std::string name;
    double scale = 0.0;
    std::vector<double> values;  // indexed by step count (entry 0 is T = 0 or T = 1, see callers)
};

}  // namespace

std::string Calibration::canonical() const {
    return "c = " + format_double(c) + "\nc2 = " + format_double(c2) + "\nc3 = " + format_double(c3) + "\n";
}

std::string Calibration::hash() const {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : canonical()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

nlohmann::json to_json(const Calibration& k) {
    return {{"c", k.c}, {"c2", k.c2}, {"c3", k.c3}, {"hash", k.hash()}};
}

std::filesystem::path default_calibration_path() {
    if (const char* env = std::getenv("QWALK_CONSTANTS"); env && *env) return env;
    return std::filesystem::path("config") / "calibration.conf";
}

Calibration parse_calibration(const std::string& text) {
    std::map<std::string, double> values;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("calibration line " + std::to_string(number) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string raw = trim(line.substr(eq + 1));
        if (key != "c" && key != "c2" && key != "c3")
            throw std::invalid_argument("calibration line " + std::to_string(number) + ": unknown key '" + key + "'");
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (ec != std::errc() || ptr != raw.data() + raw.size() || !std::isfinite(v) || v <= 0.0)
            throw std::invalid_argument("calibration line " + std::to_string(number) + ": '" + raw +
                                        "' is not a positive number");
        if (!values.emplace(key, v).second)
            throw std::invalid_argument("calibration key '" + key + "' repeated");
    }
    for (const char* key : {"c", "c2", "c3"})
        if (!values.count(key)) throw std::invalid_argument(std::string("calibration key '") + key + "' missing");
    return {values["c"], values["c2"], values["c3"]};
}

Calibration load_calibration(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read calibration file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_calibration(buffer.str());
}

namespace {

// Smallest grid value c such that every curve passes at ceil(c * scale).
template <class Pass>
std::pair<int, std::string> smallest_passing(const std::vector<Curve>& curves, Pass&& pass, Index offset) {
    for (int j = 1; j <= kMaxGridSteps; ++j) {
        const double c = grid_value(j);
        bool ok = true;
        for (const auto& curve : curves) {
            const Index t = steps_for(c, curve.scale) - offset;
            if (t >= static_cast<Index>(curve.values.size()))
                throw NumericalError("calibration curve too short for " + curve.name);
            if (!pass(curve.values[static_cast<std::size_t>(t)])) {
                ok = false;
                break;
            }
        }
        if (ok) {
            // Report the instance with the least slack at the chosen value.
            std::string binding;
            if (j > 1) {
                const double below = grid_value(j - 1);
                for (const auto& curve : curves) {
                    const Index t = steps_for(below, curve.scale) - offset;
                    if (!pass(curve.values[static_cast<std::size_t>(t)])) {
                        binding = curve.name;
                        break;
                    }
                }
            }
            return {j, binding};
        }
    }
    std::string worst;
    for (const auto& curve : curves) {
        const Index t = steps_for(grid_value(kMaxGridSteps), curve.scale) - offset;
        if (!pass(curve.values[static_cast<std::size_t>(t)])) {
            worst = curve.name;
            break;
        }
    }
    throw NumericalError("calibration sweep failed: no constant up to " +
                         format_double(grid_value(kMaxGridSteps)) + " passes " + worst);
}

Index curve_length(double scale) { return steps_for(grid_value(kMaxGridSteps), scale) + 1; }

}  // namespace

CalibrationRecord calibrate(const std::function<void(const std::string&)>& progress) {
    auto say = [&](const std::string& s) {
        if (progress) progress(s);
    };
    CalibrationRecord record;

    // Detection: singleton tori, overlap at most 0.9 after ceil(c sqrt(HT_eff)) steps.
    std::vector<Curve> detection;
    for (Index n = kSweepLo; n <= kSweepHi; ++n) detection.push_back({"torus:" + std::to_string(n), 0.0, {}});
    parallel_for(static_cast<std::ptrdiff_t>(detection.size()), [&](std::ptrdiff_t i) {
        const Index n = kSweepLo + i;
        const WalkMatrix P = walk_from_graph(build_torus(n));
        const MarkedSet M(P.dim(), {0});
        auto& curve = detection[static_cast<std::size_t>(i)];
        curve.scale = std::sqrt(static_cast<double>(effective_hitting_time(P, M)));
        curve.values = detection_overlap_curve(P, M, curve_length(curve.scale));
    });
    const auto [jc, bind_c] =
        smallest_passing(detection, [](double overlap) { return overlap <= kDetectionOverlap; }, 0);
    record.constants.c = grid_value(jc);
    say("c = " + format_double(record.constants.c));

    // Finding: singleton tori with T = ceil(c2 sqrt(HT+)) and singleton grids
    // (corner and centre) with T = ceil(c2 D sqrt(max(1, ln D))), each at
    // estimates 2/3, 1 and 4/3 of the true marked mass.
    struct FindInstance {
        std::string name;
        WalkMatrix P;
        Index marked;
        double eps_ratio;
        bool torus;
        Index side;
    };
    std::vector<FindInstance> find;
    const double ratios[] = {2.0 / 3.0, 1.0, 4.0 / 3.0};
    const char* ratio_names[] = {"2/3", "1", "4/3"};
    for (Index n = kSweepLo; n <= kSweepHi; ++n) {
        const WalkMatrix torus = walk_from_graph(build_torus(n));
        const WalkMatrix grid = walk_from_graph(build_grid(n));
        for (int r = 0; r < 3; ++r) {
            const std::string tag = " eps x " + std::string(ratio_names[r]);
            find.push_back({"torus:" + std::to_string(n) + " singleton" + tag, torus, 0, ratios[r], true, n});
            find.push_back({"grid:" + std::to_string(n) + " corner" + tag, grid, 0, ratios[r], false, n});
            find.push_back(
                {"grid:" + std::to_string(n) + " centre" + tag, grid, (n / 2) * n + n / 2, ratios[r], false, n});
        }
    }
    std::vector<Curve> finding(find.size());
    parallel_for(static_cast<std::ptrdiff_t>(find.size()), [&](std::ptrdiff_t i) {
        const auto& inst = find[static_cast<std::size_t>(i)];
        const MarkedSet M(inst.P.dim(), {inst.marked});
        auto& curve = finding[static_cast<std::size_t>(i)];
        curve.name = inst.name;
        if (inst.torus) {
            curve.scale = std::sqrt(extended_hitting_time(inst.P, M).value);
        } else {
            const auto d = static_cast<double>(inst.side);
            curve.scale = d * std::sqrt(std::max(1.0, std::log(d)));
        }
        const double eps = inst.eps_ratio / static_cast<double>(inst.P.dim());
        curve.values = interpolation_success_curve(inst.P, M, eps, curve_length(curve.scale));
    });
    const auto [jc2, bind_c2] =
        smallest_passing(finding, [](double success) { return success >= kFindSuccess; }, 1);
    record.constants.c2 = grid_value(jc2);
    say("c2 = " + format_double(record.constants.c2));

    // Cost: searches on small tori, c3 = margin x largest steps / scale.
    struct CostInstance {
        Index n;
        std::string family;
        double ratio = 0.0;
    };
    std::vector<CostInstance> cost;
    for (Index n = 6; n <= 12; ++n)
        for (const char* family : {"singleton", "row", "clusters", "half", "halfcheck"})
            if (std::string(family) != "halfcheck" || n % 2 == 0) cost.push_back({n, family});
    Calibration partial = record.constants;
    parallel_for(static_cast<std::ptrdiff_t>(cost.size()), [&](std::ptrdiff_t i) {
        auto& inst = cost[static_cast<std::size_t>(i)];
        const MarkedSet M = parse_marked(inst.family, inst.n, inst.n);
        SearchConfig config;
        config.n = inst.n;
        config.marked.assign(M.members().begin(), M.members().end());
        config.constants = partial;
        const SearchReport report = run_search(config);
        const WalkMatrix P = walk_from_graph(build_torus(inst.n));
        const double h = static_cast<double>(effective_hitting_time(P, M));
        inst.ratio = static_cast<double>(report.ledger.steps()) / cost_scale(h, inst.n * inst.n);
    });
    const auto worst = std::max_element(cost.begin(), cost.end(),
                                        [](const auto& a, const auto& b) { return a.ratio < b.ratio; });
    record.constants.c3 = grid_value(grid_ceil(kCostMargin * worst->ratio));
    say("c3 = " + format_double(record.constants.c3));

    record.provenance = {
        {"c",
         {{"rule", "smallest multiple of 0.05 with detection overlap <= 0.9 at ceil(c sqrt(HT_eff))"},
          {"instances", "singleton tori n = 4..16"},
          {"binding", bind_c}}},
        {"c2",
         {{"rule", "smallest multiple of 0.05 with time-averaged marked mass >= 1/5"},
          {"instances",
           "singleton tori n = 4..16 at ceil(c2 sqrt(HT+)); singleton grids D = 4..16, corner and centre, "
           "at ceil(c2 D sqrt(max(1, ln D))); estimates 2/3, 1, 4/3 of the marked mass"},
          {"binding", bind_c2}}},
        {"c3",
         {{"rule", "1.25 x largest ledger steps / min{sqrt(H max(1, ln H)), sqrt(N ln N)}, rounded up to 0.05"},
          {"instances", "singleton, row, clusters, half, halfcheck on tori n = 6..12 (halfcheck even n)"},
          {"largest_ratio", worst->ratio},
          {"binding", "torus:" + std::to_string(worst->n) + " " + worst->family}}}};
    return record;
}

std::string format_calibration(const CalibrationRecord& record) {
    std::ostringstream out;
    out << "# qwalk calibration constants, written by `qwalk calibrate` (qwalk " << QWALK_VERSION << ")\n";
    for (const char* key : {"c", "c2", "c3"}) {
        const auto& p = record.provenance.contains(key) ? record.provenance.at(key) : nlohmann::json::object();
        out << "#\n# " << key << ": " << p.value("rule", std::string()) << "\n";
        out << "#   instances: " << p.value("instances", std::string()) << "\n";
        if (p.contains("largest_ratio")) out << "#   largest ratio: " << format_double(p.at("largest_ratio").get<double>()) << "\n";
        const std::string binding = p.value("binding", std::string());
        if (!binding.empty()) out << "#   binding instance: " << binding << "\n";
    }
    out << "\n" << record.constants.canonical();
    return out.str();
}

}  // namespace qwalk
