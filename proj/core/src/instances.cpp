#include "qwalk/instances.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace qwalk {

namespace {

[[noreturn]] void bad(const std::string& what, std::string_view text) {
    throw std::invalid_argument(what + ": '" + std::string(text) + "'");
}

Index parse_index(std::string_view text, std::string_view context) {
    Index value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) bad("expected an integer in", context);
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(sep, start);
        out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

}  // namespace

std::string GraphSpec::str() const { return std::string(to_string(kind)) + ":" + std::to_string(n); }

GraphSpec parse_graph_spec(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) bad("graph spec must look like torus:<n> or grid:<n>", text);
    const std::string kind = text.substr(0, colon);
    GraphSpec spec;
    if (kind == "torus")
        spec.kind = GraphKind::torus;
    else if (kind == "grid")
        spec.kind = GraphKind::grid;
    else
        bad("unknown graph kind", kind);
    spec.n = parse_index(std::string_view(text).substr(colon + 1), text);
    if (spec.n < 2) bad("graph side must be at least 2", text);
    return spec;
}

Graph build_graph(const GraphSpec& spec) {
    return spec.kind == GraphKind::torus ? build_torus(spec.n) : build_grid(spec.n);
}

MarkedSet parse_marked(const std::string& text, Index rows, Index cols) {
    const Index total = rows * cols;
    std::vector<Index> members;
    auto cell = [&](Index r, Index c) {
        if (r < 0 || r >= rows || c < 0 || c >= cols) bad("marked cell outside the lattice", text);
        members.push_back(r * cols + c);
    };
    auto add_row = [&](Index r) {
        for (Index c = 0; c < cols; ++c) cell(r, c);
    };
    auto add_col = [&](Index c) {
        for (Index r = 0; r < rows; ++r) cell(r, c);
    };

    const std::string_view view(text);
    const auto colon = view.find(':');
    const std::string_view head = view.substr(0, colon);
    const std::string_view body = colon == std::string_view::npos ? std::string_view() : view.substr(colon + 1);

    if (head == "singleton" && body.empty()) {
        cell(0, 0);
    } else if (head == "row" && body.empty()) {
        add_row(0);
    } else if (head == "clusters" && body.empty()) {
        for (Index r0 : {Index{0}, rows / 2})
            for (Index c0 : {Index{0}, cols / 2})
                if ((r0 == 0) == (c0 == 0))
                    for (Index dr = 0; dr < 2; ++dr)
                        for (Index dc = 0; dc < 2; ++dc) cell((r0 + dr) % rows, (c0 + dc) % cols);
    } else if (head == "half" && body.empty()) {
        for (Index c = 0; c < cols / 2; ++c) add_col(c);
    } else if (head == "halfcheck" && body.empty()) {
        if (cols % 2 != 0) bad("halfcheck needs an even number of columns", text);
        for (Index r = 0; r < rows; ++r)
            for (Index c = 0; c < cols; ++c)
                if (c < cols / 2 || (r + c) % 2 == 0) cell(r, c);
    } else if (head == "rows" && !body.empty()) {
        for (auto part : split(body, ',')) add_row(parse_index(part, text));
    } else if (head == "cols" && !body.empty()) {
        for (auto part : split(body, ',')) add_col(parse_index(part, text));
    } else if (head == "cells" && !body.empty()) {
        for (auto part : split(body, ';')) {
            if (part.size() < 5 || part.front() != '(' || part.back() != ')') bad("cells expect (r,c)", part);
            const auto rc = split(part.substr(1, part.size() - 2), ',');
            if (rc.size() != 2) bad("cells expect (r,c)", part);
            cell(parse_index(rc[0], text), parse_index(rc[1], text));
        }
    } else if (head == "random" && !body.empty()) {
        const auto parts = split(body, ':');
        if (parts.size() != 2) bad("random expects random:<m>:<seed>", text);
        const Index m = parse_index(parts[0], text);
        const auto seed = static_cast<std::uint64_t>(parse_index(parts[1], text));
        if (m < 1 || m >= total) bad("random marked count must lie in [1, N)", text);
        std::vector<Index> all(static_cast<std::size_t>(total));
        std::iota(all.begin(), all.end(), Index{0});
        std::mt19937_64 engine(seed);
        for (Index i = 0; i < m; ++i) {
            std::uniform_int_distribution<Index> pick(i, total - 1);
            std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(pick(engine))]);
        }
        members.assign(all.begin(), all.begin() + m);
    } else {
        bad("unknown marked spec", text);
    }
    try {
        return MarkedSet(total, std::move(members));
    } catch (const std::invalid_argument& e) {
        bad(e.what(), text);
    }
}

}  // namespace qwalk
