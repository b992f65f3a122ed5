#pragma once

// Seeded random rotation systems for property suites. Deterministic for a
// fixed generator state.

#include "quasitor/ribbonmap.hpp"

#include <random>

namespace quasitor {

inline RibbonGraph random_ribbon_graph(int n, std::mt19937_64& rng, int max_genus = 3) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<int> darts(static_cast<size_t>(2 * n));
        std::iota(darts.begin(), darts.end(), 0);
        for (size_t i = darts.size(); i > 1; --i)
            std::swap(darts[i - 1], darts[static_cast<size_t>(rng() % i)]);
        int nv = 1 + static_cast<int>(rng() % static_cast<uint64_t>(std::min(2 * n, n + 1)));
        // nv - 1 distinct cut positions
        std::set<int> cuts;
        while (static_cast<int>(cuts.size()) < nv - 1)
            cuts.insert(1 + static_cast<int>(rng() % static_cast<uint64_t>(2 * n - 1)));
        std::vector<std::vector<Dart>> cycles;
        size_t start = 0;
        auto flush = [&](size_t end) {
            std::vector<Dart> cyc;
            for (size_t i = start; i < end; ++i) cyc.push_back(dart_of_id(darts[i]));
            cycles.push_back(std::move(cyc));
            start = end;
        };
        for (int c : cuts) flush(static_cast<size_t>(c));
        flush(darts.size());
        try {
            RibbonGraph g(n, std::move(cycles));
            if (g.euler_data().genus <= max_genus) return g;
        } catch (const Error&) {
        }
    }
    fail(ErrorCode::Internal, "random map generation exhausted its attempts");
}

}  // namespace quasitor
