#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pin/netcore.hpp"
#include "pin/types.hpp"

namespace pin {

struct GridSpec {
    Money lo = 1.0;      // millions USD
    Money hi = 1000.0;   // 1 billion USD
    int count = 500;     // log-spaced values, endpoints included
};

struct PercolationSample {
    Money e_th = 0;
    int n_nodes = 0;
    std::size_t m_edges = 0;
    Money volume = 0;
    double density = 0;
};

struct PercolationCurve {
    GridSpec grid;
    std::vector<PercolationSample> points;  // ordered by threshold
};

struct PercolationPoint {
    Money e_p = 0;
    double delta = 0;
    int window = 0;
};

/// Log-spaced grid values, strictly increasing. Requires lo > 0, hi > lo, count >= 2.
std::vector<Money> log_grid(const GridSpec& grid);

/**
 * Largest-SCC size, edge count, volume and density at every grid threshold.
 * Thresholds past the disintegration point report the largest component
 * found (size 0 or 1) rather than erroring.
 */
PercolationCurve percolation_scan(std::span<const PositionRecord> records, int year,
                                  int n_countries, const GridSpec& grid);

/**
 * Largest grid threshold at which the node count has not yet dropped below
 * (1 - delta) of its value at the grid start while the relative drop across
 * the next `window` grid steps exceeds delta. Defaults delta = 0.1,
 * window = 5. Returns nullopt when the curve disintegrates too gently.
 */
std::optional<PercolationPoint> detect_percolation_point(const PercolationCurve& curve,
                                                         double delta = 0.1, int window = 5);

}  // namespace pin
