#include "pin/percolation.hpp"

#include <cmath>

namespace pin {

std::vector<Money> log_grid(const GridSpec& grid) {
    if (grid.lo <= 0 || grid.hi <= grid.lo || grid.count < 2)
        throw input_error("percolation grid needs lo > 0, hi > lo and count >= 2");
    std::vector<Money> values(static_cast<std::size_t>(grid.count));
    const double ratio = std::log(grid.hi / grid.lo);
    for (int k = 0; k < grid.count; ++k)
        values[static_cast<std::size_t>(k)] =
            grid.lo * std::exp(ratio * static_cast<double>(k) / (grid.count - 1));
    values.front() = grid.lo;
    values.back() = grid.hi;
    return values;
}

PercolationCurve percolation_scan(std::span<const PositionRecord> records, int year,
                                  int n_countries, const GridSpec& grid) {
    const std::vector<Money> thresholds = log_grid(grid);
    AggregatedYear agg = aggregate_year(records, year, n_countries);

    PercolationCurve curve;
    curve.grid = grid;
    curve.points.reserve(thresholds.size());
    Eigen::MatrixXd w = agg.weights;
    for (Money t : thresholds) {
        // grid ascends, so zeroing is cumulative across iterations
        for (int i = 0; i < n_countries; ++i)
            for (int j = 0; j < n_countries; ++j)
                if (w(i, j) > 0 && w(i, j) < t) w(i, j) = 0;

        std::vector<int> core = largest_scc_nodes(w);
        PercolationSample sample;
        sample.e_th = t;
        sample.n_nodes = static_cast<int>(core.size());
        if (core.size() >= 2) {
            for (int i : core)
                for (int j : core)
                    if (w(i, j) > 0) {
                        ++sample.m_edges;
                        sample.volume += w(i, j);
                    }
            double n = static_cast<double>(sample.n_nodes);
            sample.density = static_cast<double>(sample.m_edges) / (n * n - n);
        }
        curve.points.push_back(sample);
    }
    return curve;
}

std::optional<PercolationPoint> detect_percolation_point(const PercolationCurve& curve,
                                                         double delta, int window) {
    if (!(delta > 0 && delta < 1)) throw input_error("delta must lie in (0, 1)");
    if (window < 1) throw input_error("window must be at least one grid step");
    const auto& pts = curve.points;
    if (pts.empty()) return std::nullopt;

    const double n0 = pts.front().n_nodes;
    if (n0 <= 0) return std::nullopt;
    const double floor_nodes = (1.0 - delta) * n0;

    std::optional<PercolationPoint> best;
    bool prefix_ok = true;
    const int last = static_cast<int>(pts.size()) - 1;
    for (int i = 0; i <= last; ++i) {
        prefix_ok = prefix_ok && pts[static_cast<std::size_t>(i)].n_nodes >= floor_nodes;
        if (!prefix_ok) break;
        const double here = pts[static_cast<std::size_t>(i)].n_nodes;
        if (here <= 0) continue;
        const int ahead = std::min(i + window, last);
        const double there = pts[static_cast<std::size_t>(ahead)].n_nodes;
        if ((here - there) / here > delta)
            best = PercolationPoint{pts[static_cast<std::size_t>(i)].e_th, delta, window};
    }
    return best;
}

}  // namespace pin
