#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "pin/types.hpp"

namespace pin {

/**
 * One year's weighted directed network after thresholding and extraction of
 * the largest strongly-connected component. weights(i, j) is the deflated
 * position held by node_ids[i] in node_ids[j]; the diagonal is zero and
 * every retained weight is >= threshold_applied.
 */
struct PinSnapshot {
    int year = 0;
    AssetClass asset_class = AssetClass::E;
    std::vector<NodeId> node_ids;  // sorted ascending
    Eigen::MatrixXd weights;
    Money threshold_applied = 0;

    int size() const { return static_cast<int>(node_ids.size()); }
    std::size_t edge_count() const;
    Money volume() const { return weights.sum(); }
    /// Positional index of a country id, or -1 when absent.
    int index_of(NodeId id) const;
};

struct NodeMeasures {
    std::vector<int> in_degree, out_degree, total_degree;
    std::vector<Money> in_strength, out_strength, total_strength;
};

struct SnapshotBuild {
    PinSnapshot snapshot;
    std::size_t dropped_negative = 0;  // records discarded for negative positions
    Money raw_volume = 0;              // aggregated volume before thresholding
};

/// Rescales every position to base-year prices: value * index(base) / index(year).
std::vector<PositionRecord> deflate(std::span<const PositionRecord> records,
                                    const std::map<int, double>& deflator, int base_year);

/**
 * Aggregates one year's records (negatives dropped and counted, duplicates
 * summed), removes edges below e_th and keeps the largest strongly-connected
 * component. Ties between components go to the larger volume, then to the
 * lexicographically smaller node-id set. Throws invariant_error when no
 * component with at least two nodes survives.
 */
SnapshotBuild build_snapshot(std::span<const PositionRecord> records, int year,
                             AssetClass asset_class, Money e_th, int n_countries);

/// M / (N^2 - N). Requires N >= 2.
double edge_density(const PinSnapshot& s);

NodeMeasures node_measures(const PinSnapshot& s);

/// Complementary cumulative distribution P(X >= x) over the distinct values,
/// ascending in x. P at the minimum value is 1.
std::vector<std::pair<double, double>> eccdf(std::vector<double> values);

// Graph machinery shared with the percolation and instability searches.

/// Tarjan strongly-connected components over the positive entries of w.
/// Every matrix row is a vertex; isolated vertices form singleton components.
std::vector<std::vector<int>> strongly_connected_components(const Eigen::MatrixXd& w);

/// Largest component under the (size, volume, lexicographic) tie rules,
/// returned as sorted positional indices. Only vertices incident to a
/// positive weight participate; the result may be empty.
std::vector<int> largest_scc_nodes(const Eigen::MatrixXd& w);

/// Aggregates records for one year into a dense weight matrix (negatives
/// dropped, duplicates summed). Returns the matrix, the number of dropped
/// negative records and the aggregated (un-thresholded) volume.
struct AggregatedYear {
    Eigen::MatrixXd weights;
    std::size_t dropped_negative = 0;
    Money raw_volume = 0;
};
AggregatedYear aggregate_year(std::span<const PositionRecord> records, int year, int n_countries);

}  // namespace pin
