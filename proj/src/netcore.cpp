#include "pin/netcore.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace pin {

std::size_t PinSnapshot::edge_count() const {
    std::size_t m = 0;
    for (Eigen::Index i = 0; i < weights.rows(); ++i)
        for (Eigen::Index j = 0; j < weights.cols(); ++j)
            if (weights(i, j) > 0) ++m;
    return m;
}

int PinSnapshot::index_of(NodeId id) const {
    auto it = std::lower_bound(node_ids.begin(), node_ids.end(), id);
    if (it == node_ids.end() || *it != id) return -1;
    return static_cast<int>(it - node_ids.begin());
}

std::vector<PositionRecord> deflate(std::span<const PositionRecord> records,
                                    const std::map<int, double>& deflator, int base_year) {
    auto base_it = deflator.find(base_year);
    if (base_it == deflator.end())
        throw input_error("no deflator index for base year " + std::to_string(base_year));
    if (base_it->second <= 0)
        throw input_error("deflator index for base year " + std::to_string(base_year) +
                          " must be positive");
    std::vector<PositionRecord> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        auto it = deflator.find(r.year);
        if (it == deflator.end())
            throw input_error("no deflator index for year " + std::to_string(r.year));
        if (it->second <= 0)
            throw input_error("deflator index for year " + std::to_string(r.year) +
                              " must be positive");
        PositionRecord d = r;
        d.position = r.position * (base_it->second / it->second);
        out.push_back(d);
    }
    return out;
}

AggregatedYear aggregate_year(std::span<const PositionRecord> records, int year,
                              int n_countries) {
    AggregatedYear agg;
    agg.weights = Eigen::MatrixXd::Zero(n_countries, n_countries);
    for (const auto& r : records) {
        if (r.year != year) continue;
        if (r.source < 0 || r.source >= n_countries || r.target < 0 || r.target >= n_countries)
            throw input_error("position record references country id outside the registry");
        if (r.source == r.target)
            throw input_error("self-loop position for country id " + std::to_string(r.source) +
                              " in year " + std::to_string(year));
        if (r.position < 0) {
            ++agg.dropped_negative;
            continue;
        }
        agg.weights(r.source, r.target) += r.position;
    }
    agg.raw_volume = agg.weights.sum();
    return agg;
}

std::vector<std::vector<int>> strongly_connected_components(const Eigen::MatrixXd& w) {
    const int n = static_cast<int>(w.rows());
    std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (w(i, j) > 0) adjacency[static_cast<std::size_t>(i)].push_back(j);

    std::vector<int> index(static_cast<std::size_t>(n), -1);
    std::vector<int> lowlink(static_cast<std::size_t>(n), -1);
    std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> components;
    int next_index = 0;

    // iterative Tarjan: frame = (vertex, next child position)
    std::vector<std::pair<int, std::size_t>> frames;
    for (int start = 0; start < n; ++start) {
        if (index[static_cast<std::size_t>(start)] != -1) continue;
        frames.emplace_back(start, 0);
        while (!frames.empty()) {
            auto& [v, child] = frames.back();
            auto vi = static_cast<std::size_t>(v);
            if (child == 0) {
                index[vi] = lowlink[vi] = next_index++;
                stack.push_back(v);
                on_stack[vi] = 1;
            }
            bool descended = false;
            while (child < adjacency[vi].size()) {
                int u = adjacency[vi][child++];
                auto ui = static_cast<std::size_t>(u);
                if (index[ui] == -1) {
                    frames.emplace_back(u, 0);
                    descended = true;
                    break;
                }
                if (on_stack[ui]) lowlink[vi] = std::min(lowlink[vi], index[ui]);
            }
            if (descended) continue;
            if (lowlink[vi] == index[vi]) {
                std::vector<int> comp;
                for (;;) {
                    int u = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(u)] = 0;
                    comp.push_back(u);
                    if (u == v) break;
                }
                std::sort(comp.begin(), comp.end());
                components.push_back(std::move(comp));
            }
            frames.pop_back();
            if (!frames.empty()) {
                auto& [p, pc] = frames.back();
                (void)pc;
                auto pi = static_cast<std::size_t>(p);
                lowlink[pi] = std::min(lowlink[pi], lowlink[vi]);
            }
        }
    }
    return components;
}

std::vector<int> largest_scc_nodes(const Eigen::MatrixXd& w) {
    const int n = static_cast<int>(w.rows());
    std::vector<char> active(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (w(i, j) > 0) active[static_cast<std::size_t>(i)] = active[static_cast<std::size_t>(j)] = 1;

    auto components = strongly_connected_components(w);
    const std::vector<int>* best = nullptr;
    Money best_volume = 0;
    for (const auto& comp : components) {
        if (!active[static_cast<std::size_t>(comp.front())] && comp.size() == 1) continue;
        Money volume = 0;
        for (int i : comp)
            for (int j : comp) volume += w(i, j);
        if (!best) {
            best = &comp;
            best_volume = volume;
            continue;
        }
        if (comp.size() != best->size()) {
            if (comp.size() > best->size()) { best = &comp; best_volume = volume; }
            continue;
        }
        if (volume != best_volume) {
            if (volume > best_volume) { best = &comp; best_volume = volume; }
            continue;
        }
        if (std::lexicographical_compare(comp.begin(), comp.end(), best->begin(), best->end())) {
            best = &comp;
            best_volume = volume;
        }
    }
    return best ? *best : std::vector<int>{};
}

SnapshotBuild build_snapshot(std::span<const PositionRecord> records, int year,
                             AssetClass asset_class, Money e_th, int n_countries) {
    if (e_th <= 0) throw input_error("edge threshold must be positive");
    AggregatedYear agg = aggregate_year(records, year, n_countries);

    Eigen::MatrixXd thresholded = agg.weights;
    for (int i = 0; i < n_countries; ++i)
        for (int j = 0; j < n_countries; ++j)
            if (thresholded(i, j) < e_th) thresholded(i, j) = 0;

    std::vector<int> core = largest_scc_nodes(thresholded);
    if (core.size() < 2)
        throw invariant_error("no strongly-connected core for year " + std::to_string(year) +
                              " (" + to_string(asset_class) + ", e_th=" + std::to_string(e_th) + ")");

    SnapshotBuild out;
    out.dropped_negative = agg.dropped_negative;
    out.raw_volume = agg.raw_volume;
    out.snapshot.year = year;
    out.snapshot.asset_class = asset_class;
    out.snapshot.threshold_applied = e_th;
    out.snapshot.node_ids.assign(core.begin(), core.end());
    const int m = static_cast<int>(core.size());
    out.snapshot.weights.resize(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            out.snapshot.weights(a, b) = thresholded(core[static_cast<std::size_t>(a)],
                                                     core[static_cast<std::size_t>(b)]);
    return out;
}

double edge_density(const PinSnapshot& s) {
    const double n = s.size();
    if (n < 2) throw invariant_error("edge density needs at least two nodes");
    return static_cast<double>(s.edge_count()) / (n * n - n);
}

NodeMeasures node_measures(const PinSnapshot& s) {
    const int n = s.size();
    NodeMeasures m;
    m.in_degree.assign(static_cast<std::size_t>(n), 0);
    m.out_degree.assign(static_cast<std::size_t>(n), 0);
    m.total_degree.assign(static_cast<std::size_t>(n), 0);
    m.in_strength.assign(static_cast<std::size_t>(n), 0);
    m.out_strength.assign(static_cast<std::size_t>(n), 0);
    m.total_strength.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double w = s.weights(i, j);
            if (w <= 0) continue;
            m.out_degree[static_cast<std::size_t>(i)] += 1;
            m.in_degree[static_cast<std::size_t>(j)] += 1;
            m.out_strength[static_cast<std::size_t>(i)] += w;
            m.in_strength[static_cast<std::size_t>(j)] += w;
        }
    }
    for (int i = 0; i < n; ++i) {
        auto k = static_cast<std::size_t>(i);
        m.total_degree[k] = m.in_degree[k] + m.out_degree[k];
        m.total_strength[k] = m.in_strength[k] + m.out_strength[k];
    }
    return m;
}

std::vector<std::pair<double, double>> eccdf(std::vector<double> values) {
    if (values.empty()) throw input_error("eccdf of an empty sample");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    std::vector<std::pair<double, double>> out;
    std::size_t i = 0;
    while (i < values.size()) {
        double x = values[i];
        // count of samples >= x equals everything from position i on
        out.emplace_back(x, static_cast<double>(values.size() - i) / n);
        while (i < values.size() && values[i] == x) ++i;
    }
    return out;
}

}  // namespace pin
