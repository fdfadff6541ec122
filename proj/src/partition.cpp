#include "pin/partition.hpp"

#include <cmath>

#include "parallel.hpp"
#include "pin/rng.hpp"

namespace pin {

std::string to_string(BaselineMethod m) {
    switch (m) {
        case BaselineMethod::balanced: return "balanced";
        case BaselineMethod::uniform_size: return "uniform_size";
        case BaselineMethod::fiedler_like: return "fiedler_like";
    }
    return "?";
}

namespace {

double cut_depth_of_side(const PinSnapshot& s, const std::vector<char>& side, Money volume,
                         std::size_t edges, Money* w_cut_out = nullptr,
                         std::size_t* m_cut_out = nullptr) {
    const int n = s.size();
    Money w_cut = 0;
    std::size_t m_cut = 0;
    for (int i = 0; i < n; ++i) {
        const auto si = side[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            if (side[static_cast<std::size_t>(j)] == si) continue;
            double w = s.weights(i, j);
            if (w <= 0) continue;
            w_cut += w;
            ++m_cut;
        }
    }
    if (w_cut_out) *w_cut_out = w_cut;
    if (m_cut_out) *m_cut_out = m_cut;
    if (m_cut == 0) return 0;
    double f_w = w_cut / volume;
    double f_m = static_cast<double>(m_cut) / static_cast<double>(edges);
    return f_w / f_m;
}

}  // namespace

CutMetrics cut_metrics(const PinSnapshot& s, const Bisection& b) {
    const int n = s.size();
    if (b.s_plus.empty() || b.s_minus.empty())
        throw invariant_error("bisection with an empty section");
    if (static_cast<int>(b.s_plus.size() + b.s_minus.size()) != n)
        throw invariant_error("bisection does not partition the snapshot's nodes");

    std::vector<char> side(static_cast<std::size_t>(n), 0);
    for (int i : b.s_plus) side.at(static_cast<std::size_t>(i)) = 1;

    CutMetrics m;
    double depth = cut_depth_of_side(s, side, s.volume(), s.edge_count(), &m.w_cut,
                                     &m.crossing_edges);
    if (m.crossing_edges == 0) throw invariant_error("disconnected bisection: no edge crosses");
    m.cut_ratio = m.w_cut / (static_cast<double>(b.s_plus.size()) *
                             static_cast<double>(b.s_minus.size()));
    m.f_w = m.w_cut / s.volume();
    m.f_m = static_cast<double>(m.crossing_edges) / static_cast<double>(s.edge_count());
    m.cut_depth = depth;
    return m;
}

BaselineReport random_baseline(const PinSnapshot& s, BaselineMethod method, int samples,
                               std::uint64_t seed, std::optional<int> fiedler_small_size) {
    const int n = s.size();
    if (samples < 1) throw input_error("random_baseline needs at least one sample");
    if (n < 2) throw invariant_error("random_baseline needs at least two nodes");
    if (method == BaselineMethod::fiedler_like &&
        (!fiedler_small_size || *fiedler_small_size < 1 || *fiedler_small_size >= n))
        throw input_error("fiedler_like baseline needs the Fiedler small-section size");

    const Money volume = s.volume();
    const std::size_t edges = s.edge_count();
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;

    // per-sample substreams let the draws fan out across workers; the
    // reduction below stays in sample order, so the report is identical for
    // any worker count
    std::vector<double> depth(static_cast<std::size_t>(samples));
    detail::parallel_for(static_cast<std::size_t>(samples), [&](std::size_t k) {
        Philox rng(seed, static_cast<std::uint64_t>(k));
        int size = 0;
        switch (method) {
            case BaselineMethod::balanced: size = n / 2; break;
            case BaselineMethod::uniform_size: size = rng.uniform_int(1, n - 1); break;
            case BaselineMethod::fiedler_like: size = *fiedler_small_size; break;
        }
        std::vector<char> side(static_cast<std::size_t>(n), 0);
        for (int i : sample_without_replacement(rng, pool, size))
            side[static_cast<std::size_t>(i)] = 1;
        depth[k] = cut_depth_of_side(s, side, volume, edges);
    });
    double sum = 0, sum_sq = 0;
    for (double d : depth) {
        sum += d;
        sum_sq += d * d;
    }

    BaselineReport report;
    report.method = method;
    report.samples = samples;
    report.seed = seed;
    report.mean_cut_depth = sum / samples;
    double variance = samples > 1
                          ? std::max(0.0, (sum_sq - sum * sum / samples) / (samples - 1))
                          : 0.0;
    double half = 2.576 * std::sqrt(variance / samples);
    report.ci_lo = report.mean_cut_depth - half;
    report.ci_hi = report.mean_cut_depth + half;
    return report;
}

ClassificationTriple classification_triple(const PinSnapshot& s) {
    SpectralSummary summary = spectrum_summary(s);
    Bisection b = fiedler_bisection(summary);
    CutMetrics m = cut_metrics(s, b);
    return ClassificationTriple{summary.lambda1, b.f_small, m.cut_depth};
}

}  // namespace pin
