#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pin/netcore.hpp"
#include "pin/spectral.hpp"

namespace pin {

/**
 * Cut statistics of a bi-section. Crossing edges are counted in both
 * directions. cut_depth = f_w / f_m relates the mean weight of crossing
 * edges to the mean edge weight of the whole graph.
 */
struct CutMetrics {
    Money w_cut = 0;
    std::size_t crossing_edges = 0;
    double cut_ratio = 0;  // w_cut / (|s1| * |s2|)
    double f_w = 0;        // fraction of volume crossing
    double f_m = 0;        // fraction of edge count crossing
    double cut_depth = 0;
};

enum class BaselineMethod { balanced, uniform_size, fiedler_like };

std::string to_string(BaselineMethod m);

struct BaselineReport {
    BaselineMethod method = BaselineMethod::balanced;
    int samples = 0;
    double mean_cut_depth = 0;
    double ci_lo = 0, ci_hi = 0;  // 99% normal-approximation interval
    std::uint64_t seed = 0;
};

struct ClassificationTriple {
    double lambda1 = 0;
    double f_small = 0;
    double cut_depth = 0;
};

/// Throws invariant_error on an empty section or when no edge crosses.
CutMetrics cut_metrics(const PinSnapshot& s, const Bisection& b);

/**
 * Mean cut depth of random bi-sections; 10^4 hypothetical draws is the
 * reference sample count. Section size per method: balanced floor(N/2),
 * uniform_size uniform on 1..N-1, fiedler_like the supplied Fiedler
 * small-section size. Per-sample Philox substreams make the report
 * deterministic for a given seed independent of evaluation order.
 */
BaselineReport random_baseline(const PinSnapshot& s, BaselineMethod method, int samples,
                               std::uint64_t seed,
                               std::optional<int> fiedler_small_size = std::nullopt);

/// (lambda1, f_small, D_cut) of the snapshot's Fiedler bi-section.
ClassificationTriple classification_triple(const PinSnapshot& s);

}  // namespace pin
