#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pin/percolation.hpp"
#include "pin/rng.hpp"

using namespace pin;

namespace {

// reachability-closure oracle: largest SCC size of w restricted to weights >= t
int largest_scc_size_oracle(const Eigen::MatrixXd& w, double t) {
    const int n = static_cast<int>(w.rows());
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    bool any = false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && w(i, j) >= t && w(i, j) > 0) {
                reach[i][j] = true;
                any = true;
            }
    if (!any) return 0;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    int best = 0;
    std::vector<bool> incident(n, false);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && w(i, j) >= t && w(i, j) > 0) incident[i] = incident[j] = true;
    for (int i = 0; i < n; ++i) {
        if (!incident[i]) continue;
        int size = 1;
        for (int j = 0; j < n; ++j)
            if (j != i && reach[i][j] && reach[j][i]) ++size;
        best = std::max(best, size);
    }
    return best;
}

}  // namespace

TEST_CASE("log grid endpoints, length and monotonicity") {
    auto grid = log_grid(GridSpec{1.0, 1000.0, 500});
    REQUIRE(grid.size() == 500);
    CHECK(grid.front() == 1.0);
    CHECK(grid.back() == 1000.0);
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
    // equal spacing on the log scale
    double step = std::log(grid[1]) - std::log(grid[0]);
    for (std::size_t i = 2; i < 20; ++i)
        CHECK(std::log(grid[i]) - std::log(grid[i - 1]) == doctest::Approx(step).epsilon(1e-9));

    CHECK_THROWS_AS(log_grid(GridSpec{0.0, 10.0, 5}), input_error);
    CHECK_THROWS_AS(log_grid(GridSpec{1.0, 1.0, 5}), input_error);
    CHECK_THROWS_AS(log_grid(GridSpec{1.0, 10.0, 1}), input_error);
}

TEST_CASE("scan of a single cycle is a step function") {
    std::vector<PositionRecord> records = {{2002, 0, 1, 10.0}, {2002, 1, 2, 10.0},
                                           {2002, 2, 0, 10.0}};
    auto curve = percolation_scan(records, 2002, 3, GridSpec{1.0, 100.0, 60});
    for (const auto& p : curve.points) {
        if (p.e_th <= 10.0) {
            CHECK(p.n_nodes == 3);
            CHECK(p.m_edges == 3);
            CHECK(p.volume == doctest::Approx(30.0));
            CHECK(p.density == doctest::Approx(0.5));
        } else {
            CHECK(p.n_nodes <= 1);
            CHECK(p.m_edges == 0);
        }
    }
}

TEST_CASE("two-tier scan matches the closure oracle at every threshold") {
    Eigen::MatrixXd w = oracle::two_tier(16);
    auto records = oracle::records_of(w, 2002);
    GridSpec grid{1.0, 1000.0, 120};
    auto curve = percolation_scan(records, 2002, static_cast<int>(w.rows()), grid);
    REQUIRE(curve.points.size() == 120);
    for (const auto& p : curve.points)
        CHECK(p.n_nodes == largest_scc_size_oracle(w, p.e_th));

    // the node count steps down exactly past the shell weight
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& prev = curve.points[i - 1];
        const auto& here = curve.points[i];
        if (prev.e_th <= 10.0 && here.e_th > 10.0) {
            CHECK(prev.n_nodes == 24);
            CHECK(here.n_nodes == 8);
        }
    }
}

TEST_CASE("scan counts never grow along the grid") {
    for (std::uint64_t stream = 0; stream < 4; ++stream) {
        Philox rng(161, stream);
        Eigen::MatrixXd w = oracle::random_scc(20, 0.3, rng, stream % 2 == 0);
        auto curve = percolation_scan(oracle::records_of(w, 2002), 2002, 20,
                                      GridSpec{0.5, 200.0, 80});
        for (std::size_t i = 1; i < curve.points.size(); ++i)
            CHECK(curve.points[i].n_nodes <= curve.points[i - 1].n_nodes);
    }
    // volume and edge count shrink too when the surviving core is nested
    auto curve = percolation_scan(oracle::records_of(oracle::two_tier(16), 2002), 2002, 24,
                                  GridSpec{1.0, 1000.0, 80});
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        CHECK(curve.points[i].m_edges <= curve.points[i - 1].m_edges);
        CHECK(curve.points[i].volume <= curve.points[i - 1].volume + 1e-9);
    }
}

TEST_CASE("planted percolation point sits at the last grid value under the shell weight") {
    auto records = oracle::records_of(oracle::two_tier(16), 2002);
    GridSpec grid{1.0, 1000.0, 500};
    auto curve = percolation_scan(records, 2002, 24, grid);
    auto point = detect_percolation_point(curve);
    REQUIRE(point.has_value());

    auto values = log_grid(grid);
    double expected = 0;
    for (double t : values)
        if (t <= 10.0) expected = t;
    CHECK(point->e_p == doctest::Approx(expected));
}

TEST_CASE("gentle disintegration yields no percolation point") {
    PercolationCurve curve;
    curve.grid = GridSpec{1.0, 100.0, 70};
    auto values = log_grid(curve.grid);
    for (int i = 0; i < 70; ++i) {
        PercolationSample s;
        s.e_th = values[static_cast<std::size_t>(i)];
        s.n_nodes = 70 - i;  // one node per step
        curve.points.push_back(s);
    }
    CHECK_FALSE(detect_percolation_point(curve, 0.1, 5).has_value());
}

TEST_CASE("detection is stable under grid refinement") {
    auto records = oracle::records_of(oracle::two_tier(16), 2002);
    GridSpec coarse{1.0, 1000.0, 250};
    GridSpec fine{1.0, 1000.0, 500};
    auto p_coarse = detect_percolation_point(percolation_scan(records, 2002, 24, coarse));
    auto p_fine = detect_percolation_point(percolation_scan(records, 2002, 24, fine));
    REQUIRE(p_coarse.has_value());
    REQUIRE(p_fine.has_value());
    auto grid = log_grid(coarse);
    double coarse_step = grid[1] / grid[0];
    CHECK(std::abs(std::log(p_fine->e_p / p_coarse->e_p)) <= std::log(coarse_step) + 1e-12);
}

TEST_CASE("a year without records scans to an empty curve") {
    std::vector<PositionRecord> records = {{2001, 0, 1, 10.0}};
    auto curve = percolation_scan(records, 2002, 3, GridSpec{1.0, 100.0, 10});
    for (const auto& p : curve.points) {
        CHECK(p.n_nodes == 0);
        CHECK(p.m_edges == 0);
    }
    CHECK_FALSE(detect_percolation_point(curve).has_value());
}

TEST_CASE("detect validates its knobs") {
    PercolationCurve curve;
    curve.points.push_back(PercolationSample{1.0, 10, 20, 100.0, 0.2});
    CHECK_THROWS_AS(detect_percolation_point(curve, 0.0, 5), input_error);
    CHECK_THROWS_AS(detect_percolation_point(curve, 1.0, 5), input_error);
    CHECK_THROWS_AS(detect_percolation_point(curve, 0.1, 0), input_error);
}
