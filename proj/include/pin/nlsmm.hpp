#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pin/types.hpp"

namespace pin {

struct TimePoint {
    Date date;
    double value = 0;
};

/// Dated value sequence with uniform cadence (6 or 12 months between points).
struct TimeSeries {
    std::string label;
    int cadence_months = 12;
    std::vector<TimePoint> points;

    /// Throws invariant_error unless dates are strictly increasing with the
    /// stated uniform cadence.
    void validate() const;
    std::optional<double> value_at(const Date& d) const;
    /// Nearest point within `tolerance_months`; ties resolve to the earlier date.
    std::optional<TimePoint> nearest(const Date& d, int tolerance_months) const;
};

/// Annual -> semiannual by linear midpoint insertion; original points are
/// preserved exactly.
TimeSeries interpolate_semiannual(const TimeSeries& annual);

/// V_r * a_r * (rho_now^g1 + rho_prev^g2). Throws invariant_error when a
/// rho value is not positive.
double model_value(double a_r, double g1, double g2, double rho_bar_now,
                   double rho_bar_prev, double v_r);

/// Pearson product-moment correlation. Requires equal lengths >= 2 and
/// non-zero variance on both sides.
double pearson(std::span<const double> x, std::span<const double> y);

enum class FitDecision { accept, conditional, reject };

std::string to_string(FitDecision d);

/// accept for p_r >= accept, conditional for conditional <= p_r < accept,
/// reject below (closed lower bounds on both intervals).
FitDecision decide(double p_r, double accept = 0.9, double conditional = 0.85);

struct FitOptions {
    double gamma_lo = -20.0;
    double gamma_hi = 25.0;
    double gamma_step = 0.5;     // coarse grid
    double refine_tol = 1e-4;    // simplex parameter tolerance
    double accept_threshold = 0.9;
    double conditional_threshold = 0.85;
};

struct NlsmmFit {
    double a_r = 0;
    double gamma1 = 0, gamma2 = 0;
    std::optional<double> m;  // gamma2/gamma1; absent for negative exponents or gamma1 ~ 0
    int delta_t_months = 0;   // positive: density leads the derivative series
    double p_r = 0;
    FitDecision decision = FitDecision::reject;
    Date t_r;
    double v_r = 0;
    double objective = 0;       // ||vd - fit||^2 / ||vd||^2 at the chosen shift
    bool degenerate = false;    // constant rho_bar over the window
    bool length_bias_warning = false;  // usable windows differ across shifts
    std::vector<TimePoint> fitted;     // fitted values at the used dates
};

/**
 * Least-squares fit of a derivative series against the (semiannual) edge
 * density series. For each shift in dt_grid the whole rho series is moved
 * against vd (memory term included), a_r is solved in closed form and
 * (gamma1, gamma2) by a coarse grid followed by Nelder-Mead refinement; the
 * shift minimising the normalised squared difference wins. Shifts with
 * fewer than 4 usable points are skipped; all skipped is an error.
 */
NlsmmFit fit(const TimeSeries& rho_semiannual, const TimeSeries& vd, const Date& t_r,
             std::span<const int> dt_grid_months, const FitOptions& opts = {});

struct WarningConfig {
    double f_max = 0;        // threshold multiple of the reference variable
    TimeSeries rv;           // reference variable, positive everywhere
    std::string derivative;  // label for reports
    int lead_months = 0;     // positive fitted shift: warnings predate the breach
};

struct WarningPoint {
    Date date;
    double value = 0;
    double threshold = 0;
    bool flag = false;  // set on the first threshold breach only
};

struct WarningSeries {
    std::vector<WarningPoint> points;
    std::optional<Date> first_warning;  // breach date minus the lead
    int lead_months = 0;
};

/// Dynamic threshold w_th(t) = f_max * V_RV(t) with nearest-date matching
/// within 3 months; throws input_error naming the date on a coverage gap.
WarningSeries warning_series(const TimeSeries& vd_fit, const WarningConfig& cfg);

}  // namespace pin
