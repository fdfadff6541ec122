#include "pin/nlsmm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace pin {

void TimeSeries::validate() const {
    if (cadence_months != 6 && cadence_months != 12)
        throw invariant_error("series '" + label + "': cadence must be 6 or 12 months");
    for (std::size_t i = 1; i < points.size(); ++i) {
        int gap = points[i].date.month_index() - points[i - 1].date.month_index();
        if (gap != cadence_months)
            throw invariant_error("series '" + label + "': non-uniform spacing at " +
                                  to_string(points[i].date));
    }
}

std::optional<double> TimeSeries::value_at(const Date& d) const {
    for (const auto& p : points)
        if (p.date == d) return p.value;
    return std::nullopt;
}

std::optional<TimePoint> TimeSeries::nearest(const Date& d, int tolerance_months) const {
    std::optional<TimePoint> best;
    int best_gap = tolerance_months + 1;
    for (const auto& p : points) {
        int gap = std::abs(p.date.month_index() - d.month_index());
        if (gap < best_gap) {  // strict: ties keep the earlier point
            best_gap = gap;
            best = p;
        }
    }
    return best;
}

TimeSeries interpolate_semiannual(const TimeSeries& annual) {
    annual.validate();
    if (annual.cadence_months != 12)
        throw input_error("series '" + annual.label + "' is not annual");
    if (annual.points.size() < 2)
        throw input_error("series '" + annual.label + "' needs at least two points");
    TimeSeries out;
    out.label = annual.label;
    out.cadence_months = 6;
    for (std::size_t i = 0; i < annual.points.size(); ++i) {
        out.points.push_back(annual.points[i]);
        if (i + 1 < annual.points.size()) {
            TimePoint mid;
            mid.date = annual.points[i].date.plus_months(6);
            mid.value = 0.5 * (annual.points[i].value + annual.points[i + 1].value);
            out.points.push_back(mid);
        }
    }
    return out;
}

double model_value(double a_r, double g1, double g2, double rho_bar_now, double rho_bar_prev,
                   double v_r) {
    if (rho_bar_now <= 0 || rho_bar_prev <= 0)
        throw invariant_error("model_value: rho_bar must be positive");
    return v_r * a_r * (std::pow(rho_bar_now, g1) + std::pow(rho_bar_prev, g2));
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw input_error("pearson: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw input_error("pearson needs at least two points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0 || syy <= 0) throw invariant_error("pearson: zero variance");
    return sxy / std::sqrt(sxx * syy);
}

std::string to_string(FitDecision d) {
    switch (d) {
        case FitDecision::accept: return "accept";
        case FitDecision::conditional: return "conditional";
        case FitDecision::reject: return "reject";
    }
    return "?";
}

FitDecision decide(double p_r, double accept, double conditional) {
    if (p_r >= accept) return FitDecision::accept;
    if (p_r >= conditional) return FitDecision::conditional;
    return FitDecision::reject;
}

namespace {

struct ShiftedWindow {
    std::vector<double> y;        // vd / V_r
    std::vector<double> ln_now;   // log rho_bar at t - dt
    std::vector<double> ln_prev;  // log rho_bar at t - dt - cadence
    std::vector<Date> dates;
};

struct Objective {
    const ShiftedWindow* w;

    // least squares in a_r given the exponents
    std::pair<double, double> operator()(double g1, double g2) const {
        double mm = 0, ym = 0;
        const std::size_t n = w->y.size();
        std::vector<double> m(n);
        for (std::size_t i = 0; i < n; ++i) {
            m[i] = std::exp(g1 * w->ln_now[i]) + std::exp(g2 * w->ln_prev[i]);
            mm += m[i] * m[i];
            ym += w->y[i] * m[i];
        }
        double a = mm > 0 ? ym / mm : 0.0;
        double sse = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = w->y[i] - a * m[i];
            sse += r * r;
        }
        return {sse, a};
    }
};

// Nelder-Mead on the exponent plane; the best-vertex value never increases.
std::array<double, 2> nelder_mead(const Objective& f, double g1, double g2, double step,
                                  double xtol, int max_iter) {
    struct Vertex {
        std::array<double, 2> x;
        double v;
    };
    auto eval = [&](std::array<double, 2> p) { return Vertex{p, f(p[0], p[1]).first}; };
    std::array<Vertex, 3> simplex = {eval({g1, g2}), eval({g1 + step, g2}),
                                     eval({g1, g2 + step})};
    auto by_value = [](const Vertex& a, const Vertex& b) { return a.v < b.v; };
    std::sort(simplex.begin(), simplex.end(), by_value);
    double best_seen = simplex[0].v;

    for (int it = 0; it < max_iter; ++it) {
        double spread = std::max(
            std::max(std::abs(simplex[1].x[0] - simplex[0].x[0]),
                     std::abs(simplex[2].x[0] - simplex[0].x[0])),
            std::max(std::abs(simplex[1].x[1] - simplex[0].x[1]),
                     std::abs(simplex[2].x[1] - simplex[0].x[1])));
        if (spread < xtol) break;

        std::array<double, 2> centroid = {(simplex[0].x[0] + simplex[1].x[0]) / 2,
                                          (simplex[0].x[1] + simplex[1].x[1]) / 2};
        auto point_at = [&](double coeff) {
            return std::array<double, 2>{centroid[0] + coeff * (centroid[0] - simplex[2].x[0]),
                                         centroid[1] + coeff * (centroid[1] - simplex[2].x[1])};
        };
        Vertex reflected = eval(point_at(1.0));
        if (reflected.v < simplex[0].v) {
            Vertex expanded = eval(point_at(2.0));
            simplex[2] = expanded.v < reflected.v ? expanded : reflected;
        } else if (reflected.v < simplex[1].v) {
            simplex[2] = reflected;
        } else {
            Vertex contracted = eval(point_at(reflected.v < simplex[2].v ? 0.5 : -0.5));
            if (contracted.v < std::min(reflected.v, simplex[2].v)) {
                simplex[2] = contracted;
            } else {
                for (int k = 1; k < 3; ++k) {
                    for (int d = 0; d < 2; ++d)
                        simplex[static_cast<std::size_t>(k)].x[static_cast<std::size_t>(d)] =
                            simplex[0].x[static_cast<std::size_t>(d)] +
                            0.5 * (simplex[static_cast<std::size_t>(k)].x[static_cast<std::size_t>(d)] -
                                   simplex[0].x[static_cast<std::size_t>(d)]);
                    simplex[static_cast<std::size_t>(k)] =
                        eval(simplex[static_cast<std::size_t>(k)].x);
                }
            }
        }
        std::sort(simplex.begin(), simplex.end(), by_value);
        if (simplex[0].v > best_seen + 1e-12 * (1.0 + best_seen))
            throw numeric_error("fit refinement objective increased");
        best_seen = simplex[0].v;
    }
    return simplex[0].x;
}

}  // namespace

NlsmmFit fit(const TimeSeries& rho_semiannual, const TimeSeries& vd, const Date& t_r,
             std::span<const int> dt_grid_months, const FitOptions& opts) {
    rho_semiannual.validate();
    vd.validate();
    if (rho_semiannual.cadence_months != 6)
        throw input_error("density series must be semiannual; interpolate first");
    if (dt_grid_months.empty()) throw input_error("empty shift grid");

    auto rho_ref = rho_semiannual.value_at(t_r);
    if (!rho_ref) throw input_error("reference date " + to_string(t_r) + " missing from density series");
    if (*rho_ref <= 0) throw input_error("density at the reference date must be positive");
    auto v_ref = vd.value_at(t_r);
    if (!v_ref) throw input_error("reference date " + to_string(t_r) + " missing from series '" + vd.label + "'");
    if (*v_ref <= 0) throw input_error("reference value must be positive");
    for (const auto& p : vd.points)
        if (p.value <= 0)
            throw input_error("series '" + vd.label + "' has a non-positive value at " +
                              to_string(p.date));

    std::map<int, double> rho_bar;  // month index -> rho / rho(t_r)
    for (const auto& p : rho_semiannual.points) {
        if (p.value <= 0)
            throw input_error("density series has a non-positive value at " + to_string(p.date));
        rho_bar[p.date.month_index()] = p.value / *rho_ref;
    }

    const int memory_step = vd.cadence_months;
    std::map<int, ShiftedWindow> windows;
    for (int dt : dt_grid_months) {
        ShiftedWindow w;
        for (const auto& p : vd.points) {
            auto now = rho_bar.find(p.date.month_index() - dt);
            auto prev = rho_bar.find(p.date.month_index() - dt - memory_step);
            if (now == rho_bar.end() || prev == rho_bar.end()) continue;
            w.y.push_back(p.value / *v_ref);
            w.ln_now.push_back(std::log(now->second));
            w.ln_prev.push_back(std::log(prev->second));
            w.dates.push_back(p.date);
        }
        if (w.y.size() >= 4) windows.emplace(dt, std::move(w));
    }
    if (windows.empty())
        throw input_error("no shift in the grid leaves at least 4 overlapping points");

    std::size_t min_len = std::numeric_limits<std::size_t>::max(), max_len = 0;
    for (const auto& [dt, w] : windows) {
        min_len = std::min(min_len, w.y.size());
        max_len = std::max(max_len, w.y.size());
    }

    NlsmmFit best;
    bool have_best = false;
    for (int dt : dt_grid_months) {
        auto wit = windows.find(dt);
        if (wit == windows.end()) continue;
        const ShiftedWindow& w = wit->second;
        Objective obj{&w};

        double lo = std::numeric_limits<double>::infinity();
        double bg1 = opts.gamma_lo, bg2 = opts.gamma_lo;
        for (double g1 = opts.gamma_lo; g1 <= opts.gamma_hi + 1e-12; g1 += opts.gamma_step)
            for (double g2 = opts.gamma_lo; g2 <= opts.gamma_hi + 1e-12; g2 += opts.gamma_step) {
                double sse = obj(g1, g2).first;
                if (sse < lo) {
                    lo = sse;
                    bg1 = g1;
                    bg2 = g2;
                }
            }

        double ln_min = std::numeric_limits<double>::infinity(), ln_max = -ln_min;
        for (double v : w.ln_now) { ln_min = std::min(ln_min, v); ln_max = std::max(ln_max, v); }
        for (double v : w.ln_prev) { ln_min = std::min(ln_min, v); ln_max = std::max(ln_max, v); }
        bool degenerate = ln_max - ln_min < 1e-12;
        double g1 = bg1, g2 = bg2;
        if (degenerate) {
            g1 = g2 = 1.0;  // canonical exponents; any pair attains the optimum
        } else {
            auto refined = nelder_mead(obj, bg1, bg2, opts.gamma_step / 2, opts.refine_tol, 800);
            g1 = refined[0];
            g2 = refined[1];
        }
        auto [sse, a] = obj(g1, g2);
        double yy = 0;
        for (double v : w.y) yy += v * v;
        double normalized = yy > 0 ? sse / yy : 0.0;

        if (!have_best || normalized < best.objective) {
            have_best = true;
            best = NlsmmFit{};
            best.a_r = a;
            best.gamma1 = g1;
            best.gamma2 = g2;
            best.delta_t_months = dt;
            best.t_r = t_r;
            best.v_r = *v_ref;
            best.objective = normalized;
            best.degenerate = degenerate;
            best.fitted.clear();
            std::vector<double> fitted_y(w.y.size());
            for (std::size_t i = 0; i < w.y.size(); ++i) {
                double m = std::exp(g1 * w.ln_now[i]) + std::exp(g2 * w.ln_prev[i]);
                fitted_y[i] = a * m;
                best.fitted.push_back(TimePoint{w.dates[i], a * m * *v_ref});
            }
            try {
                best.p_r = pearson(fitted_y, w.y);
            } catch (const invariant_error&) {
                best.p_r = 0.0;  // constant side: correlation undefined
            }
        }
    }

    best.length_bias_warning = min_len != max_len;
    if (best.gamma1 >= 0 && best.gamma2 >= 0 && std::abs(best.gamma1) > 1e-6)
        best.m = best.gamma2 / best.gamma1;
    best.decision = decide(best.p_r, opts.accept_threshold, opts.conditional_threshold);
    return best;
}

WarningSeries warning_series(const TimeSeries& vd_fit, const WarningConfig& cfg) {
    if (cfg.f_max <= 0) throw input_error("warning multiplier f_max must be positive");
    cfg.rv.validate();
    for (const auto& p : cfg.rv.points)
        if (p.value <= 0)
            throw input_error("reference variable '" + cfg.rv.label +
                              "' is not positive at " + to_string(p.date));

    WarningSeries out;
    out.lead_months = std::max(cfg.lead_months, 0);
    bool flagged = false;
    for (const auto& p : vd_fit.points) {
        auto matched = cfg.rv.nearest(p.date, 3);
        if (!matched)
            throw input_error("no reference value within 3 months of " + to_string(p.date));
        WarningPoint wp;
        wp.date = p.date;
        wp.value = p.value;
        wp.threshold = cfg.f_max * matched->value;
        if (!flagged && wp.value > wp.threshold) {
            wp.flag = true;
            flagged = true;
            out.first_warning = p.date.plus_months(-out.lead_months);
        }
        out.points.push_back(wp);
    }
    return out;
}

}  // namespace pin
