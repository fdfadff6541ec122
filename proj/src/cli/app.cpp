#include "app.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <set>
#include <span>

#include "pin/csv.hpp"
#include "pin/instability.hpp"
#include "pin/netcore.hpp"
#include "pin/nlsmm.hpp"
#include "pin/partition.hpp"
#include "pin/percolation.hpp"
#include "pin/spectral.hpp"

namespace pin::cli {

namespace {

using nlohmann::json;

constexpr const char* kDefaultsVersion = "pin-defaults-1";

json to_json(const RunConfig& c) {
    json j;
    j["inputs"] = {{"positions", c.positions},
                   {"deflator", c.deflator_path},
                   {"registry", c.registry_path},
                   {"series", c.series_path}};
    j["base_year"] = c.base_year;
    j["e_th"] = c.e_th;
    j["percolation"] = {{"lo", c.grid_lo},
                        {"hi", c.grid_hi},
                        {"count", c.grid_count},
                        {"delta", c.percolation_delta},
                        {"window", c.percolation_window}};
    j["search"] = {{"samples", c.search_samples}, {"rounds", c.search_rounds},
                   {"lift_level", c.lift_level},  {"years", {c.search_year_lo, c.search_year_hi}},
                   {"top_k", c.top_k},            {"n_max", c.search_n_max},
                   {"class", c.search_class}};
    j["fit"] = {{"dt_grid", c.dt_grid},
                {"reference", c.fit_reference},
                {"reference_overrides", c.fit_reference_overrides},
                {"targets", c.fit_targets},
                {"density_class", c.fit_density_class},
                {"gdp_series", c.gdp_series},
                {"accept", c.accept_threshold},
                {"conditional", c.conditional_threshold}};
    j["warn"] = {{"derivative", c.warn_derivative}, {"rv", c.warn_rv}, {"f_max", c.warn_f_max}};
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir;
    return j;
}

}  // namespace

std::uint64_t RunConfig::config_hash() const {
    std::string dump = to_json(*this).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : dump) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open config '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw input_error("config '" + path + "': " + e.what());
    }
    RunConfig c;
    try {
        if (j.contains("inputs")) {
            const auto& i = j["inputs"];
            if (i.contains("positions"))
                c.positions = i["positions"].get<std::map<std::string, std::string>>();
            if (i.contains("deflator")) c.deflator_path = i["deflator"];
            if (i.contains("registry")) c.registry_path = i["registry"];
            if (i.contains("series")) c.series_path = i["series"];
        }
        if (j.contains("base_year")) c.base_year = j["base_year"];
        if (j.contains("e_th"))
            for (const auto& [k, v] : j["e_th"].items()) c.e_th[k] = v.get<double>();
        if (j.contains("percolation")) {
            const auto& p = j["percolation"];
            if (p.contains("lo")) c.grid_lo = p["lo"];
            if (p.contains("hi")) c.grid_hi = p["hi"];
            if (p.contains("count")) c.grid_count = p["count"];
            if (p.contains("delta")) c.percolation_delta = p["delta"];
            if (p.contains("window")) c.percolation_window = p["window"];
        }
        if (j.contains("search")) {
            const auto& s = j["search"];
            if (s.contains("samples")) c.search_samples = s["samples"];
            if (s.contains("rounds")) c.search_rounds = s["rounds"];
            if (s.contains("lift_level")) c.lift_level = s["lift_level"];
            if (s.contains("years")) {
                c.search_year_lo = s["years"].at(0);
                c.search_year_hi = s["years"].at(1);
            }
            if (s.contains("top_k")) c.top_k = s["top_k"];
            if (s.contains("n_max")) c.search_n_max = s["n_max"];
            if (s.contains("class")) c.search_class = s["class"];
        }
        if (j.contains("fit")) {
            const auto& f = j["fit"];
            if (f.contains("dt_grid")) c.dt_grid = f["dt_grid"].get<std::vector<int>>();
            if (f.contains("reference")) c.fit_reference = f["reference"];
            if (f.contains("reference_overrides"))
                c.fit_reference_overrides =
                    f["reference_overrides"].get<std::map<std::string, std::string>>();
            if (f.contains("targets")) c.fit_targets = f["targets"].get<std::vector<std::string>>();
            if (f.contains("density_class")) c.fit_density_class = f["density_class"];
            if (f.contains("gdp_series")) c.gdp_series = f["gdp_series"];
            if (f.contains("accept")) c.accept_threshold = f["accept"];
            if (f.contains("conditional")) c.conditional_threshold = f["conditional"];
        }
        if (j.contains("warn")) {
            const auto& w = j["warn"];
            if (w.contains("derivative")) c.warn_derivative = w["derivative"];
            if (w.contains("rv")) c.warn_rv = w["rv"];
            if (w.contains("f_max")) c.warn_f_max = w["f_max"];
        }
        if (j.contains("seed")) c.seed = j["seed"];
        if (j.contains("output_dir")) c.output_dir = j["output_dir"];
    } catch (const json::exception& e) {
        throw input_error("config '" + path + "': " + e.what());
    }
    return c;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Inputs {
    CountryRegistry registry;
    std::map<int, double> deflator;
    // class -> deflated records, in config order E, LD, SD when present
    std::map<std::string, std::vector<PositionRecord>> records;
    std::map<std::string, TimeSeries> series;
};

Inputs load_inputs(const RunConfig& cfg, bool need_positions, bool need_series) {
    Inputs in;
    if (cfg.registry_path.empty()) throw input_error("config: inputs.registry is required");
    in.registry = csv::read_registry(cfg.registry_path);
    if (need_positions) {
        if (cfg.deflator_path.empty()) throw input_error("config: inputs.deflator is required");
        if (cfg.positions.empty()) throw input_error("config: inputs.positions is required");
        in.deflator = csv::read_deflator(cfg.deflator_path);
        for (const auto& [cls, path] : cfg.positions) {
            parse_asset_class(cls);  // validates the key
            auto raw = csv::read_positions(path, in.registry);
            in.records[cls] = deflate(raw, in.deflator, cfg.base_year);
        }
    }
    if (need_series) {
        if (cfg.series_path.empty()) throw input_error("config: inputs.series is required");
        in.series = csv::read_series(cfg.series_path);
    }
    return in;
}

std::vector<int> years_of(const std::vector<PositionRecord>& records) {
    std::set<int> years;
    for (const auto& r : records) years.insert(r.year);
    return {years.begin(), years.end()};
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const RunConfig& cfg, const std::string& header) {
        out_.open(path);
        if (!out_) throw input_error("cannot write '" + path.string() + "'");
        char hash[32];
        std::snprintf(hash, sizeof hash, "%016llx",
                      static_cast<unsigned long long>(cfg.config_hash()));
        out_ << "# config_hash=" << hash << ",seed=" << cfg.seed
             << ",defaults=" << kDefaultsVersion << "\n";
        out_ << header << "\n";
    }
    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i)
            out_ << (i ? "," : "") << fields[i];
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

json meta_of(const RunConfig& cfg) {
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(cfg.config_hash()));
    return json{{"config_hash", hash}, {"seed", cfg.seed}, {"defaults", kDefaultsVersion}};
}

struct BuiltClass {
    std::string cls;
    std::vector<int> years;
    std::map<int, SnapshotBuild> builds;  // only years with a valid core
    std::map<int, std::string> failures;  // years without one
    std::map<int, Money> raw_volume;      // all years
};

std::vector<BuiltClass> build_all(const RunConfig& cfg, const Inputs& in, bool tolerate_failures) {
    std::vector<BuiltClass> out;
    for (const std::string cls : {"E", "LD", "SD"}) {
        auto it = in.records.find(cls);
        if (it == in.records.end()) continue;
        BuiltClass built;
        built.cls = cls;
        built.years = years_of(it->second);
        double e_th = cfg.e_th.count(cls) ? cfg.e_th.at(cls) : 52.0;
        for (int year : built.years) {
            try {
                SnapshotBuild b = build_snapshot(it->second, year, parse_asset_class(cls), e_th,
                                                 in.registry.size());
                built.raw_volume[year] = b.raw_volume;
                built.builds.emplace(year, std::move(b));
            } catch (const invariant_error& e) {
                if (!tolerate_failures) throw;
                built.failures[year] = e.what();
                built.raw_volume[year] =
                    aggregate_year(it->second, year, in.registry.size()).raw_volume;
            }
        }
        out.push_back(std::move(built));
    }
    return out;
}

std::filesystem::path ensure_outdir(const RunConfig& cfg) {
    std::filesystem::path dir(cfg.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw input_error("cannot create output directory '" + cfg.output_dir + "'");
    return dir;
}

int cmd_build(const RunConfig& cfg) {
    Inputs in = load_inputs(cfg, true, false);
    auto classes = build_all(cfg, in, false);
    auto dir = ensure_outdir(cfg);

    // total raw volume per year across the provided classes, for the fractions
    std::map<int, Money> total_raw, total_core;
    for (const auto& c : classes)
        for (int y : c.years) {
            total_raw[y] += c.raw_volume.at(y);
            total_core[y] += c.builds.at(y).snapshot.volume();
        }

    CsvWriter w(dir / "stats.csv", cfg,
                "class,year,n,m,density,volume,raw_volume,f_v,f_v_raw,dropped_negative");
    for (const auto& c : classes)
        for (int y : c.years) {
            const auto& b = c.builds.at(y);
            w.row({c.cls, std::to_string(y), std::to_string(b.snapshot.size()),
                   std::to_string(b.snapshot.edge_count()), fmt(edge_density(b.snapshot)),
                   fmt(b.snapshot.volume()), fmt(b.raw_volume),
                   fmt(b.snapshot.volume() / total_core.at(y)),
                   fmt(b.raw_volume / total_raw.at(y)), std::to_string(b.dropped_negative)});

            const PinSnapshot& s = b.snapshot;
            CsvWriter edges(dir / ("snapshot_" + c.cls + "_" + std::to_string(y) + ".csv"),
                            cfg, "source_iso,target_iso,weight");
            for (int i = 0; i < s.size(); ++i)
                for (int j = 0; j < s.size(); ++j)
                    if (s.weights(i, j) > 0)
                        edges.row({in.registry.at(s.node_ids[static_cast<std::size_t>(i)]).iso,
                                   in.registry.at(s.node_ids[static_cast<std::size_t>(j)]).iso,
                                   fmt(s.weights(i, j))});
        }
    return 0;
}

int cmd_percolate(const RunConfig& cfg) {
    Inputs in = load_inputs(cfg, true, false);
    auto dir = ensure_outdir(cfg);
    GridSpec grid{cfg.grid_lo, cfg.grid_hi, cfg.grid_count};

    CsvWriter points(dir / "percolation_points.csv", cfg, "class,year,found,e_p");
    for (const std::string cls : {"E", "LD", "SD"}) {
        auto it = in.records.find(cls);
        if (it == in.records.end()) continue;
        for (int year : years_of(it->second)) {
            PercolationCurve curve =
                percolation_scan(it->second, year, in.registry.size(), grid);
            CsvWriter curve_file(dir / ("curve_" + cls + "_" + std::to_string(year) + ".csv"),
                                 cfg, "e_th,n,m,volume,density");
            for (const auto& p : curve.points)
                curve_file.row({fmt(p.e_th), std::to_string(p.n_nodes),
                                std::to_string(p.m_edges), fmt(p.volume), fmt(p.density)});
            auto point =
                detect_percolation_point(curve, cfg.percolation_delta, cfg.percolation_window);
            points.row({cls, std::to_string(year), point ? "1" : "0",
                        point ? fmt(point->e_p) : ""});
        }
    }
    return 0;
}

int cmd_spectral(const RunConfig& cfg) {
    Inputs in = load_inputs(cfg, true, false);
    auto classes = build_all(cfg, in, false);
    auto dir = ensure_outdir(cfg);

    CsvWriter table(dir / "spectral.csv", cfg,
                    "class,year,n,lambda1,lambda2,delta_lambda,f_small,cut_depth,cut_ratio,w_cut");
    CsvWriter sections(dir / "sections.csv", cfg, "class,year,iso,in_degree,out_degree");
    for (const auto& c : classes)
        for (int y : c.years) {
            const PinSnapshot& s = c.builds.at(y).snapshot;
            SpectralSummary summary = spectrum_summary(s);
            Bisection b = fiedler_bisection(summary);
            CutMetrics m = cut_metrics(s, b);
            table.row({c.cls, std::to_string(y), std::to_string(s.size()), fmt(summary.lambda1),
                       fmt(summary.lambda2), fmt(summary.delta_lambda), fmt(b.f_small),
                       fmt(m.cut_depth), fmt(m.cut_ratio), fmt(m.w_cut)});
            const auto& small = b.s_plus.size() <= b.s_minus.size() ? b.s_plus : b.s_minus;
            NodeMeasures nm = node_measures(s);
            for (int pos : small)
                sections.row({c.cls, std::to_string(y),
                              in.registry.at(s.node_ids[static_cast<std::size_t>(pos)]).iso,
                              std::to_string(nm.in_degree[static_cast<std::size_t>(pos)]),
                              std::to_string(nm.out_degree[static_cast<std::size_t>(pos)])});
        }
    return 0;
}

int cmd_baseline(const RunConfig& cfg) {
    Inputs in = load_inputs(cfg, true, false);
    auto classes = build_all(cfg, in, false);
    auto dir = ensure_outdir(cfg);

    CsvWriter w(dir / "baseline.csv", cfg,
                "class,year,method,samples,mean_cut_depth,ci_lo,ci_hi,fiedler_cut_depth");
    for (const auto& c : classes)
        for (int y : c.years) {
            const PinSnapshot& s = c.builds.at(y).snapshot;
            Bisection b = fiedler_bisection(spectrum_summary(s));
            double fiedler_depth = cut_metrics(s, b).cut_depth;
            int small = static_cast<int>(std::min(b.s_plus.size(), b.s_minus.size()));
            for (auto method : {BaselineMethod::balanced, BaselineMethod::uniform_size,
                                BaselineMethod::fiedler_like}) {
                BaselineReport r = random_baseline(s, method, cfg.search_samples, cfg.seed,
                                                   method == BaselineMethod::fiedler_like
                                                       ? std::optional<int>(small)
                                                       : std::nullopt);
                w.row({c.cls, std::to_string(y), to_string(method), std::to_string(r.samples),
                       fmt(r.mean_cut_depth), fmt(r.ci_lo), fmt(r.ci_hi), fmt(fiedler_depth)});
            }
        }
    return 0;
}

int cmd_search(const RunConfig& cfg) {
    Inputs in = load_inputs(cfg, true, false);
    auto it = in.records.find(cfg.search_class);
    if (it == in.records.end())
        throw input_error("no positions configured for class '" + cfg.search_class + "'");
    double e_th = cfg.e_th.count(cfg.search_class) ? cfg.e_th.at(cfg.search_class) : 52.0;

    std::vector<PinSnapshot> series;
    for (int year : years_of(it->second)) {
        if (year < cfg.search_year_lo || year > cfg.search_year_hi) continue;
        series.push_back(build_snapshot(it->second, year, parse_asset_class(cfg.search_class),
                                        e_th, in.registry.size())
                             .snapshot);
    }
    if (series.empty()) throw input_error("no snapshots inside the configured search years");

    LiftCriterion crit{cfg.lift_level, LiftCriterion::Mode::partial};
    auto exhaustive = exhaustive_search(series, std::min(3, cfg.search_n_max), crit);

    json out;
    out["meta"] = meta_of(cfg);
    out["years"] = {series.front().year, series.back().year};
    out["lift_level"] = cfg.lift_level;
    out["exhaustive"] = json::array();
    std::vector<NodeId> exclude;
    for (const auto& f : exhaustive) {
        json g;
        g["n"] = f.group.size();
        g["countries"] = json::array();
        for (NodeId id : f.group) g["countries"].push_back(in.registry.at(id).iso);
        g["lifted_years"] = f.lifted_years;
        out["exhaustive"].push_back(g);
        if (f.group.size() == 1) exclude.push_back(f.group.front());
    }

    out["two_step"] = json::array();
    for (int n = 4; n <= cfg.search_n_max; ++n) {
        SearchReport report = two_step_search(series, n, cfg.search_samples, cfg.search_rounds,
                                              crit, exclude, cfg.seed, cfg.top_k);
        json r;
        r["n"] = n;
        r["p_lambda"] = report.p_lambda;
        r["samples"] = report.samples;
        r["rounds"] = report.rounds;
        r["ranking"] = json::array();
        for (const auto& [id, freq] : report.ranking)
            r["ranking"].push_back({{"iso", in.registry.at(id).iso},
                                    {"name", in.registry.at(id).name},
                                    {"frequency", freq}});
        if (auto q = ofc_quotient(report, in.registry, series)) {
            r["q_ofc"] = q->q;
            r["f_ofc_found"] = q->f_found;
            r["f_ofc_network"] = q->f_network;
            r["q_ofc_distinct"] = q->q_distinct;
        }
        out["two_step"].push_back(r);
    }

    auto dir = ensure_outdir(cfg);
    std::ofstream f(dir / "search.json");
    if (!f) throw input_error("cannot write search.json");
    f << out.dump(2) << "\n";
    return 0;
}

TimeSeries density_series(const RunConfig& cfg, const Inputs& in) {
    auto it = in.records.find(cfg.fit_density_class);
    if (it == in.records.end())
        throw input_error("no positions configured for class '" + cfg.fit_density_class + "'");
    double e_th =
        cfg.e_th.count(cfg.fit_density_class) ? cfg.e_th.at(cfg.fit_density_class) : 52.0;
    TimeSeries annual;
    annual.label = "rho_p_" + cfg.fit_density_class;
    annual.cadence_months = 12;
    for (int year : years_of(it->second)) {
        PinSnapshot s = build_snapshot(it->second, year, parse_asset_class(cfg.fit_density_class),
                                       e_th, in.registry.size())
                            .snapshot;
        annual.points.push_back(TimePoint{Date{year, 1}, edge_density(s)});
    }
    return interpolate_semiannual(annual);
}

Date reference_for(const RunConfig& cfg, const std::string& target) {
    auto it = cfg.fit_reference_overrides.find(target);
    std::string str = it != cfg.fit_reference_overrides.end() ? it->second : cfg.fit_reference;
    if (str.empty())
        throw input_error("config: fit.reference (YYYY-MM) is required for '" + target + "'");
    return parse_date(str);
}

json fit_one(const RunConfig& cfg, const Inputs& in, const TimeSeries& rho,
             const std::string& target) {
    auto sit = in.series.find(target);
    if (sit == in.series.end())
        throw input_error("series '" + target + "' not found in " + cfg.series_path);
    FitOptions opts;
    opts.accept_threshold = cfg.accept_threshold;
    opts.conditional_threshold = cfg.conditional_threshold;
    NlsmmFit f = fit(rho, sit->second, reference_for(cfg, target), cfg.dt_grid, opts);

    json r;
    r["series"] = target;
    r["a_r"] = f.a_r;
    r["gamma1"] = f.gamma1;
    r["gamma2"] = f.gamma2;
    if (f.m) r["m"] = *f.m; else r["m"] = nullptr;
    r["delta_t"] = f.delta_t_months;
    r["p_r"] = f.p_r;
    r["decision"] = to_string(f.decision);
    r["reference"] = {{"date", to_string(f.t_r)}, {"value", f.v_r}};
    r["objective"] = f.objective;
    r["degenerate"] = f.degenerate;
    r["length_bias_warning"] = f.length_bias_warning;

    // value as a multiple of world-GDP in mid-2008, when the series is available
    if (!cfg.gdp_series.empty() && in.series.count(cfg.gdp_series)) {
        const TimeSeries& gdp = in.series.at(cfg.gdp_series);
        auto v = sit->second.nearest(Date{2008, 7}, 3);
        auto g8 = gdp.nearest(Date{2008, 7}, 6);
        auto g9 = gdp.nearest(Date{2009, 7}, 6);
        if (v && g8 && g9 && g8->date != g9->date)
            r["f_gdp_ref"] = v->value / (0.5 * (g8->value + g9->value));
    }
    return r;
}

int cmd_fit(const RunConfig& cfg) {
    Inputs in = load_inputs(cfg, true, true);
    if (cfg.fit_targets.empty()) throw input_error("config: fit.targets is required");
    TimeSeries rho = density_series(cfg, in);

    json out;
    out["meta"] = meta_of(cfg);
    out["density_series"] = rho.label;
    out["fits"] = json::array();
    for (const auto& target : cfg.fit_targets) out["fits"].push_back(fit_one(cfg, in, rho, target));

    auto dir = ensure_outdir(cfg);
    std::ofstream f(dir / "fit.json");
    if (!f) throw input_error("cannot write fit.json");
    f << out.dump(2) << "\n";
    return 0;
}

int cmd_warn(const RunConfig& cfg) {
    Inputs in = load_inputs(cfg, true, true);
    if (cfg.warn_derivative.empty() || cfg.warn_rv.empty())
        throw input_error("config: warn.derivative and warn.rv are required");
    auto sit = in.series.find(cfg.warn_derivative);
    if (sit == in.series.end())
        throw input_error("series '" + cfg.warn_derivative + "' not found");
    auto rit = in.series.find(cfg.warn_rv);
    if (rit == in.series.end()) throw input_error("series '" + cfg.warn_rv + "' not found");

    TimeSeries rho = density_series(cfg, in);
    NlsmmFit f = fit(rho, sit->second, reference_for(cfg, cfg.warn_derivative), cfg.dt_grid);

    TimeSeries fitted;
    fitted.label = cfg.warn_derivative + "_fit";
    fitted.cadence_months = sit->second.cadence_months;
    fitted.points = f.fitted;

    WarningConfig wc;
    wc.f_max = cfg.warn_f_max;
    wc.rv = rit->second;
    wc.derivative = cfg.warn_derivative;
    wc.lead_months = std::max(f.delta_t_months, 0);
    WarningSeries series = warning_series(fitted, wc);

    auto dir = ensure_outdir(cfg);
    CsvWriter w(dir / "warning.csv", cfg, "date,value,threshold,flag");
    for (const auto& p : series.points)
        w.row({to_string(p.date), fmt(p.value), fmt(p.threshold), p.flag ? "1" : "0"});

    json out;
    out["meta"] = meta_of(cfg);
    out["derivative"] = cfg.warn_derivative;
    out["rv"] = cfg.warn_rv;
    out["f_max"] = cfg.warn_f_max;
    out["lead_months"] = series.lead_months;
    out["fit"] = {{"gamma1", f.gamma1}, {"gamma2", f.gamma2}, {"delta_t", f.delta_t_months},
                  {"p_r", f.p_r},       {"decision", to_string(f.decision)}};
    if (series.first_warning) out["first_warning"] = to_string(*series.first_warning);
    std::ofstream jf(dir / "warning.json");
    if (!jf) throw input_error("cannot write warning.json");
    jf << out.dump(2) << "\n";
    return 0;
}

int cmd_distributions(const RunConfig& cfg) {
    Inputs in = load_inputs(cfg, true, false);
    auto classes = build_all(cfg, in, false);
    auto dir = ensure_outdir(cfg);

    CsvWriter w(dir / "distributions.csv", cfg, "class,year,kind,x,p");
    for (const auto& c : classes)
        for (int y : c.years) {
            const PinSnapshot& s = c.builds.at(y).snapshot;
            NodeMeasures nm = node_measures(s);
            auto emit = [&](const char* kind, std::vector<double> values) {
                for (const auto& [x, p] : eccdf(std::move(values)))
                    w.row({c.cls, std::to_string(y), kind, fmt(x), fmt(p)});
            };
            emit("strength", nm.total_strength);
            Eigen::VectorXd centrality = eigenvector_centrality(s, 1e-12, 200000);
            emit("centrality", {centrality.data(), centrality.data() + centrality.size()});
            std::vector<double> weights;
            for (int i = 0; i < s.size(); ++i)
                for (int j = 0; j < s.size(); ++j)
                    if (s.weights(i, j) > 0) weights.push_back(s.weights(i, j));
            emit("edge_weight", std::move(weights));
        }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& argv) {
    CLI::App app{"Cross-border portfolio investment network analytics"};
    app.name("pin");
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed_flag;
    std::optional<std::string> out_flag;
    std::optional<int> samples_flag;
    app.add_option("-c,--config", config_path, "JSON config file");
    app.add_option("--seed", seed_flag, "override the run seed");
    app.add_option("-o,--output", out_flag, "override the output directory");
    app.add_option("--samples", samples_flag, "override the sample count");

    struct Sub {
        const char* name;
        const char* help;
        int (*fn)(const RunConfig&);
    };
    const Sub subs[] = {
        {"build", "snapshots and network statistics table", cmd_build},
        {"percolate", "threshold sweeps and percolation points", cmd_percolate},
        {"spectral", "algebraic connectivity and Fiedler sections", cmd_spectral},
        {"baseline", "random-bisection cut-depth baselines", cmd_baseline},
        {"search", "node-removal instability search", cmd_search},
        {"fit", "derivative proliferation model fits", cmd_fit},
        {"warn", "dynamic warning thresholds", cmd_warn},
        {"distributions", "cumulative distribution data", cmd_distributions},
    };
    std::map<std::string, int (*)(const RunConfig&)> dispatch;
    for (const auto& s : subs) {
        app.add_subcommand(s.name, s.help)->fallthrough();
        dispatch[s.name] = s.fn;
    }

    std::vector<const char*> cargv;
    cargv.push_back("pin");
    for (const auto& a : argv) cargv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (seed_flag) cfg.seed = *seed_flag;
        if (out_flag) cfg.output_dir = *out_flag;
        if (samples_flag) cfg.search_samples = *samples_flag;
        for (const auto& [name, fn] : dispatch)
            if (app.got_subcommand(name)) return fn(cfg);
        std::fprintf(stderr, "pin: no subcommand\n");
        return 1;
    } catch (const input_error& e) {
        std::fprintf(stderr, "pin: input error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "pin: error: %s\n", e.what());
        return 2;
    }
}

}  // namespace pin::cli
