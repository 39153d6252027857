#include "contagion/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "contagion/harness.hpp"
#include "contagion/io.hpp"
#include "contagion/netstats.hpp"
#include "contagion/nullmodels.hpp"
#include "contagion/parallel.hpp"
#include "contagion/rng.hpp"

namespace contagion {

namespace fs = std::filesystem;
using nlohmann::json;

nlohmann::json profile_to_json(const CalibrationProfile& p) {
    return json{
        {"n_banks", p.n_banks},
        {"asset_powerlaw_exponent", p.asset_powerlaw_exponent},
        {"liquid_powerlaw_exponent", p.liquid_powerlaw_exponent},
        {"asset_range", {p.asset_range.lo.euros(), p.asset_range.hi.euros()}},
        {"liquid_range", {p.liquid_range.lo.euros(), p.liquid_range.hi.euros()}},
        {"typical_leverage", p.typical_leverage},
        {"leverage_dispersion", p.leverage_dispersion},
        {"low_leverage_fraction", p.low_leverage_fraction},
        {"low_leverage_cap", p.low_leverage_cap},
        {"target_assortativity", p.target_assortativity},
        {"assortativity_tolerance", p.assortativity_tolerance},
        {"target_mean_degree", p.target_mean_degree},
        {"hub_fraction", p.hub_fraction},
        {"core_density", p.core_density},
        {"spoke_degree_exponent", p.spoke_degree_exponent},
        {"hub_attraction", p.hub_attraction},
        {"spoke_lending_probability", p.spoke_lending_probability},
        {"reciprocity", p.reciprocity},
        {"borrower_fraction", p.borrower_fraction},
        {"interbank_share", p.interbank_share},
        {"weight_dispersion", p.weight_dispersion},
        {"loan_cap_fraction", p.loan_cap_fraction},
        {"max_retries", p.max_retries},
        {"rng_seed", p.rng_seed},
    };
}

CalibrationProfile profile_from_json(const nlohmann::json& j, CalibrationProfile p) {
    if (!j.is_object()) throw std::invalid_argument("profile must be a JSON object");
    auto range = [](const json& v, const std::string& key) {
        if (!v.is_array() || v.size() != 2) throw std::invalid_argument(key + " must be [lo, hi] in euros");
        return CurrencyRange{Money::from_euros(v[0].get<double>()), Money::from_euros(v[1].get<double>())};
    };
    for (const auto& [key, v] : j.items()) {
        if (key == "n_banks") p.n_banks = v.get<std::size_t>();
        else if (key == "asset_powerlaw_exponent") p.asset_powerlaw_exponent = v.get<double>();
        else if (key == "liquid_powerlaw_exponent") p.liquid_powerlaw_exponent = v.get<double>();
        else if (key == "asset_range") p.asset_range = range(v, key);
        else if (key == "liquid_range") p.liquid_range = range(v, key);
        else if (key == "typical_leverage") p.typical_leverage = v.get<double>();
        else if (key == "leverage_dispersion") p.leverage_dispersion = v.get<double>();
        else if (key == "low_leverage_fraction") p.low_leverage_fraction = v.get<double>();
        else if (key == "low_leverage_cap") p.low_leverage_cap = v.get<double>();
        else if (key == "target_assortativity") p.target_assortativity = v.get<double>();
        else if (key == "assortativity_tolerance") p.assortativity_tolerance = v.get<double>();
        else if (key == "target_mean_degree") p.target_mean_degree = v.get<double>();
        else if (key == "hub_fraction") p.hub_fraction = v.get<double>();
        else if (key == "core_density") p.core_density = v.get<double>();
        else if (key == "spoke_degree_exponent") p.spoke_degree_exponent = v.get<double>();
        else if (key == "hub_attraction") p.hub_attraction = v.get<double>();
        else if (key == "spoke_lending_probability") p.spoke_lending_probability = v.get<double>();
        else if (key == "reciprocity") p.reciprocity = v.get<double>();
        else if (key == "borrower_fraction") p.borrower_fraction = v.get<double>();
        else if (key == "interbank_share") p.interbank_share = v.get<double>();
        else if (key == "weight_dispersion") p.weight_dispersion = v.get<double>();
        else if (key == "loan_cap_fraction") p.loan_cap_fraction = v.get<double>();
        else if (key == "max_retries") p.max_retries = v.get<std::size_t>();
        else if (key == "rng_seed") p.rng_seed = v.get<std::uint64_t>();
        else throw std::invalid_argument("unknown profile key '" + key + "'");
    }
    p.validate();
    return p;
}

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) { return format_double(v); }
std::string fmt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }
std::string fmt(std::size_t v) { return std::to_string(v); }

struct Settings {
    std::uint64_t seed = 0;
    std::string out = "out";
    std::string config_path;
    int threads = -1;
    std::string balance;
    std::string exposures;
    std::size_t quarters = 1;

    json config = json::object();  // parsed --config
    CalibrationProfile profile;

    unsigned thread_count() const {
        if (threads >= 0) return resolve_threads(static_cast<unsigned>(threads));
        if (const char* env = std::getenv("CONTAGION_LAB_THREADS")) {
            try {
                return resolve_threads(static_cast<unsigned>(std::stoul(env)));
            } catch (const std::exception&) {
                throw UsageError("CONTAGION_LAB_THREADS must be a non-negative integer");
            }
        }
        return resolve_threads(0);
    }
};

// A setting from the command line when given, else from --config, else the default.
template <class T>
T pick(const CLI::Option* opt, const T& cli_value, const json& config, const char* key, const T& fallback) {
    if (opt && opt->count() > 0) return cli_value;
    if (config.contains(key)) return config.at(key).get<T>();
    return fallback;
}

std::vector<double> pick_grid(const CLI::Option* opt, const std::string& cli_value, const json& config,
                              const char* key, const std::string& fallback) {
    return parse_grid(pick<std::string>(opt, cli_value, config, key, fallback));
}

struct Unit {
    BankingSystem system;
    fs::path dir;
    std::map<std::string, std::string> digests;
    std::optional<CalibrationProfile> profile;
};

std::vector<Unit> resolve_inputs(const Settings& s) {
    if (s.balance.empty() != s.exposures.empty()) {
        throw UsageError("--balance and --exposures must be given together");
    }
    std::vector<Unit> units;
    const fs::path out(s.out);
    if (!s.balance.empty()) {
        if (s.quarters != 1) throw UsageError("--quarters applies to synthetic systems only");
        Unit u{load_system(s.balance, s.exposures), out, {}, std::nullopt};
        u.digests[s.balance] = sha256_file(s.balance);
        u.digests[s.exposures] = sha256_file(s.exposures);
        units.push_back(std::move(u));
        return units;
    }
    for (std::size_t q = 0; q < s.quarters; ++q) {
        CalibrationProfile p = s.profile;
        p.rng_seed = derive_seed(s.seed, Stream::system, {q});
        fs::path dir = s.quarters == 1 ? out : out / ("q" + std::to_string(q + 1));
        units.push_back(Unit{generate_system(p), dir, {}, p});
    }
    return units;
}

void write_manifest(const Unit& u, const Settings& s, const std::string& command, json config) {
    RunManifest m;
    m.command = command;
    config["threads"] = s.thread_count();
    if (u.profile) config["profile"] = profile_to_json(*u.profile);
    m.config = std::move(config);
    m.rng_seed = s.seed;
    m.input_digests = u.digests;
    m.tool_version = kToolVersion;
    m.timestamp = utc_timestamp();
    m.write(u.dir);
}

void write_cycles(const fs::path& path, const CycleCensus& census, const TriadCensus& triads) {
    CsvTable t{{"motif", "count"}, {}};
    for (std::size_t len = 3; len <= census.max_len; ++len) t.add({"cycle_" + std::to_string(len), fmt(census.count(len))});
    t.add({"cycle_triad", fmt(triads.cycle_triads)});
    t.add({"source_sink_triad", fmt(triads.source_sink_triads)});
    write_csv(path, t);
}

void run_stats(const Unit& u, bool cycles, std::size_t max_len) {
    const auto& sys = u.system;
    const auto views = AdjacencyViews::from_exposures(sys.exposures());
    const auto n = sys.size();
    const auto cl = clustering(views);
    const auto r = assortativity(views);
    std::size_t max_degree = 0;
    for (BankIndex i = 0; i < n; ++i) max_degree = std::max(max_degree, views.degree(i));
    std::size_t low = 0;
    for (BankIndex i = 0; i < n; ++i) low += leverage(sys, i) < 4.6 ? 1 : 0;

    CsvTable summary{{"metric", "value"}, {}};
    summary.add({"banks", fmt(n)});
    summary.add({"directed_links", fmt(views.edge_count())});
    summary.add({"undirected_links", fmt(views.undirected_edge_count())});
    summary.add({"mean_degree", fmt(mean_degree(views))});
    summary.add({"max_degree", fmt(max_degree)});
    summary.add({"assortativity", fmt(r)});
    summary.add({"average_clustering", fmt(cl.average)});
    summary.add({"banks_leverage_below_4.6", fmt(low)});
    summary.add({"total_assets", format_money(sys.total_system_assets())});
    summary.add({"interbank_volume", format_money(sys.exposures().total_volume())});
    write_csv(u.dir / "summary.csv", summary);

    const auto ccdfs = degree_ccdfs(views);
    CsvTable deg{{"kind", "degree", "ccdf"}, {}};
    auto add_series = [](CsvTable& t, const char* kind, const CcdfSeries& series) {
        for (const auto& pt : series) t.add({kind, fmt(pt.value), fmt(pt.probability)});
    };
    add_series(deg, "in", ccdfs.in);
    add_series(deg, "out", ccdfs.out);
    add_series(deg, "undirected", ccdfs.undirected);
    write_csv(u.dir / "degree_ccdf.csv", deg);

    CsvTable clus{{"bank_id", "degree", "clustering"}, {}};
    for (BankIndex i = 0; i < n; ++i) clus.add({sys.sheet(i).bank_id, fmt(views.degree(i)), fmt(cl.local[i])});
    write_csv(u.dir / "clustering.csv", clus);

    std::vector<double> assets, liquid, lev;
    for (BankIndex i = 0; i < n; ++i) {
        assets.push_back(sys.sheet(i).total_assets.euros());
        liquid.push_back(sys.sheet(i).liquid_assets.euros());
        lev.push_back(leverage(sys, i));
    }
    CsvTable bal{{"quantity", "value", "ccdf"}, {}};
    add_series(bal, "total_assets", empirical_ccdf(assets));
    add_series(bal, "liquid_assets", empirical_ccdf(liquid));
    add_series(bal, "leverage", empirical_ccdf(lev));
    write_csv(u.dir / "balance_ccdf.csv", bal);

    if (cycles) write_cycles(u.dir / "cycles.csv", directed_cycle_census(views, max_len), triad_motif_census(views));
}

void add_metrics(CsvTable& t, const std::string& label, const EnsembleReport& rep, std::size_t large) {
    t.add({label, fmt(rep.metrics.contagion_probability), fmt(rep.metrics.conditional_extent),
           fmt(rep.metrics.max_extent), fmt(rep.probability_more_than(large))});
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Interbank contagion stress-testing lab", "contagion_lab"};
    app.require_subcommand(1);
    app.fallthrough();
    Settings s;
    app.add_option("--seed", s.seed, "Master 64-bit seed");
    app.add_option("--out", s.out, "Output directory")->capture_default_str();
    app.add_option("--config", s.config_path, "JSON config (profile and sweep settings)");
    app.add_option("--threads", s.threads, "Worker threads (0 = all cores; default $CONTAGION_LAB_THREADS)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--balance", s.balance, "Balance-sheet CSV");
    app.add_option("--exposures", s.exposures, "Exposure CSV");
    app.add_option("--quarters", s.quarters, "Independent synthetic systems (out/q1, out/q2, ...)")
        ->check(CLI::PositiveNumber);

    auto* synth = app.add_subcommand("synth", "Generate a synthetic banking system");

    auto* stats = app.add_subcommand("stats", "Network and balance-sheet statistics");
    bool stats_cycles = false;
    std::size_t max_len = 5;
    stats->add_flag("--cycles", stats_cycles, "Also run the directed cycle and triad census");
    stats->add_option("--max-cycle-length", max_len)->check(CLI::Range(3, 5));

    auto* stress = app.add_subcommand("stress", "Stress-test sweeps");
    stress->require_subcommand(1);
    stress->fallthrough();
    std::size_t large = 10;
    auto* large_opt = stress->add_option("--large", large, "Threshold for the P(|affected| > k) column");
    auto* st_cp = stress->add_subcommand("counterparty", "Every bank as seed, counterparty losses");
    auto* st_ro = stress->add_subcommand("rollover", "Every bank as seed, liquidity hoarding");
    std::string f_grid;
    double f_single = 0.0;
    auto* f_opt = st_ro->add_option("--f", f_single, "Liquid fraction of illiquid assets")->check(CLI::Range(0.0, 1.0));
    auto* f_grid_opt = st_ro->add_option("--f-grid", f_grid, "start:stop:step");
    auto* st_as = stress->add_subcommand("asset-shock", "Exogenous common-asset devaluation");
    std::string c_phi_grid;
    auto* c_phi_opt = st_as->add_option("--c-phi-grid", c_phi_grid, "start:stop:step");
    auto* st_fs = stress->add_subcommand("fire-sale", "Endogenous fire-sale liquidation");
    std::string c_grid;
    auto* c_grid_opt = st_fs->add_option("--c-grid", c_grid, "start:stop:step");

    auto* nullmodel = app.add_subcommand("nullmodel", "Compare the system with degree-preserving replicas");
    std::string nm_protocol = "counterparty";
    std::size_t replicas = 100, bins = 20;
    std::size_t swap_budget = 0;
    double nm_f = 0.0, nm_c = 0.0;
    bool nm_cycles = false;
    auto* proto_opt = nullmodel->add_option("--protocol", nm_protocol, "counterparty | rollover | fire-sale");
    auto* replicas_opt = nullmodel->add_option("--replicas", replicas)->check(CLI::PositiveNumber);
    auto* bins_opt = nullmodel->add_option("--bins", bins)->check(CLI::PositiveNumber);
    auto* budget_opt = nullmodel->add_option("--swap-budget", swap_budget, "Attempted swaps (default 10 x links)");
    auto* nm_f_opt = nullmodel->add_option("--f", nm_f)->check(CLI::Range(0.0, 1.0));
    auto* nm_c_opt = nullmodel->add_option("--c", nm_c)->check(CLI::Range(0.0, 1.0));
    nullmodel->add_flag("--cycles", nm_cycles, "Also compare cycle and triad censuses");
    nullmodel->add_option("--max-cycle-length", max_len)->check(CLI::Range(3, 5));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    std::string command;
    for (int k = 0; k < argc; ++k) command += (k ? " " : "") + std::string(argv[k]);

    try {
        if (!s.config_path.empty()) {
            std::ifstream in(s.config_path);
            if (!in) throw UsageError("cannot open config '" + s.config_path + "'");
            try {
                s.config = json::parse(in);
            } catch (const json::exception& e) {
                throw ValidationError("config '" + s.config_path + "': " + e.what());
            }
            if (!s.config.is_object()) throw ValidationError("config must be a JSON object");
        }
        if (s.config.contains("profile")) s.profile = profile_from_json(s.config.at("profile"));
        const unsigned threads = s.thread_count();
        const auto units = resolve_inputs(s);
        json cfg = s.config;
        cfg["seed"] = s.seed;

        for (const auto& u : units) {
            fs::create_directories(u.dir);
            if (app.got_subcommand(synth)) {
                save_system(u.system, u.dir / "balance.csv", u.dir / "exposures.csv");
                write_manifest(u, s, command, cfg);
            } else if (app.got_subcommand(stats)) {
                json c = cfg;
                c["cycles"] = stats_cycles;
                c["max_cycle_length"] = max_len;
                run_stats(u, stats_cycles, max_len);
                write_manifest(u, s, command, c);
            } else if (app.got_subcommand(stress)) {
                json c = cfg;
                large = pick<std::size_t>(large_opt, large, s.config, "large_cascade", 10);
                c["large_cascade"] = large;
                const auto k_col = "p_gt" + std::to_string(large);
                if (stress->got_subcommand(st_cp)) {
                    const auto rep = run_all_seeds(u.system, {Protocol::counterparty}, threads);
                    CsvTable summary{{"run", "contagion_probability", "conditional_extent", "max_extent", k_col}, {}};
                    add_metrics(summary, "counterparty", rep, large);
                    write_csv(u.dir / "summary.csv", summary);
                    CsvTable per_seed{{"seed_id", "affected", "rounds"}, {}};
                    for (const auto& r : rep.per_seed_results) {
                        per_seed.add({u.system.sheet(*r.seed).bank_id, fmt(r.affected.size()), fmt(r.rounds)});
                    }
                    write_csv(u.dir / "per_seed.csv", per_seed);
                    CsvTable hist{{"affected", "count"}, {}};
                    for (std::size_t k = 0; k < rep.extent_histogram.size(); ++k) {
                        if (rep.extent_histogram[k]) hist.add({fmt(k), fmt(rep.extent_histogram[k])});
                    }
                    write_csv(u.dir / "extent_histogram.csv", hist);
                } else if (stress->got_subcommand(st_ro)) {
                    std::vector<double> grid;
                    if (f_opt->count() && f_grid_opt->count()) throw UsageError("give --f or --f-grid, not both");
                    if (f_opt->count()) {
                        grid = {f_single};
                    } else {
                        grid = pick_grid(f_grid_opt, f_grid, s.config, "f_grid", "0:1:0.1");
                    }
                    SweepConfig{Protocol::rollover, {}, {}, grid}.validate();
                    c["f_grid"] = grid;
                    CsvTable t{{"f", "contagion_probability", "conditional_extent", "max_extent", k_col}, {}};
                    for (double f : grid) add_metrics(t, fmt(f), run_all_seeds(u.system, {Protocol::rollover, f}, threads), large);
                    write_csv(u.dir / "rollover.csv", t);
                } else if (stress->got_subcommand(st_as)) {
                    const auto grid = pick_grid(c_phi_opt, c_phi_grid, s.config, "c_phi_grid", "0:1:0.02");
                    SweepConfig{Protocol::exogenous, grid}.validate();
                    c["c_phi_grid"] = grid;
                    CsvTable t{{"c_phi", "frac_no_network", "frac_with_network", "ratio"}, {}};
                    for (const auto& pt : amplification_curve(u.system, grid)) {
                        t.add({fmt(pt.c_phi), fmt(pt.frac_no_network), fmt(pt.frac_with_network), fmt(pt.ratio)});
                    }
                    write_csv(u.dir / "amplification.csv", t);
                } else if (stress->got_subcommand(st_fs)) {
                    const auto grid = pick_grid(c_grid_opt, c_grid, s.config, "c_grid", "0:1:0.02");
                    SweepConfig{Protocol::fire_sale, grid}.validate();
                    c["c_grid"] = grid;
                    const auto sfx = std::to_string(large);
                    CsvTable t{{"c", "prob_no_cp", "prob_with_cp", "extent_no_cp", "extent_with_cp", "p_gt" + sfx + "_no_cp",
                                "p_gt" + sfx + "_with_cp"},
                               {}};
                    for (const auto& pt : fire_sale_sweep(u.system, grid, large, threads)) {
                        t.add({fmt(pt.c), fmt(pt.without_counterparty.contagion_probability),
                               fmt(pt.with_counterparty.contagion_probability),
                               fmt(pt.without_counterparty.conditional_extent),
                               fmt(pt.with_counterparty.conditional_extent), fmt(pt.p_large_without),
                               fmt(pt.p_large_with)});
                    }
                    write_csv(u.dir / "fire_sale.csv", t);
                }
                write_manifest(u, s, command, c);
            } else if (app.got_subcommand(nullmodel)) {
                json c = cfg;
                ProtocolParams params;
                try {
                    params.protocol = parse_protocol(pick<std::string>(proto_opt, nm_protocol, s.config, "protocol",
                                                                       "counterparty"));
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
                if (params.protocol == Protocol::exogenous) throw UsageError("nullmodel needs a seeded protocol");
                params.f = pick<double>(nm_f_opt, nm_f, s.config, "f", 0.0);
                params.c = pick<double>(nm_c_opt, nm_c, s.config, "c", 0.0);
                replicas = pick<std::size_t>(replicas_opt, replicas, s.config, "replicas", 100);
                bins = pick<std::size_t>(bins_opt, bins, s.config, "bins", 20);
                std::optional<std::size_t> budget;
                if (budget_opt->count()) {
                    budget = swap_budget;
                } else if (s.config.contains("swap_budget")) {
                    budget = s.config.at("swap_budget").get<std::size_t>();
                }
                c["protocol"] = std::string(to_string(params.protocol));
                c["f"] = params.f;
                c["c"] = params.c;
                c["replicas"] = replicas;
                c["bins"] = bins;
                c["swap_budget"] = budget ? json(*budget) : json(nullptr);

                const auto cmp = null_model_comparison(u.system, params, replicas, s.seed, budget, bins, threads);
                CsvTable reps{{"replica", "attempts", "contagion_probability", "conditional_extent", "max_extent"}, {}};
                reps.add({"real", "", fmt(cmp.real.contagion_probability), fmt(cmp.real.conditional_extent),
                          fmt(cmp.real.max_extent)});
                for (std::size_t r = 0; r < cmp.replicas.size(); ++r) {
                    const auto& m = cmp.replicas[r];
                    reps.add({fmt(r), fmt(cmp.attempts[r]), fmt(m.contagion_probability), fmt(m.conditional_extent),
                              fmt(m.max_extent)});
                }
                write_csv(u.dir / "replicas.csv", reps);
                CsvTable hist{{"metric", "bin_lo", "bin_hi", "count"}, {}};
                auto add_hist = [&](const char* name, const Histogram& h) {
                    const double width = (h.hi - h.lo) / static_cast<double>(h.counts.size());
                    for (std::size_t b = 0; b < h.counts.size(); ++b) {
                        hist.add({name, fmt(h.lo + width * static_cast<double>(b)),
                                  fmt(b + 1 == h.counts.size() ? h.hi : h.lo + width * static_cast<double>(b + 1)),
                                  fmt(h.counts[b])});
                    }
                    if (h.undefined) hist.add({name, "undefined", "undefined", fmt(h.undefined)});
                };
                add_hist("contagion_probability", cmp.probability);
                add_hist("conditional_extent", cmp.conditional_extent);
                add_hist("max_extent", cmp.max_extent);
                write_csv(u.dir / "histograms.csv", hist);

                if (nm_cycles) {
                    c["max_cycle_length"] = max_len;
                    const auto cyc = cycle_census_comparison(u.system, replicas, s.seed, max_len, budget, threads);
                    std::vector<std::string> header{"system"};
                    for (std::size_t len = 3; len <= max_len; ++len) header.push_back("cycle_" + std::to_string(len));
                    header.push_back("cycle_triads");
                    header.push_back("source_sink_triads");
                    CsvTable t{header, {}};
                    auto add_row = [&](std::string label, const CycleCensus& cc, const TriadCensus& tc) {
                        std::vector<std::string> row{std::move(label)};
                        for (std::size_t len = 3; len <= max_len; ++len) row.push_back(fmt(cc.count(len)));
                        row.push_back(fmt(tc.cycle_triads));
                        row.push_back(fmt(tc.source_sink_triads));
                        t.add(std::move(row));
                    };
                    add_row("real", cyc.real, cyc.real_triads);
                    for (std::size_t r = 0; r < cyc.replicas.size(); ++r) {
                        add_row(fmt(r), cyc.replicas[r], cyc.replica_triads[r]);
                    }
                    write_csv(u.dir / "cycles.csv", t);
                }
                write_manifest(u, s, command, c);
            }
        }
        return 0;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace contagion
