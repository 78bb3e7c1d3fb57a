#include "cdmm/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "cdmm/analytic_models.hpp"
#include "cdmm/delay_stats.hpp"
#include "cdmm/matrix_codes.hpp"
#include "cdmm/sim_engine.hpp"

namespace cdmm {

using nlohmann::json;

namespace {

std::vector<int> range(int lo, int hi) {
    std::vector<int> out;
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
}

std::vector<double> reciprocals(std::initializer_list<int> denominators) {
    std::vector<double> out;
    for (int d : denominators) out.push_back(1.0 / d);
    return out;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void ExperimentConfig::validate() const {
    if (workers.empty()) throw std::invalid_argument("config: N range is empty");
    for (int n : workers)
        if (n < 2) throw std::invalid_argument("config: every N must be >= 2");
    if (lambda_support.empty()) throw std::invalid_argument("config: lambda support is empty");
    for (double l : lambda_support)
        if (!(l > 0.0)) throw std::invalid_argument("config: lambda values must be positive");
    if (!(phi >= 0.0 && phi <= 1.0)) throw std::invalid_argument("config: phi must lie in [0, 1]");
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (rounds < 1) throw std::invalid_argument("config: rounds must be >= 1");
    if (!(K > 0.0) || !(L > 0.0)) throw std::invalid_argument("config: K and L must be positive");
    if (format != "csv" && format != "json") throw std::invalid_argument("config: format must be csv or json");
}

SelectionConstraints ExperimentConfig::constraints(int n) const {
    SelectionConstraints c;
    c.workers = n;
    c.K = K;
    c.L = L;
    c.survival_probability = phi;
    if (success_min) c.success_min = *success_min;
    if (storage_worker_max) c.storage_worker_max = *storage_worker_max;
    if (storage_master_max) c.storage_master_max = *storage_master_max;
    return c;
}

ExperimentConfig preset_config(std::string_view name) {
    ExperimentConfig c;
    c.preset = std::string(name);
    if (name == "table1") {
        c.workers = range(6, 9);
        c.K = c.L = 1000.0;
        c.phi = 2.0 / 3.0;
        c.partitions = 2;
        c.lambda_support = {1.0};
    } else if (name == "fig1") {
        c.workers = range(6, 20);
        c.K = 2000.0;
        c.L = 5000.0;
        c.phi = 0.95;
        c.lambda_support = {2, 3, 4, 5, 6, 7, 8, 9, 10};
    } else if (name == "fig2") {
        c.workers = range(6, 20);
        c.K = 2000.0;
        c.L = 5000.0;
        c.phi = 0.95;
        c.lambda_support = reciprocals({10, 9, 8, 7, 6, 5, 4, 3, 2});
        c.storage_worker_max = 15e6;
    } else if (name == "fig3") {
        c.workers = range(6, 20);
        c.K = 2000.0;
        c.L = 5000.0;
        c.phi = 0.9;
        c.lambda_support = reciprocals({2000, 1000, 900, 800, 700, 600, 500});
        c.storage_worker_max = 10e6;
        c.success_min = 0.98;
    } else {
        throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
    }
    return c;
}

ExperimentConfig apply_json(ExperimentConfig c, const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    if (j.contains("preset")) {
        c = preset_config(j.at("preset").get<std::string>());
    }
    for (const auto& [key, v] : j.items()) {
        if (key == "preset") continue;
        else if (key == "workers") c.workers = v.get<std::vector<int>>();
        else if (key == "n_min" || key == "n_max") continue;
        else if (key == "K") c.K = v.get<double>();
        else if (key == "L") c.L = v.get<double>();
        else if (key == "lambda_support") c.lambda_support = v.get<std::vector<double>>();
        else if (key == "phi") c.phi = v.get<double>();
        else if (key == "rho_thr") c.success_min = v.get<double>();
        else if (key == "s_thr_w") c.storage_worker_max = v.get<double>();
        else if (key == "s_thr_m") c.storage_master_max = v.get<double>();
        else if (key == "partitions") c.partitions = v.get<int>();
        else if (key == "trials") c.trials = v.get<int>();
        else if (key == "seed") c.seed = v.get<std::uint64_t>();
        else if (key == "rounds") c.rounds = v.get<int>();
        else if (key == "simulate") c.simulate = v.get<bool>();
        else if (key == "format") c.format = v.get<std::string>();
        else if (key == "out") c.out = v.get<std::string>();
        else if (key == "threads") c.threads = v.get<int>();
        else if (key == "scheme") {
            auto s = parse_scheme(v.get<std::string>());
            if (!s) throw std::invalid_argument("config: unknown scheme " + v.get<std::string>());
            c.scheme = *s;
        } else if (key == "p") c.p = v.get<int>();
        else if (key == "n") c.n = v.get<int>();
        else if (key == "lambda") c.lambda = v.get<double>();
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    if (j.contains("n_min") || j.contains("n_max")) {
        c.workers = range(j.value("n_min", c.workers.empty() ? 2 : c.workers.front()),
                          j.value("n_max", c.workers.empty() ? 2 : c.workers.back()));
    }
    return c;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// table

void cmd_table(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    const auto rows = build_comparison_table(config.workers, config.K, config.L, config.phi, config.partitions,
                                             config.lambda_support.front());
    if (config.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            json o{{"scheme", to_string(r.choice.scheme)}, {"N", r.workers}, {"p", r.choice.partitions},
                   {"feasible", r.applicable}};
            if (r.applicable) {
                o["k"] = r.k;
                o["gamma"] = r.computing_load;
                o["mu_master"] = r.storage_master;
                o["mu_worker"] = r.storage_worker;
                o["rho"] = r.success_probability;
            }
            arr.push_back(o);
        }
        out << arr.dump(2) << '\n';
        return;
    }
    out << "scheme,N,p,k,gamma,mu_master,mu_worker,rho,feasible\n";
    for (const auto& r : rows) {
        out << to_string(r.choice.scheme) << ',' << r.workers << ',' << r.choice.partitions << ',';
        if (r.applicable) {
            out << r.k << ',' << format_number(r.computing_load) << ',' << format_number(r.storage_master) << ','
                << format_number(r.storage_worker) << ',' << format_number(r.success_probability) << ",true\n";
        } else {
            out << "N/A,N/A,N/A,N/A,N/A,false\n";
        }
    }
}

// ---------------------------------------------------------------------------
// sweep

namespace {

struct SweepRow {
    int n = 0;
    std::string scheme;
    std::optional<AnalysisRow> row;  // representative choice
    double t_analytic = std::nan("");
    std::optional<double> t_simulated;
    double selected = 0.0;
};

double simulated_mean(const ExperimentConfig& config, const CodeChoice& choice, int n, double lambda,
                      std::uint64_t seed) {
    return run_experiment(choice, n, lambda, config.phi, config.trials, seed, config.threads).mean_completion;
}

std::vector<SweepRow> sweep_rows(const ExperimentConfig& config, int n) {
    const auto constraints = config.constraints(n);
    const auto& lambdas = config.lambda_support;
    const double weight = 1.0 / static_cast<double>(lambdas.size());
    const std::uint64_t n_seed = derive_seed(config.seed, static_cast<std::uint64_t>(n));

    // Admissibility does not depend on lambda; timing does.
    const auto admissible = enumerate_candidates(constraints, lambdas.front()).admissible;

    std::vector<SweepRow> rows;
    for (Scheme s : kAllSchemes) {
        SweepRow out;
        out.n = n;
        out.scheme = std::string(to_string(s));
        std::optional<AnalysisRow> best;
        for (const auto& cand : admissible) {
            if (cand.choice.scheme != s) continue;
            AnalysisRow averaged = cand;
            averaged.expected_time = 0.0;
            for (double l : lambdas) averaged.expected_time += weight * computing_time(cand.choice, n, l);
            if (!best || preferred(averaged, *best)) best = averaged;
        }
        if (best) {
            out.row = best;
            out.t_analytic = best->expected_time;
            if (config.simulate) {
                double sum = 0.0;
                for (std::size_t i = 0; i < lambdas.size(); ++i) {
                    const auto seed = derive_seed(n_seed, static_cast<std::uint64_t>(static_cast<int>(s) * 1000 + i));
                    sum += weight * simulated_mean(config, best->choice, n, lambdas[i], seed);
                }
                out.t_simulated = sum;
            }
        }
        rows.push_back(out);
    }

    SweepRow acm2;
    acm2.n = n;
    acm2.scheme = "acm2";
    if (!admissible.empty()) {
        acm2.t_analytic = 0.0;
        double sim = 0.0;
        std::map<std::pair<int, int>, int> counts;
        std::vector<AnalysisRow> picks;
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            const auto sel = select(constraints, lambdas[i]);
            acm2.t_analytic += weight * sel.objective_time;
            picks.push_back(sel.row);
            ++counts[{static_cast<int>(sel.choice.scheme), sel.choice.partitions}];
            for (auto& r : rows)
                if (r.scheme == to_string(sel.choice.scheme)) r.selected += 1.0;
            if (config.simulate) {
                const auto seed = derive_seed(n_seed, static_cast<std::uint64_t>(99000 + i));
                sim += weight * simulated_mean(config, sel.choice, n, lambdas[i], seed);
            }
        }
        // Representative: most frequent pick, earliest lambda on ties.
        const AnalysisRow* rep = &picks.front();
        int rep_count = 0;
        for (const auto& pick : picks) {
            const int c = counts[{static_cast<int>(pick.choice.scheme), pick.choice.partitions}];
            if (c > rep_count) {
                rep = &pick;
                rep_count = c;
            }
        }
        acm2.row = *rep;
        acm2.selected = 1.0;
        for (auto& r : rows) r.selected /= static_cast<double>(lambdas.size());
        if (config.simulate) acm2.t_simulated = sim;
    }
    rows.push_back(acm2);
    return rows;
}

}  // namespace

void cmd_sweep(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    std::vector<SweepRow> all;
    for (int n : config.workers) {
        auto rows = sweep_rows(config, n);
        all.insert(all.end(), rows.begin(), rows.end());
    }
    if (config.format == "json") {
        json arr = json::array();
        for (const auto& r : all) {
            json o{{"N", r.n}, {"scheme", r.scheme}, {"selected_by_acm2", r.selected}};
            if (r.row) {
                o["p_opt"] = r.row->choice.partitions;
                o["choice"] = to_string(r.row->choice.scheme);
                o["k"] = r.row->k;
                o["T_analytic"] = number_or_null(r.t_analytic);
                o["storage_master"] = r.row->storage_master;
                o["storage_worker"] = r.row->storage_worker;
                o["rho"] = r.row->success_probability;
            }
            o["T_simulated"] = r.t_simulated ? number_or_null(*r.t_simulated) : json(nullptr);
            arr.push_back(o);
        }
        out << arr.dump(2) << '\n';
        return;
    }
    out << kSweepHeader << '\n';
    for (const auto& r : all) {
        out << r.n << ',' << r.scheme << ',';
        if (r.row) {
            out << r.row->choice.partitions << ',' << r.row->k << ',' << format_number(r.t_analytic) << ',';
        } else {
            out << "N/A,N/A,N/A,";
        }
        out << (r.t_simulated ? format_number(*r.t_simulated) : "") << ',';
        if (r.row) {
            out << format_number(r.row->storage_master) << ',' << format_number(r.row->storage_worker) << ','
                << format_number(r.row->success_probability) << ',';
        } else {
            out << "N/A,N/A,N/A,";
        }
        out << format_number(r.selected) << '\n';
    }
}

// ---------------------------------------------------------------------------
// select / iterate / simulate

namespace {

json row_json(const AnalysisRow& r) {
    return {{"scheme", to_string(r.choice.scheme)}, {"p", r.choice.partitions}, {"k", r.k},
            {"T_analytic", r.expected_time},        {"gamma", r.computing_load}, {"storage_master", r.storage_master},
            {"storage_worker", r.storage_worker},   {"rho", r.success_probability}};
}

}  // namespace

void cmd_select(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    const int n = config.n.value_or(config.workers.front());
    const double lambda = config.lambda.value_or(config.lambda_support.front());
    const auto constraints = config.constraints(n);
    json report{{"N", n}, {"lambda", lambda}};
    try {
        const auto sel = select(constraints, lambda);
        report["selected"] = row_json(sel.row);
        report["objective_time"] = sel.objective_time;
        report["feasible_set_size"] = sel.feasible_set_size;
        json excluded = json::array();
        for (const auto& e : enumerate_candidates(constraints, lambda).excluded) {
            excluded.push_back({{"scheme", to_string(e.choice.scheme)}, {"p", e.choice.partitions}, {"reason", e.reason}});
        }
        report["excluded"] = excluded;
    } catch (const NoFeasibleCodeError& e) {
        report["error"] = e.what();
        json excluded = json::array();
        for (const auto& x : e.exclusions()) {
            excluded.push_back({{"scheme", to_string(x.choice.scheme)}, {"p", x.choice.partitions}, {"reason", x.reason}});
        }
        report["excluded"] = excluded;
    }
    out << report.dump(2) << '\n';
}

void cmd_iterate(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    out << "N,iteration,lambda,scheme,p,T_analytic,T_simulated,error\n";
    for (int n : config.workers) {
        const auto traces = run_iterations(config.constraints(n), config.lambda_support, config.rounds,
                                           derive_seed(config.seed, static_cast<std::uint64_t>(n)), config.simulate);
        for (const auto& t : traces) {
            out << n << ',' << t.iteration << ',' << format_number(t.lambda) << ',';
            if (t.selection) {
                out << to_string(t.selection->choice.scheme) << ',' << t.selection->choice.partitions << ','
                    << format_number(t.selection->objective_time) << ',';
            } else {
                out << ",,,";
            }
            out << (t.simulated_time ? format_number(*t.simulated_time) : "") << ',';
            out << (t.selection ? "" : "no feasible code") << '\n';
        }
    }
}

void cmd_simulate(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    const CodeChoice choice{config.scheme.value_or(Scheme::MDS), config.p.value_or(config.partitions)};
    const int n = config.n.value_or(config.workers.front());
    const double lambda = config.lambda.value_or(config.lambda_support.front());
    const auto stats = run_experiment(choice, n, lambda, config.phi, config.trials, config.seed, config.threads);
    const auto exact = exact_expected_time(choice, n, lambda);
    const double log_form = computing_time(choice, n, lambda);
    const int k = recovery_threshold(choice, n);
    const double rho = success_probability(k, workers_used(choice, n), config.phi);

    if (config.format == "json") {
        json o{{"scheme", to_string(choice.scheme)},
               {"p", choice.partitions},
               {"N", n},
               {"lambda", lambda},
               {"phi", config.phi},
               {"trials", stats.trials},
               {"seed", config.seed},
               {"decodable_trials", stats.decodable_trials},
               {"mean_completion", number_or_null(stats.mean_completion)},
               {"std_error", number_or_null(stats.std_error)},
               {"undecodable_fraction", stats.undecodable_fraction},
               {"p50", number_or_null(stats.p50)},
               {"p95", number_or_null(stats.p95)},
               {"exact", exact ? json(*exact) : json(nullptr)},
               {"log_approx", log_form},
               {"rho", rho}};
        out << o.dump(2) << '\n';
        return;
    }
    out << "scheme,p,N,lambda,phi,trials,seed,decodable_trials,mean_completion,std_error,undecodable_fraction,p50,p95,"
           "exact,log_approx,rho\n";
    out << to_string(choice.scheme) << ',' << choice.partitions << ',' << n << ',' << format_number(lambda) << ','
        << format_number(config.phi) << ',' << stats.trials << ',' << config.seed << ',' << stats.decodable_trials << ','
        << format_number(stats.mean_completion) << ',' << format_number(stats.std_error) << ','
        << format_number(stats.undecodable_fraction) << ',' << format_number(stats.p50) << ','
        << format_number(stats.p95) << ',' << (exact ? format_number(*exact) : "") << ',' << format_number(log_form)
        << ',' << format_number(rho) << '\n';
}

// ---------------------------------------------------------------------------
// verify

namespace {

constexpr int kFullConfidenceTrials = 10000;

DenseMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    DenseMatrix m(rows, cols);
    for (auto& v : m.data()) v = 2.0 * rng.uniform() - 1.0;
    return m;
}

struct Check {
    std::string name;
    bool passed = false;
    bool fatal = true;
    json detail;
};

Check check_decode_round_trip(Scheme s, std::uint64_t seed) {
    Check c;
    c.name = "decode_round_trip/" + std::string(to_string(s));
    Rng rng(seed);
    double worst = 0.0;
    int cases = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int p = 2 + static_cast<int>(rng.index(2));
        const std::size_t K = static_cast<std::size_t>(p) * (1 + rng.index(8 / static_cast<std::size_t>(p)));
        const std::size_t L = static_cast<std::size_t>(p) * (1 + rng.index(8 / static_cast<std::size_t>(p)));
        int n = 0;
        switch (s) {
            case Scheme::Repetition: n = p * (1 + static_cast<int>(rng.index(3))); break;
            case Scheme::MDS: n = p + static_cast<int>(rng.index(5)); break;
            case Scheme::Polynomial: n = p * p + static_cast<int>(rng.index(3)); break;
            case Scheme::MatDot: n = 2 * p - 1 + static_cast<int>(rng.index(4)); break;
            case Scheme::Product: {
                const int side = p + 1 + static_cast<int>(rng.index(2));
                n = side * side;
                break;
            }
        }
        const CodeChoice choice{s, p};
        const auto a = random_matrix(L, K, rng);
        const auto b = random_matrix(L, K, rng);
        const auto tasks = encode(a, b, choice, n);
        auto pattern = (s == Scheme::Product && trial % 5 == 0) ? product_worst_case_pattern(n, p)
                                                                  : random_minimal_pattern(choice, n, rng);
        std::vector<WorkerResult> results;
        for (auto w : pattern.indices()) results.push_back({w, compute_worker(tasks.payloads[w])});
        const auto decoded = decode(tasks, results);
        worst = std::max(worst, relative_frobenius_error(decoded, multiply_transposed_serial(a, b)));
        ++cases;
    }
    c.passed = worst <= 1e-6;
    c.detail = {{"cases", cases}, {"max_relative_error", worst}, {"tolerance", 1e-6}};
    return c;
}

Check check_product_brute_force() {
    Check c;
    c.name = "product_brute_force/N=9,p=2";
    const CodeChoice choice{Scheme::Product, 2};
    int min_decodable_size_all = 10;  // smallest size at which every pattern decodes
    bool size5_undecodable = false;
    std::vector<int> undecodable_by_size(10, 0);
    for (unsigned mask = 0; mask < (1u << 9); ++mask) {
        const auto pattern = CompletionPattern::from_mask(9, mask);
        if (!decodable(choice, 9, pattern)) ++undecodable_by_size[pattern.count()];
    }
    for (int s = 9; s >= 0 && undecodable_by_size[static_cast<std::size_t>(s)] == 0; --s) min_decodable_size_all = s;
    size5_undecodable = undecodable_by_size[5] > 0;
    c.passed = min_decodable_size_all == recovery_threshold(choice, 9) && size5_undecodable;
    c.detail = {{"every_pattern_decodable_from_size", min_decodable_size_all},
                {"k_pro", recovery_threshold(choice, 9)},
                {"undecodable_size5_patterns", undecodable_by_size[5]}};
    return c;
}

Check check_threshold_consistency() {
    Check c;
    c.name = "threshold_consistency/N<=10";
    int violations = 0;
    int checked = 0;
    for (Scheme s : {Scheme::MDS, Scheme::Polynomial, Scheme::MatDot}) {
        for (int n = 2; n <= 10; ++n) {
            for (int p = 2; p <= n; ++p) {
                const CodeChoice choice{s, p};
                if (!feasible(choice, n)) continue;
                const int k = recovery_threshold(choice, n);
                for (unsigned mask = 0; mask < (1u << n); ++mask) {
                    const auto pattern = CompletionPattern::from_mask(static_cast<std::size_t>(n), mask);
                    const bool expect = static_cast<int>(pattern.count()) >= k;
                    if (decodable(choice, n, pattern) != expect) ++violations;
                    ++checked;
                }
            }
        }
    }
    c.passed = violations == 0;
    c.detail = {{"patterns_checked", checked}, {"violations", violations}};
    return c;
}

Check check_order_statistic(Scheme s, int n, int p, const ExperimentConfig& config) {
    Check c;
    c.name = "order_statistic/" + std::string(to_string(s)) + ",N=" + std::to_string(n) + ",p=" + std::to_string(p);
    const CodeChoice choice{s, p};
    const auto seed = derive_seed(config.seed, static_cast<std::uint64_t>(n * 100 + p * 10 + static_cast<int>(s)));
    const auto cmp = empirical_vs_analytic(choice, n, 1.0, config.trials, seed, config.threads);
    double tol = 0.01;
    const double sigma_rel = cmp.simulated_std_error / cmp.exact;
    if (config.trials < kFullConfidenceTrials) {
        c.fatal = false;
        tol = std::max(tol, 3.0 * sigma_rel);
    }
    c.passed = cmp.gap_simulated_exact <= tol;
    c.detail = {{"simulated_mean", cmp.simulated_mean}, {"exact", cmp.exact}, {"relative_gap", cmp.gap_simulated_exact},
                {"tolerance", tol}, {"relative_std_error", sigma_rel}};
    return c;
}

Check check_log_approximation() {
    Check c;
    c.name = "log_approximation/N>=15,k<=0.6N";
    double worst = 0.0;
    int cases = 0;
    for (Scheme s : {Scheme::MDS, Scheme::Polynomial, Scheme::MatDot}) {
        for (int n = 15; n <= 30; ++n) {
            for (int p = 2; p <= n; ++p) {
                const CodeChoice choice{s, p};
                if (!feasible(choice, n) || recovery_threshold(choice, n) > 0.6 * n) continue;
                for (double lambda : {0.01, 0.1, 1.0, 10.0}) {
                    const double exact = *exact_expected_time(choice, n, lambda);
                    worst = std::max(worst, std::abs(computing_time(choice, n, lambda) - exact) / exact);
                    ++cases;
                }
            }
        }
    }
    c.passed = worst <= 0.10;
    c.detail = {{"cases", cases}, {"max_relative_gap", worst}, {"tolerance", 0.10}};
    return c;
}

Check check_failure_model(const ExperimentConfig& config) {
    Check c;
    c.name = "failure_model/mds,k=2,N=6,phi=2/3";
    const CodeChoice choice{Scheme::MDS, 2};
    const auto stats =
        run_experiment(choice, 6, 1.0, 2.0 / 3.0, config.trials, derive_seed(config.seed, 0xFA11ULL), config.threads);
    const double expected = 1.0 - success_probability(2, 6, 2.0 / 3.0);
    const double sigma = std::sqrt(expected * (1.0 - expected) / config.trials);
    c.fatal = config.trials >= kFullConfidenceTrials;
    c.passed = std::abs(stats.undecodable_fraction - expected) <= 3.0 * sigma;
    c.detail = {{"undecodable_fraction", stats.undecodable_fraction}, {"expected", expected}, {"sigma", sigma}};
    return c;
}

}  // namespace

bool cmd_verify(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    std::vector<Check> checks;
    for (Scheme s : kAllSchemes) {
        checks.push_back(check_decode_round_trip(s, derive_seed(config.seed, 0xDEC0DEULL + static_cast<int>(s))));
    }
    checks.push_back(check_product_brute_force());
    checks.push_back(check_threshold_consistency());
    for (Scheme s : {Scheme::MDS, Scheme::Polynomial, Scheme::MatDot}) {
        for (int n : {6, 10, 20}) {
            for (int p : {2, 3}) {
                if (feasible({s, p}, n)) checks.push_back(check_order_statistic(s, n, p, config));
            }
        }
    }
    checks.push_back(check_log_approximation());
    checks.push_back(check_failure_model(config));

    bool all_fatal_passed = true;
    json arr = json::array();
    for (const auto& c : checks) {
        if (c.fatal && !c.passed) all_fatal_passed = false;
        arr.push_back({{"name", c.name},
                       {"status", c.passed ? "pass" : "fail"},
                       {"fatal", c.fatal},
                       {"detail", c.detail}});
    }
    json report{{"seed", config.seed}, {"trials", config.trials}, {"checks", arr}, {"all_passed", all_fatal_passed}};
    out << report.dump(2) << '\n';
    return all_fatal_passed;
}

}  // namespace cdmm
