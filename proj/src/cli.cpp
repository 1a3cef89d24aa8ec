#include "nlroth/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlroth/counting.hpp"
#include "nlroth/cutnorm.hpp"
#include "nlroth/fourier.hpp"
#include "nlroth/increment.hpp"
#include "nlroth/io.hpp"
#include "nlroth/regularity.hpp"

namespace nlroth::cli {

namespace {

using nlohmann::json;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << text;
        if (text.empty() || text.back() != '\n') out << "\n";
    }
}

void emit_json(const json& j, const std::string& out_path) { emit(j.dump(2), out_path); }

/// --set accepts a file path or one of the literals full | odds | evens
/// (literals need --N).
IntegerSet resolve_set(const std::string& spec, std::int64_t n) {
    if (spec == "full" || spec == "odds" || spec == "evens") {
        if (n < 1) throw CLI::ValidationError("--set literal requires --N");
        IntegerSet s(n);
        for (std::int64_t x = 1; x <= n; ++x) {
            if (spec == "full" || (spec == "odds" && x % 2 == 1) || (spec == "evens" && x % 2 == 0)) {
                s.insert(x);
            }
        }
        return s;
    }
    return read_set_file(spec);
}

json trace_to_json(const IterationTrace& trace) {
    json stages = json::array();
    for (const IterationStage& st : trace.stages) {
        stages.push_back(json{{"N", st.n},
                              {"cardinality", st.cardinality},
                              {"q_prime", st.q_prime},
                              {"modulus", st.modulus},
                              {"density", st.density},
                              {"rescale_start", st.rescale_start},
                              {"rescale_step", st.rescale_step}});
    }
    return json{{"schema", 1},
                {"stages", stages},
                {"increments", trace.increments_performed()},
                {"termination", trace.termination}};
}

json estimate_to_json(const CutNormEstimate& est) {
    return json{{"lower", est.lower},
                {"upper", est.upper},
                {"slot", est.slot},
                {"exact", est.exact},
                {"restarts", est.restarts_used},
                {"iterations", est.iterations_used}};
}

struct CommonArgs {
    std::int64_t n = 0;
    std::int64_t q = 1;
    std::string set_spec;
    std::string fn_path;
    std::string out;
    std::uint64_t seed = 0;
    int threads = 1;
};

BoundedFunction resolve_function(const CommonArgs& a) {
    if (!a.fn_path.empty()) return read_function_file(a.fn_path);
    if (!a.set_spec.empty()) return indicator(resolve_set(a.set_spec, a.n));
    throw CLI::ValidationError("need --set or --fn");
}

}  // namespace

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    const json j = json::parse(in);
    static const std::vector<std::string> known = {
        "N", "q", "delta", "c", "seed", "max_dimension", "max_stages",
        "modulus_cap", "threads", "format", "out"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw std::runtime_error("unknown config key: " + key);
        }
    }
    ExperimentConfig c;
    c.n = j.value("N", c.n);
    c.q = j.value("q", c.q);
    c.delta = j.value("delta", c.delta);
    c.c = j.value("c", c.c);
    c.seed = j.value("seed", c.seed);
    c.max_dimension = j.value("max_dimension", c.max_dimension);
    c.max_stages = j.value("max_stages", c.max_stages);
    c.modulus_cap = j.value("modulus_cap", c.modulus_cap);
    c.threads = j.value("threads", c.threads);
    c.format = j.value("format", c.format);
    c.out = j.value("out", c.out);
    if (c.n < 0 || c.q < 1 || !(c.delta > 0.0 && c.delta <= 1.0) || c.c < 0.0 ||
        c.max_dimension < 2 || c.max_stages < 1 || c.modulus_cap < 1 || c.threads < 1 ||
        (c.format != "json" && c.format != "csv")) {
        throw std::runtime_error("config value out of range");
    }
    return c;
}

int dispatch(std::vector<std::string> args) {
    CLI::App app{"counting, cut-norm, regularity and density-increment toolkit "
                 "for the configuration x, x+y, x+q*y^2"};
    app.require_subcommand(1);
    int rc = 0;

    // ---- count ----------------------------------------------------------
    auto count_args = std::make_shared<CommonArgs>();
    auto count_zero_y = std::make_shared<bool>(false);
    {
        CLI::App* sub = app.add_subcommand("count", "counting operator and pair count for a set");
        sub->add_option("--N", count_args->n, "ambient interval length");
        sub->add_option("--q", count_args->q, "configuration modulus")->default_val(1);
        sub->add_option("--set", count_args->set_spec, "set file or full|odds|evens")->default_val("full");
        sub->add_option("--out", count_args->out, "output file (stdout default)");
        sub->add_flag("--include-zero-y", *count_zero_y, "average over y >= 0 instead of y >= 1");
        sub->callback([=, &rc] {
            const IntegerSet a = resolve_set(count_args->set_spec, count_args->n);
            const CountingParams p = CountingParams::make(count_args->q, a.length());
            const BoundedFunction ind = indicator(a);
            const cplx lambda = count_operator(p, ind, ind, ind, *count_zero_y);
            const json j{{"schema", 1},
                         {"N", p.N},
                         {"q", p.q},
                         {"M", p.M},
                         {"lambda_re", lambda.real()},
                         {"lambda_im", lambda.imag()},
                         {"pairs", count_configurations(a, p)},
                         {"free", is_configuration_free(a, p)}};
            emit_json(j, count_args->out);
            rc = 0;
        });
    }

    // ---- free-check ------------------------------------------------------
    auto free_args = std::make_shared<CommonArgs>();
    {
        CLI::App* sub = app.add_subcommand("free-check", "configuration-freeness with witness");
        sub->add_option("--N", free_args->n, "length for set literals");
        sub->add_option("--q", free_args->q, "configuration modulus")->default_val(1);
        sub->add_option("--set", free_args->set_spec, "set file or full|odds|evens")->required();
        sub->add_option("--out", free_args->out, "output file");
        sub->callback([=, &rc] {
            const IntegerSet a = resolve_set(free_args->set_spec, free_args->n);
            const CountingParams p = CountingParams::make(free_args->q, a.length());
            const auto witness = find_configuration(a, free_args->q);
            const ConfigurationCounts counts = count_configurations_all(a, free_args->q);
            json j{{"schema", 1},
                   {"N", a.length()},
                   {"q", free_args->q},
                   {"free", !witness.has_value()},
                   {"pairs", count_configurations(a, p)},
                   {"pairs_forward", counts.forward},
                   {"pairs_backward", counts.backward}};
            if (witness) {
                j["witness_x"] = witness->x;
                j["witness_y"] = witness->y;
            }
            emit_json(j, free_args->out);
            rc = 0;
        });
    }

    // ---- cutnorm ----------------------------------------------------------
    auto cut_args = std::make_shared<CommonArgs>();
    auto cut_slots = std::make_shared<std::string>("full");
    auto cut_restarts = std::make_shared<int>(8);
    auto cut_iters = std::make_shared<int>(50);
    {
        CLI::App* sub = app.add_subcommand("cutnorm", "cut norm estimate with witnesses");
        sub->add_option("--N", cut_args->n);
        sub->add_option("--q", cut_args->q)->default_val(1);
        sub->add_option("--set", cut_args->set_spec, "set file or literal (uses the balanced part)");
        sub->add_option("--fn", cut_args->fn_path, "function CSV");
        sub->add_option("--slots", *cut_slots, "partial|full")->default_val("full");
        sub->add_option("--restarts", *cut_restarts)->default_val(8);
        sub->add_option("--iterations", *cut_iters)->default_val(50);
        sub->add_option("--seed", cut_args->seed)->default_val(0);
        sub->add_option("--out", cut_args->out, "prefix for witness files and result JSON");
        sub->callback([=, &rc] {
            BoundedFunction f = !cut_args->fn_path.empty()
                                    ? read_function_file(cut_args->fn_path)
                                    : balanced_part(resolve_set(cut_args->set_spec, cut_args->n));
            const CountingParams p = CountingParams::make(cut_args->q, f.length());
            const SlotSet slots = *cut_slots == "partial" ? SlotSet::partial : SlotSet::full;
            CutNormOptions opt;
            opt.restarts = *cut_restarts;
            opt.iterations = *cut_iters;
            opt.seed = cut_args->seed;
            const CutNormEstimate est = cut_norm_lower(p, f, slots, opt);
            json j = estimate_to_json(est);
            j["schema"] = 1;
            if (p.N <= 14 && f.is_real()) {
                j["exact_value"] = cut_norm_exact_small(p, f, slots);
            }
            if (!cut_args->out.empty()) {
                write_function_file(cut_args->out + ".ga.csv", est.g_a);
                write_function_file(cut_args->out + ".gb.csv", est.g_b);
                j["witness_files"] = {cut_args->out + ".ga.csv", cut_args->out + ".gb.csv"};
                emit_json(j, cut_args->out + ".json");
            } else {
                emit_json(j, "");
            }
            rc = 0;
        });
    }

    // ---- regularize -------------------------------------------------------
    auto reg_args = std::make_shared<CommonArgs>();
    auto reg_delta = std::make_shared<double>(0.1);
    auto reg_dim = std::make_shared<std::int64_t>(16);
    {
        CLI::App* sub = app.add_subcommand("regularize", "weak regularity decomposition");
        sub->add_option("--N", reg_args->n);
        sub->add_option("--q", reg_args->q)->default_val(1);
        sub->add_option("--set", reg_args->set_spec, "set file or literal (uses the indicator)");
        sub->add_option("--fn", reg_args->fn_path, "function CSV with values in [0,1]");
        sub->add_option("--delta", *reg_delta, "target residual cut norm")->default_val(0.1);
        sub->add_option("--max-dimension", *reg_dim)->default_val(16);
        sub->add_option("--seed", reg_args->seed)->default_val(0);
        sub->add_option("--out", reg_args->out, "output prefix (factor csv/json)")->required();
        sub->callback([=, &rc] {
            const BoundedFunction f = resolve_function(*reg_args);
            const CountingParams p = CountingParams::make(reg_args->q, f.length());
            RegularityCaps caps;
            caps.max_dimension = *reg_dim;
            caps.estimator.seed = reg_args->seed;
            const RegularityOutput out = weak_regularize(p, f, *reg_delta, caps);
            write_factor_file(reg_args->out + ".factor.csv", reg_args->out + ".factor.json",
                              out.factor);
            json j{{"schema", 1},
                   {"steps", out.steps},
                   {"status", to_string(out.status)},
                   {"energies", out.energy_trace},
                   {"step_correlations", out.step_correlations},
                   {"residual_estimate", estimate_to_json(out.residual_estimate)},
                   {"atoms", out.factor.atom_count()}};
            if (out.factor.local_meta()) {
                j["dimension"] = out.factor.local_meta()->dimension;
                j["resolution"] = out.factor.local_meta()->resolution;
                j["modulus"] = out.factor.local_meta()->modulus;
            }
            emit_json(j, reg_args->out + ".json");
            rc = 0;
        });
    }

    // ---- increment --------------------------------------------------------
    auto inc_args = std::make_shared<CommonArgs>();
    auto inc_c = std::make_shared<double>(0.01);
    {
        CLI::App* sub = app.add_subcommand("increment", "one density-increment extraction");
        sub->add_option("--N", inc_args->n);
        sub->add_option("--q", inc_args->q)->default_val(1);
        sub->add_option("--set", inc_args->set_spec)->required();
        sub->add_option("--c", *inc_c, "increment constant")->default_val(0.01);
        sub->add_option("--seed", inc_args->seed)->default_val(0);
        sub->add_option("--out", inc_args->out);
        sub->callback([=, &rc] {
            const IntegerSet a = resolve_set(inc_args->set_spec, inc_args->n);
            IncrementOptions opt;
            opt.c = *inc_c;
            opt.regularity.estimator.seed = inc_args->seed;
            const IncrementOutcome outcome =
                find_density_increment(a, inc_args->q, a.density(), opt);
            json j{{"schema", 1},
                   {"regularity_status", to_string(outcome.regularity_status)},
                   {"dimension", outcome.factor_dimension}};
            if (outcome.result) {
                const IncrementResult& r = *outcome.result;
                j["found"] = true;
                j["start"] = r.progression.start;
                j["step"] = r.progression.step;
                j["length"] = r.progression.length;
                j["old_density"] = r.old_density;
                j["new_density"] = r.new_density;
                j["c"] = r.c;
                j["atom_id"] = r.atom_id;
                rc = 0;
            } else {
                j["found"] = false;
                j["diagnostic"] = outcome.diagnostic;
                rc = 1;  // labeled analytic failure
            }
            emit_json(j, inc_args->out);
        });
    }

    // ---- iterate ----------------------------------------------------------
    auto it_args = std::make_shared<CommonArgs>();
    auto it_c = std::make_shared<double>(0.01);
    auto it_stages = std::make_shared<std::int64_t>(32);
    {
        CLI::App* sub = app.add_subcommand("iterate", "density-increment iteration driver");
        sub->add_option("--N", it_args->n);
        sub->add_option("--set", it_args->set_spec)->required();
        sub->add_option("--c", *it_c)->default_val(0.01);
        sub->add_option("--max-stages", *it_stages)->default_val(32);
        sub->add_option("--seed", it_args->seed)->default_val(0);
        sub->add_option("--out", it_args->out, "trace JSON path");
        sub->callback([=, &rc] {
            const IntegerSet a = resolve_set(it_args->set_spec, it_args->n);
            IncrementOptions opt;
            opt.c = *it_c;
            opt.regularity.estimator.seed = it_args->seed;
            IterationCaps caps;
            caps.max_stages = *it_stages;
            const IterationTrace trace = run_increment_iteration(a, opt, caps);
            emit_json(trace_to_json(trace), it_args->out);
            rc = 0;
        });
    }

    // ---- search-extremal ---------------------------------------------------
    auto se_args = std::make_shared<CommonArgs>();
    auto se_strategy = std::make_shared<std::string>("greedy");
    auto se_budget = std::make_shared<std::int64_t>(2000);
    auto se_growth = std::make_shared<std::vector<std::int64_t>>();
    auto se_csv = std::make_shared<std::string>();
    {
        CLI::App* sub = app.add_subcommand("search-extremal", "configuration-free set search");
        sub->add_option("--N", se_args->n);
        sub->add_option("--q", se_args->q)->default_val(1);
        sub->add_option("--strategy", *se_strategy, "greedy|random-greedy|local-search")
            ->default_val("greedy");
        sub->add_option("--seed", se_args->seed)->default_val(0);
        sub->add_option("--budget", *se_budget, "local-search swap budget")->default_val(2000);
        sub->add_option("--out", se_args->out, "set file for the result");
        sub->add_option("--growth", *se_growth, "sizes for a growth curve")->delimiter(',');
        sub->add_option("--csv", *se_csv, "growth CSV path (N,card,density,ratio)");
        sub->callback([=, &rc] {
            auto parse_strategy = [&](const std::string& s) {
                if (s == "greedy") return SearchStrategy::greedy;
                if (s == "random-greedy") return SearchStrategy::random_greedy;
                if (s == "local-search") return SearchStrategy::local_search;
                throw CLI::ValidationError("unknown strategy " + s);
            };
            const SearchStrategy strategy = parse_strategy(*se_strategy);
            if (!se_growth->empty()) {
                std::ostringstream csv;
                csv << "N,card,density,ratio\n";
                for (const std::int64_t size : *se_growth) {
                    const IntegerSet s =
                        greedy_extremal_search(size, se_args->q, strategy, se_args->seed, *se_budget);
                    const double ratio = static_cast<double>(s.cardinality()) *
                                         std::pow(std::log(static_cast<double>(size)), 0.01) /
                                         static_cast<double>(size);
                    csv << size << "," << s.cardinality() << "," << format_double(s.density())
                        << "," << format_double(ratio) << "\n";
                }
                emit(csv.str(), *se_csv);
                rc = 0;
                return;
            }
            if (se_args->n < 1) throw CLI::ValidationError("need --N or --growth");
            const IntegerSet s =
                greedy_extremal_search(se_args->n, se_args->q, strategy, se_args->seed, *se_budget);
            if (!se_args->out.empty()) write_set_file(se_args->out, s);
            const json j{{"schema", 1},
                         {"N", s.length()},
                         {"cardinality", s.cardinality()},
                         {"density", s.density()},
                         {"free", true}};
            emit_json(j, "");
            rc = 0;
        });
    }

    // ---- example1 ----------------------------------------------------------
    auto ex_args = std::make_shared<CommonArgs>();
    auto ex_step = std::make_shared<std::int64_t>(64);
    {
        CLI::App* sub = app.add_subcommand("example1", "block pattern with large count, small progression sums");
        sub->add_option("--N", ex_args->n, "perfect square")->required();
        sub->add_option("--max-step", *ex_step)->default_val(64);
        sub->add_option("--fn", ex_args->fn_path, "write the function CSV here");
        sub->add_option("--out", ex_args->out);
        sub->callback([=, &rc] {
            const auto [f, stats] = build_section1_example(ex_args->n, *ex_step);
            if (!ex_args->fn_path.empty()) write_function_file(ex_args->fn_path, f);
            const json j{{"schema", 1},
                         {"N", ex_args->n},
                         {"S", stats.s_value},
                         {"ratio_S", stats.ratio_s},
                         {"max_progression_sum", stats.max_progression_sum},
                         {"ratio_progression", stats.ratio_progression},
                         {"max_step", stats.max_step_scanned}};
            emit_json(j, ex_args->out);
            rc = 0;
        });
    }

    // ---- spectrum ----------------------------------------------------------
    auto sp_args = std::make_shared<CommonArgs>();
    auto sp_den = std::make_shared<std::int64_t>(0);
    {
        CLI::App* sub = app.add_subcommand("spectrum", "Fourier coefficients on a rational grid");
        sub->add_option("--N", sp_args->n);
        sub->add_option("--set", sp_args->set_spec);
        sub->add_option("--fn", sp_args->fn_path);
        sub->add_option("--denominator", *sp_den, "grid denominator (default 4N)");
        sub->add_option("--threads", sp_args->threads)->default_val(1);
        sub->add_option("--out", sp_args->out, "CSV path (stdout default)");
        sub->callback([=, &rc] {
            const BoundedFunction f = resolve_function(*sp_args);
            const std::int64_t den = *sp_den > 0 ? *sp_den : 4 * f.length();
            std::vector<cplx> coeffs(static_cast<std::size_t>(den));
            const int threads = std::max(sp_args->threads, 1);
            auto work = [&](std::int64_t lo, std::int64_t hi) {
                for (std::int64_t k = lo; k < hi; ++k) {
                    coeffs[static_cast<std::size_t>(k)] =
                        fourier_coefficient(f, Frequency::rational(k, den));
                }
            };
            if (threads == 1) {
                work(0, den);
            } else {
                std::vector<std::thread> pool;
                const std::int64_t chunk = (den + threads - 1) / threads;
                for (int t = 0; t < threads; ++t) {
                    const std::int64_t lo = t * chunk;
                    const std::int64_t hi = std::min<std::int64_t>(den, lo + chunk);
                    if (lo < hi) pool.emplace_back(work, lo, hi);
                }
                for (auto& th : pool) th.join();
            }
            std::ostringstream csv;
            csv << "alpha,re,im,modulus\n";
            for (std::int64_t k = 0; k < den; ++k) {
                const cplx v = coeffs[static_cast<std::size_t>(k)];
                csv << format_double(static_cast<double>(k) / static_cast<double>(den)) << ","
                    << format_double(v.real()) << "," << format_double(v.imag()) << ","
                    << format_double(std::abs(v)) << "\n";
            }
            emit(csv.str(), sp_args->out);
            rc = 0;
        });
    }

    // ---- weyl --------------------------------------------------------------
    auto wy_args = std::make_shared<CommonArgs>();
    auto wy_alpha = std::make_shared<double>(0.0);
    auto wy_num = std::make_shared<std::int64_t>(0);
    auto wy_den = std::make_shared<std::int64_t>(0);
    auto wy_delta = std::make_shared<double>(0.1);
    auto wy_c = std::make_shared<double>(3.0);
    auto wy_start = std::make_shared<std::int64_t>(0);
    auto wy_step = std::make_shared<std::int64_t>(1);
    auto wy_len = std::make_shared<std::int64_t>(0);
    {
        CLI::App* sub = app.add_subcommand("weyl", "quadratic Weyl sum and frequency finder");
        sub->add_option("--N", wy_args->n)->required();
        sub->add_option("--alpha", *wy_alpha, "frequency as a double");
        sub->add_option("--alpha-num", *wy_num, "frequency numerator (exact rational)");
        sub->add_option("--alpha-den", *wy_den, "frequency denominator");
        sub->add_option("--delta", *wy_delta)->default_val(0.1);
        sub->add_option("--C", *wy_c, "tuning exponent")->default_val(3.0);
        sub->add_option("--start", *wy_start, "progression start (default full range)");
        sub->add_option("--step", *wy_step)->default_val(1);
        sub->add_option("--length", *wy_len, "progression length (default N)");
        sub->add_option("--out", wy_args->out);
        sub->callback([=, &rc] {
            const Frequency alpha = *wy_den > 0 ? Frequency::rational(*wy_num, *wy_den)
                                                : Frequency(*wy_alpha);
            const Progression p{*wy_start, *wy_step, *wy_len > 0 ? *wy_len : wy_args->n};
            const auto outcome = weyl_frequency_finder(p, wy_args->n, alpha, *wy_delta, *wy_c);
            const cplx s = quadratic_weyl_sum(p, wy_args->n, alpha);
            json j{{"schema", 1},
                   {"alpha", alpha.value()},
                   {"sum_re", s.real()},
                   {"sum_im", s.imag()},
                   {"normalized_sum", outcome.normalized_sum}};
            if (outcome.q_prime) {
                j["q_prime"] = *outcome.q_prime;
                j["distance"] = outcome.distance;
                rc = 0;
            } else {
                j["diagnostic"] = outcome.diagnostic;
                rc = 1;
            }
            emit_json(j, wy_args->out);
        });
    }

    // ---- moment6 -----------------------------------------------------------
    auto m6_args = std::make_shared<CommonArgs>();
    {
        CLI::App* sub = app.add_subcommand("moment6", "count of equal three-square sums");
        sub->add_option("--N", m6_args->n)->required();
        sub->add_option("--out", m6_args->out);
        sub->callback([=, &rc] {
            const std::int64_t count = sixth_moment_squares(m6_args->n);
            const double n4 = std::pow(static_cast<double>(m6_args->n), 4.0);
            const json j{{"schema", 1},
                         {"N", m6_args->n},
                         {"count", count},
                         {"ratio_n4", static_cast<double>(count) / n4}};
            emit_json(j, m6_args->out);
            rc = 0;
        });
    }

    // ---- majorarc ----------------------------------------------------------
    auto ma_args = std::make_shared<CommonArgs>();
    auto ma_delta = std::make_shared<double>(0.1);
    auto ma_c0 = std::make_shared<double>(0.125);
    auto ma_exp = std::make_shared<double>(3.0);
    auto ma_step = std::make_shared<std::int64_t>(4);
    auto ma_fn_f = std::make_shared<std::string>();
    auto ma_fn_g = std::make_shared<std::string>();
    {
        CLI::App* sub = app.add_subcommand("majorarc", "major-arc frequency witness for h");
        sub->add_option("--N", ma_args->n);
        sub->add_option("--set", ma_args->set_spec, "h as a set indicator");
        sub->add_option("--fn", ma_args->fn_path, "h as a function CSV");
        sub->add_option("--fn-f", *ma_fn_f, "f (default all-ones)");
        sub->add_option("--fn-g", *ma_fn_g, "g (default all-ones)");
        sub->add_option("--delta", *ma_delta)->default_val(0.1);
        sub->add_option("--c0", *ma_c0, "eta coefficient")->default_val(0.125);
        sub->add_option("--C", *ma_exp, "budget exponent")->default_val(3.0);
        sub->add_option("--max-step", *ma_step, "progression family step cap")->default_val(4);
        sub->add_option("--threads", ma_args->threads)->default_val(1);
        sub->add_option("--out", ma_args->out);
        sub->callback([=, &rc] {
            const BoundedFunction h = resolve_function(*ma_args);
            const std::int64_t n = h.length();
            const BoundedFunction ones = BoundedFunction::constant(n, cplx{1.0, 0.0});
            const BoundedFunction f = ma_fn_f->empty() ? ones : read_function_file(*ma_fn_f);
            const BoundedFunction g = ma_fn_g->empty() ? ones : read_function_file(*ma_fn_g);
            const CountingParams p = CountingParams::make(1, n);
            MajorArcConfig config;
            config.eta_coefficient = *ma_c0;
            config.exponent_c = *ma_exp;
            config.max_progression_step = *ma_step;
            config.threads = ma_args->threads;
            const MajorArcOutcome outcome = major_arc_witness(p, f, g, h, *ma_delta, config);
            json j{{"schema", 1}, {"lambda_modulus", outcome.lambda_modulus}};
            if (outcome.witness) {
                const MajorArcWitness& w = *outcome.witness;
                j["alpha"] = w.alpha.value();
                if (w.alpha.is_rational()) {
                    j["alpha_num"] = w.alpha.numerator();
                    j["alpha_den"] = w.alpha.denominator();
                }
                j["q"] = w.q;
                j["q_alpha_distance"] = w.q_alpha_distance;
                j["coefficient_modulus"] = w.coefficient_modulus;
                rc = 0;
            } else {
                j["diagnostic"] = outcome.diagnostic;
                rc = 1;
            }
            emit_json(j, ma_args->out);
        });
    }

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const configuration_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}

}  // namespace nlroth::cli
