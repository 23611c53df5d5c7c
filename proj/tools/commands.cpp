#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "blend/errors.hpp"
#include "blend/models/test_functions.hpp"
#include "blend/series.hpp"
#include "expression.hpp"
#include "published_tables.hpp"

namespace blend::cli {
namespace {

nlohmann::json config_json(const BlendConfig& c, BoundFormula formula = BoundFormula::lemma2) {
    return {
        {"h0", c.h0},
        {"n_max", c.n_max},
        {"max_h_refinements", c.max_h_refinements},
        {"h_shrink_factor", c.h_shrink_factor},
        {"min_agree_digits", c.min_agree_digits},
        {"precision_cap", c.precision_cap},
        {"formula", std::string(to_string(formula))},
    };
}

std::vector<TraceRow> trace_rows(const PartialSumTrace& trace) {
    std::vector<TraceRow> rows;
    for (int n = 1; n <= trace.n_max(); ++n) {
        rows.push_back({n, trace.delta(n), std::nullopt, std::nullopt});
    }
    return rows;
}

Section report_section(std::string title, const BlendReport& r, double h0) {
    Section s;
    s.title = std::move(title);
    s.trace = trace_rows(r.trace);
    s.fields["value"] = r.value;
    s.fields["agreed_digits"] = r.agreed_digits;
    s.fields["stabilized"] = r.stabilized;
    s.fields["h0"] = h0;
    s.fields["h_used"] = r.h_used;
    s.fields["refinements_performed"] = r.refinements_performed;
    s.fields["eval_count"] = r.eval_count;
    if (!r.stabilized) {
        s.notes.push_back("no stabilization: the last two partial sums agree in fewer digits than required");
    }
    return s;
}

FunctionOracle resolve_function(const std::string& name, std::optional<models::AnalyticTestFunction>& catalog) {
    catalog = models::find_catalog_function(name);
    if (catalog) {
        return catalog->oracle();
    }
    try {
        auto expr = Expression::parse(name);
        return FunctionOracle(
            [expr](double x) {
                const double y = expr(x);
                if (std::isnan(y) && !std::isnan(x)) {
                    throw std::domain_error("'" + expr.text() + "' is undefined at x = " + format_double(x, 17));
                }
                return y;
            },
            true);
    } catch (const ExpressionError& e) {
        throw UsageError("unknown function '" + name + "' (not a catalog name, and " + e.what() + ")");
    }
}

int exit_for(const BlendReport& r) {
    return r.stabilized ? kExitOk : kExitNotStabilized;
}

std::vector<double> default_direction(int dim) {
    if (dim == 9) {
        return published_direction();
    }
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        v[static_cast<std::size_t>(i)] = (i % 2 == 0) ? 1.0 : -1.0;
    }
    return DirectionSpec::unit(std::move(v)).direction;
}

Section published_section(const PublishedTable& table, const PartialSumTrace& trace) {
    Section s;
    s.title = "table " + std::to_string(table.id) + ": " + std::string(table.title);
    int matched = 0;
    for (int n = 1; n <= trace.n_max(); ++n) {
        const double published = table.values[static_cast<std::size_t>(n - 1)];
        const bool ok = std::fabs(trace.delta(n) - published) <= table.tolerance;
        matched += ok ? 1 : 0;
        s.trace.push_back({n, trace.delta(n), published, ok});
    }
    s.fields["h"] = table.h;
    s.fields["tolerance"] = table.tolerance;
    s.fields["rows_matched"] = matched;
    s.notes.emplace_back(table.note);
    return s;
}

} // namespace

std::vector<double> published_direction() {
    const double third = 1.0 / 3.0;
    return {-third, third, -third, -third, third, third, third, -third, third};
}

OutputRecord cmd_diff(const DiffOptions& opts, EvalOptions eval) {
    opts.config.validate();
    std::optional<models::AnalyticTestFunction> catalog;
    const FunctionOracle oracle = resolve_function(opts.function, catalog);

    OutputRecord rec;
    rec.config = config_json(opts.config);
    rec.config["function"] = opts.function;
    rec.config["theta"] = opts.theta;

    const BlendReport r = run_blend(oracle, opts.theta, opts.config, eval);
    Section s = report_section("diff " + opts.function, r, opts.config.h0);
    if (catalog) {
        const double ref = catalog->derivative_at(opts.theta);
        s.fields["reference_derivative"] = ref;
        s.fields["abs_error"] = std::fabs(r.trace.delta(opts.config.n_max) - ref);
        if (catalog->envelope) {
            const auto est = remainder_bound(*catalog->envelope, opts.config.n_max, r.h_used);
            s.fields["remainder_bound"] = est.valid ? nlohmann::json(est.bound) : nlohmann::json("invalid");
            s.fields["h_domain"] = h_domain(*catalog->envelope);
            if (opts.h0_given && r.refinements_performed == 0 && !(opts.config.h0 < h_domain(*catalog->envelope))) {
                s.notes.push_back("caveat: h0 is outside the step domain of the known growth envelope; "
                                  "digit agreement does not certify correctness here");
            }
        }
    }
    rec.sections.push_back(std::move(s));
    rec.exit_code = exit_for(r);
    return rec;
}

OutputRecord cmd_plan(const PlanOptions& opts) {
    opts.envelope.validate();
    const StepPlan plan = solve_k_exact_step(opts.envelope, opts.N, opts.K, opts.formula);

    OutputRecord rec;
    rec.config = {{"M", opts.envelope.M}, {"b", opts.envelope.b}, {"N", opts.N}, {"K", opts.K},
                  {"formula", std::string(to_string(opts.formula))}};
    Section s;
    s.title = "plan";
    s.fields["h_domain"] = plan.domain_limit;
    s.fields["h_star"] = plan.h;
    s.fields["bound_at_h_star"] = plan.bound;
    s.fields["target"] = plan.target;
    s.fields["formula"] = std::string(to_string(plan.formula));
    s.fields["fallback"] = plan.fallback;
    s.fields["iterations"] = plan.iterations;
    if (plan.fallback) {
        s.notes.push_back("warning: no root of the bound equation inside the step domain; "
                          "returning 0.99 x domain limit");
    }
    rec.sections.push_back(std::move(s));
    rec.exit_code = kExitOk;
    return rec;
}

OutputRecord cmd_tables(const std::vector<int>& which, EvalOptions eval) {
    OutputRecord rec;
    rec.config["tables"] = which;
    constexpr int n_max = 8;

    for (int id : which) {
        if (id < 1 || id > 5) {
            throw UsageError("tables: expected ids 1..5");
        }
        const PublishedTable& table = kPublishedTables[static_cast<std::size_t>(id - 1)];
        switch (id) {
        case 1:
        case 2: {
            const auto oracle = models::sine().oracle();
            Section s = published_section(table, blend_partial_sums(oracle, 0.0, table.h, n_max, eval));
            BlendConfig cfg;
            cfg.h0 = table.h;
            cfg.max_h_refinements = 0;
            const BlendReport r = run_blend(oracle, 0.0, cfg, eval);
            s.fields["stabilized_without_refinement"] = r.stabilized;
            s.fields["agreed_digits"] = r.agreed_digits;
            s.fields["reference_derivative"] = 1.0;
            rec.sections.push_back(std::move(s));
            break;
        }
        case 3: {
            const auto oracle = models::quartic5().oracle();
            Section s = published_section(table, blend_partial_sums(oracle, 2.0, table.h, n_max, eval));
            BlendConfig cfg;
            cfg.h0 = table.h;
            const BlendReport r = run_blend(oracle, 2.0, cfg, eval);
            s.fields["value"] = r.value;
            s.fields["agreed_digits"] = r.agreed_digits;
            s.fields["reference_derivative"] = 160.0;
            rec.sections.push_back(std::move(s));
            break;
        }
        case 4: {
            std::vector<double> a(9);
            std::vector<double> theta(9);
            for (int i = 1; i <= 9; ++i) {
                a[static_cast<std::size_t>(i - 1)] = std::ldexp(1.0, -i);
                theta[static_cast<std::size_t>(i - 1)] = i;
            }
            const auto fn = models::quadratic_sum(a);
            const auto dir = DirectionSpec::as_given(published_direction());
            const auto oracle = directional_oracle(fn.evaluate, theta, dir, true);
            Section s = published_section(table, blend_partial_sums(oracle, 0.0, table.h, n_max, eval));
            s.fields["analytic_directional_derivative"] = fn.reference_derivative(theta, dir.direction);
            s.fields["published_true_value"] = 3.9570312500138101;
            rec.sections.push_back(std::move(s));
            break;
        }
        case 5: {
            const models::TandemQueueModel model;
            const auto oracle = models::queue_sensitivity_oracle(model);
            Section s = published_section(table, blend_partial_sums(oracle, model.lambda, table.h, n_max, eval));
            BlendConfig cfg;
            cfg.h0 = table.h;
            const BlendReport r = run_blend(oracle, model.lambda, cfg, eval);
            s.fields["value"] = r.value;
            s.fields["agreed_digits"] = r.agreed_digits;
            s.fields["published_true_value"] = kPublishedQueueDerivative;
            rec.sections.push_back(std::move(s));
            break;
        }
        }
    }
    rec.exit_code = kExitOk;
    return rec;
}

OutputRecord cmd_direction(const DirectionOptions& opts, EvalOptions eval) {
    if (opts.dim < 1) {
        throw UsageError("--dim must be positive");
    }
    const auto m = static_cast<std::size_t>(opts.dim);
    std::vector<double> a = opts.a;
    std::vector<double> theta = opts.theta;
    std::vector<double> v = opts.v;
    if (a.empty()) {
        for (std::size_t i = 1; i <= m; ++i) a.push_back(std::ldexp(1.0, -static_cast<int>(i)));
    }
    if (theta.empty()) {
        for (std::size_t i = 1; i <= m; ++i) theta.push_back(static_cast<double>(i));
    }
    if (v.empty()) {
        v = default_direction(opts.dim);
    }
    if (a.size() != m || theta.size() != m || v.size() != m) {
        throw UsageError("direction: --a, --theta and --v must all have --dim components");
    }
    const DirectionSpec dir = opts.normalize ? DirectionSpec::unit(v) : DirectionSpec::as_given(v);
    if (!dir.normalized) {
        throw UsageError("direction: |v| != 1 (pass --normalize to rescale)");
    }
    opts.config.validate();

    const auto fn = models::quadratic_sum(a);
    const auto oracle = directional_oracle(fn.evaluate, theta, dir, true);
    const BlendReport r = run_blend(oracle, 0.0, opts.config, eval);

    OutputRecord rec;
    rec.config = config_json(opts.config);
    rec.config["dim"] = opts.dim;
    rec.config["a"] = a;
    rec.config["theta"] = theta;
    rec.config["v"] = dir.direction;
    Section s = report_section("directional derivative", r, opts.config.h0);
    s.fields["analytic_reference"] = fn.reference_derivative(theta, dir.direction);
    s.fields["dim"] = opts.dim;
    s.notes.push_back("stencil points are theta + k h v");
    rec.sections.push_back(std::move(s));
    rec.exit_code = exit_for(r);
    return rec;
}

OutputRecord cmd_queue(const QueueOptions& opts, EvalOptions eval) {
    const auto& model = opts.model;
    if (!(model.lambda > 0.0) || !(model.mu1 > 0.0) || !(model.mu2 > 0.0)) {
        throw UsageError("queue: rates must be positive (stencil points lambda + k h must stay > 0; "
                         "use a smaller h0 or a larger lambda)");
    }
    if (model.cap1 < 1 || model.cap2 < 1) {
        throw UsageError("queue: capacities must be >= 1");
    }
    opts.config.validate();

    const auto oracle = models::queue_sensitivity_oracle(model);
    const BlendReport r = run_blend(oracle, model.lambda, opts.config, eval);

    OutputRecord rec;
    rec.config = config_json(opts.config);
    rec.config["lambda"] = model.lambda;
    rec.config["mu1"] = model.mu1;
    rec.config["mu2"] = model.mu2;
    rec.config["cap1"] = model.cap1;
    rec.config["cap2"] = model.cap2;

    Section s = report_section("blocking probability sensitivity", r, opts.config.h0);
    const auto base = models::evaluate_blocking(model);
    s.fields["blocking_probability"] = base.probability;
    s.fields["states"] = model.state_count();

    // Residual diagnostics over every stencil point of the accepted trace.
    double worst_residual = 0.0;
    double worst_mass = 0.0;
    for (std::size_t k = 0; k < r.trace.cached_values.size(); ++k) {
        auto m = model;
        m.lambda = stencil_point(model.lambda, r.h_used, k);
        const auto ev = models::evaluate_blocking(m);
        double mass = 0.0;
        for (double p : ev.stationary.probabilities) mass += p;
        worst_residual = std::max(worst_residual, ev.stationary.residual_norm);
        worst_mass = std::max(worst_mass, std::fabs(mass - 1.0));
    }
    s.fields["max_residual_norm"] = worst_residual;
    s.fields["max_normalization_error"] = worst_mass;

    const double ch = 1e-5;
    if (model.lambda > ch) {
        auto lo = model;
        auto hi = model;
        lo.lambda -= ch;
        hi.lambda += ch;
        s.fields["central_difference_check"] =
            (models::blocking_probability(hi) - models::blocking_probability(lo)) / (2.0 * ch);
    }
    rec.sections.push_back(std::move(s));

    if (opts.stationary_csv) {
        std::ofstream f(*opts.stationary_csv);
        if (!f) {
            throw std::runtime_error("cannot write " + *opts.stationary_csv);
        }
        models::write_stationary_csv(f, model, base.stationary);
        rec.notes.push_back("stationary distribution written to " + *opts.stationary_csv);
    }
    rec.exit_code = exit_for(r);
    return rec;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"blend: black-box logarithmic-series numerical derivatives"};
    app.require_subcommand(1);

    std::string format_name = "table";
    std::optional<std::string> out_path;
    BlendConfig config;
    bool no_refine = false;
    std::string formula_name = "lemma2";

    auto add_common = [&](CLI::App* sub, bool blend_flags) {
        sub->add_option("--format", format_name, "table | csv | json")
            ->check(CLI::IsMember({"table", "csv", "json"}));
        sub->add_option("--out", out_path, "write output to a file instead of stdout");
        sub->add_option("--formula", formula_name, "lemma2 | eq12")->check(CLI::IsMember({"lemma2", "eq12"}));
        if (blend_flags) {
            sub->add_option("--h0", config.h0, "initial step");
            sub->add_option("--n-max", config.n_max, "highest series order");
            sub->add_option("--refinements", config.max_h_refinements, "maximum number of step halvings");
            sub->add_flag("--no-refine", no_refine, "do not shrink h");
            sub->add_option("--min-digits", config.min_agree_digits, "digits required for stabilization");
        }
    };

    DiffOptions diff;
    auto* diff_cmd = app.add_subcommand("diff", "differentiate a catalog function or expression in x");
    diff_cmd->add_option("function", diff.function, "catalog name (sin, cos, exp, quartic5, expdensity) or expression")
        ->required();
    diff_cmd->add_option("--theta", diff.theta, "evaluation point");
    add_common(diff_cmd, true);

    PlanOptions plan;
    auto* plan_cmd = app.add_subcommand("plan", "step size for K exact digits from growth constants");
    plan_cmd->add_option("--M", plan.envelope.M, "derivative growth constant M")->required();
    plan_cmd->add_option("--b", plan.envelope.b, "derivative growth rate b")->required();
    plan_cmd->add_option("--N", plan.N, "series order");
    plan_cmd->add_option("--K", plan.K, "exact digits");
    add_common(plan_cmd, false);

    std::vector<std::string> table_ids;
    auto* tables_cmd = app.add_subcommand("tables", "regenerate the published runs (1..5 or all)");
    tables_cmd->add_option("which", table_ids, "table ids or 'all'");
    add_common(tables_cmd, false);

    DirectionOptions direction;
    auto* dir_cmd = app.add_subcommand("direction", "directional derivative of sum a_i theta_i^2");
    dir_cmd->add_option("--dim", direction.dim, "dimension m");
    dir_cmd->add_option("--a", direction.a, "coefficients a_i")->delimiter(',');
    dir_cmd->add_option("--theta", direction.theta, "point theta")->delimiter(',');
    dir_cmd->add_option("--v", direction.v, "direction v")->delimiter(',');
    dir_cmd->add_flag("--normalize", direction.normalize, "rescale v to unit length");
    add_common(dir_cmd, true);

    QueueOptions queue;
    std::string stationary_path;
    auto* queue_cmd = app.add_subcommand("queue", "blocking-probability sensitivity of the tandem queue");
    queue_cmd->add_option("--lambda", queue.model.lambda, "arrival rate");
    queue_cmd->add_option("--mu1", queue.model.mu1, "station 1 service rate");
    queue_cmd->add_option("--mu2", queue.model.mu2, "station 2 service rate");
    queue_cmd->add_option("--cap1", queue.model.cap1, "station 1 capacity");
    queue_cmd->add_option("--cap2", queue.model.cap2, "station 2 capacity");
    queue_cmd->add_option("--stationary-csv", stationary_path, "write the stationary distribution as CSV");
    add_common(queue_cmd, true);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::string echo = "blend";
    for (const auto& a : args) {
        echo += " " + a;
    }

    const Format format = format_name == "json" ? Format::json : format_name == "csv" ? Format::csv : Format::table;
    if (no_refine) {
        config.max_h_refinements = 0;
    }
    OutputRecord rec;
    try {
        const EvalOptions eval = eval_options_from_env();
        const auto formula = parse_bound_formula(formula_name).value_or(BoundFormula::lemma2);
        if (*diff_cmd) {
            diff.config = config;
            diff.h0_given = diff_cmd->count("--h0") > 0;
            rec = cmd_diff(diff, eval);
        } else if (*plan_cmd) {
            plan.formula = formula;
            rec = cmd_plan(plan);
        } else if (*tables_cmd) {
            std::vector<int> ids;
            if (table_ids.empty() || std::find(table_ids.begin(), table_ids.end(), "all") != table_ids.end()) {
                ids = {1, 2, 3, 4, 5};
            } else {
                for (const auto& t : table_ids) {
                    if (t.size() != 1 || t[0] < '1' || t[0] > '5') {
                        throw UsageError("tables: unknown table '" + t + "'");
                    }
                    ids.push_back(t[0] - '0');
                }
            }
            rec = cmd_tables(ids, eval);
        } else if (*dir_cmd) {
            direction.config = config;
            rec = cmd_direction(direction, eval);
        } else if (*queue_cmd) {
            queue.config = config;
            if (!stationary_path.empty()) {
                queue.stationary_csv = stationary_path;
            }
            rec = cmd_queue(queue, eval);
        }
        if (rec.config.is_object() && !rec.config.contains("formula")) {
            rec.config["formula"] = std::string(to_string(formula));
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
    rec.command = echo;

    const std::string text = render(rec, format);
    if (out_path) {
        std::ofstream f(*out_path, std::ios::binary);
        if (!f) {
            err << "runtime error: cannot write " << *out_path << "\n";
            return kExitRuntime;
        }
        f << text;
    } else {
        out << text;
    }
    return rec.exit_code;
}

} // namespace blend::cli
