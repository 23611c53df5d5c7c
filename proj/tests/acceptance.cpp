// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "blend/bounds.hpp"
#include "blend/driver.hpp"
#include "blend/models/tandem_queue.hpp"
#include "blend/models/test_functions.hpp"
#include "blend/series.hpp"
#include "commands.hpp"
#include "published_tables.hpp"
#include "support/reference.hpp"

namespace {

using namespace blend;
using testing::hp;
using testing::hp100;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!detail.empty()) {
            detail += "; ";
        }
        detail += (ok ? "" : "FAILED ") + what;
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

const cli::PublishedTable& published(int id) {
    return cli::kPublishedTables[static_cast<std::size_t>(id - 1)];
}

double max_row_error(const PartialSumTrace& tr, const cli::PublishedTable& t) {
    double worst = 0.0;
    for (int n = 1; n <= 8; ++n) {
        worst = std::max(worst, std::fabs(tr.delta(n) - t.values[static_cast<std::size_t>(n - 1)]));
    }
    return worst;
}

// Independent reference: the uncollapsed series in 50 digits.
double max_reference_gap(const PartialSumTrace& tr, double theta, double h) {
    double worst = 0.0;
    for (int n = 1; n <= tr.n_max(); ++n) {
        const hp ref = testing::partial_sum_direct(testing::hp_sin, hp(theta), hp(h), n);
        worst = std::max(worst, std::fabs(tr.delta(n) - static_cast<double>(ref)));
    }
    return worst;
}

Outcome criterion1() {
    Outcome o;
    const auto s = models::sine().oracle();
    const auto t0 = Clock::now();
    const auto tr = blend_partial_sums(s, 0.0, 0.1, 8);
    const double ms = ms_since(t0);
    const double err = max_row_error(tr, published(1));
    o.check(err <= 1e-12, "max |row - printed| " + fmt("%.2e", err) + " <= 1e-12");
    o.check(ms < 1.0, "runtime " + fmt("%.3f", ms) + " ms < 1 ms");
    const double gap = max_reference_gap(tr, 0.0, 0.1);
    o.check(gap <= 1e-14, "50-digit series reference gap " + fmt("%.2e", gap));
    o.check(std::fabs(tr.delta(8) - 1.0) <= 1e-8, "Delta(8) vs cos(0) " + fmt("%.2e", std::fabs(tr.delta(8) - 1.0)));
    return o;
}

Outcome criterion2() {
    Outcome o;
    const auto s = models::sine().oracle();
    const auto tr = blend_partial_sums(s, 0.0, 1.0, 8);
    const double err = max_row_error(tr, published(2));
    o.check(err <= 1e-12, "max |row - printed| " + fmt("%.2e", err) + " <= 1e-12");
    const double gap = max_reference_gap(tr, 0.0, 1.0);
    o.check(gap <= 1e-13, "50-digit series reference gap " + fmt("%.2e", gap));
    BlendConfig cfg;
    cfg.h0 = 1.0;
    cfg.max_h_refinements = 0;
    const auto r = run_blend(s, 0.0, cfg);
    o.check(!r.stabilized, std::string("run_blend without refinement stabilized=") + (r.stabilized ? "true" : "false"));
    return o;
}

Outcome criterion3() {
    Outcome o;
    const auto q = models::quartic5().oracle();
    const double d1 = blend_partial_sums(q, 2.0, 0.001, 1).delta(1);
    const double err = std::fabs(d1 - published(3).values[0]);
    o.check(err <= 1e-9, "N=1 " + fmt("%.16g", d1) + " error " + fmt("%.2e", err) + " <= 1e-9");
    BlendConfig cfg;
    cfg.h0 = 0.001;
    const auto r = run_blend(q, 2.0, cfg);
    o.check(r.stabilized && r.agreed_digits >= 10,
            "stabilized with L=" + std::to_string(r.agreed_digits) + " >= 10");
    const int vs160 = agreed_significant_digits(r.value, 160.0, 15);
    o.check(vs160 >= 10, "value " + fmt("%.15g", r.value) + " agrees with 160 in " + std::to_string(vs160) + " digits");
    return o;
}

Outcome criterion4() {
    Outcome o;
    const models::TandemQueueModel model;  // lambda=1, mu1=1, mu2=2, caps 10/10
    const auto t0 = Clock::now();
    const auto f = models::queue_sensitivity_oracle(model);
    const auto tr = blend_partial_sums(f, model.lambda, 0.01, 8);
    BlendConfig cfg;
    cfg.h0 = 0.01;
    const auto r = run_blend(models::queue_sensitivity_oracle(model), model.lambda, cfg);
    double residual = 0.0;
    double norm_err = 0.0;
    for (int k = 0; k <= 8; ++k) {
        models::TandemQueueModel m = model;
        m.lambda = stencil_point(model.lambda, 0.01, static_cast<std::size_t>(k));
        const auto ev = models::evaluate_blocking(m);
        residual = std::max(residual, ev.stationary.residual_norm);
        double total = 0.0;
        for (double p : ev.stationary.probabilities) {
            total += p;
        }
        norm_err = std::max(norm_err, std::fabs(total - 1.0));
    }
    const double ms = ms_since(t0);
    const double row_err = std::fabs(tr.delta(1) - published(5).values[0]);
    o.check(row_err <= 1e-8, "N=1 " + fmt("%.12g", tr.delta(1)) + " vs printed 0.613180514116096, error " +
                                 fmt("%.2e", row_err) + " <= 1e-8");
    const double val_err = std::fabs(r.value - cli::kPublishedQueueDerivative);
    o.check(r.stabilized && val_err <= 1e-6, "stabilized " + fmt("%.12g", r.value) + " vs printed 0.609663168, error " +
                                                 fmt("%.2e", val_err) + " <= 1e-6");
    o.check(residual <= 1e-10, "max ||pi Q||_inf " + fmt("%.2e", residual) + " <= 1e-10");
    o.check(norm_err <= 1e-12, "max |sum pi - 1| " + fmt("%.2e", norm_err) + " <= 1e-12");
    o.check(ms < 5000.0, "runtime " + fmt("%.1f", ms) + " ms < 5 s");
    return o;
}

Outcome criterion5() {
    Outcome o;
    const auto plan = solve_k_exact_step({120.0, 2.4}, 2, 6, BoundFormula::eq12);
    o.check(!plan.fallback && plan.h >= 1.2e-4 && plan.h <= 1.4e-4, "h* = " + fmt("%.6e", plan.h) + " in [1.2e-4, 1.4e-4]");
    const auto q = models::quartic5().oracle();
    const double d = blend_partial_sums(q, 2.0, plan.h, 2).delta(2);
    const int digits = agreed_significant_digits(d, 160.0, 15);
    o.check(digits >= 6, "Delta(2,h*) = " + fmt("%.12g", d) + " agrees with 160 in " + std::to_string(digits) + " digits >= 6");
    return o;
}

hp hp_quartic5(const hp& t) {
    return 5 * t * t * t * t;
}

Outcome criterion6() {
    Outcome o;
    struct Case {
        const char* name;
        GrowthEnvelope env;
        double theta;
        std::function<hp(const hp&)> f;
        hp derivative;
    };
    const std::vector<Case> cases{
        {"sin", {1.0, 1.0}, 0.0, testing::hp_sin, hp(1)},
        {"5t^4", {120.0, 2.4}, 2.0, hp_quartic5, hp(160)},
    };
    int points = 0;
    int violations = 0;
    int scaled_violations = 0;
    double worst_ratio = 0.0;
    for (const auto& c : cases) {
        for (int N = 1; N <= 12; ++N) {
            for (double h : {0.001, 0.005, 0.01, 0.05}) {
                const auto r = remainder_bound(c.env, N, h);
                if (!r.valid) {
                    continue;
                }
                ++points;
                const double err = static_cast<double>(abs(c.derivative - testing::partial_sum_direct(c.f, hp(c.theta), hp(h), N)));
                if (err > r.bound) {
                    ++violations;
                    worst_ratio = std::max(worst_ratio, err / r.bound);
                }
                if (h * err > r.bound) {
                    ++scaled_violations;
                }
            }
        }
    }
    o.check(violations == 0, "|phi' - Delta(N,h)| <= remainder bound at " + std::to_string(points - violations) + "/" +
                                 std::to_string(points) + " grid points (worst ratio " + fmt("%.3g", worst_ratio) + ")");
    o.check(scaled_violations == 0, "series tail h|phi' - Delta| <= bound at " +
                                        std::to_string(points - scaled_violations) + "/" + std::to_string(points));
    int op_points = 0;
    int op_violations = 0;
    for (int n = 1; n <= 20; ++n) {
        for (double h : {0.001, 0.005, 0.01, 0.05}) {
            for (double theta : {0.0, 0.5, 1.0}) {
                ++op_points;
                const hp100 v = testing::operator_power_direct(testing::hp100_sin, hp100(theta), hp100(h), n);
                if (static_cast<double>(abs(v)) > operator_power_bound({1.0, 1.0}, n, h)) {
                    ++op_violations;
                }
            }
        }
    }
    o.check(op_violations == 0, "operator power bound at " + std::to_string(op_points - op_violations) + "/" +
                                    std::to_string(op_points) + " points, n <= 20");
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> theta_dist(-10.0, 10.0);
    std::uniform_real_distribution<double> log_h(std::log(1e-4), std::log(1e-1));
    constexpr int kTrials = 2000;
    int rel_fail = 0;
    int literal_fail = 0;
    double worst = 0.0;
    int null_points = 0;
    int null_fail = 0;
    for (int trial = 0; trial < kTrials; ++trial) {
        const int d = trial % 7;
        const auto p = testing::random_polynomial(rng, d);
        const double theta = theta_dist(rng);
        const double h = std::exp(log_h(rng));
        const int N = std::max(d, 1) + static_cast<int>(rng() % 3);
        const FunctionOracle f([&p](double t) { return p(t); });
        const double got = blend_partial_sums(f, theta, h, N).delta(N);
        const double want = static_cast<double>(p.derivative_exact(theta));
        const double err = std::fabs(got - want);
        // Relative to the derivative's magnitude, floored at the cancellation-free
        // scale sum i |c_i| |theta|^{i-1} so roots of p' stay well posed.
        const double rel = err / std::max(std::fabs(want), p.derivative_scale(theta));
        worst = std::max(worst, rel);
        rel_fail += rel > 1e-10 ? 1 : 0;
        literal_fail += err > 1e-10 * std::fabs(want) ? 1 : 0;
        for (int n = d + 1; n <= d + 6; ++n) {
            double scale = 0.0;
            for (int k = 0; k <= n; ++k) {
                scale = std::max(scale, std::fabs(p(stencil_point(theta, h, static_cast<std::size_t>(k)))));
            }
            ++null_points;
            null_fail += std::fabs(operator_power(f, theta, h, n).value) > 1e-8 * scale ? 1 : 0;
        }
    }
    o.check(rel_fail == 0, "Delta(N,h) vs p'(theta) within relative 1e-10 in " + std::to_string(kTrials - rel_fail) + "/" +
                               std::to_string(kTrials) + " trials (worst " + fmt("%.2e", worst) + "; against |p'| alone " +
                               std::to_string(kTrials - literal_fail) + "/" + std::to_string(kTrials) + ")");
    o.check(null_fail == 0, "operator power <= 1e-8 scale for n > d at " + std::to_string(null_points - null_fail) + "/" +
                                std::to_string(null_points) + " points");
    return o;
}

Outcome criterion8() {
    Outcome o;
    int points = 0;
    int fails = 0;
    int exact_fails = 0;
    for (double theta : {0.5, 1.0, 2.0}) {
        for (double x : {0.5, 1.0}) {
            const auto f = models::exp_density(x).oracle();
            for (double h : {0.01, 0.05, 0.1}) {
                for (int n = 1; n <= 15; ++n) {
                    ++points;
                    const double want = models::exp_density_operator_power(theta, x, h, n);
                    const double got = operator_power(f, theta, h, n).value;
                    fails += std::fabs(got - want) > 1e-10 * std::fabs(want) ? 1 : 0;
                    std::vector<hp> values;
                    for (int k = 0; k <= n; ++k) {
                        const hp t = hp(theta) + k * hp(h);
                        values.push_back(t * boost::multiprecision::exp(-t * hp(x)));
                    }
                    const double exact = static_cast<double>(alternating_binomial_sum<hp>(values));
                    exact_fails += std::fabs(exact - want) > 1e-10 * std::fabs(want) ? 1 : 0;
                }
            }
        }
    }
    o.check(fails == 0, "double operator_power vs closed form within relative 1e-10 at " + std::to_string(points - fails) +
                            "/" + std::to_string(points) + " grid points");
    o.check(exact_fails == 0, "same sum on 50-digit values at " + std::to_string(points - exact_fails) + "/" +
                                  std::to_string(points));
    double acc = 0.0;
    for (int n = 1; n <= 60; ++n) {
        acc += models::exp_density_operator_power(1.0, 1.0, 0.05, n) / n;
    }
    const double series = -acc / 0.05;
    o.check(std::fabs(series) <= 1e-8, "series to n=60 at theta x = 1: " + fmt("%.2e", series));
    return o;
}

std::vector<double> first_n(std::size_t m, const std::function<double(std::size_t)>& g) {
    std::vector<double> v(m);
    for (std::size_t i = 0; i < m; ++i) {
        v[i] = g(i + 1);
    }
    return v;
}

Outcome criterion9() {
    Outcome o;
    const auto a_of = [](std::size_t m) { return first_n(m, [](std::size_t i) { return std::ldexp(1.0, -static_cast<int>(i)); }); };
    const auto theta_of = [](std::size_t m) { return first_n(m, [](std::size_t i) { return static_cast<double>(i); }); };
    std::vector<std::uint64_t> counts;
    for (std::size_t m : {3u, 9u, 50u}) {
        const auto q = models::quadratic_sum(a_of(m));
        const auto v = first_n(m, [](std::size_t i) { return i % 2 == 1 ? 1.0 : -1.0; });
        const auto f = directional_oracle(q.evaluate, theta_of(m), DirectionSpec::unit(v));
        counts.push_back(run_blend(f, 0.0, {}).eval_count);
    }
    o.check(counts[0] == counts[1] && counts[1] == counts[2],
            "eval counts m=3,9,50: " + std::to_string(counts[0]) + "," + std::to_string(counts[1]) + "," + std::to_string(counts[2]));
    const auto v = cli::published_direction();
    double analytic = 0.0;
    for (std::size_t i = 1; i <= 9; ++i) {
        analytic += v[i - 1] * std::ldexp(1.0, 1 - static_cast<int>(i)) * static_cast<double>(i);
    }
    const auto q = models::quadratic_sum(a_of(9));
    const auto r = run_blend(directional_oracle(q.evaluate, theta_of(9), DirectionSpec::as_given(v)), 0.0, {});
    const int digits = agreed_significant_digits(r.value, analytic, 15);
    o.check(r.stabilized && digits >= 8, "m=9 value " + fmt("%.15g", r.value) + " vs analytic " + fmt("%.15g", analytic) +
                                             ": " + std::to_string(digits) + " digits >= 8");
    return o;
}

Outcome criterion10() {
    Outcome o;
    const std::vector<std::vector<std::string>> runs{
        {"tables", "all", "--format", "json"},
        {"tables", "all", "--format", "csv"},
        {"diff", "sin", "--theta", "0.3", "--format", "json"},
        {"diff", "quartic5", "--theta", "2", "--h0", "0.001"},
        {"direction", "--dim", "50", "--format", "json"},
        {"queue", "--format", "json"},
        {"plan", "--M", "120", "--b", "2.4", "--N", "2", "--K", "6", "--formula", "eq12", "--format", "csv"},
    };
    std::optional<std::string> saved;
    if (const char* v = std::getenv("BLEND_THREADS")) {
        saved = v;
    }
    int identical = 0;
    for (const auto& args : runs) {
        std::string outputs[2];
        int codes[2];
        const char* settings[2] = {"0", "4"};
        for (int i = 0; i < 2; ++i) {
            setenv("BLEND_THREADS", settings[i], 1);
            std::ostringstream out;
            std::ostringstream err;
            codes[i] = cli::run_cli(args, out, err);
            outputs[i] = out.str();
        }
        identical += (outputs[0] == outputs[1] && codes[0] == codes[1] && !outputs[0].empty()) ? 1 : 0;
    }
    if (saved) {
        setenv("BLEND_THREADS", saved->c_str(), 1);
    } else {
        unsetenv("BLEND_THREADS");
    }
    o.check(identical == static_cast<int>(runs.size()), "byte-identical outputs for BLEND_THREADS=0 vs 4 in " +
                                                            std::to_string(identical) + "/" + std::to_string(runs.size()) + " runs");
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
        {"Table 1 reproduction", criterion1},
        {"Table 2 reproduction", criterion2},
        {"Table 3 reproduction", criterion3},
        {"Table 5 tandem queue reproduction", criterion4},
        {"K-exact step planner example", criterion5},
        {"remainder and operator-power bound domination", criterion6},
        {"polynomial exactness and null space", criterion7},
        {"closed-form operator power oracle", criterion8},
        {"directional derivative properties", criterion9},
        {"thread-count determinism", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += o.pass ? 0 : 1;
        std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
