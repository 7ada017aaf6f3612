#pragma once

/*
 * Inequality verification over polynomial corpora, plus the parameterized
 * sharpness scans.
 *
 * Every check instantiates one inequality for one corpus member (or member
 * pair) and records both sides.  pass means ratio <= 1 + slack where the
 * slack is budget-driven: 10x the summed relative error estimates of the
 * norm computations involved, floored at 1e-9 so that all-exact instances
 * still tolerate assembly roundoff.  Members that violate a hypothesis are
 * skipped, never silently dropped: skipped + checked = corpus size holds
 * for every run.
 *
 * Units (members or pairs) are independent and execute on a small
 * work-stealing pool (atomic cursor over the unit list); records are
 * assembled in corpus order afterwards, so reports are deterministic
 * regardless of the thread count.
 */

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "torusnorms/constants.hpp"
#include "torusnorms/corpus.hpp"
#include "torusnorms/norms.hpp"
#include "torusnorms/polynomial_json.hpp"
#include "torusnorms/symmetric.hpp"

namespace torusnorms {

struct TheoremCheck {
    std::string theorem_id;
    std::map<std::string, double> params;  // run-level parameters (p, q, theta)
    std::size_t corpus_index = 0;          // first corpus member involved
    std::string variant;                   // sub-form or box label, empty = main form
    bool skipped = false;
    std::string skip_reason;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double slack = 0.0;
    double error_sum = 0.0;  // summed relative error estimates
    bool pass = false;
    bool warning = false;  // any contributing NormResult flagged one
    std::vector<std::string> methods;
    std::vector<std::string> witnesses;  // content hashes of the polynomials
    nlohmann::json near_fail;            // full polynomials when ratio > 0.999
};

struct CheckRun {
    std::string theorem_id;
    std::map<std::string, double> params;
    std::size_t corpus_size = 0;
    std::size_t checked = 0;  // corpus members evaluated
    std::size_t skipped = 0;  // corpus members skipped
    bool all_pass = true;     // over non-skipped records
    bool all_skipped = false; // hypothesis-incompatible corpus
    std::vector<TheoremCheck> checks;
};

/// Shared store of norm/measure results keyed by (metric tag, polynomial
/// hash).  Values are deterministic functions of the key, so a racing
/// recomputation is harmless; the first insert wins.
class MetricsCache {
public:
    NormResult get_or_compute(const std::string& key,
                              const std::function<NormResult()>& compute) {
        {
            std::lock_guard<std::mutex> g(mu_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        NormResult r = compute();
        std::lock_guard<std::mutex> g(mu_);
        return map_.emplace(key, r).first->second;
    }

    std::size_t size() const {
        std::lock_guard<std::mutex> g(mu_);
        return map_.size();
    }

private:
    mutable std::mutex mu_;
    std::map<std::string, NormResult> map_;
};

inline int check_thread_count() {
    if (const char* env = std::getenv("TORUSNORMS_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

namespace checkdetail {

template <class Fn>
void run_indexed(std::size_t count, int threads, Fn&& fn) {
    std::atomic<std::size_t> cursor{0};
    std::mutex err_mu;
    std::exception_ptr first_error;
    auto worker = [&] {
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= count) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mu);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    if (threads <= 1 || count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        int extra = std::min<int>(threads - 1, static_cast<int>(count) - 1);
        pool.reserve(static_cast<std::size_t>(extra));
        for (int t = 0; t < extra; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);
}

/// Collects the methods and the relative error budget behind one record.
struct Budget {
    std::vector<std::string> methods;
    double error_sum = 0.0;
    bool warning = false;

    double take(const NormResult& r) {
        methods.push_back(to_string(r.method));
        error_sum += r.relative_error();
        warning = warning || r.warning || !r.converged;
        return r.value;
    }
};

inline std::string metric_key(const char* kind, double param, const Polynomial& p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s:%.17g:", kind, param);
    return buf + polynomial_witness_id(p);
}

inline NormResult cached_lp(MetricsCache* cache, double p, const Polynomial& poly) {
    auto fn = [&] { return lp_norm(p, poly); };
    if (!cache) return fn();
    return cache->get_or_compute(metric_key("lp", p, poly), fn);
}

inline NormResult cached_mahler(MetricsCache* cache, const Polynomial& poly) {
    auto fn = [&] { return mahler_measure(poly); };
    if (!cache) return fn();
    return cache->get_or_compute(metric_key("mahler", 0.0, poly), fn);
}

inline NormResult cached_orlicz(MetricsCache* cache, double alpha, const Polynomial& poly) {
    auto fn = [&] {
        OrliczSpec os;
        os.alpha = alpha;
        // the comparison constant dwarfs quadrature error here, so a loose
        // tolerance is enough; the reported error still feeds the slack
        os.rel_tol = 1e-4;
        return orlicz_luxemburg_norm(poly, os);
    };
    if (!cache) return fn();
    return cache->get_or_compute(metric_key("orlicz", alpha, poly), fn);
}

/// Integral of |P| over a box subset (normalized measure, not divided by the
/// box measure).  Keyed by the interval list alone, so checks that name the
/// same box differently still share one computation.
inline NormResult cached_box_l1(MetricsCache* cache, const std::string& label,
                                const BoxSubset& box, const Polynomial& poly) {
    (void)label;
    auto fn = [&] {
        PowerIntegrand one(1.0);
        return mean_on_box(poly, one, box, QuadratureSpec::defaults_for(poly.variables()));
    };
    if (!cache) return fn();
    std::string key = "boxl1:";
    for (const auto& [a, b] : box.intervals) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g;", a, b);
        key += buf;
    }
    return cache->get_or_compute(key + polynomial_witness_id(poly), fn);
}

inline void finalize(TheoremCheck& c, double lhs, double rhs, Budget&& b,
                     const std::vector<const Polynomial*>& polys) {
    c.lhs = lhs;
    c.rhs = rhs;
    c.methods = std::move(b.methods);
    c.error_sum = b.error_sum;
    c.warning = b.warning;
    if (rhs > 0.0)
        c.ratio = lhs / rhs;
    else
        c.ratio = lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    c.slack = std::max(1e-9, 10.0 * c.error_sum);
    c.pass = c.ratio <= 1.0 + c.slack;
    c.witnesses.clear();
    for (const Polynomial* p : polys) c.witnesses.push_back(polynomial_witness_id(*p));
    if (c.ratio > 0.999) {
        nlohmann::json arr = nlohmann::json::array();
        for (const Polynomial* p : polys) arr.push_back(polynomial_to_json(*p));
        c.near_fail = nlohmann::json{{"polynomials", std::move(arr)}};
    }
}

inline void mark_skipped(TheoremCheck& c, const std::string& reason,
                         const std::vector<const Polynomial*>& polys) {
    c.skipped = true;
    c.skip_reason = reason;
    c.pass = true;  // skipped records never fail a run
    for (const Polynomial* p : polys) c.witnesses.push_back(polynomial_witness_id(*p));
}

/// Product over per-variable sharp constants, in log space.
inline double lambda_log_product(double p, const std::vector<int>& degrees) {
    double s = 0.0;
    for (int d : degrees) s += arestov_lambda(p, d).log_gamma_form;
    return s;
}

/// log of the central binomial coefficient, exact below the integer cap.
inline double log_central_binomial(int m) {
    if (m <= 31) return std::log(static_cast<double>(central_binomial(m)));
    return log_gamma_fn(2.0 * m + 1.0) - 2.0 * log_gamma_fn(m + 1.0);
}

struct NamedBox {
    std::string label;
    BoxSubset box;
};

/// The three canonical box subsets exercised by the interpolation check:
/// half torus in the first variable, a quarter box, and the box of measure
/// exactly theta in the first variable.
inline std::vector<NamedBox> interpolation_boxes(double theta, int n) {
    std::vector<NamedBox> out;
    BoxSubset half = BoxSubset::full_torus(n);
    half.intervals[0] = {0.0, kPi};
    out.push_back({"half-torus", std::move(half)});
    BoxSubset quarter = BoxSubset::full_torus(n);
    if (n == 1) {
        quarter.intervals[0] = {0.0, kPi / 2.0};
    } else {
        quarter.intervals[0] = {0.0, kPi};
        quarter.intervals[1] = {0.0, kPi};
    }
    out.push_back({"quarter-box", std::move(quarter)});
    BoxSubset tb = BoxSubset::full_torus(n);
    tb.intervals[0] = {0.0, kTwoPi * theta};
    out.push_back({"theta-box", std::move(tb)});
    return out;
}

/// One unit of corpus work: the records it produced, how many members it
/// consumed and whether they count as checked or skipped.
struct UnitOutcome {
    std::vector<TheoremCheck> records;
    std::size_t members = 1;
    bool checked = false;
};

inline double require_param(const std::map<std::string, double>& params, const char* name) {
    auto it = params.find(name);
    if (it == params.end())
        throw std::invalid_argument(std::string("check_inequality: missing parameter ") + name);
    return it->second;
}

inline double param_or(const std::map<std::string, double>& params, const char* name,
                       double fallback) {
    auto it = params.find(name);
    return it == params.end() ? fallback : it->second;
}

}  // namespace checkdetail

/// Verifies one inequality family over a corpus.  Unknown IDs throw.
/// Supported params (missing entries take the listed defaults):
///   thm21, bayart, weissler:     p (1), q (2)
///   mahler-main, mahler-cor:     p (2)
///   orlicz:                      none
///   product-lower:               p (2)
///   mahler-triangle:             none
///   interpolation:               p (2), theta (0.5)
///   geo-mean-lemma:              theta (0.5)
///   nikolskii, nikolskii-printed: q (2), p (4), q < p
inline CheckRun check_inequality(const std::string& theorem_id, const Corpus& corpus,
                                 const std::map<std::string, double>& params_in = {},
                                 MetricsCache* cache = nullptr, int threads = 0) {
    using namespace checkdetail;
    const std::vector<Polynomial>& items = corpus.items;
    const std::size_t n_items = items.size();

    CheckRun run;
    run.theorem_id = theorem_id;
    run.corpus_size = n_items;

    std::map<std::string, double> params = params_in;
    bool pairs = false;

    // Per-unit worker, bound below once the theorem id is known.
    std::function<UnitOutcome(std::size_t)> unit;

    auto base_record = [&](std::size_t index) {
        TheoremCheck c;
        c.theorem_id = theorem_id;
        c.params = params;
        c.corpus_index = index;
        return c;
    };

    if (theorem_id == "thm21" || theorem_id == "bayart") {
        double p = param_or(params, "p", 1.0), q = param_or(params, "q", 2.0);
        params = {{"p", p}, {"q", q}};
        if (!(0.0 < p && p < q))
            throw std::invalid_argument(theorem_id + ": needs 0 < p < q");
        bool bayart = theorem_id == "bayart";
        double base = bayart ? q / p : q / std::min(p, 2.0);
        unit = [&, p, q, bayart, base](std::size_t i) {
            const Polynomial& P = items[i];
            UnitOutcome out;
            TheoremCheck c = base_record(i);
            DegreeProfile prof = P.degree_profile();
            if (bayart && !prof.homogeneous) {
                mark_skipped(c, "not homogeneous", {&P});
                out.records.push_back(std::move(c));
                return out;
            }
            Budget b;
            double lhs = b.take(cached_lp(cache, q, P));
            double np = b.take(cached_lp(cache, p, P));
            double rhs = std::pow(std::sqrt(base), prof.total) * np;
            finalize(c, lhs, rhs, std::move(b), {&P});
            out.records.push_back(std::move(c));
            out.checked = true;
            return out;
        };
    } else if (theorem_id == "weissler") {
        double p = param_or(params, "p", 1.0), q = param_or(params, "q", 2.0);
        params = {{"p", p}, {"q", q}};
        if (!(0.0 < p && p < q))
            throw std::invalid_argument("weissler: needs 0 < p < q");
        double r = std::sqrt(p / q);
        unit = [&, p, q, r](std::size_t i) {
            const Polynomial& P = items[i];
            UnitOutcome out;
            TheoremCheck c = base_record(i);
            Budget b;
            double lhs = b.take(cached_lp(cache, q, P.dilated(r)));
            double rhs = b.take(cached_lp(cache, p, P));
            finalize(c, lhs, rhs, std::move(b), {&P});
            out.records.push_back(std::move(c));
            out.checked = true;
            return out;
        };
    } else if (theorem_id == "mahler-main" || theorem_id == "mahler-cor") {
        double p = param_or(params, "p", 2.0);
        params = {{"p", p}};
        if (!(p > 0.0)) throw std::invalid_argument(theorem_id + ": needs p > 0");
        bool uniform = theorem_id == "mahler-cor";
        unit = [&, p, uniform](std::size_t i) {
            const Polynomial& P = items[i];
            UnitOutcome out;
            TheoremCheck c = base_record(i);
            DegreeProfile prof = P.degree_profile();
            Budget b;
            double lhs = b.take(cached_lp(cache, p, P));
            double mah = b.take(cached_mahler(cache, P));
            double lam_log =
                uniform ? P.variables() * arestov_lambda(p, prof.max_partial).log_gamma_form
                        : lambda_log_product(p, prof.per_variable);
            finalize(c, lhs, std::exp(lam_log) * mah, std::move(b), {&P});
            out.records.push_back(std::move(c));
            out.checked = true;
            return out;
        };
    } else if (theorem_id == "orlicz") {
        params = {};
        unit = [&](std::size_t i) {
            const Polynomial& P = items[i];
            UnitOutcome out;
            TheoremCheck c = base_record(i);
            int m = P.degree_profile().max_partial;
            if (m == 0) {
                mark_skipped(c, "constant polynomial: exponent 1/m undefined", {&P});
                out.records.push_back(std::move(c));
                return out;
            }
            Budget b;
            double lhs = b.take(cached_orlicz(cache, 1.0 / m, P));
            double mah = b.take(cached_mahler(cache, P));
            double log_const = m * (P.variables() * std::log(2.0) + std::log(std::exp(1.0) - 1.0));
            finalize(c, lhs, std::exp(log_const) * mah, std::move(b), {&P});
            out.records.push_back(std::move(c));
            out.checked = true;
            return out;
        };
    } else if (theorem_id == "product-lower") {
        double p = param_or(params, "p", 2.0);
        params = {{"p", p}};
        if (!(p > 0.0)) throw std::invalid_argument("product-lower: needs p > 0");
        pairs = true;
        unit = [&, p](std::size_t u) {
            std::size_t i = 2 * u;
            const Polynomial& P = items[i];
            const Polynomial& Q = items[i + 1];
            UnitOutcome out;
            out.members = 2;
            TheoremCheck c = base_record(i);
            int m = P.degree_profile().max_partial;
            int k = Q.degree_profile().max_partial;
            int nv = P.variables();
            Budget b;
            double np = b.take(cached_lp(cache, p, P));
            double nq = b.take(cached_lp(cache, p, Q));
            double npq = b.take(cached_lp(cache, p, P * Q));
            double lam_log = arestov_lambda(p, m).log_gamma_form +
                             arestov_lambda(p, k).log_gamma_form;
            // lhs is the lower bound; pass means the product norm beats it.
            finalize(c, std::exp(-nv * lam_log) * np * nq, npq, std::move(b), {&P, &Q});
            out.records.push_back(c);
            out.checked = true;
            if (p == 2.0) {
                TheoremCheck c2 = base_record(i);
                c2.variant = "binomial-form";
                Budget b2;
                b2.methods = out.records.front().methods;
                b2.error_sum = out.records.front().error_sum;
                b2.warning = out.records.front().warning;
                double log_const =
                    -0.5 * nv * (log_central_binomial(m) + log_central_binomial(k));
                finalize(c2, std::exp(log_const) * np * nq, npq, std::move(b2), {&P, &Q});
                out.records.push_back(std::move(c2));
            }
            return out;
        };
    } else if (theorem_id == "mahler-triangle") {
        params = {};
        pairs = true;
        unit = [&](std::size_t u) {
            std::size_t i = 2 * u;
            const Polynomial& P = items[i];
            const Polynomial& Q = items[i + 1];
            UnitOutcome out;
            out.members = 2;
            TheoremCheck c = base_record(i);
            int m = P.degree_profile().max_partial;
            if (Q.degree_profile().max_partial != m) {
                mark_skipped(c, "max partial degrees differ", {&P, &Q});
                out.records.push_back(std::move(c));
                return out;
            }
            Polynomial S = P + Q;
            Budget b;
            double ms = S.is_zero() ? 0.0 : b.take(cached_mahler(cache, S));
            double mp = b.take(cached_mahler(cache, P));
            double mq = b.take(cached_mahler(cache, Q));
            int nv = P.variables();
            double rhs = std::exp(0.5 * nv * log_central_binomial(m)) * (mp + mq);
            finalize(c, ms, rhs, std::move(b), {&P, &Q});
            out.records.push_back(c);
            out.checked = true;
            if (nv == 1) {
                // the classical power-of-two constant, strictly weaker
                TheoremCheck c2 = base_record(i);
                c2.variant = "kappa-power";
                Budget b2;
                b2.methods = out.records.front().methods;
                b2.error_sum = out.records.front().error_sum;
                b2.warning = out.records.front().warning;
                finalize(c2, ms, std::exp2(m) * (mp + mq), std::move(b2), {&P, &Q});
                out.records.push_back(std::move(c2));
            }
            return out;
        };
    } else if (theorem_id == "interpolation") {
        double p = param_or(params, "p", 2.0);
        double theta = param_or(params, "theta", 0.5);
        params = {{"p", p}, {"theta", theta}};
        if (!(p > 0.0)) throw std::invalid_argument("interpolation: needs p > 0");
        if (!(theta > 0.0 && theta <= 1.0))
            throw std::invalid_argument("interpolation: needs 0 < theta <= 1");
        unit = [&, p, theta](std::size_t i) {
            const Polynomial& P = items[i];
            UnitOutcome out;
            int m = P.degree_profile().max_partial;
            int nv = P.variables();
            double lam_n = std::exp(nv * arestov_lambda(p, m).log_gamma_form);
            double c_theta = interpolation_constant(theta);
            for (auto& nb : interpolation_boxes(theta, nv)) {
                TheoremCheck c = base_record(i);
                c.variant = nb.label;
                if (nb.box.measure() < theta - 1e-12) {
                    mark_skipped(c, "box measure below theta", {&P});
                    out.records.push_back(std::move(c));
                    continue;
                }
                Budget b;
                double lhs = b.take(cached_lp(cache, p, P));
                double l1 = b.take(cached_lp(cache, 1.0, P));
                double le = b.take(cached_box_l1(cache, nb.label, nb.box, P));
                double rhs =
                    c_theta * lam_n * std::pow(l1, 1.0 - theta) * std::pow(le, theta);
                finalize(c, lhs, rhs, std::move(b), {&P});
                out.records.push_back(std::move(c));
                out.checked = true;
            }
            return out;
        };
    } else if (theorem_id == "geo-mean-lemma") {
        double theta = param_or(params, "theta", 0.5);
        params = {{"theta", theta}};
        if (!(theta > 0.0 && theta < 1.0))
            throw std::invalid_argument("geo-mean-lemma: needs 0 < theta < 1");
        unit = [&, theta](std::size_t i) {
            const Polynomial& P = items[i];
            UnitOutcome out;
            int nv = P.variables();
            BoxSubset part = BoxSubset::full_torus(nv);
            part.intervals[0] = {0.0, kTwoPi * theta};
            BoxSubset rest = BoxSubset::full_torus(nv);
            rest.intervals[0] = {kTwoPi * theta, kTwoPi};
            TheoremCheck c = base_record(i);
            Budget b;
            double lhs = b.take(cached_mahler(cache, P));
            double ia = b.take(cached_box_l1(cache, "theta-part", part, P));
            double ib = b.take(cached_box_l1(cache, "theta-rest", rest, P));
            double rhs = interpolation_constant(theta) * std::pow(ia, theta) *
                         std::pow(ib, 1.0 - theta);
            finalize(c, lhs, rhs, std::move(b), {&P});
            out.records.push_back(std::move(c));
            out.checked = true;
            return out;
        };
    } else if (theorem_id == "nikolskii" || theorem_id == "nikolskii-printed") {
        double q = param_or(params, "q", 2.0), p = param_or(params, "p", 4.0);
        params = {{"p", p}, {"q", q}};
        if (!(0.0 < q && q < p))
            throw std::invalid_argument(theorem_id + ": needs 0 < q < p");
        bool printed = theorem_id == "nikolskii-printed";
        unit = [&, p, q, printed](std::size_t i) {
            const Polynomial& P = items[i];
            UnitOutcome out;
            TheoremCheck c = base_record(i);
            DegreeProfile prof = P.degree_profile();
            double deg_prod = 1.0;
            for (int d : prof.per_variable) deg_prod *= d;
            if (deg_prod == 0.0) {
                mark_skipped(c, "zero partial degree in some variable", {&P});
                out.records.push_back(std::move(c));
                return out;
            }
            Budget b;
            double factor = std::exp2(P.variables()) *
                            std::pow(deg_prod, 1.0 / q - 1.0 / p);
            double lhs, rhs;
            if (printed) {
                lhs = b.take(cached_lp(cache, q, P));
                rhs = factor * b.take(cached_lp(cache, p, P));
            } else {
                lhs = b.take(cached_lp(cache, p, P));
                rhs = factor * b.take(cached_lp(cache, q, P));
            }
            finalize(c, lhs, rhs, std::move(b), {&P});
            out.records.push_back(std::move(c));
            out.checked = true;
            return out;
        };
    } else {
        throw std::invalid_argument("check_inequality: unknown theorem id " + theorem_id);
    }

    run.params = params;
    std::size_t n_units = pairs ? n_items / 2 : n_items;
    std::vector<checkdetail::UnitOutcome> outcomes(n_units);
    checkdetail::run_indexed(
        n_units, threads > 0 ? threads : check_thread_count(),
        [&](std::size_t u) { outcomes[u] = unit(u); });

    for (auto& o : outcomes) {
        (o.checked ? run.checked : run.skipped) += o.members;
        for (auto& rec : o.records) {
            run.all_pass = run.all_pass && (rec.skipped || rec.pass);
            run.checks.push_back(std::move(rec));
        }
    }
    if (pairs && n_items % 2 == 1) {
        TheoremCheck c = base_record(n_items - 1);
        checkdetail::mark_skipped(c, "unpaired trailing member", {&items[n_items - 1]});
        run.checks.push_back(std::move(c));
        run.skipped += 1;
    }
    run.all_skipped = run.corpus_size > 0 && run.checked == 0;
    return run;
}

struct ScanRow {
    std::map<std::string, double> params;
    double value = 0.0;      // family-specific figure of merit
    double reference = 0.0;  // what it is compared against
    std::string note;
};

struct ScanTable {
    std::string family;
    std::string value_name;
    std::string reference_name;
    std::vector<ScanRow> rows;
};

/// Parameterized sharpness scans.
///   kwapien:            norm ratio of the scaled elementary symmetric family
///                       against its limit (growing n, fixed m); params
///                       p, q, m, nmax, samples, seed.
///   weissler-violation: sign of the dilated-norm margin for 1 + eps*z over
///                       a grid of squared radii around p/q; params p, q,
///                       eps, steps.
///   arestov-sharp:      norm-to-measure ratio of (1+z)^m, identically 1;
///                       params p, mmax.
inline ScanTable sharpness_scan(const std::string& family,
                                const std::map<std::string, double>& params = {}) {
    using namespace checkdetail;
    ScanTable table;
    table.family = family;
    if (family == "kwapien") {
        double p = param_or(params, "p", 2.0), q = param_or(params, "q", 4.0);
        int m = static_cast<int>(param_or(params, "m", 2.0));
        int nmax = static_cast<int>(param_or(params, "nmax", 64.0));
        long samples = static_cast<long>(param_or(params, "samples", 100000.0));
        std::uint64_t seed = static_cast<std::uint64_t>(param_or(params, "seed", 1.0));
        if (!(0.0 < p && p < q)) throw std::invalid_argument("kwapien scan: needs 0 < p < q");
        if (m < 1) throw std::invalid_argument("kwapien scan: needs m >= 1");
        table.value_name = "norm-ratio";
        table.reference_name = "gamma-ratio-limit";
        double limit = std::exp(kwapien_lower_log(p, q, m));
        // Exact evaluation works only for even integer exponents with a
        // tractable convolution; everything else samples Steinhaus points.
        // Decided from the term count C(n, m) before expanding anything.
        auto exact_ok = [m](double e, int n) {
            double r = std::round(e);
            if (std::abs(e - r) > 1e-12) return false;
            int ie = static_cast<int>(r);
            if (ie != 2 && (ie < 4 || ie > 16 || ie % 2 != 0)) return false;
            double log_terms = log_gamma_fn(n + 1.0) - log_gamma_fn(m + 1.0) -
                               log_gamma_fn(n - m + 1.0);
            return (ie / 2) * log_terms <= std::log(static_cast<double>(1 << 23));
        };
        for (int n = std::max(2, m); n <= nmax; n *= 2) {
            ScanRow row;
            row.params = {{"m", double(m)}, {"n", double(n)}, {"p", p}, {"q", q}};
            if (exact_ok(q, n) && exact_ok(p, n)) {
                Polynomial u = u_mn(m, n);
                row.value = lp_norm(q, u).value / lp_norm(p, u).value;
                row.note = "exact";
            } else {
                UmnEvaluator f(m, n);
                std::uint64_t sn = static_cast<std::uint64_t>(n);
                McMoment mc_hi =
                    steinhaus_moment_mc(q, f, n, samples, derive_seed(seed, 2 * sn));
                McMoment mc_lo =
                    steinhaus_moment_mc(p, f, n, samples, derive_seed(seed, 2 * sn + 1));
                row.value = mc_hi.norm / mc_lo.norm;
                row.note = "monte-carlo";
            }
            row.reference = limit;
            table.rows.push_back(std::move(row));
        }
        ScanRow bound;
        bound.params = {{"m", double(m)}, {"p", p}, {"q", q}};
        bound.value = limit;
        bound.reference = std::exp(kwapien_upper_log(p, q, m));
        bound.note = "limit vs upper bound";
        table.rows.push_back(std::move(bound));
    } else if (family == "weissler-violation") {
        double p = param_or(params, "p", 2.0), q = param_or(params, "q", 4.0);
        double eps = param_or(params, "eps", 0.05);
        int steps = static_cast<int>(param_or(params, "steps", 5.0));
        if (!(0.0 < p && p < q))
            throw std::invalid_argument("weissler scan: needs 0 < p < q");
        table.value_name = "margin";
        table.reference_name = "zero";
        double rho0 = p / q;
        Polynomial P = Polynomial::build(1, {{{0}, 1.0}, {{1}, eps}});
        for (int s = -steps / 2; s <= steps / 2; ++s) {
            double rho = rho0 + 0.01 * s;
            if (!(rho > 0.0) || rho > 1.0) continue;
            double r = std::sqrt(rho);
            NormResult hi = lp_norm(q, P.dilated(r));
            NormResult lo = lp_norm(p, P);
            ScanRow row;
            row.params = {{"p", p}, {"q", q}, {"eps", eps}, {"r2", rho}};
            row.value = std::pow(hi.value, q) - std::pow(lo.value, q);
            row.reference = 0.0;
            row.note = rho > rho0 ? "beyond critical radius" : "within critical radius";
            table.rows.push_back(std::move(row));
        }
    } else if (family == "arestov-sharp") {
        double p = param_or(params, "p", 1.0);
        int mmax = static_cast<int>(param_or(params, "mmax", 8.0));
        if (!(p > 0.0)) throw std::invalid_argument("arestov scan: needs p > 0");
        table.value_name = "norm-to-measure-ratio";
        table.reference_name = "one";
        for (int m = 1; m <= mmax; ++m) {
            Polynomial P = Polynomial::build(1, {{{0}, 1.0}, {{1}, 1.0}}).pow(m);
            NormResult nres = lp_norm(p, P);
            NormResult mres = mahler_measure(P);
            double lam = std::exp(arestov_lambda(p, m).log_gamma_form);
            ScanRow row;
            row.params = {{"m", double(m)}, {"p", p}};
            row.value = nres.value / (lam * mres.value);
            row.reference = 1.0;
            table.rows.push_back(std::move(row));
        }
    } else {
        throw std::invalid_argument("sharpness_scan: unknown family " + family);
    }
    return table;
}

}  // namespace torusnorms
