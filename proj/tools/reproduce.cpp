#include "reproduce.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "parallel.hpp"
#include "rsm/ambiguity.hpp"
#include "rsm/closed_form.hpp"
#include "rsm/eval.hpp"
#include "rsm/json_io.hpp"
#include "rsm/search.hpp"

namespace rsm::tools {

namespace {

using Lines = std::vector<std::string>;

std::string g12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string row(std::initializer_list<std::string> cells) {
    std::string s;
    for (const auto& c : cells) s += (s.empty() ? "" : ",") + c;
    return s;
}

struct Table {
    std::string header;
    std::string meta;
    Lines lines;
};

// k * step for k = lo..hi, without accumulated rounding
std::vector<double> ladder(int lo, int hi, double step) {
    std::vector<double> v;
    for (int k = lo; k <= hi; ++k) v.push_back(k * step);
    return v;
}

Table fig_support(const ReproduceOptions& o) {
    const auto ratios = ladder(1, 100, 0.01);
    const int levels[] = {1, 2, 5, 100};
    auto blocks = parallel_map<Lines>(ratios.size(), [&](std::size_t i) {
        Lines out;
        const double vlo = ratios[i];
        const double rinf = support_limit_ratio(vlo, 1.0);
        for (int n : levels) {
            const double rn = support_optimal(n, vlo, 1.0).ratio;
            out.push_back(row({g12(vlo), std::to_string(n), g12(rn), g12(rinf), g12(rn / rinf)}));
        }
        return out;
    }, o.threads);
    Table t{"vlo_over_vbar,n,r_n,r_inf,ratio_to_inf", "vbar=1 levels=1;2;5;100 r_inf=closed form", {}};
    for (auto& b : blocks) t.lines.insert(t.lines.end(), b.begin(), b.end());
    return t;
}

Table fig_mean(const ReproduceOptions& o) {
    const auto mus = ladder(1, 19, 0.05);
    auto blocks = parallel_map<Lines>(mus.size(), [&](std::size_t i) {
        const double mu = mus[i];
        const auto set = make_mean(mu, 1.0);
        const double rinf = approx_inf_level(set, o.mean_inf_grid).ratio;
        const double r[] = {mean_one_level(mu, 1.0).ratio, mean_two_level(mu, 1.0).ratio,
                            best_n_level(set, 3, o.mean_resolution).best.ratio};
        Lines out;
        for (int n = 1; n <= 3; ++n)
            out.push_back(row({g12(mu), std::to_string(n), n == 3 ? "grid" : "closed", g12(r[n - 1]), g12(rinf),
                               g12(r[n - 1] / rinf)}));
        return out;
    }, o.threads);
    Table t{"mu_over_vbar,n,method,r_n,r_inf_lower_bound,ratio_to_inf_lower_bound",
            "vbar=1 r_inf_lower_bound=lp on uniform grid " + std::to_string(o.mean_inf_grid) +
                " n3_resolution=" + g12(o.mean_resolution),
            {}};
    for (auto& b : blocks) t.lines.insert(t.lines.end(), b.begin(), b.end());
    return t;
}

Table fig_quantile(const ReproduceOptions& o) {
    const auto omegas = ladder(2, 8, 0.1);
    const auto xis = ladder(1, 19, 0.05);
    auto blocks = parallel_map<Lines>(omegas.size() * xis.size(), [&](std::size_t idx) {
        const double w = omegas[idx / xis.size()], xi = xis[idx % xis.size()];
        const double rinf = quantile_inf(w, xi, 1.0).r;
        const double r[] = {quantile_one_level(w, xi, 1.0).ratio, quantile_two_level(w, xi, 1.0).ratio};
        Lines out;
        for (int n = 1; n <= 2; ++n)
            out.push_back(row({g12(w), g12(xi), std::to_string(n), g12(r[n - 1]), g12(rinf), g12(r[n - 1] / rinf)}));
        return out;
    }, o.threads);
    Table t{"omega_over_vbar,xi,n,r_n,r_inf,ratio_to_inf", "vbar=1 r_inf=closed form", {}};
    for (auto& b : blocks) t.lines.insert(t.lines.end(), b.begin(), b.end());
    return t;
}

Table table2_row2(const ReproduceOptions&) {
    Table t{"sigma_over_mu,r2,r2_percent,lower_bound,v1,v2,x1", "mu=1 two-level closed-form approximation", {}};
    std::vector<double> cvs = {0.5};
    for (int k = 1; k <= 10; ++k) cvs.push_back(k);
    for (double cv : cvs) {
        const auto m = meanvar_two_level_approx(1.0, cv);
        t.lines.push_back(row({g12(cv), g12(m.ratio), g12(100.0 * m.ratio), g12(meanvar_ratio_lower_bound(1.0, cv)),
                               g12(m.mechanism.prices.front()), g12(m.mechanism.prices.back()),
                               g12(m.mechanism.probs.front())}));
    }
    return t;
}

Table fig_compareball(const ReproduceOptions&) {
    const double vlo = 0.1, vbar = 1.0;
    Table t{"n,r_dagger,r_ddagger,r_limit", "vlo=0.1 vbar=1 geometric price ladder", {}};
    for (int n = 1; n <= 10; ++n) {
        std::vector<double> v(n + 1);
        for (int i = 0; i < n; ++i) v[i] = std::pow(vlo, double(n - i) / n) * std::pow(vbar, double(i) / n);
        v[n] = vbar;
        double sd = 1.0 - n, sdd = n;
        for (int i = 0; i < n; ++i) sd += v[i + 1] / v[i];
        for (int i = 1; i < n; ++i) sdd -= v[i - 1] / v[i];
        t.lines.push_back(row({std::to_string(n), g12(1.0 / sd), g12(1.0 / sdd), g12(support_limit_ratio(vlo, vbar))}));
    }
    return t;
}

Table ec_beta(const ReproduceOptions& o) {
    auto alphas = ladder(1, 10, 0.1);
    for (double a : ladder(3, 20, 0.5)) alphas.push_back(a);

    struct Job {
        std::string panel, info;
        double alpha, beta, xi;
    };
    std::vector<Job> jobs;
    const std::pair<std::string, double> mean_panels[] = {{"alpha=beta", 0.0}, {"beta=0.5", 0.5}, {"beta=1", 1.0},
                                                          {"beta=2", 2.0}};
    for (const auto& [name, b] : mean_panels)
        for (double a : alphas) jobs.push_back({name, "mean", a, b > 0 ? b : a, 0.0});
    for (double b : {0.5, 1.0, 2.0})
        for (double xi : {0.3, 0.5, 0.7})
            for (double a : alphas)
                jobs.push_back({"beta=" + g12(b) + " xi=" + g12(xi), "quantile_xi" + g12(xi), a, b, xi});

    auto blocks = parallel_map<Lines>(jobs.size(), [&](std::size_t i) {
        const auto& j = jobs[i];
        const auto d = Distribution::make_beta(j.alpha, j.beta, 1.0);
        double r1, r2, rinf;
        if (j.info == "mean") {
            const double mu = mean_of(d);
            r1 = performance_ratio(mean_one_level(mu, 1.0).mechanism, d);
            r2 = performance_ratio(mean_two_level(mu, 1.0).mechanism, d);
            rinf = performance_ratio(approx_inf_level(make_mean(mu, 1.0), o.ec_inf_grid).mechanism, d);
        } else {
            const double w = quantile_of(d, j.xi);
            r1 = performance_ratio(quantile_one_level(w, j.xi, 1.0).mechanism, d);
            r2 = performance_ratio(quantile_two_level(w, j.xi, 1.0).mechanism, d);
            rinf = performance_ratio(quantile_inf(w, j.xi, 1.0), d);
        }
        const std::string head = g12(j.alpha) + "," + g12(j.beta) + "," + j.info + ",";
        return Lines{head + "1," + g12(r1) + "," + j.panel, head + "2," + g12(r2) + "," + j.panel,
                     head + (j.info == "mean" ? "inf_lb," : "inf,") + g12(rinf) + "," + j.panel};
    }, o.threads);
    Table t{"alpha,beta,info_kind,n,ratio,panel",
            "vbar=1 beta valuations; mean inf_lb = lp mechanism on uniform grid " + std::to_string(o.ec_inf_grid) +
                "; omega = largest v with P(V>=v) >= xi",
            {}};
    for (auto& b : blocks) t.lines.insert(t.lines.end(), b.begin(), b.end());
    return t;
}

const std::vector<std::pair<std::string, std::function<Table(const ReproduceOptions&)>>>& registry() {
    static const std::vector<std::pair<std::string, std::function<Table(const ReproduceOptions&)>>> r = {
        {"fig-support", fig_support},   {"fig-mean", fig_mean},               {"fig-quantile", fig_quantile},
        {"table2-row2", table2_row2},   {"fig-compareball", fig_compareball}, {"ec-beta", ec_beta},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& reproduce_targets() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : registry()) n.push_back(name);
        return n;
    }();
    return names;
}

std::string reproduce(const std::string& target, const ReproduceOptions& opts) {
    for (const auto& [name, fn] : registry()) {
        if (name != target) continue;
        const Table t = fn(opts);
        const std::string path = opts.out_dir + "/" + name + ".csv";
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + path);
        f << "# rsm " << kVersion << " target=" << name << " " << t.meta << "\n" << t.header << "\n";
        for (const auto& l : t.lines) f << l << "\n";
        return path;
    }
    throw std::invalid_argument("unknown target '" + target + "'");
}

}  // namespace rsm::tools
