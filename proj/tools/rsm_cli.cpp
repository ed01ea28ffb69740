#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "parallel.hpp"
#include "reproduce.hpp"
#include "rsm/adversary.hpp"
#include "rsm/closed_form.hpp"
#include "rsm/json_io.hpp"
#include "rsm/lp_builder.hpp"
#include "rsm/search.hpp"

using namespace rsm;

namespace {

constexpr int kBadFlags = 2;
constexpr int kDomain = 3;
constexpr int kInconsistent = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SetFlags {
    std::string kind;
    std::string json_path;
    double vbar = 1.0, vlo = 0.0, mu = 0.0, sigma = 0.0;
    std::vector<double> omega, xi;

    void attach(CLI::App* app) {
        app->add_option("--set", kind, "ambiguity set")->check(CLI::IsMember({"support", "mean", "quantile", "meanvar"}));
        app->add_option("--set-json", json_path, "ambiguity set as JSON {kind, vbar, params}");
        app->add_option("--vbar", vbar, "upper end of the support");
        app->add_option("--vlo", vlo, "lower end of the support");
        app->add_option("--mu", mu, "mean");
        app->add_option("--sigma", sigma, "standard deviation (meanvar)");
        app->add_option("--omega", omega, "quantile prices, comma separated")->delimiter(',');
        app->add_option("--xi", xi, "quantile tail masses, comma separated")->delimiter(',');
    }

    bool meanvar() const { return kind == "meanvar"; }

    AmbiguitySet build() const {
        if (!json_path.empty()) {
            std::ifstream f(json_path);
            if (!f) throw UsageError("cannot read " + json_path);
            std::stringstream ss;
            ss << f.rdbuf();
            return set_from_json(ss.str());
        }
        if (kind == "support") return make_support(vlo, vbar);
        if (kind == "mean") return make_mean(mu, vbar);
        if (kind == "quantile") return make_quantile(omega, xi, vbar);
        if (kind.empty()) throw UsageError("one of --set or --set-json is required");
        throw UsageError("--set " + kind + " has no finite ambiguity set");
    }
};

int parse_levels(const std::string& s) {
    if (s == "inf") return 0;
    try {
        std::size_t used = 0;
        const int n = std::stoi(s, &used);
        if (used == s.size() && n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw UsageError("--n must be a positive integer or 'inf'");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out) {
    std::cout << text << "\n";
    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + out);
        f << text << "\n";
    }
}

std::string result_json(const std::string& method, const std::string& n, double ratio, const std::string& mech,
                        const std::string& extra = "") {
    return "{\"method\":\"" + method + "\",\"n\":\"" + n + "\",\"ratio\":" + fmt17(ratio) + ",\"mechanism\":" + mech +
           extra + "}";
}

struct SolveArgs {
    SetFlags set;
    std::string n = "1", method = "closed", out;
    std::vector<double> prices;
    double resolution = 0.0;
    std::size_t gridsize = 400;
};

std::string solve_closed(const SolveArgs& a, int n) {
    const auto& s = a.set;
    if (s.meanvar()) {
        if (n != 2) throw DomainError("meanvar closed form exists only for n = 2");
        const auto m = meanvar_two_level_approx(s.mu, s.sigma);
        return result_json("closed", "2", m.ratio, to_json(m.mechanism),
                           ",\"lower_bound\":" + fmt17(meanvar_ratio_lower_bound(s.mu, s.sigma)));
    }
    const AmbiguitySet set = s.build();
    const std::string ns = n == 0 ? "inf" : std::to_string(n);
    switch (set.kind) {
        case SetKind::Support:
            if (n == 0) return result_json("closed", ns, support_limit_ratio(set.params.vlo, set.vbar), "null");
            return result_json("closed", ns, support_optimal(n, set.params.vlo, set.vbar).ratio,
                               to_json(support_optimal(n, set.params.vlo, set.vbar).mechanism));
        case SetKind::Mean:
            if (n == 1) {
                const auto r = mean_one_level(set.params.mu, set.vbar);
                return result_json("closed", ns, r.ratio, to_json(r.mechanism));
            }
            if (n == 2) {
                const auto d = mean_two_level_detail(set.params.mu, set.vbar);
                std::string extra;
                if (!d.warning.empty()) extra = ",\"warning\":" + nlohmann::json(d.warning).dump();
                return result_json("closed", ns, d.result.ratio, to_json(d.result.mechanism), extra);
            }
            throw DomainError("mean closed forms exist for n = 1, 2; use --method grid or lp");
        case SetKind::Quantile: {
            if (set.params.omega.size() != 1) throw DomainError("quantile closed forms take a single (omega, xi) pair");
            const double w = set.params.omega[0], xi = set.params.xi[0];
            if (n == 0) {
                const auto m = quantile_inf(w, xi, set.vbar);
                return result_json("closed", ns, m.r, to_json(m));
            }
            if (n > 2) throw DomainError("quantile closed forms exist for n = 1, 2, inf");
            const auto r = n == 1 ? quantile_one_level(w, xi, set.vbar) : quantile_two_level(w, xi, set.vbar);
            return result_json("closed", ns, r.ratio, to_json(r.mechanism));
        }
        default:
            throw DomainError(std::string("no closed form for ") + set_kind_name(set.kind));
    }
}

std::string solve(const SolveArgs& a) {
    const int n = parse_levels(a.n);
    if (a.method == "closed") return solve_closed(a, n);
    if (a.set.meanvar()) throw DomainError("meanvar supports --method closed only");
    const AmbiguitySet set = a.set.build();
    const std::string ns = n == 0 ? "inf" : std::to_string(n);
    if (a.method == "lp") {
        if (n == 0) {
            const auto r = approx_inf_level(set, a.gridsize);
            return result_json("lp", ns, r.ratio, to_json(r.mechanism), ",\"lower_bound\":true");
        }
        if (a.prices.empty()) throw UsageError("--method lp needs --prices");
        if (static_cast<int>(a.prices.size()) > n) throw UsageError("more prices than --n");
        const auto r = solve_ratio_given_prices(set, a.prices);
        return result_json("lp", ns, r.ratio, to_json(r.mechanism));
    }
    if (n == 0) throw UsageError("--method grid needs a finite --n");
    const double res = a.resolution > 0 ? a.resolution : 0.01 * set.vbar;
    SearchOptions so;
    so.progress = true;
    const auto r = best_n_level(set, n, res, so);
    return result_json("grid", ns, r.best.ratio, to_json(r.best.mechanism),
                       ",\"resolution\":" + fmt17(res) + ",\"candidates\":" + std::to_string(r.candidates));
}

struct VerifyArgs {
    SetFlags set;
    std::string mechanism_path, out;
    std::size_t dense_fill = 0, gridsize = 4000;
    double vmax = 0.0;
};

int verify(const VerifyArgs& a) {
    const auto j = nlohmann::json::parse(read_file(a.mechanism_path), nullptr, false);
    if (j.is_discarded()) throw DomainError("mechanism file is not valid JSON");
    const auto& mj = j.contains("mechanism") ? j.at("mechanism") : j;
    if (mj.is_null()) throw DomainError("no finite mechanism to verify");
    AdversaryOptions opts;
    opts.dense_fill = a.dense_fill;

    if (mj.contains("kind") && mj.at("kind") == "quantile_inf") {
        const AmbiguitySet set = a.set.build();
        const double vb = mj.at("vbar").get<double>();
        if (std::abs(vb - set.vbar) > 1e-12 * std::max(1.0, set.vbar)) throw DomainError("mechanism vbar differs from the set's vbar");
        const auto m = quantile_inf(mj.at("omega").get<double>(), mj.at("xi").get<double>(), vb);
        const auto c = worst_case_ratio(m, set, opts);
        emit(to_json(c), a.out);
        const PaymentFn t = [&](GridPoint g) { return m.payment_at(g); };
        return certificate_consistent(t, c, set) ? 0 : kInconsistent;
    }

    const Mechanism m = mechanism_from_json(mj.dump());
    if (a.set.meanvar()) {
        const auto c = worst_case_meanvar(m, a.set.mu, a.set.sigma, a.vmax, a.gridsize);
        emit(to_json(c), a.out);
        return std::abs(recompute_ratio(step_payment(m), c) - c.ratio) <= 1e-7 ? 0 : kInconsistent;
    }
    const AmbiguitySet set = a.set.build();
    if (std::abs(m.vbar - set.vbar) > 1e-12 * std::max(1.0, set.vbar))
        throw DomainError("mechanism vbar differs from the set's vbar");
    const auto c = worst_case_ratio(m, set, opts);
    emit(to_json(c), a.out);
    return certificate_consistent(step_payment(m), c, set) ? 0 : kInconsistent;
}

struct SweepArgs {
    SetFlags set;
    std::string param = "mu", n = "1,2", method = "closed", out;
    double from = 0.05, to = 0.95, step = 0.05, resolution = 0.0;
    unsigned threads = 0;
};

int sweep(const SweepArgs& a) {
    std::vector<int> levels;
    {
        std::stringstream ss(a.n);
        for (std::string tok; std::getline(ss, tok, ',');) levels.push_back(parse_levels(tok));
    }
    if (!(a.step > 0) || a.to < a.from) throw UsageError("--from/--to/--step describe an empty range");
    const auto count = static_cast<std::size_t>(std::floor((a.to - a.from) / a.step + 1e-9)) + 1;
    const std::vector<std::string> allowed = {"vlo", "mu", "sigma", "omega", "xi", "vbar"};
    if (std::find(allowed.begin(), allowed.end(), a.param) == allowed.end()) throw UsageError("unknown --param " + a.param);

    auto rows = tools::parallel_map<std::string>(count * levels.size(), [&](std::size_t idx) {
        const double value = a.from + static_cast<double>(idx / levels.size()) * a.step;
        SolveArgs s;
        s.set = a.set;
        if (a.param == "vlo") s.set.vlo = value;
        if (a.param == "mu") s.set.mu = value;
        if (a.param == "sigma") s.set.sigma = value;
        if (a.param == "vbar") s.set.vbar = value;
        if (a.param == "omega") s.set.omega = {value};
        if (a.param == "xi") s.set.xi = {value};
        const int n = levels[idx % levels.size()];
        s.n = n == 0 ? "inf" : std::to_string(n);
        s.method = a.method;
        s.resolution = a.resolution;
        const auto j = nlohmann::json::parse(solve(s));
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.12g,%s,%.12g", value, s.n.c_str(), j.at("ratio").get<double>());
        return std::string(buf);
    }, a.threads);

    std::ostringstream os;
    os << "# rsm " << kVersion << " sweep set=" << a.set.kind << " param=" << a.param << " method=" << a.method << "\n"
       << a.param << ",n,ratio\n";
    for (const auto& r : rows) os << r << "\n";
    std::string text = os.str();
    text.pop_back();
    emit(text, a.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust n-level selling mechanisms"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    SolveArgs sa;
    auto* solve_cmd = app.add_subcommand("solve", "optimal n-level mechanism and its ratio");
    sa.set.attach(solve_cmd);
    solve_cmd->add_option("--n", sa.n, "number of price levels or 'inf'");
    solve_cmd->add_option("--method", sa.method)->check(CLI::IsMember({"closed", "lp", "grid"}));
    solve_cmd->add_option("--prices", sa.prices, "price levels for --method lp")->delimiter(',');
    solve_cmd->add_option("--resolution", sa.resolution, "grid step for --method grid (default 0.01 vbar)");
    solve_cmd->add_option("--gridsize", sa.gridsize, "uniform grid size for --method lp --n inf");
    solve_cmd->add_option("--out", sa.out, "also write the JSON here");

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify", "worst-case certificate for a mechanism");
    verify_cmd->add_option("mechanism", va.mechanism_path, "mechanism JSON (or solve output)")->required();
    va.set.attach(verify_cmd);
    verify_cmd->add_option("--dense-fill", va.dense_fill, "extra uniformly spaced adversary atoms");
    verify_cmd->add_option("--vmax", va.vmax, "meanvar truncation (default mu + 50 sigma)");
    verify_cmd->add_option("--gridsize", va.gridsize, "meanvar adversary grid");
    verify_cmd->add_option("--out", va.out);

    SweepArgs wa;
    auto* sweep_cmd = app.add_subcommand("sweep", "ratio over a parameter range as CSV");
    wa.set.attach(sweep_cmd);
    sweep_cmd->add_option("--param", wa.param, "swept parameter");
    sweep_cmd->add_option("--from", wa.from);
    sweep_cmd->add_option("--to", wa.to);
    sweep_cmd->add_option("--step", wa.step);
    sweep_cmd->add_option("--n", wa.n, "comma separated levels");
    sweep_cmd->add_option("--method", wa.method)->check(CLI::IsMember({"closed", "lp", "grid"}));
    sweep_cmd->add_option("--resolution", wa.resolution);
    sweep_cmd->add_option("--threads", wa.threads);
    sweep_cmd->add_option("--out", wa.out);

    tools::ReproduceOptions ro;
    std::vector<std::string> targets;
    auto* repro_cmd = app.add_subcommand("reproduce", "write figure and table CSVs");
    repro_cmd->add_option("target", targets, "target names or 'all'")->required();
    repro_cmd->add_option("--out-dir", ro.out_dir);
    repro_cmd->add_option("--threads", ro.threads);
    repro_cmd->add_option("--mean-resolution", ro.mean_resolution, "n = 3 grid step for fig-mean, in units of vbar");
    repro_cmd->add_option("--mean-inf-grid", ro.mean_inf_grid);
    repro_cmd->add_option("--ec-inf-grid", ro.ec_inf_grid);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kBadFlags;
    }

    try {
        if (*solve_cmd) {
            emit(solve(sa), sa.out);
            return 0;
        }
        if (*verify_cmd) return verify(va);
        if (*sweep_cmd) return sweep(wa);
        if (targets.size() == 1 && targets[0] == "all") targets = tools::reproduce_targets();
        for (const auto& t : targets) {
            const auto& known = tools::reproduce_targets();
            if (std::find(known.begin(), known.end(), t) == known.end()) {
                std::cerr << "error: unknown target '" << t << "'\n";
                return kBadFlags;
            }
        }
        for (const auto& t : targets) {
            std::cerr << "reproducing " << t << "\n";
            std::cout << tools::reproduce(t, ro) << "\n";
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadFlags;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    }
}
