#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rsm/adversary.hpp"
#include "rsm/closed_form.hpp"
#include "rsm/eval.hpp"
#include "rsm/json_io.hpp"
#include "rsm/lp_builder.hpp"
#include "rsm/search.hpp"

namespace py = pybind11;
using namespace rsm;

namespace {

GridPoint point(double v, const std::string& side) { return {v, parse_side(side)}; }

py::dict certificate(const WorstCaseCertificate& c) {
    py::list atoms;
    for (const auto& a : c.distribution.atoms)
        atoms.append(py::make_tuple(a.at.value, side_name(a.at.side), a.mass));
    py::dict d;
    d["ratio"] = c.ratio;
    d["price"] = py::make_tuple(c.price.value, side_name(c.price.side));
    d["atoms"] = atoms;
    d["warnings"] = c.warnings;
    return d;
}

}  // namespace

PYBIND11_MODULE(_rsm, m) {
    m.doc() = "Robust n-level selling mechanisms";
    m.attr("__version__") = kVersion;

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

    py::class_<Mechanism>(m, "Mechanism")
        .def(py::init([](std::vector<double> p, std::vector<double> q, double vbar) {
                 return canonicalize(std::move(p), std::move(q), vbar);
             }),
             py::arg("prices"), py::arg("probs"), py::arg("vbar"))
        .def_readonly("prices", &Mechanism::prices)
        .def_readonly("probs", &Mechanism::probs)
        .def_readonly("vbar", &Mechanism::vbar)
        .def("expected_price", &Mechanism::expected_price)
        .def("payment_at", [](const Mechanism& mech, double v, const std::string& side) {
            return payment_at(mech, point(v, side));
        }, py::arg("v"), py::arg("side") = "Exact")
        .def("to_json", [](const Mechanism& mech) { return to_json(mech); })
        .def_static("from_json", &mechanism_from_json)
        .def("__repr__", [](const Mechanism& mech) { return "Mechanism(" + to_json(mech) + ")"; });

    py::class_<AmbiguitySet>(m, "AmbiguitySet")
        .def_readonly("vbar", &AmbiguitySet::vbar)
        .def_property_readonly("kind", [](const AmbiguitySet& s) { return set_kind_name(s.kind); })
        .def("breakpoints", &AmbiguitySet::breakpoints)
        .def("phi", [](const AmbiguitySet& s, std::size_t k, double v, const std::string& side) {
            return phi_eval(s, k, point(v, side));
        }, py::arg("k"), py::arg("v"), py::arg("side") = "Exact")
        .def("to_json", [](const AmbiguitySet& s) { return to_json(s); })
        .def_static("from_json", &set_from_json)
        .def("__repr__", [](const AmbiguitySet& s) { return "AmbiguitySet(" + to_json(s) + ")"; });

    m.def("support_set", &make_support, py::arg("vlo"), py::arg("vbar"));
    m.def("mean_set", &make_mean, py::arg("mu"), py::arg("vbar"));
    m.def("quantile_set", &make_quantile, py::arg("omega"), py::arg("xi"), py::arg("vbar"));
    m.def("multisegment_set", [](const std::vector<std::pair<double, double>>& iv, std::vector<double> xi, double vbar) {
        std::vector<Interval> out;
        for (auto [a, b] : iv) out.push_back({a, b});
        return make_multisegment(out, std::move(xi), vbar);
    }, py::arg("intervals"), py::arg("xi"), py::arg("vbar"));
    m.def("segmentedmean_set", [](const std::vector<std::pair<double, double>>& iv, std::vector<double> mu, double vbar) {
        std::vector<Interval> out;
        for (auto [a, b] : iv) out.push_back({a, b});
        return make_segmentedmean(out, std::move(mu), vbar);
    }, py::arg("intervals"), py::arg("mu"), py::arg("vbar"));

    auto ratio_pair = [](const RatioResult& r) { return py::make_tuple(r.ratio, r.mechanism); };
    m.def("solve_ratio", [=](const AmbiguitySet& s, const std::vector<double>& prices) {
        return ratio_pair(solve_ratio_given_prices(s, prices));
    }, py::arg("set"), py::arg("prices"), "Optimal ratio and mechanism for fixed price levels.");
    m.def("support_optimal", [=](int n, double vlo, double vbar) { return ratio_pair(support_optimal(n, vlo, vbar)); });
    m.def("support_limit_ratio", &support_limit_ratio);
    m.def("mean_one_level", [=](double mu, double vbar) { return ratio_pair(mean_one_level(mu, vbar)); });
    m.def("mean_two_level", [=](double mu, double vbar) { return ratio_pair(mean_two_level(mu, vbar)); });
    m.def("quantile_one_level", [=](double w, double xi, double vbar) { return ratio_pair(quantile_one_level(w, xi, vbar)); });
    m.def("quantile_two_level", [=](double w, double xi, double vbar) { return ratio_pair(quantile_two_level(w, xi, vbar)); });
    m.def("meanvar_two_level", [](double mu, double sigma) {
        const auto r = meanvar_two_level_approx(mu, sigma);
        return py::make_tuple(r.ratio, r.mechanism);
    });
    m.def("meanvar_lower_bound", &meanvar_ratio_lower_bound);
    m.def("maximin_revenue", [](double mu, double vbar, int n) {
        const auto r = maximin_revenue_optimal(mu, vbar, n);
        return py::make_tuple(r.revenue, r.mechanism);
    });
    m.def("minimax_regret", [](double mu, double vbar) {
        const auto r = minimax_regret_one_level(mu, vbar);
        return py::make_tuple(r.regret, r.price);
    });

    py::class_<QuantileInfMechanism>(m, "QuantileInfMechanism")
        .def_readonly("omega", &QuantileInfMechanism::omega)
        .def_readonly("xi", &QuantileInfMechanism::xi)
        .def_readonly("vbar", &QuantileInfMechanism::vbar)
        .def_readonly("ratio", &QuantileInfMechanism::r)
        .def_readonly("phat", &QuantileInfMechanism::phat)
        .def_readonly("point_mass", &QuantileInfMechanism::point_mass)
        .def("density", &QuantileInfMechanism::density)
        .def("payment", &QuantileInfMechanism::payment)
        .def("allocation", &QuantileInfMechanism::allocation)
        .def("total_mass", &QuantileInfMechanism::total_mass)
        .def("to_json", [](const QuantileInfMechanism& q) { return to_json(q); });
    m.def("quantile_inf", &quantile_inf, py::arg("omega"), py::arg("xi"), py::arg("vbar"));

    m.def("worst_case_ratio", [](const Mechanism& mech, const AmbiguitySet& s, std::size_t dense_fill) {
        return certificate(worst_case_ratio(mech, s, AdversaryOptions{dense_fill}));
    }, py::arg("mechanism"), py::arg("set"), py::arg("dense_fill") = 0);
    m.def("worst_case_ratio_inf", [](const QuantileInfMechanism& q, const AmbiguitySet& s, std::size_t dense_fill) {
        return certificate(worst_case_ratio(q, s, AdversaryOptions{dense_fill}));
    }, py::arg("mechanism"), py::arg("set"), py::arg("dense_fill") = 2000);
    m.def("worst_case_meanvar", [](const Mechanism& mech, double mu, double sigma, double vmax, std::size_t grid) {
        return certificate(worst_case_meanvar(mech, mu, sigma, vmax, grid));
    }, py::arg("mechanism"), py::arg("mu"), py::arg("sigma"), py::arg("vmax") = 0.0, py::arg("gridsize") = 4000);
    m.def("worst_case_alpha_metric", [](const Mechanism& mech, double mu, double vbar, double alpha) {
        return certificate(worst_case_alpha_metric(mech, mu, vbar, alpha));
    });

    m.def("best_n_level", [=](const AmbiguitySet& s, int n, double resolution) {
        return ratio_pair(best_n_level(s, n, resolution).best);
    }, py::arg("set"), py::arg("n"), py::arg("resolution"));
    m.def("approx_inf_level", [=](const AmbiguitySet& s, std::size_t grid) { return ratio_pair(approx_inf_level(s, grid)); },
          py::arg("set"), py::arg("gridsize") = 400);

    py::class_<Distribution>(m, "Distribution")
        .def_static("beta", &Distribution::make_beta, py::arg("alpha"), py::arg("beta"), py::arg("vbar") = 1.0)
        .def_static("discrete", py::overload_cast<const std::vector<double>&, const std::vector<double>&, double>(
                                    &Distribution::make_discrete),
                    py::arg("values"), py::arg("masses"), py::arg("vbar"))
        .def("mean", [](const Distribution& d) { return mean_of(d); })
        .def("tail", [](const Distribution& d, double v) { return tail(d, v); })
        .def("quantile", [](const Distribution& d, double xi) { return quantile_of(d, xi); });
    m.def("revenue", py::overload_cast<const Mechanism&, const Distribution&>(&revenue_under));
    m.def("revenue", py::overload_cast<const QuantileInfMechanism&, const Distribution&>(&revenue_under));
    m.def("optimal_posted_revenue", &optimal_posted_revenue);
    m.def("performance_ratio", py::overload_cast<const Mechanism&, const Distribution&>(&performance_ratio));
    m.def("performance_ratio", py::overload_cast<const QuantileInfMechanism&, const Distribution&>(&performance_ratio));
}
