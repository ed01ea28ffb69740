#include "rsm/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rsm {

GridPoint exact(double v) {
    if (!(v >= 0.0)) throw DomainError("grid point below 0");
    return {v, Side::Exact};
}

GridPoint left_of(double v) {
    if (!(v > 0.0)) throw DomainError("left limit at or below 0 is not a valuation");
    return {v, Side::LeftLimit};
}

const char* side_name(Side s) { return s == Side::Exact ? "Exact" : "LeftLimit"; }

Side parse_side(const std::string& s) {
    if (s == "Exact") return Side::Exact;
    if (s == "LeftLimit") return Side::LeftLimit;
    throw DomainError("unknown side '" + s + "'");
}

double Mechanism::expected_price() const {
    double s = 0.0;
    for (std::size_t i = 0; i < prices.size(); ++i) s += prices[i] * probs[i];
    return s;
}

Mechanism canonicalize(std::vector<double> prices, std::vector<double> probs, double vbar) {
    if (prices.empty()) throw DomainError("mechanism needs at least one price");
    if (prices.size() != probs.size()) throw DomainError("prices/probs length mismatch");
    if (!(vbar > 0.0) || !std::isfinite(vbar)) throw DomainError("vbar must be positive");
    double total = 0.0;
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!(probs[i] >= 0.0)) throw DomainError("negative probability");
        if (!(prices[i] >= 0.0)) throw DomainError("negative price");
        if (prices[i] > vbar) throw DomainError("price above vbar");
        total += probs[i];
    }
    if (std::abs(total - 1.0) > 1e-9) throw DomainError("probabilities do not sum to 1");

    std::vector<std::size_t> order(prices.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return prices[a] < prices[b]; });

    Mechanism m;
    m.vbar = vbar;
    const double merge_tol = 1e-12 * vbar;
    for (std::size_t idx : order) {
        if (!m.prices.empty() && prices[idx] - m.prices.back() <= merge_tol) {
            m.probs.back() += probs[idx];
        } else {
            m.prices.push_back(prices[idx]);
            m.probs.push_back(probs[idx]);
        }
    }
    double s = std::accumulate(m.probs.begin(), m.probs.end(), 0.0);
    for (double& p : m.probs) p /= s;
    return m;
}

Mechanism deterministic(double price, double vbar) { return canonicalize({price}, {1.0}, vbar); }

double payment_at(const Mechanism& m, GridPoint at) {
    if (!(at.value >= 0.0) || at.value > m.vbar) throw DomainError("payment evaluated outside [0, vbar]");
    double t = 0.0;
    for (std::size_t l = 0; l < m.prices.size(); ++l) {
        const double v = m.prices[l];
        const bool in = at.side == Side::Exact ? v <= at.value : v < at.value;
        if (in) t += v * m.probs[l];
    }
    return t;
}

double DiscreteDistribution::total_mass() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.mass;
    return s;
}

double DiscreteDistribution::tail_mass(GridPoint p) const {
    double s = 0.0;
    for (const auto& a : atoms)
        if (!(a.at < p)) s += a.mass;
    return s;
}

}  // namespace rsm
