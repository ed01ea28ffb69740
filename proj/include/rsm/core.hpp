#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsm {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// LeftLimit sorts before Exact at the same valuation.
enum class Side { LeftLimit = 0, Exact = 1 };

struct GridPoint {
    double value = 0.0;
    Side side = Side::Exact;

    auto operator<=>(const GridPoint&) const = default;
    bool operator==(const GridPoint&) const = default;
};

GridPoint exact(double v);
GridPoint left_of(double v);  // throws at v <= 0
const char* side_name(Side s);
Side parse_side(const std::string& s);

struct Mechanism {
    std::vector<double> prices;
    std::vector<double> probs;
    double vbar = 1.0;

    std::size_t levels() const { return prices.size(); }
    double expected_price() const;
};

Mechanism canonicalize(std::vector<double> prices, std::vector<double> probs, double vbar);
Mechanism deterministic(double price, double vbar);

// t(v) for Exact, t(v-) for LeftLimit.
double payment_at(const Mechanism& m, GridPoint at);

struct Atom {
    GridPoint at;
    double mass = 0.0;
};

struct DiscreteDistribution {
    std::vector<Atom> atoms;

    double total_mass() const;
    double tail_mass(GridPoint p) const;  // mass on atoms >= p
};

struct RatioResult {
    double ratio = 0.0;
    Mechanism mechanism;
    std::vector<double> dualvars;
};

}  // namespace rsm
