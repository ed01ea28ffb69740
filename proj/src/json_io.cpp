#include "rsm/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace rsm {

std::string fmt17(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string list(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt17(v[i]);
    return s + "]";
}

}  // namespace

std::string to_json(const Mechanism& m) {
    return "{\"prices\":" + list(m.prices) + ",\"probs\":" + list(m.probs) + ",\"vbar\":" + fmt17(m.vbar) + "}";
}

std::string to_json(const GridPoint& g) {
    return std::string("{\"value\":") + fmt17(g.value) + ",\"side\":\"" + side_name(g.side) + "\"}";
}

std::string to_json(const WorstCaseCertificate& c) {
    std::string s = "{\"ratio\":" + fmt17(c.ratio) + ",\"price\":" + to_json(c.price) + ",\"atoms\":[";
    for (std::size_t i = 0; i < c.distribution.atoms.size(); ++i) {
        const auto& a = c.distribution.atoms[i];
        s += std::string(i ? "," : "") + "{\"value\":" + fmt17(a.at.value) + ",\"side\":\"" + side_name(a.at.side) +
             "\",\"mass\":" + fmt17(a.mass) + "}";
    }
    s += "]";
    if (!c.warnings.empty()) {
        nlohmann::json w = c.warnings;
        s += ",\"warnings\":" + w.dump();
    }
    return s + "}";
}

std::string to_json(const AmbiguitySet& s) {
    std::string p;
    const auto& q = s.params;
    auto intervals = [&] {
        std::string t = "[";
        for (std::size_t i = 0; i < q.intervals.size(); ++i)
            t += std::string(i ? "," : "") + "[" + fmt17(q.intervals[i].lo) + "," + fmt17(q.intervals[i].hi) + "]";
        return t + "]";
    };
    switch (s.kind) {
        case SetKind::Support: p = "{\"vlo\":" + fmt17(q.vlo) + "}"; break;
        case SetKind::Mean: p = "{\"mu\":" + fmt17(q.mu) + "}"; break;
        case SetKind::Quantile: p = "{\"omega\":" + list(q.omega) + ",\"xi\":" + list(q.xi) + "}"; break;
        case SetKind::MultiSegment: p = "{\"intervals\":" + intervals() + ",\"xi\":" + list(q.levels) + "}"; break;
        case SetKind::SegmentedMean: p = "{\"intervals\":" + intervals() + ",\"mu\":" + list(q.levels) + "}"; break;
    }
    return std::string("{\"kind\":\"") + set_kind_name(s.kind) + "\",\"vbar\":" + fmt17(s.vbar) + ",\"params\":" + p + "}";
}

std::string to_json(const QuantileInfMechanism& m) {
    std::ostringstream os;
    os << "{\"kind\":\"quantile_inf\",\"omega\":" << fmt17(m.omega) << ",\"xi\":" << fmt17(m.xi)
       << ",\"vbar\":" << fmt17(m.vbar) << ",\"ratio\":" << fmt17(m.r) << ",\"phat\":" << fmt17(m.phat);
    if (m.degenerate) {
        os << ",\"point_mass\":{\"at\":" << fmt17(m.omega) << ",\"mass\":1},\"density\":[]}";
        return os.str();
    }
    os << ",\"point_mass\":{\"at\":" << fmt17(m.omega) << ",\"mass\":" << fmt17(m.point_mass) << "}"
       << ",\"density\":[{\"from\":" << fmt17(m.xi * m.phat) << ",\"to\":" << fmt17(m.omega)
       << ",\"form\":\"c/v\",\"c\":" << fmt17(m.r / (1.0 - m.xi)) << "},{\"from\":" << fmt17(m.phat)
       << ",\"to\":" << fmt17(m.vbar) << ",\"form\":\"c/v\",\"c\":" << fmt17(m.r) << "}]}";
    return os.str();
}

Mechanism mechanism_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        return canonicalize(j.at("prices").get<std::vector<double>>(), j.at("probs").get<std::vector<double>>(),
                            j.at("vbar").get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("bad mechanism JSON: ") + e.what());
    }
}

AmbiguitySet set_from_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        const std::string kind = j.at("kind").get<std::string>();
        const double vbar = j.at("vbar").get<double>();
        const auto& p = j.at("params");
        auto intervals = [&] {
            std::vector<Interval> out;
            for (const auto& iv : p.at("intervals")) out.push_back({iv.at(0).get<double>(), iv.at(1).get<double>()});
            return out;
        };
        auto numbers = [&](const char* key) {
            const auto& v = p.at(key);
            return v.is_array() ? v.get<std::vector<double>>() : std::vector<double>{v.get<double>()};
        };
        if (kind == "support") return make_support(p.at("vlo").get<double>(), vbar);
        if (kind == "mean") return make_mean(p.at("mu").get<double>(), vbar);
        if (kind == "quantile") return make_quantile(numbers("omega"), numbers("xi"), vbar);
        if (kind == "multisegment") return make_multisegment(intervals(), numbers("xi"), vbar);
        if (kind == "segmentedmean") return make_segmentedmean(intervals(), numbers("mu"), vbar);
        throw DomainError("unknown set kind '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("bad ambiguity-set JSON: ") + e.what());
    }
}

}  // namespace rsm
