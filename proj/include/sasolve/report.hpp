#pragma once

#include "sasolve/classify.hpp"
#include "sasolve/count.hpp"
#include "sasolve/realroots.hpp"
#include "sasolve/triangular.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace sasolve {

using Json = nlohmann::ordered_json;

/// Rationals serialize as "num/den" strings, integers included.
inline std::string rational_string(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Json polynomials_json(const std::vector<Polynomial>& ps)
{
    Json a = Json::array();
    for (const auto& p : ps) a.push_back(p.to_string());
    return a;
}

inline Json point_json(const std::vector<Rational>& pt)
{
    Json a = Json::array();
    for (const auto& x : pt) a.push_back(rational_string(x));
    return a;
}

inline Json transform_json(const TransformRecord& t, const VariableOrder& ord)
{
    Json c = Json::array();
    for (const auto& k : t.coefficients) c.push_back(k.get_str());
    return {{"coefficients", c}, {"identity", t.is_identity()}, {"substitution", t.describe(ord)}};
}

inline Json decomposition_json(const std::vector<TriangularSystem>& branches, const VariableOrder& ord)
{
    Json bs = Json::array();
    for (const auto& b : branches)
        bs.push_back({{"triangular_set", polynomials_json(b.tset.polys)},
                      {"side", polynomials_json(b.side)},
                      {"main", b.is_main_branch}});
    return {{"order", ord.symbols()}, {"parameters", ord.param_count()}, {"branches", bs}};
}

inline Json count_json(const CountReport& r, const VariableOrder& ord)
{
    Json bs = Json::array();
    for (const auto& b : r.per_branch)
        bs.push_back({{"id", b.id}, {"triangular_set", b.triangular_set}, {"first_polynomial", b.first_polynomial},
                      {"count", b.count}});
    Json ts = Json::array();
    for (const auto& t : r.transforms) ts.push_back(transform_json(t, ord));
    return {{"total", r.total}, {"dedup_adjustment", r.dedup_adjustment}, {"transforms", ts}, {"branches", bs}};
}

inline Json classification_json(const RegionClassification& rc)
{
    const auto& ord = *rc.order;
    Json out;
    out["order"] = ord.symbols();
    out["parameters"] = ord.param_count();
    if (rc.unresolved) {
        out["unresolved"] = true;
        out["condition"] = rc.guard_description;
        return out;
    }
    out["transform"] = transform_json(rc.transform, ord);
    Json fs = Json::array();
    for (const auto& f : rc.border.factors) {
        Json src = Json::array();
        for (auto s : f.sources) src.push_back(to_string(s));
        fs.push_back({{"polynomial", f.poly.to_string()}, {"border", f.is_border()}, {"sources", src}});
    }
    out["factors"] = fs;
    out["squarefree_border"] = rc.border.squarefree_product().to_string();
    out["guard"] = rc.guard_description;
    out["sign_polynomials"] = polynomials_json(rc.sign_polynomials());
    Json rs = Json::array();
    for (const auto& r : rc.regions) rs.push_back({{"sample", point_json(r.sample)}, {"signs", r.signs}, {"count", r.count}});
    out["regions"] = rs;
    out["boundary_cases"] = polynomials_json(rc.boundary_cases);
    Json bs = Json::array();
    for (const auto& [g, sub] : rc.boundaries) bs.push_back({{"polynomial", g.to_string()}, {"classification", classification_json(sub)}});
    out["boundaries"] = bs;
    return out;
}

inline Json intervals_json(const Polynomial& p, const std::vector<IsolatingInterval>& ivs)
{
    Json rs = Json::array();
    for (const auto& iv : ivs)
        rs.push_back({{"lo", rational_string(iv.lo)}, {"hi", rational_string(iv.hi)}, {"exact", iv.point}});
    return {{"polynomial", p.to_string()}, {"roots", rs}};
}

/// One row per region: sample coordinates, sign vector, count.
inline std::string regions_csv(const RegionClassification& rc)
{
    std::ostringstream os;
    const auto& ord = *rc.order;
    for (std::size_t i = 0; i < ord.param_count(); ++i) os << ord.name(i) << ",";
    auto polys = rc.sign_polynomials();
    for (std::size_t i = 0; i < polys.size(); ++i) os << "sign" << i + 1 << ",";
    os << "count\n";
    for (const auto& r : rc.regions) {
        for (const auto& x : r.sample) os << rational_string(x) << ",";
        for (int s : r.signs) os << s << ",";
        os << r.count << "\n";
    }
    return os.str();
}

}  // namespace sasolve
