#pragma once

#include <json.hpp>

#include "equilog/characters.hpp"
#include "equilog/gradedrep.hpp"

namespace equilog {

using ordered_json = nlohmann::ordered_json;

inline ordered_json decomposition_to_json(const IrrDecomposition& a) {
    ordered_json j = ordered_json::object();
    for (const auto& [la, m] : a.mult) j[la.str()] = m;
    return j;
}

inline IrrDecomposition decomposition_from_json(int n, const ordered_json& j) {
    IrrDecomposition out(n);
    for (auto it = j.begin(); it != j.end(); ++it)
        out.add(Partition::parse(it.key()), it.value().get<long long>());
    return out;
}

inline ordered_json graded_rep_to_json(const GradedRep& v) {
    ordered_json pieces = ordered_json::object();
    for (const auto& [d, p] : v.pieces) pieces[std::to_string(d)] = decomposition_to_json(p);
    return ordered_json{{"n", v.n}, {"pieces", pieces}};
}

inline ordered_json elc_verdict_to_json(const ElcVerdict& v) {
    ordered_json links = ordered_json::array();
    for (const auto& l : v.links) {
        ordered_json lj{{"left", {l.i, l.l}}, {"right", {l.j, l.k}}, {"holds", l.holds}};
        if (l.witness)
            lj["witness"] = {{"lambda", l.witness->lambda.str()},
                             {"left_mult", l.witness->left},
                             {"right_mult", l.witness->right}};
        links.push_back(std::move(lj));
    }
    ordered_json j{{"m", v.m}, {"holds", v.holds}, {"links", links}};
    if (v.witness)
        j["witness"] = {{"lambda", v.witness->lambda.str()},
                        {"left_mult", v.witness->left},
                        {"right_mult", v.witness->right}};
    return j;
}

}  // namespace equilog
