#pragma once

#include "cartanlim/expr.hpp"
#include "cartanlim/limits.hpp"
#include "cartanlim/triangle.hpp"

#include <json.hpp>

#include <array>
#include <string>

namespace cartanlim {

using Json = nlohmann::json;  // std::map-backed: object keys serialize sorted

/// Parses {"P": [[..3 expression strings..] x3]} into an exact matrix.
inline Mat3<HReal> matrix_from_json(const Json& spec) {
    if (!spec.is_object() || !spec.contains("P"))
        throw std::invalid_argument("input must be an object with a 3x3 matrix under \"P\"");
    const Json& rows = spec.at("P");
    if (!rows.is_array() || rows.size() != 3)
        throw std::invalid_argument("\"P\" must be an array of 3 rows");
    Mat3<HReal> m;
    for (std::size_t i = 0; i < 3; ++i) {
        const Json& row = rows.at(i);
        if (!row.is_array() || row.size() != 3)
            throw std::invalid_argument("row " + std::to_string(i) + " must have 3 entries");
        for (std::size_t j = 0; j < 3; ++j)
            m.at(i, j) = parse_hreal(row.at(j).get<std::string>());
    }
    return m;
}

namespace detail {

inline Json scalar_report(const HReal& squared) {
    Json j;
    j["magnitude"] = to_string(squared.magnitude());
    if (squared.is_zero())
        j["valuation"] = nullptr;
    else
        j["valuation"] = rational_str(squared.valuation() / 2);  // order of the unsquared length
    return j;
}

}  // namespace detail

/// Machine-readable report of both classification pipelines on one matrix.
inline Json classify_report(const Mat3<HReal>& p) {
    const FullClassification full = full_classify(p);

    Json j;
    Json input = Json::array();
    for (std::size_t i = 0; i < 3; ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < 3; ++k) row.push_back(to_string(p.at(i, k)));
        input.push_back(row);
    }
    j["input"]["P"] = input;
    j["triangle_class"] = to_string(full.triangle_class);
    j["oracle_class"] = to_string(full.oracle_class);
    j["agree"] = full.agree;
    j["delta"] = detail::scalar_report(full.normalized.delta_sq);
    j["epsilon"] = detail::scalar_report(full.normalized.epsilon_sq);
    j["eta"] = detail::scalar_report(full.normalized.eta_sq);
    j["alpha"] = detail::scalar_report(full.normalized.alpha_sq);
    const InfinitesimalCounts counts = count_infinitesimal(full.normalized);
    j["infinitesimal_sides"] = counts.sides;
    j["infinitesimal_angles"] = counts.angles;
    j["config_class"] = to_string(full.config.label);
    j["config_points"] = full.config.points;
    j["config_lines"] = full.config.lines;
    j["normalizer_dim"] = full.normalizer_dim;
    return j;
}

}  // namespace cartanlim
