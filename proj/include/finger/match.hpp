// SPDX-License-Identifier: Apache-2.0
#ifndef FINGER_MATCH_HPP
#define FINGER_MATCH_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finger/fingerprint.hpp"

namespace finger {

/// Experimental measurement of one fingerprint field.
struct MeasuredField {
    double value;
    double uncertainty; // > 0, same units as the field
};

/// Partial fingerprint measured in an experiment; any subset of fields.
struct ExperimentRecord {
    std::map<std::string, MeasuredField> fields;

    void validate() const {
        for (const auto& [k, f] : fields)
            if (!(f.uncertainty > 0.0))
                throw validation_error("experiment field '" + k +
                                       "' must have positive uncertainty");
    }
};

struct MatchResult {
    std::string candidate_label;
    std::map<std::string, double> residuals; // normalized, per shared field
    double score = 0.0;                      // weighted RMS of residuals
    std::size_t rank = 0;                    // 1 = best
};

namespace detail {

inline bool is_lifetime_field(const std::string& key) {
    return key == "tau_r_ns" || key == "tau_nr_ns";
}

inline bool is_angle_field(const std::string& key) {
    return key == "excitation_angle_deg" || key == "emission_angle_deg";
}

/// Distance between two angles already folded to [0, 30] on the 60-degree
/// reflected circle: each folded value x stands for the pair {x, 60 - x}.
inline double folded_angle_distance(double a, double b) {
    return std::min(std::abs(a - b), 60.0 - a - b);
}

inline std::optional<double> fingerprint_field(const Fingerprint& fp, const std::string& key) {
    if (key == "zpl_nm") return fp.zpl_nm;
    if (key == "e0_ev") return fp.e0_ev;
    if (key == "delta_q") return fp.delta_q;
    if (key == "hr") return fp.hr;
    if (key == "dw") return fp.dw;
    if (key == "excitation_angle_deg") return fp.excitation_angle_deg;
    if (key == "excitation_visibility") return fp.excitation_visibility;
    if (key == "emission_angle_deg") return fp.emission_angle_deg;
    if (key == "emission_visibility") return fp.emission_visibility;
    if (key == "mu_sq_debye2") return fp.mu_sq_debye2;
    if (key == "gamma_r") return fp.gamma_r;
    if (key == "tau_r_ns") return fp.tau_r_ns;
    if (key == "gamma_nr") return fp.gamma_nr;
    if (key == "tau_nr_ns") return fp.tau_nr_ns;
    if (key == "eta_pct") return fp.eta_pct;
    return std::nullopt;
}

} // namespace detail

/// Score candidates against an experiment over the fields both sides carry.
/// Lifetimes compare on a log10 scale, angles on the folded 60-degree circle,
/// everything else as (candidate - measured)/uncertainty. Ranking is by
/// ascending score with deterministic label tie-break.
inline std::vector<MatchResult> match_candidates(
    const ExperimentRecord& exp, const std::vector<Fingerprint>& candidates,
    const std::map<std::string, double>& weights = {}) {
    exp.validate();
    if (candidates.empty()) throw domain_error("match_candidates: no candidates");

    std::vector<MatchResult> results;
    for (const auto& fp : candidates) {
        MatchResult res;
        res.candidate_label = fp.defect_label + (fp.transition_order != 1
                                                     ? ":" + std::to_string(fp.transition_order)
                                                     : "");
        double wsum = 0.0, acc = 0.0;
        for (const auto& [key, meas] : exp.fields) {
            const auto val = detail::fingerprint_field(fp, key);
            if (!val) continue; // out-of-plane sentinel or unknown field
            double r;
            if (detail::is_lifetime_field(key)) {
                const double sig = std::log10((meas.value + meas.uncertainty) / meas.value);
                r = (std::log10(*val) - std::log10(meas.value)) / sig;
            } else if (detail::is_angle_field(key)) {
                r = detail::folded_angle_distance(*val, meas.value) / meas.uncertainty;
            } else {
                r = (*val - meas.value) / meas.uncertainty;
            }
            const auto wit = weights.find(key);
            const double w = wit == weights.end() ? 1.0 : wit->second;
            res.residuals[key] = r;
            acc += w * r * r;
            wsum += w;
        }
        if (res.residuals.empty())
            throw domain_error("match_candidates: candidate '" + res.candidate_label +
                               "' shares no fields with the experiment");
        res.score = std::sqrt(acc / wsum);
        results.push_back(std::move(res));
    }

    std::vector<std::size_t> order(results.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (results[a].score != results[b].score) return results[a].score < results[b].score;
        return results[a].candidate_label < results[b].candidate_label;
    });
    for (std::size_t pos = 0; pos < order.size(); ++pos) results[order[pos]].rank = pos + 1;
    std::sort(results.begin(), results.end(),
              [](const MatchResult& a, const MatchResult& b) { return a.rank < b.rank; });
    return results;
}

} // namespace finger

#endif
