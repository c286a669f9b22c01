#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace pmg {

using ojson = nlohmann::ordered_json;

enum class Profile { Paper, Desk };

// Every constant the strategies consult lives here; nothing is hard-coded in
// the engines, because paper-profile values are degenerate at desk-scale n.
struct Params {
    int n = 0;
    int b = 1;
    double f = 1.0;
    int ell = 2;
    double troublesome_threshold = 0.0;
    int p_min = 1;
    int p_max = 0;
    int pairing_stop = 3;     // Case 1a applies only while p > pairing_stop
    int b_max = 1;            // max admissible bias (paper formula, >= 1 clamp on desk)
    int stage2_outdeg = 10;
    int stage2_budget_factor = 14;
    std::string profile = "desk";
    // log base is fixed to natural log; see derive_params
};

struct DeskOverrides {
    std::optional<int> b;
    std::optional<double> f;
    std::optional<int> ell;
    std::optional<double> troublesome_threshold;
    std::optional<int> p_min;
    std::optional<int> p_max;
    std::optional<int> pairing_stop;
    std::optional<int> stage2_outdeg;
    std::optional<int> stage2_budget_factor;
};

// Paper profile: all values from the paper's formulas (natural log), b = b_max.
// Throws if n is odd/small or b_max would be non-positive (f too large for n).
Params derive_params(int n, double f, Profile profile, const DeskOverrides& overrides = {});

void validate_params(const Params& p);

ojson params_to_json(const Params& p);
Params params_from_json(const ojson& j);

} // namespace pmg
