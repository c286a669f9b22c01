#include "pmgame/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmg {

namespace {

void check_n(int n) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("n must be even and >= 4, got " + std::to_string(n));
}

// Desk default for the tree-count floor. The paper's p_min = ceil(n/sqrt(ln n))
// needs n(4l-3) vertices' worth of trees and is impossible below ~10^6, so the
// desk profile scales it down while keeping the final forest under half of n:
// 2*p_min trees of 4l-3 vertices each must fit with matching edges to spare.
int desk_p_min(int n, int ell) {
    int by_sqrt = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)) / 2.0));
    int by_fit = n / (2 * (4 * ell - 3));
    return std::max(1, std::min(by_sqrt, by_fit));
}

} // namespace

Params derive_params(int n, double f, Profile profile, const DeskOverrides& ov) {
    check_n(n);
    if (f <= 0) throw std::invalid_argument("f must be positive");

    const double ln = std::log(static_cast<double>(n));
    Params p;
    p.n = n;
    p.f = ov.f.value_or(f);

    // Paper formulas (natural log throughout).
    const double ell_paper = std::ceil(std::sqrt(p.f) * std::pow(ln, 0.25));
    const double threshold_paper = n / std::sqrt(ln);
    const double bmax_paper = std::floor(n / ln - p.f * n / std::pow(ln, 1.25));
    const int p_max_paper = static_cast<int>(std::floor(4.0 * n / std::sqrt(ln))) + 1;

    if (profile == Profile::Paper) {
        p.profile = "paper";
        if (bmax_paper <= 0)
            throw std::invalid_argument(
                "paper profile rejected: b_max = floor(n/ln n - f n/(ln n)^1.25) <= 0 "
                "(f too large for this n)");
        p.ell = static_cast<int>(ell_paper);
        p.troublesome_threshold = threshold_paper;
        p.b_max = static_cast<int>(bmax_paper);
        p.b = p.b_max;
        p.p_min = static_cast<int>(std::ceil(threshold_paper));
        p.pairing_stop = 2 * p.p_min + 1;
        p.p_max = p_max_paper;
    } else {
        p.profile = "desk";
        p.ell = ov.ell.value_or(2);
        p.troublesome_threshold = ov.troublesome_threshold.value_or(n / 4.0);
        p.b_max = std::max(1, static_cast<int>(bmax_paper));
        p.b = ov.b.value_or(1);
        p.p_min = ov.p_min.value_or(desk_p_min(n, p.ell));
        p.pairing_stop = ov.pairing_stop.value_or(2 * p.p_min + 1);
        p.p_max = std::max(ov.p_max.value_or(p_max_paper), p.pairing_stop + 1);
    }
    p.stage2_outdeg = ov.stage2_outdeg.value_or(10);
    p.stage2_budget_factor = ov.stage2_budget_factor.value_or(14);

    validate_params(p);
    return p;
}

void validate_params(const Params& p) {
    check_n(p.n);
    if (p.ell < 2) throw std::invalid_argument("ell must be >= 2");
    if (p.troublesome_threshold <= 0) throw std::invalid_argument("troublesome_threshold must be > 0");
    if (p.b < 0) throw std::invalid_argument("b must be >= 0");
    if (p.p_min < 1) throw std::invalid_argument("p_min must be >= 1");
    if (p.p_max < p.p_min) throw std::invalid_argument("p_max < p_min");
    if (p.stage2_outdeg < 1 || p.stage2_budget_factor < 1)
        throw std::invalid_argument("stage2 constants must be >= 1");
}

ojson params_to_json(const Params& p) {
    return ojson{{"n", p.n},
                 {"b", p.b},
                 {"f", p.f},
                 {"ell", p.ell},
                 {"troublesome_threshold", p.troublesome_threshold},
                 {"p_min", p.p_min},
                 {"p_max", p.p_max},
                 {"pairing_stop", p.pairing_stop},
                 {"b_max", p.b_max},
                 {"stage2_outdeg", p.stage2_outdeg},
                 {"stage2_budget_factor", p.stage2_budget_factor},
                 {"profile", p.profile}};
}

Params params_from_json(const ojson& j) {
    Params p;
    p.n = j.at("n").get<int>();
    p.b = j.at("b").get<int>();
    p.f = j.at("f").get<double>();
    p.ell = j.at("ell").get<int>();
    p.troublesome_threshold = j.at("troublesome_threshold").get<double>();
    p.p_min = j.at("p_min").get<int>();
    p.p_max = j.at("p_max").get<int>();
    p.pairing_stop = j.at("pairing_stop").get<int>();
    p.b_max = j.at("b_max").get<int>();
    p.stage2_outdeg = j.at("stage2_outdeg").get<int>();
    p.stage2_budget_factor = j.at("stage2_budget_factor").get<int>();
    p.profile = j.at("profile").get<std::string>();
    validate_params(p);
    return p;
}

} // namespace pmg
