#include <doctest.h>

#include "pmgame/params.hpp"

using namespace pmg;

TEST_CASE("paper profile at its native scale") {
    // n chosen as the smallest even integer with ln n > 16; all values frozen
    // from direct evaluation of the formulas in an independent calculator
    Params p = derive_params(8886112, 1.0, Profile::Paper);
    CHECK(p.ell == 3); // (ln n)^{1/4} = 2.0000000026... so the ceiling is 3, not 2
    CHECK(p.troublesome_threshold == doctest::Approx(2221527.988441467).epsilon(1e-12));
    CHECK(p.b_max == 277690);
    CHECK(p.b == p.b_max);
    CHECK(p.p_min == 2221528);
    CHECK(p.pairing_stop == 2 * 2221528 + 1);
    CHECK(p.p_max == 8886112);
    CHECK(p.profile == "paper");
}

TEST_CASE("paper profile rejects f too large for n") {
    // f = 4: 4n/(ln n)^{5/4} > n/ln n, so b_max goes negative
    CHECK_THROWS_AS(derive_params(8886112, 4.0, Profile::Paper), std::invalid_argument);
}

TEST_CASE("desk profile defaults at n = 1024") {
    Params p = derive_params(1024, 1.0, Profile::Desk);
    CHECK(p.ell == 2);
    CHECK(p.troublesome_threshold == doctest::Approx(256.0));
    CHECK(p.p_min == 16); // min(ceil(sqrt(1024)/2), 1024/10)
    CHECK(p.pairing_stop == 33);
    CHECK(p.b == 1);
    CHECK(p.b_max == 56);
    CHECK(p.p_max == 1556);
    CHECK(p.profile == "desk");
}

TEST_CASE("desk overrides are echoed") {
    DeskOverrides ov;
    ov.ell = 3;
    ov.troublesome_threshold = 64.0;
    ov.p_min = 16;
    ov.b = 7;
    Params p = derive_params(1024, 1.0, Profile::Desk, ov);
    CHECK(p.ell == 3);
    CHECK(p.troublesome_threshold == doctest::Approx(64.0));
    CHECK(p.p_min == 16);
    CHECK(p.pairing_stop == 33); // follows the overridden p_min
    CHECK(p.b == 7);
}

TEST_CASE("n validation") {
    CHECK_THROWS_AS(derive_params(7, 1.0, Profile::Desk), std::invalid_argument);
    CHECK_THROWS_AS(derive_params(2, 1.0, Profile::Desk), std::invalid_argument);
    CHECK_THROWS_AS(derive_params(1023, 1.0, Profile::Paper), std::invalid_argument);
}

TEST_CASE("json round trip") {
    Params p = derive_params(256, 1.0, Profile::Desk);
    Params q = params_from_json(params_to_json(p));
    CHECK(q.n == p.n);
    CHECK(q.b == p.b);
    CHECK(q.ell == p.ell);
    CHECK(q.troublesome_threshold == doctest::Approx(p.troublesome_threshold));
    CHECK(q.p_min == p.p_min);
    CHECK(q.p_max == p.p_max);
    CHECK(q.pairing_stop == p.pairing_stop);
    CHECK(q.b_max == p.b_max);
    CHECK(q.stage2_outdeg == p.stage2_outdeg);
    CHECK(q.stage2_budget_factor == p.stage2_budget_factor);
    CHECK(q.profile == p.profile);
}

TEST_CASE("validate_params catches bad fields") {
    Params p = derive_params(64, 1.0, Profile::Desk);
    p.ell = 1;
    CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
    p = derive_params(64, 1.0, Profile::Desk);
    p.p_max = p.p_min - 1;
    CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
}
