#pragma once

#include <string>
#include <vector>

#include "pmgame/transcript.hpp"

namespace pmg {

struct InvariantResult {
    std::string name;
    bool pass = true;
    long first_violation_turn = -1; // turn field of the offending record
    long checks = 0;                // times the invariant was exercised
    std::string detail;             // first violation only
};

struct AuditReport {
    bool ok = false;
    std::string outcome; // footer outcome string
    std::string failure_code;
    std::vector<InvariantResult> invariants;
    ojson snapshot; // state at concession (conceded runs only)

    ojson to_json() const;
};

// Full replay of a transcript against an independently maintained shadow
// state: every board/stage1/stage2/assembly invariant, each reporting its
// first violation turn. Shares no state with the strategy engines.
AuditReport audit_transcript(const Transcript& t);

} // namespace pmg
