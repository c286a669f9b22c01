#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pmgame/params.hpp"
#include "pmgame/types.hpp"

namespace pmg {

// JSON-lines game record: header, then one record per claim (plus zero-cost
// "mark" records carrying stage annotations like end/win/concede and Phase-2
// witness paths), then a footer. Append-only and diffable by design.
struct Transcript {
    ojson header;
    std::vector<ojson> body; // claim + mark records, in game order
    ojson footer;

    std::string to_jsonl() const;
    void save(const std::filesystem::path& file) const;

    static Transcript parse_string(const std::string& text);
    static Transcript load(const std::filesystem::path& file);
};

struct TranscriptParseError : std::runtime_error {
    int line;
    TranscriptParseError(int line_, const std::string& what)
        : std::runtime_error("transcript line " + std::to_string(line_) + ": " + what),
          line(line_) {}
};

// Record constructors: the claim schema is fixed; (u, v) keeps the order the
// strategy passed, which Phase-1 uses to convey orientation (u = out-vertex leaf).
ojson claim_record(long turn, Owner who, VertexId u, VertexId v, int stage, const std::string& case_tag);
ojson mark_record(long turn, int stage, const std::string& tag, ojson data = ojson::object());

ojson header_record(std::string_view version, int n, int b, uint64_t seed,
                    const std::string& maker_name, const std::string& breaker_name,
                    const Params& params);

} // namespace pmg
