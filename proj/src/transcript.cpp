#include "pmgame/transcript.hpp"

#include <fstream>
#include <sstream>

namespace pmg {

std::string Transcript::to_jsonl() const {
    std::string out;
    out += header.dump();
    out += '\n';
    for (const auto& r : body) {
        out += r.dump();
        out += '\n';
    }
    if (!footer.is_null()) {
        out += footer.dump();
        out += '\n';
    }
    return out;
}

void Transcript::save(const std::filesystem::path& file) const {
    std::ofstream os(file);
    if (!os) throw std::runtime_error("cannot open " + file.string() + " for writing");
    os << to_jsonl();
    if (!os) throw std::runtime_error("write failed: " + file.string());
}

Transcript Transcript::parse_string(const std::string& text) {
    Transcript t;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        ojson j = ojson::parse(line, nullptr, false);
        if (j.is_discarded()) throw TranscriptParseError(lineno, "invalid JSON");
        std::string type = j.value("type", "");
        if (type == "header") {
            if (!t.header.is_null()) throw TranscriptParseError(lineno, "duplicate header");
            t.header = std::move(j);
        } else if (type == "claim" || type == "mark") {
            if (t.header.is_null()) throw TranscriptParseError(lineno, "record before header");
            if (!t.footer.is_null()) throw TranscriptParseError(lineno, "record after footer");
            t.body.push_back(std::move(j));
        } else if (type == "footer") {
            if (!t.footer.is_null()) throw TranscriptParseError(lineno, "duplicate footer");
            t.footer = std::move(j);
        } else {
            throw TranscriptParseError(lineno, "unknown record type '" + type + "'");
        }
    }
    if (t.header.is_null()) throw TranscriptParseError(lineno, "missing header");
    return t;
}

Transcript Transcript::load(const std::filesystem::path& file) {
    std::ifstream is(file);
    if (!is) throw std::runtime_error("cannot open " + file.string());
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_string(buf.str());
}

ojson claim_record(long turn, Owner who, VertexId u, VertexId v, int stage,
                   const std::string& case_tag) {
    return ojson{{"type", "claim"},
                 {"turn", turn},
                 {"player", who == Owner::Maker ? "M" : "B"},
                 {"u", u},
                 {"v", v},
                 {"stage", stage},
                 {"case", case_tag}};
}

ojson mark_record(long turn, int stage, const std::string& tag, ojson data) {
    return ojson{{"type", "mark"}, {"turn", turn}, {"stage", stage}, {"tag", tag}, {"data", std::move(data)}};
}

ojson header_record(std::string_view version, int n, int b, uint64_t seed,
                    const std::string& maker_name, const std::string& breaker_name,
                    const Params& params) {
    return ojson{{"type", "header"},
                 {"version", std::string(version)},
                 {"n", n},
                 {"b", b},
                 {"seed", seed},
                 {"maker", maker_name},
                 {"breaker", breaker_name},
                 {"params", params_to_json(params)}};
}

} // namespace pmg
