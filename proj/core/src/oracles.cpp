#include "shiftkit/oracles.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

namespace shiftkit {

namespace {

int param_int(const OracleParams& p, const std::string& key, int fallback) {
    auto it = p.find(key);
    if (it == p.end()) return fallback;
    try {
        size_t pos = 0;
        int v = std::stoi(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError("oracle spec: parameter " + key + " is not an integer: " +
                         it->second);
    }
}

void reject_unknown(const OracleParams& p, std::initializer_list<const char*> known) {
    for (const auto& [key, value] : p) {
        (void)value;
        if (std::find_if(known.begin(), known.end(),
                         [&](const char* k) { return key == k; }) == known.end())
            throw ParseError("oracle spec: unknown parameter " + key);
    }
}

// Wraps an oracle under a new provenance label.
SubshiftOracle rename(SubshiftOracle inner, std::string provenance) {
    auto p = std::make_shared<SubshiftOracle>(std::move(inner));
    SubshiftOracle o(p->alphabet(), p->horizon(), std::move(provenance),
                     [p](const Word& w) { return p->member(w); });
    o.with_extend([p](const Word& w) { return p->member_extend(w); });
    if (p->defining_words()) o.with_defining_words(*p->defining_words());
    return o;
}

SubshiftOracle named_sft(const std::string& label, const SftSpec& spec, int horizon) {
    return rename(oracle_from_spec(spec, horizon),
                  label + "{horizon=" + std::to_string(horizon) + "}");
}

}  // namespace

std::vector<std::string> builtin_oracle_names() {
    return {"golden_mean", "full_shift", "h1", "h2", "h3", "sturmian", "x3_stage",
            "product"};
}

SubshiftOracle make_builtin_oracle(const std::string& name, const OracleParams& params) {
    if (name == "golden_mean") {
        reject_unknown(params, {"horizon"});
        int horizon = param_int(params, "horizon", 24);
        Alphabet bin = Alphabet::binary();
        return named_sft("golden_mean", SftSpec(bin, {parse_word(bin, "11")}), horizon);
    }
    if (name == "full_shift") {
        reject_unknown(params, {"horizon", "alphabet_size"});
        int horizon = param_int(params, "horizon", 24);
        int size = param_int(params, "alphabet_size", 2);
        if (size < 1 || size > 36)
            throw ParseError("oracle spec: alphabet_size out of range");
        static const char digits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
        Alphabet a = Alphabet::chars(std::string_view(digits, static_cast<size_t>(size)));
        return named_sft("full_shift", SftSpec(a, {}), horizon);
    }
    if (name == "h1" || name == "h2" || name == "h3") {
        reject_unknown(params, {"horizon"});
        int horizon = param_int(params, "horizon", 24);
        return named_sft(name, reference_sft(name), horizon);
    }
    if (name == "sturmian") {
        reject_unknown(params, {"horizon"});
        int horizon = param_int(params, "horizon", 24);
        auto p = std::make_shared<SturmianParams>(SturmianParams::defaults());
        auto member = [p](const Word& w) { return !factor_absent(w, *p); };
        return SubshiftOracle(Alphabet::binary(), horizon,
                              "sturmian{horizon=" + std::to_string(horizon) + "}",
                              member);
    }
    if (name == "x3_stage") {
        reject_unknown(params, {"horizon", "stage", "mult", "type1_max_len", "steps_11",
                                "steps_00", "period_cap", "repeat_cap"});
        int horizon = param_int(params, "horizon", 24);
        int stage = param_int(params, "stage", 1);
        int mult = param_int(params, "mult", 100);
        StageCaps caps;
        caps.type1_max_len = param_int(params, "type1_max_len", caps.type1_max_len);
        caps.steps_11 = param_int(params, "steps_11", caps.steps_11);
        caps.steps_00 = param_int(params, "steps_00", caps.steps_00);
        caps.period_cap = param_int(params, "period_cap", caps.period_cap);
        caps.repeat_cap = param_int(params, "repeat_cap", caps.repeat_cap);
        StageOracleBuild b =
            build_stage_oracle(stage, mult, SturmianParams::defaults(), caps, horizon);
        return b.oracle();
    }
    if (name == "product") {
        auto it = params.find("base");
        if (it == params.end())
            throw ParseError("oracle spec: product requires a base parameter");
        std::string base_name = it->second;
        if (base_name == "product")
            throw ParseError("oracle spec: product base must not be a product");
        OracleParams forwarded = params;
        forwarded.erase("base");
        return product_with_full_shift(make_builtin_oracle(base_name, forwarded));
    }
    throw ParseError("oracle spec: unknown builtin " + name);
}

SubshiftOracle parse_oracle_spec(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> keys;
    std::vector<std::string> body;  // non key:value lines, forbidden words
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        auto colon = line.find(':');
        if (colon != std::string::npos) {
            std::string key = line.substr(0, colon);
            std::string value = line.substr(colon + 1);
            if (auto v = value.find_first_not_of(" \t"); v != std::string::npos)
                value = value.substr(v);
            else
                value.clear();
            if (key == "forbidden" && value.empty()) continue;  // marker line
            keys.emplace_back(std::move(key), std::move(value));
        } else {
            body.push_back(line);
        }
    }

    OracleParams params;
    std::string alphabet_line;
    for (auto& [key, value] : keys) {
        if (key == "alphabet") {
            alphabet_line = value;
            continue;
        }
        if (!params.emplace(key, value).second)
            throw ParseError("oracle spec: duplicate parameter " + key);
    }

    auto builtin = params.find("builtin");
    if (builtin != params.end()) {
        if (!body.empty() || !alphabet_line.empty())
            throw ParseError("oracle spec: builtin form takes no word lines");
        std::string name = builtin->second;
        params.erase(builtin);
        return make_builtin_oracle(name, params);
    }

    if (alphabet_line.empty())
        throw ParseError("oracle spec: missing alphabet or builtin line");
    int horizon = param_int(params, "horizon", 24);
    params.erase("horizon");
    reject_unknown(params, {});
    std::string block = "alphabet: " + alphabet_line + "\n";
    for (const auto& w : body) block += w + "\n";
    return oracle_from_spec(SftSpec(parse_forbidden(block)), horizon);
}

SubshiftOracle load_oracle(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open oracle spec: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_oracle_spec(buf.str());
}

}  // namespace shiftkit
