#pragma once

#include "shiftkit/constructions.hpp"
#include "shiftkit/cover.hpp"

#include <map>
#include <string>
#include <vector>

namespace shiftkit {

using OracleParams = std::map<std::string, std::string>;

// golden_mean, full_shift, h1, h2, h3, sturmian, x3_stage, product.
std::vector<std::string> builtin_oracle_names();

// Parameters are decimal strings; unknown keys are rejected.  Common key:
// horizon (default 24).  full_shift: alphabet_size.  x3_stage: stage, mult,
// type1_max_len, steps_11, steps_00, period_cap, repeat_cap.  product: base
// (a builtin name), remaining keys forwarded to the base.
SubshiftOracle make_builtin_oracle(const std::string& name,
                                   const OracleParams& params = {});

// Two forms.  Builtin:
//   builtin: golden_mean
//   horizon: 24
// Explicit forbidden set:
//   alphabet: 01
//   horizon: 24
//   forbidden:
//   11
// `#` starts a comment; the `forbidden:` marker line is optional.
SubshiftOracle parse_oracle_spec(const std::string& text);

SubshiftOracle load_oracle(const std::string& path);

}  // namespace shiftkit
