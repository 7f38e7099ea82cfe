#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "shiftkit/blockcodes.hpp"
#include "shiftkit/bounds.hpp"
#include "shiftkit/constructions.hpp"
#include "shiftkit/cover.hpp"
#include "shiftkit/measures.hpp"
#include "shiftkit/oracles.hpp"
#include "shiftkit/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace shiftkit;
using json = nlohmann::ordered_json;

namespace {

// Verdict-level failure: the computation ran, the answer is "no".
struct VerdictFail {
    std::string message;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error("cannot write " + tmp);
        out << text;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("cannot move output into place: " + path);
}

std::string fmt(double x) {
    std::ostringstream s;
    s << std::setprecision(17) << x;
    return s.str();
}

double parse_h(const std::string& text) {
    if (text == "ln2") return std::log(2.0);
    if (text == "ln3") return std::log(3.0);
    try {
        size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw Error("cannot parse entropy value: " + text);
    }
}

SftSpec spec_of(const SubshiftOracle& o) {
    if (!o.defining_words())
        throw Error("this command needs an oracle with an explicit forbidden set");
    return SftSpec(*o.defining_words());
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw Error("empty integer list");
    return out;
}

json bound_json(const BoundReport& r) {
    json j;
    j["schema"] = 1;
    j["kind"] = "bound";
    j["name"] = r.name;
    json inputs;
    for (const auto& [k, v] : r.inputs) inputs[k] = v;
    j["inputs"] = inputs;
    j["log_value"] = r.log_value;
    j["value"] = r.value;
    j["overflow_safe"] = r.overflow_safe;
    return j;
}

std::string bound_csv(const BoundReport& r) {
    return "name,log_value,value\n" + r.name + "," + fmt(r.log_value) + "," +
           fmt(r.value) + "\n";
}

struct CommonOut {
    std::string output;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOut& out) {
    cmd->add_option("-o,--output", out.output, "Write to this path (atomic)");
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

void cmd_entropy(const std::string& spec_path, int order, size_t state_cap, double tol,
                 const CommonOut& out) {
    SubshiftOracle o = load_oracle(spec_path);
    SftSpec spec = spec_of(o);
    RecodeOptions ropts;
    ropts.state_cap = state_cap;
    VertexShift v = recode(spec, order, ropts);
    PerronOptions popts;
    popts.tol = tol;
    bool connected = is_strongly_connected(v.succ);
    double h = 0;
    PerronData data;
    if (connected) {
        data = perron(v, popts);
        h = data.entropy_nats;
    } else {
        h = scc_entropy(v, popts);
        data.lambda = std::exp(h);
    }
    json j;
    j["schema"] = 1;
    j["kind"] = "entropy";
    j["oracle"] = o.provenance();
    j["order"] = v.order;
    j["states"] = static_cast<long long>(v.size());
    j["edges"] = static_cast<long long>(v.edges());
    j["strongly_connected"] = connected;
    j["lambda"] = connected ? data.lambda : std::exp(h);
    j["entropy_nats"] = h;
    j["entropy_bits"] = h / std::log(2.0);
    if (connected) {
        j["residual"] = data.residual;
        j["iterations"] = data.iterations;
    }
    if (out.format == "csv") {
        std::string csv = "lambda,entropy_nats,entropy_bits,residual,iterations\n";
        csv += fmt(j["lambda"].get<double>()) + "," + fmt(h) + "," +
               fmt(h / std::log(2.0)) + ",";
        csv += connected ? fmt(data.residual) : std::string();
        csv += ",";
        csv += connected ? std::to_string(data.iterations) : std::string();
        csv += "\n";
        write_output(out.output, csv);
    } else {
        write_output(out.output, j.dump(2) + "\n");
    }
}

void cmd_mme(const std::string& spec_path, int ell, const std::string& stages,
             const std::string& words, const CommonOut& out) {
    SubshiftOracle o = load_oracle(spec_path);
    if (!stages.empty()) {
        std::vector<Word> ws;
        std::stringstream in(words);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (!item.empty()) ws.push_back(parse_word(o.alphabet(), item));
        }
        if (ws.empty()) throw Error("mme --stages needs --words");
        StageTable t = mme_stage_table(o, parse_int_list(stages), ws);
        if (out.format == "csv") {
            write_output(out.output, stage_table_csv(t, o.alphabet()));
            return;
        }
        json j;
        j["schema"] = 1;
        j["kind"] = "mme_stages";
        j["oracle"] = o.provenance();
        json rows = json::array();
        for (size_t si = 0; si < t.stages.size(); ++si) {
            json row;
            row["stage"] = t.stages[si];
            if (t.skipped[si]) {
                row["skipped"] = t.skip_reasons[si];
            } else {
                json vals;
                for (size_t wi = 0; wi < t.words.size(); ++wi)
                    vals[format_word(o.alphabet(), t.words[wi])] = t.values[si][wi];
                row["values"] = vals;
            }
            rows.push_back(row);
        }
        j["rows"] = rows;
        json flags = json::array();
        for (const auto& f : t.flags) {
            flags.push_back({{"stage_a", f.stage_a},
                             {"stage_b", f.stage_b},
                             {"word", format_word(o.alphabet(), f.word)},
                             {"gap", f.gap},
                             {"bound", f.bound}});
        }
        j["flags"] = flags;
        write_output(out.output, j.dump(2) + "\n");
        return;
    }
    SftSpec spec = spec_of(o);
    ParryMeasure m = parry_measure(recode(spec));
    CylinderTable t = parry_table(m, ell);
    if (out.format == "csv") {
        write_output(out.output, cylinder_table_csv(t, spec.alphabet()));
        return;
    }
    json j;
    j["schema"] = 1;
    j["kind"] = "mme";
    j["oracle"] = o.provenance();
    j["ell"] = ell;
    json rows = json::array();
    for (const auto& [w, p] : t.rows)
        rows.push_back({{"word", format_word(spec.alphabet(), w)}, {"probability", p}});
    j["rows"] = rows;
    write_output(out.output, j.dump(2) + "\n");
}

void cmd_periodic(const std::string& spec_path, int p_max, const CommonOut& out) {
    SubshiftOracle o = load_oracle(spec_path);
    SftSpec spec = spec_of(o);
    VertexShift v = recode(spec);
    json j;
    j["schema"] = 1;
    j["kind"] = "periodic";
    j["oracle"] = o.provenance();
    json rows = json::array();
    std::string csv = "p,fixed_points,orbit_count,orbits\n";
    for (int p = 1; p <= p_max; ++p) {
        auto orbits = enumerate_min_periodic(v, p);
        BigInt trace = periodic_count(v, p);
        json row;
        row["p"] = p;
        row["fixed_points"] = trace.get_str();
        row["orbit_count"] = static_cast<long long>(orbits.size());
        json names = json::array();
        std::string joined;
        for (const auto& orb : orbits) {
            std::string s = format_word(spec.alphabet(), orb.period_word);
            names.push_back(s);
            if (!joined.empty()) joined += " ";
            joined += s;
        }
        row["orbits"] = names;
        rows.push_back(row);
        csv += std::to_string(p) + "," + trace.get_str() + "," +
               std::to_string(orbits.size()) + "," + joined + "\n";
    }
    j["rows"] = rows;
    write_output(out.output, out.format == "csv" ? csv : j.dump(2) + "\n");
}

void cmd_scan_language(const std::string& oracle_path, int horizon, uint64_t seed,
                       const CommonOut& out) {
    SubshiftOracle o = load_oracle(oracle_path);
    o.spot_check_factor_closed(seed);
    if (horizon == 0) horizon = o.horizon();
    LanguageScan scan = language_stability_scan(o, horizon);
    json j;
    j["schema"] = 1;
    j["kind"] = "language_scan";
    j["oracle"] = o.provenance();
    j["horizon"] = scan.horizon;
    j["breaks"] = scan.break_lengths;
    json runs = json::array();
    for (auto [a, b] : scan.runs) runs.push_back({a, b});
    j["runs"] = runs;
    if (out.format == "csv") {
        std::string csv = "break_length\n";
        for (int b : scan.break_lengths) csv += std::to_string(b) + "\n";
        write_output(out.output, csv);
    } else {
        write_output(out.output, j.dump(2) + "\n");
    }
}

void cmd_scan_entropy(const std::string& oracle_path, double eps, int ell, int jgap,
                      int m_max, uint64_t seed, const CommonOut& out) {
    SubshiftOracle o = load_oracle(oracle_path);
    o.spot_check_factor_closed(seed);
    EntropyScan scan = entropy_stability_scan(o, eps, ell, jgap, m_max);
    json j;
    j["schema"] = 1;
    j["kind"] = "entropy_scan";
    j["oracle"] = o.provenance();
    j["eps"] = scan.eps;
    j["ell"] = scan.ell;
    j["j"] = scan.j;
    json rows = json::array();
    std::string csv =
        "m,h_m,h_mj,drop,s_m_words,recode_states,threshold_log,within_threshold,"
        "stages_equal,corollary_log,corollary_ok,skip_reason\n";
    for (const auto& r : scan.rows) {
        json row;
        row["m"] = r.m;
        if (r.skipped) {
            row["skipped"] = r.skip_reason;
            csv += std::to_string(r.m) + ",,,,,,,,,,," + r.skip_reason + "\n";
        } else {
            row["h_m"] = r.h_m;
            row["h_mj"] = r.h_mj;
            row["drop"] = r.drop;
            row["s_m_words"] = r.s_m_words;
            row["recode_states"] = r.recode_states;
            row["threshold_log"] = r.threshold_log;
            row["within_threshold"] = r.within_threshold;
            row["stages_equal"] = r.stages_equal;
            if (!r.stages_equal) {
                row["corollary_log"] = r.corollary_log;
                row["corollary_ok"] = r.corollary_ok;
            }
            csv += std::to_string(r.m) + "," + fmt(r.h_m) + "," + fmt(r.h_mj) + "," +
                   fmt(r.drop) + "," + std::to_string(r.s_m_words) + "," +
                   std::to_string(r.recode_states) + "," + fmt(r.threshold_log) + "," +
                   (r.within_threshold ? "1" : "0") + "," +
                   (r.stages_equal ? "1" : "0") + ",";
            csv += r.stages_equal ? std::string() : fmt(r.corollary_log);
            csv += ",";
            csv += r.stages_equal ? std::string() : std::string(r.corollary_ok ? "1" : "0");
            csv += ",\n";
        }
        rows.push_back(row);
    }
    j["rows"] = rows;
    write_output(out.output, out.format == "csv" ? csv : j.dump(2) + "\n");
}

void cmd_scan_period(const std::string& oracle_path, int m, int n_max, int p_max,
                     bool verify, uint64_t seed, const CommonOut& out) {
    SubshiftOracle o = load_oracle(oracle_path);
    o.spot_check_factor_closed(seed);
    if (n_max == 0) n_max = std::max(1, o.horizon() - m);
    auto cert = period_stability_scan(o, m, n_max, p_max);
    if (!cert) {
        json j;
        j["schema"] = 1;
        j["kind"] = "period_scan";
        j["oracle"] = o.provenance();
        j["m"] = m;
        j["found"] = false;
        write_output(out.output, j.dump(2) + "\n");
        throw VerdictFail{"no period-stability certificate within n_max=" +
                          std::to_string(n_max) + " p_max=" + std::to_string(p_max)};
    }
    if (verify && !verify_certificate(o, *cert))
        throw VerdictFail{"certificate failed re-verification"};
    write_output(out.output, certificate_json(*cert, o.alphabet()));
}

void cmd_verify_cert(const std::string& oracle_path, const std::string& cert_path,
                     uint64_t seed, const CommonOut& out) {
    SubshiftOracle o = load_oracle(oracle_path);
    o.spot_check_factor_closed(seed);
    StabilityCertificate cert = certificate_from_json(slurp(cert_path), o.alphabet());
    bool ok = verify_certificate(o, cert);
    json j;
    j["schema"] = 1;
    j["kind"] = "certificate_check";
    j["oracle"] = o.provenance();
    j["n"] = cert.n;
    j["m"] = cert.m;
    j["p"] = cert.p;
    j["pass"] = ok;
    write_output(out.output, j.dump(2) + "\n");
    if (!ok) throw VerdictFail{"certificate failed verification"};
}

void cmd_construct_stage(int stage, int mult, int horizon, const StageCaps& caps,
                         const CommonOut& out) {
    StageOracleBuild b =
        build_stage_oracle(stage, mult, SturmianParams::defaults(), caps, horizon);
    write_output(out.output, stage_ledger_json(b));
}

void cmd_construct_replay(const std::string& ledger_path, const CommonOut& out) {
    std::string text = slurp(ledger_path);
    StageOracleBuild b = replay_stage_ledger(text);
    std::string reserialized = stage_ledger_json(b);
    bool identical = json::parse(text) == json::parse(reserialized);
    json j;
    j["schema"] = 1;
    j["kind"] = "replay";
    j["stage"] = b.stage;
    j["mult"] = b.mult;
    j["forbidden_words"] = static_cast<long long>(b.spec.forbidden.words().size());
    j["identical"] = identical;
    write_output(out.output, j.dump(2) + "\n");
    if (!identical) throw VerdictFail{"ledger replay did not reproduce the input"};
}

void cmd_verify_blockmap(const std::string& map_path, const std::string& inverse_path,
                         const std::string& oracle_path, int depth, uint64_t seed,
                         const CommonOut& out) {
    BlockMap fwd = parse_block_map(slurp(map_path));
    BlockMap inv = parse_block_map(slurp(inverse_path));
    SubshiftOracle o = load_oracle(oracle_path);
    o.spot_check_factor_closed(seed);
    AutomorphismVerdict v = verify_automorphism_pair(fwd, inv, o, depth);
    json j;
    j["schema"] = 1;
    j["kind"] = "blockmap_check";
    j["oracle"] = o.provenance();
    j["depth"] = depth;
    j["pass"] = v.pass;
    if (!v.pass) {
        j["failure"] = v.failure;
        j["witness"] = format_word(fwd.domain(), v.witness);
    }
    write_output(out.output, j.dump(2) + "\n");
    if (!v.pass) throw VerdictFail{v.failure};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subshift toolkit: entropy, measures, covers, stability certificates"};
    app.require_subcommand(1);

    int rc = 0;

    // entropy
    auto* entropy = app.add_subcommand("entropy", "Topological entropy of an SFT spec");
    static std::string e_spec;
    static int e_order = 0;
    static size_t e_state_cap = 1'000'000;
    static double e_tol = 1e-12;
    static CommonOut e_out;
    entropy->add_option("spec", e_spec, "Oracle/spec file")->required();
    entropy->add_option("--order", e_order, "Recode order (0 = default)");
    entropy->add_option("--state-cap", e_state_cap, "Max recoded states");
    entropy->add_option("--tol", e_tol, "Residual tolerance");
    add_common(entropy, e_out);
    entropy->callback([&] { cmd_entropy(e_spec, e_order, e_state_cap, e_tol, e_out); });

    // mme
    auto* mme = app.add_subcommand("mme", "Measure of maximal entropy cylinder table");
    static std::string m_spec, m_stages, m_words;
    static int m_ell = 3;
    static CommonOut m_out;
    mme->add_option("spec", m_spec, "Oracle/spec file")->required();
    mme->add_option("--ell", m_ell, "Max cylinder length");
    mme->add_option("--stages", m_stages, "Cover stages, comma separated");
    mme->add_option("--words", m_words, "Words for the stage table, comma separated");
    add_common(mme, m_out);
    mme->callback([&] { cmd_mme(m_spec, m_ell, m_stages, m_words, m_out); });

    // periodic
    auto* periodic = app.add_subcommand("periodic", "Periodic points and orbits");
    static std::string p_spec;
    static int p_max = 8;
    static CommonOut p_out;
    periodic->add_option("spec", p_spec, "Oracle/spec file")->required();
    periodic->add_option("--p-max", p_max, "Max period");
    add_common(periodic, p_out);
    periodic->callback([&] { cmd_periodic(p_spec, p_max, p_out); });

    // cover
    auto* cover = app.add_subcommand("cover", "SFT cover scans and certificates");
    cover->require_subcommand(1);
    static uint64_t seed = 12345;
    cover->add_option("--seed", seed, "Seed for the oracle spot check");

    auto* scan_lang = cover->add_subcommand("scan-language", "Find cover break lengths");
    static std::string sl_oracle;
    static int sl_horizon = 0;
    static CommonOut sl_out;
    scan_lang->add_option("oracle", sl_oracle, "Oracle file")->required();
    scan_lang->add_option("--horizon", sl_horizon, "Scan horizon (0 = oracle horizon)");
    add_common(scan_lang, sl_out);
    scan_lang->callback([&] { cmd_scan_language(sl_oracle, sl_horizon, seed, sl_out); });

    auto* scan_ent = cover->add_subcommand("scan-entropy", "Entropy drops across stages");
    static std::string se_oracle;
    static double se_eps = 0.05;
    static int se_ell = 3, se_j = 1, se_m_max = 6;
    static CommonOut se_out;
    scan_ent->add_option("oracle", se_oracle, "Oracle file")->required();
    scan_ent->add_option("--eps", se_eps, "Gap parameter");
    scan_ent->add_option("--ell", se_ell, "Cylinder length");
    scan_ent->add_option("--j", se_j, "Stage gap");
    scan_ent->add_option("--m-max", se_m_max, "Max stage");
    add_common(scan_ent, se_out);
    scan_ent->callback(
        [&] { cmd_scan_entropy(se_oracle, se_eps, se_ell, se_j, se_m_max, seed, se_out); });

    auto* scan_per = cover->add_subcommand("scan-period", "Period-stability certificate");
    static std::string sp_oracle;
    static int sp_m = 1, sp_n_max = 0, sp_p_max = 6;
    static bool sp_verify = false;
    static CommonOut sp_out;
    scan_per->add_option("oracle", sp_oracle, "Oracle file")->required();
    scan_per->add_option("--m", sp_m, "Stage gap to certify")->required();
    scan_per->add_option("--n-max", sp_n_max, "Max stage (0 = horizon - m)");
    scan_per->add_option("--p-max", sp_p_max, "Max period");
    scan_per->add_flag("--verify", sp_verify, "Re-verify the certificate before output");
    add_common(scan_per, sp_out);
    scan_per->callback(
        [&] { cmd_scan_period(sp_oracle, sp_m, sp_n_max, sp_p_max, sp_verify, seed, sp_out); });

    auto* verify_cert = cover->add_subcommand("verify", "Verify a stored certificate");
    static std::string vc_oracle, vc_cert;
    static CommonOut vc_out;
    verify_cert->add_option("oracle", vc_oracle, "Oracle file")->required();
    verify_cert->add_option("--certificate", vc_cert, "Certificate JSON")->required();
    add_common(verify_cert, vc_out);
    verify_cert->callback([&] { cmd_verify_cert(vc_oracle, vc_cert, seed, vc_out); });

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Explicit constants and bounds");
    bounds->require_subcommand(1);

    auto* bxi = bounds->add_subcommand("xi", "xi(s), log scale");
    static int bxi_s = 2;
    static CommonOut bxi_out;
    bxi->add_option("--s", bxi_s, "Word count")->required();
    add_common(bxi, bxi_out);
    bxi->callback([&] {
        BoundReport r = report_xi(bxi_s);
        write_output(bxi_out.output,
                     bxi_out.format == "csv" ? bound_csv(r) : bound_json(r).dump(2) + "\n");
    });

    auto* bprop = bounds->add_subcommand("prop", "Contraction constants");
    static int bprop_s = 2;
    static CommonOut bprop_out;
    bprop->add_option("--s", bprop_s, "Word count")->required();
    add_common(bprop, bprop_out);
    bprop->callback([&] {
        PropConstants c = prop_constants(bprop_s);
        json j;
        j["schema"] = 1;
        j["kind"] = "prop_constants";
        j["s"] = c.s;
        j["A_log"] = c.A_log;
        j["beta_lo"] = c.beta_lo;
        j["beta_hi"] = c.beta_hi;
        j["beta_hi_log"] = c.beta_hi_log;
        j["ratio_log_cap"] = c.ratio_log_cap;
        j["M_cap"] = c.M_cap;
        write_output(bprop_out.output, j.dump(2) + "\n");
    });

    auto* bthr = bounds->add_subcommand("threshold", "Entropy-gap threshold, log scale");
    static double bthr_eps = 0.05;
    static int bthr_ell = 3, bthr_s = 2;
    static CommonOut bthr_out;
    bthr->add_option("--eps", bthr_eps, "Cylinder gap")->required();
    bthr->add_option("--ell", bthr_ell, "Cylinder length")->required();
    bthr->add_option("--s", bthr_s, "Word count")->required();
    add_common(bthr, bthr_out);
    bthr->callback([&] {
        BoundReport r = report_threshold(bthr_eps, bthr_ell, bthr_s);
        write_output(bthr_out.output,
                     bthr_out.format == "csv" ? bound_csv(r) : bound_json(r).dump(2) + "\n");
    });

    auto* bcthr = bounds->add_subcommand("cover-threshold", "Stage threshold, log scale");
    static double bcthr_eps = 0.05;
    static int bcthr_ell = 3, bcthr_j = 1, bcthr_s = 2;
    static CommonOut bcthr_out;
    bcthr->add_option("--eps", bcthr_eps, "Cylinder gap")->required();
    bcthr->add_option("--ell", bcthr_ell, "Cylinder length")->required();
    bcthr->add_option("--j", bcthr_j, "Stage gap")->required();
    bcthr->add_option("--s", bcthr_s, "Stage word count")->required();
    add_common(bcthr, bcthr_out);
    bcthr->callback([&] {
        BoundReport r = report_cover_threshold(bcthr_eps, bcthr_ell, bcthr_j, bcthr_s);
        write_output(bcthr_out.output, bcthr_out.format == "csv"
                                           ? bound_csv(r)
                                           : bound_json(r).dump(2) + "\n");
    });

    auto* bdrop = bounds->add_subcommand("drop", "Single-word removal entropy drop");
    bdrop->set_help_flag("--help", "Print help");
    static std::string bdrop_h = "ln2";
    static int bdrop_n = 2, bdrop_k = 2;
    static CommonOut bdrop_out;
    bdrop->add_option("--h", bdrop_h, "Entropy (number, ln2 or ln3)")->required();
    bdrop->add_option("--n", bdrop_n, "Symbol count")->required();
    bdrop->add_option("--k", bdrop_k, "Removed word length")->required();
    add_common(bdrop, bdrop_out);
    bdrop->callback([&] {
        BoundReport r = report_entropy_drop(parse_h(bdrop_h), bdrop_n, bdrop_k);
        write_output(bdrop_out.output, bdrop_out.format == "csv"
                                           ? bound_csv(r)
                                           : bound_json(r).dump(2) + "\n");
    });

    auto* bcdrop = bounds->add_subcommand("cover-drop", "Cover-stage entropy drop bound");
    static long long bcdrop_s = 2;
    static int bcdrop_k = 2, bcdrop_a = 2;
    static CommonOut bcdrop_out;
    bcdrop->add_option("--s", bcdrop_s, "Admissible word count")->required();
    bcdrop->add_option("--k", bcdrop_k, "Word length")->required();
    bcdrop->add_option("--a", bcdrop_a, "Alphabet size")->required();
    add_common(bcdrop, bcdrop_out);
    bcdrop->callback([&] {
        BoundReport r = report_cover_drop(bcdrop_s, bcdrop_k, bcdrop_a);
        write_output(bcdrop_out.output, bcdrop_out.format == "csv"
                                            ? bound_csv(r)
                                            : bound_json(r).dump(2) + "\n");
    });

    // construct
    auto* construct = app.add_subcommand("construct", "Mechanical words and stage oracles");
    construct->require_subcommand(1);

    auto* csturm = construct->add_subcommand("sturmian", "Mechanical word letters");
    static long long cs_from = 1, cs_to = 40;
    static CommonOut cs_out;
    csturm->add_option("--from", cs_from, "First index");
    csturm->add_option("--to", cs_to, "Last index");
    add_common(csturm, cs_out);
    csturm->callback([&] {
        Word w = sturmian_letters(SturmianParams::defaults(), cs_from, cs_to);
        std::string text = format_word(Alphabet::binary(), w);
        if (cs_out.format == "csv") {
            write_output(cs_out.output, text + "\n");
        } else {
            json j;
            j["schema"] = 1;
            j["kind"] = "sturmian";
            j["from"] = cs_from;
            j["to"] = cs_to;
            j["letters"] = text;
            write_output(cs_out.output, j.dump(2) + "\n");
        }
    });

    auto* ctype1 = construct->add_subcommand("type1", "111 y(1..4n) 111");
    static int ct_n = 1;
    static CommonOut ct_out;
    ctype1->add_option("--n", ct_n, "Index")->required();
    add_common(ctype1, ct_out);
    ctype1->callback([&] {
        Word w = type1_word(SturmianParams::defaults(), ct_n);
        write_output(ct_out.output, format_word(Alphabet::binary(), w) + "\n");
    });

    auto* cstage = construct->add_subcommand("stage", "Build a stage oracle ledger");
    static int cst_stage = 1, cst_mult = 100, cst_horizon = 24;
    static StageCaps cst_caps;
    static CommonOut cst_out;
    cstage->add_option("--stage", cst_stage, "Stage index")->required();
    cstage->add_option("--mult", cst_mult, "Repeat multiplier");
    cstage->add_option("--horizon", cst_horizon, "Oracle horizon");
    cstage->add_option("--type1-max-len", cst_caps.type1_max_len, "Type-1 length cap");
    cstage->add_option("--steps-11", cst_caps.steps_11, "11-rooted steps");
    cstage->add_option("--steps-00", cst_caps.steps_00, "00-rooted steps");
    cstage->add_option("--period-cap", cst_caps.period_cap, "Orbit period cap");
    cstage->add_option("--repeat-cap", cst_caps.repeat_cap, "Repeat search cap");
    add_common(cstage, cst_out);
    cstage->callback(
        [&] { cmd_construct_stage(cst_stage, cst_mult, cst_horizon, cst_caps, cst_out); });

    auto* creplay = construct->add_subcommand("replay", "Replay a stage ledger");
    static std::string cr_ledger;
    static CommonOut cr_out;
    creplay->add_option("--ledger", cr_ledger, "Ledger JSON file")->required();
    add_common(creplay, cr_out);
    creplay->callback([&] { cmd_construct_replay(cr_ledger, cr_out); });

    auto* cref = construct->add_subcommand("ref", "Reference forbidden sets");
    static std::string cref_name;
    static CommonOut cref_out;
    cref->add_option("--name", cref_name, "h1, h2 or h3")->required();
    add_common(cref, cref_out);
    cref->callback([&] {
        write_output(cref_out.output, serialize_forbidden(reference_sft(cref_name).forbidden));
    });

    // verify-blockmap
    auto* vbm = app.add_subcommand("verify-blockmap", "Check an automorphism pair");
    static std::string vbm_map, vbm_inv, vbm_oracle;
    static int vbm_depth = 8;
    static uint64_t vbm_seed = 12345;
    static CommonOut vbm_out;
    vbm->add_option("--map", vbm_map, "Forward block map file")->required();
    vbm->add_option("--inverse", vbm_inv, "Inverse block map file")->required();
    vbm->add_option("--oracle", vbm_oracle, "Oracle file")->required();
    vbm->add_option("--depth", vbm_depth, "Interior word length to check");
    vbm->add_option("--seed", vbm_seed, "Seed for the oracle spot check");
    add_common(vbm, vbm_out);
    vbm->callback(
        [&] { cmd_verify_blockmap(vbm_map, vbm_inv, vbm_oracle, vbm_depth, vbm_seed, vbm_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const VerdictFail& v) {
        std::cerr << "verdict: " << v.message << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
