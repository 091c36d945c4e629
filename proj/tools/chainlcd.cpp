#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "chainlcd/enumerate.hpp"
#include "chainlcd/lcd.hpp"
#include "chainlcd/lcp.hpp"
#include "chainlcd/metrics.hpp"

#ifndef CHAINLCD_DATA_DIR
#define CHAINLCD_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace chainlcd;

namespace {

constexpr int kSchema = 1;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

fs::path data_dir() {
    if (const char* env = std::getenv("CHAINLCD_DATA")) return env;
    return CHAINLCD_DATA_DIR;
}

// A path, a file name under data/examples, or a fixture key (`example33`, `appendixB6`).
fs::path resolve(const std::string& arg) {
    if (fs::exists(arg)) return arg;
    const fs::path ex = data_dir() / "examples";
    for (const fs::path& p : {ex / arg, ex / (arg + ".code")})
        if (fs::exists(p)) return p;
    if (arg.rfind("appendix", 0) == 0) {
        const fs::path p = data_dir() / "appendix" / (arg.substr(8) + ".txt");
        if (fs::exists(p)) return p;
    }
    throw InputError("no such code file or fixture: " + arg);
}

MixedCode load_code(const std::string& arg, MixedMatrix* matrix = nullptr) {
    MixedMatrix m = parse_code_file(resolve(arg).string());
    if (matrix) *matrix = m;
    return span_closure(m.shape, m.rows);
}

// `example61` -> (example61_C, example61_D).
std::pair<std::string, std::string> fixture_pair(const std::string& key) { return {key + "_C", key + "_D"}; }

json word_json(const MixedShape& sh, const MixedWord& w) { return render_word(sh, w); }

json matrix_json(const MixedMatrix& m) {
    json rows = json::array();
    for (const auto& r : m.rows) rows.push_back(render_word(m.shape, r));
    return rows;
}

json ring_matrix_json(const RingMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        std::string s;
        for (std::size_t j = 0; j < m.cols; ++j) s += (j ? " " : "") + m.ring->render(m.at(i, j));
        rows.push_back(s);
    }
    return rows;
}

json opt_json(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

json shape_json(const MixedShape& sh) {
    return {{"ring", sh.ring->name()}, {"s", sh.s}, {"a", sh.a}, {"b", sh.b}};
}

std::string big(const BigInt& x) { return x.str(); }

void indent_rows(std::ostream& os, const json& rows, const std::string& pad = "  ") {
    for (const auto& r : rows) os << pad << r.get<std::string>() << "\n";
}

struct Options {
    std::string ring = "Z4";
    int s = 1;
    std::vector<int> blocks;
    std::optional<int> h;
    std::string variant;
    std::uint64_t budget = kDefaultBudget;
    std::string out;
    int jobs = 0;
    bool json_stdout = false;
};

MixedShape shape_of(const Options& o) {
    if (o.blocks.size() != 2) throw InputError("--blocks takes two integers A B");
    return make_shape(o.ring, o.s, o.blocks[0], o.blocks[1]);
}

int jobs_of(const Options& o) {
    if (o.jobs > 0) return o.jobs;
    return std::max(1u, std::thread::hardware_concurrency());
}

// --h wins; otherwise the variant, defaulting to Euclidean.
int h_of(const Options& o, const MixedShape& sh) {
    if (o.h) {
        sh.ring->frobenius(0, *o.h);
        return *o.h;
    }
    return variant_h(sh, o.variant.empty() ? Variant::euclidean : parse_variant(o.variant));
}

struct Report {
    std::string command;
    json data;
    std::string text;
    std::string csv;
    int exit_code = 0;
};

void emit(const Options& o, Report& r) {
    r.data["schema"] = kSchema;
    r.data["command"] = r.command;
    const std::string js = r.data.dump(2) + "\n";
    std::cout << (o.json_stdout ? js : r.text);
    if (o.out.empty()) return;
    fs::create_directories(o.out);
    std::ofstream(fs::path(o.out) / (r.command + ".json")) << js;
    std::ofstream(fs::path(o.out) / (r.command + ".txt")) << r.text;
    if (!r.csv.empty()) std::ofstream(fs::path(o.out) / (r.command + ".csv")) << r.csv;
}

// ---------------------------------------------------------------- code commands

Report cmd_check(const Options& o, const std::string& file, const std::string& criterion) {
    const MixedCode c = load_code(file);
    const int h = h_of(o, c.shape);
    Report r{"check", {}, {}, {}, 0};
    std::ostringstream t;
    const CodeType type = code_type(c);
    r.data = {{"shape", shape_json(c.shape)}, {"h", h}, {"size", c.size()}, {"type", type.str()}};
    t << "shape " << c.shape.str() << ", h = " << h << ", |C| = " << c.size() << ", type " << type.str() << "\n";

    json verdicts = json::object();
    std::optional<bool> decided;
    const auto record = [&](const char* name, const LcdVerdict& v, bool applicable) {
        json j = {{"lcd", v.is_lcd}, {"reason", v.reason}};
        if (v.witness) j["witness"] = word_json(c.shape, *v.witness);
        if (!v.gram_valuations.empty()) j["gram_valuations"] = v.gram_valuations;
        if (v.residue_x) j["residue_x"] = *v.residue_x;
        if (v.residue_y) j["residue_y"] = *v.residue_y;
        if (std::string(name) == "bruteforce") j["intersection_size"] = v.intersection_size;
        j["applicable"] = applicable;
        verdicts[name] = j;
        t << "  " << name << ": " << (applicable ? (v.is_lcd ? "LCD" : "not LCD") : "not applicable");
        if (v.witness) t << ", witness " << render_word(c.shape, *v.witness);
        if (applicable && !v.reason.empty()) t << " (" << v.reason << ")";
        t << "\n";
        if (applicable && !decided) decided = v.is_lcd;
    };
    if (criterion == "all" || criterion == "bruteforce") record("bruteforce", is_lcd_bruteforce(c, h), true);
    if (criterion == "all" || criterion == "gram") {
        const auto v = is_lcd_gram(c, h);
        record("gram", v, v.weakly_free);
    }
    if (criterion == "all" || criterion == "residue") {
        const auto v = is_lcd_residue(c, h);
        record("residue", v, v.weakly_free);
    }
    // A non-weakly-free code is never LCD; brute force decides when it was skipped.
    if (!decided) decided = is_lcd_bruteforce(c, h).is_lcd;
    r.data["criteria"] = verdicts;
    r.data["lcd"] = *decided;
    t << "LCD: " << (*decided ? "true" : "false") << "\n";
    r.text = t.str();
    r.exit_code = *decided ? 0 : 1;
    return r;
}

Report cmd_dual(const Options& o, const std::string& file) {
    const MixedCode c = load_code(file);
    const int h = h_of(o, c.shape);
    const MixedCode d = dual_code(c, h);
    const StandardForm sf = standard_form(d);
    Report r{"dual", {}, {}, {}, 0};
    r.data = {{"shape", shape_json(c.shape)}, {"h", h},           {"size", c.size()},
              {"dual_size", d.size()},        {"dual_type", code_type(d).str()}, {"generator", matrix_json(sf.generator)}};
    std::ostringstream t;
    t << "|C| = " << c.size() << ", |C^perp_" << h << "| = " << d.size() << ", |M| = " << c.shape.module_size()
      << "\n";
    t << "dual type " << code_type(d).str() << "\n" << render_code_text(sf.generator);
    r.text = t.str();
    return r;
}

Report cmd_distance(const Options&, const std::string& file) {
    const MixedCode c = load_code(file);
    const WeightProfile p = code_distances(c);
    Report r{"distance", {}, {}, {}, 0};
    r.data = {{"shape", shape_json(c.shape)},
              {"size", c.size()},
              {"min_lee", opt_json(p.min_lee)},
              {"min_hamming", opt_json(p.min_hamming)},
              {"hamming_enumerator", p.hamming_enumerator},
              {"lee_distribution", p.lee_distribution}};
    std::ostringstream t;
    t << "|C| = " << c.size() << "\n";
    t << "Hamming distance: " << (p.min_hamming ? std::to_string(*p.min_hamming) : "-") << "\n";
    t << "Lee distance: " << (p.min_lee ? std::to_string(*p.min_lee) : "-") << "\n";
    t << "Hamming enumerator:";
    for (auto x : p.hamming_enumerator) t << " " << x;
    t << "\n";
    r.text = t.str();
    std::ostringstream csv;
    csv << "weight,hamming_count\n";
    for (std::size_t i = 0; i < p.hamming_enumerator.size(); ++i) csv << i << "," << p.hamming_enumerator[i] << "\n";
    r.csv = csv.str();
    return r;
}

// ---------------------------------------------------------------- census commands

Report cmd_counts(const Options& o, bool no_bruteforce, bool classify) {
    const MixedShape sh = shape_of(o);
    const Variant v = o.variant.empty() ? Variant::euclidean : parse_variant(o.variant);
    const CountReport cr = count_report(sh, v, !no_bruteforce, classify, o.budget, jobs_of(o));
    Report r{"counts", {}, {}, {}, 0};
    json rows = json::array();
    std::ostringstream t, csv;
    t << "shape " << sh.str() << ", " << to_string(v) << "\n";
    std::size_t width = 7;
    for (const auto& row : cr.rows) width = std::max(width, big(row.formula).size());
    const auto cell = [](const std::string& x, std::size_t w) { return std::string(w - std::min(w, x.size()), ' ') + x; };
    t << "  k0  l0  " << cell("formula", width) << "  bruteforce\n";
    csv << "k0,l0,formula,bruteforce\n";
    for (const auto& row : cr.rows) {
        rows.push_back({{"k0", row.k0},
                        {"l0", row.l0},
                        {"formula", big(row.formula)},
                        {"bruteforce", row.bruteforce ? json(*row.bruteforce) : json(nullptr)}});
        t << "  " << cell(std::to_string(row.k0), 2) << "  " << cell(std::to_string(row.l0), 2) << "  "
          << cell(big(row.formula), width) << "  "
          << cell(row.bruteforce ? std::to_string(*row.bruteforce) : "-", 10) << "\n";
        csv << row.k0 << "," << row.l0 << "," << big(row.formula) << ","
            << (row.bruteforce ? std::to_string(*row.bruteforce) : "") << "\n";
    }
    const auto opt64 = [](const std::optional<std::uint64_t>& x) { return x ? json(*x) : json(nullptr); };
    r.data = {{"shape", shape_json(sh)},
              {"variant", to_string(v)},
              {"rows", rows},
              {"formula_nonzero", big(cr.formula_nonzero)},
              {"bruteforce_nonzero", opt64(cr.bruteforce_nonzero)},
              {"bruteforce_classes", opt64(cr.bruteforce_classes)},
              {"mismatches", cr.mismatches}};
    if (cr.table)
        r.data["reference"] = {{"nonzero", cr.table->nonzero}, {"classes", cr.table->classes}};
    else
        r.data["reference"] = nullptr;
    t << "non-zero: formula " << big(cr.formula_nonzero) << ", brute force "
      << (cr.bruteforce_nonzero ? std::to_string(*cr.bruteforce_nonzero) : "-") << ", reference "
      << (cr.table ? std::to_string(cr.table->nonzero) : "-") << "\n";
    if (classify)
        t << "classes: brute force " << (cr.bruteforce_classes ? std::to_string(*cr.bruteforce_classes) : "-")
          << ", reference " << (cr.table ? std::to_string(cr.table->classes) : "-") << "\n";
    t << "mismatches: " << cr.mismatches.size() << "\n";
    for (const auto& m : cr.mismatches) t << "  " << m << "\n";
    r.text = t.str();
    r.csv = csv.str();
    return r;
}

Report cmd_enumerate(const Options& o) {
    const MixedShape sh = shape_of(o);
    const int h = h_of(o, sh);
    const auto codes = enumerate_lcd(sh, h, o.budget, jobs_of(o));
    Report r{"enumerate", {}, {}, {}, 0};
    json list = json::array();
    std::ostringstream t;
    t << "shape " << sh.str() << ", h = " << h << ": " << codes.size() << " LCD codes (including zero)\n";
    for (const auto& c : codes) {
        const MixedMatrix g = standard_form(c).generator;
        list.push_back({{"size", c.size()}, {"type", code_type(c).str()}, {"generator", matrix_json(g)}});
        t << "[" << code_type(c).str() << ", |C| = " << c.size() << "]\n";
        indent_rows(t, list.back()["generator"]);
    }
    r.data = {{"shape", shape_json(sh)}, {"h", h}, {"count", codes.size()}, {"codes", list}};
    r.text = t.str();
    return r;
}

Report cmd_classify(const Options& o) {
    const MixedShape sh = shape_of(o);
    const int h = h_of(o, sh);
    std::vector<MixedCode> codes;
    for (auto& c : enumerate_lcd(sh, h, o.budget, jobs_of(o)))
        if (c.size() > 1) codes.push_back(std::move(c));
    const ClassificationResult cr = classify_monomial(codes);
    Report r{"classify", {}, {}, {}, 0};
    json classes = json::array();
    std::ostringstream t, csv;
    t << "shape " << sh.str() << ", h = " << h << ": " << codes.size() << " non-zero LCD codes in "
      << cr.classes.size() << " classes\n";
    csv << "class,type,orbit_size,lee,hamming\n";
    for (std::size_t i = 0; i < cr.classes.size(); ++i) {
        const ClassInfo& ci = cr.classes[i];
        classes.push_back({{"type", ci.type.str()},
                           {"orbit_size", ci.orbit_size},
                           {"lee", opt_json(ci.lee_distance)},
                           {"hamming", opt_json(ci.hamming_distance)},
                           {"generator", matrix_json(ci.generator)}});
        t << "class " << i + 1 << ": type " << ci.type.str() << ", orbit " << ci.orbit_size << ", Lee "
          << (ci.lee_distance ? std::to_string(*ci.lee_distance) : "-") << ", Hamming "
          << (ci.hamming_distance ? std::to_string(*ci.hamming_distance) : "-") << "\n";
        indent_rows(t, classes.back()["generator"]);
        csv << i + 1 << "," << ci.type.str() << "," << ci.orbit_size << ","
            << (ci.lee_distance ? std::to_string(*ci.lee_distance) : "") << ","
            << (ci.hamming_distance ? std::to_string(*ci.hamming_distance) : "") << "\n";
    }
    r.data = {{"shape", shape_json(sh)},
              {"h", h},
              {"nonzero", codes.size()},
              {"class_count", cr.classes.size()},
              {"closure_violations", cr.closure_violations},
              {"classes", classes}};
    r.text = t.str();
    r.csv = csv.str();
    return r;
}

Report cmd_verify_appendix(const Options& o, const std::string& arg, bool complete) {
    const AppendixFile f = parse_appendix_file(resolve(arg).string());
    const AppendixReport ar = verify_appendix(f, complete, o.budget, jobs_of(o));
    Report r{"verify-appendix", {}, {}, {}, 0};
    json entries = json::array();
    std::ostringstream t;
    t << "shape " << f.shape.str() << ", h = " << f.h << ", " << f.entries.size() << " entries\n";
    for (std::size_t i = 0; i < ar.entries.size(); ++i) {
        const EntryVerdict& e = ar.entries[i];
        json j = {{"line", e.line},         {"lcd", e.lcd},     {"lee", opt_json(e.lee)},
                  {"claimed_lee", opt_json(f.entries[i].claimed_lee)}, {"lee_ok", e.lee_ok},
                  {"inequivalent", e.inequivalent}};
        if (!e.parse_error.empty()) j["parse_error"] = e.parse_error;
        if (e.equivalent_to) j["equivalent_to_line"] = ar.entries[*e.equivalent_to].line;
        if (e.complete) j["complete"] = *e.complete;
        entries.push_back(j);
        const bool ok = e.parse_error.empty() && e.lcd && e.lee_ok && e.inequivalent;
        if (ok) continue;
        std::vector<std::string> why;
        if (!e.parse_error.empty()) why.push_back(e.parse_error);
        else {
            if (!e.lcd) why.push_back("not LCD");
            if (!e.lee_ok)
                why.push_back("Lee distance " + (e.lee ? std::to_string(*e.lee) : std::string("-")) + ", listed " +
                              (f.entries[i].claimed_lee ? std::to_string(*f.entries[i].claimed_lee) : "-"));
            if (e.equivalent_to)
                why.push_back("equivalent to the entry at line " + std::to_string(ar.entries[*e.equivalent_to].line));
        }
        t << "  line " << e.line << ": ";
        for (std::size_t k = 0; k < why.size(); ++k) t << (k ? "; " : "") << why[k];
        t << "\n";
    }
    for (const auto& e : ar.errors) t << "  " << e << "\n";
    r.data = {{"shape", shape_json(f.shape)}, {"h", f.h}, {"entries", entries}, {"errors", ar.errors},
              {"all_pass", ar.all_pass()}};
    if (ar.completeness_checked) {
        r.data["census_classes"] = ar.census_classes;
        r.data["missing_classes"] = ar.missing_classes;
        t << "completeness: " << ar.census_classes << " census classes, " << ar.missing_classes << " missing\n";
    }
    t << "verdict: " << (ar.all_pass() ? "PASS" : "FAIL") << "\n";
    r.text = t.str();
    r.exit_code = ar.all_pass() ? 0 : 1;
    return r;
}

// ---------------------------------------------------------------- LCP commands

std::pair<MixedMatrix, MixedMatrix> load_pair(const std::string& builtin, const std::vector<std::string>& files) {
    std::string cf, df;
    if (!builtin.empty()) {
        std::tie(cf, df) = fixture_pair(builtin);
    } else if (files.size() == 2) {
        cf = files[0];
        df = files[1];
    } else {
        throw InputError("give two code files C D or --builtin KEY");
    }
    MixedMatrix g, h;
    load_code(cf, &g);
    load_code(df, &h);
    return {g, h};
}

json threshold_json(const ThresholdReport& t) {
    return {{"d_c", opt_json(t.d_c)},           {"d_dx_perp", opt_json(t.d_dx_perp)},
            {"d_dy_perp", opt_json(t.d_dy_perp)}, {"d_cx", opt_json(t.d_cx)},
            {"d_cy", opt_json(t.d_cy)},           {"d_c_emb", opt_json(t.d_c_emb)},
            {"d_d_emb_perp", opt_json(t.d_d_emb_perp)}, {"threshold", t.threshold}};
}

std::string opt_str(const std::optional<int>& v) { return v ? std::to_string(*v) : "-"; }

void describe_thresholds(const MaskingScheme& s, json& data, std::ostream& t) {
    const auto g = security_threshold(s, ThresholdVariant::general);
    const auto sep = security_threshold(s, ThresholdVariant::separable);
    // The embedded code lives in R^(a+b), which may be too large to index.
    std::optional<ThresholdReport> emb;
    try {
        emb = security_threshold(s, ThresholdVariant::embedded);
    } catch (const std::length_error&) {
    }
    data["thresholds"] = {{"general", threshold_json(g)}, {"separable", threshold_json(sep)},
                          {"embedded", emb ? threshold_json(*emb) : json(nullptr)}};
    t << "d(C) = " << opt_str(g.d_c) << ", d(DX^perp) = " << opt_str(g.d_dx_perp)
      << ", d(DY^perp) = " << opt_str(g.d_dy_perp) << "\n";
    t << "threshold (general): " << g.threshold << "\n";
    t << "threshold (separable): " << sep.threshold << "  [d(CX) = " << opt_str(sep.d_cx)
      << ", d(CY) = " << opt_str(sep.d_cy) << "]\n";
    if (emb)
        t << "threshold (embedded): " << emb->threshold << "  [d(C_emb) = " << opt_str(emb->d_c_emb)
          << ", d(D_emb^perp) = " << opt_str(emb->d_d_emb_perp) << "]\n";
    else
        t << "threshold (embedded): not computed, R^" << s.shape.n() << " is too large\n";
}

Report cmd_lcp(const std::string& builtin, const std::vector<std::string>& files) {
    auto [g, h] = load_pair(builtin, files);
    const MixedCode c = span_closure(g.shape, g.rows), d = span_closure(h.shape, h.rows);
    Report r{"lcp", {}, {}, {}, 0};
    std::ostringstream t;
    t << "shape " << c.shape.str() << ", |C| = " << c.size() << ", |D| = " << d.size() << "\n";
    json verdicts = json::object();
    bool lcp = false;
    for (auto [crit, name] : {std::pair{LcpCriterion::direct, "direct"}, std::pair{LcpCriterion::gram, "gram"},
                              std::pair{LcpCriterion::residue, "residue"}}) {
        const LcpVerdict v = is_lcp(c, d, crit);
        json j = {{"lcp", v.is_lcp}, {"reason", v.reason}};
        if (v.witness) j["witness"] = word_json(c.shape, *v.witness);
        if (!v.gram_valuations.empty()) j["gram_valuations"] = v.gram_valuations;
        verdicts[name] = j;
        t << "  " << name << ": " << (v.is_lcp ? "LCP" : "not LCP");
        if (!v.reason.empty()) t << " (" << v.reason << ")";
        t << "\n";
        if (crit == LcpCriterion::direct) lcp = v.is_lcp;
    }
    r.data = {{"shape", shape_json(c.shape)}, {"criteria", verdicts}, {"lcp", lcp}};
    if (lcp) {
        const MaskingScheme s = build_scheme(g, h);
        describe_thresholds(s, r.data, t);
    }
    t << "LCP: " << (lcp ? "true" : "false") << "\n";
    r.text = t.str();
    r.exit_code = lcp ? 0 : 1;
    return r;
}

MixedWord random_word(std::mt19937_64& rng, const MixedShape& sh, int k, int len) {
    MixedWord w(len);
    for (int i = 0; i < len; ++i) {
        const elem bound = i < k ? sh.ring->size() : sh.ring->quotient_size(sh.s);
        w[i] = static_cast<elem>(rng() % bound);
    }
    return w;
}

RingMatrix random_matrix(std::mt19937_64& rng, const Ring& ring, std::size_t n, elem bound) {
    RingMatrix m(ring, n, n);
    for (auto& x : m.data) x = static_cast<elem>(rng() % bound);
    return m;
}

Report cmd_dsm_demo(const std::string& builtin, const std::vector<std::string>& files, std::uint64_t seed) {
    auto [g, h] = load_pair(builtin, files);
    const MaskingScheme s = build_scheme(g, h);
    const MixedShape& sh = s.shape;
    const Ring& ring = *sh.ring;
    Report r{"dsm-demo", {}, {}, {}, 0};
    std::ostringstream t;
    r.data = {{"shape", shape_json(sh)}, {"seed", seed}, {"k0", s.k0}, {"l0", s.l0},
              {"G", matrix_json(s.G)}, {"H", matrix_json(s.H)}, {"Ghat", matrix_json(s.Ghat)},
              {"Hhat", matrix_json(s.Hhat)}, {"P1", ring_matrix_json(s.P1)}, {"P2", ring_matrix_json(s.P2)}};
    t << "scheme over " << sh.str() << ", C of type {" << s.k0 << ";" << s.l0 << "}\n";
    t << "P1:\n" << render(s.P1) << "\n";
    describe_thresholds(s, r.data, t);

    std::mt19937_64 rng(seed);
    const int xl = s.k0 + s.l0, yl = static_cast<int>(s.H.rows.size()), mk = sh.a - s.k0;
    const MixedWord x = random_word(rng, sh, s.k0, xl), y = random_word(rng, sh, mk, yl);
    const MixedWord z = dsm_encode(s, x, y);
    const Decomposition dec = dsm_recover(s, z);
    bool ok = dec.x == x && dec.y == y;
    t << "encode: z = " << render_word(sh, z) << "\n";
    t << "recover: x " << (dec.x == x ? "ok" : "MISMATCH") << ", y " << (dec.y == y ? "ok" : "MISMATCH") << "\n";

    const MixedWord f = random_word(rng, sh, s.k0, xl);
    const Decomposition ka = dsm_recover(s, masked_key_add(s, z, f));
    MixedWord want_ka(xl);
    for (int i = 0; i < xl; ++i)
        want_ka[i] = i < s.k0 ? ring.add(x[i], f[i]) : ring.reduce(ring.add(x[i], f[i]), sh.s);
    const bool ka_ok = ka.x == want_ka && ka.y == y;

    const RingMatrix l1 = random_matrix(rng, ring, s.k0, ring.size());
    const RingMatrix l2 = random_matrix(rng, ring, s.l0, ring.quotient_size(sh.s));
    const Decomposition lin = dsm_recover(s, masked_linear(s, z, l1, l2));
    MixedWord want_lin(xl, 0);
    for (int j = 0; j < s.k0; ++j)
        for (int i = 0; i < s.k0; ++i) want_lin[j] = ring.add(want_lin[j], ring.mul(x[i], l1.at(i, j)));
    for (int j = 0; j < s.l0; ++j) {
        elem acc = 0;
        for (int i = 0; i < s.l0; ++i) acc = ring.add(acc, ring.mul(x[s.k0 + i], l2.at(i, j)));
        want_lin[s.k0 + j] = ring.reduce(acc, sh.s);
    }
    const bool lin_ok = lin.x == want_lin && lin.y == y;

    const auto [s1, s2] = demo_sboxes(sh);
    const Decomposition nl = dsm_recover(s, masked_nonlinear(s, z, s1, s2));
    MixedWord want_nl = x;
    for (int i = 0; i < xl; ++i) want_nl[i] = i < s.k0 ? s1[x[i]] : s2[x[i]];
    const bool nl_ok = nl.x == want_nl && nl.y == y;
    t << "masked key addition: " << (ka_ok ? "ok" : "MISMATCH") << "\n";
    t << "masked linear layer: " << (lin_ok ? "ok" : "MISMATCH") << "\n";
    t << "masked cubing: " << (nl_ok ? "ok" : "MISMATCH") << "\n";
    ok = ok && ka_ok && lin_ok && nl_ok;

    // Every fault of Hamming weight 1 and 2 (weight 2 only for short codes).
    std::map<std::string, std::uint64_t> outcomes;
    std::optional<int> min_corrupting;
    Space sp(sh);
    const int n = sh.n();
    const auto try_fault = [&](const MixedWord& eps) {
        const FiaOutcome out = fia_detect(s, z, eps);
        ++outcomes[to_string(out)];
        if (out == FiaOutcome::undetected_corrupting) {
            const int w = hamming_weight(eps);
            if (!min_corrupting || w < *min_corrupting) min_corrupting = w;
        }
    };
    for (int i = 0; i < n; ++i)
        for (elem v = 1; v < sh.alphabet(i); ++v) {
            MixedWord eps(n, 0);
            eps[i] = v;
            try_fault(eps);
        }
    if (n <= 12)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (elem v = 1; v < sh.alphabet(i); ++v)
                    for (elem u = 1; u < sh.alphabet(j); ++u) {
                        MixedWord eps(n, 0);
                        eps[i] = v;
                        eps[j] = u;
                        try_fault(eps);
                    }
    t << "faults:";
    for (const auto& [k, v] : outcomes) t << " " << k << " " << v;
    t << "\n";

    const auto th = security_threshold(s, ThresholdVariant::general);
    std::vector<int> t1, t2;
    for (int i = 0; i < std::min(sh.a, th.d_dx_perp ? *th.d_dx_perp - 1 : sh.a); ++i) t1.push_back(i);
    for (int i = 0; i < std::min(sh.b, th.d_dy_perp ? *th.d_dy_perp - 1 : sh.b); ++i) t2.push_back(i);
    const ScaReport sca = sca_leakage_check(s, t1, t2, x);
    t << "probing " << t1.size() << "+" << t2.size() << " coordinates: safe " << (sca.safe ? "yes" : "no")
      << ", spans " << (sca.spans ? "yes" : "no") << ", uniform "
      << (sca.uniform ? (*sca.uniform ? "yes" : "no") : "not computed") << "\n";

    r.data["x"] = x;
    r.data["y"] = y;
    r.data["z"] = word_json(sh, z);
    r.data["recovered"] = dec.x == x && dec.y == y;
    r.data["masked_ops"] = {{"key_add", ka_ok}, {"linear", lin_ok}, {"nonlinear", nl_ok}};
    r.data["faults"] = outcomes;
    r.data["min_undetected_corrupting_weight"] = opt_json(min_corrupting);
    r.data["sca"] = {{"t1", t1}, {"t2", t2}, {"safe", sca.safe}, {"spans", sca.spans},
                     {"uniform", sca.uniform ? json(*sca.uniform) : json(nullptr)}, {"masks", sca.masks}};
    r.text = t.str();
    r.exit_code = ok ? 0 : 1;
    return r;
}

Report cmd_adder_demo(const std::string& builtin, const std::vector<std::string>& files, const std::string& zarg) {
    auto [g, h] = load_pair(builtin, files);
    const MaskingScheme s = build_scheme(g, h);
    const MixedShape& sh = s.shape;
    MixedWord z;
    if (!zarg.empty()) {
        z = parse_row(sh, zarg, 1);
    } else {
        // Default received word: sum of the first rows of G and H.
        Space sp(sh);
        z = sp.add(s.G.rows.empty() ? MixedWord(sh.n(), 0) : s.G.rows[0],
                   s.H.rows.empty() ? MixedWord(sh.n(), 0) : s.H.rows[0]);
        if (builtin == "example62") z = parse_row(sh, "w w3+u w3 | 1 0 w", 1);
    }
    Report r{"adder-demo", {}, {}, {}, 0};
    std::ostringstream t;
    const MixedWord p = psi1(s, z);
    const Decomposition dec = dsm_recover(s, z);
    const AdderResult ar = adder_recover(s, z);
    const bool in_c = s.C.contains(ar.c), in_d = s.D.contains(ar.d);
    t << "received z = " << render_word(sh, z) << "\n";
    t << "P1:\n" << render(s.P1) << "\n";
    t << "z diamond Hhat^T P1 =";
    for (elem v : p) t << " " << sh.ring->render(v);
    t << "\ninformation x =";
    for (std::size_t i = 0; i < dec.x.size(); ++i) t << " " << sh.ring->render(dec.x[i]);
    t << "\n";
    t << "c = " << render_word(sh, ar.c) << (in_c ? "" : "  (not in C)") << "\n";
    t << "d = " << render_word(sh, ar.d) << (in_d ? "" : "  (not in D)") << "\n";
    json px = json::array();
    for (elem v : p) px.push_back(sh.ring->render(v));
    r.data = {{"shape", shape_json(sh)}, {"z", word_json(sh, z)}, {"P1", ring_matrix_json(s.P1)},
              {"psi1", px},              {"c", word_json(sh, ar.c)}, {"d", word_json(sh, ar.d)},
              {"c_in_C", in_c},          {"d_in_D", in_d}};
    r.text = t.str();
    r.exit_code = in_c && in_d ? 0 : 1;
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear codes over mixed chain-ring alphabets: LCD and LCP tools"};
    app.require_subcommand(1);
    Options o;
    const auto common = [&](CLI::App* sc, bool shape) {
        sc->set_help_flag("--help", "print this help");
        if (shape) {
            sc->add_option("--ring", o.ring, "Z4, Z8, Z9, Z27, F4u2, F8u2 or F9u2");
            sc->add_option("--s", o.s, "second-block level s");
            sc->add_option("--blocks", o.blocks, "block lengths A B")->expected(2);
        }
        sc->add_option("--h", o.h, "Galois inner product index");
        sc->add_option("--variant", o.variant, "euclidean or hermitian");
        sc->add_option("--budget", o.budget, "largest |M| to enumerate");
        sc->add_option("--out", o.out, "directory for JSON/text/CSV reports");
        sc->add_option("--jobs", o.jobs, "worker threads (default: all cores)");
        sc->add_flag("--json", o.json_stdout, "print the JSON report");
    };

    std::string file, criterion = "all", builtin, zarg;
    std::vector<std::string> files;
    bool no_bf = false, classify = false, complete = false;
    std::uint64_t seed = 1;

    auto* check = app.add_subcommand("check", "decide whether a code is LCD");
    check->add_option("code", file, "code file or fixture key")->required();
    check->add_option("--criterion", criterion, "all, bruteforce, gram or residue")
        ->check(CLI::IsMember({"all", "bruteforce", "gram", "residue"}));
    common(check, false);
    auto* dual = app.add_subcommand("dual", "dual code");
    dual->add_option("code", file)->required();
    common(dual, false);
    auto* dist = app.add_subcommand("distance", "Hamming and Lee distances");
    dist->add_option("code", file)->required();
    common(dist, false);
    auto* counts = app.add_subcommand("counts", "LCD counts: formula, brute force, reference");
    counts->add_flag("--no-bruteforce", no_bf, "formula only");
    counts->add_flag("--classify", classify, "also count monomial classes");
    common(counts, true);
    auto* enumerate = app.add_subcommand("enumerate", "list all LCD codes of a shape");
    common(enumerate, true);
    auto* cls = app.add_subcommand("classify", "monomial classes of LCD codes");
    common(cls, true);
    auto* va = app.add_subcommand("verify-appendix", "check a published generator list");
    va->add_option("list", file, "list file or key (appendixA1 .. appendixC4)")->required();
    va->add_flag("--complete", complete, "also check completeness against the census");
    common(va, false);
    auto* lcp = app.add_subcommand("lcp", "decide whether (C, D) is an LCP");
    lcp->add_option("codes", files, "code files C D");
    lcp->add_option("--builtin", builtin, "fixture pair (example61, example62)");
    common(lcp, false);
    auto* dsm = app.add_subcommand("dsm-demo", "direct sum masking walk-through");
    dsm->add_option("codes", files, "code files C D");
    dsm->add_option("--builtin", builtin, "fixture pair (example61, example62)");
    dsm->add_option("--seed", seed, "RNG seed");
    common(dsm, false);
    auto* adder = app.add_subcommand("adder-demo", "two-user adder channel decoding");
    adder->add_option("codes", files, "code files C D");
    adder->add_option("--builtin", builtin, "fixture pair (example61, example62)");
    adder->add_option("--z", zarg, "received word `x .. | y ..`");
    common(adder, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        Report r;
        if (*check) r = cmd_check(o, file, criterion);
        else if (*dual) r = cmd_dual(o, file);
        else if (*dist) r = cmd_distance(o, file);
        else if (*counts) r = cmd_counts(o, no_bf, classify);
        else if (*enumerate) r = cmd_enumerate(o);
        else if (*cls) r = cmd_classify(o);
        else if (*va) r = cmd_verify_appendix(o, file, complete);
        else if (*lcp) r = cmd_lcp(builtin, files);
        else if (*dsm) r = cmd_dsm_demo(builtin, files, seed);
        else r = cmd_adder_demo(builtin, files, zarg);
        emit(o, r);
        return r.exit_code;
    } catch (const ParseError& e) {
        std::cerr << "error: " << file << ": " << e.what() << "\n";
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << " (raise --budget)\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
}
