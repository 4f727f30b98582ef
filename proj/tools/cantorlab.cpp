// cantorlab: batch runner for the Cantor-set laboratory. Reads one JSON
// config, runs one subcommand, writes CSV (and optionally SVG) artifacts.
// All computation happens before any file is opened, so failed runs leave
// no partial artifacts; reruns of the same config are byte-identical.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "cantorlab/config.hpp"
#include "cantorlab/dimension.hpp"
#include "cantorlab/errors.hpp"
#include "cantorlab/limit_geometry.hpp"
#include "cantorlab/marstrand.hpp"
#include "cantorlab/report.hpp"
#include "cantorlab/scale_space.hpp"
#include "cantorlab/subcantor.hpp"
#include "cantorlab/sum_image.hpp"
#include "cantorlab/system.hpp"

using namespace cantorlab;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
    std::string config_path;
    std::string out_dir; // overrides the config "out" field
    bool svg = false;
    std::uint64_t budget_words = 0; // 0 keeps the library default
    int threads = 1;
    bool timings = false;
};

struct Artifact {
    std::string name; // file stem, e.g. "dim"
    CsvTable csv;
    std::string svg_title, svg_xlabel, svg_ylabel;
    std::vector<SvgSeries> svg_series;
    std::string extra_name; // optional non-CSV sidecar (extract's system)
    std::string extra_text;
};

EnumBudget make_budget(const Options& opt) {
    EnumBudget b;
    if (opt.budget_words > 0) b.max_words = opt.budget_words;
    return b;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::vector<std::pair<std::string, std::string>> base_meta(const ExperimentConfig& cfg,
                                                           const Options& opt,
                                                           const std::string& command) {
    std::vector<std::pair<std::string, std::string>> meta;
    meta.emplace_back("tool", "cantorlab");
    meta.emplace_back("version", kVersion);
    meta.emplace_back("command", command);
    meta.emplace_back("config_hash", hex64(cfg.hash));
    meta.emplace_back("budget_max_words", std::to_string(make_budget(opt).max_words));
    meta.emplace_back("threads", std::to_string(opt.threads));
    return meta;
}

const Json& command_section(const ExperimentConfig& cfg, const std::string& command) {
    if (!cfg.root.contains(command))
        throw ConfigError("config has no '" + command + "' section");
    const Json& j = cfg.root.at(command);
    if (!j.is_object()) throw ConfigError("'" + command + "' section must be an object");
    return j;
}

std::string system_name_field(const Json& sec, const std::string& field,
                              const std::string& where) {
    const std::string name = config_string_or(sec, field, "", where);
    if (name.empty()) throw ConfigError(where + ": missing field '" + field + "'");
    return name;
}

std::vector<int> int_list(const Json& obj, const std::string& field, const std::string& where) {
    if (!obj.contains(field)) throw ConfigError(where + ": missing field '" + field + "'");
    const Json& j = obj.at(field);
    if (!j.is_array() || j.empty())
        throw ConfigError(where + "." + field + ": expected a nonempty integer array");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer())
            throw ConfigError(where + "." + field + ": entries must be integers");
        out.push_back(v.get<int>());
    }
    return out;
}

Word word_field(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw ConfigError(where + ": expected a nonempty symbol array");
    Word w;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ConfigError(where + ": symbols must be integers");
        w.push_back(v.get<Sym>());
    }
    return w;
}

Word required_word(const Json& sec, const std::string& field, const std::string& where) {
    if (!sec.contains(field)) throw ConfigError(where + ": missing field '" + field + "'");
    return word_field(sec.at(field), where + "." + field);
}

// Tails given in configs are the periodic part of the recent past; left-pad
// cyclically until the word carries enough symbols for the deepest audit.
Word pad_tail(const Word& tail, std::size_t min_len) {
    if (tail.size() >= min_len) return tail;
    Word out;
    while (out.size() < min_len + tail.size()) out.insert(out.end(), tail.begin(), tail.end());
    return Word(out.end() - static_cast<std::ptrdiff_t>(min_len), out.end());
}

AffineMap embed_field(const Json& sec, const std::string& field, const std::string& where) {
    if (!sec.contains(field)) return AffineMap{};
    const Json& j = sec.at(field);
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(where + "." + field + ": expected [slope, offset]");
    AffineMap m{j[0].get<double>(), j[1].get<double>()};
    if (m.slope == 0.0) throw ConfigError(where + "." + field + ": slope must be nonzero");
    return m;
}

// s-grid: explicit array, or {"j_r": R, "points": n} for n points spread
// over [-R, -1/R] and [1/R, R] (negative side first, each side linspaced).
std::vector<double> s_grid_field(const Json& obj, const std::string& where) {
    if (!obj.contains("s_grid")) throw ConfigError(where + ": missing field 's_grid'");
    const Json& j = obj.at("s_grid");
    if (j.is_array()) {
        std::vector<double> grid;
        for (const auto& v : j) {
            if (!v.is_number()) throw ConfigError(where + ".s_grid: entries must be numbers");
            grid.push_back(v.get<double>());
        }
        if (grid.empty()) throw ConfigError(where + ".s_grid: empty grid");
        return grid;
    }
    if (j.is_object()) {
        const double R = config_number(j, "j_r", where + ".s_grid");
        const int n = static_cast<int>(config_number(j, "points", where + ".s_grid"));
        if (!(R > 1.0)) throw ConfigError(where + ".s_grid.j_r: need R > 1");
        if (n < 2) throw ConfigError(where + ".s_grid.points: need at least 2");
        const int pos = (n + 1) / 2;
        const int neg = n - pos;
        std::vector<double> grid;
        for (int i = 0; i < neg; ++i)
            grid.push_back(-R + (neg == 1 ? 0.0 : (R - 1.0 / R) * i / (neg - 1)));
        for (int i = 0; i < pos; ++i)
            grid.push_back(1.0 / R + (pos == 1 ? 0.0 : (R - 1.0 / R) * i / (pos - 1)));
        return grid;
    }
    throw ConfigError(where + ".s_grid: expected an array or {j_r, points}");
}

double slope_fit(const std::vector<std::pair<double, double>>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(pts.size());
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Certified d + d' from the pressure brackets (midpoints) of both factors.
double certified_dim_sum(const CantorSystem& sys, const CantorSystem& sys_p, int depth,
                         const EnumBudget& budget) {
    const auto a = pressure_dimension(sys, depth, budget);
    const auto b = pressure_dimension(sys_p, depth, budget);
    return 0.5 * (a.d_lower + a.d_upper) + 0.5 * (b.d_lower + b.d_upper);
}

// ---- dim ----------------------------------------------------------------

Artifact run_dim(const ExperimentConfig& cfg, const Options& opt) {
    const Json& sec = command_section(cfg, "dim");
    const auto& sys = cfg.system(system_name_field(sec, "system", "dim"));
    const auto depths = int_list(sec, "depths", "dim");
    const EnumBudget budget = make_budget(opt);

    Artifact art;
    art.name = "dim";
    art.csv.meta = base_meta(cfg, opt, "dim");
    art.csv.meta.emplace_back("system", sys.name());
    art.csv.columns = {"depth", "d_lower", "d_upper", "width"};
    SvgSeries lo{"d_lower", {}}, hi{"d_upper", {}};
    for (int depth : depths) {
        try {
            const auto br = pressure_dimension(sys, depth, budget);
            art.csv.rows.push_back({std::to_string(br.depth), format_sig12(br.d_lower),
                                    format_sig12(br.d_upper),
                                    format_sig12(br.d_upper - br.d_lower)});
            lo.points.emplace_back(depth, br.d_lower);
            hi.points.emplace_back(depth, br.d_upper);
        } catch (const BudgetExceeded& e) {
            art.csv.meta.emplace_back("truncated", e.what());
            break;
        }
    }
    art.svg_title = "dimension bracket: " + sys.name();
    art.svg_xlabel = "depth";
    art.svg_ylabel = "dimension";
    art.svg_series = {lo, hi};
    return art;
}

// ---- limitgeom ----------------------------------------------------------

std::vector<Artifact> run_limitgeom(const ExperimentConfig& cfg, const Options& opt) {
    const Json& sec = command_section(cfg, "limitgeom");
    const auto& sys = cfg.system(system_name_field(sec, "system", "limitgeom"));
    const auto depths = int_list(sec, "depths", "limitgeom");

    std::size_t need = 1;
    for (int d : depths) need = std::max(need, static_cast<std::size_t>(d) + 1);
    if (sec.contains("tail2"))
        need = std::max(need, static_cast<std::size_t>(
                                  config_number_or(sec, "hprime_depth", 12, "limitgeom")) +
                                  1);
    if (sec.contains("relation_steps"))
        need = std::max(need,
                        static_cast<std::size_t>(config_number(sec, "relation_steps", "limitgeom") +
                                                 config_number_or(sec, "relation_depth", 10,
                                                                  "limitgeom")) +
                            1);
    const TailWord tail{pad_tail(required_word(sec, "tail", "limitgeom"), need)};

    std::vector<Artifact> arts;

    {
        Artifact art;
        art.name = "limitgeom_convergence";
        art.csv.meta = base_meta(cfg, opt, "limitgeom");
        art.csv.meta.emplace_back("system", sys.name());
        art.csv.meta.emplace_back("tail", word_to_string(tail.symbols));
        art.csv.columns = {"depth", "residual", "ratio_to_prev"};
        SvgSeries series{"log10 residual", {}};
        double prev = 0.0;
        bool have_prev = false;
        for (int depth : depths) {
            const LimitGeometry lg(sys, tail, depth);
            std::vector<std::string> row = {std::to_string(depth), format_sig12(lg.residual())};
            row.push_back(have_prev && prev > 0.0 ? format_sig12(lg.residual() / prev) : "nan");
            art.csv.rows.push_back(std::move(row));
            series.points.emplace_back(depth, std::log10(std::max(lg.residual(), 1e-18)));
            prev = lg.residual();
            have_prev = true;
        }
        art.svg_title = "limit geometry convergence: " + sys.name();
        art.svg_xlabel = "depth";
        art.svg_ylabel = "log10 residual";
        art.svg_series = {series};
        arts.push_back(std::move(art));
    }

    if (sec.contains("tail2")) {
        const int depth = static_cast<int>(config_number_or(sec, "hprime_depth", 12, "limitgeom"));
        const TailWord tail2{pad_tail(word_field(sec.at("tail2"), "limitgeom.tail2"),
                                      static_cast<std::size_t>(depth) + 1)};
        const auto profile = h_prime_one_profile(sys, tail, tail2, depth);
        Artifact art;
        art.name = "limitgeom_hprime";
        art.csv.meta = base_meta(cfg, opt, "limitgeom");
        art.csv.meta.emplace_back("system", sys.name());
        art.csv.meta.emplace_back("tail", word_to_string(tail.symbols));
        art.csv.meta.emplace_back("tail2", word_to_string(tail2.symbols));
        art.csv.meta.emplace_back("hprime_depth", std::to_string(depth));
        art.csv.meta.emplace_back("max_abs", format_sig12(profile.max_abs));
        art.csv.columns = {"x", "log_derivative_ratio"};
        SvgSeries series{"tau''/tau'", {}};
        for (const auto& [x, v] : profile.values) {
            art.csv.rows.push_back({format_sig12(x), format_sig12(v)});
            series.points.emplace_back(x, v);
        }
        art.svg_title = "transfer log-derivative: " + sys.name();
        art.svg_xlabel = "x";
        art.svg_ylabel = "tau''/tau'";
        art.svg_series = {series};
        arts.push_back(std::move(art));
    }

    if (sec.contains("relation_steps")) {
        const int steps = static_cast<int>(config_number(sec, "relation_steps", "limitgeom"));
        const int depth = static_cast<int>(config_number_or(sec, "relation_depth", 10, "limitgeom"));
        const auto rep = check_affine_relation(sys, tail, steps, depth);
        Artifact art;
        art.name = "limitgeom_relation";
        art.csv.meta = base_meta(cfg, opt, "limitgeom");
        art.csv.meta.emplace_back("system", sys.name());
        art.csv.meta.emplace_back("tail", word_to_string(tail.symbols));
        art.csv.meta.emplace_back("relation_steps", std::to_string(steps));
        art.csv.meta.emplace_back("relation_depth", std::to_string(depth));
        art.csv.columns = {"max_residual", "primary_residual", "shifted_residual",
                           "within_truncation"};
        const bool ok = rep.max_residual <= rep.primary_residual + rep.shifted_residual;
        art.csv.rows.push_back({format_sig12(rep.max_residual),
                                format_sig12(rep.primary_residual),
                                format_sig12(rep.shifted_residual), ok ? "1" : "0"});
        art.svg_title = "affine relation audit: " + sys.name();
        art.svg_xlabel = "residual index (audit, primary, shifted)";
        art.svg_ylabel = "residual";
        art.svg_series = {{"residuals",
                           {{0.0, rep.max_residual},
                            {1.0, rep.primary_residual},
                            {2.0, rep.shifted_residual}}}};
        arts.push_back(std::move(art));
    }

    if (sec.contains("cycles")) {
        const Json& cj = sec.at("cycles");
        if (!cj.is_array() || cj.empty())
            throw ConfigError("limitgeom.cycles: expected a nonempty array of words");
        std::vector<Word> cycles;
        for (const auto& w : cj) cycles.push_back(word_field(w, "limitgeom.cycles"));
        const auto ratios = eigenvalue_ratio_report(sys, cycles);
        Artifact art;
        art.name = "limitgeom_eigenratio";
        art.csv.meta = base_meta(cfg, opt, "limitgeom");
        art.csv.meta.emplace_back("system", sys.name());
        art.csv.columns = {"word_a", "word_b", "eigen_a", "eigen_b", "ratio",
                           "matched_denominator"};
        SvgSeries series{"ratio", {}};
        for (std::size_t i = 0; i < ratios.size(); ++i) {
            const auto& r = ratios[i];
            art.csv.rows.push_back({word_to_string(r.word_a), word_to_string(r.word_b),
                                    format_sig12(r.eigen_a), format_sig12(r.eigen_b),
                                    format_sig12(r.ratio),
                                    std::to_string(r.matched_denominator)});
            series.points.emplace_back(static_cast<double>(i), r.ratio);
        }
        art.svg_title = "periodic eigenvalue ratios: " + sys.name();
        art.svg_xlabel = "pair index";
        art.svg_ylabel = "log ratio";
        art.svg_series = {series};
        arts.push_back(std::move(art));
    }

    return arts;
}

// ---- marstrand ----------------------------------------------------------

Artifact run_marstrand(const ExperimentConfig& cfg, const Options& opt) {
    const Json& sec = command_section(cfg, "marstrand");
    const auto& sys = cfg.system(system_name_field(sec, "system", "marstrand"));
    const auto& sys_p = cfg.system(system_name_field(sec, "system2", "marstrand"));
    const auto rho_list = config_descending_scales(sec, "rho_list", "marstrand");
    const double c0 = config_number_or(sec, "c0", 2.0, "marstrand");
    const double R = config_number_or(sec, "R", 4.0, "marstrand");
    const AffineMap embed = embed_field(sec, "embed", "marstrand");
    const AffineMap embed_p = embed_field(sec, "embed2", "marstrand");
    const EnumBudget budget = make_budget(opt);

    Artifact art;
    art.name = "marstrand";
    art.csv.meta = base_meta(cfg, opt, "marstrand");
    art.csv.meta.emplace_back("system", sys.name());
    art.csv.meta.emplace_back("system2", sys_p.name());
    art.csv.meta.emplace_back("c0", format_sig12(c0));
    art.csv.meta.emplace_back("R", format_sig12(R));
    art.csv.columns = {"rho", "rectangles", "count_s1", "integral", "union_s1"};
    std::vector<std::pair<double, double>> fit_pts;
    SvgSeries series{"log10 integral", {}};
    for (double rho : rho_list) {
        try {
            const auto rects = delta_rectangles(sys, sys_p, embed, embed_p, rho, c0, budget);
            const double integral = integral_estimate(rects, R);
            const std::size_t n1 = count_overlaps(rects, 1.0);
            const double u1 = projection_union_measure(rects, 1.0);
            art.csv.rows.push_back({format_sig12(rho), std::to_string(rects.size()),
                                    std::to_string(n1), format_sig12(integral),
                                    format_sig12(u1)});
            fit_pts.emplace_back(std::log(rho), std::log(integral));
            series.points.emplace_back(std::log10(rho), std::log10(integral));
        } catch (const BudgetExceeded& e) {
            art.csv.meta.emplace_back("truncated", e.what());
            break;
        } catch (const ScaleTooFine& e) {
            art.csv.meta.emplace_back("truncated", e.what());
            break;
        }
    }
    if (fit_pts.size() >= 2)
        art.csv.meta.emplace_back("integral_slope", format_sig12(slope_fit(fit_pts)));
    art.svg_title = "overlap integral: " + sys.name() + " / " + sys_p.name();
    art.svg_xlabel = "log10 rho";
    art.svg_ylabel = "log10 integral";
    art.svg_series = {series};
    return art;
}

// ---- sumscan ------------------------------------------------------------

Artifact run_sumscan(const ExperimentConfig& cfg, const Options& opt) {
    const Json& sec = command_section(cfg, "sumscan");
    const auto& sys = cfg.system(system_name_field(sec, "system", "sumscan"));
    const auto& sys_p = cfg.system(system_name_field(sec, "system2", "sumscan"));
    const std::string family_name = config_string_or(sec, "family", "sum", "sumscan");
    MapFamily family;
    if (family_name == "sum")
        family = MapFamily::Sum;
    else if (family_name == "projection")
        family = MapFamily::LinearProjection;
    else
        throw ConfigError("sumscan.family: expected 'sum' or 'projection'");
    const auto s_grid = s_grid_field(sec, "sumscan");
    const auto deltas = config_descending_scales(sec, "deltas", "sumscan");
    const double c0 = config_number_or(sec, "c0", 2.0, "sumscan");
    const double tolerance = config_number_or(sec, "tolerance", 0.1, "sumscan");
    const int cert_depth = static_cast<int>(config_number_or(sec, "cert_depth", 6, "sumscan"));
    const EnumBudget budget = make_budget(opt);

    double expected;
    std::string expected_source;
    if (sec.contains("expected")) {
        expected = config_number(sec, "expected", "sumscan");
        expected_source = "config";
    } else {
        expected = std::min(1.0, certified_dim_sum(sys, sys_p, cert_depth, budget));
        expected_source = "pressure bracket midpoints, depth " + std::to_string(cert_depth);
    }

    const auto result = dimension_scan(family, sys, sys_p, s_grid, deltas, expected, tolerance,
                                       c0, opt.threads, budget);

    Artifact art;
    art.name = "sumscan";
    art.csv.meta = base_meta(cfg, opt, "sumscan");
    art.csv.meta.emplace_back("system", sys.name());
    art.csv.meta.emplace_back("system2", sys_p.name());
    art.csv.meta.emplace_back("family", family_name);
    art.csv.meta.emplace_back("expected", format_sig12(expected));
    art.csv.meta.emplace_back("expected_source", expected_source);
    art.csv.meta.emplace_back("tolerance", format_sig12(tolerance));
    art.csv.meta.emplace_back("c0", format_sig12(c0));
    art.csv.columns = {"s", "slope", "max_residual", "flagged"};
    for (double d : deltas) art.csv.columns.push_back("N_" + format_sig12(d));
    SvgSeries slope_series{"slope", {}}, expect_series{"expected", {}};
    std::size_t flagged = 0;
    for (const auto& row : result.rows) {
        std::vector<std::string> cells = {format_sig12(row.s), format_sig12(row.fit.slope),
                                          format_sig12(row.fit.max_residual),
                                          row.flagged ? "1" : "0"};
        for (const auto& cc : row.table) cells.push_back(std::to_string(cc.cells));
        art.csv.rows.push_back(std::move(cells));
        slope_series.points.emplace_back(row.s, row.fit.slope);
        flagged += row.flagged ? 1 : 0;
    }
    art.csv.meta.emplace_back("flagged_rows", std::to_string(flagged));
    if (!result.rows.empty()) {
        expect_series.points.emplace_back(result.rows.front().s, expected);
        expect_series.points.emplace_back(result.rows.back().s, expected);
    }
    art.svg_title = "box-count slope scan: " + family_name;
    art.svg_xlabel = "s";
    art.svg_ylabel = "slope";
    art.svg_series = {slope_series, expect_series};
    return art;
}

// ---- extract ------------------------------------------------------------

Artifact run_extract(const ExperimentConfig& cfg, const Options& opt) {
    const Json& sec = command_section(cfg, "extract");
    const auto& sys = cfg.system(system_name_field(sec, "system", "extract"));
    const double a = config_number(sec, "a", "extract");
    const double b = config_number(sec, "b", "extract");
    ExtractOptions eopt;
    eopt.budget = make_budget(opt);
    eopt.gate_depth = static_cast<int>(config_number_or(sec, "gate_depth", eopt.gate_depth, "extract"));
    eopt.max_block_letters = static_cast<int>(
        config_number_or(sec, "max_block_letters", eopt.max_block_letters, "extract"));
    eopt.margin = config_number_or(sec, "margin", eopt.margin, "extract");
    if (sec.contains("certify_tight")) eopt.certify_tight = sec.at("certify_tight").get<bool>();

    const auto res = extract_subcantor(sys, a, b, eopt);

    Artifact art;
    art.name = "extract";
    art.csv.meta = base_meta(cfg, opt, "extract");
    art.csv.meta.emplace_back("system", sys.name());
    art.csv.meta.emplace_back("a", format_sig12(a));
    art.csv.meta.emplace_back("b", format_sig12(b));
    art.csv.meta.emplace_back("block_letters", std::to_string(res.n));
    art.csv.meta.emplace_back("marker_start", std::to_string(res.marker_start));
    art.csv.meta.emplace_back("marker_end", std::to_string(res.marker_end));
    art.csv.meta.emplace_back("c_hat", format_sig12(res.c_hat));
    art.csv.meta.emplace_back("sum_mid", format_sig12(res.sum_mid));
    art.csv.meta.emplace_back("sum_mid_with_pivot", format_sig12(res.sum_mid_with_pivot));
    art.csv.meta.emplace_back("sum_a", format_sig12(res.sum_a));
    art.csv.meta.emplace_back("sum_lambda_mid", format_sig12(res.sum_lambda_mid));
    art.csv.meta.emplace_back("pivot", word_to_string(res.pivot));
    art.csv.meta.emplace_back("bracket_lower", format_sig12(res.result.d_lower));
    art.csv.meta.emplace_back("bracket_upper", format_sig12(res.result.d_upper));
    art.csv.columns = {"index", "word", "base_lo", "base_hi", "weight_inf", "weight_sup"};
    SvgSeries series{"log10 weight_sup", {}};
    for (std::size_t i = 0; i < res.kept.size(); ++i) {
        Word wc = res.kept[i];
        wc.push_back(res.marker_start);
        const auto bounds = sys.derivative_bounds_on_cylinder(wc);
        const Interval base = res.system.base(static_cast<Sym>(i));
        art.csv.rows.push_back({std::to_string(i), word_to_string(res.kept[i]),
                                format_sig12(base.lo), format_sig12(base.hi),
                                format_sig12(bounds.first), format_sig12(bounds.second)});
        series.points.emplace_back(static_cast<double>(i), std::log10(bounds.second));
    }
    art.svg_title = "extracted block weights: " + sys.name();
    art.svg_xlabel = "kept word index";
    art.svg_ylabel = "log10 weight";
    art.svg_series = {series};

    Json out;
    out["systems"][res.system.name()] = system_to_config(res.system);
    art.extra_name = "extract_system.json";
    art.extra_text = out.dump(2) + "\n";
    return art;
}

// ---- recurrence ---------------------------------------------------------

Artifact run_recurrence(const ExperimentConfig& cfg, const Options& opt) {
    const Json& sec = command_section(cfg, "recurrence");
    const auto& sys = cfg.system(system_name_field(sec, "system", "recurrence"));
    const auto& sys_p = cfg.system(system_name_field(sec, "system2", "recurrence"));
    const auto s_grid = s_grid_field(sec, "recurrence");
    const EnumBudget budget = make_budget(opt);

    GoodScaleParams params;
    params.rho = config_number(sec, "rho", "recurrence");
    params.m = static_cast<int>(config_number_or(sec, "m", 3, "recurrence"));
    params.c5 = config_number(sec, "c5", "recurrence");
    params.c0 = config_number_or(sec, "c0", 2.0, "recurrence");
    const int cert_depth = static_cast<int>(config_number_or(sec, "cert_depth", 6, "recurrence"));
    std::string d_sum_source;
    if (sec.contains("d_sum")) {
        params.d_sum = config_number(sec, "d_sum", "recurrence");
        d_sum_source = "config";
    } else {
        params.d_sum = certified_dim_sum(sys, sys_p, cert_depth, budget);
        d_sum_source = "pressure bracket midpoints, depth " + std::to_string(cert_depth);
    }

    RelativeScale point;
    point.tail = TailWord{sec.contains("tail") ? word_field(sec.at("tail"), "recurrence.tail")
                                               : Word{0}};
    point.tail_p = TailWord{sec.contains("tail2") ? word_field(sec.at("tail2"), "recurrence.tail2")
                                                  : Word{0}};
    point.s = 1.0;

    const auto report = empirical_recurrence_map(sys, sys_p, point, s_grid, params, {}, budget);

    Artifact art;
    art.name = "recurrence";
    art.csv.meta = base_meta(cfg, opt, "recurrence");
    art.csv.meta.emplace_back("system", sys.name());
    art.csv.meta.emplace_back("system2", sys_p.name());
    art.csv.meta.emplace_back("rho", format_sig12(params.rho));
    art.csv.meta.emplace_back("m", std::to_string(params.m));
    art.csv.meta.emplace_back("c5", format_sig12(params.c5));
    art.csv.meta.emplace_back("c0", format_sig12(params.c0));
    art.csv.meta.emplace_back("d_sum", format_sig12(params.d_sum));
    art.csv.meta.emplace_back("d_sum_source", d_sum_source);
    art.csv.meta.emplace_back("tail", word_to_string(point.tail.symbols));
    art.csv.meta.emplace_back("tail2", word_to_string(point.tail_p.symbols));
    art.csv.columns = {"s", "good", "pair_total", "pair_good", "fraction"};
    SvgSeries series{"fraction", {}};
    for (const auto& cell : report.cells) {
        art.csv.rows.push_back({format_sig12(cell.s), cell.good ? "1" : "0",
                                std::to_string(cell.pair_total), std::to_string(cell.pair_good),
                                format_sig12(cell.fraction)});
        series.points.emplace_back(cell.s, cell.fraction);
    }
    art.svg_title = "recurrence fractions: " + sys.name() + " / " + sys_p.name();
    art.svg_xlabel = "s";
    art.svg_ylabel = "good-image fraction";
    art.svg_series = {series};
    return art;
}

// ---- driver ---------------------------------------------------------------

void write_artifacts(const std::vector<Artifact>& arts, const ExperimentConfig& cfg,
                     const Options& opt, double wall_ms) {
    std::string out_dir = opt.out_dir;
    if (out_dir.empty()) out_dir = config_string_or(cfg.root, "out", ".", "config");
    std::filesystem::create_directories(out_dir);
    for (const Artifact& art : arts) {
        CsvTable csv = art.csv;
        if (opt.timings) csv.meta.emplace_back("wall_ms", format_sig12(wall_ms));
        const std::string stem = out_dir + "/" + art.name;
        write_csv(stem + ".csv", csv);
        if (opt.svg)
            write_svg_plot(stem + ".svg", art.svg_title, art.svg_xlabel, art.svg_ylabel,
                           art.svg_series);
        if (!art.extra_name.empty()) {
            std::ofstream extra(out_dir + "/" + art.extra_name, std::ios::binary | std::ios::trunc);
            if (!extra) throw ReportError("cannot open '" + art.extra_name + "' for writing");
            extra << art.extra_text;
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for regular Cantor sets"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--config", opt.config_path, "experiment config file (JSON)")->required();
    app.add_option("--out", opt.out_dir, "output directory (default: config 'out' or '.')");
    app.add_flag("--svg", opt.svg, "also render SVG plots");
    app.add_option("--budget", opt.budget_words, "max enumerated words");
    app.add_option("--threads", opt.threads, "parallelism hint")->check(CLI::PositiveNumber);
    app.add_flag("--timings", opt.timings, "record wall time in CSV metadata");

    const auto* cmd_dim = app.add_subcommand("dim", "pressure dimension brackets");
    const auto* cmd_limitgeom =
        app.add_subcommand("limitgeom", "limit geometry convergence and audits");
    const auto* cmd_marstrand =
        app.add_subcommand("marstrand", "projection overlap counts and integrals");
    const auto* cmd_sumscan = app.add_subcommand("sumscan", "box-count slope scan of map images");
    const auto* cmd_extract = app.add_subcommand("extract", "sub-Cantor block extraction");
    const auto* cmd_recurrence =
        app.add_subcommand("recurrence", "good-scale indicator and recurrence fractions");

    CLI11_PARSE(app, argc, argv);

    try {
        const auto t0 = std::chrono::steady_clock::now();
        const ExperimentConfig cfg = load_experiment_config(opt.config_path);
        std::vector<Artifact> arts;
        if (cmd_dim->parsed())
            arts.push_back(run_dim(cfg, opt));
        else if (cmd_limitgeom->parsed())
            arts = run_limitgeom(cfg, opt);
        else if (cmd_marstrand->parsed())
            arts.push_back(run_marstrand(cfg, opt));
        else if (cmd_sumscan->parsed())
            arts.push_back(run_sumscan(cfg, opt));
        else if (cmd_extract->parsed())
            arts.push_back(run_extract(cfg, opt));
        else if (cmd_recurrence->parsed())
            arts.push_back(run_recurrence(cfg, opt));
        const double wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        write_artifacts(arts, cfg, opt, wall_ms);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
    return 0;
}
