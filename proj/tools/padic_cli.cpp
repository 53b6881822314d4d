#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "padic_strings/padic_strings.h"

namespace {

struct RunConfig {
    std::string input;
    std::string eps;
    std::string sigma = "1.5";
    std::string t = "0..10";
    int count = 50;
    int n_max = 4000;
    std::string format;
    std::string out;
    double T = 0;
    double periods = 40;
    int depth = 0;
};

int exit_code(ps_status s) {
    switch (s) {
        case PS_OK: return 0;
        case PS_ERR_CONSISTENCY:
        case PS_ERR_ROOT_FINDING:
        case PS_ERR_INTERNAL: return 2;
        default: return 1;
    }
}

int report(ps_status s) {
    if (s != PS_OK) std::cerr << "error (" << ps_status_name(s) << "): " << ps_last_error() << "\n";
    return exit_code(s);
}

bool parse_range(const std::string& text, int count, ps_grid& g) {
    auto dots = text.find("..");
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            g.lo = g.hi = std::stod(text, &used);
            g.count = 1;
            return used == text.size();
        }
        std::string a = text.substr(0, dots), b = text.substr(dots + 2);
        std::size_t ua = 0, ub = 0;
        g.lo = std::stod(a, &ua);
        g.hi = std::stod(b, &ub);
        g.count = count;
        return ua == a.size() && ub == b.size();
    } catch (const std::exception&) {
        return false;
    }
}

bool is_builtin(const std::string& s) { return s == "cantor3" || s == "fibonacci2" || s.rfind("euler:", 0) == 0; }

ps_status open_source(const std::string& input, ps_source** src) {
    if (is_builtin(input)) return ps_source_builtin(input.c_str(), src);
    std::ifstream in(input);
    if (!in) return PS_ERR_NULL_ARG;
    std::stringstream ss;
    ss << in.rdbuf();
    return ps_source_from_json(ss.str().c_str(), src);
}

int emit(const RunConfig& cfg, char* text) {
    int rc = 0;
    if (cfg.out.empty()) {
        std::fputs(text, stdout);
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        f << text;
        if (!f) {
            std::cerr << "error: cannot write '" << cfg.out << "'\n";
            rc = 1;
        }
    }
    ps_string_free(text);
    return rc;
}

ps_format format_of(const RunConfig& cfg, ps_format fallback) {
    if (cfg.format.empty()) return fallback;
    return cfg.format == "csv" ? PS_FORMAT_CSV : PS_FORMAT_JSON;
}

int run(const std::string& command, const RunConfig& cfg) {
    char* text = nullptr;
    if (command == "compare") {
        ps_grid g{};
        if (!parse_range(cfg.eps.empty() ? "1e-6..0.15" : cfg.eps, cfg.count, g)) {
            std::cerr << "error: bad --eps range\n";
            return 1;
        }
        ps_status s = ps_compare_table(g, cfg.n_max, cfg.periods, format_of(cfg, PS_FORMAT_CSV), &text);
        return s == PS_OK ? emit(cfg, text) : report(s);
    }

    if (cfg.input.empty()) {
        std::cerr << "error: --input is required for " << command << "\n";
        return 1;
    }
    ps_source* src = nullptr;
    ps_status s = open_source(cfg.input, &src);
    if (s == PS_ERR_NULL_ARG) {
        std::cerr << "error: cannot read input '" << cfg.input << "'\n";
        return 1;
    }
    if (s != PS_OK) return report(s);

    int valid = 1;
    if (command == "dims") {
        s = ps_dimensions_json(src, &text);
    } else if (command == "tube") {
        ps_grid g{};
        if (!parse_range(cfg.eps.empty() ? "1e-6..0.2" : cfg.eps, cfg.count, g)) {
            std::cerr << "error: bad --eps range\n";
            ps_source_free(src);
            return 1;
        }
        s = ps_tube_table(src, g, cfg.n_max, format_of(cfg, PS_FORMAT_CSV), &text);
    } else if (command == "zeta") {
        ps_grid gs{}, gt{};
        if (!parse_range(cfg.sigma, cfg.count, gs) || !parse_range(cfg.t, cfg.count, gt)) {
            std::cerr << "error: bad --sigma or --t range\n";
            ps_source_free(src);
            return 1;
        }
        s = ps_zeta_table(src, gs, gt, format_of(cfg, PS_FORMAT_JSON), &text);
    } else if (command == "content") {
        s = ps_content_report(src, cfg.T, cfg.periods, format_of(cfg, PS_FORMAT_JSON), &text);
    } else if (command == "validate") {
        s = ps_validate(src, cfg.depth, &valid, &text);
    }
    ps_source_free(src);
    if (s != PS_OK) return report(s);
    int rc = emit(cfg, text);
    if (!valid) {
        std::cerr << "invalid system (see violations)\n";
        return 1;
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic fractal strings: complex dimensions, tube formulas, Minkowski content"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        auto* opt = sub->add_option("--input", cfg.input, "system JSON path or builtin (cantor3, fibonacci2, euler:p)");
        if (needs_input) opt->required();
        sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out, "output path (default stdout)");
    };

    auto* dims = app.add_subcommand("dims", "complex dimensions and residues");
    add_common(dims, true);

    auto* tube = app.add_subcommand("tube", "tube volume: exact oracle vs explicit formula");
    add_common(tube, true);
    tube->add_option("--eps", cfg.eps, "log-spaced range start..stop");
    tube->add_option("--count", cfg.count, "grid points")->check(CLI::PositiveNumber);
    tube->add_option("--n-max", cfg.n_max, "Fourier truncation")->check(CLI::PositiveNumber);

    auto* zeta = app.add_subcommand("zeta", "geometric zeta function on an s-grid");
    add_common(zeta, true);
    zeta->add_option("--sigma", cfg.sigma, "Re(s) value or range a..b");
    zeta->add_option("--t", cfg.t, "Im(s) value or range a..b");
    zeta->add_option("--count", cfg.count, "points per range")->check(CLI::PositiveNumber);

    auto* content = app.add_subcommand("content", "average Minkowski content report");
    add_common(content, true);
    content->add_option("--T", cfg.T, "Cesaro cutoff T (overrides --periods)")->check(CLI::PositiveNumber);
    content->add_option("--periods", cfg.periods, "T = r^-periods")->check(CLI::PositiveNumber);

    auto* compare = app.add_subcommand("compare", "real vs 3-adic Cantor string");
    add_common(compare, false);
    compare->add_option("--eps", cfg.eps, "log-spaced range start..stop, inside (0, 1/6)");
    compare->add_option("--count", cfg.count, "grid points")->check(CLI::PositiveNumber);
    compare->add_option("--n-max", cfg.n_max, "Fourier truncation")->check(CLI::PositiveNumber);
    compare->add_option("--periods", cfg.periods, "T = 3^periods for the content averages")->check(CLI::PositiveNumber);

    auto* validate = app.add_subcommand("validate", "check a system and list its violations");
    add_common(validate, true);
    validate->add_option("--depth", cfg.depth, "also list the intervals of the first depth levels")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    return run(app.get_subcommands().front()->get_name(), cfg);
}
