#include "padic_strings/padic_strings.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "padic/archimedean.hpp"
#include "padic/dimensions.hpp"
#include "padic/fractal_string.hpp"
#include "padic/minkowski.hpp"
#include "padic/parallel.hpp"
#include "padic/serialize.hpp"
#include "padic/tube.hpp"
#include "padic/zeta.hpp"

using namespace padic;

struct ps_source {
    std::string name;
    Prime p;
    std::optional<SelfSimilarSystem> sys;  // empty for Euler strings

    LengthSpectrum spectrum() const { return sys ? LengthSpectrum::self_similar(*sys) : LengthSpectrum::euler(p); }
    RationalZeta zeta() const { return sys ? closed_form_zeta(*sys) : euler_closed_form(p); }
    DimensionSet dims() const { return sys ? complex_dimensions(*sys) : complex_dimensions(euler_closed_form(p)); }
};

namespace {

thread_local std::string last_error;

ps_status fail(ps_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

template <class F>
ps_status guarded(F&& f) {
    try {
        last_error.clear();
        f();
        return PS_OK;
    } catch (const InvalidArgument& e) {
        return fail(PS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const PrecisionExhausted& e) {
        return fail(PS_ERR_PRECISION, e.what());
    } catch (const ConsistencyError& e) {
        return fail(PS_ERR_CONSISTENCY, e.what());
    } catch (const PoleProximity& e) {
        return fail(PS_ERR_POLE, e.what());
    } catch (const RootFindingError& e) {
        return fail(PS_ERR_ROOT_FINDING, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(PS_ERR_INVALID_ARGUMENT, std::string("JSON: ") + e.what());
    } catch (const std::bad_alloc&) {
        return fail(PS_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(PS_ERR_INTERNAL, e.what());
    }
}

#define PS_REQUIRE(ptr) \
    do { if (!(ptr)) return fail(PS_ERR_NULL_ARG, "null argument: " #ptr); } while (0)

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Rational parse_rational(const char* text) {
    Rational q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0) throw InvalidArgument(std::string("bad rational: '") + text + "'");
    q.canonicalize();
    return q;
}

std::vector<double> lin_grid(const ps_grid& g) {
    if (g.count < 1) throw InvalidArgument("grid count must be >= 1");
    if (!(g.hi >= g.lo)) throw InvalidArgument("grid needs lo <= hi");
    std::vector<double> out;
    for (int i = 0; i < g.count; ++i) {
        double t = g.count == 1 ? 0.0 : static_cast<double>(i) / (g.count - 1);
        out.push_back(g.lo + t * (g.hi - g.lo));
    }
    return out;
}

std::string csv_line(const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += ',';
        s += cells[i];
    }
    return s + "\n";
}

void require_format(ps_format f) {
    if (f != PS_FORMAT_JSON && f != PS_FORMAT_CSV) throw InvalidArgument("unknown output format");
}

double median(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct TubeRow {
    double eps;
    Rational direct;
    double series;
};

}  // namespace

extern "C" {

const char* ps_last_error(void) { return last_error.c_str(); }

const char* ps_version(void) { return "0.1.0"; }

const char* ps_status_name(ps_status s) {
    switch (s) {
        case PS_OK: return "ok";
        case PS_ERR_NULL_ARG: return "null_argument";
        case PS_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case PS_ERR_PRECISION: return "precision_exhausted";
        case PS_ERR_CONSISTENCY: return "consistency_error";
        case PS_ERR_POLE: return "pole_proximity";
        case PS_ERR_ROOT_FINDING: return "root_finding_error";
        case PS_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

ps_status ps_source_builtin(const char* name, ps_source** out) {
    PS_REQUIRE(name);
    PS_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        std::string n(name);
        if (n == "cantor3") {
            *out = new ps_source{n, Prime(3), cantor_string_3()};
        } else if (n == "fibonacci2") {
            *out = new ps_source{n, Prime(2), fibonacci_string_2()};
        } else if (n.rfind("euler:", 0) == 0) {
            std::int64_t p = 0;
            std::size_t used = 0;
            try {
                p = std::stoll(n.substr(6), &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != n.size() - 6) throw InvalidArgument("bad Euler prime in '" + n + "'");
            *out = new ps_source{n, Prime(p), std::nullopt};
        } else {
            throw InvalidArgument("unknown builtin '" + n + "' (expected cantor3, fibonacci2 or euler:<p>)");
        }
    });
}

ps_status ps_source_from_json(const char* json, ps_source** out) {
    PS_REQUIRE(json);
    PS_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        SelfSimilarSystem sys = system_from_json(Json::parse(json));
        Prime p = sys.prime();
        *out = new ps_source{"json", p, std::move(sys)};
    });
}

void ps_source_free(ps_source* src) { delete src; }

void ps_string_free(char* s) { std::free(s); }

ps_status ps_source_to_json(const ps_source* src, char** out) {
    PS_REQUIRE(src);
    PS_REQUIRE(out);
    return guarded([&] {
        Json j;
        if (src->sys) {
            j = system_to_json(*src->sys);
        } else {
            j["euler"] = src->p.value();
        }
        *out = dup_string(dump(j));
    });
}

ps_status ps_source_prime(const ps_source* src, unsigned* p) {
    PS_REQUIRE(src);
    PS_REQUIRE(p);
    *p = src->p.value();
    return PS_OK;
}

ps_status ps_validate(const ps_source* src, int depth, int* valid, char** report_json) {
    PS_REQUIRE(src);
    PS_REQUIRE(valid);
    PS_REQUIRE(report_json);
    return guarded([&] {
        Json j;
        if (!src->sys) {
            j["valid"] = true;
            j["kind"] = "euler";
            j["p"] = src->p.value();
            *valid = 1;
        } else {
            ValidationReport r = validate_system(*src->sys);
            j = validation_to_json(r);
            *valid = r.valid() ? 1 : 0;
            if (depth > 0 && r.valid() && src->sys->has_geometry()) {
                Json balls = Json::array();
                for (const auto& b : enumerate_intervals(*src->sys, depth)) balls.push_back(format_ball(b));
                j["depth"] = depth;
                j["intervals"] = std::move(balls);
            }
        }
        *report_json = dup_string(dump(j));
    });
}

ps_status ps_dimension(const ps_source* src, double* D) {
    PS_REQUIRE(src);
    PS_REQUIRE(D);
    return guarded([&] { *D = src->dims().D; });
}

ps_status ps_period(const ps_source* src, double* period) {
    PS_REQUIRE(src);
    PS_REQUIRE(period);
    return guarded([&] { *period = src->zeta().period(); });
}

ps_status ps_line_count(const ps_source* src, size_t* count) {
    PS_REQUIRE(src);
    PS_REQUIRE(count);
    return guarded([&] { *count = src->dims().lines.size(); });
}

ps_status ps_line_at(const ps_source* src, size_t index, ps_line* out) {
    PS_REQUIRE(src);
    PS_REQUIRE(out);
    return guarded([&] {
        DimensionSet ds = src->dims();
        if (index >= ds.lines.size()) throw InvalidArgument("line index out of range");
        const auto& l = ds.lines[index];
        *out = ps_line{l.omega.real(), l.omega.imag(), l.multiplicity, l.residue.real(), l.residue.imag()};
    });
}

ps_status ps_dimensions_json(const ps_source* src, char** out) {
    PS_REQUIRE(src);
    PS_REQUIRE(out);
    return guarded([&] {
        Json j;
        j["input"] = src->name;
        j["zeta"] = rational_zeta_to_json(src->zeta());
        Json ds = dimension_set_to_json(src->dims());
        for (auto& [k, v] : ds.items()) j[k] = v;
        *out = dup_string(dump(j));
    });
}

ps_status ps_zeta_eval(const ps_source* src, double s_re, double s_im, double* z_re, double* z_im) {
    PS_REQUIRE(src);
    PS_REQUIRE(z_re);
    PS_REQUIRE(z_im);
    return guarded([&] {
        Complex v = zeta_eval(src->zeta(), Complex(s_re, s_im));
        *z_re = v.real();
        *z_im = v.imag();
    });
}

ps_status ps_thin_tube_volume(const ps_source* src, const char* eps, char** exact, double* approx) {
    PS_REQUIRE(src);
    PS_REQUIRE(eps);
    return guarded([&] {
        Rational v = thin_tube_volume(src->spectrum(), parse_rational(eps));
        if (approx) *approx = v.get_d();
        if (exact) *exact = dup_string(rational_string(v));
    });
}

ps_status ps_tube_series(const ps_source* src, double eps, int n_max, double* out) {
    PS_REQUIRE(src);
    PS_REQUIRE(out);
    return guarded([&] {
        TubeSeriesConfig cfg;
        cfg.n_max = n_max;
        *out = src->sys ? explicit_tube_formula(*src->sys, eps, cfg)
                        : explicit_tube_formula(src->zeta(), src->dims(), eps, cfg);
    });
}

ps_status ps_tube_table(const ps_source* src, ps_grid eps, int n_max, ps_format fmt, char** out) {
    PS_REQUIRE(src);
    PS_REQUIRE(out);
    return guarded([&] {
        require_format(fmt);
        if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
        const LengthSpectrum ls = src->spectrum();
        const RationalZeta rz = src->zeta();
        const DimensionSet dims = src->dims();
        std::vector<double> grid = jump_free_grid(eps.lo, eps.hi, eps.count, rz.log_scale());
        TubeSeriesConfig cfg;
        cfg.n_max = n_max;
        std::vector<TubeRow> rows(grid.size());
        parallel_for(grid.size(), [&](std::size_t i) {
            rows[i].eps = grid[i];
            rows[i].direct = thin_tube_volume(ls, Rational(grid[i]));
            rows[i].series = src->sys ? explicit_tube_formula(*src->sys, grid[i], cfg)
                                      : explicit_tube_formula(rz, dims, grid[i], cfg);
        });
        std::vector<double> errs;
        for (const auto& r : rows) errs.push_back(std::abs(r.direct.get_d() - r.series));

        if (fmt == PS_FORMAT_CSV) {
            std::string s = csv_line({"eps", "V_direct", "V_series", "abs_error", "n_max"});
            for (std::size_t i = 0; i < rows.size(); ++i) {
                s += csv_line({decimal15(rows[i].eps), decimal15(rows[i].direct), decimal15(rows[i].series),
                               decimal15(errs[i]), std::to_string(n_max)});
            }
            *out = dup_string(s);
            return;
        }
        Json j;
        j["input"] = src->name;
        j["n_max"] = n_max;
        j["max_abs_error"] = decimal15(errs.empty() ? 0.0 : *std::max_element(errs.begin(), errs.end()));
        j["median_abs_error"] = decimal15(median(errs));
        Json arr = Json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Json r;
            r["eps"] = decimal15(rows[i].eps);
            r["V_direct"] = decimal15(rows[i].direct);
            r["V_direct_exact"] = rational_string(rows[i].direct);
            r["V_series"] = decimal15(rows[i].series);
            r["abs_error"] = decimal15(errs[i]);
            arr.push_back(std::move(r));
        }
        j["rows"] = std::move(arr);
        *out = dup_string(dump(j));
    });
}

ps_status ps_zeta_table(const ps_source* src, ps_grid sigma, ps_grid t, ps_format fmt, char** out) {
    PS_REQUIRE(src);
    PS_REQUIRE(out);
    return guarded([&] {
        require_format(fmt);
        const RationalZeta rz = src->zeta();
        std::vector<double> sg = lin_grid(sigma), tg = lin_grid(t);
        struct Cell {
            double sr, si;
            Complex v;
            bool pole;
        };
        std::vector<Cell> cells;
        for (double a : sg)
            for (double b : tg) cells.push_back({a, b, 0.0, false});
        parallel_for(cells.size(), [&](std::size_t i) {
            try {
                cells[i].v = zeta_eval(rz, Complex(cells[i].sr, cells[i].si));
            } catch (const PoleProximity&) {
                cells[i].pole = true;
            }
        });
        if (fmt == PS_FORMAT_CSV) {
            std::string s = csv_line({"sigma", "t", "zeta_re", "zeta_im", "status"});
            for (const auto& c : cells) {
                s += csv_line({decimal15(c.sr), decimal15(c.si), c.pole ? "" : decimal15(c.v.real()),
                               c.pole ? "" : decimal15(c.v.imag()), c.pole ? "pole" : "ok"});
            }
            *out = dup_string(s);
            return;
        }
        Json j;
        j["input"] = src->name;
        j["zeta"] = rational_zeta_to_json(rz);
        Json arr = Json::array();
        for (const auto& c : cells) {
            Json r;
            r["sigma"] = decimal15(c.sr);
            r["t"] = decimal15(c.si);
            if (c.pole) {
                r["status"] = "pole";
            } else {
                r["zeta_re"] = decimal15(c.v.real());
                r["zeta_im"] = decimal15(c.v.imag());
                r["status"] = "ok";
            }
            arr.push_back(std::move(r));
        }
        j["values"] = std::move(arr);
        *out = dup_string(dump(j));
    });
}

ps_status ps_content_closed(const ps_source* src, double* out) {
    PS_REQUIRE(src);
    PS_REQUIRE(out);
    return guarded([&] { *out = average_minkowski_content_closed(src->spectrum()); });
}

ps_status ps_content_report(const ps_source* src, double T, double periods, ps_format fmt, char** out) {
    PS_REQUIRE(src);
    PS_REQUIRE(out);
    return guarded([&] {
        require_format(fmt);
        const LengthSpectrum ls = src->spectrum();
        double used = T > 0 ? T : periods_to_T(ls, periods);
        ContentReport r = content_report(ls, used);
        Json j = content_report_to_json(r);
        if (fmt == PS_FORMAT_CSV) {
            std::string s = csv_line({"D_used", "T_used", "M_av_numeric", "M_av_closed", "relative_gap", "oscillation_ratio"});
            s += csv_line({decimal15(r.D_used), decimal15(r.T_used), decimal15(r.M_av_numeric), decimal15(r.M_av_closed),
                           decimal15(j["relative_gap"].get<double>()), decimal15(r.oscillation_ratio)});
            *out = dup_string(s);
            return;
        }
        Json o;
        o["input"] = src->name;
        for (auto& [k, v] : j.items()) o[k] = v;
        *out = dup_string(dump(o));
    });
}

ps_status ps_compare_table(ps_grid eps, int n_max, double periods, ps_format fmt, char** out) {
    PS_REQUIRE(out);
    return guarded([&] {
        require_format(fmt);
        if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
        std::vector<double> grid = jump_free_grid(eps.lo, eps.hi, eps.count, std::log(3.0));
        const double T = std::exp(periods * std::log(3.0));
        ComparisonReport rep = comparison_report(grid, n_max, T);
        if (fmt == PS_FORMAT_CSV) {
            std::string s = csv_line({"eps", "V_CS", "V_CS_series", "V_CS3", "V_CS3_series", "G_CS", "G_CS3"});
            for (const auto& r : rep.rows) {
                s += csv_line({decimal15(r.eps), decimal15(r.v_cs), decimal15(r.v_cs_series), decimal15(r.v_cs3),
                               decimal15(r.v_cs3_series), decimal15(r.g_cs), decimal15(r.g_cs3)});
            }
            *out = dup_string(s);
            return;
        }
        double max_cs = 0, max_cs3 = 0;
        for (const auto& r : rep.rows) {
            max_cs = std::max(max_cs, std::abs(r.v_cs.get_d() - r.v_cs_series));
            max_cs3 = std::max(max_cs3, std::abs(r.v_cs3.get_d() - r.v_cs3_series));
        }
        Json j;
        j["dimensions_equal"] = rep.dimensions_equal;
        j["D"] = rep.dims_cs3.D;
        j["period"] = rep.dims_cs3.period;
        j["n_max"] = n_max;
        j["max_abs_error_CS"] = decimal15(max_cs);
        j["max_abs_error_CS3"] = decimal15(max_cs3);
        j["M_av_CS_numeric"] = decimal15(rep.content_cs_numeric);
        j["M_av_CS_reference"] = decimal15(rep.content_cs_reference);
        j["M_av_CS3_numeric"] = decimal15(rep.content_cs3_numeric);
        j["M_av_CS3_closed"] = decimal15(rep.content_cs3_closed);
        j["rows"] = rep.rows.size();
        *out = dup_string(dump(j));
    });
}

}  // extern "C"
