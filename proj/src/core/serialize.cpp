#include "padic/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace padic {

namespace {

Json bigint_json(const BigInt& v) {
    if (v.fits_slong_p()) return Json(v.get_si());
    return Json(v.get_str());
}

BigInt json_bigint(const Json& j, const char* what) {
    if (j.is_number_integer()) return BigInt(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) {
        try {
            return BigInt(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw InvalidArgument(std::string("expected an integer for ") + what);
}

std::int64_t json_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw InvalidArgument(std::string("expected an integer for ") + what);
    return j.get<std::int64_t>();
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::vector<std::int64_t> int_list(const Json& j, const char* what) {
    if (!j.is_array()) throw InvalidArgument(std::string("expected an array for ") + what);
    std::vector<std::int64_t> out;
    for (const auto& e : j) out.push_back(json_int(e, what));
    return out;
}

std::vector<std::uint32_t> digit_list(const Json& j, const char* what) {
    std::vector<std::uint32_t> out;
    for (auto v : int_list(j, what)) {
        if (v < 0 || v > 0xffffffffLL) throw InvalidArgument(std::string("digit out of range in ") + what);
        out.push_back(static_cast<std::uint32_t>(v));
    }
    return out;
}

Json digits_json(const PAdicDigits& d) {
    Json a = Json::array();
    for (auto x : d.digits) a.push_back(x);
    return a;
}

IntPolynomial poly_from_json(const Json& j, const char* what) {
    if (!j.is_array()) throw InvalidArgument(std::string("expected an array for ") + what);
    std::vector<BigInt> c;
    for (const auto& e : j) c.push_back(json_bigint(e, what));
    return IntPolynomial(std::move(c));
}

Json poly_json(const IntPolynomial& p) {
    Json a = Json::array();
    for (const auto& c : p.coeffs()) a.push_back(bigint_json(c));
    return a;
}

// |q| as decimal: digits (15 of them) and exponent e, value = d.ddd * 10^e.
std::pair<std::string, long> round15(Rational q) {
    const BigInt lo("100000000000000");
    const BigInt hi("1000000000000000");
    long e = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 10));
    auto scaled = [&](long ex) {
        Rational s = q;
        if (14 - ex >= 0) s *= Rational(int_pow(10, static_cast<unsigned long>(14 - ex)));
        else s /= Rational(int_pow(10, static_cast<unsigned long>(ex - 14)));
        return s;
    };
    Rational s = scaled(e);
    while (s >= Rational(hi)) s = scaled(++e);
    while (s < Rational(lo)) s = scaled(--e);
    BigInt n, r;
    mpz_fdiv_qr(n.get_mpz_t(), r.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    int c = cmp(BigInt(2 * r), s.get_den());
    if (c > 0 || (c == 0 && mpz_odd_p(n.get_mpz_t()))) n += 1;
    if (n == hi) {
        n = lo;
        ++e;
    }
    return {n.get_str(), e};
}

}  // namespace

SelfSimilarSystem system_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidArgument("system JSON must be an object");
    Prime p(json_int(field(j, "p"), "p"));
    auto n = int_list(field(j, "scaling_exps"), "scaling_exps");
    auto m = int_list(field(j, "gap_exps"), "gap_exps");
    std::vector<PAdicAffineMap> maps;
    std::vector<PAdicBall> gaps;
    if (j.contains("maps")) {
        if (!j.at("maps").is_array()) throw InvalidArgument("maps must be an array");
        for (const auto& mj : j.at("maps")) {
            int prec = 64;
            if (mj.is_object() && mj.contains("precision")) prec = static_cast<int>(json_int(mj.at("precision"), "precision"));
            maps.emplace_back(p, json_int(field(mj, "scale_val"), "scale_val"), digit_list(field(mj, "scale_unit"), "scale_unit"),
                              digit_list(field(mj, "shift"), "shift"), prec);
        }
    }
    if (j.contains("gaps")) {
        if (!j.at("gaps").is_array()) throw InvalidArgument("gaps must be an array");
        for (const auto& gj : j.at("gaps")) {
            if (!gj.is_string()) throw InvalidArgument("gap balls must be strings like \"1+3^1*Z\"");
            PAdicBall b = parse_ball(gj.get<std::string>());
            if (!(b.prime() == p)) throw InvalidArgument("gap ball prime differs from p");
            gaps.push_back(std::move(b));
        }
    }
    return SelfSimilarSystem(p, std::move(n), std::move(m), std::move(maps), std::move(gaps));
}

Json system_to_json(const SelfSimilarSystem& sys) {
    Json j;
    j["p"] = sys.prime().value();
    j["scaling_exps"] = sys.scaling_exps();
    j["gap_exps"] = sys.gap_exps();
    if (!sys.maps().empty()) {
        Json maps = Json::array();
        for (const auto& m : sys.maps()) {
            Json mj;
            mj["scale_val"] = m.scale_valuation;
            mj["scale_unit"] = digits_json(m.unit);
            mj["shift"] = digits_json(m.shift);
            if (m.working_precision != 64) mj["precision"] = m.working_precision;
            maps.push_back(std::move(mj));
        }
        j["maps"] = std::move(maps);
    }
    if (!sys.gaps().empty()) {
        Json gaps = Json::array();
        for (const auto& g : sys.gaps()) gaps.push_back(format_ball(g));
        j["gaps"] = std::move(gaps);
    }
    return j;
}

RationalZeta rational_zeta_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidArgument("rational zeta JSON must be an object");
    return make_rational_zeta(poly_from_json(field(j, "num"), "num"), poly_from_json(field(j, "den"), "den"),
                              Prime(json_int(field(j, "p"), "p")), json_int(field(j, "d"), "d"));
}

Json rational_zeta_to_json(const RationalZeta& rz) {
    Json j;
    j["num"] = poly_json(rz.num);
    j["den"] = poly_json(rz.den);
    j["p"] = rz.p.value();
    j["d"] = rz.d;
    return j;
}

Json dimension_set_to_json(const DimensionSet& ds) {
    Json j;
    j["D"] = ds.D;
    j["period"] = ds.period;
    Json lines = Json::array();
    for (const auto& l : ds.lines) {
        Json lj;
        lj["re"] = l.omega.real();
        lj["im"] = l.omega.imag();
        lj["multiplicity"] = l.multiplicity;
        if (l.multiplicity == 1) {
            lj["residue_re"] = l.residue.real();
            lj["residue_im"] = l.residue.imag();
        } else {
            Json pp = Json::array();
            for (const auto& c : l.principal_part) pp.push_back(Json::array({c.real(), c.imag()}));
            lj["principal_part"] = std::move(pp);
        }
        lines.push_back(std::move(lj));
    }
    j["lines"] = std::move(lines);
    return j;
}

Json content_report_to_json(const ContentReport& r) {
    Json j;
    j["D_used"] = r.D_used;
    j["M_av_numeric"] = r.M_av_numeric;
    j["M_av_closed"] = r.M_av_closed;
    j["relative_gap"] = r.M_av_closed != 0 ? std::abs(r.M_av_numeric - r.M_av_closed) / std::abs(r.M_av_closed) : 0.0;
    j["oscillation_ratio"] = r.oscillation_ratio;
    j["T_used"] = r.T_used;
    return j;
}

Json validation_to_json(const ValidationReport& r) {
    Json j;
    j["valid"] = r.valid();
    j["scaling_sum"] = rational_string(r.scaling_sum);
    j["gap_sum"] = rational_string(r.gap_sum);
    Json v = Json::array();
    for (const auto& x : r.violations) v.push_back(Json{{"code", x.code}, {"message", x.message}});
    j["violations"] = std::move(v);
    return j;
}

std::string decimal15(const Rational& q) {
    if (q == 0) return "0.00000000000000e+00";
    auto [digits, e] = round15(abs(q));
    char exp[32];
    std::snprintf(exp, sizeof exp, "e%c%02ld", e < 0 ? '-' : '+', e < 0 ? -e : e);
    std::string out = q < 0 ? "-" : "";
    out += digits.substr(0, 1) + "." + digits.substr(1) + exp;
    return out;
}

std::string decimal15(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return decimal15(Rational(x));
}

std::string rational_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace padic
