// Command-line front end: exact values of the equivariant elliptic theory on
// representation spheres, formal-group and subgroup reports, and the local
// Cousin-model verification suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "torell/cohomology.hpp"
#include "torell/cousin.hpp"
#include "torell/io.hpp"
#include "torell/selftest.hpp"

using nlohmann::json;
using namespace torell;

namespace {

constexpr const char* kSchema = "torell/1";

json dir_json(const Direction& d) { return json::array({d.lambda, d.mu}); }

json divisor_json(const SurfaceDivisor& D) {
    json arr = json::array();
    for (const auto& [key, v] : D.terms()) {
        json e;
        e["dir"] = dir_json(key.first);
        e["j"] = key.second;
        e["coeff"] = v;
        arr.push_back(e);
    }
    return arr;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

struct Options {
    std::string curve = "0,0,0,1,0";
    int prec = 10;
    int polecap = 2;
    i64 budget = 50;
    std::string format = "json";
    bool tsv() const { return format == "tsv"; }
};

int cmd_value(const Options& opt, const std::string& rep_str, const std::string& sign_str) {
    const Representation rep = parse_representation(rep_str);
    int sign;
    if (sign_str == "+" || sign_str == "+1")
        sign = +1;
    else if (sign_str == "-" || sign_str == "-1")
        sign = -1;
    else
        throw ParseError("sign must be + or -", 0);
    const SurfaceDivisor D = divisor_of_rep(rep);
    const CohomologyTriple t = sphere_triple(rep, sign);
    const TheoryValue v = sphere_value(rep, sign);
    if (opt.tsv()) {
        std::cout << "even\todd\th0\th1\th2\tD2\n"
                  << v.even << "\t" << v.odd << "\t" << t.h0 << "\t" << t.h1 << "\t" << t.h2
                  << "\t" << self_intersection(D) << "\n";
        return 0;
    }
    json out;
    out["schema"] = kSchema;
    out["sign"] = sign;
    out["even"] = v.even;
    out["odd"] = v.odd;
    out["h"] = json::array({t.h0, t.h1, t.h2});
    out["D2"] = self_intersection(D);
    out["divisor"] = divisor_json(D);
    emit(out);
    return 0;
}

int cmd_fgl_log(const Options& opt) {
    const Curve c = parse_curve(opt.curve);
    const FormalGroup fg(c, opt.prec);
    if (opt.tsv()) {
        std::cout << "k\talpha\n";
        for (int k = 1; k < opt.prec; ++k)
            std::cout << k << "\t" << q_str(fg.log().coeff(k)) << "\n";
        return 0;
    }
    json out;
    out["schema"] = kSchema;
    out["curve"] = opt.curve;
    out["prec"] = opt.prec;
    json coeffs = json::array();
    for (int k = 1; k < opt.prec; ++k) {
        json e;
        e["k"] = k;
        e["alpha"] = q_str(fg.log().coeff(k));
        coeffs.push_back(e);
    }
    out["log"] = coeffs;
    emit(out);
    return 0;
}

int cmd_fgl_add(const Options& opt) {
    const Curve c = parse_curve(opt.curve);
    const FormalGroup fg(c, opt.prec);
    if (opt.tsv()) {
        std::cout << "t1\tt2\tcoeff\n";
        for (const auto& [e, v] : fg.law().terms())
            std::cout << e.first << "\t" << e.second << "\t" << q_str(v) << "\n";
        return 0;
    }
    json out;
    out["schema"] = kSchema;
    out["curve"] = opt.curve;
    out["prec"] = opt.prec;
    out["series"] = format_bi(fg.law());
    emit(out);
    return 0;
}

int cmd_fgl_nseries(const Options& opt, i64 n) {
    const Curve c = parse_curve(opt.curve);
    const FormalGroup fg(c, opt.prec);
    const UniSeries& s = fg.n_series(n);
    if (opt.tsv()) {
        std::cout << "k\tcoeff\n";
        for (int k = 0; k < s.precision(); ++k)
            if (s.coeff(k) != 0)
                std::cout << k << "\t" << q_str(s.coeff(k)) << "\n";
        return 0;
    }
    json out;
    out["schema"] = kSchema;
    out["n"] = n;
    out["series"] = format_uni(s);
    emit(out);
    return 0;
}

int cmd_fgl_fundrel(const Options& opt, const std::string& gens_str, const std::string& dir_str) {
    const Curve c = parse_curve(opt.curve);
    const FormalGroup fg(c, opt.prec);
    const FiniteSubgroup F = FiniteSubgroup::from_generators(parse_generators(gens_str));
    const SubgroupProfile p = splitting_pair(F, opt.budget);
    const Direction d = parse_direction(dir_str);
    const bool holds = check_log_coord_relation(fg, p, d);
    if (opt.tsv())
        std::cout << "holds\n" << (holds ? "true" : "false") << "\n";
    else {
        json out;
        out["schema"] = kSchema;
        out["holds"] = holds;
        out["dir"] = dir_json(d);
        out["subgroup_order"] = F.order();
        emit(out);
    }
    return holds ? 0 : 4;
}

int cmd_subgroup(const Options& opt, const std::string& gens_str) {
    const FiniteSubgroup F = FiniteSubgroup::from_generators(parse_generators(gens_str));
    const SubgroupProfile p = splitting_pair(F, opt.budget);
    const std::vector<Direction> grid = direction_grid(3);
    if (opt.tsv()) {
        std::cout << "lambda\tmu\tn\tr\ts\n";
        for (const Direction& d : grid) {
            const auto [r, s] = solve_character_eq(p, d);
            std::cout << d.lambda << "\t" << d.mu << "\t" << n_index(F, d) << "\t" << r << "\t"
                      << s << "\n";
        }
        return 0;
    }
    json out;
    out["schema"] = kSchema;
    out["order"] = F.order();
    json gens = json::array();
    for (const QmodZ2& g : F.generators())
        gens.push_back(format_point(g));
    out["generators"] = gens;
    const auto h = F.annihilator_hnf();
    out["annihilator"] = json::array({json::array({h[0], h[1]}), json::array({0, h[2]})});
    json ntab = json::array();
    for (const Direction& d : grid) {
        json e;
        e["dir"] = dir_json(d);
        e["n"] = n_index(F, d);
        ntab.push_back(e);
    }
    out["n_table"] = ntab;
    json split;
    split["A"] = {{"dir", dir_json(p.A)}, {"n", p.nA}};
    split["B"] = {{"dir", dir_json(p.B)}, {"n", p.nB}};
    out["splitting"] = split;
    json rstab = json::array();
    for (const Direction& d : grid) {
        const auto [r, s] = solve_character_eq(p, d);
        json e;
        e["dir"] = dir_json(d);
        e["r"] = r;
        e["s"] = s;
        rstab.push_back(e);
    }
    out["rs_table"] = rstab;
    emit(out);
    return 0;
}

int cmd_divisor(const Options& opt, const std::string& rep_str) {
    const Representation rep = parse_representation(rep_str);
    const SurfaceDivisor D = divisor_of_rep(rep);
    if (opt.tsv()) {
        std::cout << "lambda\tmu\tj\tcoeff\n";
        for (const auto& [key, v] : D.terms())
            std::cout << key.first.lambda << "\t" << key.first.mu << "\t" << key.second << "\t"
                      << v << "\n";
        return 0;
    }
    json out;
    out["schema"] = kSchema;
    out["divisor"] = divisor_json(D);
    out["D2"] = self_intersection(D);
    json degs = json::array();
    for (const Direction& d : D.support_directions()) {
        json e;
        e["dir"] = dir_json(d);
        e["degree"] = direction_degree(D, d);
        degs.push_back(e);
    }
    out["degrees"] = degs;
    emit(out);
    return 0;
}

int cmd_intersect(const Options& opt, const std::string& a_str, const std::string& b_str) {
    const SurfaceDivisor A = parse_divisor(a_str);
    if (b_str.empty()) {
        const i64 v = self_intersection(A);
        if (opt.tsv())
            std::cout << "self_intersection\n" << v << "\n";
        else {
            json out;
            out["schema"] = kSchema;
            out["self_intersection"] = v;
            emit(out);
        }
        return 0;
    }
    const SurfaceDivisor B = parse_divisor(b_str);
    const i64 v = intersection_number(A, B);
    if (opt.tsv())
        std::cout << "intersection\n" << v << "\n";
    else {
        json out;
        out["schema"] = kSchema;
        out["intersection"] = v;
        emit(out);
    }
    return 0;
}

int cmd_cousin(const Options& opt, const std::string& dirs_str, int polecap, int prec) {
    const Curve c = parse_curve(opt.curve);
    const std::vector<Direction> dirs = parse_direction_list(dirs_str);
    const Window w(c, dirs, polecap, prec);
    const ExactnessReport rep = exactness_report(w);
    if (opt.tsv()) {
        std::cout << "check\tpass\n";
        for (const CheckResult& ck : rep.checks)
            std::cout << ck.name << "\t" << (ck.pass ? "true" : "false") << "\n";
        return rep.all_pass() ? 0 : 4;
    }
    json out;
    out["schema"] = kSchema;
    json win;
    json darr = json::array();
    for (const Direction& d : rep.dirs)
        darr.push_back(dir_json(d));
    win["directions"] = darr;
    win["polecap"] = rep.pole_cap;
    win["prec"] = rep.prec;
    win["convention"] =
        "residues oriented by dt1^dt2; complement coordinates satisfy det(d, c(d)) = +1";
    out["window"] = win;
    json ranks;
    ranks["d0"] = rep.rank_d0;
    ranks["d1"] = rep.rank_d1;
    ranks["ker_d1_faithful"] = rep.ker_d1_faithful;
    ranks["domain_dim"] = rep.domain_dim;
    ranks["h1_dim"] = rep.h1_dim;
    ranks["h2_dim"] = rep.h2_dim;
    out["ranks"] = ranks;
    json checks = json::array();
    for (const CheckResult& ck : rep.checks) {
        json e;
        e["name"] = ck.name;
        e["pass"] = ck.pass;
        checks.push_back(e);
    }
    out["checks"] = checks;
    emit(out);
    return rep.all_pass() ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact rational equivariant elliptic cohomology on spheres of "
                 "2-torus representations"};
    app.require_subcommand(1);
    app.set_config("--config");

    Options opt;
    app.add_option("--curve", opt.curve, "Weierstrass coefficients a1,a2,a3,a4,a6")
        ->capture_default_str();
    app.add_option("--prec", opt.prec, "series truncation degree")
        ->envname("TORELL_PREC")
        ->capture_default_str();
    app.add_option("--polecap", opt.polecap, "pole-order cap for the local model")
        ->capture_default_str();
    app.add_option("--budget", opt.budget, "search/enumeration budget")
        ->capture_default_str();
    app.add_option("--format", opt.format, "output format: json or tsv")
        ->check(CLI::IsMember({"json", "tsv"}))
        ->capture_default_str();

    auto* value = app.add_subcommand("value", "theory value on a representation sphere");
    value->fallthrough();
    std::string rep_str, sign_str = "+";
    value->add_option("--rep", rep_str, "representation, e.g. (1,0):1,(0,1):1")->required();
    value->add_option("--sign", sign_str, "+ for S^V, - for S^-V");

    auto* fgl = app.add_subcommand("fgl", "formal group computations");
    fgl->fallthrough();
    fgl->require_subcommand(1);
    auto* fgl_log = fgl->add_subcommand("log", "logarithm coefficients");
    fgl_log->fallthrough();
    auto* fgl_add = fgl->add_subcommand("add", "the group law series");
    fgl_add->fallthrough();
    auto* fgl_nser = fgl->add_subcommand("nseries", "multiplication-by-n series");
    fgl_nser->fallthrough();
    i64 nser_n = 2;
    fgl_nser->add_option("--n", nser_n, "the multiplier n")->required();
    auto* fgl_rel = fgl->add_subcommand("fundrel", "completed-coordinate relation check");
    fgl_rel->fallthrough();
    std::string rel_gens, rel_dir;
    fgl_rel->add_option("--subgroup", rel_gens, "finite subgroup generators");
    fgl_rel->add_option("--dir", rel_dir, "direction lambda,mu")->required();

    auto* subgroup = app.add_subcommand("subgroup", "canonical subgroup report");
    subgroup->fallthrough();
    std::string sub_gens;
    subgroup->add_option("--gens", sub_gens, "generators, e.g. 1/2,0;0,1/2");

    auto* divisor = app.add_subcommand("divisor", "divisor of a representation");
    divisor->fallthrough();
    std::string div_rep;
    divisor->add_option("--rep", div_rep, "representation")->required();

    auto* intersect = app.add_subcommand("intersect", "intersection numbers");
    intersect->fallthrough();
    std::string int_a, int_b;
    intersect->add_option("--a", int_a, "first divisor")->required();
    intersect->add_option("--b", int_b, "second divisor (self-intersection when absent)");

    auto* cousin = app.add_subcommand("cousin", "local Cousin-model exactness report");
    cousin->fallthrough();
    std::string cousin_dirs;
    cousin->add_option("--dirs", cousin_dirs, "window directions, e.g. (1,0),(0,1)")->required();

    auto* selftest = app.add_subcommand("selftest", "run the full verification suite");
    selftest->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*value)
            return cmd_value(opt, rep_str, sign_str);
        if (*fgl_log)
            return cmd_fgl_log(opt);
        if (*fgl_add)
            return cmd_fgl_add(opt);
        if (*fgl_nser)
            return cmd_fgl_nseries(opt, nser_n);
        if (*fgl_rel)
            return cmd_fgl_fundrel(opt, rel_gens, rel_dir);
        if (*subgroup)
            return cmd_subgroup(opt, sub_gens);
        if (*divisor)
            return cmd_divisor(opt, div_rep);
        if (*intersect)
            return cmd_intersect(opt, int_a, int_b);
        if (*cousin)
            return cmd_cousin(opt, cousin_dirs, opt.polecap, opt.prec);
        if (*selftest)
            return run_acceptance(std::cout, std::cerr) ? 0 : 4;
    } catch (const ParseError& e) {
        std::cerr << "parse error at position " << e.pos << ": " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
