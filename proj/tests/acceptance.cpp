// Acceptance run: one PASS/FAIL line per criterion.
// Usage: sasolve_acceptance <models dir> [<sasolve executable>]

#include "properties.hpp"
#include "sasolve/classify.hpp"
#include "sasolve/system_file.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace sasolve;

namespace {

std::string models;
std::string cli;

struct Check {
    bool ok = true;
    std::ostringstream log;

    void expect(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            log << "    failed: " << what << "\n";
        }
    }
};

SystemFile model(const std::string& name) { return load_system_file(models + "/" + name + ".sys"); }

std::set<std::string> canonical(const std::vector<Polynomial>& ps)
{
    std::set<std::string> out;
    for (const auto& p : ps) out.insert(p.primitive().to_string());
    return out;
}

std::string run_cli(const std::string& args)
{
    if (cli.empty()) return {};
    std::string out;
    if (FILE* p = popen((cli + " " + args + " 2>&1").c_str(), "r")) {
        char buf[4096];
        while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
        pclose(p);
    }
    return out;
}

Rational value_at(const Polynomial& p, const std::vector<Rational>& pt)
{
    std::map<std::size_t, Rational> at;
    for (std::size_t i = 0; i < pt.size(); ++i) at[i] = pt[i];
    return p.evaluate(at).constant_value();
}

// Criterion 1: the constrained system has one real solution; the branch where 2x - y = 0
// contributes nothing.
void criterion1(Check& c)
{
    auto f = model("sec22");
    CountOptions co;
    co.transform = f.transform;
    auto r = count_real_solutions(f.system, co);
    c.expect(r.total == 1, "total " + std::to_string(r.total) + ", expected 1");

    auto subs = split_nonstrict(f.system);
    c.expect(subs.size() == 2, "two nonstrict parts");
    for (std::size_t k = 0; k < subs.size(); ++k) {
        if (subs[k].equations.size() != 3) continue;
        const std::string prefix = "s" + std::to_string(k + 1) + ".";
        int n = 0;
        for (const auto& b : r.per_branch)
            if (b.id.rfind(prefix, 0) == 0) n += b.count;
        c.expect(n == 0, "equation part counts " + std::to_string(n));
    }

    // With y = 2x the equations become x^3 - 80x^2 and 4x^2 - 2x - 1, which share no root.
    auto o = make_order({"x"});
    auto g = gcd(parse_polynomial("x^3 - 80*x^2", o), parse_polynomial("4*x^2 - 2*x - 1", o));
    c.expect(g.is_constant(), "substituted equations are coprime");

    if (!cli.empty()) {
        auto out = run_cli("count " + models + "/sec22.sys");
        c.expect(out.find("total 1") != std::string::npos, "cli count output: " + out);
    }
}

// Criterion 2: intermediates of the same system under x <- x + y.
void criterion2(Check& c)
{
    auto f = model("sec22");
    auto subs = split_nonstrict(f.system);
    const auto& ord = f.system.order;
    const SemiAlgebraicSystem* strict = nullptr;
    for (const auto& s : subs)
        if (s.equations.size() == 2) strict = &s;
    c.expect(strict != nullptr, "strict part present");
    if (!strict) return;
    std::vector<TriangularSystem> full;
    for (auto& b : decompose(strict->equations, strict->nonzeros, ord))
        if (covers_all_variables(b.tset, *ord)) full.push_back(b);
    QuasiLinearOptions qo;
    qo.explicit_coefficients = {1};
    qo.allow_identity = false;
    auto ql = quasi_linearize_all(full, ord, qo);
    c.expect(ql.branches.size() == 1, "one quasi-linear branch");
    if (ql.branches.size() != 1) return;
    auto r = reduce_branch_to_univariate(ql.branches[0], *strict, ql.transform);

    auto P = [&](const std::string& s) { return parse_polynomial(s, ord); };
    auto T1 = P("x^6 - 83*x^4 - 360*x^3 + 1083*x^2 + 1320*x + 359");
    c.expect(ql.branches[0].param.first == T1, "T1 = " + ql.branches[0].param.first.to_string());
    c.expect(r.sas.equation == T1, "reduced equation = T1");
    c.expect(r.sas.constraints.size() == 2, "two constraint images");
    if (r.sas.constraints.size() == 2) {
        c.expect(r.sas.constraints[0] == P("-3*x^5 - 26*x^4 + 86*x^3 + 528*x^2 - 1011*x - 630"),
                 "G' = " + r.sas.constraints[0].to_string());
        c.expect(r.sas.constraints[1] == P("15*x^5 + 70*x^4 - 206*x^3 - 592*x^2 + 1439*x - 630"),
                 "H' = " + r.sas.constraints[1].to_string());
    }
    // Same remainders by hand: G = -J*I, H = 2*x*I^2 - J*I reduced modulo T1.
    auto I = P("3*x^2 + 8*x - 35"), J = P("x^3 + 6*x^2 - 33*x - 18");
    auto x = P("x");
    const std::size_t xv = *ord->index_of("x");
    c.expect(prem((J * I).scaled(-1), T1, xv) == P("-3*x^5 - 26*x^4 + 86*x^3 + 528*x^2 - 1011*x - 630"), "G mod T1");
    c.expect(prem((x * I * I).scaled(2) - J * I, T1, xv) == P("15*x^5 + 70*x^4 - 206*x^3 - 592*x^2 + 1439*x - 630"),
             "H mod T1");

    auto u = UPoly::from_polynomial(T1, xv);
    c.expect(sturm_count(u, Rational(-5), Rational(-9, 2)) == 0, "Sturm count on (-5, -9/2)");
    c.expect(sturm_count(u, Rational(5, 2), Rational(3)) == 1, "Sturm count on (5/2, 3)");
}

// Criterion 3: parametric border and the nine reference sample counts.
void criterion3(Check& c)
{
    auto f = model("sec32");
    const auto& ord = f.system.order;
    ClassifyOptions opt;
    opt.count.transform = f.transform;
    opt.aux = f.aux;
    opt.samples = f.samples;
    auto rc = classify_parametric(f.system, opt);
    auto P = [&](const std::string& s) { return parse_polynomial(s, ord); };
    auto expected = canonical({P("u"), P("32*u - 27"), P("32*u^2 - 67*u + 64"), P("s^6 - 3*s^4 - 8*u*s^2 + 3*s^2 - 1")});
    auto got = canonical(rc.border.border_factors());
    c.expect(got == expected, "border factor set");
    const int reference[] = {0, 1, 2, 0, 1, 2, 0, 1, 2};
    c.expect(rc.regions.size() == 9, "nine regions");
    for (std::size_t i = 0; i < rc.regions.size() && i < 9; ++i)
        c.expect(rc.regions[i].count == reference[i],
                 "sample " + std::to_string(i + 1) + " count " + std::to_string(rc.regions[i].count));
}

// Criterion 4: arms race game.
void criterion4(Check& c)
{
    auto f = model("armsrace");
    const auto& ord = f.system.order;
    auto P = [&](const std::string& s) { return parse_polynomial(s, ord); };
    std::vector<Polynomial> reference{P("(d - 2*m - 1)*cL^3 + (2*m*d + m)*cL^2 + (d*m^2 - 2*m^2 - m)*cL + m^2"),
                                    P("(-m - 1)*cs - m*cL + d*cL + d*m + m"), P("(-cL - m)*cH + cL^2 + m")};

    auto branches = decompose(f.system.equations, f.system.nonzeros, ord);
    const TriangularSystem* main = nullptr;
    for (const auto& b : branches)
        if (b.is_main_branch && !main) main = &b;
    c.expect(main != nullptr, "main branch present");
    if (!main) return;
    bool equivalent = main->tset.polys.size() == 3;
    for (const auto& p : reference) equivalent = equivalent && chain_prem(p, main->tset).is_zero();
    for (const auto& p : main->tset.polys) equivalent = equivalent && chain_prem(p, reference).is_zero();
    c.expect(equivalent, "main branch is zero-equivalent to [T1, T2, T3]");

    // Region A point (d, m) = (3, 1/2): check the defining inequalities, then the bound.
    const std::vector<Rational> a{3, Rational(1, 2)};
    const std::size_t cl = *ord->index_of("cL");
    auto coeffs = main->tset.polys.front().coefficients(cl);
    c.expect(coeffs.size() == 4, "T1 cubic in cL");
    c.expect(value_at(P("d - 2*m - 1"), a) > 0 && value_at(P("2*m*d + m"), a) > 0 &&
                 value_at(P("m^2*d - 2*m^2 - m"), a) < 0 && value_at(P("m^2"), a) > 0,
             "sample lies in region A");
    std::vector<int> signs;
    for (std::size_t i = coeffs.size(); i-- > 0;) signs.push_back(sign(value_at(coeffs[i], a)));
    c.expect(descartes_bound(signs) == 2, "Descartes bound in region A");

    CountOptions co;
    co.transform = f.transform;
    auto an = analyze_parametric(f.system, co);
    auto R1 = P("8*d^3*m^2 - 48*d^2*m^2 + 96*d*m^2 - 64*m^2 - 71*d^2*m + 104*d*m - 32*m + 4*d - 4");
    auto expected = canonical({P("d"), P("m"), P("d - 1"), P("m + 1"), P("2*d - m - 1"), P("d - 2*m - 1"), R1});
    c.expect(canonical(an.border.border_factors()) == expected, "border factor set");

    // Grid points away from B = 0, classified by exact signs of the reference conditions.
    auto R2 = f.aux.back().lifted(ord);
    auto B = an.border.squarefree_product();
    int hits[4] = {0, 0, 0, 0};
    for (int i = 1; i <= 80; ++i)
        for (int j = 1; j <= 20; ++j) {
            std::vector<Rational> pt{Rational(i, 33), Rational(j, 64)};
            if (value_at(B, pt) == 0 || value_at(R2, pt) == 0) continue;
            const int d1 = sign(value_at(P("d - 1"), pt)), e = sign(value_at(P("2*d - m - 1"), pt));
            const int r1 = sign(value_at(R1, pt)), r2 = sign(value_at(R2, pt));
            int predicted = 0;
            if (d1 < 0 && e > 0 && r1 < 0) predicted = 1;
            else if (d1 > 0 && r1 > 0 && r2 < 0) predicted = 2;
            else if (d1 < 0 && r1 > 0) predicted = 3;
            if (predicted == 0) continue;
            int n = count_real_solutions(specialize(f.system, pt), co).total;
            ++hits[predicted];
            if (n != predicted) {
                std::ostringstream os;
                os << "(" << pt[0] << ", " << pt[1] << "): count " << n << ", conditions give " << predicted;
                c.expect(false, os.str());
            }
        }
    c.expect(hits[1] > 0 && hits[2] > 0 && hits[3] > 0, "every reference case sampled");
    c.log << "    grid points per case: " << hits[1] << " / " << hits[2] << " / " << hits[3] << "\n";
}

// Criterion 5: exchange economy.
void criterion5(Check& c)
{
    auto f = model("exchange");
    const auto& ord = f.system.order;
    CountOptions co;
    co.transform = f.transform;
    auto an = analyze_parametric(f.system, co);
    auto sq = an.border.squarefree_product();
    c.expect(sq.total_degree() == 25, "squarefree border degree " + std::to_string(sq.total_degree()));
    c.expect(sq.size() == 249, "squarefree border terms " + std::to_string(sq.size()));
    auto R = f.aux.front().lifted(ord);
    c.expect(value_at(R, {10, 10}) == -11390625, "R(10, 10)");
    bool r_is_factor = false;
    for (const auto& p : an.border.border_factors()) r_is_factor = r_is_factor || p.primitive() == R.primitive();
    c.expect(r_is_factor, "R is a border factor");
    int n = count_real_solutions(specialize(f.system, {10, 10}), co).total;
    c.expect(n == 3, "count at (10, 10) is " + std::to_string(n));
}

// Criterion 6: property suites.
void criterion6(Check& c)
{
    auto report = [&](const char* name, const props::Result& r, int expected) {
        c.log << "    " << name << ": " << r.checked << " checked, " << r.failures << " failed\n";
        c.expect(r.checked == expected && r.ok(), std::string(name) + " " + r.first_failure);
    };
    report("pseudo-division identity", props::pseudo_division_identity(), 500);
    report("isolation vs Sturm", props::isolation_matches_sturm(), 200);
    report("resultant vanishing", props::resultant_vanishes_iff_common_factor(), 200);
    report("discriminant vanishing", props::discriminant_vanishes_iff_multiple_root(), 200);
    report("quasi-linearization count", props::quasi_linearization_preserves_count(), 20);
    report("nonstrict split sums", props::split_partition_sums(), 20);
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc < 2) {
        std::cerr << "usage: sasolve_acceptance <models dir> [<sasolve executable>]\n";
        return 2;
    }
    models = argv[1];
    if (argc > 2) cli = argv[2];

    struct Criterion {
        int id;
        const char* title;
        double budget;
        std::function<void(Check&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "constrained count equals 1", 5, criterion1},
        {2, "quasi-linear intermediates and Sturm counts", 5, criterion2},
        {3, "parametric border and nine sample counts", 30, criterion3},
        {4, "arms race decomposition, bound, border and counts", 120, criterion4},
        {5, "exchange economy border and count", 600, criterion5},
        {6, "property suites", 1200, criterion6},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        Check c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            cr.run(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.expect(secs < cr.budget, "runtime over budget");
        std::ostringstream line;
        line.precision(3);
        line << (c.ok ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.title << " (" << std::fixed << secs
             << " s)";
        std::cout << line.str() << "\n" << c.log.str() << std::flush;
        if (!c.ok) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
