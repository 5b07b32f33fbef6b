#include "sasolve/classify.hpp"
#include "sasolve/parse.hpp"
#include "sasolve/system_file.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

using namespace sasolve;

namespace {

std::string model_path(const std::string& name)
{
    const char* dir = std::getenv("SASOLVE_MODELS");
    return std::string(dir ? dir : "models") + "/" + name + ".sys";
}

std::set<std::string> canonical(const std::vector<Polynomial>& ps)
{
    std::set<std::string> out;
    for (const auto& p : ps) out.insert(p.primitive().to_string());
    return out;
}

// Direct count for x^3 - u*y^2 = 0, y^2 - 2x - 1 = 0, x != y, y + s > 0: eliminate
// x = (y^2 - 1)/2 and count roots of (y^2 - 1)^3 - 8*u*y^2 above -s off y^2 - 2y - 1.
int eliminated_count(const Rational& s, const Rational& u)
{
    auto o = make_order({"y"});
    auto g = UPoly::from_univariate(parse_polynomial("(y^2 - 1)^3 - 8*(" + u.get_str() + ")*y^2", o)).squarefree();
    auto h = UPoly::from_univariate(parse_polynomial("y^2 - 2*y - 1", o));
    g = g / UPoly::gcd(g, h);
    if (g.degree() <= 0) return 0;
    return sturm_count(g, Rational(-s), std::nullopt);
}

ClassifyOptions file_options(const SystemFile& f)
{
    ClassifyOptions opt;
    opt.count.transform = f.transform;
    opt.count.seed = f.seed.value_or(1);
    opt.aux = f.aux;
    opt.samples = f.samples;
    return opt;
}

}  // namespace

TEST(Classify, SectionThreeTwoBorderAndSamples)
{
    auto f = load_system_file(model_path("sec32"));
    const auto& ord = f.system.order;
    auto rc = classify_parametric(f.system, file_options(f));
    auto P = [&](const char* s) { return parse_polynomial(s, ord); };
    EXPECT_EQ(canonical(rc.border.border_factors()),
              canonical({P("u"), P("32*u - 27"), P("32*u^2 - 67*u + 64"), P("s^6 - 3*s^4 - 8*u*s^2 + 3*s^2 - 1")}));
    ASSERT_EQ(rc.regions.size(), 9U);
    const int expected[] = {0, 1, 2, 0, 1, 2, 0, 1, 2};
    for (std::size_t i = 0; i < 9; ++i) {
        EXPECT_EQ(rc.regions[i].count, expected[i]) << i;
        EXPECT_EQ(rc.regions[i].count, eliminated_count(rc.regions[i].sample[0], rc.regions[i].sample[1])) << i;
    }
}

TEST(Classify, FarPointMatchesElimination)
{
    // R = s^6 - 3s^4 - 8us^2 + 3s^2 - 1 < 0 and s < 0 here, yet y ~ 4.18, x ~ 8.24 is a solution.
    auto f = load_system_file(model_path("sec32"));
    CountOptions co;
    co.transform = f.transform;
    auto n = count_real_solutions(specialize(f.system, {-4, 32}), co).total;
    EXPECT_EQ(n, eliminated_count(-4, 32));
    EXPECT_EQ(n, 1);
}

TEST(Classify, SectionThreeTwoAutomaticSamplesMatchElimination)
{
    auto f = load_system_file(model_path("sec32"));
    auto opt = file_options(f);
    opt.samples.clear();
    auto rc = classify_parametric(f.system, opt);
    EXPECT_GE(rc.regions.size(), 9U);
    std::set<int> counts;
    for (const auto& r : rc.regions) {
        for (std::size_t i = 0; i < rc.border.factors.size(); ++i) EXPECT_NE(r.signs[i], 0);
        EXPECT_EQ(r.count, eliminated_count(r.sample[0], r.sample[1]));
        counts.insert(r.count);
    }
    EXPECT_EQ(counts, (std::set<int>{0, 1, 2}));
}

TEST(Classify, SignVectorDeterminesCount)
{
    auto f = load_system_file(model_path("armsrace"));
    auto opt = file_options(f);
    ParameterBox box = ParameterBox::unbounded(2);
    box.lo = {Rational(0), Rational(0)};
    box.hi = {Rational(10), Rational(10)};
    opt.box = box;
    auto rc = classify_parametric(f.system, opt);
    std::set<int> counts;
    for (std::size_t i = 0; i < rc.regions.size(); ++i) {
        counts.insert(rc.regions[i].count);
        for (std::size_t j = i + 1; j < rc.regions.size(); ++j)
            EXPECT_FALSE(rc.regions[i].signs == rc.regions[j].signs && rc.regions[i].count != rc.regions[j].count);
    }
    EXPECT_EQ(counts, (std::set<int>{0, 1, 2, 3}));
}

TEST(Classify, SingleThreadMatchesParallel)
{
    auto f = load_system_file(model_path("sec32"));
    auto a = file_options(f), b = file_options(f);
    a.threads = 1;
    b.threads = 4;
    auto ra = classify_parametric(f.system, a), rb = classify_parametric(f.system, b);
    ASSERT_EQ(ra.regions.size(), rb.regions.size());
    for (std::size_t i = 0; i < ra.regions.size(); ++i) {
        EXPECT_EQ(ra.regions[i].count, rb.regions[i].count);
        EXPECT_EQ(ra.regions[i].signs, rb.regions[i].signs);
    }
}

TEST(Classify, OneParameterLine)
{
    // x^2 = a has 2, 0 solutions for a > 0, a < 0.
    auto o = make_order({"a", "x"}, 1);
    SemiAlgebraicSystem s{o, {parse_polynomial("x^2 - a", o)}, {}, {}, {}};
    auto rc = classify_parametric(s);
    std::map<int, int> by_sign;
    for (const auto& r : rc.regions) by_sign[r.signs.at(0)] = r.count;
    EXPECT_EQ(by_sign[1], 2);
    EXPECT_EQ(by_sign[-1], 0);
}

TEST(Classify, BoundaryDepthZeroIsUnresolved)
{
    auto f = load_system_file(model_path("sec32"));
    auto g = parse_polynomial("32*u - 27", f.system.order);
    auto rc = classify_boundary(f.system, g, 0);
    EXPECT_TRUE(rc.unresolved);
    EXPECT_NE(rc.guard_description.find("= 0"), std::string::npos);
}

TEST(Classify, RejectsParameterFreeSystem)
{
    auto o = make_order({"x"});
    SemiAlgebraicSystem s{o, {parse_polynomial("x^2 - 2", o)}, {}, {}, {}};
    EXPECT_THROW(classify_parametric(s), InputError);
}

TEST(Sampling, CoversEveryCellOfALine)
{
    auto o = make_order({"a"}, 1);
    std::vector<Polynomial> fs{parse_polynomial("a^2 - 2", o), parse_polynomial("a - 1", o)};
    auto pts = sample_parameter_regions(fs, o, 1, ParameterBox::unbounded(1));
    std::set<std::pair<int, int>> cells;
    for (const auto& p : pts) {
        int s1 = sign(p[0] * p[0] - 2), s2 = sign(p[0] - 1);
        EXPECT_NE(s1, 0);
        EXPECT_NE(s2, 0);
        cells.insert({s1, s2});
    }
    // Cells: a < -sqrt2, (-sqrt2, 1), (1, sqrt2), a > sqrt2.
    EXPECT_GE(pts.size(), 4U);
    EXPECT_EQ(cells.size(), 4U);
}

TEST(Count, DuplicateBranchesCountedOnce)
{
    // Same solution set described twice through a factor shared by both equations.
    auto o = make_order({"x", "y"});
    SemiAlgebraicSystem s{o, {parse_polynomial("(x - 1)*(x + 1)", o), parse_polynomial("(y - x)*(y + x)", o)}, {}, {}, {}};
    EXPECT_EQ(count_real_solutions(s).total, 4);
    s.positives.push_back(parse_polynomial("y", o));
    EXPECT_EQ(count_real_solutions(s).total, 2);
}
