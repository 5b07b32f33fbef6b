// Command-line front end: decompose, count, classify and isolate.

#include "sasolve/classify.hpp"
#include "sasolve/report.hpp"
#include "sasolve/system_file.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <regex>
#include <set>

using namespace sasolve;

namespace {

constexpr int exit_input = 2;
constexpr int exit_limit = 3;

std::vector<std::string> split_commas(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto t = detail::trim(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

std::vector<Integer> parse_transform(const std::string& s)
{
    std::vector<Integer> out;
    for (const auto& t : split_commas(s)) {
        Integer k;
        if (k.set_str(t, 10) != 0) throw InputError("invalid transform coefficient '" + t + "'");
        out.push_back(k);
    }
    return out;
}

std::vector<Rational> parse_point(const std::string& s)
{
    std::vector<Rational> out;
    for (const auto& t : split_commas(s)) out.push_back(parse_rational(t));
    return out;
}

// "lo:hi" per parameter, comma separated; an empty side is unbounded.
ParameterBox parse_box(const std::string& s, std::size_t dims)
{
    auto parts = split_commas(s);
    if (parts.size() != dims)
        throw InputError("--box needs " + std::to_string(dims) + " ranges, got " + std::to_string(parts.size()));
    ParameterBox box = ParameterBox::unbounded(dims);
    for (std::size_t i = 0; i < dims; ++i) {
        auto colon = parts[i].find(':');
        if (colon == std::string::npos) throw InputError("--box range '" + parts[i] + "' must be lo:hi");
        auto lo = detail::trim(parts[i].substr(0, colon)), hi = detail::trim(parts[i].substr(colon + 1));
        if (!lo.empty()) box.lo[i] = parse_rational(lo);
        if (!hi.empty()) box.hi[i] = parse_rational(hi);
        if (box.lo[i] && box.hi[i] && !(*box.lo[i] < *box.hi[i])) throw InputError("--box range '" + parts[i] + "' is empty");
    }
    return box;
}

char sign_char(int s) { return s > 0 ? '+' : s < 0 ? '-' : '0'; }

void print_classification(const RegionClassification& rc, std::ostream& os, const std::string& indent = "")
{
    if (rc.unresolved) {
        os << indent << "unresolved: " << rc.guard_description << "\n";
        return;
    }
    const auto& ord = *rc.order;
    if (!rc.transform.coefficients.empty()) os << indent << "transform: " << rc.transform.describe(ord) << "\n";
    auto polys = rc.sign_polynomials();
    os << indent << "sign polynomials:\n";
    for (std::size_t i = 0; i < polys.size(); ++i) {
        os << indent << "  [" << i + 1 << "] " << polys[i];
        if (i < rc.border.factors.size()) {
            os << "  (" << (rc.border.factors[i].is_border() ? "border" : "guard") << ":";
            for (auto s : rc.border.factors[i].sources) os << " " << to_string(s);
            os << ")";
        } else {
            os << "  (auxiliary)";
        }
        os << "\n";
    }
    os << indent << "valid when: " << rc.guard_description << "\n";
    os << indent << "regions:\n";
    for (const auto& r : rc.regions) {
        os << indent << "  (";
        for (std::size_t i = 0; i < r.sample.size(); ++i) os << (i ? ", " : "") << r.sample[i];
        os << ")  ";
        for (int s : r.signs) os << sign_char(s);
        os << "  count " << r.count << "\n";
    }
    for (const auto& g : rc.boundary_cases) os << indent << "boundary case: " << g << " = 0\n";
    for (const auto& [g, sub] : rc.boundaries) {
        os << indent << "on " << g << " = 0:\n";
        print_classification(sub, os, indent + "  ");
    }
}

OrderPtr order_for_expression(const std::string& text)
{
    static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
    std::set<std::string> names;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), ident); it != std::sregex_iterator(); ++it)
        names.insert(it->str());
    if (names.size() > 1) throw InputError("isolate expects a univariate polynomial");
    return make_order(names.empty() ? std::vector<std::string>{"x"} : std::vector<std::string>(names.begin(), names.end()));
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Count and classify real solutions of semi-algebraic systems"};
    app.require_subcommand(1);

    std::string file, order_text, transform_text, at_text, box_text, csv_path, expr;
    std::uint64_t seed = 1;
    bool json = false, seed_given = false, auto_samples = false;
    unsigned threads = 0, boundary_depth = 0;

    auto* dec = app.add_subcommand("decompose", "triangular decomposition of the equations");
    auto* cnt = app.add_subcommand("count", "number of distinct real solutions");
    auto* cls = app.add_subcommand("classify", "solution counts over parameter regions");
    auto* iso = app.add_subcommand("isolate", "isolating intervals of the real roots of a polynomial");
    for (auto* sc : {dec, cnt, cls}) {
        sc->add_option("file", file, "system file")->required();
        sc->add_option("--order", order_text, "comma-separated symbol order");
    }
    for (auto* sc : {dec, cnt, cls, iso}) sc->add_flag("--json", json, "machine-readable output");
    for (auto* sc : {cnt, cls}) {
        sc->add_option("--seed", seed, "seed for random transforms")->each([&](const std::string&) { seed_given = true; });
        sc->add_option("--transform", transform_text, "explicit transform coefficients c2,c3,...");
    }
    cnt->add_option("--at", at_text, "parameter values, comma separated");
    cls->add_option("--box", box_text, "parameter ranges lo:hi,lo:hi (open; empty side unbounded)");
    cls->add_option("--regions-csv", csv_path, "write sample, sign vector and count per region");
    cls->add_option("--threads", threads, "worker threads (0 = hardware)");
    cls->add_option("--boundary-depth", boundary_depth, "recursion depth for boundary cases");
    cls->add_flag("--auto-samples", auto_samples, "ignore samples in the file and sample automatically");
    iso->add_option("polynomial", expr, "univariate polynomial")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (iso->parsed()) {
            auto ord = order_for_expression(expr);
            Polynomial p = parse_polynomial(expr, ord);
            if (p.is_zero()) throw InputError("the zero polynomial has no isolated roots");
            auto ivs = isolate_real_roots(p);
            if (json) {
                std::cout << intervals_json(p, ivs).dump(2) << "\n";
            } else {
                for (const auto& iv : ivs) {
                    if (iv.point) std::cout << "[" << iv.lo << ", " << iv.hi << "]\n";
                    else std::cout << "(" << iv.lo << ", " << iv.hi << ")\n";
                }
            }
            return 0;
        }

        auto f = load_system_file(file, split_commas(order_text));
        const auto& ord = *f.system.order;
        CountOptions co;
        co.transform = transform_text.empty() ? f.transform : parse_transform(transform_text);
        co.seed = seed_given ? seed : f.seed.value_or(1);

        if (dec->parsed()) {
            auto branches = decompose(f.system.equations, f.system.nonzeros, f.system.order);
            if (json) {
                std::cout << decomposition_json(branches, ord).dump(2) << "\n";
                return 0;
            }
            std::cout << branches.size() << " branches\n";
            for (std::size_t i = 0; i < branches.size(); ++i) {
                const auto& b = branches[i];
                std::cout << "branch " << i + 1 << (b.is_main_branch ? " (main)" : "") << "\n";
                for (const auto& p : b.tset.polys) std::cout << "  " << p << " = 0\n";
                for (const auto& q : b.side) std::cout << "  " << q << " != 0\n";
            }
            return 0;
        }

        if (cnt->parsed()) {
            SemiAlgebraicSystem s = f.system;
            if (!at_text.empty()) {
                auto pt = parse_point(at_text);
                if (pt.size() != ord.param_count())
                    throw InputError("--at needs " + std::to_string(ord.param_count()) + " values");
                s = specialize(s, pt);
            } else if (s.depends_on_parameters()) {
                throw InputError("the system has parameters; give values with --at or use classify");
            }
            auto r = count_real_solutions(s, co);
            if (json) {
                std::cout << count_json(r, *s.order).dump(2) << "\n";
                return 0;
            }
            for (const auto& t : r.transforms)
                if (!t.is_identity()) std::cout << "transform: " << t.describe(*s.order) << "\n";
            for (const auto& b : r.per_branch)
                std::cout << b.id << ": [" << b.triangular_set << "]  first " << b.first_polynomial << "  count " << b.count << "\n";
            if (r.dedup_adjustment) std::cout << "shared solutions removed: " << r.dedup_adjustment << "\n";
            std::cout << "total " << r.total << "\n";
            return 0;
        }

        ClassifyOptions opt;
        opt.count = co;
        opt.aux = f.aux;
        if (!auto_samples) opt.samples = f.samples;
        opt.threads = threads;
        opt.boundary_depth = boundary_depth;
        if (!box_text.empty()) opt.box = parse_box(box_text, ord.param_count());
        auto rc = classify_parametric(f.system, opt);
        if (!csv_path.empty()) {
            std::ofstream csv(csv_path);
            if (!csv) throw InputError("cannot write '" + csv_path + "'");
            csv << regions_csv(rc);
        }
        if (json) std::cout << classification_json(rc).dump(2) << "\n";
        else print_classification(rc, std::cout);
        return 0;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const NonZeroDimensional& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const RetryExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_limit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
