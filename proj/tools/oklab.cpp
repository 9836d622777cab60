#include "oklab/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace oklab;
using report::CheckRecord;
using report::json;
using report::Report;

namespace {

enum Exit { ok = 0, check_failed = 1, config_error = 2, inclusion_violated = 3 };

RatVec parse_class(const toric::ToricVariety& x, const std::string& text) {
    RatVec v;
    try {
        v = parse_ratvec(text);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse class '" + text + "'");
    }
    if (v.size() == x.ray_count()) return x.class_of(toric::TDivisor{v});
    if (v.size() == x.picard_rank()) return v;
    throw ConfigError("class '" + text + "' has " + std::to_string(v.size()) + " entries; expected " +
                      std::to_string(x.ray_count()) + " divisor coefficients or " + std::to_string(x.picard_rank()) +
                      " class coordinates");
}

const toric::ToricVariety& single_testbed(const toric::Catalog& catalog, const verify::RunConfig& cfg) {
    if (cfg.testbeds.size() != 1) throw ConfigError("this command needs exactly one --testbed");
    return *verify::select_testbeds(catalog, cfg).front();
}

toric::AdmissibleFlag flag_for(const toric::ToricVariety& x, const verify::RunConfig& cfg) {
    return cfg.flag ? verify::sweep_flags(x, cfg).front() : x.default_flag();
}

std::vector<toric::TDivisor> divisors(const toric::ToricVariety& x, const std::vector<std::string>& classes) {
    if (classes.size() != x.dim())
        throw ConfigError("expected " + std::to_string(x.dim()) + " --class values, got " + std::to_string(classes.size()));
    std::vector<toric::TDivisor> out;
    for (const auto& c : classes) out.push_back(x.divisor_of_class(parse_class(x, c)));
    return out;
}

void emit(const Report& rep, const verify::RunConfig& cfg) {
    const std::string text = cfg.format == "csv" ? report::to_csv(rep) : report::to_json_text(rep);
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + cfg.out + "'");
    f << text;
}

CheckRecord single(const std::string& key, const std::string& suite, bool pass, json detail) {
    return CheckRecord{key, suite, pass ? "pass" : "fail", std::move(detail), std::nullopt};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Newton-Okounkov bodies, mixed volumes and intersection numbers on toric testbeds"};
    app.require_subcommand(1);
    app.fallthrough();

    verify::RunConfig cfg;
    std::string catalog_dir;
    app.add_option("--testbed", cfg.testbeds, "Testbed name (repeatable; default: all for verify)");
    app.add_option_function<std::string>("--flag", [&](const std::string& f) { cfg.flag = f; },
                                         "Flag as cone:i,j,... (ray indices in order)");
    app.add_option("--mmax", cfg.m_max, "Largest multiple m used for bodies")->capture_default_str();
    app.add_option("--grid-den", cfg.grid_den, "Denominator bound for t grids")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    app.add_option("--format", cfg.format, "Output format: json or csv")->capture_default_str();
    app.add_option("--out", cfg.out, "Output path (default: stdout)");
    app.add_option("--catalog", catalog_dir, "Directory of extra testbed JSON files (default: $OKLAB_CATALOG)");

    std::string cls;
    auto* body = app.add_subcommand("body", "Newton-Okounkov body of a class");
    body->add_option("--class", cls, "Divisor coefficients or class coordinates")->required();

    std::string suite;
    auto* ver = app.add_subcommand("verify", "Run a verification suite");
    ver->add_option("--suite", suite, "One of additivity, slices, prop14, cor13, lemma61, cor15, lx, volume, all")
        ->required();
    ver->add_option("--triples", cfg.random_triples, "Random triples per testbed")->capture_default_str();
    ver->add_option("--max-flags", cfg.max_flags_threefold, "Flags per threefold in sweeps (0: all)")
        ->capture_default_str();

    auto* search = app.add_subcommand("search-strict", "Search ample pairs for strict inclusion");
    search->add_option("--max-coeff", cfg.search_max_coeff, "Largest nef-generator coefficient")
        ->capture_default_str();

    std::string e_class;
    auto* mu = app.add_subcommand("mu", "mu(M, Y_1) for the first flag divisor, and the body endpoint");
    mu->add_option("--class", cls, "The class M")->required();

    std::vector<std::string> classes;
    auto* inter = app.add_subcommand("intersect", "Intersection number of d nef classes");
    inter->add_option("--class", classes, "Repeat once per factor")->required();
    auto* mixed = app.add_subcommand("mixedvol", "Mixed volume of the bodies of d classes");
    mixed->add_option("--class", classes, "Repeat once per factor")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Exit::ok : Exit::config_error;
    }

    try {
        if (catalog_dir.empty())
            if (const char* env = std::getenv("OKLAB_CATALOG")) catalog_dir = env;
        if (!catalog_dir.empty()) cfg.catalog = catalog_dir;
        verify::validate(cfg);
        const toric::Catalog catalog(cfg.catalog);

        if (*ver) {
            const Report rep = verify::run_suite(suite, catalog, cfg);
            emit(rep, cfg);
            std::cerr << "verify " << suite << ": " << rep.count("pass") << " pass, " << rep.count("fail")
                      << " fail, " << rep.count("skipped") << " skipped\n";
            return rep.all_passed() ? Exit::ok : Exit::check_failed;
        }

        const auto& x = single_testbed(catalog, cfg);
        Report rep = verify::make_report(cfg);

        if (*search) {
            rep = verify::search_report(x, cfg, okounkov::default_cache());
            emit(rep, cfg);
            return Exit::ok;
        }

        const auto flag = flag_for(x, cfg);
        if (*body) {
            rep.config["command"] = "body";
            const RatVec c = parse_class(x, cls);
            if (!x.is_big(c)) throw ConfigError("class " + to_string(c) + " is not big on " + x.name());
            const auto b = okounkov::no_body_rational(x, x.divisor_of_class(c), flag, cfg.m_max);
            rep.add(single("body/" + x.name(), "body", b.exact, report::to_json(b)));
        } else if (*mu) {
            rep.config["command"] = "mu";
            const RatVec c = parse_class(x, cls);
            if (!x.is_big(c)) throw ConfigError("class " + to_string(c) + " is not big on " + x.name());
            const auto ep = okounkov::mu_endpoint_check(x, flag, x.divisor_of_class(c), cfg.m_max);
            rep.add(single("mu/" + x.name(), "mu", ep.ok,
                           json{{"class", report::to_json(c)},
                                {"flag", report::to_json(flag)},
                                {"mu", report::to_json(ep.mu)},
                                {"endpoint", report::to_json(ep.endpoint)}}));
        } else if (*inter) {
            rep.config["command"] = "intersect";
            const auto ds = divisors(x, classes);
            for (const auto& d : ds)
                if (!x.is_nef(x.class_of(d))) throw ConfigError("intersect needs nef classes");
            const Rat v = toric::intersection_number(x, ds);
            rep.add(single("intersect/" + x.name(), "intersect", true,
                           json{{"classes", classes}, {"value", report::to_json(v)}}));
        } else if (*mixed) {
            rep.config["command"] = "mixedvol";
            const auto ds = divisors(x, classes);
            std::vector<exactgeom::Polytope> bodies;
            bool nef = true;
            for (const auto& d : ds) {
                const RatVec c = x.class_of(d);
                nef = nef && x.is_nef(c);
                bodies.push_back(inequalities::class_body(x, flag, c, cfg.m_max));
            }
            const Rat v = exactgeom::mixed_volume(bodies);
            json detail{{"classes", classes}, {"flag", report::to_json(flag)}, {"mixed_volume", report::to_json(v)}};
            bool pass = true;
            if (nef) {
                const Rat i = toric::intersection_number(x, ds) / Rat(factorial(static_cast<unsigned>(x.dim())));
                detail["intersection_over_d_factorial"] = report::to_json(i);
                pass = i >= v;
            }
            rep.add(single("mixedvol/" + x.name(), "mixedvol", pass, detail));
        }
        emit(rep, cfg);
        return rep.all_passed() ? Exit::ok : Exit::check_failed;
    } catch (const InclusionViolation& e) {
        std::cerr << "inclusion violated: " << e.what() << "\n";
        return Exit::inclusion_violated;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return Exit::config_error;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return Exit::config_error;
    } catch (const ToricError& e) {
        std::cerr << "testbed error: " << e.what() << "\n";
        return Exit::config_error;
    }
}
