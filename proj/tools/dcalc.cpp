// dcalc: exact differential calculus over commutative algebras.
//
// Subcommands map one-to-one onto the library operations; inputs are JSON
// documents, outputs are deterministic JSON reports (or a text rendering).
// Exit codes: 0 success, 1 input/schema error, 2 budget/truncation
// insufficiency, 3 internal invariant violation.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "diffalg/gallery.hpp"

using namespace diffalg;

namespace {

Json load_doc(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open input document '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw input_error("invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

void emit(const Json& report, const std::string& format) {
    if (format == "text")
        std::cout << render_text(report);
    else
        std::cout << report.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dcalc: exact differential calculus over commutative algebras"};
    app.require_subcommand(1);

    static const std::vector<std::string> ops = {
        "spectrum",   "tangent",       "ghosts",        "flow",          "diff",
        "localize",   "symbol",        "poisson",       "thm-ham-check", "dfunctor",
        "spencer",    "jet",           "forms",         "derham",        "jet-spencer",
        "berezinian", "graded-diff",   "diole",         "algebroid-check",
        "connection-check", "levicivita", "curvature",  "ricci-tau"};

    CliOptions opt;
    if (const char* env = std::getenv("DCALC_BUDGET")) opt.budget = std::atol(env);
    std::string doc_path;
    std::string sig_raw;

    std::vector<CLI::App*> subs;
    for (const auto& name : ops) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " operation");
        sub->add_option("document", doc_path, "input JSON document");
        sub->add_option("--order", opt.order, "operator/jet order");
        sub->add_option("--degree", opt.degree, "complex or form degree");
        sub->add_option("--signature", sig_raw, "comma-separated multi-derivation signature");
        sub->add_option("--point", opt.point_raw, "comma-separated point values");
        sub->add_option("--format", opt.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--budget", opt.budget, "enumeration budget");
        sub->add_option("--seed", opt.seed, "seed for sampled property checks");
        sub->add_option("--op", opt.op_expr, "operator expression (D notation)");
        sub->add_option("--f", opt.f_expr, "first expression argument");
        sub->add_option("--g", opt.g_expr, "second expression argument");
        sub->add_option("--t", opt.t_value, "flow time");
        sub->add_flag("--right", opt.right, "use the right-sided conventions");
        subs.push_back(sub);
    }
    CLI::App* gallery = app.add_subcommand("gallery", "run the full verification gallery");
    gallery->add_option("--only", opt.only, "run a single scenario by id");
    gallery->add_option("--format", opt.format, "json or text")->check(CLI::IsMember({"json", "text"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (gallery->parsed()) {
            auto result = run_gallery(opt.only);
            if (opt.format == "text") {
                for (const auto& s : result.scenarios)
                    std::cout << (s.pass ? "[PASS] " : "[FAIL] ") << s.id << "  " << s.details << "\n";
            } else {
                std::cout << result.report.dump(2) << "\n";
            }
            if (!result.all_pass) {
                for (const auto& s : result.scenarios)
                    if (!s.pass) std::cerr << "failing criterion: " << s.id << "\n";
                return 1;
            }
            return 0;
        }
        for (size_t i = 0; i < subs.size(); ++i) {
            if (!subs[i]->parsed()) continue;
            if (!sig_raw.empty()) {
                opt.signature.clear();
                std::stringstream ss(sig_raw);
                std::string item;
                while (std::getline(ss, item, ',')) opt.signature.push_back(std::stoi(item));
            }
            std::optional<Json> doc;
            if (!doc_path.empty()) doc = load_doc(doc_path);
            Json report = run_subcommand(ops[i], doc, opt);
            emit(report, opt.format);
            return report.value("status", "ok") == "ok" ? 0 : 3;
        }
        throw input_error("no subcommand given");
    } catch (const budget_error& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 2;
    } catch (const invariant_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    }
}
