#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "equilog/verify.hpp"

using namespace equilog;

namespace {

int emit(const Certificate& cert, const std::string& out_path, bool print_details) {
    for (const auto& c : cert.checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";
        if (print_details && !c.details.empty()) std::cout << "     " << c.details.dump() << "\n";
    }
    std::cout << (cert.all_pass() ? "OK" : "FAILED") << " (" << cert.checks.size() << " checks, "
              << cert.pipeline << ")" << std::endl;
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << cert.to_json().dump(2) << "\n";
    }
    return cert.all_pass() ? 0 : 1;
}

void print_characters_table(const Certificate& cert) {
    for (const auto& c : cert.checks) {
        if (!c.pass) {
            std::cout << c.name << ": error " << c.details.value("error", "") << "\n";
            continue;
        }
        std::cout << c.name << "  dim=" << c.details["dimension"].get<long long>() << "  "
                  << c.details["decomposition"].dump() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equilog: exact graded S_n-representations of braid-type algebras, "
                 "stability transfer, and equivariant log-concavity verification"};
    app.require_subcommand(1);

    std::string ring_str = "D";
    std::string cache_dir;
    if (const char* env = std::getenv("EQUILOG_CACHE")) cache_dir = env;
    std::string arith_str = "rational";
    std::string out_path;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    int max_degree = 3, max_n = 6, max_m = 2, degree = -1, onset = -1, min_n = 1;
    int samples = 2;
    uint64_t seed = 12345;

    app.add_option("--cache-dir", cache_dir, "cell cache directory (env EQUILOG_CACHE)");
    app.add_option("--jobs", jobs, "worker threads");
    app.add_option("--arith", arith_str, "arithmetic mode: rational|multimodular")
        ->check(CLI::IsMember({"rational", "multimodular"}));
    app.add_option("--out", out_path, "write the certificate JSON here");
    app.add_option("--seed", seed, "seed for deformation samples");

    auto* c_chars = app.add_subcommand("characters", "graded dimensions and decompositions");
    c_chars->add_option("--ring", ring_str, "ring id (A,B,C,D,D_h,T,R,OT,M)");
    c_chars->add_option("--min-n", min_n);
    c_chars->add_option("--max-n", max_n);
    c_chars->add_option("--max-degree", max_degree);

    auto* c_fit = app.add_subcommand("fit", "fit and verify a stable pattern");
    c_fit->add_option("--ring", ring_str);
    c_fit->add_option("--degree", degree)->required();
    c_fit->add_option("--onset", onset, "override the proven onset");

    auto* c_elc = app.add_subcommand("verify-elc", "strong equivariant log-concavity chains");
    c_elc->add_option("--ring", ring_str, "one of A,B,C,D,M");
    c_elc->add_option("--max-m", max_m);

    auto* c_mpy = app.add_subcommand("verify-mpy", "compare the two configuration rings");
    c_mpy->add_option("--max-degree", max_degree, "largest degree i to verify");

    auto* c_cons = app.add_subcommand("consistency", "tensor/restriction identity battery");
    c_cons->add_option("--max-n", max_n);

    auto* c_def = app.add_subcommand("deform", "the one-parameter family: totals at 0, 1, generic");
    c_def->add_option("--max-n", max_n);
    c_def->add_option("--samples", samples);

    CLI11_PARSE(app, argc, argv);

    EngineOptions opts;
    opts.cache_dir = cache_dir;
    opts.jobs = jobs;
    opts.arith = arith_str == "rational" ? ArithMode::Rational : ArithMode::Multimodular;
    Engine engine(opts);
    Verifier verifier(engine);

    try {
        if (*c_chars) {
            Certificate cert =
                verifier.characters(parse_ring(ring_str), min_n, max_n, max_degree);
            print_characters_table(cert);
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                out << cert.to_json().dump(2) << "\n";
            }
            return cert.all_pass() ? 0 : 1;
        }
        if (*c_fit) return emit(verifier.fit(parse_ring(ring_str), degree, onset), out_path, true);
        if (*c_elc) return emit(verifier.verify_elc(parse_ring(ring_str), max_m), out_path, false);
        if (*c_mpy) return emit(verifier.verify_mpy(max_degree), out_path, false);
        if (*c_cons) return emit(verifier.consistency(max_n), out_path, false);
        if (*c_def) return emit(verifier.deform(max_n, samples, seed), out_path, true);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
    return 0;
}
