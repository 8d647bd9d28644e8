// mq2: lambda2 invariants of cyclotomic Z2-towers over multi-quadratic
// fields, prime-splitting tables, genus fields, class-number-parity verdicts,
// and the brute-force verification sweeps backing all of it.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mq2/mq2.hpp"
#include "mq2/report.hpp"
#include "mq2/sweep_table.hpp"

using namespace mq2;

namespace {

int emit(const cli::Report& rep, bool json, int code) {
    if (json)
        std::cout << cli::to_json(rep).dump(2) << "\n";
    else
        std::cout << cli::render_text(rep);
    return code;
}

template <typename Fn>
int guarded(bool json, Fn&& fn) {
    cli::Report rep;
    try {
        return fn(rep);
    } catch (const input_error& e) {
        rep.errors.push_back({"input", e.what()});
        return emit(rep, json, cli::kExitInput);
    } catch (const hypothesis_error& e) {
        rep.errors.push_back({"hypothesis", e.what()});
        return emit(rep, json, cli::kExitHypothesis);
    } catch (const std::exception& e) {
        rep.errors.push_back({"internal", e.what()});
        return emit(rep, json, cli::kExitInternal);
    }
}

std::pair<int, int> parse_levels(const std::string& text) {
    auto fail = [&] { throw input_error("levels: expected N or LO..HI, got '" + text + "'"); };
    try {
        if (auto dots = text.find(".."); dots != std::string::npos) {
            int lo = std::stoi(text.substr(0, dots));
            int hi = std::stoi(text.substr(dots + 2));
            if (lo < 0 || hi < lo || hi > 40) fail();
            return {lo, hi};
        }
        int n = std::stoi(text);
        if (n < 0 || n > 40) fail();
        return {n, n};
    } catch (const input_error&) {
        throw;
    } catch (const std::exception&) {
        fail();
    }
    return {0, 0};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lambda2 invariants, splitting data and class-number parity of multi-quadratic fields"};
    app.require_subcommand(1);
    app.fallthrough(true); // allow --json after the subcommand
    bool json = false;
    app.add_flag("--json", json, "emit machine-readable JSON reports");

    auto* lam = app.add_subcommand("lambda", "evaluate lambda2 for an imaginary multi-quadratic field");
    std::string lam_rads;
    i64 lambda_plus_value = 0;
    bool assume_greenberg = true;
    lam->add_option("-r,--radicands", lam_rads, "comma-separated nonzero radicands, e.g. \"7,3,-1\"")
        ->required();
    auto* lam_plus_opt =
        lam->add_option("--lambda-plus", lambda_plus_value,
                        "externally computed lambda2 of the maximal real subfield");
    lam->add_flag("--assume-greenberg,!--no-assume-greenberg", assume_greenberg,
                  "assume the real-subfield invariants vanish (default on)");

    auto* par = app.add_subcommand("parity", "class-number parity verdict for a field containing sqrt(2)");
    std::string par_rads;
    par->add_option("-r,--radicands", par_rads, "comma-separated nonzero radicands")->required();

    auto* gen = app.add_subcommand("genus", "narrow genus field and genus field");
    std::string gen_rads;
    gen->add_option("-r,--radicands", gen_rads, "comma-separated nonzero radicands")->required();

    auto* split = app.add_subcommand("splitting", "decomposition of an odd prime along the Z2-tower");
    u64 split_prime = 0;
    std::string split_levels = "0..6";
    std::string split_rads;
    split->add_option("-p,--prime", split_prime, "odd prime")->required();
    split->add_option("-n,--levels", split_levels, "level or range, e.g. 3 or 0..5");
    split->add_option("-d,--radicands", split_rads, "optional quadratic-step radicands");

    auto* verify = app.add_subcommand("verify", "run the brute-force verification sweeps");
    std::string verify_config;
    verify->add_option("config", verify_config, "plain-text key = value sweep configuration");

    auto* sweep = app.add_subcommand("sweep", "batch table of lambda2/parity over small fields");
    u64 sweep_bound = 0;
    std::string sweep_out;
    std::string sweep_format = "csv";
    sweep->add_option("--bound", sweep_bound, "prime bound for the radicand alphabet")->required();
    sweep->add_option("--out", sweep_out, "output path")->required();
    sweep->add_option("--format", sweep_format, "csv or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : cli::kExitInput;
    }

    if (app.got_subcommand(lam)) {
        return guarded(json, [&](cli::Report& rep) {
            rep.input = {{"radicands", lam_rads}};
            auto rads = MultiQuadField::parse_radicand_list(lam_rads);
            MultiQuadField k = MultiQuadField::from_reduced_radicands(rads);
            rep.field = k.serialize();
            std::optional<i64> lp;
            if (lam_plus_opt->count()) {
                lp = lambda_plus_value;
            } else if (!assume_greenberg) {
                throw input_error("pass --lambda-plus when Greenberg's conjecture is not assumed");
            }
            rep.lambda = lambda2_multiquad_imaginary(k, lp);
            if (rep.lambda->greenberg_assumed)
                rep.assumptions.push_back(
                    "lambda2(K+) = 0: Greenberg's conjecture assumed for the maximal real subfield");
            else if (lp)
                rep.assumptions.push_back("lambda2(K+) = " + std::to_string(*lp) +
                                          " supplied externally");
            return emit(rep, json, cli::kExitOk);
        });
    }

    if (app.got_subcommand(par)) {
        return guarded(json, [&](cli::Report& rep) {
            rep.input = {{"radicands", par_rads}};
            auto rads = MultiQuadField::parse_radicand_list(par_rads);
            MultiQuadField k = MultiQuadField::from_reduced_radicands(rads);
            rep.field = k.serialize();
            rep.parity = classify_parity(k);
            return emit(rep, json, cli::kExitOk);
        });
    }

    if (app.got_subcommand(gen)) {
        return guarded(json, [&](cli::Report& rep) {
            rep.input = {{"radicands", gen_rads}};
            auto rads = MultiQuadField::parse_radicand_list(gen_rads);
            MultiQuadField k = MultiQuadField::from_reduced_radicands(rads);
            rep.field = k.serialize();
            rep.genus = narrow_genus_field(k);
            return emit(rep, json, cli::kExitOk);
        });
    }

    if (app.got_subcommand(split)) {
        return guarded(json, [&](cli::Report& rep) {
            rep.input = {{"prime", split_prime}, {"levels", split_levels}, {"radicands", split_rads}};
            auto [lo, hi] = parse_levels(split_levels);
            std::vector<i64> rads;
            if (!split_rads.empty()) {
                for (i64 r : MultiQuadField::parse_radicand_list(split_rads))
                    rads.push_back(sqf_signed(r));
            }
            for (int n = lo; n <= hi; ++n) rep.splitting.push_back(splitting_report(split_prime, n, rads));
            return emit(rep, json, cli::kExitOk);
        });
    }

    if (app.got_subcommand(verify)) {
        return guarded(json, [&](cli::Report&) {
            oracle::SweepConfig cfg;
            if (!verify_config.empty()) {
                std::ifstream in(verify_config);
                if (!in) throw input_error("cannot read sweep config: " + verify_config);
                cfg = oracle::parse_sweep_config(in);
            }
            if (cfg.suites_given && cfg.suites.empty()) {
                std::cout << (json ? "[]\n" : "no suites enabled\n");
                return 0;
            }
            auto reports = oracle::run_sweeps(cfg);
            bool all_passed = true;
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : reports) {
                all_passed = all_passed && r.passed();
                std::cerr << r.suite << ": checked=" << r.checked << " failures=" << r.failure_count
                          << " elapsed=" << r.elapsed_seconds << "s\n";
                if (json) {
                    arr.push_back(cli::to_json(r));
                } else {
                    std::cout << (r.passed() ? "pass " : "FAIL ") << r.suite << " (" << r.checked
                              << " checks)\n";
                    for (const auto& f : r.failures)
                        std::cout << "  " << f.input << ": expected " << f.expected << ", got "
                                  << f.got << "\n";
                }
            }
            if (json) std::cout << arr.dump(2) << "\n";
            return all_passed ? 0 : 1;
        });
    }

    if (app.got_subcommand(sweep)) {
        return guarded(json, [&](cli::Report&) {
            if (sweep_bound > 500) throw input_error("sweep bound exceeds the safety limit of 500");
            if (sweep_format != "csv" && sweep_format != "json")
                throw input_error("sweep format must be csv or json");
            auto rows = cli::sweep_table(sweep_bound);
            std::string content = sweep_format == "csv" ? cli::sweep_csv(rows) : cli::sweep_json(rows);
            std::ofstream out(sweep_out, std::ios::binary | std::ios::trunc);
            if (!out) throw input_error("cannot write output file: " + sweep_out);
            out << content;
            out.flush();
            if (!out) throw input_error("failed writing output file: " + sweep_out);
            std::cerr << "wrote " << rows.size() << " rows to " << sweep_out << "\n";
            return 0;
        });
    }

    return cli::kExitInput;
}
