// cli.hpp
//
// Command-line front end. Subcommands:
//
//   census    full two-phase census of a family
//   count     rational points of one model over GF(3^e)
//   weil      Weil polynomial of one model over the counting field
//   classify  isomorphism classes of a list of models (JSON lines)
//   validate  genus-5 check of a trigonal model
//   isom      isomorphism test for a pair of models
//
// Exit codes: 0 success, 1 usage or input error, 2 internal failure.
// CURVE_CENSUS_JOBS sets the default worker count.

#pragma once

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "g5/census.hpp"

namespace g5::cli {

namespace detail {

inline int default_jobs() {
    if (const char* env = std::getenv("CURVE_CENSUS_JOBS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

inline io::json parse_model(const std::string& text) {
    return io::json::parse(text);
}

struct ModelArg {
    census::Family family;
    hyper::HyperModel hm;
    trig::QuinticModel tm;
};

inline ModelArg load_model(const std::string& family, const std::string& text) {
    ModelArg m;
    m.family = census::family_from_name(family);
    io::json j = parse_model(text);
    if (m.family == census::Family::hyperelliptic) m.hm = io::hyper_from_json(j);
    else m.tm = io::trigonal_from_json(j);
    return m;
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exhaustive census of genus-5 hyperelliptic and trigonal curves over F3"};
    app.require_subcommand(1);

    std::string family;
    int count_field = 9;
    int jobs = detail::default_jobs();
    std::string out_path, format = "json", checkpoint, from_checkpoint;
    long long min_count = -1;
    std::string type_filter;
    int case_filter = 0;

    auto* census_cmd = app.add_subcommand("census", "run the full census of a family");
    census_cmd->add_option("--family", family, "hyperelliptic or trigonal (not needed with --from-checkpoint)");
    census_cmd->add_option("--count-field", count_field, "count over GF(3) or GF(9)")
        ->check(CLI::IsMember({3, 9}));
    census_cmd->add_option("--jobs", jobs, "worker threads");
    census_cmd->add_option("--out", out_path, "write the report here instead of stdout");
    census_cmd->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
    census_cmd->add_option("--checkpoint", checkpoint, "write the phase-1 survivor list here");
    census_cmd->add_option("--from-checkpoint", from_checkpoint, "resume phases 2-3 from a survivor list");
    census_cmd->add_option("--min-count", min_count, "do not validate candidates below this count (trigonal)");
    census_cmd->add_option("--type", type_filter, "restrict to one singularity type (trigonal)")
        ->check(CLI::IsMember({"split", "nonsplit", "cusp"}));
    census_cmd->add_option("--case", case_filter, "restrict to one reduction case (trigonal)");

    std::string model_text, model2_text, in_path;
    int ext = 1;

    auto* count_cmd = app.add_subcommand("count", "count rational points of one model");
    count_cmd->add_option("--family", family, "hyperelliptic or trigonal")->required();
    count_cmd->add_option("--model", model_text, "model JSON")->required();
    count_cmd->add_option("--ext", ext, "extension degree over F3")->required()->check(CLI::Range(1, 10));

    auto* weil_cmd = app.add_subcommand("weil", "Weil polynomial of one model");
    weil_cmd->add_option("--family", family, "hyperelliptic or trigonal")->required();
    weil_cmd->add_option("--model", model_text, "model JSON")->required();
    weil_cmd->add_option("--count-field", count_field, "base field of the polynomial")
        ->check(CLI::IsMember({3, 9}));

    auto* classify_cmd = app.add_subcommand("classify", "classify a list of models (JSON lines)");
    classify_cmd->add_option("--family", family, "hyperelliptic or trigonal")->required();
    classify_cmd->add_option("--count-field", count_field, "classify over GF(3) or GF(9)")
        ->check(CLI::IsMember({3, 9}));
    classify_cmd->add_option("--in", in_path, "JSON-lines file of models")->required();

    auto* validate_cmd = app.add_subcommand("validate", "genus-5 validity of a trigonal model");
    validate_cmd->add_option("--model", model_text, "model JSON")->required();

    auto* isom_cmd = app.add_subcommand("isom", "test two models for isomorphism");
    isom_cmd->add_option("--family", family, "hyperelliptic or trigonal")->required();
    isom_cmd->add_option("--count-field", count_field, "test over GF(3) or GF(9)")
        ->check(CLI::IsMember({3, 9}));
    isom_cmd->add_option("--model", model_text, "first model JSON")->required();
    isom_cmd->add_option("--model2", model2_text, "second model JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // normalize CLI11's exit codes to the documented 0/1 contract
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (census_cmd->parsed()) {
            census::CensusReport rep;
            if (!from_checkpoint.empty()) {
                rep = census::resume_census(from_checkpoint, jobs);
            } else {
                if (family.empty()) throw std::invalid_argument("--family is required without --from-checkpoint");
                census::CensusConfig cfg;
                cfg.family = census::family_from_name(family);
                cfg.count_field = count_field;
                cfg.jobs = jobs;
                cfg.min_count = min_count;
                cfg.checkpoint_path = checkpoint;
                if (!type_filter.empty()) cfg.type_filter = trig::sing_type_from_name(type_filter);
                cfg.case_filter = case_filter;
                rep = census::run_census(cfg);
            }
            std::string text = format == "csv" ? census::report_to_csv(rep)
                                               : census::report_to_json(rep).dump(2) + "\n";
            if (out_path.empty()) out << text;
            else io::write_file(out_path, text);
            return 0;
        }
        if (count_cmd->parsed()) {
            auto m = detail::load_model(family, model_text);
            long long n = m.family == census::Family::hyperelliptic ? hyper::count_points(m.hm, ext)
                                                                    : trig::normalization_count(m.tm, ext);
            out << n << "\n";
            return 0;
        }
        if (weil_cmd->parsed()) {
            auto m = detail::load_model(family, model_text);
            int base = count_field == 9 ? 2 : 1;
            std::array<std::int64_t, 5> counts;
            for (int e = 1; e <= 5; ++e)
                counts[e - 1] = m.family == census::Family::hyperelliptic
                                    ? hyper::count_points(m.hm, base * e)
                                    : trig::normalization_count(m.tm, base * e);
            zeta::WeilPoly w = zeta::weil_from_counts(count_field, counts);
            io::json j;
            j["q"] = count_field;
            j["coeffs"] = w.coeffs_i64();
            j["factored"] = zeta::factored_display(w);
            out << j.dump() << "\n";
            return 0;
        }
        if (classify_cmd->parsed()) {
            std::istringstream in(io::read_file(in_path));
            std::string line;
            census::Family fam = census::family_from_name(family);
            const ff::FieldCtx& k = ff::get_field(count_field == 9 ? 2 : 1);
            std::vector<hyper::HyperModel> hms;
            std::vector<trig::QuinticModel> tms;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                io::json j = detail::parse_model(line);
                if (fam == census::Family::hyperelliptic) hms.push_back(io::hyper_from_json(j));
                else tms.push_back(io::trigonal_from_json(j));
            }
            auto classes = fam == census::Family::hyperelliptic ? census::classify_hyper(hms, k)
                                                                : census::classify_trigonal(tms, k);
            io::json j;
            j["classes"] = classes;
            out << j.dump() << "\n";
            return 0;
        }
        if (validate_cmd->parsed()) {
            trig::QuinticModel m = io::trigonal_from_json(detail::parse_model(model_text));
            out << (trig::validate_genus5(m) ? "true" : "false") << "\n";
            return 0;
        }
        if (isom_cmd->parsed()) {
            const ff::FieldCtx& k = ff::get_field(count_field == 9 ? 2 : 1);
            census::Family fam = census::family_from_name(family);
            bool iso;
            if (fam == census::Family::hyperelliptic) {
                auto a = io::hyper_from_json(detail::parse_model(model_text));
                auto b = io::hyper_from_json(detail::parse_model(model2_text));
                iso = hyper::isomorphic(a, b, k);
            } else {
                auto a = io::trigonal_from_json(detail::parse_model(model_text));
                auto b = io::trigonal_from_json(detail::parse_model(model2_text));
                iso = trig::isomorphic(a, b, k);
            }
            out << (iso ? "true" : "false") << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "no subcommand\n";
    return 1;
}

}  // namespace g5::cli
