// census.hpp
//
// The two-phase census. Phase 1 sweeps a family's full reduced coefficient
// space and finds the maximal point count over the counting field (square-free
// filtering for hyperelliptic models; trigonal candidates are all counted and
// then genus-validated lazily in descending count order, so the expensive
// validation runs only near the top of the count distribution). Phase 2
// classifies the surviving tuples into isomorphism classes over the counting
// field, bucketing by the count vector N1..N5 first. Phase 3 attaches the
// Weil polynomial of each class representative.
//
// Work is sharded by enumeration-index ranges; shard results land in
// disjoint slices of preallocated arrays, so reports are identical for every
// worker count.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "g5/hyperelliptic.hpp"
#include "g5/io.hpp"
#include "g5/trigonal.hpp"
#include "g5/zeta.hpp"

namespace g5::census {

enum class Family { hyperelliptic, trigonal };

inline const char* family_name(Family f) { return f == Family::hyperelliptic ? "hyperelliptic" : "trigonal"; }

inline Family family_from_name(const std::string& s) {
    if (s == "hyperelliptic") return Family::hyperelliptic;
    if (s == "trigonal") return Family::trigonal;
    throw std::invalid_argument("unknown family: " + s);
}

struct CensusConfig {
    Family family = Family::hyperelliptic;
    int count_field = 9;  // 3 or 9
    int jobs = 1;
    long long min_count = -1;                    // do not descend below this count
    std::optional<trig::SingType> type_filter;   // trigonal: restrict to one singularity type
    int case_filter = 0;                         // trigonal: restrict to one case (0 = all)
    std::string checkpoint_path;                 // when set, phase 1 writes survivors here

    int ext_degree() const {
        if (count_field == 3) return 1;
        if (count_field == 9) return 2;
        throw std::invalid_argument("count field must be 3 or 9");
    }
};

struct SurvivorRow {
    std::uint64_t index = 0;
    std::string case_label;
    std::vector<int> coeffs;
    long long count = 0;
    int class_id = -1;
};

struct ClassEntry {
    std::uint64_t rep_index = 0;
    io::json rep_model;
    std::vector<std::uint64_t> members;
    std::array<std::int64_t, 11> weil{};
    std::int64_t weil_q = 0;
};

struct CensusReport {
    Family family = Family::hyperelliptic;
    int count_field = 9;
    long long max_points = -1;
    std::uint64_t num_candidates = 0;
    std::uint64_t num_rejected = 0;  // square-free failures / failed genus validations
    std::vector<SurvivorRow> rows;
    std::vector<ClassEntry> classes;
    int num_isogeny_classes = 0;
    double runtime_seconds = 0;
};

namespace detail {

inline void parallel_for(std::uint64_t total, int jobs, const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || total < 2048) {
        fn(0, total);
        return;
    }
    std::vector<std::thread> workers;
    std::uint64_t chunk = (total + jobs - 1) / jobs;
    for (int t = 0; t < jobs; ++t) {
        std::uint64_t b = static_cast<std::uint64_t>(t) * chunk;
        std::uint64_t e = std::min(total, b + chunk);
        if (b >= e) break;
        workers.emplace_back(fn, b, e);
    }
    for (auto& w : workers) w.join();
}

// process chunks of an index list
inline void parallel_over(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    parallel_for(n, jobs, [&](std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t i = b; i < e; ++i) fn(static_cast<std::size_t>(i));
    });
}

}  // namespace detail

// ---------------------------------------------------------------------------
// standalone classification (greedy first-occurrence representatives)
// ---------------------------------------------------------------------------

inline std::vector<std::vector<int>> classify_hyper(const std::vector<hyper::HyperModel>& models,
                                                    const ff::FieldCtx& k) {
    std::vector<std::vector<int>> classes;
    std::vector<std::array<ff::Fe, 13>> canons(models.size());
    for (std::size_t i = 0; i < models.size(); ++i) canons[i] = hyper::canonical_form(models[i], k);
    for (std::size_t i = 0; i < models.size(); ++i) {
        bool placed = false;
        for (auto& cls : classes)
            if (canons[static_cast<std::size_t>(cls.front())] == canons[i]) {
                cls.push_back(static_cast<int>(i));
                placed = true;
                break;
            }
        if (!placed) classes.push_back({static_cast<int>(i)});
    }
    return classes;
}

inline std::vector<std::vector<int>> classify_trigonal(const std::vector<trig::QuinticModel>& models,
                                                       const ff::FieldCtx& k) {
    std::vector<std::vector<int>> classes;
    for (std::size_t i = 0; i < models.size(); ++i) {
        bool placed = false;
        for (auto& cls : classes)
            if (trig::isomorphic(models[static_cast<std::size_t>(cls.front())], models[i], k)) {
                cls.push_back(static_cast<int>(i));
                placed = true;
                break;
            }
        if (!placed) classes.push_back({static_cast<int>(i)});
    }
    return classes;
}

// ---------------------------------------------------------------------------
// census internals
// ---------------------------------------------------------------------------

namespace detail {

struct Phase1Result {
    long long max_points = -1;
    std::uint64_t num_candidates = 0;
    std::uint64_t num_rejected = 0;
    std::vector<std::uint64_t> survivors;  // ascending enumeration indices
};

inline Phase1Result hyper_phase1(const CensusConfig& cfg) {
    const int e = cfg.ext_degree();
    hyper::get_hyper_counter(e);  // warm before threading
    Phase1Result out;
    out.num_candidates = hyper::kHyperTotal;
    std::vector<std::int16_t> counts(hyper::kHyperTotal, -1);
    parallel_for(hyper::kHyperTotal, cfg.jobs, [&](std::uint64_t b, std::uint64_t end) {
        const auto& counter = hyper::get_hyper_counter(e);
        for (std::uint64_t i = b; i < end; ++i) {
            hyper::HyperModel m = hyper::hyper_model_at(static_cast<std::uint32_t>(i));
            if (!hyper::rhs_is_squarefree(m)) continue;
            counts[i] = static_cast<std::int16_t>(counter.count(m));
        }
    });
    for (std::uint64_t i = 0; i < counts.size(); ++i) {
        if (counts[i] < 0) {
            ++out.num_rejected;
            continue;
        }
        if (counts[i] > out.max_points) {
            out.max_points = counts[i];
            out.survivors.clear();
        }
        if (counts[i] == out.max_points) out.survivors.push_back(i);
    }
    return out;
}

inline Phase1Result trig_phase1(const CensusConfig& cfg) {
    const int e = cfg.ext_degree();
    trig::get_trig_counter(e);
    for (int ev : {4, 5, 6}) trig::get_trig_validator(ev);
    const std::uint64_t total = trig::trigonal_total();

    // global index ranges of the cases included by the filter
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
    std::uint64_t offset = 0;
    for (const auto& cs : trig::trigonal_cases()) {
        bool included = (!cfg.type_filter || *cfg.type_filter == cs.type) &&
                        (cfg.case_filter == 0 || cfg.case_filter == cs.case_id);
        if (included) ranges.emplace_back(offset, offset + cs.count);
        offset += cs.count;
    }

    Phase1Result out;
    std::vector<std::int16_t> counts(total, -1);
    for (auto [b, e2] : ranges) {
        out.num_candidates += e2 - b;
        parallel_for(e2 - b, cfg.jobs, [&, b](std::uint64_t wb, std::uint64_t we) {
            const auto& counter = trig::get_trig_counter(e);
            for (std::uint64_t i = b + wb; i < b + we; ++i) {
                trig::QuinticModel m = trig::trigonal_model_at(i);
                counts[i] = static_cast<std::int16_t>(counter.count(m) +
                                                      trig::normalization_correction(m.type, e));
            }
        });
    }

    long long top = -1;
    for (auto [b, e2] : ranges)
        for (std::uint64_t i = b; i < e2; ++i) top = std::max<long long>(top, counts[i]);

    // validate lazily, level by level, until the maximum over valid models is
    // established
    for (long long level = top; level >= 0; --level) {
        if (cfg.min_count >= 0 && level < cfg.min_count) break;
        std::vector<std::uint64_t> at_level;
        for (auto [b, e2] : ranges)
            for (std::uint64_t i = b; i < e2; ++i)
                if (counts[i] == level) at_level.push_back(i);
        if (at_level.empty()) continue;
        std::vector<std::uint8_t> valid(at_level.size(), 0);
        parallel_over(at_level.size(), cfg.jobs, [&](std::size_t j) {
            valid[j] = trig::validate_genus5(trig::trigonal_model_at(at_level[j])) ? 1 : 0;
        });
        for (std::size_t j = 0; j < at_level.size(); ++j) {
            if (valid[j]) out.survivors.push_back(at_level[j]);
            else ++out.num_rejected;
        }
        if (!out.survivors.empty()) {
            out.max_points = level;
            break;
        }
    }
    return out;
}

struct CountVectors {
    std::vector<std::array<std::int64_t, 5>> nv;
};

inline CountVectors count_vectors(const CensusConfig& cfg, const std::vector<std::uint64_t>& survivors) {
    const int base = cfg.ext_degree();
    if (cfg.family == Family::hyperelliptic)
        for (int j = 1; j <= 5; ++j) hyper::get_hyper_counter(base * j);
    else
        for (int j = 1; j <= 5; ++j) trig::get_trig_counter(base * j);
    CountVectors out;
    out.nv.resize(survivors.size());
    parallel_over(survivors.size(), cfg.jobs, [&](std::size_t i) {
        for (int j = 1; j <= 5; ++j) {
            if (cfg.family == Family::hyperelliptic) {
                out.nv[i][j - 1] =
                    hyper::count_points(hyper::hyper_model_at(static_cast<std::uint32_t>(survivors[i])), base * j);
            } else {
                out.nv[i][j - 1] = trig::normalization_count(trig::trigonal_model_at(survivors[i]), base * j);
            }
        }
    });
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

inline io::json report_to_json(const CensusReport& r) {
    io::json j;
    j["family"] = family_name(r.family);
    j["count_field"] = r.count_field;
    j["max_points"] = r.max_points;
    j["num_candidates"] = r.num_candidates;
    j["num_rejected"] = r.num_rejected;
    j["num_tuples"] = r.rows.size();
    io::json cls = io::json::array();
    for (const auto& c : r.classes) {
        io::json e;
        e["rep_index"] = c.rep_index;
        e["rep_model"] = c.rep_model;
        e["members"] = c.members;
        e["weil"] = c.weil;
        e["q"] = c.weil_q;
        cls.push_back(e);
    }
    j["classes"] = cls;
    j["num_isogeny_classes"] = r.num_isogeny_classes;
    j["runtime_seconds"] = r.runtime_seconds;
    return j;
}

inline std::string report_to_csv(const CensusReport& r) {
    std::ostringstream out;
    out << "enumeration_index,case,coefficients,count,class_id\n";
    for (const auto& row : r.rows) {
        out << row.index << "," << row.case_label << ",\"";
        for (std::size_t i = 0; i < row.coeffs.size(); ++i) {
            if (i) out << " ";
            out << row.coeffs[i];
        }
        out << "\"," << row.count << "," << row.class_id << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// the census driver
// ---------------------------------------------------------------------------

namespace detail {

inline SurvivorRow make_row(Family fam, std::uint64_t index, long long count) {
    SurvivorRow row;
    row.index = index;
    row.count = count;
    if (fam == Family::hyperelliptic) {
        hyper::HyperModel m = hyper::hyper_model_at(static_cast<std::uint32_t>(index));
        row.case_label = "c" + std::to_string(m.c) + ":b" + std::to_string(m.b1) + std::to_string(m.b2);
        row.coeffs = {m.c, m.b1, m.b2};
        for (int a : m.a) row.coeffs.push_back(a);
    } else {
        trig::QuinticModel m = trig::trigonal_model_at(index);
        row.case_label = std::string(trig::sing_type_name(m.type)) + "-" + std::to_string(m.case_id);
        for (auto c : m.c) row.coeffs.push_back(c);
    }
    return row;
}

// Phases 2 and 3 over an established survivor set.
inline CensusReport finish_census(const CensusConfig& cfg, Phase1Result p1) {
    CensusReport rep;
    rep.family = cfg.family;
    rep.count_field = cfg.count_field;
    rep.max_points = p1.max_points;
    rep.num_candidates = p1.num_candidates;
    rep.num_rejected = p1.num_rejected;

    const auto& survivors = p1.survivors;
    CountVectors cv = count_vectors(cfg, survivors);
    const ff::FieldCtx& k = ff::get_field(cfg.ext_degree());

    // class ids in greedy first-occurrence order over the enumeration
    std::vector<int> class_of(survivors.size(), -1);
    int num_classes = 0;

    if (cfg.family == Family::hyperelliptic) {
        if (!survivors.empty())  // build the GL2 substitution tables before threading
            hyper::canonical_form(hyper::hyper_model_at(static_cast<std::uint32_t>(survivors[0])), k);
        std::vector<std::array<ff::Fe, 13>> canons(survivors.size());
        parallel_over(survivors.size(), cfg.jobs, [&](std::size_t i) {
            canons[i] = hyper::canonical_form(hyper::hyper_model_at(static_cast<std::uint32_t>(survivors[i])), k);
        });
        std::map<std::pair<std::array<std::int64_t, 5>, std::array<std::uint32_t, 13>>, int> seen;
        for (std::size_t i = 0; i < survivors.size(); ++i) {
            std::array<std::uint32_t, 13> key{};
            for (int t = 0; t < 13; ++t) key[t] = k.index_of(canons[i][t]);
            auto it = seen.find({cv.nv[i], key});
            if (it == seen.end()) {
                it = seen.emplace(std::make_pair(cv.nv[i], key), num_classes++).first;
            }
            class_of[i] = it->second;
        }
    } else {
        // bucket by count vector, then pairwise tests against class reps
        std::map<std::array<std::int64_t, 5>, std::vector<int>> buckets;  // class ids per bucket
        std::vector<trig::QuinticModel> models(survivors.size());
        for (std::size_t i = 0; i < survivors.size(); ++i) models[i] = trig::trigonal_model_at(survivors[i]);
        std::vector<std::size_t> rep_of_class;
        for (std::size_t i = 0; i < survivors.size(); ++i) {
            auto& ids = buckets[cv.nv[i]];
            for (int cid : ids)
                if (trig::isomorphic(models[rep_of_class[static_cast<std::size_t>(cid)]], models[i], k)) {
                    class_of[i] = cid;
                    break;
                }
            if (class_of[i] < 0) {
                class_of[i] = num_classes++;
                rep_of_class.push_back(i);
                ids.push_back(class_of[i]);
            }
        }
    }

    // rows and classes
    rep.rows.reserve(survivors.size());
    rep.classes.resize(num_classes);
    for (std::size_t i = 0; i < survivors.size(); ++i) {
        SurvivorRow row = make_row(cfg.family, survivors[i], p1.max_points);
        row.class_id = class_of[i];
        rep.rows.push_back(std::move(row));
        ClassEntry& cls = rep.classes[static_cast<std::size_t>(class_of[i])];
        if (cls.members.empty()) {
            cls.rep_index = survivors[i];
            cls.rep_model = cfg.family == Family::hyperelliptic
                                ? io::to_json(hyper::hyper_model_at(static_cast<std::uint32_t>(survivors[i])))
                                : io::to_json(trig::trigonal_model_at(survivors[i]));
            cls.weil_q = cfg.count_field;
            zeta::WeilPoly w = zeta::weil_from_counts(cfg.count_field, cv.nv[i]);
            if (!w.functional_equation_holds()) throw std::logic_error("functional equation violated");
            auto c64 = w.coeffs_i64();
            for (int t = 0; t <= 10; ++t) cls.weil[t] = c64[t];
        }
        cls.members.push_back(survivors[i]);
    }

    std::vector<zeta::WeilPoly> ws;
    for (const auto& cls : rep.classes) {
        zeta::WeilPoly w;
        w.q = cls.weil_q;
        for (int t = 0; t <= 10; ++t) w.a[t] = cls.weil[t];
        ws.push_back(w);
    }
    rep.num_isogeny_classes = zeta::count_isogeny_classes(ws);
    return rep;
}

}  // namespace detail

// Phase-1 checkpoint: a JSON-lines file, one survivor per line, preceded by a
// header carrying the phase-1 tallies.
inline void write_checkpoint(const std::string& path, const CensusConfig& cfg,
                             const detail::Phase1Result& p1) {
    std::ostringstream out;
    io::json header;
    header["family"] = family_name(cfg.family);
    header["count_field"] = cfg.count_field;
    header["max_points"] = p1.max_points;
    header["num_candidates"] = p1.num_candidates;
    header["num_rejected"] = p1.num_rejected;
    out << header.dump() << "\n";
    for (std::uint64_t idx : p1.survivors) {
        io::json line;
        line["index"] = idx;
        line["count"] = p1.max_points;
        line["model"] = cfg.family == Family::hyperelliptic
                            ? io::to_json(hyper::hyper_model_at(static_cast<std::uint32_t>(idx)))
                            : io::to_json(trig::trigonal_model_at(idx));
        out << line.dump() << "\n";
    }
    io::write_file(path, out.str());
}

inline CensusReport run_census(const CensusConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    detail::Phase1Result p1 = cfg.family == Family::hyperelliptic ? detail::hyper_phase1(cfg)
                                                                  : detail::trig_phase1(cfg);
    if (!cfg.checkpoint_path.empty()) write_checkpoint(cfg.checkpoint_path, cfg, p1);
    CensusReport rep = detail::finish_census(cfg, std::move(p1));
    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// Phases 2 and 3 from a phase-1 checkpoint; equals a fresh full run apart
// from the runtime field.
inline CensusReport resume_census(const std::string& checkpoint_path, int jobs) {
    auto t0 = std::chrono::steady_clock::now();
    std::istringstream in(io::read_file(checkpoint_path));
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty checkpoint");
    io::json header = io::json::parse(line);
    CensusConfig cfg;
    cfg.family = family_from_name(header.at("family").get<std::string>());
    cfg.count_field = header.at("count_field").get<int>();
    cfg.jobs = jobs;
    detail::Phase1Result p1;
    p1.max_points = header.at("max_points").get<long long>();
    p1.num_candidates = header.at("num_candidates").get<std::uint64_t>();
    p1.num_rejected = header.at("num_rejected").get<std::uint64_t>();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        io::json rec = io::json::parse(line);
        p1.survivors.push_back(rec.at("index").get<std::uint64_t>());
    }
    std::sort(p1.survivors.begin(), p1.survivors.end());
    CensusReport rep = detail::finish_census(cfg, std::move(p1));
    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace g5::census
