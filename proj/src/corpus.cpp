#include "pchar/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <yaml-cpp/yaml.h>

#include "pchar/errors.hpp"

namespace pchar {

ReportFormat parse_format(const std::string& s) {
    if (s == "json") return ReportFormat::Json;
    if (s == "csv") return ReportFormat::Csv;
    if (s == "text") return ReportFormat::Text;
    throw InvalidArgument("unknown format '" + s + "' (json, csv, text)");
}

void Config::validate() const {
    if (cap < 1) throw InvalidArgument("cap must be at least 1");
    if (!(budget_s > 0)) throw InvalidArgument("budget must be positive");
    if (jobs < 1) throw InvalidArgument("jobs must be at least 1");
}

const std::vector<std::string>& statement_ids() {
    static const std::vector<std::string> ids{"theorem-a", "main-lemma", "lemma-2-2", "lemma-4-1",
                                              "lemma-5-1", "theorem-b",  "example",   "conjecture-scan"};
    return ids;
}

bool is_statement_id(const std::string& id) {
    const auto& ids = statement_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

// ---------------------------------------------------------------- parsing

namespace {

template <class T>
T scalar(const YAML::Node& n, const std::string& what) {
    try {
        return n.as<T>();
    } catch (const YAML::Exception&) {
        throw ParseError("bad value for '" + what + "'");
    }
}

void only_keys(const YAML::Node& n, std::initializer_list<const char*> keys, const std::string& where) {
    for (const auto& kv : n) {
        const auto k = kv.first.as<std::string>();
        if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; })) {
            throw ParseError("unknown key '" + k + "' in " + where);
        }
    }
}

Expectations parse_expect(const YAML::Node& n, const std::string& where) {
    Expectations e;
    if (!n.IsMap()) throw ParseError("expect must be a map in " + where);
    only_keys(n, {"order", "classes", "degrees", "eta", "example_eta"}, where + ".expect");
    if (n["order"]) e.order = scalar<std::uint64_t>(n["order"], "order");
    if (n["classes"]) e.classes = scalar<std::size_t>(n["classes"], "classes");
    if (n["degrees"]) {
        std::map<std::uint64_t, std::uint64_t> d;
        for (const auto& kv : n["degrees"]) {
            d[scalar<std::uint64_t>(kv.first, "degrees")] = scalar<std::uint64_t>(kv.second, "degrees");
        }
        e.degrees = std::move(d);
    }
    if (n["eta"]) {
        for (const auto& item : n["eta"]) {
            only_keys(item, {"rows", "value"}, where + ".expect.eta");
            const auto rows = item["rows"];
            if (!rows || !rows.IsSequence() || rows.size() != 2) throw ParseError("eta rows must be [i, j] in " + where);
            e.eta.push_back({scalar<std::size_t>(rows[0], "rows"), scalar<std::size_t>(rows[1], "rows"),
                             scalar<std::size_t>(item["value"], "value")});
        }
    }
    if (n["example_eta"]) e.example_eta = scalar<std::size_t>(n["example_eta"], "example_eta");
    return e;
}

}  // namespace

Corpus parse_corpus(const std::string& yaml, const std::filesystem::path& base_dir) {
    Corpus c;
    c.base_dir = base_dir;
    YAML::Node root;
    try {
        root = YAML::Load(yaml);
    } catch (const YAML::Exception& ex) {
        throw ParseError(std::string("corpus: ") + ex.what());
    }
    if (root.IsNull()) return c;
    if (!root.IsMap()) throw ParseError("corpus must be a map with 'entries'");
    only_keys(root, {"entries"}, "corpus");
    const auto entries = root["entries"];
    if (!entries || entries.IsNull()) return c;
    if (!entries.IsSequence()) throw ParseError("'entries' must be a list");
    for (const auto& n : entries) {
        CorpusEntry e;
        if (!n.IsMap() || !n["name"] || !n["group"]) throw ParseError("each entry needs 'name' and 'group'");
        e.name = scalar<std::string>(n["name"], "name");
        only_keys(n, {"name", "group", "skip", "orbit_only", "expect"}, e.name);
        e.descriptor = parse_descriptor(scalar<std::string>(n["group"], "group"));
        if (n["skip"]) {
            for (const auto& s : n["skip"]) {
                auto id = scalar<std::string>(s, "skip");
                if (!is_statement_id(id)) throw ParseError("unknown statement '" + id + "' in " + e.name);
                e.skip.push_back(id);
            }
        }
        if (n["orbit_only"]) e.orbit_only = scalar<bool>(n["orbit_only"], "orbit_only");
        if (e.orbit_only && !e.descriptor.example()) throw ParseError(e.name + ": orbit_only needs an example group");
        if (n["expect"]) e.expect = parse_expect(n["expect"], e.name);
        c.entries.push_back(std::move(e));
    }
    return c;
}

Corpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open corpus " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_corpus(ss.str(), path.parent_path());
}

// ---------------------------------------------------------------- running

namespace {

VerificationReport skipped(const std::string& id, const std::string& group, const std::string& reason) {
    VerificationReport r;
    r.statement = id;
    r.group = group;
    r.status = Status::Skipped;
    r.detail["reason"] = reason;
    return r;
}

nlohmann::json mismatch(const std::string& field, const nlohmann::json& expected, const nlohmann::json& actual) {
    return {{"field", field}, {"expected", expected}, {"actual", actual}};
}

void check_table_expectations(const Expectations& e, GroupContext& ctx, EntryResult& out) {
    if (e.order && *e.order != ctx.group().order()) {
        out.mismatches.push_back(mismatch("order", *e.order, ctx.group().order()));
    }
    if (!e.classes && !e.degrees && e.eta.empty()) return;
    const auto& t = ctx.table();
    if (e.classes && *e.classes != t.size()) out.mismatches.push_back(mismatch("classes", *e.classes, t.size()));
    if (e.degrees) {
        std::map<std::uint64_t, std::uint64_t> got;
        for (auto d : t.degrees()) ++got[d];
        if (got != *e.degrees) out.mismatches.push_back(mismatch("degrees", *e.degrees, got));
    }
    for (const auto& x : e.eta) {
        if (x.i >= t.size() || x.j >= t.size()) {
            out.mismatches.push_back(mismatch("eta", nlohmann::json{{"rows", {x.i, x.j}}, {"value", x.value}},
                                              "row out of range"));
            continue;
        }
        const std::size_t got = decompose_product(t, x.i, x.j).eta();
        if (got != x.value) {
            out.mismatches.push_back(mismatch("eta", nlohmann::json{{"rows", {x.i, x.j}}, {"value", x.value}}, got));
        }
    }
}

void check_example_eta(const Expectations& e, const std::vector<VerificationReport>& reports, EntryResult& out) {
    if (!e.example_eta) return;
    for (const auto& r : reports) {
        if (r.statement != "example" || r.status == Status::Skipped) continue;
        std::vector<std::pair<std::string, nlohmann::json>> seen;
        if (r.detail.contains("eta")) seen.emplace_back("example_eta", r.detail["eta"]);
        for (const char* m : {"orbits", "table"}) {
            if (r.detail.contains(m) && r.detail[m].contains("eta")) {
                seen.emplace_back(std::string("example_eta.") + m, r.detail[m]["eta"]);
            }
        }
        for (const auto& [field, s] : seen) {
            if (s != *e.example_eta) out.mismatches.push_back(mismatch(field, *e.example_eta, s));
        }
        return;
    }
    out.mismatches.push_back(mismatch("example_eta", *e.example_eta, "example statement did not run"));
}

}  // namespace

VerificationReport run_statement(const std::string& id, GroupContext& ctx, const Config& cfg) {
    try {
        if (id == "theorem-a") return verify_eta_dichotomy(ctx);
        if (id == "main-lemma") return verify_small_eta_vanishing(ctx);
        if (id == "lemma-2-2") return verify_chief_factor_vanishing(ctx);
        if (id == "lemma-4-1") return verify_invariant_extension_count_all(ctx);
        if (id == "lemma-5-1") return verify_pgroup_degree_bound(ctx);
        if (id == "theorem-b") return verify_nilpotent_degree_bound(ctx);
        if (id == "conjecture-scan") return conjecture_scan_report(ctx);
        if (id == "example") {
            auto spec = parse_descriptor(ctx.descriptor()).example();
            if (!spec) return skipped(id, ctx.descriptor(), "not an example group");
            auto r = cross_check_methods(*spec, cfg.budget_s);
            r.group = ctx.descriptor();
            return r;
        }
    } catch (const BudgetExceeded&) {
        return skipped(id, ctx.descriptor(), "character table not computed within budget");
    }
    throw InvalidArgument("unknown statement '" + id + "'");
}

bool EntryResult::ok() const {
    return !error && mismatches.empty() &&
           std::none_of(reports.begin(), reports.end(), [](const auto& r) { return r.status == Status::Fail; });
}

EntryResult run_entry(const CorpusEntry& entry, const std::filesystem::path& base_dir, const Config& cfg,
                      const std::vector<std::string>& statements) {
    EntryResult out;
    out.name = entry.name;
    out.group = entry.descriptor.to_string();
    const auto& ids = statements.empty() ? statement_ids() : statements;
    try {
        if (entry.orbit_only) {
            ExampleSpec spec = *entry.descriptor.example();
            for (const auto& id : ids) {
                if (id == "example" && std::find(entry.skip.begin(), entry.skip.end(), id) == entry.skip.end()) {
                    auto r = verify_example_via_orbits(spec);
                    r.group = out.group;
                    out.reports.push_back(std::move(r));
                } else {
                    out.reports.push_back(skipped(id, out.group, "orbit-only entry"));
                }
            }
            const auto& e = entry.expect;
            if (e.order && spec.g_order() != e.order) {
                out.mismatches.push_back(mismatch("order", *e.order, spec.g_order() ? nlohmann::json(*spec.g_order())
                                                                                    : nlohmann::json("overflow")));
            }
            if (e.classes || e.degrees || !e.eta.empty()) {
                out.mismatches.push_back(mismatch("table", "expectations", "no table for an orbit-only entry"));
            }
            check_example_eta(e, out.reports, out);
            return out;
        }

        TableOptions opts;
        opts.seed = cfg.seed;
        GroupContext ctx(out.group, build_group(entry.descriptor, cfg.cap, base_dir), opts);
        ctx.set_budget(cfg.budget_s);
        for (const auto& id : ids) {
            if (std::find(entry.skip.begin(), entry.skip.end(), id) != entry.skip.end()) {
                out.reports.push_back(skipped(id, out.group, "excluded by corpus entry"));
            } else {
                out.reports.push_back(run_statement(id, ctx, cfg));
            }
        }
        check_table_expectations(entry.expect, ctx, out);
        check_example_eta(entry.expect, out.reports, out);
    } catch (const Error& ex) {
        out.error = ex.what();
    }
    return out;
}

CorpusRun run_corpus(const Corpus& corpus, const Config& cfg, const std::vector<std::string>& statements) {
    cfg.validate();
    for (const auto& s : statements) {
        if (!is_statement_id(s)) throw InvalidArgument("unknown statement '" + s + "'");
    }
    CorpusRun run;
    run.entries.resize(corpus.entries.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < corpus.entries.size();) {
            run.entries[i] = run_entry(corpus.entries[i], corpus.base_dir, cfg, statements);
        }
    };
    const unsigned n = std::min<std::size_t>(cfg.jobs, std::max<std::size_t>(1, corpus.entries.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return run;
}

std::size_t CorpusRun::failed_reports() const {
    std::size_t n = 0;
    for (const auto& e : entries) {
        n += static_cast<std::size_t>(std::count_if(e.reports.begin(), e.reports.end(),
                                                    [](const auto& r) { return r.status == Status::Fail; }));
    }
    return n;
}

std::size_t CorpusRun::mismatches() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.mismatches.size();
    return n;
}

std::size_t CorpusRun::errors() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.error.has_value(); }));
}

std::vector<VerificationReport> all_reports(const CorpusRun& run) {
    std::vector<VerificationReport> out;
    for (const auto& e : run.entries) out.insert(out.end(), e.reports.begin(), e.reports.end());
    return out;
}

// ---------------------------------------------------------------- emission

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string histogram_text(const std::map<std::uint64_t, std::uint64_t>& h) {
    std::string s;
    for (auto [k, v] : h) {
        if (!s.empty()) s += ' ';
        s += std::to_string(k) + ":" + std::to_string(v);
    }
    return s;
}

std::string elapsed_text(const VerificationReport& r) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(3) << r.elapsed_ms;
    return ss.str();
}

}  // namespace

nlohmann::ordered_json report_json(const VerificationReport& r, bool timing) {
    nlohmann::ordered_json j;
    j["statement"] = r.statement;
    j["group"] = r.group;
    j["status"] = to_string(r.status);
    j["witnesses"] = r.witnesses;
    nlohmann::ordered_json h = nlohmann::ordered_json::object();
    for (auto [k, v] : r.eta_histogram) h[std::to_string(k)] = v;
    j["eta_histogram"] = std::move(h);
    j["elapsed_ms"] = timing ? nlohmann::ordered_json(r.elapsed_ms) : nlohmann::ordered_json(nullptr);
    j["detail"] = r.detail;
    return j;
}

void write_reports(std::ostream& out, const std::vector<VerificationReport>& reports, ReportFormat f, bool timing) {
    switch (f) {
        case ReportFormat::Json: {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& r : reports) arr.push_back(report_json(r, timing));
            out << arr.dump(2) << '\n';
            break;
        }
        case ReportFormat::Csv:
            out << "group,statement,status,witnesses,eta_histogram,elapsed_ms\n";
            for (const auto& r : reports) {
                out << csv_field(r.group) << ',' << r.statement << ',' << to_string(r.status) << ','
                    << r.witnesses.size() << ',' << csv_field(histogram_text(r.eta_histogram)) << ','
                    << (timing ? elapsed_text(r) : "") << '\n';
            }
            break;
        case ReportFormat::Text:
            for (const auto& r : reports) {
                out << std::left << std::setw(8) << to_string(r.status) << std::setw(16) << r.statement << r.group;
                if (!r.eta_histogram.empty()) out << "  eta{" << histogram_text(r.eta_histogram) << "}";
                if (!r.witnesses.empty()) out << "  witnesses=" << r.witnesses.size();
                if (timing) out << "  " << elapsed_text(r) << "ms";
                out << '\n';
                if (r.status == Status::Skipped && r.detail.contains("reason")) {
                    out << "        " << r.detail["reason"].get<std::string>() << '\n';
                }
                for (const auto& w : r.witnesses) out << "        " << w.dump() << '\n';
            }
            break;
    }
}

void write_summary(std::ostream& out, const CorpusRun& run, ReportFormat f, bool timing) {
    const auto& ids = statement_ids();
    auto status_of = [](const EntryResult& e, const std::string& id) -> std::string {
        for (const auto& r : e.reports) {
            if (r.statement == id) return to_string(r.status);
        }
        return "-";
    };
    switch (f) {
        case ReportFormat::Json: {
            nlohmann::ordered_json j;
            nlohmann::ordered_json entries = nlohmann::ordered_json::array();
            for (const auto& e : run.entries) {
                nlohmann::ordered_json x;
                x["name"] = e.name;
                x["group"] = e.group;
                nlohmann::ordered_json st;
                for (const auto& id : ids) st[id] = status_of(e, id);
                x["statuses"] = std::move(st);
                x["mismatches"] = e.mismatches;
                x["error"] = e.error ? nlohmann::ordered_json(*e.error) : nlohmann::ordered_json(nullptr);
                if (timing) {
                    double ms = 0;
                    for (const auto& r : e.reports) ms += r.elapsed_ms;
                    x["elapsed_ms"] = ms;
                }
                entries.push_back(std::move(x));
            }
            j["entries"] = std::move(entries);
            j["failed_reports"] = run.failed_reports();
            j["mismatches"] = run.mismatches();
            j["errors"] = run.errors();
            out << j.dump(2) << '\n';
            break;
        }
        case ReportFormat::Csv:
            out << "name,group";
            for (const auto& id : ids) out << ',' << id;
            out << ",mismatches,error\n";
            for (const auto& e : run.entries) {
                out << csv_field(e.name) << ',' << csv_field(e.group);
                for (const auto& id : ids) out << ',' << status_of(e, id);
                out << ',' << e.mismatches.size() << ',' << csv_field(e.error.value_or("")) << '\n';
            }
            break;
        case ReportFormat::Text: {
            std::size_t w = 6;
            for (const auto& e : run.entries) w = std::max(w, e.name.size() + 2);
            out << std::left << std::setw(static_cast<int>(w)) << "entry";
            for (const auto& id : ids) out << std::setw(static_cast<int>(std::max<std::size_t>(id.size(), 7) + 2)) << id;
            out << '\n';
            for (const auto& e : run.entries) {
                out << std::setw(static_cast<int>(w)) << e.name;
                for (const auto& id : ids) {
                    out << std::setw(static_cast<int>(std::max<std::size_t>(id.size(), 7) + 2)) << status_of(e, id);
                }
                out << '\n';
                for (const auto& m : e.mismatches) out << "  mismatch: " << m.dump() << '\n';
                if (e.error) out << "  error: " << *e.error << '\n';
            }
            out << "failed reports: " << run.failed_reports() << ", mismatches: " << run.mismatches()
                << ", errors: " << run.errors() << '\n';
            break;
        }
    }
}

}  // namespace pchar
