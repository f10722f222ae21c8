// pchar: character tables, constituent counts and statement checks for finite
// p-groups from the command line.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "pchar/constructions.hpp"
#include "pchar/corpus.hpp"
#include "pchar/descriptor.hpp"
#include "pchar/errors.hpp"
#include "pchar/serialize.hpp"
#include "pchar/verifiers.hpp"

using namespace pchar;

namespace {

struct Options {
    Config cfg;
    std::string format = "text";
    std::string out;
};

// Writes to --out when given, else stdout.
template <class F>
void emit(const std::string& path, F&& write) {
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream f(path);
    if (!f) throw InvalidArgument("cannot write " + path);
    write(f);
}

std::string degree_summary(const CharacterTable& t) {
    std::map<std::uint64_t, std::uint64_t> c;
    for (auto d : t.degrees()) ++c[d];
    std::string s;
    for (auto [d, n] : c) s += (s.empty() ? "" : " ") + std::to_string(d) + "^" + std::to_string(n);
    return s;
}

TableOptions table_options(const Config& cfg) {
    TableOptions o;
    o.seed = cfg.seed;
    o.deadline = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                        std::chrono::duration<double>(cfg.budget_s));
    return o;
}

bool is_corpus_path(const std::string& s) {
    auto ext = std::filesystem::path(s).extension();
    return ext == ".yaml" || ext == ".yml";
}

int cmd_table(const Options& o, const std::string& desc) {
    FiniteGroup g = build_group(parse_descriptor(desc), o.cfg.cap);
    CharacterTable t = CharacterTable::compute(g, table_options(o.cfg));
    std::ostringstream line;
    line << desc << ": order " << g.order() << ", classes " << t.size() << ", degrees " << degree_summary(t);
    switch (o.cfg.format) {
        case ReportFormat::Text: std::cout << line.str() << '\n'; break;
        case ReportFormat::Json:
            std::cerr << line.str() << '\n';
            emit(o.out, [&](std::ostream& s) { write_table_json(s, t); });
            break;
        case ReportFormat::Csv:
            std::cerr << line.str() << '\n';
            emit(o.out, [&](std::ostream& s) { write_table_csv(s, t); });
            break;
    }
    return 0;
}

int cmd_eta(const Options& o, const std::string& desc, std::size_t i, std::size_t j) {
    FiniteGroup g = build_group(parse_descriptor(desc), o.cfg.cap);
    CharacterTable t = CharacterTable::compute(g, table_options(o.cfg));
    if (i >= t.size() || j >= t.size()) {
        throw InvalidArgument("row index out of range (table has " + std::to_string(t.size()) + " rows)");
    }
    Decomposition d = decompose_product(t, i, j);
    nlohmann::ordered_json j_out;
    j_out["group"] = desc;
    j_out["rows"] = {i, j};
    j_out["degrees"] = {t.degree(i), t.degree(j)};
    j_out["eta"] = d.eta();
    nlohmann::ordered_json parts = nlohmann::ordered_json::array();
    for (auto [row, m] : d.parts) parts.push_back({{"row", row}, {"degree", t.degree(row)}, {"multiplicity", m}});
    j_out["constituents"] = parts;
    emit(o.out, [&](std::ostream& s) {
        if (o.cfg.format == ReportFormat::Json) {
            s << j_out.dump(2) << '\n';
        } else if (o.cfg.format == ReportFormat::Csv) {
            s << "row,degree,multiplicity\n";
            for (auto [row, m] : d.parts) s << row << ',' << t.degree(row) << ',' << m << '\n';
        } else {
            s << "eta(" << i << ", " << j << ") = " << d.eta() << '\n';
            for (auto [row, m] : d.parts) s << "  " << m << " x row " << row << " (degree " << t.degree(row) << ")\n";
        }
    });
    return 0;
}

int cmd_verify(const Options& o, const std::string& statement, const std::string& target, std::optional<std::uint64_t> p,
               std::optional<unsigned> m) {
    if (!is_statement_id(statement)) throw InvalidArgument("unknown statement '" + statement + "'");
    std::vector<VerificationReport> reports;
    if (!target.empty() && is_corpus_path(target)) {
        CorpusRun run = run_corpus(load_corpus(target), o.cfg, {statement});
        for (const auto& e : run.entries) {
            if (e.error) throw Error(e.name + ": " + *e.error);
        }
        reports = all_reports(run);
    } else {
        std::string desc = target;
        if (desc.empty()) {
            if (!p || !m) throw InvalidArgument("give a group descriptor, a corpus file, or --p and --m");
            desc = "example:" + std::to_string(*p) + "," + std::to_string(*m);
        }
        Descriptor d = parse_descriptor(desc);
        auto spec = d.example();
        if (statement == "example" && spec && (!spec->g_order() || *spec->g_order() > o.cfg.cap)) {
            auto r = verify_example_via_orbits(*spec);
            r.group = desc;
            reports.push_back(std::move(r));
        } else {
            TableOptions opts;
            opts.seed = o.cfg.seed;
            GroupContext ctx(d.to_string(), build_group(d, o.cfg.cap), opts);
            ctx.set_budget(o.cfg.budget_s);
            reports.push_back(run_statement(statement, ctx, o.cfg));
        }
    }
    emit(o.out, [&](std::ostream& s) { write_reports(s, reports, o.cfg.format, o.cfg.timing); });
    for (const auto& r : reports) {
        if (r.status == Status::Fail) return 1;
    }
    return 0;
}

int cmd_corpus(const Options& o, const std::string& path, const std::vector<std::string>& statements) {
    CorpusRun run = run_corpus(load_corpus(path), o.cfg, statements);
    const char* ext = o.cfg.format == ReportFormat::Json ? ".json" : o.cfg.format == ReportFormat::Csv ? ".csv" : ".txt";
    if (!o.cfg.out_dir.empty()) {
        std::filesystem::create_directories(o.cfg.out_dir);
        std::ofstream rep(std::filesystem::path(o.cfg.out_dir) / (std::string("reports") + ext));
        write_reports(rep, all_reports(run), o.cfg.format, o.cfg.timing);
        std::ofstream sum(std::filesystem::path(o.cfg.out_dir) / (std::string("summary") + ext));
        write_summary(sum, run, o.cfg.format, o.cfg.timing);
    }
    write_summary(std::cout, run, o.cfg.format, o.cfg.timing);
    return run.ok() ? 0 : 1;
}

int cmd_export(const Options& o, const std::string& desc, const std::string& as) {
    FiniteGroup g = build_group(parse_descriptor(desc), o.cfg.cap);
    emit(o.out, [&](std::ostream& s) {
        if (as == "perm") {
            write_regular_perm(s, g);
        } else {
            write_group_table(s, g);
        }
    });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Character tables and constituent counts of finite p-groups"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "json, csv or text")->envname("PCHAR_FORMAT")->check(
        CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--out", o.out, "output file (table, eta, verify, export) or directory (corpus)")
        ->envname("PCHAR_OUT");
    app.add_option("--seed", o.cfg.seed, "seed for the table computation")->envname("PCHAR_SEED");
    app.add_option("--cap", o.cfg.cap, "largest group order accepted")->envname("PCHAR_CAP")->check(
        CLI::PositiveNumber);
    app.add_option("--budget-s", o.cfg.budget_s, "seconds allowed per character table")
        ->envname("PCHAR_BUDGET_S")
        ->check(CLI::PositiveNumber);
    app.add_option("--jobs", o.cfg.jobs, "corpus entries run in parallel")->envname("PCHAR_JOBS")->check(
        CLI::PositiveNumber);
    app.add_flag("--timing", o.cfg.timing, "include elapsed_ms in reports")->envname("PCHAR_TIMING");

    std::string group, statement, target, corpus_path, export_as = "table";
    std::size_t row_i = 0, row_j = 0;
    std::optional<std::uint64_t> p;
    std::optional<unsigned> m;
    std::vector<std::string> statements;

    auto* table = app.add_subcommand("table", "compute a character table");
    table->add_option("group", group, "group descriptor")->required();

    auto* eta = app.add_subcommand("eta", "decompose the product of two irreducibles");
    eta->add_option("group", group, "group descriptor")->required();
    eta->add_option("i", row_i, "row index")->required();
    eta->add_option("j", row_j, "row index")->required();

    auto* verify = app.add_subcommand("verify", "check one statement on a group or a corpus");
    verify->add_option("statement", statement, "statement id")->required();
    verify->add_option("target", target, "group descriptor or corpus file");
    verify->add_option("--p", p, "prime for the example group");
    verify->add_option("--m", m, "parameter m for the example group");

    auto* corpus = app.add_subcommand("corpus", "run every statement over a corpus");
    corpus->add_option("file", corpus_path, "corpus file")->required();
    corpus->add_option("--statements", statements, "restrict to these statement ids")->delimiter(',');

    auto* exp = app.add_subcommand("export", "write a group in table or perm format");
    exp->add_option("group", group, "group descriptor")->required();
    exp->add_option("--as", export_as, "table or perm")->check(CLI::IsMember({"table", "perm"}));

    CLI11_PARSE(app, argc, argv);

    try {
        o.cfg.format = parse_format(o.format);
        if (*corpus) o.cfg.out_dir = o.out;
        o.cfg.validate();
        if (*table) return cmd_table(o, group);
        if (*eta) return cmd_eta(o, group, row_i, row_j);
        if (*verify) return cmd_verify(o, statement, target, p, m);
        if (*corpus) return cmd_corpus(o, corpus_path, statements);
        if (*exp) return cmd_export(o, group, export_as);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
