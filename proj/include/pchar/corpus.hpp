#pragma once

// Run configuration, the YAML corpus format and corpus runs.
//
//   entries:
//     - name: q8
//       group: file:groups/q8.perm
//       skip: [lemma-4-1]          # optional statement ids
//       orbit_only: false          # example entries: no group, orbit method only
//       expect:
//         order: 8
//         classes: 5
//         degrees: {1: 4, 2: 1}
//         eta: [{rows: [4, 4], value: 4}]
//         example_eta: 2

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pchar/descriptor.hpp"
#include "pchar/verifiers.hpp"

namespace pchar {

enum class ReportFormat { Json, Csv, Text };

ReportFormat parse_format(const std::string& s);

struct Config {
    std::size_t cap = kDefaultElementCap;
    double budget_s = 120.0;  // per character table
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::string out_dir;
    ReportFormat format = ReportFormat::Text;
    bool timing = false;  // elapsed_ms in reports; off keeps output reproducible

    /// Throws InvalidArgument.
    void validate() const;
};

/// Statement ids in report order.
const std::vector<std::string>& statement_ids();
bool is_statement_id(const std::string& id);

struct EtaExpectation {
    std::size_t i = 0, j = 0;
    std::size_t value = 0;
};

struct Expectations {
    std::optional<std::uint64_t> order;
    std::optional<std::size_t> classes;
    std::optional<std::map<std::uint64_t, std::uint64_t>> degrees;  // degree -> count
    std::vector<EtaExpectation> eta;
    std::optional<std::size_t> example_eta;
};

struct CorpusEntry {
    std::string name;
    Descriptor descriptor;
    std::vector<std::string> skip;
    bool orbit_only = false;
    Expectations expect;
};

struct Corpus {
    std::filesystem::path base_dir;
    std::vector<CorpusEntry> entries;
};

/// Throws ParseError.
Corpus load_corpus(const std::filesystem::path& path);
Corpus parse_corpus(const std::string& yaml, const std::filesystem::path& base_dir = {});

/// One statement on one group. Precondition failures come back as skipped
/// reports; a table that overruns the budget likewise.
VerificationReport run_statement(const std::string& id, GroupContext& ctx, const Config& cfg);

struct EntryResult {
    std::string name;
    std::string group;
    std::vector<VerificationReport> reports;
    std::vector<nlohmann::json> mismatches;
    std::optional<std::string> error;

    bool ok() const;
};

struct CorpusRun {
    std::vector<EntryResult> entries;

    std::size_t failed_reports() const;
    std::size_t mismatches() const;
    std::size_t errors() const;
    bool ok() const { return failed_reports() == 0 && mismatches() == 0 && errors() == 0; }
};

/// `statements` empty means all. Entries run on up to cfg.jobs threads; results
/// keep corpus order.
CorpusRun run_corpus(const Corpus& corpus, const Config& cfg, const std::vector<std::string>& statements = {});
EntryResult run_entry(const CorpusEntry& entry, const std::filesystem::path& base_dir, const Config& cfg,
                      const std::vector<std::string>& statements = {});

// ---------------------------------------------------------------- emission

nlohmann::ordered_json report_json(const VerificationReport& r, bool timing);
void write_reports(std::ostream& out, const std::vector<VerificationReport>& reports, ReportFormat f,
                   bool timing);
/// Entry by statement status matrix plus mismatches and errors.
void write_summary(std::ostream& out, const CorpusRun& run, ReportFormat f, bool timing);
std::vector<VerificationReport> all_reports(const CorpusRun& run);

}  // namespace pchar
