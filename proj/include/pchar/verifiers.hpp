#pragma once

// Executable checks of statements about products of irreducible characters of
// finite p-groups and nilpotent groups. Each check returns a report; failing
// reports carry witnesses that witness_reproduces() can re-check on their own.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pchar/characters.hpp"
#include "pchar/eta_engine.hpp"
#include "pchar/group.hpp"

namespace pchar {

enum class Status { Pass, Fail, Skipped };

std::string to_string(Status s);

struct VerificationReport {
    std::string statement;
    std::string group;
    Status status = Status::Pass;
    std::vector<nlohmann::json> witnesses;
    std::map<std::uint64_t, std::uint64_t> eta_histogram;  // eta -> number of pairs
    nlohmann::json detail = nlohmann::json::object();
    double elapsed_ms = 0;

    void fail(nlohmann::json witness) {
        status = Status::Fail;
        witnesses.push_back(std::move(witness));
    }
};

/// A group together with lazily computed data shared by the verifiers.
class GroupContext {
public:
    GroupContext(std::string descriptor, FiniteGroup g, TableOptions opts = {});

    const std::string& descriptor() const { return descriptor_; }
    const FiniteGroup& group() const { return group_; }
    const TableOptions& table_options() const { return opts_; }
    /// Wall-clock budget for the table computation, counted from the first table() call.
    void set_budget(std::optional<double> seconds) { budget_s_ = seconds; }
    const CharacterTable& table();
    EtaEngine& eta();
    const Subgroup& center();
    /// Normal subgroups of the group contained in `within` (all of them when null).
    std::vector<Subgroup> normal_subgroups_inside(const Subgroup* within = nullptr);
    /// Per row: zero on every non-central class.
    const std::vector<char>& vanishes_off_center();

private:
    std::string descriptor_;
    FiniteGroup group_;
    TableOptions opts_;
    std::optional<double> budget_s_;
    std::optional<CharacterTable> table_;
    std::unique_ptr<EtaEngine> eta_;
    std::optional<Subgroup> center_;
    std::optional<std::vector<Subgroup>> all_normal_;
    std::optional<std::vector<char>> vanishing_;
};

/// Every pair of faithful irreducibles has eta = 1 or 2 eta > p.
VerificationReport verify_eta_dichotomy(GroupContext& ctx);
/// Faithful pairs with 2 eta <= p vanish off the center and have eta = 1.
VerificationReport verify_small_eta_vanishing(GroupContext& ctx);
/// For Z <= Y normal, |Y:Z| = p, Z <= Z(chi), Y not inside Z(chi): chi is zero on Y \ Z.
VerificationReport verify_chief_factor_vanishing(GroupContext& ctx);
/// For every G-invariant phi in Irr(N): |Irr(G | phi)| is 1 or at least p.
VerificationReport verify_invariant_extension_count(GroupContext& ctx, const Subgroup& n);
/// The same over every normal subgroup N.
VerificationReport verify_invariant_extension_count_all(GroupContext& ctx);
/// theta with m = eta(theta, conj theta) > 1 has p < 2m + 1 and theta(1) = p^t, 1 <= t <= m - 2.
VerificationReport verify_pgroup_degree_bound(GroupContext& ctx);

enum class ExponentBound { Inclusive, Strict };

/// Degrees whose prime factors are below 2n + 1 with every exponent at most
/// n - 2 (Inclusive) or below n - 2 (Strict).
class PermissibleDegrees {
public:
    explicit PermissibleDegrees(std::uint64_t n, ExponentBound bound = ExponentBound::Inclusive);

    std::uint64_t n() const { return n_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    /// Largest allowed exponent; negative when only 1 qualifies.
    std::int64_t max_exponent() const { return max_exp_; }
    bool contains(std::uint64_t d) const;
    /// Number of elements, saturating at UINT64_MAX.
    std::uint64_t size() const;
    /// Sorted elements; nullopt when there are more than `limit`.
    std::optional<std::vector<std::uint64_t>> elements(std::uint64_t limit = 1'000'000) const;

private:
    std::uint64_t n_;
    std::vector<std::uint64_t> primes_;
    std::int64_t max_exp_;
};

inline PermissibleDegrees permissible_degrees(std::uint64_t n) { return PermissibleDegrees(n); }

/// Nilpotent groups: chi(1) lies in the permissible set for n = eta(chi, conj chi).
/// The report's detail records the outcome under the strict exponent bound;
/// passing `ExponentBound::Strict` makes that bound the asserted one.
VerificationReport verify_nilpotent_degree_bound(GroupContext& ctx,
                                                 ExponentBound asserted = ExponentBound::Inclusive);

struct SurveyEntry {
    std::size_t i = 0, j = 0;
    std::size_t eta = 0;
    std::uint64_t degree_i = 0, degree_j = 0;
    bool vanishes_i = false, vanishes_j = false;  // off the center
    std::vector<std::uint64_t> multiplicities;
    bool flagged = false;
};

struct EtaSurvey {
    std::string group;
    std::uint64_t p = 0;
    std::vector<SurveyEntry> entries;  // unordered faithful pairs, i <= j
    std::size_t flagged() const;
};

/// Records every faithful pair and flags (never fails) pairs with 2 eta - 1 > p and eta < p.
EtaSurvey conjecture_scan(GroupContext& ctx);
VerificationReport conjecture_scan_report(GroupContext& ctx);

/// Recomputes a witness from scratch and reports whether it still refutes its
/// statement.
bool witness_reproduces(const nlohmann::json& witness, GroupContext& ctx);

}  // namespace pchar
