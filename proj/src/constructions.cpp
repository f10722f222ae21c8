#include "pchar/constructions.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "pchar/arith.hpp"
#include "pchar/errors.hpp"

namespace pchar {

namespace {

std::string example_descriptor(const ExampleSpec& s) {
    return "example:" + std::to_string(s.p) + "," + std::to_string(s.m);
}

SlotTuple rotate(const SlotTuple& t, std::size_t c) {
    const std::size_t p = t.size();
    SlotTuple out(p);
    for (std::size_t i = 0; i < p; ++i) out[(i + c) % p] = t[i];
    return out;
}

SlotTuple canonical(const SlotTuple& t) {
    SlotTuple best = t;
    for (std::size_t c = 1; c < t.size(); ++c) best = std::min(best, rotate(t, c));
    return best;
}

SlotTuple pair_tuple(std::size_t p, std::size_t i, std::size_t j, std::size_t lambda, std::size_t mu) {
    SlotTuple t(p, 0);
    if (i == j) {
        t[i] = mu;
    } else {
        t[i] = lambda;
        t[j] = lambda;
    }
    return t;
}

nlohmann::json constituents_json(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& c) {
    nlohmann::json out = nlohmann::json::array();
    for (auto [d, m] : c) out.push_back({{"degree", d}, {"multiplicity", m}});
    return out;
}

}  // namespace

ExampleSpec::ExampleSpec(std::uint64_t p_, unsigned m_) : p(p_), m(m_) {
    if (p < 3 || !is_prime(p)) throw InvalidArgument("p must be an odd prime");
    if (m < 1) throw InvalidArgument("m must be positive");
    if (p > 1000) throw InvalidArgument("p too large");
}

std::optional<std::uint64_t> ExampleSpec::e_order() const { return checked_pow(p, e_exponent()); }
std::optional<std::uint64_t> ExampleSpec::a_order() const { return checked_pow(p, a_exponent()); }
std::optional<std::uint64_t> ExampleSpec::g_order() const { return checked_pow(p, g_exponent()); }

ExampleBase example_base(const ExampleSpec& spec) {
    FiniteGroup e = heisenberg_extraspecial(spec.p, spec.m);
    CharacterTable t = CharacterTable::compute(e);
    const std::uint64_t want = *checked_pow(spec.p, spec.m - 1);
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t.degree(i) == want && t.is_faithful(i)) return {e, t, i};
    }
    throw InternalError("no faithful irreducible of degree p^(m-1)");
}

Example build_example(const ExampleSpec& spec, std::size_t cap) {
    auto order = spec.g_order();
    if (!order || *order > cap) {
        throw ResourceLimit("example group of order p^" + std::to_string(spec.g_exponent()) + " exceeds the cap");
    }
    ExampleBase base = example_base(spec);
    FiniteGroup g = function_power_semidirect(base.e, spec.p, cap);
    const std::uint64_t ne = base.e.order();
    const std::uint64_t na = *spec.a_order();
    const std::uint64_t slot0 = na / ne;
    std::vector<Elem> members(na);
    for (std::uint64_t x = 0; x < na; ++x) members[x] = static_cast<Elem>(x);
    Subgroup a(g, std::move(members));

    std::vector<Cyclotomic> lam(ne);
    for (Elem x = 0; x < ne; ++x) lam[x] = base.table.value(base.lambda, base.e.classes().class_of[x]);
    ClassFunction f = induce_from_values(
        a, [&](Elem x) { return lam[x / slot0]; }, base.table.conductor());
    Character chi(std::move(f));

    if (chi.degree() != *checked_pow(spec.p, spec.m)) throw InternalError("chi(1) is not p^m");
    if (character_inner_product(chi, chi) != 1) throw InternalError("chi is not irreducible");
    if (!is_faithful(chi)) throw InternalError("chi is not faithful");
    return {spec, g, a, base.lambda, chi};
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> OrbitAnalysis::constituents() const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (const auto& o : orbits) out.emplace_back(o.degree, o.multiplicity);
    std::sort(out.begin(), out.end());
    return out;
}

OrbitAnalysis analyze_orbits(const ExampleSpec& spec) {
    ExampleBase base = example_base(spec);
    const CharacterTable& t = base.table;
    const std::size_t p = spec.p;
    OrbitAnalysis out;
    out.lambda = base.lambda;

    const std::uint64_t d = t.degree(base.lambda);
    ClassFunction sq = product(t.row(base.lambda), t.row(base.lambda));
    sq *= Rational(1, static_cast<long>(d));
    auto mu = t.find_row(sq);
    if (!mu) throw InternalError("lambda lambda is not lambda(1) times an irreducible");
    out.mu = *mu;

    // (chi chi)_A = sum_(i,j) lambda_i lambda_j, lambda_i lambda_i = lambda(1) mu_i
    std::map<SlotTuple, std::uint64_t> terms;
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) terms[pair_tuple(p, i, j, out.lambda, out.mu)] += i == j ? d : 1;
    }

    out.stabilizers_trivial = true;
    std::map<SlotTuple, OrbitTerm> by_canon;
    for (const auto& [tuple, mult] : terms) {
        for (std::size_t c = 1; c < p; ++c) {
            if (rotate(tuple, c) == tuple) out.stabilizers_trivial = false;
        }
        std::uint64_t deg = p;
        for (std::size_t slot : tuple) deg *= t.degree(slot);
        auto [it, fresh] = by_canon.try_emplace(canonical(tuple), OrbitTerm{canonical(tuple), deg, mult});
        if (!fresh && it->second.multiplicity != mult) throw InternalError("restriction is not C-invariant");
    }
    for (auto& [k, v] : by_canon) out.orbits.push_back(std::move(v));

    if (p <= 13) {
        const std::size_t half = (p - 1) / 2;
        std::set<SlotTuple> reps;
        for (std::size_t i = 1; i <= half; ++i) reps.insert(canonical(pair_tuple(p, 0, i, out.lambda, out.mu)));
        out.representatives_distinct = reps.size() == half;
        const SlotTuple diag = canonical(pair_tuple(p, 0, 0, out.lambda, out.mu));
        bool cover = true;
        for (std::size_t k = 0; k < p; ++k) {
            for (std::size_t l = 0; l < p; ++l) {
                const SlotTuple c = canonical(pair_tuple(p, k, l, out.lambda, out.mu));
                cover = cover && (k == l ? c == diag : reps.count(c) > 0);
            }
        }
        out.representatives_cover = cover;
    }
    return out;
}

bool index_action_matches(const Example& ex, const CharacterTable& e_table) {
    const FiniteGroup& g = ex.g;
    const std::uint64_t p = ex.spec.p;
    const auto& ecd = e_table.group().classes();
    const std::uint64_t ne = e_table.group().order();
    const std::uint64_t na = ex.a.order();
    std::vector<std::uint64_t> place(p);
    for (std::uint64_t i = 0; i < p; ++i) place[i] = *checked_pow(ne, static_cast<unsigned>(p - 1 - i));
    auto lam = [&](std::uint64_t i, Elem a) {
        return ecd.class_of[(a / place[i]) % ne];
    };
    auto same = [&](std::uint32_t k1, std::uint32_t k2) {
        const std::uint32_t phi = e_table.ring().phi();
        return std::equal(e_table.coeffs(ex.lambda_row, k1), e_table.coeffs(ex.lambda_row, k1) + phi,
                          e_table.coeffs(ex.lambda_row, k2));
    };
    const Elem c = static_cast<Elem>(na);
    const Elem cinv = g.inverse(c);
    for (Elem a = 0; a < na; ++a) {
        const Elem conj = g.mul(g.mul(c, a), cinv);
        if (!ex.a.contains(conj)) return false;
        for (std::uint64_t i = 0; i < p; ++i) {
            if (!same(lam(i, conj), lam((i + p - 1) % p, a))) return false;
        }
    }
    return true;
}

VerificationReport verify_example_via_table(const ExampleSpec& spec, double budget_s) {
    VerificationReport r;
    r.statement = "example";
    r.group = example_descriptor(spec);
    const auto start = std::chrono::steady_clock::now();
    auto finish = [&] {
        r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return r;
    };
    r.detail["method"] = "table";
    r.detail["p"] = spec.p;
    r.detail["m"] = spec.m;
    auto order = spec.g_order();
    if (!order || *order > kDefaultElementCap) {
        r.status = Status::Skipped;
        r.detail["reason"] = "group exceeds the element cap; use the orbit method";
        return finish();
    }
    Example ex = build_example(spec);
    TableOptions opts;
    opts.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                std::chrono::duration<double>(budget_s));
    std::optional<CharacterTable> t;
    try {
        t = CharacterTable::compute(ex.g, opts);
    } catch (const BudgetExceeded&) {
        r.status = Status::Skipped;
        r.detail["reason"] = "table not computed within budget; use the orbit method";
        return finish();
    }
    auto row = t->find_row(ex.chi);
    if (!row) {
        r.fail({{"kind", "example_chi_not_in_table"}});
        return finish();
    }
    Decomposition dec = decompose_product(*t, *row, *row);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> cons;
    std::uint64_t total = 0;
    for (auto [i, m] : dec.parts) {
        cons.emplace_back(t->degree(i), m);
        total += t->degree(i) * m;
    }
    std::sort(cons.begin(), cons.end());
    ++r.eta_histogram[dec.eta()];

    const auto& cd = ex.g.classes();
    std::optional<std::size_t> nonzero;
    for (std::size_t k = 0; k < t->size() && !nonzero; ++k) {
        if (cd.sizes[k] > 1 && !ex.chi[k].is_zero()) nonzero = k;
    }
    const std::size_t zorder = center(ex.g).order();

    if (dec.eta() != spec.expected_eta()) {
        r.fail({{"kind", "example_eta"}, {"eta", dec.eta()}, {"expected", spec.expected_eta()}});
    }
    if (!nonzero) r.fail({{"kind", "example_vanishes_off_center"}});
    if (zorder != spec.p) r.fail({{"kind", "example_center"}, {"order", zorder}});
    if (total != ex.chi.degree() * ex.chi.degree()) {
        r.fail({{"kind", "example_degree_sum"}, {"sum", total}});
    }
    ExampleBase base = example_base(spec);
    const bool action = index_action_matches(ex, base.table);
    if (!action) r.fail({{"kind", "example_index_action"}});

    r.detail["group_order"] = ex.g.order();
    r.detail["chi_row"] = *row;
    r.detail["chi_degree"] = ex.chi.degree();
    r.detail["lambda_row"] = ex.lambda_row;
    r.detail["eta"] = dec.eta();
    r.detail["constituents"] = constituents_json(cons);
    r.detail["nonzero_off_center_class"] = nonzero ? nlohmann::json(*nonzero) : nlohmann::json(nullptr);
    r.detail["center_order"] = zorder;
    r.detail["center_index_exponent"] = spec.g_exponent() - 1;
    r.detail["classes"] = t->size();
    return finish();
}

VerificationReport verify_example_via_orbits(const ExampleSpec& spec) {
    VerificationReport r;
    r.statement = "example";
    r.group = example_descriptor(spec);
    const auto start = std::chrono::steady_clock::now();
    OrbitAnalysis oa = analyze_orbits(spec);
    ++r.eta_histogram[oa.eta()];
    const std::uint64_t chi_degree = *checked_pow(spec.p, spec.m);
    std::uint64_t total = 0;
    for (const auto& o : oa.orbits) total += o.degree * o.multiplicity;

    if (oa.eta() != spec.expected_eta()) {
        r.fail({{"kind", "example_eta"}, {"eta", oa.eta()}, {"expected", spec.expected_eta()}});
    }
    if (!oa.stabilizers_trivial) r.fail({{"kind", "example_stabilizer"}});
    if (oa.representatives_distinct == false) r.fail({{"kind", "example_representatives_conjugate"}});
    if (oa.representatives_cover == false) r.fail({{"kind", "example_representatives_incomplete"}});
    if (total != chi_degree * chi_degree) r.fail({{"kind", "example_degree_sum"}, {"sum", total}});

    r.detail["method"] = "orbits";
    r.detail["p"] = spec.p;
    r.detail["m"] = spec.m;
    r.detail["group_order_exponent"] = spec.g_exponent();
    r.detail["chi_degree"] = chi_degree;
    r.detail["lambda_row"] = oa.lambda;
    r.detail["mu_row"] = oa.mu;
    r.detail["eta"] = oa.eta();
    r.detail["constituents"] = constituents_json(oa.constituents());
    auto opt = [](std::optional<bool> b) { return b ? nlohmann::json(*b) : nlohmann::json(nullptr); };
    r.detail["representatives_distinct"] = opt(oa.representatives_distinct);
    r.detail["representatives_cover"] = opt(oa.representatives_cover);
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

VerificationReport cross_check_methods(const ExampleSpec& spec, double budget_s) {
    VerificationReport r;
    r.statement = "example";
    r.group = example_descriptor(spec);
    const auto start = std::chrono::steady_clock::now();
    VerificationReport orb = verify_example_via_orbits(spec);
    VerificationReport tab = verify_example_via_table(spec, budget_s);
    r.detail["method"] = "cross-check";
    r.detail["orbits"] = {{"status", to_string(orb.status)}, {"eta", orb.detail["eta"]},
                          {"constituents", orb.detail["constituents"]}};
    r.detail["table"] = {{"status", to_string(tab.status)}};
    r.eta_histogram = orb.eta_histogram;
    for (auto& w : orb.witnesses) r.fail(w);
    if (tab.status == Status::Skipped) {
        r.detail["table"]["reason"] = tab.detail["reason"];
        if (r.status == Status::Pass) r.status = Status::Skipped;
    } else {
        r.detail["table"]["eta"] = tab.detail["eta"];
        r.detail["table"]["constituents"] = tab.detail["constituents"];
        for (auto& w : tab.witnesses) r.fail(w);
        if (tab.detail["eta"] != orb.detail["eta"] || tab.detail["constituents"] != orb.detail["constituents"]) {
            r.fail({{"kind", "example_methods_disagree"}});
        }
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace pchar
