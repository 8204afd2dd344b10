#include "csurg/verification.hpp"

#include "csurg/diagram_format.hpp"
#include "csurg/error.hpp"
#include "csurg/explorer.hpp"
#include "csurg/generators.hpp"
#include "csurg/invariants.hpp"
#include "csurg/linear_algebra.hpp"
#include "csurg/moves.hpp"
#include "csurg/oracles.hpp"
#include "csurg/standard_diagrams.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <set>
#include <sstream>

namespace csurg {

namespace {

constexpr std::size_t kMaxReportedFailures = 5;

class Checker {
public:
    explicit Checker(SuiteResult& r) : r_(r) {}

    void fail(const std::string& message)
    {
        ++count_;
        if (r_.failures.size() < kMaxReportedFailures)
            r_.failures.push_back(message);
    }
    void expect(bool ok, const std::string& message)
    {
        if (!ok)
            fail(message);
    }
    std::size_t failures() const { return count_; }

private:
    SuiteResult& r_;
    std::size_t count_ = 0;
};

std::size_t env_size(const char* name, std::size_t fallback)
{
    const char* v = std::getenv(name);
    if (!v || !*v)
        return fallback;
    char* end = nullptr;
    const unsigned long long n = std::strtoull(v, &end, 10);
    return end && *end == '\0' ? static_cast<std::size_t>(n) : fallback;
}

std::string with_diagram(const std::string& message, const SurgeryDiagram& d)
{
    return message + "\n" + serialize(d);
}

std::string key_list(const std::vector<VertexKey>& keys)
{
    std::string s;
    for (const auto& k : keys)
        s += (s.empty() ? "" : " | ") + k.str();
    return s;
}

// 1
void exact_values(const SuiteConfig&, SuiteResult& r, Checker& check)
{
    const D3Value empty = d3(SurgeryDiagram{});
    const D3Value one = d3(standard_diagram(1));
    check.expect(empty.value == 0, "d3(empty) = " + empty.str());
    check.expect(one.value == 1, "d3(xi_1 diagram) = " + one.str());
    r.detail = "d3(empty) = " + empty.str() + ", d3(tb=-2 rot=1 (+1)-unknot) = " + one.str();
}

// 2
void lens_detour(const SuiteConfig&, SuiteResult& r, Checker& check)
{
    for (std::int64_t p = 2; p <= 50; ++p) {
        const SurgeryDiagram open = detour_insert(SurgeryDiagram{}, p, "U");
        const AbelianGroup g = homology(open);
        check.expect(g.is_finite() && g.order() == p && oracle::determinant(extended_matrix(open).q) == -p,
                     "p = " + std::to_string(p) + ": H_1 = " + g.summary());
        const SurgeryDiagram closed = detour_close(open, "U");
        const auto v = d3(closed);
        check.expect(homology(closed).is_trivial() && v.value == 0 && euler_class(closed).is_zero(),
                     "p = " + std::to_string(p) + ": closing gives H_1 = " + homology(closed).summary() +
                         ", d3 = " + v.str());
    }
    r.detail = "p = 2..50: |H_1| = p, insert+close restores H_1 = 0, d3 = 0, e = 0";
}

// 3
void move_invariance(const SuiteConfig& config, SuiteResult& r, Checker& check)
{
    const std::size_t n = std::max<std::size_t>(1000, config.property_instances);
    gen::Rng rng(config.seed);
    using Maker = gen::MoveInstance (*)(gen::Rng&);
    const std::pair<const char*, Maker> makers[] = {
        {"cancel_pair", gen::cancel_pair_instance},
        {"handle_slide", gen::handle_slide_instance},
        {"lemma42_move", gen::lemma42_instance},
        {"avdek_merge", gen::avdek_instance},
    };
    for (const auto& [name, make] : makers) {
        for (std::size_t t = 0; t < n; ++t) {
            const gen::MoveInstance inst = make(rng);
            try {
                const AppliedMove m = apply_move(inst.diagram, inst.move);
                const InvariantComparison cmp = check_move_invariance(inst.diagram, m.diagram, m.record.params);
                const Integer det_before = abs(oracle::determinant(extended_matrix(inst.diagram).q));
                const Integer det_after = abs(oracle::determinant(extended_matrix(m.diagram).q));
                const auto d3_before = oracle::d3(inst.diagram);
                const auto d3_after = oracle::d3(m.diagram);
                const bool ok = cmp.ok() && det_before == det_after && d3_before == d3_after &&
                                euler_class(inst.diagram).order() == euler_class(m.diagram).order();
                if (!ok)
                    check.fail(with_diagram(std::string(name) + ": invariants differ after " + describe(inst.move),
                                            inst.diagram));
            } catch (const Error& e) {
                check.fail(with_diagram(std::string(name) + ": " + e.what(), inst.diagram));
            }
        }
    }
    r.detail = std::to_string(n) + " instances each of cancel_pair, handle_slide, lemma42_move, avdek_merge";
}

// 4
void gamma_nullity(const SuiteConfig& config, SuiteResult& r, Checker& check)
{
    const std::size_t target = std::max<std::size_t>(500, config.property_instances / 2);
    gen::Rng rng(config.seed + 4);
    gen::Bounds b;
    b.max_components = 5;
    std::size_t darboux = 0, pairs = 0, attempts = 0;
    while ((darboux < target / 2 || pairs < target / 2) && attempts < 200 * target) {
        ++attempts;
        SurgeryDiagram base = gen::random_diagram(rng, b);
        SurgeryComponent extra{"x", -2, gen::uniform(rng, 0, 1) ? 1 : -1, 1};
        std::vector<std::pair<ComponentId, std::int64_t>> row;
        const bool pair_case = darboux >= target / 2 || (pairs < target / 2 && attempts % 2 == 0);
        if (pair_case) {
            SurgeryComponent c = base.component(std::size_t{0});
            c.sign = -1;
            base = with_replaced_component(base, c);
            extra = {"x", c.tb, c.rot, 1};
            row.emplace_back(c.id, c.tb);
            for (const auto& o : base.components())
                if (o.id != c.id)
                    row.emplace_back(o.id, base.linking(c.id, o.id));
        }
        const auto sublinks = characteristic_sublinks(base);
        const auto& j = sublinks[static_cast<std::size_t>(
            gen::uniform(rng, 0, static_cast<std::int64_t>(sublinks.size()) - 1))];
        try {
            const HomologyClass diff = gamma_difference(base, extra, row, j);
            (pair_case ? pairs : darboux) += 1;
            if (!diff.is_zero())
                check.fail(with_diagram("nonzero Gamma difference for extra " + extra.id, base));
        } catch (const Error& e) {
            if (e.category() != ErrorCategory::precondition)
                check.fail(with_diagram(e.what(), base));
        }
    }
    check.expect(darboux + pairs >= target, "only " + std::to_string(darboux + pairs) + " admissible instances");
    r.detail = std::to_string(darboux) + " unlinked xi_1 components + " + std::to_string(pairs) +
               " cancelling push-offs, all differences zero";
}

// 5
void characteristic_count(const SuiteConfig& config, SuiteResult& r, Checker& check)
{
    const std::size_t n = std::max<std::size_t>(500, config.property_instances / 2);
    gen::Rng rng(config.seed + 5);
    gen::Bounds b;
    b.max_components = 10;
    b.link_probability = 0.4;
    for (std::size_t t = 0; t < n; ++t) {
        const SurgeryDiagram d = gen::random_diagram(rng, b);
        const ExtendedLinkingMatrix e = extended_matrix(d);
        std::set<std::uint32_t> got;
        for (const auto& s : characteristic_sublinks(d)) {
            std::uint32_t mask = 0;
            for (const auto& id : s.ids)
                mask |= 1u << (std::find(e.ids.begin(), e.ids.end(), id) - e.ids.begin());
            got.insert(mask);
        }
        const auto expected = oracle::characteristic_subsets(e.q);
        const std::size_t predicted = std::size_t{1} << (d.size() - oracle::rank_mod2(e.q));
        if (got != std::set<std::uint32_t>(expected.begin(), expected.end()) || got.size() != predicted)
            check.fail(with_diagram("found " + std::to_string(got.size()) + " sublinks, exhaustive " +
                                        std::to_string(expected.size()) + ", 2^nullity " + std::to_string(predicted),
                                    d));
    }
    r.detail = std::to_string(n) + " diagrams with n <= 10 against exhaustive enumeration and mod-2 rank";
}

// 6
void ladder(const SuiteConfig&, SuiteResult& r, Checker& check)
{
    const PathCertificate up = ot_ladder(0, 10);
    check.expect(up.length() == 10, "ladder has " + std::to_string(up.length()) + " edges");
    for (std::size_t i = 0; i < up.edges.size(); ++i) {
        const VertexKey& k = up.edges[i].to_key;
        check.expect(k.family == Family::OT_S3 && k.d3 == Rational(static_cast<long>(i + 1)) &&
                         up.edges[i].sign() == 1,
                     "edge " + std::to_string(i) + " ends at " + k.str());
    }
    for (const auto& f : check_path(up))
        check.fail("forward: " + f);
    const PathCertificate down = ot_ladder_reverse(0, 10);
    check.expect(down.length() == 10, "reverse ladder has " + std::to_string(down.length()) + " edges");
    for (std::size_t i = 0; i < down.edges.size(); ++i) {
        const VertexKey& k = down.edges[i].to_key;
        check.expect(k.family == Family::OT_S3 && k.d3 == Rational(static_cast<long>(9 - i)) &&
                         down.edges[i].sign() == -1,
                     "reverse edge " + std::to_string(i) + " ends at " + k.str());
    }
    for (const auto& f : check_path(down))
        check.fail("reverse: " + f);
    r.detail = "10 (+1)-edges xi_0 -> xi_10 with d3 1..10; 10 (-1)-edges back";
}

// 7
void link_theorem(const SuiteConfig& config, SuiteResult& r, Checker& check)
{
    const std::size_t n = std::max<std::size_t>(200, config.property_instances / 4);
    gen::Rng rng(config.seed + 7);
    gen::Bounds b;
    b.min_components = 0;
    b.max_components = 3;
    std::size_t lengths[3] = {0, 0, 0};
    for (std::size_t t = 0; t < n; ++t) {
        SurgeryDiagram base = gen::random_diagram(rng, b);
        if (gen::uniform(rng, 0, 3) == 0)
            base = ambient_connect_sum(base, static_cast<int>(gen::uniform(rng, -1, 1)));
        const SurgeryComponent edge = gen::random_component(rng, "K", b);
        std::vector<std::pair<ComponentId, std::int64_t>> row;
        for (const auto& c : base.components())
            if (gen::uniform(rng, 0, 1))
                row.emplace_back(c.id, gen::uniform(rng, -b.max_abs_lk, b.max_abs_lk));
        try {
            const PathCertificate path = verify_link_theorem(base, edge, row);
            const auto failures = check_path(path);
            const VertexKey expected = invariant_key(ambient_connect_sum(base, 1));
            const auto od3 = oracle::d3(base);
            const bool ok = path.length() <= 2 && failures.empty() && same_invariants(path.end_key(), expected) &&
                            (!od3 || path.end_key().d3 == *od3 + 1);
            lengths[std::min<std::size_t>(path.length(), 2)] += 1;
            if (!ok)
                check.fail(with_diagram("path of length " + std::to_string(path.length()) + " for edge " +
                                            generator_label(edge) + (failures.empty() ? "" : ": " + failures.front()),
                                        base));
        } catch (const Error& e) {
            check.fail(with_diagram(std::string("edge ") + generator_label(edge) + ": " + e.what(), base));
        }
    }
    r.detail = std::to_string(n) + " (base, edge) pairs: " + std::to_string(lengths[1]) + " of length 1, " +
               std::to_string(lengths[2]) + " of length 2";
}

/// Paths for the detour and distance suites.
PathCertificate random_path(gen::Rng& rng, bool ot_only)
{
    if (ot_only || gen::uniform(rng, 0, 2) != 0) {
        const int k1 = static_cast<int>(gen::uniform(rng, -2, 3));
        const int k2 = k1 + static_cast<int>(gen::uniform(rng, 0, 3));
        return gen::uniform(rng, 0, 1) ? ot_ladder(k1, k2) : ot_ladder_reverse(k1, k2);
    }
    gen::Bounds b;
    b.min_components = 0;
    b.max_components = 2;
    const SurgeryDiagram base = gen::random_diagram(rng, b);
    std::vector<std::pair<ComponentId, std::int64_t>> row;
    for (const auto& c : base.components())
        row.emplace_back(c.id, gen::uniform(rng, -2, 2));
    return verify_link_theorem(base, gen::random_component(rng, "K", b), row);
}

// 8
void detour_bound(const SuiteConfig& config, SuiteResult& r, Checker& check)
{
    const std::size_t n = std::max<std::size_t>(100, config.property_instances / 10);
    gen::Rng rng(config.seed + 8);
    std::size_t raised = 0;
    std::vector<VertexKey> pool{classify(SurgeryDiagram{})};
    for (int k = -3; k <= 5; ++k)
        pool.push_back(classify(xi_diagram(k)));
    for (std::size_t t = 0; t < n; ++t) {
        const PathCertificate path = random_path(rng, false);
        const std::vector<VertexKey> keys = path.vertex_keys();
        auto p = gen::uniform(rng, 2, 6);
        std::vector<VertexKey> forbidden;
        std::vector<VertexKey> candidates = pool;
        candidates.insert(candidates.end(), keys.begin(), keys.end());
        if (gen::uniform(rng, 0, 3) == 0) {
            // Forbid a vertex the first choice of p would use.
            const auto probe = verify_detour(path, {}, p).vertex_keys();
            candidates.push_back(probe[1 + static_cast<std::size_t>(gen::uniform(
                                                 rng, 0, static_cast<std::int64_t>(probe.size()) - 3))]);
        }
        for (const auto& k : candidates)
            if (!(k == keys.front()) && !(k == keys.back()) && gen::uniform(rng, 0, 1))
                forbidden.push_back(k);
        for (;; ++p) {
            try {
                const PathCertificate out = verify_detour(path, forbidden, p);
                const auto out_keys = out.vertex_keys();
                bool avoided = true;
                for (std::size_t i = 1; i + 1 < out_keys.size(); ++i)
                    avoided = avoided && std::find(forbidden.begin(), forbidden.end(), out_keys[i]) == forbidden.end();
                const auto failures = check_path(out);
                check.expect(out.length() == path.length() + 2 && avoided && out_keys.front() == keys.front() &&
                                 out_keys.back() == keys.back() && failures.empty(),
                             "detour of " + key_list(keys) + " with p = " + std::to_string(p) + " gave " +
                                 key_list(out_keys) + (failures.empty() ? "" : ": " + failures.front()));
                break;
            } catch (const Error& e) {
                if (e.check() != "detour.collision" || p >= 50) {
                    check.fail(std::string("detour of ") + key_list(keys) + ": " + e.what());
                    break;
                }
                ++raised;
            }
        }
    }
    r.detail = std::to_string(n) + " paths rerouted with length + 2 avoiding forbidden keys (" +
               std::to_string(raised) + " collisions resolved by increasing p)";
}

// 9
void ot_distance(const SuiteConfig&, SuiteResult& r, Checker& check)
{
    std::size_t count = 0;
    for (int k1 = -2; k1 <= 3; ++k1)
        for (int k2 = k1; k2 <= k1 + 3; ++k2)
            for (bool reverse : {false, true}) {
                const PathCertificate path = reverse ? ot_ladder_reverse(k1, k2) : ot_ladder(k1, k2);
                try {
                    const PathCertificate out = verify_ot_distance_bound(path);
                    const auto keys = out.vertex_keys();
                    bool interior_ot = true;
                    for (std::size_t i = 1; i + 1 < keys.size(); ++i)
                        interior_ot = interior_ot && keys[i].ot_certificate.has_value();
                    const auto failures = check_path(out);
                    check.expect(out.length() == path.length() + 2 && interior_ot &&
                                     keys.front() == path.start_key() && keys.back() == path.end_key() &&
                                     failures.empty(),
                                 "ladder(" + std::to_string(k1) + ", " + std::to_string(k2) + ") gave " +
                                     key_list(keys) + (failures.empty() ? "" : ": " + failures.front()));
                } catch (const Error& e) {
                    check.fail("ladder(" + std::to_string(k1) + ", " + std::to_string(k2) + "): " + e.what());
                }
                ++count;
            }
    r.detail = std::to_string(count) + " ladder paths extended by exactly 2 through overtwisted vertices";
}

// 10
void oracle_equivalence(const SuiteConfig& config, SuiteResult& r, Checker& check)
{
    std::size_t exhaustive = 0, sampled = 0;
    auto compare = [&](const IntMatrix& a) {
        const SmithForm s = smith_normal_form(a);
        const IntVector expected = oracle::invariant_factors(a);
        std::ostringstream m;
        m << a;
        if (s.invariant_factors() != expected || s.left * a * s.right != s.diagonal ||
            abs(oracle::determinant(s.left)) != 1 || abs(oracle::determinant(s.right)) != 1)
            check.fail("Smith form disagrees on\n" + m.str());
        const Inertia in = inertia(a);
        const oracle::SignatureCount o = oracle::signature(a);
        if (in.positive != o.positive || in.negative != o.negative || in.zero != o.zero)
            check.fail("signature disagrees on\n" + m.str());
    };
    for (std::size_t n = 1; n <= 3; ++n) {
        const std::size_t cells = n * (n + 1) / 2;
        std::size_t total = 1;
        for (std::size_t c = 0; c < cells; ++c)
            total *= 5;
        for (std::size_t code = 0; code < total; ++code) {
            IntMatrix a(n, n);
            std::size_t rest = code;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    a(i, j) = static_cast<long>(rest % 5) - 2;
                    a(j, i) = a(i, j);
                    rest /= 5;
                }
            compare(a);
            ++exhaustive;
        }
    }
    gen::Rng rng(config.seed + 10);
    for (std::size_t t = 0; t < 2000; ++t) {
        IntMatrix a(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i; j < 4; ++j) {
                a(i, j) = static_cast<long>(gen::uniform(rng, -2, 2));
                a(j, i) = a(i, j);
            }
        compare(a);
        ++sampled;
    }
    r.detail = std::to_string(exhaustive) + " exhaustive symmetric matrices (n <= 3, entries in [-2,2]) + " +
               std::to_string(sampled) + " sampled 4x4";
}

struct SuiteSpec {
    const char* title;
    double limit;
    void (*body)(const SuiteConfig&, SuiteResult&, Checker&);
};

const SuiteSpec kSuites[kSuiteCount] = {
    {"exact d3 anchors", 1, exact_values},
    {"lens-space detour", 5, lens_detour},
    {"move invariance", 60, move_invariance},
    {"Gamma-difference nullity", 30, gamma_nullity},
    {"characteristic sublink count", 30, characteristic_count},
    {"overtwisted ladder", 5, ladder},
    {"link theorem", 60, link_theorem},
    {"detour bound", 60, detour_bound},
    {"overtwisted distance bound", 10, ot_distance},
    {"oracle equivalence", 120, oracle_equivalence},
};

}  // namespace

SuiteConfig SuiteConfig::from_environment()
{
    SuiteConfig c;
    c.property_instances = env_size("CSURG_PROPERTY_INSTANCES", c.property_instances);
    c.depth = env_size("CSURG_DEPTH", c.depth);
    c.t_max = static_cast<int>(env_size("CSURG_TMAX", static_cast<std::size_t>(c.t_max)));
    c.seed = env_size("CSURG_SEED", c.seed);
    return c;
}

std::string format_result(const SuiteResult& r)
{
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << (r.passed ? "PASS" : "FAIL") << "  " << (r.criterion < 10 ? " " : "") << r.criterion << "  " << r.title
      << ": " << r.detail << " (" << r.seconds << " s, limit " << static_cast<int>(r.limit_seconds) << " s)";
    for (const auto& f : r.failures) {
        std::string indented = f;
        for (std::size_t pos = 0; (pos = indented.find('\n', pos)) != std::string::npos; pos += 9)
            indented.replace(pos, 1, "\n        ");
        s << "\n      - " << indented;
    }
    return s.str();
}

SuiteResult run_suite(int criterion, const SuiteConfig& config)
{
    if (criterion < 1 || criterion > kSuiteCount)
        fail_precondition("suite.number", "criteria are numbered 1.." + std::to_string(kSuiteCount));
    const SuiteSpec& spec = kSuites[criterion - 1];
    SuiteResult r;
    r.criterion = criterion;
    r.title = spec.title;
    r.limit_seconds = spec.limit;
    Checker check(r);
    const auto start = std::chrono::steady_clock::now();
    try {
        spec.body(config, r, check);
    } catch (const std::exception& e) {
        check.fail(std::string("aborted: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (check.failures() > 0)
        r.detail += "; " + std::to_string(check.failures()) + " failure(s)";
    if (r.seconds >= r.limit_seconds)
        r.failures.push_back("runtime exceeded the limit");
    r.passed = check.failures() == 0 && r.seconds < r.limit_seconds;
    return r;
}

std::vector<SuiteResult> run_all(const SuiteConfig& config, const std::function<void(const SuiteResult&)>& on_result)
{
    std::vector<SuiteResult> out;
    for (int c = 1; c <= kSuiteCount; ++c) {
        out.push_back(run_suite(c, config));
        if (on_result)
            on_result(out.back());
    }
    return out;
}

}  // namespace csurg
