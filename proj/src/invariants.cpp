#include "csurg/invariants.hpp"

#include "csurg/error.hpp"
#include "csurg/linear_algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace csurg {

namespace {

Integer mod_nonneg(const Integer& a, const Integer& m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

IntVector rotation_vector(const SurgeryDiagram& d)
{
    IntVector rot;
    for (std::size_t i : d.canonical_order())
        rot.emplace_back(static_cast<long>(d.component(i).rot));
    return rot;
}

/// 0/1 indicator of a sublink in canonical order.
IntVector indicator(const std::vector<ComponentId>& ids, const CharacteristicSublink& sublink)
{
    IntVector chi(ids.size(), Integer(0));
    for (const ComponentId& id : sublink.ids) {
        auto it = std::find(ids.begin(), ids.end(), id);
        if (it == ids.end())
            fail_precondition("sublink.members", "sublink names unknown component '" + id + "'");
        chi[static_cast<std::size_t>(it - ids.begin())] = 1;
    }
    return chi;
}

bool characteristic_indicator(const IntMatrix& q, std::span<const Integer> chi)
{
    const IntVector qchi = q * chi;
    for (std::size_t i = 0; i < q.rows(); ++i)
        if (mpz_odd_p(Integer(qchi[i] - q(i, i)).get_mpz_t()))
            return false;
    return true;
}

/// rot + Q chi, halved; the caller guarantees J is characteristic.
IntVector half_gamma_vector(const IntMatrix& q, const IntVector& rot, std::span<const Integer> chi)
{
    IntVector v = q * chi;
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] += rot[i];
        if (mpz_odd_p(v[i].get_mpz_t()))
            throw Error(ErrorCategory::invariant_violation, "gamma.parity",
                        "rot + Q chi is not even; tb + rot parity must have been violated");
        mpz_divexact_ui(v[i].get_mpz_t(), v[i].get_mpz_t(), 2);
    }
    return v;
}

std::string ids_text(const std::vector<ComponentId>& ids)
{
    std::string s = "{";
    for (std::size_t i = 0; i < ids.size(); ++i)
        s += (i ? "," : "") + ids[i];
    return s + "}";
}

}  // namespace

AbelianGroup::AbelianGroup(IntVector torsion, std::size_t free_rank, std::vector<ComponentId> meridian_ids,
                           IntMatrix meridian_map)
    : torsion_(std::move(torsion)),
      free_rank_(free_rank),
      meridian_ids_(std::move(meridian_ids)),
      meridian_map_(std::move(meridian_map))
{
}

Integer AbelianGroup::order() const
{
    if (free_rank_ > 0)
        return 0;
    Integer o = 1;
    for (const Integer& d : torsion_)
        o *= d;
    return o;
}

IntVector AbelianGroup::reduce(std::span<const Integer> c) const
{
    if (c.size() != meridian_count())
        fail_precondition("homology_class.length", "coefficient vector length does not match the meridian count");
    IntVector coords = meridian_map_.empty() ? IntVector(coordinate_count(), Integer(0)) : meridian_map_ * c;
    for (std::size_t k = 0; k < torsion_.size(); ++k)
        coords[k] = mod_nonneg(coords[k], torsion_[k]);
    return coords;
}

bool AbelianGroup::is_zero(std::span<const Integer> c) const
{
    const IntVector coords = reduce(c);
    return std::all_of(coords.begin(), coords.end(), [](const Integer& x) { return x == 0; });
}

Integer AbelianGroup::element_order(std::span<const Integer> c) const
{
    const IntVector coords = reduce(c);
    for (std::size_t k = torsion_.size(); k < coords.size(); ++k)
        if (coords[k] != 0)
            return 0;
    Integer order = 1;
    for (std::size_t k = 0; k < torsion_.size(); ++k) {
        Integer g = gcd(coords[k], torsion_[k]);
        order = lcm(order, Integer(torsion_[k] / g));
    }
    return order;
}

std::string AbelianGroup::summary() const
{
    if (is_trivial())
        return "0";
    std::ostringstream s;
    bool first = true;
    for (const Integer& d : torsion_) {
        s << (first ? "" : " + ") << "Z/" << d.get_str();
        first = false;
    }
    if (free_rank_ > 0) {
        s << (first ? "" : " + ") << "Z";
        if (free_rank_ > 1)
            s << "^" << free_rank_;
    }
    return s.str();
}

bool same_isomorphism_type(const AbelianGroup& a, const AbelianGroup& b)
{
    return a.torsion() == b.torsion() && a.free_rank() == b.free_rank();
}

HomologyClass::HomologyClass(std::shared_ptr<const AbelianGroup> group, IntVector coefficients)
    : group_(std::move(group)), coefficients_(std::move(coefficients))
{
    if (coefficients_.size() != group_->meridian_count())
        fail_precondition("homology_class.length", "coefficient vector length does not match the meridian count");
}

bool operator==(const HomologyClass& a, const HomologyClass& b)
{
    return *a.group_ == *b.group_ && a.coordinates() == b.coordinates();
}

AbelianGroup homology(const SurgeryDiagram& diagram)
{
    const ExtendedLinkingMatrix e = extended_matrix(diagram);
    const std::size_t n = e.ids.size();
    const SmithForm s = smith_normal_form(e.q);
    const IntVector factors = s.invariant_factors();

    IntVector torsion;
    std::vector<std::size_t> torsion_rows;
    std::vector<std::size_t> free_rows;
    for (std::size_t k = 0; k < n; ++k) {
        if (factors[k] == 0) {
            free_rows.push_back(k);
        } else if (factors[k] != 1) {
            torsion.push_back(factors[k]);
            torsion_rows.push_back(k);
        }
    }
    IntMatrix map(torsion_rows.size() + free_rows.size(), n);
    for (std::size_t r = 0; r < torsion_rows.size(); ++r)
        for (std::size_t i = 0; i < n; ++i)
            map(r, i) = mod_nonneg(s.left(torsion_rows[r], i), torsion[r]);
    for (std::size_t r = 0; r < free_rows.size(); ++r)
        for (std::size_t i = 0; i < n; ++i)
            map(torsion_rows.size() + r, i) = s.left(free_rows[r], i);
    return AbelianGroup(std::move(torsion), free_rows.size(), e.ids, std::move(map));
}

HomologyClass euler_class(const SurgeryDiagram& diagram)
{
    auto group = std::make_shared<const AbelianGroup>(homology(diagram));
    return HomologyClass(std::move(group), rotation_vector(diagram));
}

std::optional<D3Value> try_d3(const SurgeryDiagram& diagram)
{
    const ExtendedLinkingMatrix e = extended_matrix(diagram);
    const IntVector rot = rotation_vector(diagram);
    auto x = solve_rational(e.q, rot);
    if (!x)
        return std::nullopt;

    Rational c2 = 0;
    for (std::size_t i = 0; i < rot.size(); ++i)
        c2 += (*x)[i] * Rational(rot[i]);
    const long sigma = inertia(e.q).signature();
    const long n = static_cast<long>(e.ids.size());
    long plus = 0;
    for (const auto& c : diagram.components())
        plus += c.sign > 0 ? 1 : 0;

    Rational value = (c2 - Rational(3 * sigma + 2 * (1 + n))) / 4 + Rational(plus) + Rational(1, 2);
    value.canonicalize();
    if (abs(determinant(e.q)) == 1 && value.get_den() != 1)
        throw Error(ErrorCategory::invariant_violation, "d3.integral",
                    "d3 on an integral homology sphere must be an integer, got " + to_string(value));
    return D3Value{value};
}

D3Value d3(const SurgeryDiagram& diagram)
{
    auto v = try_d3(diagram);
    if (!v)
        throw Error(ErrorCategory::undefined_invariant, "d3.rational_homology_sphere",
                    "det Q = 0: not a rational homology sphere, d3 undefined in this kernel");
    return *v;
}

bool is_characteristic(const SurgeryDiagram& diagram, const CharacteristicSublink& sublink)
{
    const ExtendedLinkingMatrix e = extended_matrix(diagram);
    const IntVector chi = indicator(e.ids, sublink);
    return characteristic_indicator(e.q, chi);
}

std::vector<CharacteristicSublink> characteristic_sublinks(const SurgeryDiagram& diagram, std::size_t cap)
{
    const ExtendedLinkingMatrix e = extended_matrix(diagram);
    const std::size_t n = e.ids.size();
    IntVector diag(n);
    for (std::size_t i = 0; i < n; ++i)
        diag[i] = e.q(i, i);

    const Mod2Solution sol = solve_mod2(e.q, diag);
    if (!sol.particular)
        throw Error(ErrorCategory::validation, "characteristic.solvable",
                    "mod-2 characteristic system has no solution; malformed linking matrix");
    const std::size_t k = sol.kernel_basis.size();
    if (k >= 64 || (std::size_t{1} << k) > cap)
        throw Error(ErrorCategory::budget, "characteristic.cap",
                    "2^" + std::to_string(k) + " characteristic sublinks exceed the cap of " + std::to_string(cap));

    std::vector<CharacteristicSublink> out;
    out.reserve(std::size_t{1} << k);
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        Bits x = *sol.particular;
        for (std::size_t b = 0; b < k; ++b)
            if (mask >> b & 1)
                for (std::size_t i = 0; i < n; ++i)
                    x[i] ^= sol.kernel_basis[b][i];
        CharacteristicSublink s;
        for (std::size_t i = 0; i < n; ++i)
            if (x[i])
                s.ids.push_back(e.ids[i]);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const CharacteristicSublink& a, const CharacteristicSublink& b) {
        if (a.ids.size() != b.ids.size())
            return a.ids.size() < b.ids.size();
        return a.ids < b.ids;
    });
    return out;
}

HomologyClass gamma_class(const SurgeryDiagram& diagram, const CharacteristicSublink& sublink)
{
    const ExtendedLinkingMatrix e = extended_matrix(diagram);
    const IntVector chi = indicator(e.ids, sublink);
    if (!characteristic_indicator(e.q, chi))
        fail_precondition("gamma.characteristic", "sublink " + ids_text(sublink.ids) + " is not characteristic");
    auto group = std::make_shared<const AbelianGroup>(homology(diagram));
    return HomologyClass(std::move(group), half_gamma_vector(e.q, rotation_vector(diagram), chi));
}

HomologyClass gamma_difference(const SurgeryDiagram& base, const SurgeryComponent& extra,
                               const std::vector<std::pair<ComponentId, std::int64_t>>& linking_row,
                               const CharacteristicSublink& sublink)
{
    require_valid(base);
    const ExtendedLinkingMatrix eb = extended_matrix(base);
    const IntVector chi = indicator(eb.ids, sublink);
    if (!characteristic_indicator(eb.q, chi))
        fail_precondition("gamma.characteristic_base",
                          "sublink " + ids_text(sublink.ids) + " is not characteristic for the base diagram");

    const SurgeryDiagram extended = with_component(base, extra, linking_row);
    require_valid(extended);
    const ExtendedLinkingMatrix ee = extended_matrix(extended);
    const AbelianGroup g_base = homology(base);
    const AbelianGroup g_ext = homology(extended);

    // Position of every base id inside the extended canonical order.
    std::vector<std::size_t> position(eb.ids.size());
    std::size_t extra_pos = 0;
    for (std::size_t i = 0; i < ee.ids.size(); ++i) {
        if (ee.ids[i] == extra.id) {
            extra_pos = i;
            continue;
        }
        auto it = std::find(eb.ids.begin(), eb.ids.end(), ee.ids[i]);
        position[static_cast<std::size_t>(it - eb.ids.begin())] = i;
    }

    IntVector unit(ee.ids.size(), Integer(0));
    unit[extra_pos] = 1;
    if (!g_ext.is_zero(unit))
        fail_precondition("gamma.homology_preserved",
                          "the meridian of the added component is not nullhomologous; homology changed from " +
                              g_base.summary() + " to " + g_ext.summary());
    if (!same_isomorphism_type(g_base, g_ext))
        fail_precondition("gamma.homology_preserved",
                          "homology changed from " + g_base.summary() + " to " + g_ext.summary());

    // An unlinked component with odd framing joins J; the added half
    // relation is then a multiple of its own meridian. A linked one must
    // leave J characteristic as it is.
    IntVector chi_ext(ee.ids.size(), Integer(0));
    for (std::size_t i = 0; i < eb.ids.size(); ++i)
        chi_ext[position[i]] = chi[i];
    const bool unlinked = std::all_of(linking_row.begin(), linking_row.end(),
                                      [](const auto& entry) { return entry.second == 0; });
    if (unlinked && mpz_odd_p(ee.q(extra_pos, extra_pos).get_mpz_t()))
        chi_ext[extra_pos] = 1;
    if (!characteristic_indicator(ee.q, chi_ext))
        fail_precondition("gamma.characteristic_extended", "sublink " + ids_text(sublink.ids) +
                                                               " does not extend to a characteristic sublink "
                                                               "after adding '" + extra.id + "'");

    const IntVector half_ext = half_gamma_vector(ee.q, rotation_vector(extended), chi_ext);
    const IntVector half_base = half_gamma_vector(eb.q, rotation_vector(base), chi);
    IntVector diff = half_ext;
    for (std::size_t i = 0; i < eb.ids.size(); ++i)
        diff[position[i]] -= half_base[i];

    // The extra meridian is zero, so only the base coordinates survive
    // the isomorphism back to H_1(base).
    IntVector coeffs(eb.ids.size());
    for (std::size_t i = 0; i < eb.ids.size(); ++i)
        coeffs[i] = diff[position[i]];
    return HomologyClass(std::make_shared<const AbelianGroup>(g_base), std::move(coeffs));
}

bool spinc_equal(const SurgeryDiagram& d1, const SurgeryDiagram& d2)
{
    const ExtendedLinkingMatrix e1 = extended_matrix(d1);
    const ExtendedLinkingMatrix e2 = extended_matrix(d2);
    if (e1.ids != e2.ids || e1.q != e2.q)
        fail_precondition("spinc.same_link", "diagrams must have identical extended linking matrices");
    for (const CharacteristicSublink& j : characteristic_sublinks(d1))
        if (!(gamma_class(d1, j) == gamma_class(d2, j)))
            return false;
    return true;
}

MeridianTransfer meridian_transfer(const SurgeryDiagram& a, const SurgeryDiagram& b,
                                   const std::map<ComponentId, std::map<ComponentId, std::int64_t>>& images)
{
    const ExtendedLinkingMatrix ea = extended_matrix(a);
    const ExtendedLinkingMatrix eb = extended_matrix(b);
    auto index_in = [](const std::vector<ComponentId>& ids, const ComponentId& id) -> std::optional<std::size_t> {
        auto it = std::find(ids.begin(), ids.end(), id);
        if (it == ids.end())
            return std::nullopt;
        return static_cast<std::size_t>(it - ids.begin());
    };

    // Shared meridians that map identically, used to rewrite b-only ones.
    std::vector<std::size_t> shared_b;
    std::vector<std::size_t> shared_a;
    for (std::size_t k = 0; k < eb.ids.size(); ++k) {
        if (images.contains(eb.ids[k]))
            continue;
        if (auto i = index_in(ea.ids, eb.ids[k])) {
            shared_b.push_back(k);
            shared_a.push_back(*i);
        }
    }

    MeridianTransfer t(ea.ids.size(), eb.ids.size());
    for (std::size_t k = 0; k < eb.ids.size(); ++k) {
        const ComponentId& id = eb.ids[k];
        if (auto it = images.find(id); it != images.end()) {
            for (const auto& [target, coeff] : it->second) {
                auto i = index_in(ea.ids, target);
                if (!i)
                    fail_precondition("transfer.target", "transfer image names unknown component '" + target + "'");
                t(*i, k) += static_cast<long>(coeff);
            }
            continue;
        }
        if (auto i = index_in(ea.ids, id)) {
            t(*i, k) = 1;
            continue;
        }
        // Solve e_k = Q_b y + sum_s z_s e_{shared_s} over the integers.
        IntMatrix system(eb.ids.size(), eb.ids.size() + shared_b.size());
        for (std::size_t r = 0; r < eb.ids.size(); ++r)
            for (std::size_t c = 0; c < eb.ids.size(); ++c)
                system(r, c) = eb.q(r, c);
        for (std::size_t s = 0; s < shared_b.size(); ++s)
            system(shared_b[s], eb.ids.size() + s) = 1;
        IntVector rhs(eb.ids.size(), Integer(0));
        rhs[k] = 1;
        auto sol = solve_integer(system, rhs);
        if (!sol)
            fail_precondition("transfer.generated", "meridian of '" + id +
                                                        "' is not a combination of the shared meridians");
        for (std::size_t s = 0; s < shared_b.size(); ++s)
            t(shared_a[s], k) += (*sol)[eb.ids.size() + s];
    }
    return t;
}

InvariantComparison compare_invariants(const SurgeryDiagram& a, const SurgeryDiagram& b,
                                       const MeridianTransfer& transfer)
{
    InvariantComparison out;
    const ExtendedLinkingMatrix ea = extended_matrix(a);
    const ExtendedLinkingMatrix eb = extended_matrix(b);
    const AbelianGroup ga = homology(a);
    const AbelianGroup gb = homology(b);
    if (transfer.rows() != ea.ids.size() || transfer.cols() != eb.ids.size()) {
        out.failures.push_back("transfer has the wrong shape");
        return out;
    }

    // Well defined: every relation of b maps to zero in H_1(a).
    bool well_defined = true;
    for (std::size_t k = 0; k < eb.ids.size() && well_defined; ++k) {
        const IntVector image = transfer * std::span<const Integer>(eb.q.column(k));
        well_defined = ga.is_zero(image);
    }
    // Onto: images of b's meridians together with a's relations span Z^n_a.
    IntMatrix span(ea.ids.size(), eb.ids.size() + ea.ids.size());
    for (std::size_t r = 0; r < ea.ids.size(); ++r) {
        for (std::size_t c = 0; c < eb.ids.size(); ++c)
            span(r, c) = transfer(r, c);
        for (std::size_t c = 0; c < ea.ids.size(); ++c)
            span(r, eb.ids.size() + c) = ea.q(r, c);
    }
    bool onto = true;
    if (!ea.ids.empty()) {
        const IntVector f = smith_normal_form(span).invariant_factors();
        onto = std::all_of(f.begin(), f.end(), [](const Integer& d) { return d == 1; });
    }
    const bool same_type = same_isomorphism_type(ga, gb);
    out.homology = well_defined && onto && same_type;
    if (!well_defined)
        out.failures.push_back("homology: transfer does not respect the relations");
    if (!onto)
        out.failures.push_back("homology: transfer is not surjective");
    if (!same_type)
        out.failures.push_back("homology: " + ga.summary() + " vs " + gb.summary());
    if (!out.homology)
        return out;

    const IntVector euler_b = transfer * std::span<const Integer>(rotation_vector(b));
    out.euler = ga.reduce(euler_b) == ga.reduce(rotation_vector(a));
    if (!out.euler)
        out.failures.push_back("euler class differs under the transfer");

    const auto d3a = try_d3(a);
    const auto d3b = try_d3(b);
    out.d3 = d3a.has_value() == d3b.has_value() && (!d3a || *d3a == *d3b);
    if (!out.d3)
        out.failures.push_back("d3: " + (d3a ? d3a->str() : std::string("undefined")) + " vs " +
                               (d3b ? d3b->str() : std::string("undefined")));

    std::set<IntVector> gammas_a;
    std::set<IntVector> gammas_b;
    const IntVector rot_a = rotation_vector(a);
    const IntVector rot_b = rotation_vector(b);
    for (const CharacteristicSublink& j : characteristic_sublinks(a))
        gammas_a.insert(ga.reduce(half_gamma_vector(ea.q, rot_a, indicator(ea.ids, j))));
    for (const CharacteristicSublink& j : characteristic_sublinks(b)) {
        const IntVector half = half_gamma_vector(eb.q, rot_b, indicator(eb.ids, j));
        gammas_b.insert(ga.reduce(transfer * std::span<const Integer>(half)));
    }
    out.spinc = gammas_a == gammas_b;
    if (!out.spinc)
        out.failures.push_back("spin^c: Gompf classes differ under the transfer");
    return out;
}

}  // namespace csurg
