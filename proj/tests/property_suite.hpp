#pragma once

// Randomized cross-checks of contact, carrousel tree and splice diagram
// against the oracles. Shared by the unit tests and the acceptance binary.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "curvelab/carrousel_tree.hpp"
#include "curvelab/contact.hpp"
#include "curvelab/splice.hpp"
#include "oracles.hpp"

namespace oracle {

struct PropertyReport {
    std::size_t curves = 0;
    std::size_t ultrametric_violations = 0;  // library and oracle combined
    std::size_t qmap_mismatches = 0;         // library q-map vs oracle contact table
    std::size_t characteristic_mismatches = 0;
    std::size_t non_integral = 0;
    std::size_t intersection_mismatches = 0;  // library vs oracle intersection multiplicity
    std::size_t linking_mismatches = 0;       // linking number vs intersection multiplicity
    std::size_t determinant_failures = 0;     // non-positive edge determinants, wrong arrow count
    std::size_t branch_pairs = 0;
    std::size_t errors = 0;
    std::vector<std::string> samples;  // first few failures

    [[nodiscard]] bool ok() const
    {
        return ultrametric_violations + qmap_mismatches + characteristic_mismatches + non_integral +
                   intersection_mismatches + linking_mismatches + determinant_failures + errors ==
               0;
    }
};

inline void note(PropertyReport& r, const Curve& c, const std::string& what)
{
    if (r.samples.size() < 5)
        r.samples.push_back(what + " on\n" + curvelab::render_curve(c));
}

inline void check_curve(const Curve& c, PropertyReport& r)
{
    using namespace curvelab;
    ++r.curves;
    try {
        const QMap q = q_map(c);
        const ContactTable t = contact_table(c);
        const std::size_t lib_bad = verify_ultrametric(q.q).size();
        const std::size_t ora_bad = ultrametric_violations(t);
        r.ultrametric_violations += lib_bad + ora_bad;
        if (lib_bad + ora_bad)
            note(r, c, "ultrametric violation");

        for (std::size_t j = 0; j < t.sheets.size(); ++j)
            for (std::size_t k = 0; k < t.sheets.size(); ++k) {
                if (j == k)
                    continue;
                const ExtendedRational& lib = q.q.at(j, k);
                const bool same = t.q[j][k] ? lib.is_finite() && lib.value() == *t.q[j][k] : lib.is_infinite();
                if (!same) {
                    ++r.qmap_mismatches;
                    note(r, c, "q-map entry mismatch");
                }
            }

        for (std::size_t b = 0; b < c.size(); ++b) {
            std::set<Rational> within;
            for (std::size_t j = 0; j < q.sheets.size(); ++j)
                for (std::size_t k = j + 1; k < q.sheets.size(); ++k)
                    if (q.sheets[j].branch == b && q.sheets[k].branch == b)
                        within.insert(q.q.at(j, k).value());
            const std::vector<Rational> lib(within.begin(), within.end());
            if (lib != characteristic(c.branch(b)) || lib != characteristic_exponents(c.branch(b))) {
                ++r.characteristic_mismatches;
                note(r, c, "characteristic exponent mismatch");
            }
        }

        const SpliceDiagram d = build_splice(eggers_reduce(carrousel_tree(c)));
        bool det_ok = d.arrows().size() == c.size();
        for (const EdgeDeterminant& e : edge_determinants(d))
            det_ok = det_ok && e.value > 0;
        if (!det_ok) {
            ++r.determinant_failures;
            note(r, c, "edge determinant or arrow count failure");
        }
        if (c.size() > 1) {
            for (std::size_t a = 0; a < c.size(); ++a)
                for (std::size_t b = a + 1; b < c.size(); ++b) {
                    ++r.branch_pairs;
                    const Rational expected = intersection(c, a, b);
                    if (!expected.is_integer()) {
                        ++r.non_integral;
                        note(r, c, "non-integral intersection multiplicity");
                        continue;
                    }
                    const BigInt im = intersection_multiplicity(c, a, b);
                    if (Rational(im, BigInt(1)) != expected) {
                        ++r.intersection_mismatches;
                        note(r, c, "intersection multiplicity mismatch");
                    }
                    if (linking_number(d, d.arrow_of(a), d.arrow_of(b)) != im) {
                        ++r.linking_mismatches;
                        note(r, c, "linking number mismatch");
                    }
                }
        }
    } catch (const std::exception& e) {
        ++r.errors;
        note(r, c, std::string("exception: ") + e.what());
    }
}

inline PropertyReport run_property_suite(std::size_t count, unsigned seed)
{
    std::mt19937 rng(seed);
    PropertyReport r;
    for (std::size_t i = 0; i < count; ++i)
        check_curve(random_curve(rng), r);
    return r;
}

inline std::string describe(const PropertyReport& r)
{
    std::ostringstream os;
    os << r.curves << " curves, " << r.branch_pairs << " branch pairs; ultrametric violations "
       << r.ultrametric_violations << ", q-map mismatches " << r.qmap_mismatches << ", characteristic mismatches "
       << r.characteristic_mismatches << ", non-integral " << r.non_integral << ", intersection mismatches "
       << r.intersection_mismatches << ", linking mismatches " << r.linking_mismatches << ", determinant failures " << r.determinant_failures
       << ", errors " << r.errors;
    for (const std::string& s : r.samples)
        os << "\n  " << s;
    return os.str();
}

}  // namespace oracle
