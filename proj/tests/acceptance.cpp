// Acceptance criteria 1-8. One PASS/FAIL line per criterion, followed by the
// individual comparisons and, for failures, the evidence gathered about them.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <wtw/pseudoharmonic.hpp>

#include "cli.hpp"
#include "oracles.hpp"

using namespace wtw;
using namespace wtw::test;

namespace
{

struct Criterion {
    int id;
    std::string title;
    bool passed = true;
    std::vector<std::string> details;
    std::vector<std::string> diagnosis;
    double seconds = 0;

    void expect(bool ok, const std::string &what)
    {
        passed = passed && ok;
        details.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
    }
    void note(const std::string &s) { diagnosis.push_back(s); }
};

std::string signs_tag(int e1, int e2)
{
    return "kodaira(" + std::string(e1 > 0 ? "+1" : "-1") + "," + (e2 > 0 ? "+1" : "-1") + ")";
}

std::string join(const std::vector<std::string> &v, const std::string &sep = ", ")
{
    std::string r;
    for (const auto &s : v) {
        r += (r.empty() ? "" : sep) + s;
    }
    return r.empty() ? "{}" : r;
}

std::string rendered(const ConditionSystem &s) { return "{" + join(s.rendered()) + "}"; }

using Table = std::map<std::pair<int, int>, std::string>;

// Entries of b differing from the table (1-based; unlisted entries are 0).
std::vector<std::string> table_mismatches(const FrameSpec &f, const std::string &symbol, const BilinearForm &b,
                                          const Table &table)
{
    std::vector<std::string> bad;
    for (std::size_t i = 0; i < b.dim(); ++i) {
        for (std::size_t k = 0; k < b.dim(); ++k) {
            const auto it = table.find({static_cast<int>(i + 1), static_cast<int>(k + 1)});
            const Scalar expected = it == table.end() ? Scalar(0) : poly(f, it->second);
            if (b(i, k) != expected) {
                bad.push_back(symbol + "[" + std::to_string(i + 1) + "][" + std::to_string(k + 1) + "] computed " +
                              b(i, k).str() + ", displayed " + expected.str());
            }
        }
    }
    return bad;
}

void expect_table(Criterion &c, const std::string &label, const FrameSpec &f, const std::string &symbol,
                  const BilinearForm &b, const Table &table)
{
    const auto bad = table_mismatches(f, symbol, b, table);
    c.expect(bad.empty(), label + ": " + symbol + " table, " + std::to_string(b.dim() * b.dim() - bad.size()) +
                              " of " + std::to_string(b.dim() * b.dim()) + " entries agree");
    for (const auto &m : bad) {
        c.details.push_back("        " + m);
    }
}

struct GammaEntry {
    int i, j, k;
    Rational v;
};

void expect_connection(Criterion &c, const std::string &label, const Connection &conn,
                       const std::vector<GammaEntry> &table)
{
    Tensor<3> expected(conn.dim(), nullptr);
    for (const auto &e : table) {
        expected(e.i - 1, e.j - 1, e.k - 1) = Scalar(e.v);
    }
    std::size_t agree = 0;
    for (std::size_t p = 0; p < expected.flat().size(); ++p) {
        agree += conn.gamma.flat()[p] == expected.flat()[p] ? 1 : 0;
    }
    c.expect(agree == expected.flat().size(), label + ": " + std::to_string(agree) + " of " +
                                  std::to_string(expected.flat().size()) + " connection coefficients agree");
}

Table inoue_rho_displayed()
{
    return {{{1, 1}, "-a2*(a2+2)/2"}, {{1, 2}, "a1*(a2+3)/2"},          {{2, 1}, "a1*a2/2"},
            {{2, 2}, "-(a1^2+3)/2"},  {{3, 3}, "-(a1^2+a2*(a2-1))/2"}, {{4, 4}, "-(a1^2+a2*(a2-1))/2"}};
}

Table inoue_rho_star_displayed()
{
    return {{{1, 1}, "-(a2+2)/2"}, {{2, 2}, "-(a2+2)/2"}, {{1, 2}, "a1/2"},
            {{2, 1}, "-a1/2"},     {{3, 4}, "-a1/2"},     {{4, 3}, "a1/2"},
            {{3, 3}, "-(a1^2+(a2-1)^2)/4"}, {{4, 4}, "-(a1^2+(a2-1)^2)/4"}};
}

Table kodaira_rho_displayed()
{
    return {{{1, 1}, "-(a2^2+a3^2+a4^2+4)/2"}, {{1, 2}, "2*a4+a1*a2/2"},   {{1, 3}, "a1*a3/2"},
            {{3, 1}, "a1*a3/2"},                {{1, 4}, "-a2+a1*a4/2"},    {{2, 1}, "-2*a4+a1*a2/2"},
            {{2, 2}, "-(a1^2+a3^2+a4^2+4)/2"}, {{2, 3}, "a2*a3/2"},        {{3, 2}, "a2*a3/2"},
            {{2, 4}, "a1+a2*a4/2"},             {{4, 2}, "a1+a2*a4/2"},     {{3, 3}, "-(a1^2+a2^2+a4^2)/2"},
            {{3, 4}, "a3*a4/2"},                {{4, 3}, "a3*a4/2"},        {{4, 1}, "-a2+a1*a4/2"},
            {{4, 4}, "-(a1^2+a2^2+a3^2-4)/2"}};
}

Table kodaira_rho_star_displayed(int e1, int e2)
{
    const std::string e = "(" + std::to_string(e1 * e2) + ")";
    const std::string v13 = "(a1*a3+" + e + "*(2*a1+a2*a4))/4";
    const std::string v14 = "(-2*a2+a1*a4-" + e + "*a2*a3)/4";
    // rho*_13 = e rho*_24 and rho*_14 = -e rho*_23 with e^2 = 1
    return {{{1, 1}, "-(a3^2+a4^2+12)/4"}, {{2, 2}, "-(a3^2+a4^2+12)/4"}, {{1, 2}, "a4"},
            {{2, 1}, "-a4"},                {{1, 3}, v13},                   {{3, 1}, v13},
            {{2, 4}, e + "*" + v13},        {{4, 2}, e + "*" + v13},         {{1, 4}, v14},
            {{4, 1}, v14},                  {{2, 3}, "-" + e + "*" + v14},   {{3, 2}, "-" + e + "*" + v14},
            {{3, 4}, "-" + e + "*a4"},      {{4, 3}, e + "*a4"},             {{3, 3}, "-(a1^2+a2^2)/4"},
            {{4, 4}, "-(a1^2+a2^2)/4"}};
}

// --- criteria --------------------------------------------------------------

void levi_civita_tables(Criterion &c)
{
    expect_connection(c, "inoue-s0", levi_civita(inoue()),
                      {{1, 1, 2, 1},
                       {1, 2, 1, -1},
                       {3, 2, 3, Rational(1, 2)},
                       {3, 3, 2, Rational(-1, 2)},
                       {4, 2, 4, Rational(1, 2)},
                       {4, 4, 2, Rational(-1, 2)}});
    for (auto [e1, e2] : all_signs()) {
        expect_connection(c, signs_tag(e1, e2), levi_civita(kodaira(e1, e2)),
                          {{1, 2, 4, -1}, {2, 1, 4, 1}, {1, 4, 2, 1}, {4, 1, 2, 1}, {2, 4, 1, -1}, {4, 2, 1, -1}});
    }
}

void curvature_table(Criterion &c)
{
    for (auto [e1, e2] : all_signs()) {
        const FrameSpec f = kodaira(e1, e2);
        const Curvature R = curvature(levi_civita(f), f);
        Tensor<4> expected(4, nullptr);
        // R_ijk = R(A_i, A_j) A_k, l the A_l component
        auto set = [&](int i, int j, int k, int l, int v) {
            expected(i - 1, j - 1, k - 1, l - 1) = Scalar(v);
            expected(j - 1, i - 1, k - 1, l - 1) = Scalar(-v);
        };
        set(1, 2, 1, 2, -3);
        set(1, 2, 2, 1, 3);
        set(1, 4, 1, 4, 1);
        set(1, 4, 4, 1, -1);
        set(2, 4, 2, 4, 1);
        set(2, 4, 4, 2, -1);
        Tensor<4> computed(4, nullptr);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                const Endo m = R.endo(i, j);
                for (std::size_t k = 0; k < 4; ++k) {
                    for (std::size_t l = 0; l < 4; ++l) {
                        computed(i, j, k, l) = m(l, k);
                    }
                }
            }
        }
        c.expect(computed == expected, signs_tag(e1, e2) + ": all 256 components of R(A_i,A_j)A_k agree");
    }
}

void ricci_tables(Criterion &c)
{
    const FrameSpec f = inoue_reduced();
    const Curvature R = curvature(weyl(f), f);
    const BilinearForm rho = ricci(R);
    expect_table(c, "inoue-s0 (phi = a1 eta1 + a2 eta2)", f, "rho_D", rho, inoue_rho_displayed());
    expect_table(c, "inoue-s0 (phi = a1 eta1 + a2 eta2)", f, "rho*_D", star_ricci(R, f.J), inoue_rho_star_displayed());
    for (auto [e1, e2] : all_signs()) {
        const FrameSpec k = kodaira(e1, e2);
        const Curvature Rk = curvature(weyl(k), k);
        expect_table(c, signs_tag(e1, e2), k, "rho_D", ricci(Rk), kodaira_rho_displayed());
        expect_table(c, signs_tag(e1, e2), k, "rho*_D", star_ricci(Rk, k.J), kodaira_rho_star_displayed(e1, e2));
    }
    if (!c.passed) {
        // rho(E1,E2) - rho(E2,E1) must equal (n/2) dphi(E1,E2)
        const Scalar target = Scalar(2) * d_oneform(f, f.phi)(0, 1);
        const Scalar displayed = poly(f, "a1*(a2+3)/2") - poly(f, "a1*a2/2");
        const Scalar computed = rho(0, 1) - rho(1, 0);
        c.note("displayed rho_12 - rho_21 = " + displayed.str() + ", but (n/2) dphi(E1,E2) = " + target.str() +
               "; computed entries give " + computed.str());
        c.note("so the displayed rho_21 = a1*a2/2 violates the antisymmetry identity; a1*(a2-1)/2 satisfies it");
        c.note("every other displayed entry, and all Kodaira tables for the four sign pairs, agree exactly");
    }
}

void condition_systems(Criterion &c)
{
    const FrameSpec inoue_full = inoue();
    const ConditionSystem ci = condition_i(inoue_full);
    c.expect(same_system(ci, std::vector<Scalar>{poly(inoue_full, "a3"), poly(inoue_full, "a4")}),
             "inoue-s0 condition (i) = " + rendered(ci) + ", displayed {a3, a4}");
    const FrameSpec f = inoue_reduced();
    const ConditionSystem cii = condition_ii(inoue_full);
    const auto displayed = normalize_system(inoue_display(f));
    c.expect(same_system(cii, displayed),
             "inoue-s0 condition (ii) = " + rendered(cii) + ", displayed " + rendered(displayed));
    bool inoue_red = !same_system(cii, displayed);

    std::vector<Signs> red_signs;
    for (auto [e1, e2] : all_signs()) {
        const FrameSpec k = kodaira(e1, e2);
        const ConditionSystem s = condition_ii(k);
        const auto d = normalize_system(kodaira_display(k, e1, e2));
        const bool ok = same_system(s, d);
        c.expect(ok, signs_tag(e1, e2) + " condition (ii) = " + rendered(s) + ", displayed " + rendered(d));
        if (!ok) {
            red_signs.push_back({e1, e2});
        }
    }

    if (inoue_red) {
        const Curvature R = curvature(weyl(f), f);
        BilinearForm rho = ricci(R);
        rho(1, 0) = poly(f, "a1*a2/2");
        const auto with_printed =
            normalize_system(condition_ii_from(f, lee_form(f).theta, rho, star_ricci(R, f.J)));
        c.note("inoue-s0: inserting the displayed rho_21 = a1*a2/2 reproduces the displayed system: " +
               std::string(same_system(with_printed, displayed) ? "yes" : "no") + " " + rendered(with_printed));
        const HorizontalTrace h = h_trace(f);
        c.note("inoue-s0: the horizontal trace at E1, computed without any Ricci data, is " + h.direct[0].str() +
               ", so no equation a1*(a2-1) = 0 arises");
        c.note("both systems have the same real solution a1 = 0, a2 = 1");
    }
    for (auto [e1, e2] : red_signs) {
        const FrameSpec k = kodaira(e1, e2);
        const Vector stated = kodaira_stated_theta(k, e1);
        const Vector theta = lee_form(k).theta;
        const TwoForm omega = fundamental_form(k);
        const bool stated_lee = (d_twoform(k, omega) - wedge_forms(stated, omega)).is_zero();
        const bool computed_lee = (d_twoform(k, omega) - wedge_forms(theta, omega)).is_zero();
        const Curvature R = curvature(weyl(k), k);
        const auto from_stated = normalize_system(condition_ii_from(k, stated, ricci(R), star_ricci(R, k.J)));
        c.note(signs_tag(e1, e2) + ": theta = " + theta[2].str() + " alpha3 satisfies dOmega = theta ^ Omega: " +
               (computed_lee ? "yes" : "no") + "; the stated theta = " + std::to_string(-2 * e1) +
               " alpha3: " + (stated_lee ? "yes" : "no"));
        c.note(signs_tag(e1, e2) + ": the stated theta reproduces the displayed system: " +
               (same_system(from_stated, kodaira_display(k, e1, e2)) ? "yes" : "no"));
    }
}

void solution_families(Criterion &c)
{
    ConditionReport inoue_report = condition_report(inoue());
    const auto v = verify_assignment(inoue_report, {{"a1", 0}, {"a2", 1}});
    c.expect(v.holds, "inoue-s0 {a1:0, a2:1} (a3 = a4 = 0 forced by condition (i))");

    std::vector<std::string> failures;
    for (auto [e1, e2] : all_signs()) {
        ConditionReport r = condition_report(kodaira(e1, e2));
        auto family = [&](const Assignment &a, const std::string &label) {
            const auto verdict = verify_assignment(r, a);
            std::vector<std::string> rest;
            for (const auto &p : verdict.condition_ii) {
                if (!p.is_zero()) {
                    rest.push_back(p.str());
                }
            }
            c.expect(verdict.holds, signs_tag(e1, e2) + " " + label +
                                        (verdict.holds ? "" : ": remaining " + join(rest)));
            if (!verdict.holds) {
                failures.push_back(signs_tag(e1, e2));
            }
        };
        if (e2 == 1) {
            family({{"a1", 0}, {"a2", 0}}, "{a1:0, a2:0}, a3 and a4 symbolic");
        } else {
            family({{"a3", -2 * e1}, {"a4", 0}}, "{a3:" + std::to_string(-2 * e1) + ", a4:0}, a1 and a2 symbolic");
            family({{"a1", 0}, {"a2", 0}, {"a4", 0}}, "{a1:0, a2:0, a4:0}, a3 symbolic");
        }
    }
    if (!failures.empty()) {
        c.note("for e2 = -1 the generated system is {a1^2 + a2^2} (see criterion 4), so a3 = -2 e1, a4 = 0 leaves a1^2 + a2^2");
        for (int e1 : {1, -1}) {
            const FrameSpec k = kodaira(e1, -1);
            Assignment a{{"a3", -2 * e1}, {"a4", 0}};
            bool zero = true;
            for (const auto &p : kodaira_display(k, e1, -1)) {
                zero = zero && p.substitute(a).is_zero();
            }
            c.note(signs_tag(e1, -1) + ": the family does annihilate the displayed system: " + (zero ? "yes" : "no") +
                   "; that system comes from theta = -2 e1 alpha3, which is not the Lee form here");
        }
    }
}

void identity_suite_all(Criterion &c)
{
    std::vector<FrameSpec> specs{inoue()};
    for (auto [e1, e2] : all_signs()) {
        specs.push_back(kodaira(e1, e2));
    }
    std::mt19937 rng(20261014);
    for (const auto &f : specs) {
        CheckReport r;
        const Connection d = weyl(f);
        const Curvature curv = curvature(d, f);
        r.append(identity_suite(curv, f));
        r.append(ricci_formula_check(f));
        r.append(nabla_j_checks(f));
        const VerticalBasis vb = vertical_basis(f.J);
        for (int round = 0; round < 3; ++round) {
            const Endo a = random_skew(rng, f.dimension);
            const Endo b = random_skew(rng, f.dimension);
            r.append(lemma_rab_check(f, a, b));
            r.append(endo_curvature_check(d, curv, f, a));
            Endo v = vertical_projection(f.J, a);
            r.append(lemma_jv_check(f, v));
        }
        for (std::size_t k = 0; k < vb.size(); ++k) {
            r.append(lemma_jv_check(f, vb.elements[k]));
            r.append(lemma_rab_check(f, f.J, vb.elements[k]));
        }
        r.append(lemma_rjdj_check(f));
        std::vector<std::string> bad;
        std::map<std::string, int> names;
        for (const auto &ch : r.checks) {
            ++names[ch.name];
            if (!ch.passed()) {
                bad.push_back(ch.name + " " + ch.nonzero.front());
            }
        }
        std::vector<std::string> listed;
        for (const auto &[name, count] : names) {
            listed.push_back(count > 1 ? name + " x" + std::to_string(count) : name);
        }
        c.expect(bad.empty(), f.name + ": " + std::to_string(r.checks.size()) + " checks with zero residual");
        c.details.push_back("        " + join(listed));
        for (const auto &b : bad) {
            c.details.push_back("        nonzero: " + b);
        }
    }
}

void trace_equivalence(Criterion &c)
{
    std::vector<FrameSpec> specs{inoue()};
    for (auto [e1, e2] : all_signs()) {
        specs.push_back(kodaira(e1, e2));
    }
    for (const auto &f : specs) {
        const CheckReport eq = equivalence_check(f);
        for (const auto &ch : eq.checks) {
            c.expect(ch.passed(), f.name + ": " + ch.name + " (" + std::to_string(ch.entries) + " entries)");
        }
        const FrameSpec lee = with_phi(f, lee_form(f).theta);
        bool dj_zero = true;
        for (const auto &m : cov_deriv_endo(weyl(lee), lee.J)) {
            dj_zero = dj_zero && m.is_zero();
        }
        c.expect(dj_zero, f.name + " with phi = theta: DJ = 0");
        c.expect(is_zero(h_trace(lee).direct) && v_trace(lee).direct.is_zero(),
                 f.name + " with phi = theta: both traces vanish identically");
    }
}

void gate_behaviour(Criterion &c)
{
    const FrameSpec bad = nonintegrable();
    c.expect(!nijenhuis(bad).integrable(), "the four-dimensional solvable frame has N != 0");
    auto rejected = [&](const std::string &what, auto &&fn) {
        try {
            fn();
            c.expect(false, what + " accepted a non-integrable J");
        } catch (const GateError &e) {
            c.expect(e.assumption() == kAssumptionIntegrable, what + " rejected: " + e.what());
        }
    };
    rejected("conditions", [&] { condition_report(bad); });
    rejected("h_trace", [&] { h_trace(bad); });
    rejected("v_trace", [&] { v_trace(bad); });
    std::ostringstream out, err;
    const int code = cli::run({"conditions", "--spec", data_path("nonintegrable.spec").string()}, out, err);
    c.expect(code == 1 && err.str().find(kAssumptionIntegrable) != std::string::npos,
             "wtw conditions exits " + std::to_string(code) + " naming \"" + kAssumptionIntegrable + "\"");
}

} // namespace

int main()
{
    struct Entry {
        int id;
        const char *title;
        void (*run)(Criterion &);
    };
    const std::vector<Entry> entries{
        {1, "Levi-Civita tables of the Inoue and Kodaira frames", levi_civita_tables},
        {2, "Levi-Civita curvature of the Kodaira frame", curvature_table},
        {3, "Ricci and *-Ricci tables", ricci_tables},
        {4, "condition systems", condition_systems},
        {5, "solution families", solution_families},
        {6, "identity suite with fully symbolic phi", identity_suite_all},
        {7, "trace equivalence and phi = theta", trace_equivalence},
        {8, "gate rejects a non-integrable J", gate_behaviour},
    };
    int failed = 0;
    double total = 0;
    for (const auto &e : entries) {
        Criterion c;
        c.id = e.id;
        c.title = e.title;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            e.run(c);
        } catch (const std::exception &ex) {
            c.expect(false, std::string("exception: ") + ex.what());
        }
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        total += c.seconds;
        failed += c.passed ? 0 : 1;
        char time[32];
        std::snprintf(time, sizeof time, "%.2f s", c.seconds);
        std::cout << (c.passed ? "PASS" : "FAIL") << "  " << c.id << "  " << c.title << "  (" << time << ")\n";
        for (const auto &d : c.details) {
            std::cout << "      " << d << '\n';
        }
        for (const auto &d : c.diagnosis) {
            std::cout << "      diagnosis: " << d << '\n';
        }
    }
    char time[32];
    std::snprintf(time, sizeof time, "%.2f s", total);
    std::cout << entries.size() - failed << " of " << entries.size() << " criteria pass  (" << time << ")\n";
    return failed == 0 ? 0 : 1;
}
