#include "expeq/problem.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "expeq/errors.hpp"

namespace expeq {

using nlohmann::json;

nlohmann::json algebraic_to_json(const AlgebraicNumber& a, Prec bits) {
    json out;
    json mp = json::array();
    for (const auto& c : a.minpoly().coeffs()) mp.push_back(c.str());
    out["minpoly"] = mp;
    const ComplexBox& b = a.isolating_box();
    out["approx"] = {{"re", b.re().str_exact()}, {"im", b.im().str_exact()}, {"rad", b.rad().str_exact()}};
    (void)bits;
    return out;
}

AlgebraicNumber algebraic_from_json(const json& j, const PrecisionContext& ctx) {
    if (j.is_string()) return AlgebraicNumber(Rational::parse(j.get<std::string>()));
    if (!j.is_object() || !j.contains("minpoly") || !j.contains("approx"))
        throw InvalidInput("algebraic record needs minpoly and approx");
    std::vector<Integer> c;
    for (const auto& v : j.at("minpoly")) c.emplace_back(v.get<std::string>());
    IntPolynomial mp{std::move(c)};
    const json& ap = j.at("approx");
    Rational re = Rational::parse(ap.at("re").get<std::string>());
    Rational im = Rational::parse(ap.at("im").get<std::string>());
    Rational rad = Rational::parse(ap.at("rad").get<std::string>());
    if (rad < Rational(0)) throw InvalidInput("negative approx radius");
    Prec p = ctx.bits;
    ComplexBox box = widen(ComplexBox::exact(re, im, p), Real::from_rational(rad, p, MPFR_RNDU), p);
    return {mp, box, ctx};
}

namespace {


json coeff_value_to_json(const AlgebraicNumber& a) {
    if (a.is_rational()) return json{{"rational", a.as_rational().str()}};
    return json{{"algebraic", algebraic_to_json(a)}};
}

json formal_poly_to_json(const FormalPoly& p) {
    json terms = json::array();
    for (const auto& [m, v] : p.terms()) {
        json mono = json::object();
        for (const auto& [name, e] : m) mono[name] = e;
        json term;
        term["monomial"] = mono;
        term["value"] = coeff_value_to_json(v);
        terms.push_back(term);
    }
    return terms;
}

FormalPoly formal_poly_from_json(const json& terms, const PrecisionContext& ctx) {
    FormalPoly out;
    for (const auto& term : terms) {
        Monomial m;
        if (term.contains("monomial")) {
            for (auto it = term.at("monomial").begin(); it != term.at("monomial").end(); ++it) {
                int e = it.value().get<int>();
                if (e != 0) m[it.key()] = e;
            }
        }
        const json& v = term.at("value");
        AlgebraicNumber a;
        if (v.is_string()) {
            a = AlgebraicNumber(Rational::parse(v.get<std::string>()));
        } else if (v.contains("rational")) {
            a = AlgebraicNumber(Rational::parse(v.at("rational").get<std::string>()));
        } else if (v.contains("algebraic")) {
            a = algebraic_from_json(v.at("algebraic"), ctx);
        } else {
            throw InvalidInput("formal term value must be rational or algebraic");
        }
        out.add_term(m, a);
    }
    return out;
}

json coefficient_to_json(const FormalCoefficient& c) {
    if (c.is_constant() && !c.has_denominator()) {
        AlgebraicNumber a = c.num().is_zero() ? AlgebraicNumber(Rational(0)) : c.num().constant_value();
        return coeff_value_to_json(a);
    }
    json out;
    json f;
    f["num"] = formal_poly_to_json(c.num());
    if (c.has_denominator()) f["den"] = formal_poly_to_json(c.den());
    out["formal"] = f;
    return out;
}

FormalCoefficient coefficient_from_json(const json& v, const PrecisionContext& ctx) {
    if (v.is_string())
        return FormalCoefficient::constant(Rational::parse(v.get<std::string>()));
    if (v.contains("rational"))
        return FormalCoefficient::constant(Rational::parse(v.at("rational").get<std::string>()));
    if (v.contains("algebraic"))
        return FormalCoefficient::constant(algebraic_from_json(v.at("algebraic"), ctx));
    if (v.contains("formal")) {
        const json& f = v.at("formal");
        FormalPoly num = formal_poly_from_json(f.at("num"), ctx);
        FormalPoly den = f.contains("den") ? formal_poly_from_json(f.at("den"), ctx)
                                           : FormalPoly::constant(Rational(1));
        return {num, den, {}};
    }
    throw InvalidInput("coefficient must be rational, algebraic, or formal");
}

json basis_entry_to_json(const LogElement& e) {
    switch (e.kind) {
        case LogElement::Kind::log_of_algebraic: {
            json out;
            out["log_of"] = e.lambda.is_rational() ? json(e.lambda.as_rational().str())
                                                   : algebraic_to_json(e.lambda);
            out["branch"] = e.branch;
            return out;
        }
        case LogElement::Kind::two_pi_i_scaled: {
            const Rational& r = e.two_pi_multiple;
            if (r.num().is_one()) return json{{"two_pi_i_over", r.den().str()}};
            return json{{"two_pi_i_times", r.str()}};
        }
        case LogElement::Kind::formal:
            return json{{"formal", e.name}};
    }
    throw InvalidInput("unknown basis kind");
}

} // namespace

nlohmann::json equation_to_json(const ExpPolyEquation& eq) {
    json out;
    json poly = json::array();
    for (const auto& [e, v] : eq.p.terms()) {
        json term;
        term["monomial"] = json::array({e.first, e.second});
        term["value"] = coefficient_to_json(v);
        poly.push_back(term);
    }
    out["polynomial"] = poly;
    json basis = json::array();
    for (const auto& b : eq.basis) basis.push_back(basis_entry_to_json(b));
    out["basis"] = basis;
    json tv = json::object();
    for (const auto& [name, def] : eq.symbols) {
        if (def.kind == SymbolDef::Kind::free_box) {
            tv[name] = {{"re", def.re.str()}, {"im", def.im.str()}, {"rad", def.rad.str()}};
        } else {
            json combo = json::array();
            for (const auto& q : def.combo) combo.push_back(q.str());
            tv[name] = {{"basis_combination", combo}};
        }
    }
    out["transcendental_values"] = tv;
    out["asserted_independent"] = eq.asserted_independent;
    return out;
}

nlohmann::json problem_to_json(const ProblemFile& pf) {
    json out = equation_to_json(pf.equation);
    out["denominator_N"] = pf.denominator_N.str();
    json classes = json::array();
    for (const auto& cls : pf.class_translates) {
        json row = json::array();
        for (const auto& z : cls) row.push_back(z.str());
        classes.push_back(row);
    }
    out["class_translates"] = classes;
    out["precision_bits"] = static_cast<long>(pf.precision_bits);
    out["guards"] = {{"enumeration", pf.guards.enumeration},
                     {"degree_cap", pf.guards.degree_cap},
                     {"precision_cap", static_cast<long>(pf.guards.precision_cap)},
                     {"subset_terms", pf.guards.subset_terms}};
    return out;
}

ProblemFile parse_problem_json(const json& j) {
    std::vector<std::string> violations;
    ProblemFile pf;

    if (j.contains("precision_bits")) pf.precision_bits = j.at("precision_bits").get<long>();
    if (pf.precision_bits < 16 || pf.precision_bits > 1 << 20)
        violations.push_back("precision_bits out of range");
    if (j.contains("guards")) {
        const json& g = j.at("guards");
        if (g.contains("enumeration")) pf.guards.enumeration = g.at("enumeration").get<long>();
        if (g.contains("degree_cap")) pf.guards.degree_cap = g.at("degree_cap").get<int>();
        if (g.contains("precision_cap")) pf.guards.precision_cap = g.at("precision_cap").get<long>();
        if (g.contains("subset_terms")) pf.guards.subset_terms = g.at("subset_terms").get<int>();
    }
    PrecisionContext pc{pf.precision_bits, pf.guards.precision_cap};

    ExpPolyEquation& eq = pf.equation;

    // Basis first (symbol combinations need its length).
    if (!j.contains("basis") || !j.at("basis").is_array() || j.at("basis").empty()) {
        violations.push_back("basis: missing or empty");
    } else {
        for (const auto& b : j.at("basis")) {
            try {
                if (b.contains("log_of")) {
                    AlgebraicNumber lambda = algebraic_from_json(b.at("log_of"), pc);
                    long branch = b.contains("branch") ? b.at("branch").get<long>() : 0;
                    if (lambda.is_zero()) {
                        violations.push_back("basis: logarithm of zero");
                        continue;
                    }
                    eq.basis.push_back(LogElement::log_of(lambda, branch));
                } else if (b.contains("two_pi_i_over")) {
                    Integer n = b.at("two_pi_i_over").is_string()
                                    ? Integer(b.at("two_pi_i_over").get<std::string>())
                                    : Integer(b.at("two_pi_i_over").get<long>());
                    if (n < Integer(1)) {
                        violations.push_back("basis: two_pi_i_over must be >= 1");
                        continue;
                    }
                    eq.basis.push_back(LogElement::two_pi_i(Rational(Integer(1), n)));
                } else if (b.contains("two_pi_i_times")) {
                    Rational r = Rational::parse(b.at("two_pi_i_times").get<std::string>());
                    if (r.is_zero()) {
                        violations.push_back("basis: two_pi_i_times must be nonzero");
                        continue;
                    }
                    eq.basis.push_back(LogElement::two_pi_i(r));
                } else if (b.contains("formal")) {
                    std::string name = b.at("formal").get<std::string>();
                    if (name.empty() || name[0] == '@') {
                        violations.push_back("basis: formal names must be nonempty and not start with '@'");
                        continue;
                    }
                    eq.basis.push_back(LogElement::formal(name));
                } else {
                    violations.push_back("basis: unknown entry kind");
                }
            } catch (const Error& e) {
                violations.push_back(std::string("basis: ") + e.what());
            }
        }
    }

    // Symbols.
    if (j.contains("transcendental_values")) {
        for (auto it = j.at("transcendental_values").begin(); it != j.at("transcendental_values").end();
             ++it) {
            const json& v = it.value();
            SymbolDef def;
            try {
                if (v.contains("basis_combination")) {
                    def.kind = SymbolDef::Kind::basis_combination;
                    for (const auto& q : v.at("basis_combination"))
                        def.combo.push_back(Rational::parse(q.get<std::string>()));
                    if (def.combo.size() != eq.basis.size()) {
                        violations.push_back("symbol " + it.key() + ": combination length != basis length");
                        continue;
                    }
                    for (size_t k = 0; k < def.combo.size(); ++k) {
                        if (!def.combo[k].is_zero() && !eq.basis[k].algebraic_exponential())
                            violations.push_back("symbol " + it.key() +
                                                 ": combination may only weight entries with algebraic "
                                                 "exponential");
                    }
                } else {
                    def.kind = SymbolDef::Kind::free_box;
                    def.re = Rational::parse(v.at("re").get<std::string>());
                    def.im = Rational::parse(v.at("im").get<std::string>());
                    def.rad = v.contains("rad") ? Rational::parse(v.at("rad").get<std::string>()) : Rational(0);
                    if (def.rad < Rational(0)) violations.push_back("symbol " + it.key() + ": negative radius");
                }
                eq.symbols[it.key()] = def;
            } catch (const Error& e) {
                violations.push_back("symbol " + it.key() + ": " + e.what());
            } catch (const json::exception& e) {
                violations.push_back("symbol " + it.key() + ": " + e.what());
            }
        }
    }

    // Polynomial.
    if (!j.contains("polynomial") || !j.at("polynomial").is_array() || j.at("polynomial").empty()) {
        violations.push_back("polynomial: zero polynomial");
    } else {
        std::set<std::pair<int, int>> seen;
        for (const auto& term : j.at("polynomial")) {
            try {
                auto mono = term.at("monomial");
                int i = mono.at(0).get<int>();
                int k = mono.at(1).get<int>();
                if (i < 0 || k < 0) {
                    violations.push_back("polynomial: negative exponents");
                    continue;
                }
                if (!seen.insert({i, k}).second) {
                    violations.push_back("polynomial: duplicate monomial (" + std::to_string(i) + "," +
                                         std::to_string(k) + ")");
                    continue;
                }
                FormalCoefficient c = coefficient_from_json(term.at("value"), pc);
                eq.p.add_term({i, k}, c);
            } catch (const Error& e) {
                violations.push_back(std::string("polynomial: ") + e.what());
            } catch (const json::exception& e) {
                violations.push_back(std::string("polynomial: ") + e.what());
            }
        }
        if (eq.p.is_zero() && violations.empty()) violations.push_back("polynomial: zero polynomial");
    }

    // Symbols referenced by coefficients must have values (user names only).
    for (const auto& [e, v] : eq.p.terms()) {
        for (const auto& s : v.symbols()) {
            if (!s.empty() && s[0] == '@') continue; // reserved (internal) names
            if (!eq.symbols.count(s))
                violations.push_back("symbol " + s + " has no value in transcendental_values");
        }
    }

    eq.asserted_independent = j.value("asserted_independent", false);

    if (j.contains("denominator_N")) {
        pf.denominator_N = j.at("denominator_N").is_string()
                               ? Integer(j.at("denominator_N").get<std::string>())
                               : Integer(j.at("denominator_N").get<long>());
        if (pf.denominator_N < Integer(1)) violations.push_back("denominator_N must be >= 1");
    }
    if (j.contains("class_translates")) {
        for (const auto& row : j.at("class_translates")) {
            std::vector<Integer> cls;
            for (const auto& z : row)
                cls.push_back(z.is_string() ? Integer(z.get<std::string>()) : Integer(z.get<long>()));
            if (cls.size() != eq.basis.size())
                violations.push_back("class_translates: dimension mismatch");
            pf.class_translates.push_back(std::move(cls));
        }
    }

    // Independence screening when asserted.
    if (eq.asserted_independent && violations.empty()) {
        std::vector<ComplexBox> views;
        for (size_t k = 0; k < eq.basis.size(); ++k) views.push_back(eq.basis_value(k, pf.precision_bits));
        auto rels = find_integer_relations(views, Integer(100), pc);
        if (!rels.empty()) {
            std::string msg = "asserted_independent, but a candidate relation was found: (";
            for (size_t k = 0; k < rels[0].coefficients.size(); ++k)
                msg += (k ? "," : "") + rels[0].coefficients[k].str();
            violations.push_back(msg + ")");
        }
    }

    if (!violations.empty()) {
        std::string all = "problem validation failed:";
        for (const auto& v : violations) all += "\n  - " + v;
        throw InvalidInput(all);
    }
    return pf;
}

ProblemFile parse_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read problem file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("problem file is not valid JSON: ") + e.what());
    }
    return parse_problem_json(j);
}

nlohmann::json interval_to_json(const RealInterval& iv, Prec bits) {
    return json{{"lower", iv.lo().str_exact()},
                {"upper", iv.hi().str_exact()},
                {"precision_bits", static_cast<long>(bits)}};
}

nlohmann::json certificate_to_json(const FinitenessCertificate& cert) {
    json out;
    out["verdict"] = cert.verdict;
    out["total_exactly_verified"] = cert.total_exactly_verified;
    out["total_probable"] = cert.total_probable;
    json branches = json::array();
    for (const auto& b : cert.branches) {
        json jb;
        jb["label"] = b.label;
        jb["verdict"] = b.verdict;
        jb["bound_B"] = b.bound_B;
        jb["height_chain_used"] = b.height_chain_used;
        if (b.a3) jb["constants"]["a3"] = {{"lower", b.a3->lo().str_exact()}, {"upper", b.a3->hi().str_exact()}};
        jb["constants"]["A"] = b.chain_A.str_exact();
        jb["constants"]["C"] = b.chain_C.str_exact();
        jb["candidates_total"] = b.candidates_total.str();
        jb["exactly_verified"] = b.exactly_verified;
        jb["probable"] = b.probable;
        jb["certified_non_solutions"] = b.certified_non_solutions.str();
        json sols = json::array();
        for (const auto& s : b.solutions) {
            json js;
            json nv = json::array();
            for (const auto& z : s.n) nv.push_back(z.str());
            js["n"] = nv;
            json ov = json::array();
            for (const auto& q : s.original) ov.push_back(q.str());
            js["original"] = ov;
            js["status"] = s.status == CandidateStatus::exactly_verified ? "exactly_verified" : "probable";
            js["precision"] = static_cast<long>(s.precision);
            if (s.all_coefficients_vanish) js["all_coefficients_vanish"] = true;
            sols.push_back(js);
        }
        jb["solutions"] = sols;
        json notes = json::array();
        for (const auto& nstr : b.exceptional_notes) notes.push_back(nstr);
        jb["exceptional_notes"] = notes;
        json sg = json::object();
        for (const auto& [k, v] : b.sigma) sg[k] = v;
        jb["sigma"] = sg;
        branches.push_back(jb);
    }
    out["branches"] = branches;
    return out;
}

} // namespace expeq
