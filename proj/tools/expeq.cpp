/* expeq: exact reductions and a certified finiteness engine for
 * polynomial-exponential equations p(z, exp(z)) = 0.
 *
 * Structured JSON goes to stdout (byte-deterministic for identical inputs);
 * human-readable summaries and timings go to stderr. Exit codes: 0 result
 * produced, 2 invalid input, 3 precision exhausted (probable statuses
 * remain), 4 guard exceeded.
 */

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "expeq/analytic.hpp"
#include "expeq/problem.hpp"

using namespace expeq;
using nlohmann::json;

namespace {

std::string fnv1a_digest(const std::string& data) {
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Out {
    std::string command;
    std::string digest;
    json outputs = json::object();
    std::vector<std::string> warnings;
    // Transform subcommands write composable problem files to --out (one per
    // entry; multi-entry names get a residue suffix). Everything else writes
    // the full record.
    std::vector<json> problem_files;
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw InvalidInput("cannot write: " + path);
    f << text;
    std::cerr << "wrote " << path << "\n";
}

void emit(const Out& out, const std::string& out_path) {
    json report;
    report["command"] = out.command;
    report["inputs_digest"] = out.digest;
    report["outputs"] = out.outputs;
    report["precision_escalations"] = escalation_count();
    report["warnings"] = out.warnings;
    std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    if (out.problem_files.size() == 1) {
        write_file(out_path, out.problem_files[0].dump(2) + "\n");
    } else if (out.problem_files.size() > 1) {
        auto dot = out_path.rfind('.');
        std::string stem = dot == std::string::npos ? out_path : out_path.substr(0, dot);
        std::string ext = dot == std::string::npos ? "" : out_path.substr(dot);
        for (size_t i = 0; i < out.problem_files.size(); ++i)
            write_file(stem + "-" + std::to_string(i) + ext, out.problem_files[i].dump(2) + "\n");
    } else {
        write_file(out_path, text);
    }
}

std::vector<Rational> parse_rational_list(const std::string& csv) {
    std::vector<Rational> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(Rational::parse(item));
    }
    return out;
}

std::vector<Integer> parse_integer_list(const std::string& csv) {
    std::vector<Integer> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.emplace_back(item);
    }
    return out;
}

IntPolynomial parse_poly_arg(const std::string& csv) {
    std::vector<Integer> c = parse_integer_list(csv);
    return IntPolynomial{std::move(c)};
}

json height_json(const HeightValue& h) {
    return json{{"lower", h.lower().str_exact()},
                {"upper", h.upper().str_exact()},
                {"precision_bits", static_cast<long>(h.precision_bits)}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact reductions and a certified finiteness engine for p(z, exp(z)) = 0"};
    app.require_subcommand(1);

    std::string problem_path, out_path, rational_arg, poly_arg, values_arg, rect_arg, radii_arg,
        assign_arg, class_arg;
    long precision = 0;
    long guard = 0;
    std::string a3_arg, chainA_arg, chainC_arg;
    long dim_arg = 1, bound_arg = 0;
    long n_arg = 1;
    long coeff_bound_arg = 1000;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--problem", problem_path, "problem file (JSON)");
        cmd->add_option("--precision", precision, "working precision in bits");
        cmd->add_option("--guard", guard, "enumeration guard override");
        cmd->add_option("--out", out_path, "write the stdout record to this path");
    };

    CLI::App* c_height = app.add_subcommand("height", "logarithmic Weil height");
    add_common(c_height);
    c_height->add_option("--rational", rational_arg, "rational p/q");
    c_height->add_option("--poly", poly_arg, "integer minimal polynomial, constant first");

    CLI::App* c_mahler = app.add_subcommand("mahler", "Mahler measure");
    add_common(c_mahler);
    c_mahler->add_option("--rational", rational_arg, "rational p/q");
    c_mahler->add_option("--poly", poly_arg, "integer polynomial, constant first");

    CLI::App* c_a3 = app.add_subcommand("a3", "certified lower height constant a3");
    add_common(c_a3);
    c_a3->add_option("--values", values_arg, "comma-separated nonzero rationals");

    CLI::App* c_indep = app.add_subcommand("indep", "multiplicative independence");
    add_common(c_indep);
    c_indep->add_option("--values", values_arg, "comma-separated nonzero rationals");

    CLI::App* c_rel = app.add_subcommand("relations", "integer-relation screening of the basis");
    add_common(c_rel);
    c_rel->add_option("--coeff-bound", coeff_bound_arg, "coefficient bound");

    CLI::App* c_expand = app.add_subcommand("expand", "exponential-sum expansion");
    add_common(c_expand);

    CLI::App* c_rescale = app.add_subcommand("rescale", "basis rescaling b -> b/N");
    add_common(c_rescale);
    c_rescale->add_option("--N", n_arg, "denominator (default: the problem's denominator_N)");

    CLI::App* c_split = app.add_subcommand("split2pi", "split along the leading 2-pi-i coordinate");
    add_common(c_split);

    CLI::App* c_spec = app.add_subcommand("specialize", "clear denominators and specialize symbols");
    add_common(c_spec);
    c_spec->add_option("--assign", assign_arg, "name=rational,... (rest follows the schedule)");

    CLI::App* c_translate =
        app.add_subcommand("translate", "class translation onto the algebraic sublattice");
    add_common(c_translate);
    c_translate->add_option("--class", class_arg, "integer translate vector, comma-separated");

    CLI::App* c_bound = app.add_subcommand("bound", "solve a3*b <= A*log b + C");
    add_common(c_bound);
    c_bound->add_option("--a3", a3_arg, "certified lower bound (decimal)")->required();
    c_bound->add_option("--A", chainA_arg, "chain slope (decimal)")->required();
    c_bound->add_option("--C", chainC_arg, "chain offset (decimal)")->required();

    CLI::App* c_enum = app.add_subcommand("enumerate", "graded-lex l1 ball");
    add_common(c_enum);
    c_enum->add_option("--dim", dim_arg, "dimension")->required();
    c_enum->add_option("--bound", bound_arg, "l1 radius")->required();

    CLI::App* c_pipe = app.add_subcommand("pipeline", "full reduction + finiteness certificate");
    add_common(c_pipe);

    CLI::App* c_count = app.add_subcommand("count-roots", "argument-principle zero counting");
    add_common(c_count);
    c_count->add_option("--rect", rect_arg, "re0,im0,re1,im1");
    c_count->add_option("--radii", radii_arg, "half-sides of nested squares");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    auto started = std::chrono::steady_clock::now();
    Out out;
    int exit_code = 0;

    try {
        PrecisionContext pc;
        auto load_problem = [&]() {
            if (problem_path.empty()) throw InvalidInput("--problem is required");
            ProblemFile pf = parse_problem(problem_path);
            if (precision > 0) pf.precision_bits = precision;
            if (guard > 0) pf.guards.enumeration = guard;
            out.digest = fnv1a_digest(slurp(problem_path));
            pc = PrecisionContext{pf.precision_bits, pf.guards.precision_cap};
            return pf;
        };
        if (precision > 0) pc.bits = precision;

        if (app.got_subcommand(c_height)) {
            out.command = "height";
            HeightValue h{};
            std::string shown;
            if (!rational_arg.empty()) {
                Rational q = Rational::parse(rational_arg);
                out.digest = fnv1a_digest(rational_arg);
                h = weil_height(AlgebraicNumber(q), pc);
                shown = "h(" + q.str() + ")";
            } else if (!poly_arg.empty()) {
                IntPolynomial f = parse_poly_arg(poly_arg);
                out.digest = fnv1a_digest(poly_arg);
                HeightValue m = mahler_measure(f, pc);
                Rational inv_deg(Integer(1), Integer(std::max(f.degree(), 1)));
                RealInterval logm = RealInterval::log(m.value, m.precision_bits);
                RealInterval hv = RealInterval::mul_scalar(logm, inv_deg, m.precision_bits);
                Real lo = hv.lo().sign() < 0 ? Real(0, m.precision_bits) : hv.lo();
                h = HeightValue{RealInterval{lo, hv.hi()}, m.precision_bits};
                shown = "h(root of " + f.str() + ")";
            } else {
                throw InvalidInput("height needs --rational or --poly");
            }
            out.outputs = height_json(h);
            std::cerr << shown << " = [" << h.lower().str_approx(15) << ", " << h.upper().str_approx(15)
                      << "]\n";
        } else if (app.got_subcommand(c_mahler)) {
            out.command = "mahler";
            IntPolynomial f;
            if (!poly_arg.empty()) {
                f = parse_poly_arg(poly_arg);
                out.digest = fnv1a_digest(poly_arg);
            } else if (!rational_arg.empty()) {
                Rational q = Rational::parse(rational_arg);
                f = IntPolynomial{std::vector<Integer>{-q.num(), q.den()}};
                out.digest = fnv1a_digest(rational_arg);
            } else {
                throw InvalidInput("mahler needs --poly or --rational");
            }
            HeightValue m = mahler_measure(f, pc);
            out.outputs = height_json(m);
            std::cerr << "M(" << f.str() << ") = [" << m.lower().str_approx(15) << ", "
                      << m.upper().str_approx(15) << "]\n";
        } else if (app.got_subcommand(c_a3)) {
            out.command = "a3";
            if (values_arg.empty()) throw InvalidInput("a3 needs --values");
            out.digest = fnv1a_digest(values_arg);
            std::vector<Rational> gamma = parse_rational_list(values_arg);
            RealInterval a3 = a3_constant(gamma, pc);
            out.outputs = {{"lower", a3.lo().str_exact()}, {"upper", a3.hi().str_exact()}};
            std::cerr << "a3 = [" << a3.lo().str_approx(15) << ", " << a3.hi().str_approx(15) << "]\n";
        } else if (app.got_subcommand(c_indep)) {
            out.command = "indep";
            if (values_arg.empty()) throw InvalidInput("indep needs --values");
            out.digest = fnv1a_digest(values_arg);
            std::vector<Rational> gamma = parse_rational_list(values_arg);
            MultIndependence mi = mult_independent(gamma);
            out.outputs["independent"] = mi.independent;
            if (!mi.independent) {
                json rel = json::array();
                for (const auto& z : mi.relation) rel.push_back(z.str());
                out.outputs["relation"] = rel;
            }
            std::cerr << (mi.independent ? "multiplicatively independent" : "dependent (relation found)")
                      << "\n";
        } else if (app.got_subcommand(c_rel)) {
            out.command = "relations";
            ProblemFile pf = load_problem();
            std::vector<ComplexBox> views;
            for (size_t k = 0; k < pf.equation.basis.size(); ++k)
                views.push_back(pf.equation.basis_value(k, pf.precision_bits));
            auto rels = find_integer_relations(views, Integer(coeff_bound_arg), pc);
            json arr = json::array();
            for (auto& r : rels) {
                if (verify_relation_exact(pf.equation.basis, r.coefficients, pc))
                    r.status = RelationCandidate::Status::exactly_verified;
                json jr;
                json coeffs = json::array();
                for (const auto& z : r.coefficients) coeffs.push_back(z.str());
                jr["coefficients"] = coeffs;
                jr["residual_abs"] = {{"lower", r.residual_abs.lo().str_exact()},
                                      {"upper", r.residual_abs.hi().str_exact()}};
                jr["status"] = r.status == RelationCandidate::Status::exactly_verified
                                   ? "exactly_verified"
                                   : "numeric_only";
                arr.push_back(jr);
            }
            out.outputs["relations"] = arr;
            std::cerr << rels.size() << " relation candidate(s)\n";
        } else if (app.got_subcommand(c_expand)) {
            out.command = "expand";
            ProblemFile pf = load_problem();
            AlgContext ctx;
            ctx.prec = pc;
            ExponentialSum sum = expand_exponential_sum(pf.equation, ctx);
            json terms = json::array();
            for (const auto& t : sum.terms) {
                json jt;
                jt["level"] = t.level;
                json wp = json::array();
                for (const auto& c : t.w_poly) wp.push_back(c.str());
                jt["w_poly"] = wp;
                terms.push_back(jt);
            }
            out.outputs["terms"] = terms;
            std::cerr << "levels: " << sum.terms.size() << "\n";
        } else if (app.got_subcommand(c_rescale)) {
            out.command = "rescale";
            ProblemFile pf = load_problem();
            AlgContext ctx;
            ctx.prec = pc;
            ctx.degree_cap = pf.guards.degree_cap;
            Integer N = c_rescale->count("--N") ? Integer(n_arg) : pf.denominator_N;
            ProblemFile transformed = pf;
            transformed.equation = rescale_denominator(pf.equation, N, ctx);
            transformed.denominator_N = Integer(1);
            out.outputs = problem_to_json(transformed);
            out.problem_files.push_back(out.outputs);
            std::cerr << "rescaled by N = " << N.str() << "\n";
        } else if (app.got_subcommand(c_split)) {
            out.command = "split2pi";
            ProblemFile pf = load_problem();
            AlgContext ctx;
            ctx.prec = pc;
            ctx.degree_cap = pf.guards.degree_cap;
            auto branches = split_two_pi_i(pf.equation, ctx);
            json arr = json::array();
            for (const auto& b : branches) {
                ProblemFile t = pf;
                t.equation = b;
                json jb = problem_to_json(t);
                out.problem_files.push_back(jb);
                arr.push_back(std::move(jb));
            }
            out.outputs["branches"] = arr;
            std::cerr << branches.size() << " branch(es)\n";
        } else if (app.got_subcommand(c_spec)) {
            out.command = "specialize";
            ProblemFile pf = load_problem();
            AlgContext ctx;
            ctx.prec = pc;
            ctx.degree_cap = pf.guards.degree_cap;
            BivariatePolynomial<FormalCoefficient> resolved;
            for (const auto& [e, v] : pf.equation.p.terms()) {
                FormalCoefficient r(pf.equation.resolve_bound(v.num(), ctx),
                                    pf.equation.resolve_bound(v.den(), ctx), ctx);
                resolved.add_term(e, r, ctx);
            }
            std::map<std::string, AlgebraicNumber> assignment;
            assignment[kTwoPiISymbol] = AlgebraicNumber(Rational(0));
            if (!assign_arg.empty()) {
                std::stringstream ss(assign_arg);
                std::string kv;
                while (std::getline(ss, kv, ',')) {
                    auto epos = kv.find('=');
                    if (epos == std::string::npos) throw InvalidInput("--assign wants name=rational pairs");
                    assignment[kv.substr(0, epos)] = AlgebraicNumber(Rational::parse(kv.substr(epos + 1)));
                }
            }
            long v = 1;
            std::set<std::string> names;
            for (const auto& [e, c] : resolved.terms())
                for (const auto& s : c.symbols()) names.insert(s);
            for (const auto& s : names)
                if (!assignment.count(s)) assignment[s] = AlgebraicNumber(Rational(v++));
            SpecializeResult res = specialize_formal(resolved, assignment, ctx);
            json poly = json::array();
            for (const auto& [e, val] : res.specialized.terms()) {
                json term;
                term["monomial"] = json::array({e.first, e.second});
                term["value"] = val.is_rational() ? json{{"rational", val.as_rational().str()}}
                                                  : json{{"algebraic", algebraic_to_json(val)}};
                poly.push_back(term);
            }
            out.outputs["polynomial"] = poly;
            out.outputs["flags"] = {{"nonzero", res.nonzero},
                                    {"dx_nonzero", res.dx_nonzero},
                                    {"dy_nonzero", res.dy_nonzero},
                                    {"univariate_x", res.univariate_x},
                                    {"univariate_y", res.univariate_y}};
            json sg = json::object();
            for (const auto& [k2, v2] : assignment)
                sg[k2] = v2.is_rational() ? v2.as_rational().str() : v2.str();
            out.outputs["sigma"] = sg;
            std::cerr << "specialized: " << res.specialized.str() << "\n";
        } else if (app.got_subcommand(c_translate)) {
            out.command = "translate";
            ProblemFile pf = load_problem();
            AlgContext ctx;
            ctx.prec = pc;
            ctx.degree_cap = pf.guards.degree_cap;
            SublatticeExtraction sub = extract_algebraic_log_sublattice(pf.equation);
            std::vector<Integer> cls(pf.equation.basis.size(), Integer(0));
            if (!class_arg.empty()) cls = parse_integer_list(class_arg);
            if (cls.size() != pf.equation.basis.size()) throw InvalidInput("--class dimension mismatch");
            ProblemFile t = pf;
            t.equation = translate_by_class(pf.equation, sub, cls, ctx);
            t.class_translates.clear();
            out.outputs = problem_to_json(t);
            out.problem_files.push_back(out.outputs);
            json emb = json::array();
            for (const auto& row : sub.embedding) {
                json r = json::array();
                for (const auto& z : row) r.push_back(z.str());
                emb.push_back(r);
            }
            out.outputs["embedding"] = emb;
            std::cerr << "translated; sublattice dimension " << sub.c.size() << "\n";
        } else if (app.got_subcommand(c_bound)) {
            out.command = "bound";
            out.digest = fnv1a_digest(a3_arg + "|" + chainA_arg + "|" + chainC_arg);
            Prec p = pc.bits;
            BoundInputs bin{Real::from_rational(Rational::parse(a3_arg), p, MPFR_RNDD),
                            Real::from_rational(Rational::parse(chainA_arg), p, MPFR_RNDU),
                            Real::from_rational(Rational::parse(chainC_arg), p, MPFR_RNDU)};
            long B = compute_bound(bin);
            out.outputs["bound_B"] = B;
            std::cerr << "B = " << B << "\n";
        } else if (app.got_subcommand(c_enum)) {
            out.command = "enumerate";
            out.digest = fnv1a_digest(std::to_string(dim_arg) + "|" + std::to_string(bound_arg));
            long g = guard > 0 ? guard : Guards{}.enumeration;
            json arr = json::array();
            enumerate_candidates(static_cast<int>(dim_arg), bound_arg, g,
                                 [&](const std::vector<Integer>& n) {
                                     json row = json::array();
                                     for (const auto& z : n) row.push_back(z.str());
                                     arr.push_back(row);
                                 });
            out.outputs["candidates"] = arr;
            out.outputs["count"] = l1_ball_count(static_cast<int>(dim_arg), bound_arg).str();
            std::cerr << arr.size() << " candidates\n";
        } else if (app.got_subcommand(c_pipe)) {
            out.command = "pipeline";
            ProblemFile pf = load_problem();
            PipelineOptions opts;
            opts.denominator_N = pf.denominator_N;
            opts.class_translates = pf.class_translates;
            opts.precision_bits = pf.precision_bits;
            opts.guards = pf.guards;
            FinitenessCertificate cert = run_pipeline(pf.equation, opts);
            out.outputs = certificate_to_json(cert);
            if (cert.total_probable > 0) exit_code = 3;
            std::cerr << "verdict: " << cert.verdict << "; exactly_verified "
                      << cert.total_exactly_verified << ", probable " << cert.total_probable << "\n";
        } else if (app.got_subcommand(c_count)) {
            out.command = "count-roots";
            ProblemFile pf = load_problem();
            AlgContext ctx;
            ctx.prec = pc;
            BivariatePolynomial<AlgebraicNumber> p;
            for (const auto& [e, v] : pf.equation.p.terms()) {
                if (!v.is_constant())
                    throw InvalidInput("count-roots requires constant (non-formal) coefficients");
                p.add_term(e, v.constant_value(ctx), ctx);
            }
            if (!rect_arg.empty()) {
                auto nums = parse_rational_list(rect_arg);
                if (nums.size() != 4) throw InvalidInput("--rect wants re0,im0,re1,im1");
                Region region(nums[0], nums[1], nums[2], nums[3]);
                ZeroReport rep = locate_zeros(p, region, pc);
                out.outputs["winding_count"] = rep.winding_count;
                json zeros = json::array();
                for (const auto& z : rep.zeros) {
                    zeros.push_back(json{{"re", z.box.re().str_exact()},
                                         {"im", z.box.im().str_exact()},
                                         {"rad", z.box.rad().str_exact()},
                                         {"newton_certified", z.newton_certified}});
                }
                out.outputs["zeros"] = zeros;
                std::cerr << rep.winding_count << " zero(s) in the rectangle\n";
            }
            if (!radii_arg.empty()) {
                auto radii = parse_rational_list(radii_arg);
                auto counts = density_report(p, radii, pc);
                json arr = json::array();
                for (long c2 : counts) arr.push_back(c2);
                out.outputs["density"] = arr;
                std::cerr << "density counts:";
                for (long c2 : counts) std::cerr << " " << c2;
                std::cerr << "\n";
            }
            if (rect_arg.empty() && radii_arg.empty())
                throw InvalidInput("count-roots needs --rect or --radii");
        }

        emit(out, out_path);
    } catch (const Error& e) {
        json err;
        err["command"] = out.command;
        err["error"] = {{"code", e.code()}, {"message", e.what()}};
        std::cout << err.dump(2) << "\n";
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        return static_cast<int>(e.exit_code());
    } catch (const std::exception& e) {
        json err;
        err["command"] = out.command;
        err["error"] = {{"code", "invalid-input"}, {"message", e.what()}};
        std::cout << err.dump(2) << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started)
            .count();
    std::cerr << "done in " << elapsed << " ms\n";
    return exit_code;
}
