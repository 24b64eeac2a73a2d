#pragma once

/* The universal problem-file schema shared by every subcommand. Transforms
 * emit the same schema, so reductions compose through the shell. All numbers
 * travel as exact decimal or rational strings.
 */

#include <string>

#include "json.hpp"

#include "expeq/pipeline.hpp"

namespace expeq {

struct ProblemFile {
    ExpPolyEquation equation;
    Integer denominator_N{1};
    std::vector<std::vector<Integer>> class_translates;
    Prec precision_bits = 128;
    Guards guards;
};

// Validated parse; throws InvalidInput listing every violation found.
ProblemFile parse_problem(const std::string& path);
ProblemFile parse_problem_json(const nlohmann::json& j);

nlohmann::json problem_to_json(const ProblemFile& pf);
nlohmann::json equation_to_json(const ExpPolyEquation& eq);

nlohmann::json algebraic_to_json(const AlgebraicNumber& a, Prec bits = 64);
AlgebraicNumber algebraic_from_json(const nlohmann::json& j, const PrecisionContext& ctx = {});

nlohmann::json certificate_to_json(const FinitenessCertificate& cert);
nlohmann::json interval_to_json(const RealInterval& iv, Prec bits);

} // namespace expeq
