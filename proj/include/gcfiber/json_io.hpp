#pragma once

#include "gcfiber/lift.hpp"
#include "gcfiber/novikov.hpp"
#include "gcfiber/potential.hpp"
#include "gcfiber/slt.hpp"

#include <json.hpp>

#include <string>

namespace gcfiber {

using ordered_json = nlohmann::ordered_json;

/// Series as [[exp_num, exp_den, coeff_num, coeff_den], ...] plus a cap pair.
ordered_json series_to_json(const NovikovSeries& s);
NovikovSeries series_from_json(const ordered_json& j);

ordered_json rational_to_json(const Rational& q); // "num/den" string
Rational rational_from_json(const ordered_json& j);

ordered_json seed_to_json(const Seed& seed);
Seed seed_from_json(const ordered_json& j);

ordered_json slt_solution_to_json(const SltSolution& sol);
SltSolution slt_solution_from_json(const ordered_json& j);

ordered_json potential_to_json(const PotentialExpr& expr);

ordered_json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const ordered_json& j);

ordered_json report_to_json(const CertificateReport& report);

std::string dump_json(const ordered_json& j);

} // namespace gcfiber
