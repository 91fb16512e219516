#pragma once

// JSON configuration loaders. Files are flat objects; unknown or missing keys
// and non-numeric values raise ParseError naming the key.

#include <iosfwd>
#include <string>

#include "visco/biphasic.hpp"
#include "visco/models.hpp"
#include "visco/oracle.hpp"

namespace visco {

/// Whole file as text. Throws ParseError when it cannot be read.
std::string read_text_file(const std::string& path);

/// Keys m, k, b, v0 and optional g.
KelvinVoigtParams parse_kv_params(const std::string& json_text);
MaxwellParams parse_maxwell_params(const std::string& json_text);

/// Keys m, k1, k2, b, v0, or m, kappa1, kappa2, beta, v0.
StandardSolidParams parse_sls_params(const std::string& json_text);

/// {"type": "elastic", "k0", "tau_R"} | {"type": "maxwell", "k", "b"} |
/// {"type": "kv_limit", "k", "b"} | {"type": "sls", "k0", "k_inf", "tau_R"} |
/// {"type": "table", "k0", "tau_R", "points": [[tau, psi], ...]}
RelaxationKernel parse_kernel(const std::string& json_text);

/// Keys mu_s, lambda_s, kappa, h, a.
BiphasicLayer parse_layer(const std::string& json_text);

/// CSV with header `t,delta0`.
DisplacementHistory read_history_csv(std::istream& in);

}  // namespace visco
