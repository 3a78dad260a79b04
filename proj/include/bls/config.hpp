#pragma once

#include "bls/problem.hpp"

#include <stdexcept>
#include <string>

namespace bls {

// Carries a line number (parse errors) or a field path (schema errors).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Schema: see README "Spec file format".
EquationSpec parse_spec(const std::string& text, const std::string& base_dir = ".");
EquationSpec load_spec(const std::string& path);

// Hex FNV-1a of the canonicalised spec text plus run parameters.
std::string config_hash(const std::string& spec_text, const std::string& params);

}  // namespace bls
