#pragma once

// TOML files for rings, modules and complexes, built-in references, and the
// JSON shapes shared by the command line and the Python bindings.

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dcx/verdict.hpp"

namespace dcx {

/// Parse failures name the source and the line/column of the offending node.
Algebra::Ptr parse_ring(std::string_view text, std::string_view source = "<input>");
FgModule parse_module(const Algebra::Ptr& a, std::string_view text, std::string_view source = "<input>");
/// Accepts a [complex] table, or a [module] table placed in degree 0.
Complex parse_complex(const Algebra::Ptr& a, std::string_view text, std::string_view source = "<input>");

/// Structure-constant form, which re-parses to an identical algebra.
std::string ring_to_toml(const Algebra& a);
/// Explicit actions of the basis, which re-parse to an identical module.
std::string module_to_toml(const FgModule& m);
/// Entries as explicit modules with k-matrix differentials.
std::string complex_to_toml(const Complex& x);

/// The shipped file for a built-in ring, in its constructive form.
std::string corpus_toml(const std::string& name);

/// `builtin:<corpus name>` or a path to a ring file.
Algebra::Ptr load_ring(const std::string& ref);
/// `builtin:residue_field`, `builtin:canonical`, `builtin:free:<n>`, or a
/// path to a module or complex file.
Complex load_complex(const Algebra::Ptr& a, const std::string& ref);

std::string read_file(const std::string& path);
std::string sha256_hex(std::string_view bytes);
/// Hash of the file contents, or of the reference itself for built-ins.
std::string reference_hash(const std::string& ref);

nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const NumberSequence& s);
nlohmann::json to_json(const TheoremReport& r);

}  // namespace dcx
