#pragma once

#include <string>
#include <string_view>

#include "ink/formula.hpp"

namespace ink {

// KB text format: UTF-8, one formula per line, '#' comments, blank lines
// ignored. Grammar (precedence ! > & > |, left-associative):
//   formula := or
//   or      := and { "|" and }
//   and     := not { "&" not }
//   not     := "!" not | atom | "(" or ")" | "false"
//   atom    := [A-Za-z_][A-Za-z0-9_]*

/// Parses one formula; atoms are collected implicitly.
Formula parse_formula(std::string_view text);

/// Strict variant: atoms must already be in sig.
Formula parse_formula(std::string_view text, const Signature& sig);

KnowledgeBase parse_kb(std::string_view text);
KnowledgeBase read_kb_file(const std::string& path);

std::string to_kb_text(const KnowledgeBase& kb);
void write_kb_file(const KnowledgeBase& kb, const std::string& path, const std::string& header_comment = "");

/// DIMACS CNF import: `p cnf V C` header, variable i becomes atom x{i},
/// each clause becomes one disjunction. Duplicate clauses collapse (a KB is
/// a set).
KnowledgeBase parse_dimacs(std::string_view text);
KnowledgeBase read_dimacs_file(const std::string& path);

/// DIMACS export; requires every formula to be a disjunction of literals.
std::string to_dimacs(const KnowledgeBase& kb);

}  // namespace ink
