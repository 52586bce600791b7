#pragma once

#include <string>

namespace proofchain {

// Canonical form of a statement signature, used to flag re-submissions of
// known statements under fresh names: whitespace collapses to single spaces
// between tokens and bound variables are renamed v0, v1, ... in order of
// first binding. Binder keywords are `forall`, `exists` and `fun`; a binder
// section runs to the first `,` outside parentheses, and inside it the
// identifiers before a `:` are the bound variables. Idempotent:
// canonicalize(canonicalize(s)) == canonicalize(s).
std::string canonicalize_signature(const std::string &signature);

} // namespace proofchain
