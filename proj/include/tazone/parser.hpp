#pragma once

// Reader and printer for the textual network format and for `go(s/c, s'/c')`
// queries.
//
//   spec       := "specification" ident "Clocks" idlist "States" idlist
//                 "Labels" idlist "Automata" autlist "end"
//   idlist     := ident* "nil"
//   autlist    := ( "(" automaton ")" "." )* "nil"
//   automaton  := "Locations" idlist "Labels" idlist "Invariants" inv* "nil"
//                 "Transitions" trans* "nil"
//   inv        := ident ":" constraint
//   trans      := ident "," ident ":" constraint "," idlist "," ident "."
//   constraint := ( atom "^" )* "true"
//   atom       := ident op num | ident "-" ident op num
//   query      := "go" "(" locvec "/" constraint "," locvec "/" constraint ")"
//   locvec     := ( ident "." )+ "nil"
//
// Identifiers are letters, digits, '_' and inner '-'; keywords are reserved.
// Numbers are integers or terminating decimals, optionally negated. Text from
// "//" to the end of the line is ignored.

#include "tazone/model.hpp"

#include <string>
#include <string_view>

namespace tazone {

Checked<SyntaxNetwork> parse_spec_syntax(std::string_view text);

// parse_spec_syntax + validate + normalize_constants.
Checked<Network> parse_spec(std::string_view text);

// Names are resolved against `net`; constants are scaled by `net.scale`.
Checked<Query> parse_query(std::string_view text, const Network& net);

std::string pretty_print(const Network& net);
std::string pretty_print(const Query& query, const Network& net);
std::string pretty_print(const ClockConstraint& c, const Network& net);
std::string pretty_print(const LocationVector& locs, const Network& net);

}  // namespace tazone
