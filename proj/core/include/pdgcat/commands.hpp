// Command driver shared by the command-line tool and the tests.  Every
// subcommand reads an algebra file (path or "-" for the input stream), prints
// a human-readable report or, with --json, a machine-readable object carrying
// the same information, and returns a process exit code:
//
//   0  success
//   1  domain failure (invalid file, failed validation, unsatisfiable request)
//   2  usage error (unknown command, missing or malformed arguments)
//
// Subcommands:
//   validate FILE
//   radical FILE
//   cells FILE
//   cellrep FILE --cell LABEL
//   two-hom FILE --from EXPR --to EXPR [--stable]
//   cone FILE --morphism NAME
//   tensor-h FILE --object NAME --vi I --shift S
//   fantastic FILE --object NAME
//   example NAME [--p P] [--n N] [--r R] [--lambda L] [--diff xsq|one]
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdgcat {

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                std::ostream& err);

/// Full usage text for the tool.
std::string usage_text();

}  // namespace pdgcat
