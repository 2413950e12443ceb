// JSON reading and writing of algebra definition files.  A file carries a raw
// algebra (basis labels and degrees, sparse multiplication triples, sparse
// differential, unit, idempotents, optional declared radical) plus optional
// named twisted objects, named morphisms between them, and named 1-morphism
// expressions.  All scalars are integers and are reduced mod p on load.
#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

#include "pdgcat/twisted.hpp"

namespace pdgcat {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlgebraFile {
  RawAlgebra raw;

  struct ObjectDef {
    std::vector<Generator> gens;
    std::vector<std::vector<Vec>> alpha;
  };
  struct MorphismDef {
    std::string source, target;
    int degree = 0;
    std::vector<std::vector<Vec>> entries;
  };

  std::map<std::string, ObjectDef> objects;
  std::map<std::string, MorphismDef> morphisms;
  std::map<std::string, std::string> onemorphisms;  ///< name -> expression text
};

/// Parses a definition file; throws ParseError with a descriptive message on
/// malformed input.  Scalars are reduced mod p; validation of the algebra
/// axioms is left to validate_algebra / make_algebra.
AlgebraFile read_algebra_file(std::istream& in);
AlgebraFile read_algebra_file_text(const std::string& text);

void write_algebra_file(std::ostream& out, const AlgebraFile& f);
std::string write_algebra_file_text(const AlgebraFile& f);

/// Builds the twisted object described by a named definition.
TwistedObject instantiate_object(AlgebraPtr A, const AlgebraFile::ObjectDef& def);
/// Builds a named morphism; resolves source/target object names in the file.
TwistedMorphism instantiate_morphism(AlgebraPtr A, const AlgebraFile& f,
                                     const AlgebraFile::MorphismDef& def);

}  // namespace pdgcat
