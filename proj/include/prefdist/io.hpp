#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "prefdist/clustering.hpp"
#include "prefdist/elicitation.hpp"
#include "prefdist/model.hpp"

namespace prefdist {

/// Reads `subject_id,m,n,prob,ce` rows. Repeated rows for the same
/// (subject, m, n, prob) are averaged into one answer. Subjects and their
/// questions keep the order of first appearance. Blank lines and lines
/// starting with '#' are skipped. Parse errors carry the line number.
std::vector<Subject> read_answers_csv(std::istream& in);
std::vector<Subject> read_answers_csv_file(const std::string& path);

void write_answers_csv(std::ostream& out, const std::vector<Subject>& subjects);

/// Constraint-system JSON:
/// {"n": .., "grid": {"min","max","granularity"}?, "anchors": {"worst","best"}?,
///  "constraints": [{"coeffs": [[index, value], ...], "relation": "le"|"eq", "rhs": ..}]}
ConstraintSystem read_constraint_json(const std::string& text);
std::string write_constraint_json(const ConstraintSystem& system);

/// Square CSV: header row ",id1,id2,...", then "id,v1,v2,..." with 6 decimals.
void write_matrix_csv(std::ostream& out, const DissimilarityMatrix& m, bool std_errors);
/// "id,mean,std_error" per subject.
void write_self_distance_csv(std::ostream& out, const DissimilarityMatrix& m);

struct MatrixCsv {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> values;
};

/// Parses a square matrix CSV. Rejects non-square, non-numeric, or
/// asymmetric input.
MatrixCsv read_matrix_csv(std::istream& in);

std::string format_fixed(double x, int decimals);

}  // namespace prefdist
