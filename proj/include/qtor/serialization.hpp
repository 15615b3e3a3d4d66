#pragma once

#include <string>

#include "json.hpp"
#include "qtor/error.hpp"
#include "qtor/cohomology_ring.hpp"
#include "qtor/e_invariant.hpp"
#include "qtor/ktheory_chern.hpp"
#include "qtor/qt_input.hpp"
#include "qtor/rigidity.hpp"

// JSON readers and writers. Rationals are "p/q" strings; integers are JSON
// numbers when they fit in 64 bits and decimal strings otherwise. Readers
// throw io.ParseError naming the offending field.
namespace qtor::io {

using nlohmann::json;

json read_file(const std::string& path);

QuasitoricData manifold_from_json(const json& j);
json manifold_to_json(const QuasitoricData& d);
json validation_to_json(const ValidatedManifold& v);

json ring_to_json(const GradedRing& r);
GradedRing ring_from_json(const json& j);

json klattice_to_json(const KLattice& k);
KLattice klattice_from_json(const json& j);

json admissible_to_json(const AdmissibleBasis& b, const KLattice& k);
AdmissibleBasis admissible_from_json(const json& j);

ConeData cone_from_json(const json& j);
json cone_to_json(const ConeData& c);
json report_to_json(const EInvariantReport& r);
json triviality_to_json(const TrivialityVerdict& v);

json iso_to_json(const IsoCertificate& c);
// Accepts either {"degree2": [[...]]} or a bare matrix.
IntMatrix iso_matrix_from_json(const json& j);
json search_to_json(const IsoSearchResult& r);

json kiso_to_json(const KIso& k);
json verdict_to_json(const RigidityVerdict& v);

json error_to_json(const Error& e);

json int_to_json(const Integer& z);
Integer int_from_json(const json& j, const std::string& field);
json int_matrix_to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const json& j, const std::string& field);
json rational_matrix_to_json(const RationalMatrix& m);
RationalMatrix rational_matrix_from_json(const json& j, const std::string& field);

}  // namespace qtor::io
