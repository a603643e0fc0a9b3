#ifndef MOMEXT_JSON_IO_HPP
#define MOMEXT_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "momext/cayley.hpp"
#include "momext/complex_matrix.hpp"
#include "momext/conjugation.hpp"
#include "momext/moment.hpp"

namespace momext {

using json = nlohmann::json;

// Matrix wire format: {"rows": N, "cols": M, "data": [[re, im], ...]}
// row-major; readers reject mismatched lengths.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

// Conjugations add {"kind": "conjugation"} to the matrix format.
json conjugation_to_json(const Conjugation& c);
Conjugation conjugation_from_json(const json& j);

// {"ambient_dim":N, "domain":matrix, "A1_action":matrix, "A_rest":[matrix],
//  "B":[matrix], "J":conjugation, "z0":[re,im]}
json tuple_to_json(const CommutingTupleInstance& t);
CommutingTupleInstance tuple_from_json(const json& j);

// {"r":.., "l":.., "m_box":[..], "n_box":[..],
//  "entries":[{"m":[..],"n":[..],"re":..,"im":..}, ...]}
json moment_table_to_json(const MomentTable& s);
MomentTable moment_table_from_json(const json& j);

// {"r":..,"l":..,"atoms":[{"x":[..],"phi":[..],"weight":..}, ...]}
json measure_to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const json& j);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace momext

#endif
