#pragma once

// JSON encodings of the library types. Decoders throw Error(Format) on
// anything that does not match the expected shape.

#include <vector>

#include <json.hpp>

#include "quatkit/algebra.hpp"
#include "quatkit/functors.hpp"

namespace quatkit::io {

using json = nlohmann::json;

json to_json(const Quaternion& q);                 // [w, x, y, z]
json to_json(const ImaginaryUnit& u);              // [x, y, z]
json to_json(const Frame& f);                      // {"i": [..], "j": [..]}
json to_json(const QVector& v);                    // [[w,x,y,z], ...]
json to_json(const QMatrix& t);                    // {"n", "entries"} row-major
json to_json(const ComplexMatrix& m);              // {"n2", "re", "im"} row-major, flat
json to_json(const SplitSpace& s);
json to_json(const StarAlgebra& a);
json to_json(const Classification& c);

Quaternion quaternion_from_json(const json& j);
ImaginaryUnit unit_from_json(const json& j);
Frame frame_from_json(const json& j);
QVector qvector_from_json(const json& j);
QMatrix qmatrix_from_json(const json& j);
ComplexMatrix cmatrix_from_json(const json& j);
SplitSpace split_space_from_json(const json& j);
StarAlgebra star_algebra_from_json(const json& j);
Classification classification_from_json(const json& j);

// StarAlgebra input file with an optional "evolution": [QMatrix...] list.
struct SystemFile {
  StarAlgebra algebra;
  std::vector<QMatrix> evolution;
};

SystemFile system_from_json(const json& j);
json to_json(const SystemFile& s);

// {"t": [...], "states": [QVector...], "norms": [...]}
json evolution_trace(const std::vector<double>& t, const std::vector<QVector>& states);

// Reads and parses a file; Error(Format) on I/O or syntax failure.
json read_json_file(const std::string& path);

}  // namespace quatkit::io
