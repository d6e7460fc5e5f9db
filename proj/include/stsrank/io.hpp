#pragma once

// JSON encodings. Matrices: {"p","rows","cols","data"}; designs: {"v","blocks"};
// JSONL streams hold one design per line. Big counts are encoded as decimal strings.

#include "stsrank/components.hpp"
#include "stsrank/composer.hpp"
#include "stsrank/counting.hpp"
#include "stsrank/designs.hpp"
#include "stsrank/dual.hpp"
#include "stsrank/field.hpp"
#include "stsrank/geometry.hpp"
#include "stsrank/iso.hpp"

#include <json.hpp>

#include <functional>
#include <iosfwd>
#include <vector>

namespace stsrank::io {

using Json = nlohmann::ordered_json;

Json encode(const FieldMatrix& m);
Json encode(const TripleSystem& d);
Json encode(const OneFactorization& f);
Json encode(const LatinSquare& s);
Json encode(const Recipe& r);
Json encode(const GroupPartition& p);
Json encode(const Geometry& g);
Json encode(const GddReport& r);
Json encode(const DualStructureReport& r);
Json encode(const BoundsReport& r);
Json encode(const CountConstant& c);
Json encode(const IsoClassReport& r);
Json encode(const CodeSpec& s);

/// Decoders throw ParameterError on malformed JSON and the domain's own error
/// on invalid values (e.g. DomainError for an unsorted block list).
FieldMatrix decode_matrix(const Json& j);
TripleSystem decode_design(const Json& j);
Recipe decode_recipe(const Json& j);

/// One compact JSON object per line.
void write_jsonl(std::ostream& out, const TripleSystem& d);
/// Calls `sink` for each non-empty line.
std::uint64_t read_designs_jsonl(std::istream& in, const std::function<void(TripleSystem)>& sink);
std::vector<TripleSystem> read_designs_jsonl(std::istream& in);

} // namespace stsrank::io
