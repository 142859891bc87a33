#ifndef CESARO_JSON_IO_HPP
#define CESARO_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "cesaro/core.hpp"
#include "cesaro/report.hpp"
#include "cesaro/theorem_harness.hpp"
#include "cesaro/vector_cesaro.hpp"

namespace cesaro::json_io {

using Json = nlohmann::ordered_json;

// Version tag written into every report.
inline constexpr const char* kReportSchema = "cesaro-lab/report/v1";

// Doubles are written with 17 significant digits so parsing gives back the
// same bits. NaN becomes null, infinities the strings "inf" and "-inf".
std::string dump(const Json& j, int indent = 2);
Json number(double v);
// Accepts numbers and the strings "inf"/"-inf"; `where` names the field in
// SchemaViolation messages.
double read_number(const Json& j, const std::string& where);

Json to_json(const SpaceSpec& s);
Json to_json(const TaggedVector& v);
Json to_json(const ScalarStepFunction& f);
// Includes "space" so the function can be read back on its own.
Json to_json(const VectorStepFunction& f);
Json to_json(const SumElement& x);
Json to_json(const FunctionShiftFamily& fam);
Json to_json(const NormResult& r);
Json to_json(const LimitEstimate& e);
Json to_json(const CheckReport& r);

// All readers throw Error(SchemaViolation) on malformed input; domain errors
// from the constructors (for instance a non-increasing partition) are
// rethrown as SchemaViolation too, with the original message attached.
SpaceSpec space_from_json(const Json& j);
TaggedVector vector_from_json(const Json& j);
ScalarStepFunction scalar_function_from_json(const Json& j);
// `fallback` is used when the object has no "space" member.
VectorStepFunction vector_function_from_json(const Json& j, const SpaceSpec* fallback = nullptr);
SumElement sum_element_from_json(const Json& j);
FunctionShiftFamily family_from_json(const Json& j);

Json parse(const std::string& text);

}  // namespace cesaro::json_io

#endif  // CESARO_JSON_IO_HPP
