#pragma once
// Aggregated conformance report: every place where a commonly quoted closed
// form disagrees with the direct construction gets a named section with the
// measured deviation and a verdict.

#include <json.hpp>

#include "fluxknot/config.hpp"
#include "fluxknot/dynamo.hpp"
#include "fluxknot/shape.hpp"
#include "fluxknot/tube.hpp"

namespace fluxknot {

using ojson = nlohmann::ordered_json;

// Default helical scenario: unit-pitch helical axis, twisted modulated tube.
struct Scenario {
  TubeConfig tube;
  ShapeFunction shape;
  SampleGrid grid;
  DynamoParams dynamo;
};

Scenario default_helical_scenario();

// All discrepancy sections on the default scenario. Deterministic for any
// worker count.
ojson validate_report(int workers);

// Output metadata: tool version, config hash, and the effective config echo.
ojson meta_object(const RunConfig& cfg);
std::string csv_metadata_header(const RunConfig& cfg);

}  // namespace fluxknot
