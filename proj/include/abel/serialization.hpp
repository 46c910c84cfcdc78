#pragma once

#include <string>

#include <json.hpp>

#include "abel/builder.hpp"
#include "abel/lifting.hpp"
#include "abel/probe.hpp"

namespace abel {

using Json = nlohmann::json;

// Complex numbers are [re, im] pairs throughout.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json polynomial_to_json(const ComplexPolynomial& p);
ComplexPolynomial polynomial_from_json(const Json& j);

// {norm0, rows, cols, hessenberg (column-major pairs), coeffs}
Json arnoldi_to_json(const ArnoldiPolynomial& p);
ArnoldiPolynomial arnoldi_from_json(const Json& j);

Json arc_to_json(const UnitCircleArc& a);
UnitCircleArc arc_from_json(const Json& j);

Json automorphism_to_json(const DiscAutomorphism& phi);
DiscAutomorphism automorphism_from_json(const Json& j);

Json params_to_json(const ComponentParams& p);
ComponentParams params_from_json(ComponentKind kind, const Json& j);

// points are included so a filtered component can be restored verbatim
Json component_to_json(const SampledComponent& c);
SampledComponent component_from_json(const Json& j);
Json compactum_to_json(const CompoundCompactum& set);
CompoundCompactum compactum_from_json(const Json& j);

Json fit_report_to_json(const FitReport& r);
FitReport fit_report_from_json(const Json& j);

Json config_to_json(const BuildConfig& cfg);
BuildConfig config_from_json(const Json& j);

Json series_to_json(const UniversalSeries& s);
UniversalSeries series_from_json(const Json& j);

Json witness_to_json(const CounterexampleWitness& w);

Json dilate_report_to_json(const DilateReport& r);
Json lift_result_to_json(const LiftResult& r);
Json liftable_to_json(const LiftableTarget& r);

// Deterministic text form: two-space indent, trailing newline.
std::string dump(const Json& j);
Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace abel
