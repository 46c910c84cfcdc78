#pragma once

#include "abel/builder.hpp"

namespace abel::detail {

SampledComponent disc_component(Complex w, double r, int density);
ComponentDescriptor descriptor(const SampledComponent& c);
// Stores the fit on the stage and derives per-role sup errors from component labels
// ("disc", "arc", "pin*", anything else counts as a zero-target constraint).
void record_fit(Stage& st, const CompoundCompactum& set, Fit&& fit);
Stage zero_stage();

}  // namespace abel::detail
