#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gst/document.hpp"
#include "gst/validate.hpp"

namespace gst::testing {

/// A single-field corruption of a valid document and the code validate()
/// must report for it. apply() returns false when the document has no
/// suitable target; rich documents (DocShape::rich) always have one.
struct Mutation {
    std::string name;
    ViolationCode expected;
    std::function<bool(Document&)> apply;
};

const std::vector<Mutation>& mutation_catalog();

}  // namespace gst::testing
