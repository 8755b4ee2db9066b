#pragma once

#include "mcor/simd.hpp"

namespace mcor::simd {

// Each backend TU returns its op table, or nullptr when the target
// architecture does not match. Runtime CPU checks happen in dispatch.
const Ops* avx2_ops();
const Ops* neon_ops();

} // namespace mcor::simd
