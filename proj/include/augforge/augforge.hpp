#pragma once

// Umbrella header. Pull in individual headers instead when compile time
// matters; gateway_http.hpp is excluded because it drags in the HTTP stack.

#include "augforge/active_learning.hpp"
#include "augforge/detector.hpp"
#include "augforge/errors.hpp"
#include "augforge/features.hpp"
#include "augforge/gateway.hpp"
#include "augforge/gateway_mock.hpp"
#include "augforge/index.hpp"
#include "augforge/json_io.hpp"
#include "augforge/library_io.hpp"
#include "augforge/material_ops.hpp"
#include "augforge/materials.hpp"
#include "augforge/pipelines.hpp"
#include "augforge/rng.hpp"
#include "augforge/sample.hpp"
#include "augforge/templates.hpp"
#include "augforge/vec.hpp"
