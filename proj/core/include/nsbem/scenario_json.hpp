// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "nsbem/scenario.hpp"

namespace nsbem {

// Parses the JSON scenario format (see README for the schema). Complex
// numbers are two-element [re, im] arrays. Errors carry the offending field
// path or, for syntax errors, the parser's byte position.
Scenario scenario_from_json(const std::string& text, const std::string& origin);
Scenario scenario_from_json_file(const std::string& path);

}  // namespace nsbem
