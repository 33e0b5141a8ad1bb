// Copyright 2026 The selfgrav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// CODATA-2018 values, SI.
namespace selfgrav::constants {

inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double G = 6.67430e-11;          // m^3 kg^-1 s^-2
inline constexpr double c = 2.99792458e8;         // m s^-1
inline constexpr double pi = 3.14159265358979323846;

}  // namespace selfgrav::constants
