// Copyright 2026 The tpp authors.
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

#ifndef TPP_TPP_HPP_
#define TPP_TPP_HPP_

#include "tpp/errors.hpp"
#include "tpp/fit.hpp"
#include "tpp/intensity.hpp"
#include "tpp/io.hpp"
#include "tpp/likelihood.hpp"
#include "tpp/model.hpp"
#include "tpp/nelder_mead.hpp"
#include "tpp/pattern.hpp"
#include "tpp/quadrature.hpp"
#include "tpp/residuals.hpp"
#include "tpp/rng.hpp"
#include "tpp/simulate.hpp"
#include "tpp/special_functions.hpp"

#endif  // TPP_TPP_HPP_
