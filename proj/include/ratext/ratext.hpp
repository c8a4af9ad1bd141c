/*
   Copyright 2026 The ratext authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef RATEXT_RATEXT_HPP
#define RATEXT_RATEXT_HPP

#include "common.hpp"
#include "polynomial.hpp"
#include "classical.hpp"
#include "roots.hpp"
#include "families.hpp"
#include "dbt.hpp"
#include "oracle.hpp"
#include "verify.hpp"

#endif
