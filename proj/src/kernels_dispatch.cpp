// Copyright 2026 The dqplan Authors
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

#include <cstdlib>
#include <cstring>

#include "dqplan/kernels.hpp"

namespace dqplan::kernels {
namespace {

const Ops & resolve()
{
  const char * forced = std::getenv("DQPLAN_KERNELS");
  if (forced != nullptr) {
    if (std::strcmp(forced, "scalar") == 0) {
      return scalar();
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (std::strcmp(forced, "avx2") == 0 && cpu_has_avx2()) {
      return avx2();
    }
#endif
    return scalar();  // unknown or unsupported request falls back
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_has_avx2()) {
    return avx2();
  }
#endif
  return scalar();
}

}  // namespace

const Ops & active()
{
  static const Ops & ops = resolve();
  return ops;
}

}  // namespace dqplan::kernels
