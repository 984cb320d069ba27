// Copyright 2026 The btverify Authors
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

#ifndef BTVERIFY_LOG_HPP_
#define BTVERIFY_LOG_HPP_

namespace btverify {

/// Applies BTVERIFY_LOG_LEVEL (error|warn|info|debug|trace) to the global
/// logger; unset or unknown values fall back to warn.
void init_logging_from_env();

}  // namespace btverify

#endif  // BTVERIFY_LOG_HPP_
