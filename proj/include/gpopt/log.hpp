// Copyright 2026 The gpopt Authors. All rights reserved.
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

#ifndef GPOPT_LOG_HPP_
#define GPOPT_LOG_HPP_

#include <string_view>

namespace gpopt {

enum class LogLevel { kDebug = 0, kInfo, kWarning, kError, kOff };

void SetLogLevel(LogLevel level);
LogLevel GetLogLevel();

// Thread-safe line logger writing to stderr.
void Log(LogLevel level, std::string_view message);

}  // namespace gpopt

#endif  // GPOPT_LOG_HPP_
