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

#ifndef GPOPT_CSV_HPP_
#define GPOPT_CSV_HPP_

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace gpopt {

// 17 significant digits; parsing the text gives back the same double.
std::string FormatDouble(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Plain comma-separated rows without quoting; fields never contain commas.
void WriteCsvRow(std::ostream& out, const std::vector<std::string>& fields);
CsvTable ReadCsv(const std::string& path);

// Opens `path` for writing, throwing IoError on failure.
std::ofstream OpenForWrite(const std::string& path);

}  // namespace gpopt

#endif  // GPOPT_CSV_HPP_
