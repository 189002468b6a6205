#pragma once

#include <string>
#include <vector>

namespace juris::csv {

/// RFC 4180 quoting: fields containing comma, quote, CR or LF are wrapped
/// in double quotes with inner quotes doubled.
std::string escape_field(const std::string& field);

/// One CSV record terminated with CRLF.
std::string row(const std::vector<std::string>& fields);

/// Stable shortest-ish formatting for doubles written into artifacts.
std::string fmt_double(double v);

}  // namespace juris::csv
