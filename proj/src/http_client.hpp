#pragma once

#include <string>

#include "errors.hpp"

namespace shapeforge::net {

class HttpError : public IoError {
 public:
  HttpError(const std::string& url, int status)
      : IoError("HTTP " + std::to_string(status) + " for " + url),
        status(status) {}

  int status;
};

// Blocking GET returning the response body. Retries 429 responses with
// exponential backoff before giving up; any other non-2xx status throws
// HttpError. Supports http:// and https:// URLs.
std::string http_get(const std::string& url);

// RFC 3986 percent-encoding for a path/query component. Underscores,
// dots, dashes and tildes pass through.
std::string percent_encode(const std::string& value);

std::string percent_decode(const std::string& value);

}  // namespace shapeforge::net
