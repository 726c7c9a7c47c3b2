#include "http_client.hpp"

#include <chrono>
#include <thread>

#include <httplib.h>

namespace shapeforge::net {

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // starts with '/'
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw IoError("unsupported URL (missing scheme): " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

std::string http_get(const std::string& url) {
  const SplitUrl parts = split_url(url);
  httplib::Client client(parts.origin);
  client.set_follow_location(true);
  client.set_connection_timeout(10);
  client.set_read_timeout(30);

  int backoff_ms = 1000;
  for (int attempt = 0; attempt < 4; ++attempt) {
    auto res = client.Get(parts.path);
    if (!res) throw IoError("request failed for " + url);
    if (res->status == 429 && attempt < 3) {
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
      backoff_ms *= 2;
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      throw HttpError(url, res->status);
    }
    return res->body;
  }
  throw HttpError(url, 429);
}

std::string percent_encode(const std::string& value) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  out.reserve(value.size());
  for (unsigned char c : value) {
    if (std::isalnum(c) || c == '_' || c == '-' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xf]);
    }
  }
  return out;
}

std::string percent_decode(const std::string& value) {
  auto hex_val = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::string out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (value[i] == '%' && i + 2 < value.size()) {
      const int hi = hex_val(value[i + 1]);
      const int lo = hex_val(value[i + 2]);
      if (hi >= 0 && lo >= 0) {
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        continue;
      }
    }
    out.push_back(value[i]);
  }
  return out;
}

}  // namespace shapeforge::net
