#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace socnet {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A stream or file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// An edge violated the canonical undirected form (self-loop, empty handle, zero weight).
class InvalidEdgeError : public Error {
 public:
  using Error::Error;
};

class EmptyGraphError : public Error {
 public:
  using Error::Error;
};

/// Paginated fetch gave up. `status` is the last HTTP status seen (0 when the
/// transport itself failed); `page` is the zero-based page being fetched.
class FetchError : public Error {
 public:
  FetchError(const std::string& what, int status, std::size_t page)
      : Error(what), status_(status), page_(page) {}

  int status() const noexcept { return status_; }
  std::size_t page() const noexcept { return page_; }

 private:
  int status_;
  std::size_t page_;
};

}  // namespace socnet
