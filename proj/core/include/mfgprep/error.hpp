#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace mfgprep {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition on caller-supplied arguments violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An edge endpoint was outside [0, num_nodes).
class EdgeOutOfRange : public InvalidArgument {
 public:
  EdgeOutOfRange(std::size_t edge_index, const std::string& what)
      : InvalidArgument(what), edge_index_(edge_index) {}
  std::size_t edge_index() const noexcept { return edge_index_; }

 private:
  std::size_t edge_index_;
};

/// Output buffer too small for a gather; the library never truncates.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Operating-system level read/write failure.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A binary file did not match its declared format.
class FormatError : public Error {
 public:
  enum class Kind { bad_magic, version_mismatch, truncated, invalid_content };

  FormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// A worker thread failed while preparing batches.
class PrepError : public Error {
 public:
  using Error::Error;
};

/// Two sampler variants disagreed on the same trace.
class DigestMismatch : public Error {
 public:
  DigestMismatch(std::string variant, const std::string& what)
      : Error(what), variant_(std::move(variant)) {}
  const std::string& variant() const noexcept { return variant_; }

 private:
  std::string variant_;
};

}  // namespace mfgprep
