#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kst {

// Error taxonomy shared by the whole library. The kind survives across the
// C API boundary as a status code.
enum class ErrorKind {
  Domain,
  Parse,
  Variance,
  Index,
  DegenerateMetric,
  DegeneratePlane,
  Frame,
  Normalization,
  Schema,
  SignatureMismatch,
  UnknownMetric,
  Io,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct DomainError : Error {
  explicit DomainError(std::string m) : Error(ErrorKind::Domain, std::move(m)) {}
};

struct ParseError : Error {
  ParseError(std::size_t pos, const std::string& m)
      : Error(ErrorKind::Parse, m + " at offset " + std::to_string(pos)),
        position(pos) {}
  std::size_t position;
};

struct VarianceError : Error {
  explicit VarianceError(std::string m) : Error(ErrorKind::Variance, std::move(m)) {}
};

struct IndexError : Error {
  explicit IndexError(std::string m) : Error(ErrorKind::Index, std::move(m)) {}
};

struct DegenerateMetricError : Error {
  explicit DegenerateMetricError(std::string m)
      : Error(ErrorKind::DegenerateMetric, std::move(m)) {}
};

struct DegeneratePlaneError : Error {
  explicit DegeneratePlaneError(std::string m)
      : Error(ErrorKind::DegeneratePlane, std::move(m)) {}
};

struct FrameError : Error {
  explicit FrameError(std::string m) : Error(ErrorKind::Frame, std::move(m)) {}
};

struct NormalizationError : Error {
  explicit NormalizationError(std::string m)
      : Error(ErrorKind::Normalization, std::move(m)) {}
};

struct SchemaError : Error {
  explicit SchemaError(std::string m) : Error(ErrorKind::Schema, std::move(m)) {}
};

struct SignatureMismatchError : Error {
  explicit SignatureMismatchError(std::string m)
      : Error(ErrorKind::SignatureMismatch, std::move(m)) {}
};

struct UnknownMetricError : Error {
  explicit UnknownMetricError(std::string m)
      : Error(ErrorKind::UnknownMetric, std::move(m)) {}
};

struct IoError : Error {
  explicit IoError(std::string m) : Error(ErrorKind::Io, std::move(m)) {}
};

}  // namespace kst
