#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fiskit {

/// Error categories surfaced by the library. The CLI maps these to exit codes.
enum class Errc {
  BoundsOrder,      // mf_from_bounds called with left > mean or mean > right
  ArityMismatch,    // input width or coefficient width does not match the model
  ModeMismatch,     // operation requires the other consequent mode
  ZeroFiring,       // no rule fires for the given input
  ZeroFiringRecord, // dataset records with no rule support in a strict context
  EmptyInput,       // empty dataset or record list
  Singular,         // least-squares factorization failed even with ridge
  UnknownValue,     // categorical text missing from the formatting map
  MissingField,     // raw record lacks a field the formatting map requires
  InvalidModel,     // model-level invariant violated
  BadFile,          // unreadable or syntactically broken auxiliary file
};

class FisError : public std::runtime_error {
public:
  FisError(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

/// Strict design-matrix assembly reports every offending record at once.
class ZeroFiringRecords : public FisError {
public:
  ZeroFiringRecords(std::vector<std::size_t> records, const std::string& what)
      : FisError(Errc::ZeroFiringRecord, what), records_(std::move(records)) {}
  const std::vector<std::size_t>& records() const { return records_; }

private:
  std::vector<std::size_t> records_;
};

}  // namespace fiskit
