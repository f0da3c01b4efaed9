#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace syp {

enum class Errc {
  // bpmn-model
  MalformedXml,
  UnsupportedElement,
  MissingLane,
  AmbiguousLane,
  DanglingReference,
  MissingProcessName,
  InvalidModelJson,
  // sentence-extract
  MissingGateLabel,
  UnknownSentenceId,
  StructuralEdit,
  InvalidLexicon,
  // beat-sheet
  CountMismatch,
  NoStartEvent,
  InvalidSheetJson,
  // narrative-compile
  IncompleteSheet,
  UnlabeledChoice,
  DuplicateChoice,
  DeadEnd,
  InfiniteLoop,
  UnsupportedParallel,
  InkSyntax,
  InvalidStoryJson,
  // runtime
  NoSuchChoice,
  SessionFinished,
  HashMismatch,
  CorruptSave,
  // metrics
  ModelMismatch,
  EmptyInput,
};

std::string_view errc_name(Errc code) noexcept;

/// Error raised by every pipeline stage. `subject` names the offending
/// element, sentence or knot when there is one.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::string subject = {})
      : std::runtime_error(message), code_(code), subject_(std::move(subject)) {}

  Errc code() const noexcept { return code_; }
  const std::string& subject() const noexcept { return subject_; }

 private:
  Errc code_;
  std::string subject_;
};

}  // namespace syp
