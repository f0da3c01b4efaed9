#include "syp/error.hpp"

namespace syp {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedXml: return "MalformedXml";
    case Errc::UnsupportedElement: return "UnsupportedElement";
    case Errc::MissingLane: return "MissingLane";
    case Errc::AmbiguousLane: return "AmbiguousLane";
    case Errc::DanglingReference: return "DanglingReference";
    case Errc::MissingProcessName: return "MissingProcessName";
    case Errc::InvalidModelJson: return "InvalidModelJson";
    case Errc::MissingGateLabel: return "MissingGateLabel";
    case Errc::UnknownSentenceId: return "UnknownSentenceId";
    case Errc::StructuralEdit: return "StructuralEdit";
    case Errc::InvalidLexicon: return "InvalidLexicon";
    case Errc::CountMismatch: return "CountMismatch";
    case Errc::NoStartEvent: return "NoStartEvent";
    case Errc::InvalidSheetJson: return "InvalidSheetJson";
    case Errc::IncompleteSheet: return "IncompleteSheet";
    case Errc::UnlabeledChoice: return "UnlabeledChoice";
    case Errc::DuplicateChoice: return "DuplicateChoice";
    case Errc::DeadEnd: return "DeadEnd";
    case Errc::InfiniteLoop: return "InfiniteLoop";
    case Errc::UnsupportedParallel: return "UnsupportedParallel";
    case Errc::InkSyntax: return "InkSyntax";
    case Errc::InvalidStoryJson: return "InvalidStoryJson";
    case Errc::NoSuchChoice: return "NoSuchChoice";
    case Errc::SessionFinished: return "SessionFinished";
    case Errc::HashMismatch: return "HashMismatch";
    case Errc::CorruptSave: return "CorruptSave";
    case Errc::ModelMismatch: return "ModelMismatch";
    case Errc::EmptyInput: return "EmptyInput";
  }
  return "Unknown";
}

}  // namespace syp
