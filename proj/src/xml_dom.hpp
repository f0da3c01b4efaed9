#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace syp::xml {

// Namespace-resolved element tree built from expat callbacks. Only what the
// BPMN reader needs: qualified names, attributes, text and source positions.
struct Element {
  std::string ns;
  std::string name;
  std::map<std::string, std::string> attributes;  // keyed by local name
  std::vector<std::unique_ptr<Element>> children;
  std::string text;
  std::int64_t order = 0;
  long line = 0;

  const std::string* attribute(std::string_view key) const;
  std::string attribute_or(std::string_view key, std::string_view fallback = {}) const;
};

/// Throws syp::Error(MalformedXml) on any parse failure.
std::unique_ptr<Element> parse(std::string_view document);

}  // namespace syp::xml
