#include "xml_dom.hpp"

#include <expat.h>

#include <string>

#include "syp/error.hpp"

namespace syp::xml {

namespace {

constexpr char kNsSeparator = '|';

void split_name(const char* qualified, std::string& ns, std::string& local) {
  std::string_view name(qualified);
  auto bar = name.rfind(kNsSeparator);
  if (bar == std::string_view::npos) {
    ns.clear();
    local.assign(name);
  } else {
    ns.assign(name.substr(0, bar));
    local.assign(name.substr(bar + 1));
  }
}

struct Builder {
  XML_Parser parser = nullptr;
  std::unique_ptr<Element> root;
  std::vector<Element*> stack;
  std::int64_t counter = 0;
};

void on_start(void* user, const XML_Char* name, const XML_Char** atts) {
  auto& b = *static_cast<Builder*>(user);
  auto element = std::make_unique<Element>();
  split_name(name, element->ns, element->name);
  element->order = b.counter++;
  element->line = static_cast<long>(XML_GetCurrentLineNumber(b.parser));
  for (int i = 0; atts[i] != nullptr; i += 2) {
    std::string ns, local;
    split_name(atts[i], ns, local);
    element->attributes.emplace(std::move(local), atts[i + 1]);
  }
  Element* raw = element.get();
  if (b.stack.empty()) {
    b.root = std::move(element);
  } else {
    b.stack.back()->children.push_back(std::move(element));
  }
  b.stack.push_back(raw);
}

void on_end(void* user, const XML_Char*) {
  static_cast<Builder*>(user)->stack.pop_back();
}

void on_text(void* user, const XML_Char* s, int len) {
  auto& b = *static_cast<Builder*>(user);
  if (!b.stack.empty()) b.stack.back()->text.append(s, static_cast<std::size_t>(len));
}

}  // namespace

const std::string* Element::attribute(std::string_view key) const {
  auto it = attributes.find(std::string(key));
  return it == attributes.end() ? nullptr : &it->second;
}

std::string Element::attribute_or(std::string_view key, std::string_view fallback) const {
  const auto* value = attribute(key);
  return value ? *value : std::string(fallback);
}

std::unique_ptr<Element> parse(std::string_view document) {
  Builder builder;
  std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(
      XML_ParserCreateNS("UTF-8", kNsSeparator), &XML_ParserFree);
  if (!parser) throw Error(Errc::MalformedXml, "cannot allocate XML parser");
  builder.parser = parser.get();
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);

  if (XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE) ==
      XML_STATUS_ERROR) {
    throw Error(Errc::MalformedXml,
                "malformed XML at line " + std::to_string(XML_GetCurrentLineNumber(parser.get())) +
                    ", column " + std::to_string(XML_GetCurrentColumnNumber(parser.get())) + ": " +
                    XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  if (!builder.root) throw Error(Errc::MalformedXml, "document has no root element");
  return std::move(builder.root);
}

}  // namespace syp::xml
