#include <map>
#include <set>
#include <sstream>

#include "syp/error.hpp"
#include "syp/narrative.hpp"

namespace syp {

namespace {

std::vector<std::string_view> successors(const Knot& k) {
  std::vector<std::string_view> out;
  if (const auto* d = std::get_if<Divert>(&k.exit)) out.push_back(d->target);
  if (const auto* c = std::get_if<Choices>(&k.exit)) {
    for (const auto& o : c->options) out.push_back(o.target);
  }
  return out;
}

// Knots that can reach themselves. Their choices are emitted sticky ("+")
// so a revisit offers the same options again, as the runtime does.
std::set<std::string> knots_on_cycles(const CompiledNarrative& story) {
  std::map<std::string_view, const Knot*> by_id;
  for (const auto& k : story.knots) by_id.emplace(k.id, &k);
  std::set<std::string> result;
  for (const auto& k : story.knots) {
    std::set<std::string_view> seen;
    std::vector<std::string_view> stack = successors(k);
    while (!stack.empty()) {
      auto id = stack.back();
      stack.pop_back();
      if (id == k.id) {
        result.insert(k.id);
        break;
      }
      if (!seen.insert(id).second) continue;
      if (auto it = by_id.find(id); it != by_id.end()) {
        for (auto s : successors(*it->second)) stack.push_back(s);
      }
    }
  }
  return result;
}

std::string single_line(std::string_view text) {
  std::string out;
  for (char c : text) out.push_back(c == '\n' || c == '\r' ? ' ' : c);
  return out;
}

// Backslash-escapes everything Ink would otherwise read as markup.
std::string escape(std::string_view raw) {
  std::string text = single_line(raw);
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    char next = i + 1 < text.size() ? text[i + 1] : '\0';
    bool special = false;
    switch (c) {
      case '\\': case '{': case '}': case '#': case '[': case ']': case '|':
        special = true;
        break;
      case '/': special = next == '/' || next == '*'; break;
      case '-': special = next == '>' || i == 0; break;
      case '<': special = next == '-' || next == '>'; break;
      case '*': case '+': case '=': case '~': special = i == 0; break;
      default: break;
    }
    if (special) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string unescape(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\\' && i + 1 < text.size()) ++i;
    out.push_back(text[i]);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

int entry_from_id(std::string_view id) {
  auto bar = id.rfind('_');
  if (bar == std::string_view::npos) return 0;
  int value = 0;
  for (char c : id.substr(bar + 1)) {
    if (c < '0' || c > '9') return 0;
    value = value * 10 + (c - '0');
  }
  return value;
}

[[noreturn]] void syntax(std::size_t line, const std::string& what) {
  throw Error(Errc::InkSyntax, "ink line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string emit_ink(const CompiledNarrative& story) {
  const auto sticky = knots_on_cycles(story);
  std::ostringstream out;
  out << "// " << single_line(story.title) << "\n";
  out << "-> " << story.start_knot << "\n";
  for (const auto& k : story.knots) {
    out << "\n=== " << k.id << " ===\n";
    if (k.note) out << "// " << single_line(*k.note) << "\n";
    out << escape(k.body) << "\n";
    if (const auto* d = std::get_if<Divert>(&k.exit)) {
      out << "-> " << d->target << "\n";
    } else if (const auto* c = std::get_if<Choices>(&k.exit)) {
      const char bullet = sticky.count(k.id) ? '+' : '*';
      for (const auto& o : c->options) {
        out << bullet << " [" << escape(o.label) << "] -> " << o.target << "\n";
      }
    } else {
      out << "-> END\n";
    }
  }
  return out.str();
}

CompiledNarrative parse_ink(std::string_view text) {
  CompiledNarrative story;
  Knot* current = nullptr;
  bool title_seen = false;
  bool exit_seen = false;
  std::size_t line_no = 0;

  auto close_knot = [&](std::size_t line) {
    if (current && !exit_seen) syntax(line, "knot '" + current->id + "' has no exit");
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    auto line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;

    if (line.substr(0, 3) == "===") {
      close_knot(line_no);
      auto name = line;
      while (!name.empty() && name.front() == '=') name.remove_prefix(1);
      while (!name.empty() && name.back() == '=') name.remove_suffix(1);
      name = trim(name);
      if (name.empty()) syntax(line_no, "knot header without a name");
      story.knots.push_back(Knot{std::string(name), entry_from_id(name), {}, {}, End{}, {}});
      current = &story.knots.back();
      exit_seen = false;
    } else if (line.substr(0, 2) == "//") {
      auto comment = std::string(trim(line.substr(2)));
      if (current) {
        current->note = std::move(comment);
      } else if (!title_seen) {
        story.title = std::move(comment);
        title_seen = true;
      }
    } else if (line.substr(0, 2) == "->") {
      auto target = std::string(trim(line.substr(2)));
      if (target.empty()) syntax(line_no, "divert without a target");
      if (!current) {
        if (!story.start_knot.empty()) syntax(line_no, "second top-level divert");
        story.start_knot = std::move(target);
        continue;
      }
      if (exit_seen) syntax(line_no, "knot '" + current->id + "' already has an exit");
      current->exit = target == "END" ? Exit{End{}} : Exit{Divert{std::move(target)}};
      exit_seen = true;
    } else if (line.front() == '*' || line.front() == '+') {
      if (!current) syntax(line_no, "choice outside a knot");
      auto rest = trim(line.substr(1));
      if (rest.empty() || rest.front() != '[') syntax(line_no, "choice without [label]");
      std::size_t close = 1;
      while (close < rest.size() && rest[close] != ']') close += rest[close] == '\\' ? 2 : 1;
      if (close >= rest.size()) syntax(line_no, "unterminated choice label");
      auto label = unescape(rest.substr(1, close - 1));
      auto divert = trim(rest.substr(close + 1));
      if (divert.substr(0, 2) != "->") syntax(line_no, "choice without a divert");
      auto target = std::string(trim(divert.substr(2)));
      if (exit_seen && !std::holds_alternative<Choices>(current->exit)) {
        syntax(line_no, "choice after a divert");
      }
      if (!std::holds_alternative<Choices>(current->exit) || !exit_seen) current->exit = Choices{};
      std::get<Choices>(current->exit).options.push_back({std::move(label), std::move(target)});
      exit_seen = true;
    } else {
      if (!current) syntax(line_no, "text outside a knot");
      if (exit_seen) syntax(line_no, "text after the knot's exit");
      if (!current->body.empty()) current->body += '\n';
      current->body += unescape(line);
    }
  }
  close_knot(line_no);
  if (story.start_knot.empty()) syntax(line_no, "missing opening divert");
  if (auto problems = narrative_problems(story); !problems.empty()) {
    syntax(line_no, problems.front());
  }
  return story;
}

}  // namespace syp
