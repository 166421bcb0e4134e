#include "dzeta/lincomb.hpp"

namespace dzeta::detail {

std::vector<RawTerm> split_terms(std::string_view text) {
  std::vector<RawTerm> terms;
  std::size_t begin = 0;
  bool negative = false;
  while (begin < text.size() && text[begin] == ' ') ++begin;
  if (begin < text.size() && text[begin] == '-') {
    negative = true;
    ++begin;
  }
  int depth = 0;
  std::size_t i = begin;
  auto flush = [&](std::size_t end) {
    if (end <= begin) throw ParseError("empty term", begin);
    terms.push_back({negative, text.substr(begin, end - begin), begin});
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '(' || c == '[' || c == '{') {
      ++depth;
    } else if (c == ')' || c == ']' || c == '}') {
      if (--depth < 0) throw ParseError("unbalanced bracket", i);
    } else if (depth == 0 && c == ' ' && i + 2 < text.size() && (text[i + 1] == '+' || text[i + 1] == '-') &&
               text[i + 2] == ' ') {
      flush(i);
      negative = text[i + 1] == '-';
      i += 3;
      begin = i;
      continue;
    }
    ++i;
  }
  if (depth != 0) throw ParseError("unbalanced bracket", text.size());
  flush(text.size());
  return terms;
}

std::pair<Rational, std::size_t> split_coefficient(std::string_view term, std::size_t offset) {
  const auto star = term.find('*');
  if (star == std::string_view::npos) throw ParseError("term without '*' separator", offset);
  Rational c;
  try {
    c = Rational::parse(term.substr(0, star));
  } catch (const ParseError&) {
    throw ParseError("malformed coefficient '" + std::string(term.substr(0, star)) + "'", offset);
  }
  if (c.sign() < 0) throw ParseError("signed coefficient inside a term", offset);
  return {c, offset + star + 1};
}

}  // namespace dzeta::detail
