#include "sawlab/word.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "sawlab/errors.hpp"

namespace sawlab {

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const GeneratorSymbol& s : w) {
    if (!out.empty() && out.back() == s.inverse()) {
      out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return out;
}

bool is_freely_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == w[i - 1].inverse()) return false;
  }
  return true;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  while (r.size() >= 2 && r.front() == r.back().inverse()) {
    r.erase(r.begin());
    r.pop_back();
  }
  return r;
}

Word word_inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word word_concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

long long signed_exponent(const Word& w, int index) {
  long long e = 0;
  for (const GeneratorSymbol& s : w) {
    if (s.index == index) e += s.sign;
  }
  return e;
}

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].rank() != b[i].rank()) return a[i].rank() < b[i].rank();
  }
  return false;
}

std::string render_word(const Word& w, std::span<const std::string> names) {
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    long long run = static_cast<long long>(j - i) * w[i].sign;
    if (!out.empty()) out += ' ';
    out += names[static_cast<std::size_t>(w[i].index)];
    if (run != 1) {
      out += '^';
      out += std::to_string(run);
    }
    i = j;
  }
  return out;
}

Word parse_word(std::string_view text, std::span<const std::string> names) {
  Word out;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (!std::isalpha(static_cast<unsigned char>(text[i])) && text[i] != '_') {
      throw SpecParseError("expected generator name in word", i);
    }
    std::size_t start = i;
    while (i < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
      ++i;
    }
    std::string_view name = text.substr(start, i - start);
    int index = -1;
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (names[k] == name) {
        index = static_cast<int>(k);
        break;
      }
    }
    if (index < 0) throw SpecParseError("unknown generator '" + std::string(name) + "'", start);

    long long exponent = 1;
    skip_ws();
    if (i < text.size() && text[i] == '^') {
      ++i;
      skip_ws();
      bool negative = false;
      if (i < text.size() && text[i] == '-') {
        negative = true;
        ++i;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw SpecParseError("expected integer exponent", i);
      }
      exponent = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        exponent = exponent * 10 + (text[i] - '0');
        if (exponent > 1'000'000) throw SpecParseError("exponent too large", i);
        ++i;
      }
      if (negative) exponent = -exponent;
    }
    int sign = exponent >= 0 ? +1 : -1;
    for (long long k = 0; k < (exponent >= 0 ? exponent : -exponent); ++k) {
      out.push_back({index, sign});
    }
    skip_ws();
  }
  return out;
}

}  // namespace sawlab
