#include "graft/phonetic.hpp"

#include <algorithm>
#include <initializer_list>
#include <stdexcept>

#include "graft/unicode.hpp"

namespace graft {
namespace {

bool is_vowel(char c) {
  return c == 'A' || c == 'E' || c == 'I' || c == 'O' || c == 'U';
}

// ---------------------------------------------------------------- Soundex

char soundex_digit(char c) {
  switch (c) {
    case 'B': case 'F': case 'P': case 'V':
      return '1';
    case 'C': case 'G': case 'J': case 'K': case 'Q': case 'S': case 'X':
    case 'Z':
      return '2';
    case 'D': case 'T':
      return '3';
    case 'L':
      return '4';
    case 'M': case 'N':
      return '5';
    case 'R':
      return '6';
    case 'H': case 'W':
      return '-';  // transparent separator
    default:
      return '0';  // vowels and Y
  }
}

// ------------------------------------------------------------ Metaphone

class MetaphoneEncoder {
 public:
  explicit MetaphoneEncoder(std::string_view letters) : w_(letters) {
    if (starts_with("KN") || starts_with("GN") || starts_with("PN") ||
        starts_with("AE") || starts_with("WR")) {
      w_.erase(0, 1);
    } else if (starts_with("X")) {
      w_[0] = 'S';
    } else if (starts_with("WH")) {
      w_.erase(1, 1);
    }
    std::string deduped;
    for (char c : w_) {
      if (deduped.empty() || c != deduped.back() || c == 'C') deduped += c;
    }
    w_ = std::move(deduped);
  }

  std::string run() {
    std::string out;
    const std::size_t n = w_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const char c = w_[i];
      const char prev = i > 0 ? w_[i - 1] : '\0';
      const char next = at(i + 1);
      const char after = at(i + 2);
      switch (c) {
        case 'A': case 'E': case 'I': case 'O': case 'U':
          if (i == 0) out += c;
          break;
        case 'B':
          if (!(prev == 'M' && i + 1 == n)) out += 'B';
          break;
        case 'C':
          if (next == 'I' && after == 'A') {
            out += 'X';
          } else if (next == 'H') {
            out += prev == 'S' ? 'K' : 'X';
          } else if (next == 'I' || next == 'E' || next == 'Y') {
            if (prev != 'S') out += 'S';
          } else {
            out += 'K';
          }
          break;
        case 'D':
          if (next == 'G' && (after == 'E' || after == 'Y' || after == 'I')) {
            out += 'J';
            ++i;
          } else {
            out += 'T';
          }
          break;
        case 'G':
          if (next == 'H' && i + 2 < n && !is_vowel(after)) {
            break;  // -GH- before a consonant
          }
          if (next == 'N' && (i + 2 == n || (after == 'E' && at(i + 3) == 'D' &&
                                             i + 4 == n))) {
            break;  // -GN, -GNED
          }
          if ((next == 'I' || next == 'E' || next == 'Y') && prev != 'G') {
            out += 'J';
          } else {
            out += 'K';
          }
          break;
        case 'H':
          if (prev == 'C' || prev == 'G' || prev == 'P' || prev == 'S' ||
              prev == 'T') {
            break;
          }
          if (i > 0 && is_vowel(prev) && !is_vowel(next)) break;
          out += 'H';
          break;
        case 'K':
          if (prev != 'C') out += 'K';
          break;
        case 'P':
          out += next == 'H' ? 'F' : 'P';
          break;
        case 'Q':
          out += 'K';
          break;
        case 'S':
          if (next == 'H' || (next == 'I' && (after == 'O' || after == 'A'))) {
            out += 'X';
          } else {
            out += 'S';
          }
          break;
        case 'T':
          if (next == 'I' && (after == 'O' || after == 'A')) {
            out += 'X';
          } else if (next == 'H') {
            out += '0';
          } else if (!(next == 'C' && after == 'H')) {
            out += 'T';
          }
          break;
        case 'V':
          out += 'F';
          break;
        case 'W':
        case 'Y':
          if (is_vowel(next)) out += c;
          break;
        case 'X':
          out += "KS";
          break;
        case 'Z':
          out += 'S';
          break;
        default:  // F J L M N R
          out += c;
          break;
      }
    }
    return out;
  }

 private:
  bool starts_with(std::string_view p) const {
    return std::string_view(w_).substr(0, p.size()) == p;
  }
  char at(std::size_t i) const { return i < w_.size() ? w_[i] : '\0'; }

  std::string w_;
};

// ----------------------------------------------------- Double Metaphone

class DoubleMetaphoneEncoder {
 public:
  DoubleMetaphoneEncoder(std::string_view letters, std::size_t max_length)
      : w_(letters), length_(static_cast<int>(letters.size())),
        last_(length_ - 1), max_(max_length) {
    slavo_germanic_ = w_.find('W') != std::string::npos ||
                      w_.find('K') != std::string::npos ||
                      w_.find("CZ") != std::string::npos ||
                      w_.find("WITZ") != std::string::npos;
  }

  PhoneticCode run() {
    int cur = 0;
    if (at_any(0, {"GN", "KN", "PN", "WR", "PS"})) cur = 1;
    if (get(0) == 'X') {
      add("S");
      cur = 1;
    }
    while ((primary_.size() < max_ || secondary_.size() < max_) &&
           cur < length_) {
      cur = step(cur);
    }
    primary_.resize(std::min(primary_.size(), max_));
    secondary_.resize(std::min(secondary_.size(), max_));
    return {primary_, secondary_};
  }

 private:
  char get(int pos) const {
    return pos >= 0 && pos < length_ ? w_[static_cast<std::size_t>(pos)]
                                     : '\0';
  }

  bool vowel_at(int pos) const {
    char c = get(pos);
    return is_vowel(c) || c == 'Y';
  }

  bool at_any(int start, std::initializer_list<std::string_view> options) const {
    if (start < 0 || start >= length_) return false;
    std::string_view tail = std::string_view(w_).substr(
        static_cast<std::size_t>(start));
    return std::any_of(options.begin(), options.end(),
                       [&](std::string_view o) { return tail.starts_with(o); });
  }

  void add(std::string_view both) { add(both, both); }
  void add(std::string_view primary, std::string_view secondary) {
    primary_ += primary;
    secondary_ += secondary;
  }

  int step(int cur) {
    switch (get(cur)) {
      case 'A': case 'E': case 'I': case 'O': case 'U': case 'Y':
        if (cur == 0) add("A");
        return cur + 1;
      case 'B':
        add("P");
        return get(cur + 1) == 'B' ? cur + 2 : cur + 1;
      case 'C': return on_c(cur);
      case 'D': return on_d(cur);
      case 'F':
        add("F");
        return get(cur + 1) == 'F' ? cur + 2 : cur + 1;
      case 'G': return on_g(cur);
      case 'H':
        if ((cur == 0 || vowel_at(cur - 1)) && vowel_at(cur + 1)) {
          add("H");
          return cur + 2;
        }
        return cur + 1;
      case 'J': return on_j(cur);
      case 'K':
        add("K");
        return get(cur + 1) == 'K' ? cur + 2 : cur + 1;
      case 'L': return on_l(cur);
      case 'M':
        add("M");
        if ((at_any(cur - 1, {"UMB"}) &&
             (cur + 1 == last_ || at_any(cur + 2, {"ER"}))) ||
            get(cur + 1) == 'M') {
          return cur + 2;
        }
        return cur + 1;
      case 'N':
        add("N");
        return get(cur + 1) == 'N' ? cur + 2 : cur + 1;
      case 'P':
        if (get(cur + 1) == 'H') {
          add("F");
          return cur + 2;
        }
        add("P");
        return at_any(cur + 1, {"P", "B"}) ? cur + 2 : cur + 1;
      case 'Q':
        add("K");
        return get(cur + 1) == 'Q' ? cur + 2 : cur + 1;
      case 'R':
        if (cur == last_ && !slavo_germanic_ && at_any(cur - 2, {"IE"}) &&
            !at_any(cur - 4, {"ME", "MA"})) {
          add("", "R");
        } else {
          add("R");
        }
        return get(cur + 1) == 'R' ? cur + 2 : cur + 1;
      case 'S': return on_s(cur);
      case 'T': return on_t(cur);
      case 'V':
        add("F");
        return get(cur + 1) == 'V' ? cur + 2 : cur + 1;
      case 'W': return on_w(cur);
      case 'X':
        if (!(cur == last_ && (at_any(cur - 3, {"IAU", "EAU"}) ||
                               at_any(cur - 2, {"AU", "OU"})))) {
          add("KS");
        }
        return at_any(cur + 1, {"C", "X"}) ? cur + 2 : cur + 1;
      case 'Z': return on_z(cur);
      default:
        return cur + 1;
    }
  }

  int on_c(int cur) {
    // Germanic -ACH-, not -ACHI- / -ACHE- (except -BACHER-, -MACHER-).
    if (cur > 1 && !vowel_at(cur - 2) && at_any(cur - 1, {"ACH"}) &&
        get(cur + 2) != 'I' &&
        (get(cur + 2) != 'E' || at_any(cur - 2, {"BACHER", "MACHER"}))) {
      add("K");
      return cur + 2;
    }
    if (cur == 0 && at_any(cur, {"CAESAR"})) {
      add("S");
      return cur + 2;
    }
    if (at_any(cur, {"CHIA"})) {
      add("K");
      return cur + 2;
    }
    if (at_any(cur, {"CH"})) {
      if (cur > 0 && at_any(cur, {"CHAE"})) {
        add("K", "X");
        return cur + 2;
      }
      if (cur == 0 &&
          (at_any(cur + 1, {"HARAC", "HARIS"}) ||
           at_any(cur + 1, {"HOR", "HYM", "HIA", "HEM"})) &&
          !at_any(0, {"CHORE"})) {
        add("K");
        return cur + 2;
      }
      if (at_any(0, {"VAN ", "VON ", "SCH"}) ||
          at_any(cur - 2, {"ORCHES", "ARCHIT", "ORCHID"}) ||
          at_any(cur + 2, {"T", "S"}) ||
          ((at_any(cur - 1, {"A", "O", "U", "E"}) || cur == 0) &&
           (at_any(cur + 2, {"L", "R", "N", "M", "B", "H", "F", "V", "W", " "}) ||
            cur + 2 >= length_))) {
        add("K");
      } else if (cur > 0) {
        if (at_any(0, {"MC"})) {
          add("K");
        } else {
          add("X", "K");
        }
      } else {
        add("X");
      }
      return cur + 2;
    }
    if (at_any(cur, {"CZ"}) && !at_any(cur - 2, {"WICZ"})) {
      add("S", "X");
      return cur + 2;
    }
    if (at_any(cur + 1, {"CIA"})) {
      add("X");
      return cur + 3;
    }
    if (at_any(cur, {"CC"}) && !(cur == 1 && get(0) == 'M')) {
      if (at_any(cur + 2, {"I", "E", "H"}) && !at_any(cur + 2, {"HU"})) {
        if ((cur == 1 && get(cur - 1) == 'A') ||
            at_any(cur - 1, {"UCCEE", "UCCES"})) {
          add("KS");
        } else {
          add("X");
        }
        return cur + 3;
      }
      add("K");
      return cur + 2;
    }
    if (at_any(cur, {"CK", "CG", "CQ"})) {
      add("K");
      return cur + 2;
    }
    if (at_any(cur, {"CI", "CE", "CY"})) {
      if (at_any(cur, {"CIO", "CIE", "CIA"})) {
        add("S", "X");
      } else {
        add("S");
      }
      return cur + 2;
    }
    add("K");
    if (at_any(cur + 1, {" C", " Q", " G"})) return cur + 3;
    if (at_any(cur + 1, {"C", "K", "Q"}) && !at_any(cur + 1, {"CE", "CI"})) {
      return cur + 2;
    }
    return cur + 1;
  }

  int on_d(int cur) {
    if (at_any(cur, {"DG"})) {
      if (at_any(cur + 2, {"I", "E", "Y"})) {
        add("J");
        return cur + 3;
      }
      add("TK");
      return cur + 2;
    }
    add("T");
    return at_any(cur, {"DT", "DD"}) ? cur + 2 : cur + 1;
  }

  int on_g(int cur) {
    if (get(cur + 1) == 'H') {
      if (cur > 0 && !vowel_at(cur - 1)) {
        add("K");
        return cur + 2;
      }
      if (cur == 0) {
        add(get(cur + 2) == 'I' ? "J" : "K");
        return cur + 2;
      }
      // Parker's rule: 'hugh', 'bough', 'broughton'.
      if ((cur > 1 && at_any(cur - 2, {"B", "H", "D"})) ||
          (cur > 2 && at_any(cur - 3, {"B", "H", "D"})) ||
          (cur > 3 && at_any(cur - 4, {"B", "H"}))) {
        return cur + 2;
      }
      if (cur > 2 && get(cur - 1) == 'U' &&
          at_any(cur - 3, {"C", "G", "L", "R", "T"})) {
        add("F");
      } else if (cur > 0 && get(cur - 1) != 'I') {
        add("K");
      }
      return cur + 2;
    }
    if (get(cur + 1) == 'N') {
      if (cur == 1 && vowel_at(0) && !slavo_germanic_) {
        add("KN", "N");
      } else if (!at_any(cur + 2, {"EY"}) && get(cur + 1) != 'Y' &&
                 !slavo_germanic_) {
        add("N", "KN");
      } else {
        add("KN");
      }
      return cur + 2;
    }
    if (at_any(cur + 1, {"LI"}) && !slavo_germanic_) {
      add("KL", "L");
      return cur + 2;
    }
    if (cur == 0 && (get(cur + 1) == 'Y' ||
                     at_any(cur + 1, {"ES", "EP", "EB", "EL", "EY", "IB", "IL",
                                      "IN", "IE", "EI", "ER"}))) {
      add("K", "J");
      return cur + 2;
    }
    if ((at_any(cur + 1, {"ER"}) || get(cur + 1) == 'Y') &&
        !at_any(0, {"DANGER", "RANGER", "MANGER"}) &&
        !at_any(cur - 1, {"E", "I"}) && !at_any(cur - 1, {"RGY", "OGY"})) {
      add("K", "J");
      return cur + 2;
    }
    if (at_any(cur + 1, {"E", "I", "Y"}) || at_any(cur - 1, {"AGGI", "OGGI"})) {
      if (at_any(0, {"VAN ", "VON ", "SCH"}) || at_any(cur + 1, {"ET"})) {
        add("K");
      } else if (at_any(cur + 1, {"IER "}) ||
                 (at_any(cur + 1, {"IER"}) && cur + 3 == last_)) {
        add("J");
      } else {
        add("J", "K");
      }
      return cur + 2;
    }
    add("K");
    return get(cur + 1) == 'G' ? cur + 2 : cur + 1;
  }

  int on_j(int cur) {
    if (at_any(cur, {"JOSE"}) || at_any(0, {"SAN "})) {
      if ((cur == 0 && (get(cur + 4) == ' ' || cur + 4 >= length_)) ||
          at_any(0, {"SAN "})) {
        add("H");
      } else {
        add("J", "H");
      }
      return cur + 1;
    }
    if (cur == 0 && !at_any(cur, {"JOSE"})) {
      add("J", "A");
    } else if (vowel_at(cur - 1) && !slavo_germanic_ &&
               (get(cur + 1) == 'A' || get(cur + 1) == 'O')) {
      add("J", "H");
    } else if (cur == last_) {
      add("J", "");
    } else if (!at_any(cur + 1, {"L", "T", "K", "S", "N", "M", "B", "Z"}) &&
               !at_any(cur - 1, {"S", "K", "L"})) {
      add("J");
    }
    return get(cur + 1) == 'J' ? cur + 2 : cur + 1;
  }

  int on_l(int cur) {
    if (get(cur + 1) == 'L') {
      if ((cur == length_ - 3 && at_any(cur - 1, {"ILLO", "ILLA", "ALLE"})) ||
          ((at_any(last_ - 1, {"AS", "OS"}) || at_any(last_, {"A", "O"})) &&
           at_any(cur - 1, {"ALLE"}))) {
        add("L", "");
        return cur + 2;
      }
      add("L");
      return cur + 2;
    }
    add("L");
    return cur + 1;
  }

  int on_s(int cur) {
    if (at_any(cur - 1, {"ISL", "YSL"})) return cur + 1;
    if (cur == 0 && at_any(cur, {"SUGAR"})) {
      add("X", "S");
      return cur + 1;
    }
    if (at_any(cur, {"SH"})) {
      if (at_any(cur + 1, {"HEIM", "HOEK", "HOLM", "HOLZ"})) {
        add("S");
      } else {
        add("X");
      }
      return cur + 2;
    }
    if (at_any(cur, {"SIO", "SIA"}) || at_any(cur, {"SIAN"})) {
      if (!slavo_germanic_) {
        add("S", "X");
      } else {
        add("S");
      }
      return cur + 3;
    }
    if ((cur == 0 && at_any(cur + 1, {"M", "N", "L", "W"})) ||
        at_any(cur + 1, {"Z"})) {
      add("S", "X");
      return at_any(cur + 1, {"Z"}) ? cur + 2 : cur + 1;
    }
    if (at_any(cur, {"SC"})) {
      if (get(cur + 2) == 'H') {
        if (at_any(cur + 3, {"OO", "ER", "EN", "UY", "ED", "EM"})) {
          if (at_any(cur + 3, {"ER", "EN"})) {
            add("X", "SK");
          } else {
            add("SK");
          }
          return cur + 3;
        }
        if (cur == 0 && !vowel_at(3) && get(3) != 'W') {
          add("X", "S");
        } else {
          add("X");
        }
        return cur + 3;
      }
      if (at_any(cur + 2, {"I", "E", "Y"})) {
        add("S");
        return cur + 3;
      }
      add("SK");
      return cur + 3;
    }
    if (cur == last_ && at_any(cur - 2, {"AI", "OI"})) {
      add("", "S");
    } else {
      add("S");
    }
    return at_any(cur + 1, {"S", "Z"}) ? cur + 2 : cur + 1;
  }

  int on_t(int cur) {
    if (at_any(cur, {"TION"})) {
      add("X");
      return cur + 3;
    }
    if (at_any(cur, {"TIA", "TCH"})) {
      add("X");
      return cur + 3;
    }
    if (at_any(cur, {"TH"}) || at_any(cur, {"TTH"})) {
      if (at_any(cur + 2, {"OM", "AM"}) || at_any(0, {"VAN ", "VON ", "SCH"})) {
        add("T");
      } else {
        add("0", "T");
      }
      return cur + 2;
    }
    add("T");
    return at_any(cur + 1, {"T", "D"}) ? cur + 2 : cur + 1;
  }

  int on_w(int cur) {
    if (at_any(cur, {"WR"})) {
      add("R");
      return cur + 2;
    }
    if (cur == 0 && (vowel_at(cur + 1) || at_any(cur, {"WH"}))) {
      if (vowel_at(cur + 1)) {
        add("A", "F");
      } else {
        add("A");
      }
    }
    if ((cur == last_ && vowel_at(cur - 1)) ||
        at_any(cur - 1, {"EWSKI", "EWSKY", "OWSKI", "OWSKY"}) ||
        at_any(0, {"SCH"})) {
      add("", "F");
      return cur + 1;
    }
    if (at_any(cur, {"WICZ", "WITZ"})) {
      add("TS", "FX");
      return cur + 4;
    }
    return cur + 1;
  }

  int on_z(int cur) {
    if (get(cur + 1) == 'H') {
      add("J");
      return cur + 2;
    }
    if (at_any(cur + 1, {"ZO", "ZI", "ZA"}) ||
        (slavo_germanic_ && cur > 0 && get(cur - 1) != 'T')) {
      add("S", "TS");
    } else {
      add("S");
    }
    return get(cur + 1) == 'Z' ? cur + 2 : cur + 1;
  }

  std::string w_;
  int length_;
  int last_;
  std::size_t max_;
  bool slavo_germanic_ = false;
  std::string primary_;
  std::string secondary_;
};

// ---------------------------------------------------------------- NYSIIS

class NysiisEncoder {
 public:
  explicit NysiisEncoder(std::string_view letters) : w_(letters) {}

  std::string run(std::size_t max_length) {
    if (starts_with("MAC")) {
      w_.replace(0, 3, "MCC");
    } else if (starts_with("KN")) {
      w_.replace(0, 2, "NN");
    } else if (starts_with("K")) {
      w_[0] = 'C';
    } else if (starts_with("PH") || starts_with("PF")) {
      w_.replace(0, 2, "FF");
    } else if (starts_with("SCH")) {
      w_.replace(0, 3, "SSS");
    }

    if (ends_with("EE") || ends_with("IE")) {
      w_.replace(w_.size() - 2, 2, "Y");
    } else if (ends_with("DT") || ends_with("RT") || ends_with("RD") ||
               ends_with("NT") || ends_with("ND")) {
      w_.replace(w_.size() - 2, 2, "D");
    }

    std::string key(1, w_[0]);
    for (std::size_t i = 1; i < w_.size();) {
      std::size_t span = 1;
      const char c = w_[i];
      if (c == 'E' && at(i + 1) == 'V') {
        w_.replace(i, 2, "AF");
        span = 2;
      } else if (is_vowel(c)) {
        w_[i] = 'A';
      } else if (c == 'Q') {
        w_[i] = 'G';
      } else if (c == 'Z') {
        w_[i] = 'S';
      } else if (c == 'M') {
        w_[i] = 'N';
      } else if (c == 'K' && at(i + 1) == 'N') {
        w_.erase(i, 1);
      } else if (c == 'K') {
        w_[i] = 'C';
      } else if (c == 'S' && at(i + 1) == 'C' && at(i + 2) == 'H') {
        w_.replace(i, 3, "SSS");
        span = 3;
      } else if (c == 'P' && at(i + 1) == 'H') {
        w_.replace(i, 2, "FF");
        span = 2;
      } else if (c == 'H' && (!is_vowel(w_[i - 1]) || !is_vowel(at(i + 1)))) {
        w_[i] = w_[i - 1];
      } else if (c == 'W' && is_vowel(w_[i - 1])) {
        w_[i] = w_[i - 1];
      }
      for (std::size_t j = i; j < i + span; ++j) {
        if (key.back() != w_[j]) key += w_[j];
      }
      i += span;
    }

    if (key.size() > 1 && key.back() == 'S') key.pop_back();
    if (key.size() > 2 && key.ends_with("AY")) key.replace(key.size() - 2, 2, "Y");
    if (key.size() > 1 && key.back() == 'A') key.pop_back();
    if (max_length > 0 && key.size() > max_length) key.resize(max_length);
    return key;
  }

 private:
  bool starts_with(std::string_view p) const {
    return std::string_view(w_).starts_with(p);
  }
  bool ends_with(std::string_view p) const {
    return w_.size() > p.size() && std::string_view(w_).ends_with(p);
  }
  char at(std::size_t i) const { return i < w_.size() ? w_[i] : '\0'; }

  std::string w_;
};

void require_letters(std::string_view letters) {
  if (letters.empty()) throw std::invalid_argument("empty phonetic input");
}

}  // namespace

UnencodableName::UnencodableName(std::string_view name)
    : Error("name '" + std::string(name) + "' has no encodable letters") {}

PhoneticAlgorithm parse_phonetic_algorithm(std::string_view text) {
  if (text == "soundex") return PhoneticAlgorithm::soundex;
  if (text == "metaphone") return PhoneticAlgorithm::metaphone;
  if (text == "dmetaphone" || text == "double_metaphone" ||
      text == "doublemetaphone") {
    return PhoneticAlgorithm::double_metaphone;
  }
  if (text == "nysiis") return PhoneticAlgorithm::nysiis;
  if (text == "mra") return PhoneticAlgorithm::mra;
  throw std::invalid_argument("unknown phonetic algorithm '" +
                              std::string(text) + "'");
}

std::string_view to_string(PhoneticAlgorithm algorithm) {
  switch (algorithm) {
    case PhoneticAlgorithm::soundex: return "soundex";
    case PhoneticAlgorithm::metaphone: return "metaphone";
    case PhoneticAlgorithm::double_metaphone: return "dmetaphone";
    case PhoneticAlgorithm::nysiis: return "nysiis";
    case PhoneticAlgorithm::mra: return "mra";
  }
  return "?";
}

std::string phonetic_letters(std::string_view name) {
  std::string folded = unicode::fold_to_ascii(name);
  std::string out;
  out.reserve(folded.size());
  for (char c : folded) {
    if (c >= 'a' && c <= 'z') {
      out += static_cast<char>(c - 'a' + 'A');
    } else if (c >= 'A' && c <= 'Z') {
      out += c;
    }
  }
  return out;
}

std::string soundex(std::string_view letters) {
  require_letters(letters);
  std::string code(1, letters[0]);
  char last = soundex_digit(letters[0]);
  for (std::size_t i = 1; i < letters.size() && code.size() < 4; ++i) {
    const char digit = soundex_digit(letters[i]);
    if (digit == '-') continue;
    if (digit != '0' && digit != last) code += digit;
    last = digit;
  }
  code.resize(4, '0');
  return code;
}

std::string metaphone(std::string_view letters) {
  require_letters(letters);
  return MetaphoneEncoder(letters).run();
}

PhoneticCode double_metaphone(std::string_view letters,
                              std::size_t max_length) {
  require_letters(letters);
  return DoubleMetaphoneEncoder(letters, max_length).run();
}

std::string nysiis(std::string_view letters, std::size_t max_length) {
  require_letters(letters);
  return NysiisEncoder(letters).run(max_length);
}

std::string mra_codex(std::string_view letters) {
  require_letters(letters);
  std::string stripped(1, letters[0]);
  for (char c : letters.substr(1)) {
    if (!is_vowel(c)) stripped += c;
  }
  std::string code;
  for (char c : stripped) {
    if (code.empty() || code.back() != c) code += c;
  }
  if (code.size() > 6) code = code.substr(0, 3) + code.substr(code.size() - 3);
  return code;
}

PhoneticCode encode(std::string_view name, PhoneticAlgorithm algorithm) {
  const std::string letters = phonetic_letters(name);
  if (letters.empty()) throw UnencodableName(name);
  switch (algorithm) {
    case PhoneticAlgorithm::soundex: return {soundex(letters), std::nullopt};
    case PhoneticAlgorithm::metaphone: return {metaphone(letters), std::nullopt};
    case PhoneticAlgorithm::double_metaphone: return double_metaphone(letters);
    case PhoneticAlgorithm::nysiis: return {nysiis(letters), std::nullopt};
    case PhoneticAlgorithm::mra: return {mra_codex(letters), std::nullopt};
  }
  throw std::invalid_argument("unknown phonetic algorithm");
}

std::span<const std::string> CodeIndex::bucket(std::string_view code) const {
  auto it = buckets_.find(code);
  if (it == buckets_.end()) return {};
  return it->second;
}

std::vector<std::string> CodeIndex::candidates(const PhoneticCode& code) const {
  std::vector<std::string> out;
  auto primary = bucket(code.primary);
  out.assign(primary.begin(), primary.end());
  if (code.secondary && *code.secondary != code.primary) {
    auto secondary = bucket(*code.secondary);
    std::vector<std::string> merged;
    merged.reserve(out.size() + secondary.size());
    std::set_union(out.begin(), out.end(), secondary.begin(), secondary.end(),
                   std::back_inserter(merged));
    out = std::move(merged);
  }
  return out;
}

CodeIndex build_code_index(std::span<const std::string> names,
                           PhoneticAlgorithm algorithm) {
  CodeIndex index;
  index.algorithm_ = algorithm;
  std::vector<std::string> sorted(names.begin(), names.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const std::string& name : sorted) {
    PhoneticCode code;
    try {
      code = encode(name, algorithm);
    } catch (const UnencodableName&) {
      ++index.skipped_;
      continue;
    }
    ++index.name_count_;
    index.buckets_[code.primary].push_back(name);
    if (code.secondary && *code.secondary != code.primary &&
        !code.secondary->empty()) {
      index.buckets_[*code.secondary].push_back(name);
    }
  }
  return index;
}

}  // namespace graft
