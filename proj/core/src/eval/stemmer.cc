// Copyright 2026 The Coretag Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coretag/eval/stemmer.h"

#include <algorithm>

namespace coretag {
namespace {

class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : b_(word) {}

  std::string Run() {
    if (b_.size() <= 2) return b_;
    Step1ab();
    if (b_.size() > 1) {
      Step1c();
      Step2();
      Step3();
      Step4();
      Step5();
    }
    return b_;
  }

 private:
  bool IsConsonant(std::size_t i) const {
    switch (b_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !IsConsonant(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b_[0, j_].
  int Measure() const {
    int n = 0;
    std::size_t i = 0;
    while (true) {
      if (i >= j_) return n;
      if (!IsConsonant(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i >= j_) return n;
        if (IsConsonant(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i >= j_) return n;
        if (!IsConsonant(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool VowelInStem() const {
    for (std::size_t i = 0; i < j_; ++i) {
      if (!IsConsonant(i)) return true;
    }
    return false;
  }

  bool DoubleConsonant(std::size_t end) const {
    if (end < 2) return false;
    const std::size_t i = end - 1;
    return b_[i] == b_[i - 1] && IsConsonant(i);
  }

  // cvc at the end of b_[0, end) where the last c is not w, x or y.
  bool Cvc(std::size_t end) const {
    if (end < 3) return false;
    const std::size_t i = end - 1;
    if (!IsConsonant(i) || IsConsonant(i - 1) || !IsConsonant(i - 2)) return false;
    return b_[i] != 'w' && b_[i] != 'x' && b_[i] != 'y';
  }

  // On a match sets j_ to the stem length.
  bool Ends(std::string_view s) {
    if (s.size() > b_.size()) return false;
    if (b_.compare(b_.size() - s.size(), s.size(), s) != 0) return false;
    j_ = b_.size() - s.size();
    return true;
  }

  void SetTo(std::string_view s) {
    b_.resize(j_);
    b_ += s;
  }

  void ReplaceIfMeasured(std::string_view s) {
    if (Measure() > 0) SetTo(s);
  }

  void Step1ab() {
    if (b_.back() == 's') {
      if (Ends("sses")) {
        b_.resize(b_.size() - 2);
      } else if (Ends("ies")) {
        SetTo("i");
      } else if (b_.size() >= 2 && b_[b_.size() - 2] != 's') {
        b_.pop_back();
      }
    }
    if (Ends("eed")) {
      if (Measure() > 0) b_.pop_back();
    } else if ((Ends("ed") || Ends("ing")) && VowelInStem()) {
      b_.resize(j_);
      j_ = b_.size();
      if (Ends("at")) {
        SetTo("ate");
      } else if (Ends("bl")) {
        SetTo("ble");
      } else if (Ends("iz")) {
        SetTo("ize");
      } else if (DoubleConsonant(b_.size())) {
        const char c = b_.back();
        if (c != 'l' && c != 's' && c != 'z') b_.pop_back();
      } else {
        j_ = b_.size();
        if (Measure() == 1 && Cvc(b_.size())) b_ += 'e';
      }
    }
  }

  void Step1c() {
    if (Ends("y") && VowelInStem()) b_.back() = 'i';
  }

  void Step2() {
    if (b_.size() < 2) return;
    switch (b_[b_.size() - 2]) {
      case 'a':
        if (Ends("ational")) { ReplaceIfMeasured("ate"); break; }
        if (Ends("tional")) { ReplaceIfMeasured("tion"); break; }
        break;
      case 'c':
        if (Ends("enci")) { ReplaceIfMeasured("ence"); break; }
        if (Ends("anci")) { ReplaceIfMeasured("ance"); break; }
        break;
      case 'e':
        if (Ends("izer")) { ReplaceIfMeasured("ize"); break; }
        break;
      case 'l':
        if (Ends("bli")) { ReplaceIfMeasured("ble"); break; }
        if (Ends("alli")) { ReplaceIfMeasured("al"); break; }
        if (Ends("entli")) { ReplaceIfMeasured("ent"); break; }
        if (Ends("eli")) { ReplaceIfMeasured("e"); break; }
        if (Ends("ousli")) { ReplaceIfMeasured("ous"); break; }
        break;
      case 'o':
        if (Ends("ization")) { ReplaceIfMeasured("ize"); break; }
        if (Ends("ation")) { ReplaceIfMeasured("ate"); break; }
        if (Ends("ator")) { ReplaceIfMeasured("ate"); break; }
        break;
      case 's':
        if (Ends("alism")) { ReplaceIfMeasured("al"); break; }
        if (Ends("iveness")) { ReplaceIfMeasured("ive"); break; }
        if (Ends("fulness")) { ReplaceIfMeasured("ful"); break; }
        if (Ends("ousness")) { ReplaceIfMeasured("ous"); break; }
        break;
      case 't':
        if (Ends("aliti")) { ReplaceIfMeasured("al"); break; }
        if (Ends("iviti")) { ReplaceIfMeasured("ive"); break; }
        if (Ends("biliti")) { ReplaceIfMeasured("ble"); break; }
        break;
      case 'g':
        if (Ends("logi")) { ReplaceIfMeasured("log"); break; }
        break;
      default:
        break;
    }
  }

  void Step3() {
    switch (b_.back()) {
      case 'e':
        if (Ends("icate")) { ReplaceIfMeasured("ic"); break; }
        if (Ends("ative")) { ReplaceIfMeasured(""); break; }
        if (Ends("alize")) { ReplaceIfMeasured("al"); break; }
        break;
      case 'i':
        if (Ends("iciti")) { ReplaceIfMeasured("ic"); break; }
        break;
      case 'l':
        if (Ends("ical")) { ReplaceIfMeasured("ic"); break; }
        if (Ends("ful")) { ReplaceIfMeasured(""); break; }
        break;
      case 's':
        if (Ends("ness")) { ReplaceIfMeasured(""); break; }
        break;
      default:
        break;
    }
  }

  void Step4() {
    if (b_.size() < 2) return;
    bool matched = false;
    switch (b_[b_.size() - 2]) {
      case 'a':
        matched = Ends("al");
        break;
      case 'c':
        matched = Ends("ance") || Ends("ence");
        break;
      case 'e':
        matched = Ends("er");
        break;
      case 'i':
        matched = Ends("ic");
        break;
      case 'l':
        matched = Ends("able") || Ends("ible");
        break;
      case 'n':
        matched = Ends("ant") || Ends("ement") || Ends("ment") || Ends("ent");
        break;
      case 'o':
        if (Ends("ion")) {
          matched = j_ > 0 && (b_[j_ - 1] == 's' || b_[j_ - 1] == 't');
        } else {
          matched = Ends("ou");
        }
        break;
      case 's':
        matched = Ends("ism");
        break;
      case 't':
        matched = Ends("ate") || Ends("iti");
        break;
      case 'u':
        matched = Ends("ous");
        break;
      case 'v':
        matched = Ends("ive");
        break;
      case 'z':
        matched = Ends("ize");
        break;
      default:
        break;
    }
    if (matched && Measure() > 1) b_.resize(j_);
  }

  void Step5() {
    j_ = b_.size();
    if (b_.back() == 'e') {
      const int m = Measure();
      if (m > 1 || (m == 1 && !Cvc(b_.size() - 1))) b_.pop_back();
    }
    j_ = b_.size();
    if (b_.back() == 'l' && DoubleConsonant(b_.size()) && Measure() > 1) {
      b_.pop_back();
    }
  }

  std::string b_;
  std::size_t j_ = 0;
};

}  // namespace

std::string PorterStem(std::string_view word) {
  if (word.size() <= 2) return std::string(word);
  if (!std::all_of(word.begin(), word.end(),
                   [](char c) { return c >= 'a' && c <= 'z'; })) {
    return std::string(word);
  }
  return Stemmer(word).Run();
}

std::string StemPhrase(std::string_view phrase) {
  std::string out;
  std::size_t pos = 0;
  while (pos <= phrase.size()) {
    std::size_t next = phrase.find(' ', pos);
    if (next == std::string_view::npos) next = phrase.size();
    if (next > pos) {
      if (!out.empty()) out += ' ';
      out += PorterStem(phrase.substr(pos, next - pos));
    }
    pos = next + 1;
  }
  return out;
}

}  // namespace coretag
