#include "nr2/stemmer.hpp"

#include <cstring>

namespace nr2 {

namespace {

// Works on a mutable buffer; `end_` tracks the current word length and
// `stem_` the stem length left by the most recent suffix match.
class Porter {
public:
    explicit Porter(std::string word) : w_(std::move(word)), end_(w_.size()) {}

    std::string run() {
        if (end_ <= 2) return w_;
        step1a();
        step1b();
        step1c();
        step2();
        step3();
        step4();
        step5();
        w_.resize(end_);
        return w_;
    }

private:
    std::string w_;
    std::size_t end_;
    std::size_t stem_ = 0;

    bool consonant(std::size_t i) const {
        char c = w_[i];
        if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
        if (c == 'y') return i == 0 ? true : !consonant(i - 1);
        return true;
    }

    // Number of vowel-consonant sequences in w_[0, len).
    int measure(std::size_t len) const {
        int m = 0;
        bool seen_vowel = false;
        for (std::size_t i = 0; i < len; ++i) {
            if (!consonant(i)) {
                seen_vowel = true;
            } else {
                if (seen_vowel) ++m;
                seen_vowel = false;
            }
        }
        return m;
    }

    bool has_vowel(std::size_t len) const {
        for (std::size_t i = 0; i < len; ++i)
            if (!consonant(i)) return true;
        return false;
    }

    bool double_consonant(std::size_t len) const {
        return len >= 2 && w_[len - 1] == w_[len - 2] && consonant(len - 1);
    }

    // consonant-vowel-consonant ending where the final consonant is not w, x, y
    bool cvc(std::size_t len) const {
        if (len < 3) return false;
        if (!consonant(len - 3) || consonant(len - 2) || !consonant(len - 1)) return false;
        char c = w_[len - 1];
        return c != 'w' && c != 'x' && c != 'y';
    }

    bool ends(const char* suffix) {
        std::size_t n = std::strlen(suffix);
        if (n > end_) return false;
        if (w_.compare(end_ - n, n, suffix) != 0) return false;
        stem_ = end_ - n;
        return true;
    }

    void set_to(const char* repl) {
        std::size_t n = std::strlen(repl);
        w_.replace(stem_, n, repl);
        end_ = stem_ + n;
    }

    // Replace the matched suffix when the stem has measure > threshold.
    bool replace_if(const char* suffix, const char* repl, int threshold) {
        if (!ends(suffix)) return false;
        if (measure(stem_) > threshold) set_to(repl);
        return true;
    }

    void step1a() {
        if (ends("sses")) set_to("ss");
        else if (ends("ies")) set_to("i");
        else if (ends("ss")) { /* unchanged */ }
        else if (ends("s")) set_to("");
    }

    void step1b() {
        if (ends("eed")) {
            if (measure(stem_) > 0) set_to("ee");
            return;
        }
        bool stripped = false;
        if (ends("ed") && has_vowel(stem_)) {
            end_ = stem_;
            stripped = true;
        } else if (ends("ing") && has_vowel(stem_)) {
            end_ = stem_;
            stripped = true;
        }
        if (!stripped) return;
        if (ends("at")) set_to("ate");
        else if (ends("bl")) set_to("ble");
        else if (ends("iz")) set_to("ize");
        else if (double_consonant(end_)) {
            char c = w_[end_ - 1];
            if (c != 'l' && c != 's' && c != 'z') --end_;
        } else if (measure(end_) == 1 && cvc(end_)) {
            stem_ = end_;
            set_to("e");
        }
    }

    void step1c() {
        if (ends("y") && has_vowel(stem_)) w_[end_ - 1] = 'i';
    }

    void step2() {
        if (replace_if("ational", "ate", 0)) return;
        if (replace_if("tional", "tion", 0)) return;
        if (replace_if("enci", "ence", 0)) return;
        if (replace_if("anci", "ance", 0)) return;
        if (replace_if("izer", "ize", 0)) return;
        if (replace_if("abli", "able", 0)) return;
        if (replace_if("alli", "al", 0)) return;
        if (replace_if("entli", "ent", 0)) return;
        if (replace_if("eli", "e", 0)) return;
        if (replace_if("ousli", "ous", 0)) return;
        if (replace_if("ization", "ize", 0)) return;
        if (replace_if("ation", "ate", 0)) return;
        if (replace_if("ator", "ate", 0)) return;
        if (replace_if("alism", "al", 0)) return;
        if (replace_if("iveness", "ive", 0)) return;
        if (replace_if("fulness", "ful", 0)) return;
        if (replace_if("ousness", "ous", 0)) return;
        if (replace_if("aliti", "al", 0)) return;
        if (replace_if("iviti", "ive", 0)) return;
        if (replace_if("biliti", "ble", 0)) return;
    }

    void step3() {
        if (replace_if("icate", "ic", 0)) return;
        if (replace_if("ative", "", 0)) return;
        if (replace_if("alize", "al", 0)) return;
        if (replace_if("iciti", "ic", 0)) return;
        if (replace_if("ical", "ic", 0)) return;
        if (replace_if("ful", "", 0)) return;
        if (replace_if("ness", "", 0)) return;
    }

    void step4() {
        if (replace_if("al", "", 1)) return;
        if (replace_if("ance", "", 1)) return;
        if (replace_if("ence", "", 1)) return;
        if (replace_if("er", "", 1)) return;
        if (replace_if("ic", "", 1)) return;
        if (replace_if("able", "", 1)) return;
        if (replace_if("ible", "", 1)) return;
        if (replace_if("ant", "", 1)) return;
        if (replace_if("ement", "", 1)) return;
        if (replace_if("ment", "", 1)) return;
        if (replace_if("ent", "", 1)) return;
        if (ends("ion")) {
            if (measure(stem_) > 1 && stem_ >= 1 &&
                (w_[stem_ - 1] == 's' || w_[stem_ - 1] == 't'))
                end_ = stem_;
            return;
        }
        if (replace_if("ou", "", 1)) return;
        if (replace_if("ism", "", 1)) return;
        if (replace_if("ate", "", 1)) return;
        if (replace_if("iti", "", 1)) return;
        if (replace_if("ous", "", 1)) return;
        if (replace_if("ive", "", 1)) return;
        if (replace_if("ize", "", 1)) return;
    }

    void step5() {
        if (end_ >= 1 && w_[end_ - 1] == 'e') {
            int m = measure(end_ - 1);
            if (m > 1 || (m == 1 && !cvc(end_ - 1))) --end_;
        }
        if (measure(end_) > 1 && double_consonant(end_) && w_[end_ - 1] == 'l')
            --end_;
    }
};

} // namespace

std::string porter_stem(const std::string& word) {
    for (char c : word)
        if (c < 'a' || c > 'z') return word;
    return Porter(word).run();
}

} // namespace nr2
