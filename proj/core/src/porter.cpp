#include <cctype>
#include <string>

#include "juris/textprep.hpp"

// Porter stemming algorithm, following the canonical implementation
// (including its departures from the 1980 description: bli->ble, logi->log).

namespace juris::text {

namespace {

class Stemmer {
public:
    std::string run(std::string word) {
        b_ = std::move(word);
        k_ = static_cast<int>(b_.size()) - 1;
        if (k_ <= 1) return b_;  // two-letter words are left alone
        step1ab();
        step1c();
        step2();
        step3();
        step4();
        step5();
        b_.resize(static_cast<std::size_t>(k_) + 1);
        return b_;
    }

private:
    std::string b_;
    int k_ = 0;
    int j_ = 0;

    bool cons(int i) const {
        switch (b_[i]) {
            case 'a': case 'e': case 'i': case 'o': case 'u':
                return false;
            case 'y':
                return i == 0 ? true : !cons(i - 1);
            default:
                return true;
        }
    }

    // Number of VC sequences in [0, j_].
    int m() const {
        int n = 0;
        int i = 0;
        while (true) {
            if (i > j_) return n;
            if (!cons(i)) break;
            ++i;
        }
        ++i;
        while (true) {
            while (true) {
                if (i > j_) return n;
                if (cons(i)) break;
                ++i;
            }
            ++i;
            ++n;
            while (true) {
                if (i > j_) return n;
                if (!cons(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const {
        for (int i = 0; i <= j_; ++i) {
            if (!cons(i)) return true;
        }
        return false;
    }

    bool double_cons(int j) const {
        if (j < 1) return false;
        if (b_[j] != b_[j - 1]) return false;
        return cons(j);
    }

    // consonant-vowel-consonant ending where the final consonant is not w/x/y.
    bool cvc(int i) const {
        if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
        char ch = b_[i];
        return ch != 'w' && ch != 'x' && ch != 'y';
    }

    bool ends(const char* s) {
        const int length = static_cast<int>(std::char_traits<char>::length(s));
        if (length > k_ + 1) return false;
        if (b_.compare(static_cast<std::size_t>(k_ - length + 1), static_cast<std::size_t>(length), s) != 0) {
            return false;
        }
        j_ = k_ - length;
        return true;
    }

    void set_to(const char* s) {
        const int length = static_cast<int>(std::char_traits<char>::length(s));
        b_.replace(static_cast<std::size_t>(j_ + 1), b_.size() - static_cast<std::size_t>(j_ + 1), s);
        k_ = j_ + length;
    }

    void replace_if_m(const char* s) {
        if (m() > 0) set_to(s);
    }

    void step1ab() {
        if (b_[k_] == 's') {
            if (ends("sses")) k_ -= 2;
            else if (ends("ies")) set_to("i");
            else if (b_[k_ - 1] != 's') --k_;
        }
        if (ends("eed")) {
            if (m() > 0) --k_;
        } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
            k_ = j_;
            if (ends("at")) set_to("ate");
            else if (ends("bl")) set_to("ble");
            else if (ends("iz")) set_to("ize");
            else if (double_cons(k_)) {
                --k_;
                char ch = b_[k_];
                if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
            } else if (m() == 1 && cvc(k_)) {
                set_to("e");
            }
        }
    }

    void step1c() {
        if (ends("y") && vowel_in_stem()) b_[k_] = 'i';
    }

    void step2() {
        switch (b_[k_ - 1]) {
            case 'a':
                if (ends("ational")) replace_if_m("ate");
                else if (ends("tional")) replace_if_m("tion");
                break;
            case 'c':
                if (ends("enci")) replace_if_m("ence");
                else if (ends("anci")) replace_if_m("ance");
                break;
            case 'e':
                if (ends("izer")) replace_if_m("ize");
                break;
            case 'l':
                if (ends("bli")) replace_if_m("ble");
                else if (ends("alli")) replace_if_m("al");
                else if (ends("entli")) replace_if_m("ent");
                else if (ends("eli")) replace_if_m("e");
                else if (ends("ousli")) replace_if_m("ous");
                break;
            case 'o':
                if (ends("ization")) replace_if_m("ize");
                else if (ends("ation")) replace_if_m("ate");
                else if (ends("ator")) replace_if_m("ate");
                break;
            case 's':
                if (ends("alism")) replace_if_m("al");
                else if (ends("iveness")) replace_if_m("ive");
                else if (ends("fulness")) replace_if_m("ful");
                else if (ends("ousness")) replace_if_m("ous");
                break;
            case 't':
                if (ends("aliti")) replace_if_m("al");
                else if (ends("iviti")) replace_if_m("ive");
                else if (ends("biliti")) replace_if_m("ble");
                break;
            case 'g':
                if (ends("logi")) replace_if_m("log");
                break;
            default:
                break;
        }
    }

    void step3() {
        switch (b_[k_]) {
            case 'e':
                if (ends("icate")) replace_if_m("ic");
                else if (ends("ative")) replace_if_m("");
                else if (ends("alize")) replace_if_m("al");
                break;
            case 'i':
                if (ends("iciti")) replace_if_m("ic");
                break;
            case 'l':
                if (ends("ical")) replace_if_m("ic");
                else if (ends("ful")) replace_if_m("");
                break;
            case 's':
                if (ends("ness")) replace_if_m("");
                break;
            default:
                break;
        }
    }

    void step4() {
        switch (b_[k_ - 1]) {
            case 'a':
                if (ends("al")) break;
                return;
            case 'c':
                if (ends("ance") || ends("ence")) break;
                return;
            case 'e':
                if (ends("er")) break;
                return;
            case 'i':
                if (ends("ic")) break;
                return;
            case 'l':
                if (ends("able") || ends("ible")) break;
                return;
            case 'n':
                if (ends("ant") || ends("ement") || ends("ment") || ends("ent")) break;
                return;
            case 'o':
                if (ends("ion") && j_ >= 0 && (b_[j_] == 's' || b_[j_] == 't')) break;
                if (ends("ou")) break;
                return;
            case 's':
                if (ends("ism")) break;
                return;
            case 't':
                if (ends("ate") || ends("iti")) break;
                return;
            case 'u':
                if (ends("ous")) break;
                return;
            case 'v':
                if (ends("ive")) break;
                return;
            case 'z':
                if (ends("ize")) break;
                return;
            default:
                return;
        }
        if (m() > 1) k_ = j_;
    }

    void step5() {
        j_ = k_;
        if (b_[k_] == 'e') {
            int a = m();
            if (a > 1 || (a == 1 && !cvc(k_ - 1))) --k_;
        }
        if (b_[k_] == 'l' && double_cons(k_) && m() > 1) --k_;
    }
};

}  // namespace

std::string porter_stem(const std::string& word) {
    std::string lowered;
    lowered.reserve(word.size());
    bool all_alpha = true;
    for (unsigned char c : word) {
        if (!std::isalpha(c)) all_alpha = false;
        lowered.push_back(static_cast<char>(std::tolower(c)));
    }
    if (!all_alpha || lowered.empty()) return lowered;
    Stemmer stemmer;
    return stemmer.run(std::move(lowered));
}

}  // namespace juris::text
