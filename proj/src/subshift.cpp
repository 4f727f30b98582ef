#include "cantorlab/subshift.hpp"

#include <algorithm>
#include <sstream>

#include "cantorlab/errors.hpp"

namespace cantorlab {

std::string word_to_string(const Word& w) {
    std::ostringstream out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out << '.';
        out << w[i];
    }
    return out.str();
}

Subshift::Subshift(int alphabet_size, const std::vector<std::pair<Sym, Sym>>& allowed_pairs)
    : k_(alphabet_size) {
    if (k_ < 1) throw InvalidSystem("alphabet must have at least one letter");
    adj_.assign(static_cast<std::size_t>(k_), std::vector<std::uint8_t>(static_cast<std::size_t>(k_), 0));
    for (auto [a, b] : allowed_pairs) {
        if (a < 0 || a >= k_ || b < 0 || b >= k_) {
            throw InvalidSystem("transition pair uses a letter outside the alphabet");
        }
        adj_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
    }
    validate();
    succ_.assign(static_cast<std::size_t>(k_), {});
    for (Sym a = 0; a < k_; ++a) {
        for (Sym b = 0; b < k_; ++b) {
            if (allowed(a, b)) succ_[static_cast<std::size_t>(a)].push_back(b);
        }
    }
}

Subshift Subshift::full(int alphabet_size) {
    std::vector<std::pair<Sym, Sym>> pairs;
    for (Sym a = 0; a < alphabet_size; ++a) {
        for (Sym b = 0; b < alphabet_size; ++b) pairs.emplace_back(a, b);
    }
    return Subshift(alphabet_size, pairs);
}

void Subshift::validate() {
    const auto n = static_cast<std::size_t>(k_);
    for (std::size_t a = 0; a < n; ++a) {
        bool out = false, in = false;
        for (std::size_t b = 0; b < n; ++b) {
            out = out || adj_[a][b];
            in = in || adj_[b][a];
        }
        if (!out || !in) {
            throw UnusedLetter("letter " + std::to_string(a) +
                               " has no " + (out ? "incoming" : "outgoing") + " transition");
        }
    }

    // Primitivity: some power of the transition matrix is entrywise positive.
    // The Wielandt bound (k-1)^2 + 1 caps how far we need to look.
    const int bound = (k_ - 1) * (k_ - 1) + 1;
    std::vector<std::vector<std::uint8_t>> pw = adj_;
    for (int m = 1; m <= bound; ++m) {
        bool all = true;
        for (std::size_t a = 0; a < n && all; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (!pw[a][b]) {
                    all = false;
                    break;
                }
            }
        }
        if (all) {
            mixing_power_ = m;
            return;
        }
        std::vector<std::vector<std::uint8_t>> nxt(n, std::vector<std::uint8_t>(n, 0));
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t c = 0; c < n; ++c) {
                if (!pw[a][c]) continue;
                for (std::size_t b = 0; b < n; ++b) {
                    if (adj_[c][b]) nxt[a][b] = 1;
                }
            }
        }
        pw = std::move(nxt);
    }
    throw NotMixing("transition matrix has no positive power up to the Wielandt bound");
}

std::vector<std::pair<Sym, Sym>> Subshift::allowed_pairs() const {
    std::vector<std::pair<Sym, Sym>> pairs;
    for (Sym a = 0; a < k_; ++a) {
        for (Sym b : successors(a)) pairs.emplace_back(a, b);
    }
    return pairs;
}

bool Subshift::admissible(const Word& w) const {
    if (w.empty()) return false;
    for (Sym s : w) {
        if (s < 0 || s >= k_) return false;
    }
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (!allowed(w[i], w[i + 1])) return false;
    }
    return true;
}

bool Subshift::cyclically_admissible(const Word& w) const {
    return admissible(w) && allowed(w.back(), w.front());
}

std::vector<Word> Subshift::words_from(Sym first, int length) const {
    if (length < 1) throw InvalidSystem("word length must be at least 1");
    if (first < 0 || first >= k_) throw InvalidSystem("start letter outside alphabet");
    std::vector<Word> out;
    Word cur{first};
    // Iterative lex DFS; successors are already sorted.
    struct Frame {
        const std::vector<Sym>* succ;
        std::size_t idx;
    };
    if (length == 1) {
        out.push_back(cur);
        return out;
    }
    std::vector<Frame> stack{{&successors(first), 0}};
    while (!stack.empty()) {
        auto& fr = stack.back();
        if (fr.idx >= fr.succ->size()) {
            stack.pop_back();
            cur.pop_back();
            continue;
        }
        const Sym nxt = (*fr.succ)[fr.idx++];
        cur.push_back(nxt);
        if (static_cast<int>(cur.size()) == length) {
            out.push_back(cur);
            cur.pop_back();
        } else {
            stack.push_back({&successors(nxt), 0});
        }
    }
    return out;
}

std::vector<Word> Subshift::words(int length) const {
    std::vector<Word> out;
    for (Sym a = 0; a < k_; ++a) {
        auto part = words_from(a, length);
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return out;
}

Word Subshift::omega_word(Sym a) const {
    // A strongly connected digraph on k vertices has a cycle through every
    // vertex of length at most k.
    for (int len = 1; len <= k_; ++len) {
        for (const Word& w : words_from(a, len)) {
            if (allowed(w.back(), w.front())) return w;
        }
    }
    throw NotCyclicallyAdmissible("no cycle through letter " + std::to_string(a));
}

} // namespace cantorlab
