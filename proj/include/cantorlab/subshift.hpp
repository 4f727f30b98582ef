#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cantorlab {

using Sym = int;

// Finite admissible word (a_0, a_1, ..., a_n), stored left to right.
using Word = std::vector<Sym>;

std::string word_to_string(const Word& w);

// One-sided tail (theta_{-m}, ..., theta_{-1}, theta_0): the recent past of
// a negative-infinite address, truncated on the left. last() is theta_0.
struct TailWord {
    std::vector<Sym> symbols;

    Sym last() const { return symbols.back(); }
    std::size_t size() const { return symbols.size(); }
    bool operator==(const TailWord& o) const { return symbols == o.symbols; }
};

// Topologically mixing subshift of finite type over {0, ..., k-1} given by
// allowed transition pairs. Construction validates that every letter has an
// incoming and an outgoing transition and that some power of the transition
// matrix is entrywise positive (checked up to the Wielandt bound).
class Subshift {
public:
    Subshift(int alphabet_size, const std::vector<std::pair<Sym, Sym>>& allowed_pairs);
    static Subshift full(int alphabet_size);

    int alphabet_size() const { return k_; }
    bool allowed(Sym a, Sym b) const { return adj_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 0; }
    const std::vector<Sym>& successors(Sym a) const { return succ_[static_cast<std::size_t>(a)]; }
    // Smallest m with every pair of letters joined by a path of length m.
    int mixing_power() const { return mixing_power_; }
    std::vector<std::pair<Sym, Sym>> allowed_pairs() const;

    bool admissible(const Word& w) const;
    bool cyclically_admissible(const Word& w) const;

    // All admissible words with `length` letters, lexicographic order.
    std::vector<Word> words(int length) const;
    std::vector<Word> words_from(Sym first, int length) const;

    // Shortest cyclically admissible word starting at `a`, ties broken
    // lexicographically. Exists for every letter by strong connectivity.
    Word omega_word(Sym a) const;

private:
    int k_;
    std::vector<std::vector<std::uint8_t>> adj_;
    std::vector<std::vector<Sym>> succ_;
    int mixing_power_ = 0;

    void validate();
};

} // namespace cantorlab
