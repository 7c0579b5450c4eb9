#pragma once
// songs.hpp - songs over a finite alphabet, the psi_y derivation, standard
// symphonies, and playing songs to hypercubical collections

#include "hfl/ring.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hfl {

// Letters are 0-based internally and printed 1-based.
using Letters = std::uint32_t;

struct Item {
    bool harmony = false;
    Letters mask = 0;  // a note carries exactly one bit

    static Item note(int x) { return {false, Letters(1) << x}; }
    static Item chord(Letters m) { return {true, m}; }
    int letter() const;  // notes only

    auto operator<=>(const Item&) const = default;
};

using Song = std::vector<Item>;

Letters song_letters(const Song& s);
std::string song_str(const Song& s);

class SongSum {
public:
    SongSum() = default;
    explicit SongSum(Letters alphabet) : alphabet_(alphabet) {}
    SongSum(Letters alphabet, std::vector<Song> songs);

    Letters alphabet() const { return alphabet_; }
    const std::set<Song>& songs() const { return songs_; }
    std::size_t size() const { return songs_.size(); }
    bool zero() const { return songs_.empty(); }

    // F2 addition of a single song.
    void toggle(const Song& s);
    SongSum& operator+=(const SongSum& o);
    SongSum operator+(const SongSum& o) const;
    // Concatenation, extended bilinearly.
    SongSum operator*(const SongSum& o) const;
    bool operator==(const SongSum& o) const { return songs_ == o.songs_; }

    // Rename letter i to map[i].
    SongSum relabel(const std::vector<int>& map) const;
    std::string str() const;

private:
    Letters alphabet_ = 0;
    std::set<Song> songs_;
};

// Parse "(12{1,2}21) + ({})". Notes are single digits 1-9.
SongSum parse_songs(const std::string& text, Letters alphabet);

SongSum psi(const SongSum& s, int y);
// alpha over letters 0..n-1, memoized.
const SongSum& symphony(int n);
// alpha over an arbitrary ordered set of letters.
SongSum symphony(Letters alphabet);

// #notes == 2n + l - 1 and sum of harmony sizes == n + l - 1.
bool satisfies_h1(const Song& s, int n);

// A_Z for every Z within `letters` letters, square matrices of size dim.
struct Collection {
    TruncatedRing ring;
    int letters = 0;
    int dim = 0;
    std::vector<RMat> A;  // indexed by subset mask

    Collection() = default;
    Collection(TruncatedRing r, int letters, int dim);

    // Sum over Z' in Z of A_Z' A_{Z-Z'}; the first Z where it fails.
    std::optional<Letters> relation_defect() const;
    // The sub-collection on the letters of Z, renumbered in order.
    Collection restrict_to(Letters Z) const;
};

// Play a song sum in the given register (one positive entry per letter).
// With `start`, the product is applied to those columns only.
RMat play(const SongSum& s, const Collection& c, const std::vector<int>& reg, const RMat* start = nullptr);

// A^d_Z = play(alpha(Z)) on the restriction to Z; validated on both ends.
Collection compressed_collection(const Collection& c, const std::vector<int>& reg);

}  // namespace hfl
