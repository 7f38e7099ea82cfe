#pragma once

#include "shiftkit/cover.hpp"
#include "shiftkit/sft.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace shiftkit {

// A sliding block code with symmetric range R: a lookup table from
// (2R+1)-windows over the domain alphabet to single codomain symbols.  The
// table need not be total over all windows, only over the windows it is
// applied to; a missing window at application time is a hard error naming
// the window.
class BlockMap {
public:
    BlockMap(int range, Alphabet domain, Alphabet codomain,
             std::vector<std::pair<Word, Symbol>> entries);

    int range() const { return range_; }
    size_t window_len() const { return 2 * static_cast<size_t>(range_) + 1; }
    const Alphabet& domain() const { return domain_; }
    const Alphabet& codomain() const { return codomain_; }
    const std::map<Word, Symbol>& table() const { return table_; }

    std::optional<Symbol> lookup(const Word& window) const;
    // Throws naming the first window of `windows` absent from the table.
    void check_total(const std::vector<Word>& windows) const;

private:
    int range_ = 0;
    Alphabet domain_, codomain_;
    std::map<Word, Symbol> table_;
};

// Output letter j is the table value at w[j..j+2R]; |result| = |w| - 2R.
Word apply_word(const BlockMap& m, const Word& w);

// Composite code of range R_outer + R_inner, with outer applied second.
// Table entries are derived for each listed window; a window whose
// derivation hits a missing entry is an error.
BlockMap compose(const BlockMap& outer, const BlockMap& inner,
                 const std::vector<Word>& windows);
// Same, deriving over every window the two tables support; enumerates the
// full domain slice, so the window length must stay small.
BlockMap compose(const BlockMap& outer, const BlockMap& inner);

// Apply cyclically to the period word; the image's minimal period divides
// the input's, and the representative is canonicalized.
PeriodicOrbit apply_orbit(const BlockMap& m, const PeriodicOrbit& orbit);

// {apply_word(m, w) : w in language_slice(spec, L + 2R)}, sorted, deduped.
std::vector<Word> image_slice(const BlockMap& m, const SftSpec& spec, int L,
                              size_t cap = 10'000'000);

struct AutomorphismVerdict {
    bool pass = true;
    std::string failure;  // empty when pass
    Word witness;         // admissible word exhibiting the failure
};

// Checks that fwd maps the oracle language into itself and that inv o fwd
// trims to the identity, on all admissible words with interior length up to
// depth.  Failures are reported in the verdict, not thrown.
AutomorphismVerdict verify_automorphism_pair(const BlockMap& fwd, const BlockMap& inv,
                                             const SubshiftOracle& o, int depth,
                                             const ScanOptions& opts = {});

// Text format:
//   range: 1
//   alphabet: 01
//   codomain: 01      (optional, defaults to alphabet)
//   000 -> 0
//   001 -> 1
BlockMap parse_block_map(std::string_view text);
std::string serialize_block_map(const BlockMap& m);

}  // namespace shiftkit
