#pragma once

#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace polymod {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double kDefaultTolSum = 1e-12;

/// A weight vector: n positive angles summing to 2*pi, every pair summing to
/// less than pi. Only constructible through validate_weight(), which also
/// rescales the angles so the sum is 2*pi to the last bit we can manage.
class WeightVector {
public:
    int n() const noexcept { return static_cast<int>(theta_.size()); }

    /// Angle of the 1-based mark `i`.
    double of(int mark) const { return theta_.at(static_cast<std::size_t>(mark - 1)); }

    std::span<const double> values() const noexcept { return theta_; }

    bool operator==(const WeightVector&) const = default;

private:
    friend WeightVector validate_weight(std::span<const double>, double);
    explicit WeightVector(std::vector<double> theta) : theta_(std::move(theta)) {}

    std::vector<double> theta_;
};

/// Validates a raw angle sequence. Throws Error with code BadInput (n < 4 or
/// non-finite), NonPositive, SumMismatch or PairSumTooLarge (indices = the
/// first offending pair, 1-based, in lexicographic order).
WeightVector validate_weight(std::span<const double> theta, double tol_sum = kDefaultTolSum);

/// The equal weight (2*pi/n, ..., 2*pi/n).
WeightVector equal_weight(int n);

/// A marked cyclic word: a permutation of 1..n read in counterclockwise
/// order. Two labels name the same component iff their canonical forms agree;
/// the reading order itself matters for the geometry (it fixes which facets
/// sit on the coordinate axes), so it is kept as given.
class Label {
public:
    Label() = default;

    /// Keeps the reading order. Throws NotAPermutation.
    static Label ordered(std::vector<int> word);

    /// Parses "12345" (single digits, n <= 9) or "1,2,3,4,5".
    static Label parse(const std::string& text);

    int n() const noexcept { return static_cast<int>(word_.size()); }
    const std::vector<int>& word() const noexcept { return word_; }

    /// Mark at 0-based position j, cyclically.
    int at(int j) const;

    Label canonical() const;
    bool is_canonical() const { return canonical().word_ == word_; }

    std::string str() const;

    bool operator==(const Label&) const = default;
    auto operator<=>(const Label&) const = default;

private:
    explicit Label(std::vector<int> word) : word_(std::move(word)) {}
    std::vector<int> word_;
};

/// Rotate 1 to the front, then take the lexicographically smaller of that
/// word and the equally rotated reversal. Throws NotAPermutation.
Label canonical_label(std::span<const int> word);

/// All canonical labels for 4 <= n <= 8, sorted; (n-1)!/2 of them.
std::vector<Label> enumerate_labels(int n);

/// A degenerate configuration: a cyclic word of symbols where each symbol is
/// a set of collided marks (size 1, 2 or 3), canonical up to rotation and
/// reversal. Two polyhedron faces are glued iff their keys compare equal.
class DegenerateConfig {
public:
    using Symbol = std::vector<int>;

    /// Canonicalizes an arbitrary cyclic word of symbols.
    static DegenerateConfig from_symbols(std::vector<Symbol> symbols);

    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

    /// Number of marks absorbed by collisions (1 for a face, 2 for an edge...).
    int codimension() const;

    /// e.g. "<1 (23) 4 5>".
    std::string str() const;

    bool operator==(const DegenerateConfig&) const = default;
    auto operator<=>(const DegenerateConfig&) const = default;

private:
    std::vector<Symbol> symbols_;
};

/// Key of face k (0-based) of `label`: the marks at positions k and k+1
/// (cyclic) collide. This is the facet {x_{i_k} = 0}.
DegenerateConfig face_config(const Label& label, int k);

/// Key of the intersection of several facets (0-based positions): every
/// facet j merges the marks at positions j and j+1, transitively.
DegenerateConfig facets_config(const Label& label, std::span<const int> facets);

inline constexpr long kRejectionBudget = 1'000'000;

/// Deterministic pseudo-random weight vector: uniform points on the simplex
/// scaled to 2*pi, rejected until they land in the weight domain.
WeightVector sample_weight(int n, std::uint64_t seed);

/// Same, drawing from a caller-owned engine.
WeightVector sample_weight(int n, std::mt19937_64& engine);

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double uniform01(std::mt19937_64& engine);

/// Mixes (seed, index) into an independent 64-bit stream seed.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace polymod
