#include "polymod/combinatorics.hpp"

#include <algorithm>
#include <initializer_list>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "polymod/error.hpp"

namespace polymod {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::BadInput: return "BadInput";
        case ErrorCode::SumMismatch: return "SumMismatch";
        case ErrorCode::NonPositive: return "NonPositive";
        case ErrorCode::PairSumTooLarge: return "PairSumTooLarge";
        case ErrorCode::NotAPermutation: return "NotAPermutation";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
        case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
        case ErrorCode::FootOutsideBase: return "FootOutsideBase";
        case ErrorCode::SignatureMismatch: return "SignatureMismatch";
        case ErrorCode::NotTimelike: return "NotTimelike";
        case ErrorCode::WrongSheet: return "WrongSheet";
        case ErrorCode::NoIntersection: return "NoIntersection";
        case ErrorCode::FacetsDisjoint: return "FacetsDisjoint";
        case ErrorCode::RouteDisagreement: return "RouteDisagreement";
        case ErrorCode::NegativeRatio: return "NegativeRatio";
        case ErrorCode::SlideCollision: return "SlideCollision";
        case ErrorCode::NotInTheta: return "NotInTheta";
        case ErrorCode::InconsistentPair: return "InconsistentPair";
        case ErrorCode::PairingFailure: return "PairingFailure";
        case ErrorCode::NotEqualWeight: return "NotEqualWeight";
        case ErrorCode::UnknownFormat: return "UnknownFormat";
    }
    return "Unknown";
}

WeightVector validate_weight(std::span<const double> theta, double tol_sum) {
    const auto n = theta.size();
    if (n < 4) {
        throw Error(ErrorCode::BadInput, "need at least 4 angles, got " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(theta[i])) {
            throw Error(ErrorCode::BadInput, "angle " + std::to_string(i + 1) + " is not finite",
                        {static_cast<int>(i + 1)});
        }
        if (theta[i] <= 0.0) {
            throw Error(ErrorCode::NonPositive, "angle " + std::to_string(i + 1) + " is not positive",
                        {static_cast<int>(i + 1)});
        }
    }
    const double sum = std::accumulate(theta.begin(), theta.end(), 0.0);
    if (std::abs(sum - kTwoPi) > tol_sum) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "angles sum to " << sum << ", expected 2*pi";
        throw Error(ErrorCode::SumMismatch, msg.str());
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (theta[i] + theta[j] >= kPi) {
                throw Error(ErrorCode::PairSumTooLarge,
                            "theta_" + std::to_string(i + 1) + " + theta_" + std::to_string(j + 1) +
                                " >= pi",
                            {static_cast<int>(i + 1), static_cast<int>(j + 1)});
            }
        }
    }
    std::vector<double> scaled(theta.begin(), theta.end());
    const double k = kTwoPi / sum;
    for (auto& t : scaled) t *= k;
    return WeightVector(std::move(scaled));
}

WeightVector equal_weight(int n) {
    std::vector<double> theta(static_cast<std::size_t>(n), kTwoPi / n);
    return validate_weight(theta);
}

namespace {

void require_permutation(std::span<const int> word) {
    const auto n = static_cast<int>(word.size());
    if (n < 3) throw Error(ErrorCode::NotAPermutation, "word too short");
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int m : word) {
        if (m < 1 || m > n || seen[static_cast<std::size_t>(m)]) {
            throw Error(ErrorCode::NotAPermutation, "not a permutation of 1.." + std::to_string(n));
        }
        seen[static_cast<std::size_t>(m)] = true;
    }
}

// Smallest word among all rotations of `w` and of its reversal.
template <typename T>
std::vector<T> min_dihedral(const std::vector<T>& w) {
    std::vector<T> best = w;
    std::vector<T> rev(w.rbegin(), w.rend());
    for (const std::vector<T>* base : std::initializer_list<const std::vector<T>*>{&w, &rev}) {
        std::vector<T> r = *base;
        for (std::size_t s = 0; s < r.size(); ++s) {
            if (r < best) best = r;
            std::rotate(r.begin(), r.begin() + 1, r.end());
        }
    }
    return best;
}

}  // namespace

Label Label::ordered(std::vector<int> word) {
    require_permutation(word);
    return Label(std::move(word));
}

Label Label::parse(const std::string& text) {
    std::vector<int> word;
    if (text.find(',') != std::string::npos) {
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                std::size_t used = 0;
                word.push_back(std::stoi(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw Error(ErrorCode::NotAPermutation, "bad label token '" + tok + "'");
            }
        }
    } else {
        for (char ch : text) {
            if (!std::isdigit(static_cast<unsigned char>(ch))) {
                throw Error(ErrorCode::NotAPermutation, "bad label '" + text + "'");
            }
            word.push_back(ch - '0');
        }
    }
    return ordered(std::move(word));
}

int Label::at(int j) const {
    const int n = this->n();
    return word_[static_cast<std::size_t>(((j % n) + n) % n)];
}

Label Label::canonical() const { return canonical_label(word_); }

std::string Label::str() const {
    std::string s;
    const bool wide = n() > 9;
    for (std::size_t i = 0; i < word_.size(); ++i) {
        if (wide && i > 0) s += ',';
        s += std::to_string(word_[i]);
    }
    return s;
}

Label canonical_label(std::span<const int> word) {
    require_permutation(word);
    const auto n = word.size();
    const auto one = std::find(word.begin(), word.end(), 1) - word.begin();

    std::vector<int> fwd(n), bwd(n);
    for (std::size_t k = 0; k < n; ++k) {
        fwd[k] = word[(static_cast<std::size_t>(one) + k) % n];
        bwd[k] = word[(static_cast<std::size_t>(one) + n - k) % n];
    }
    return Label::ordered(std::min(fwd, bwd));
}

std::vector<Label> enumerate_labels(int n) {
    if (n < 4 || n > 8) {
        throw Error(ErrorCode::OutOfRange, "enumerate_labels supports 4 <= n <= 8");
    }
    // Fix 1 in front; keep one of each reversal pair (second < last).
    std::vector<int> rest(static_cast<std::size_t>(n - 1));
    std::iota(rest.begin(), rest.end(), 2);
    std::vector<Label> out;
    do {
        if (rest.front() < rest.back()) {
            std::vector<int> w{1};
            w.insert(w.end(), rest.begin(), rest.end());
            out.push_back(Label::ordered(std::move(w)));
        }
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

DegenerateConfig DegenerateConfig::from_symbols(std::vector<Symbol> symbols) {
    for (auto& s : symbols) std::sort(s.begin(), s.end());
    DegenerateConfig c;
    c.symbols_ = min_dihedral(symbols);
    return c;
}

int DegenerateConfig::codimension() const {
    int absorbed = 0;
    for (const auto& s : symbols_) absorbed += static_cast<int>(s.size()) - 1;
    return absorbed;
}

std::string DegenerateConfig::str() const {
    std::string s = "<";
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (i > 0) s += ' ';
        const auto& sym = symbols_[i];
        if (sym.size() > 1) s += '(';
        for (std::size_t k = 0; k < sym.size(); ++k) {
            if (k > 0 && sym[k] > 9) s += ',';
            s += std::to_string(sym[k]);
        }
        if (sym.size() > 1) s += ')';
    }
    return s + ">";
}

DegenerateConfig facets_config(const Label& label, std::span<const int> facets) {
    const int n = label.n();
    // merged[j] == true: position j is glued to position j+1.
    std::vector<bool> merged(static_cast<std::size_t>(n), false);
    for (int f : facets) {
        if (f < 0 || f >= n) throw Error(ErrorCode::OutOfRange, "facet index out of range");
        merged[static_cast<std::size_t>(f)] = true;
    }
    if (std::all_of(merged.begin(), merged.end(), [](bool b) { return b; })) {
        throw Error(ErrorCode::OutOfRange, "cannot collapse every edge");
    }
    // Start right after a non-merged boundary so no run wraps around.
    int start = 0;
    while (merged[static_cast<std::size_t>((start + n - 1) % n)] == true) ++start;
    std::vector<DegenerateConfig::Symbol> symbols;
    DegenerateConfig::Symbol current;
    for (int k = 0; k < n; ++k) {
        const int j = (start + k) % n;
        current.push_back(label.at(j));
        if (!merged[static_cast<std::size_t>(j)]) {
            symbols.push_back(std::move(current));
            current.clear();
        }
    }
    return DegenerateConfig::from_symbols(std::move(symbols));
}

DegenerateConfig face_config(const Label& label, int k) {
    if (k < 0 || k >= label.n()) throw Error(ErrorCode::OutOfRange, "face index out of range");
    const int facets[] = {k};
    return facets_config(label, facets);
}

double uniform01(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 over a combination of both words.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

WeightVector sample_weight(int n, std::mt19937_64& engine) {
    if (n < 4) throw Error(ErrorCode::BadInput, "sample_weight needs n >= 4");
    std::vector<double> theta(static_cast<std::size_t>(n));
    for (long attempt = 0; attempt < kRejectionBudget; ++attempt) {
        // Normalized exponentials are uniform on the simplex.
        double sum = 0.0;
        for (auto& t : theta) {
            t = -std::log1p(-uniform01(engine));
            sum += t;
        }
        for (auto& t : theta) t *= kTwoPi / sum;
        auto sorted = theta;
        std::partial_sort(sorted.begin(), sorted.begin() + 2, sorted.end(), std::greater<>());
        if (sorted[0] + sorted[1] >= kPi) continue;
        if (*std::min_element(theta.begin(), theta.end()) <= 0.0) continue;
        try {
            return validate_weight(theta, 1e-9);
        } catch (const Error&) {
            continue;
        }
    }
    throw Error(ErrorCode::RejectionBudgetExceeded, "no weight accepted");
}

WeightVector sample_weight(int n, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    return sample_weight(n, engine);
}

}  // namespace polymod
