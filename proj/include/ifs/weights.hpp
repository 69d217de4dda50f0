#ifndef IFS_WEIGHTS_HPP
#define IFS_WEIGHTS_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ifs {

enum class WeightFamily {
    Factorial,         // lambda_n = n!
    FactorialSquared,  // lambda_n = (n!)^2
    QBracket,          // lambda_n = [n] = (1-q^n)/(1-q), lambda_0 = 1
    QBracketFactorial, // lambda_n = [n]!
    Custom,            // table loaded from file
};

std::string family_token(WeightFamily family);

/// Memoized weight table lambda_0 .. lambda_{n_max+2} for one family.
///
/// Conventions (fixed across the library):
///   - lambda_0 = 1, so the vacuum semi-norm is 1 in every family.
///   - ratio(n) = lambda_n/lambda_{n-1} for n >= 1; ratio(n) = 0 for n <= 0,
///     which encodes annihilation of the vacuum (A e_0 = 0).
///   - A ratio whose numerator or denominator index is negative is 0: the
///     corresponding operator term is absent.
///
/// Immutable after construction; safe to share across threads.
class WeightSequence {
public:
    WeightSequence(); // factorial with n_max = 0 (placeholder-sized table)

    static WeightSequence make(WeightFamily family, int n_max, double q = 0.5);
    /// Custom table; values[0..] are lambda_0.. and must cover n_max + 3 entries.
    static WeightSequence custom(std::vector<double> values, int n_max);
    /// One value per line, index implicit from 0; '#' comments and blank
    /// lines ignored.
    static WeightSequence from_file(const std::filesystem::path& path, int n_max);
    /// Parses a CLI token: factorial | factorial2 | qbracket |
    /// qbracket-factorial | file:PATH.
    static WeightSequence from_token(std::string_view token, int n_max, double q = 0.5);

    WeightFamily family() const { return family_; }
    double q() const { return q_; }
    int n_max() const { return n_max_; }
    int table_max() const { return n_max_ + 2; }
    std::string token() const;

    /// lambda_n. Throws std::out_of_range above the memoized table.
    double weight(int n) const;

    /// lambda_n/lambda_{n-1}; 0 for n <= 0. Valid up to table_max().
    double ratio(int n) const;

    /// lambda_i/lambda_j gated by the index convention: 0 unless both
    /// indices are >= 0 and lambda_j > 0.
    double pair_ratio(int i, int j) const;
    double sqrt_pair_ratio(int i, int j) const;

private:
    WeightSequence(WeightFamily family, double q, int n_max, std::vector<double> values);
    void validate() const;

    WeightFamily family_;
    double q_;
    int n_max_;
    std::vector<double> values_; // lambda_0 .. lambda_{n_max+2}
};

} // namespace ifs

#endif
