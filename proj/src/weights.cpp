#include "ifs/weights.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ifs/errors.hpp"

namespace ifs {

std::string family_token(WeightFamily family) {
    switch (family) {
    case WeightFamily::Factorial: return "factorial";
    case WeightFamily::FactorialSquared: return "factorial2";
    case WeightFamily::QBracket: return "qbracket";
    case WeightFamily::QBracketFactorial: return "qbracket-factorial";
    case WeightFamily::Custom: return "custom";
    }
    return "unknown";
}

WeightSequence::WeightSequence() : WeightSequence(WeightFamily::Factorial, 0.5, 0, {1, 1, 2}) {}

WeightSequence::WeightSequence(WeightFamily family, double q, int n_max,
                               std::vector<double> values)
    : family_(family), q_(q), n_max_(n_max), values_(std::move(values)) {
    validate();
}

void WeightSequence::validate() const {
    if (n_max_ < 0)
        throw ConfigError("n_max must be >= 0");
    if (static_cast<int>(values_.size()) != n_max_ + 3)
        throw ConfigError("weight table must hold lambda_0..lambda_{n_max+2}");
    if (std::abs(values_[0] - 1.0) > 1e-12)
        throw ConfigError("lambda_0 must be 1 (normalize the table)");
    bool zero_tail = false;
    for (std::size_t n = 0; n < values_.size(); ++n) {
        const double v = values_[n];
        if (!std::isfinite(v) || v < 0.0)
            throw ConfigError("lambda_" + std::to_string(n) + " must be a finite nonnegative real");
        if (zero_tail && v != 0.0)
            throw ConfigError("once lambda_n = 0 every later weight must be 0 (violated at n = " +
                              std::to_string(n) + ")");
        if (v == 0.0)
            zero_tail = true;
    }
}

WeightSequence WeightSequence::make(WeightFamily family, int n_max, double q) {
    if (n_max < 0)
        throw ConfigError("n_max must be >= 0");
    const int top = n_max + 2;
    std::vector<double> v(static_cast<std::size_t>(top) + 1);
    v[0] = 1.0;
    switch (family) {
    case WeightFamily::Factorial:
        for (int n = 1; n <= top; ++n)
            v[n] = v[n - 1] * n;
        break;
    case WeightFamily::FactorialSquared: {
        double f = 1.0;
        for (int n = 1; n <= top; ++n) {
            f *= n;
            v[n] = f * f;
        }
        break;
    }
    case WeightFamily::QBracket:
        if (!(q > 0.0 && q < 1.0))
            throw ConfigError("q must lie in (0,1)");
        for (int n = 1; n <= top; ++n)
            v[n] = (1.0 - std::pow(q, n)) / (1.0 - q);
        break;
    case WeightFamily::QBracketFactorial: {
        if (!(q > 0.0 && q < 1.0))
            throw ConfigError("q must lie in (0,1)");
        double p = 1.0;
        for (int n = 1; n <= top; ++n) {
            p *= (1.0 - std::pow(q, n)) / (1.0 - q);
            v[n] = p;
        }
        break;
    }
    case WeightFamily::Custom:
        throw ConfigError("custom weights require an explicit table");
    }
    for (int n = 1; n <= top; ++n)
        if (!std::isfinite(v[n]))
            throw NumericDomainError("lambda_" + std::to_string(n) +
                                     " overflows double precision; reduce n_max");
    return WeightSequence(family, q, n_max, std::move(v));
}

WeightSequence WeightSequence::custom(std::vector<double> values, int n_max) {
    if (static_cast<int>(values.size()) < n_max + 3)
        throw ConfigError("custom weight table has " + std::to_string(values.size()) +
                          " entries but n_max = " + std::to_string(n_max) +
                          " needs lambda_0..lambda_" + std::to_string(n_max + 2));
    values.resize(static_cast<std::size_t>(n_max) + 3);
    return WeightSequence(WeightFamily::Custom, 0.0, n_max, std::move(values));
}

WeightSequence WeightSequence::from_file(const std::filesystem::path& path, int n_max) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open weight file: " + path.string());
    std::vector<double> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ss(line);
        double v;
        if (ss >> v) {
            std::string rest;
            if (ss >> rest)
                throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                                  ": expected one value per line");
            values.push_back(v);
        } else {
            ss.clear();
            std::string word;
            if (ss >> word)
                throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                                  ": not a number: " + word);
        }
    }
    return custom(std::move(values), n_max);
}

WeightSequence WeightSequence::from_token(std::string_view token, int n_max, double q) {
    if (token == "factorial")
        return make(WeightFamily::Factorial, n_max);
    if (token == "factorial2")
        return make(WeightFamily::FactorialSquared, n_max);
    if (token == "qbracket")
        return make(WeightFamily::QBracket, n_max, q);
    if (token == "qbracket-factorial")
        return make(WeightFamily::QBracketFactorial, n_max, q);
    if (token.starts_with("file:"))
        return from_file(std::filesystem::path(std::string(token.substr(5))), n_max);
    throw ConfigError("unknown weight family: " + std::string(token));
}

std::string WeightSequence::token() const { return family_token(family_); }

double WeightSequence::weight(int n) const {
    if (n < 0 || n > table_max())
        throw std::out_of_range("lambda index " + std::to_string(n) +
                                " outside memoized table [0," + std::to_string(table_max()) + "]");
    return values_[static_cast<std::size_t>(n)];
}

double WeightSequence::ratio(int n) const {
    if (n <= 0)
        return 0.0;
    return weight(n) / weight(n - 1);
}

double WeightSequence::pair_ratio(int i, int j) const {
    if (i < 0 || j < 0)
        return 0.0;
    const double den = weight(j);
    if (den <= 0.0)
        return 0.0;
    return weight(i) / den;
}

double WeightSequence::sqrt_pair_ratio(int i, int j) const {
    return std::sqrt(pair_ratio(i, j));
}

} // namespace ifs
