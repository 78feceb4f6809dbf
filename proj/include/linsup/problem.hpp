#ifndef LINSUP_PROBLEM_HPP
#define LINSUP_PROBLEM_HPP

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "random.hpp"
#include "vector_ops.hpp"

namespace linsup {

/// Raised when a problem file cannot be opened or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a problem file is readable but does not follow the format.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Linear inequality system Ax <= b, x >= 0 together with the objective <c,x>.
///
/// A is stored dense and row-major. Squared row norms are computed once at
/// construction; a row of zeros is rejected since it has no half-space
/// projection. Instances are immutable after construction.
class Problem {
public:
    Problem(std::size_t rows, std::size_t cols, Vector a, Vector b, Vector c)
        : rows_(rows), cols_(cols), a_(std::move(a)), b_(std::move(b)), c_(std::move(c))
    {
        if (rows_ == 0 || cols_ == 0)
            throw std::invalid_argument("Problem: dimensions must be positive");
        if (a_.size() != rows_ * cols_)
            throw std::invalid_argument("Problem: matrix size does not match I*J");
        if (b_.size() != rows_)
            throw std::invalid_argument("Problem: b must have I entries");
        if (c_.size() != cols_)
            throw std::invalid_argument("Problem: c must have J entries");
        if (!all_finite(a_) || !all_finite(b_) || !all_finite(c_))
            throw std::invalid_argument("Problem: non-finite value");

        row_norms_sq_.resize(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            const auto r = row(i);
            row_norms_sq_[i] = dot(r, r);
            if (!(row_norms_sq_[i] > 0.0))
                throw std::invalid_argument("Problem: row " + std::to_string(i) + " is zero");
        }
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::span<const double> row(std::size_t i) const noexcept
    {
        return {a_.data() + i * cols_, cols_};
    }

    double a(std::size_t i, std::size_t j) const noexcept { return a_[i * cols_ + j]; }
    std::span<const double> matrix() const noexcept { return a_; }
    std::span<const double> b() const noexcept { return b_; }
    std::span<const double> c() const noexcept { return c_; }
    std::span<const double> row_norms_sq() const noexcept { return row_norms_sq_; }

    friend bool operator==(const Problem& x, const Problem& y)
    {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_ && x.b_ == y.b_
            && x.c_ == y.c_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    Vector a_;
    Vector b_;
    Vector c_;
    Vector row_norms_sq_;
};

struct Interval {
    double lo;
    double hi;
};

/// Parameters of the infeasible paired-row instance family.
struct GeneratorSpec {
    std::size_t pair_count = 125;
    std::size_t cols = 200;
    std::uint64_t seed = 1;
    Interval a_range{-1.0, 1.0};
    Interval b_range{0.0, 100.0};
    Interval gap_range{100.0, 200.0};
    Interval c_range{-2.0, 1.0};

    void validate() const
    {
        if (pair_count == 0)
            throw std::invalid_argument("GeneratorSpec: pair_count must be >= 1");
        if (cols == 0)
            throw std::invalid_argument("GeneratorSpec: cols must be >= 1");
        for (const Interval* r : {&a_range, &b_range, &gap_range, &c_range})
            if (!(r->lo < r->hi) || !std::isfinite(r->lo) || !std::isfinite(r->hi))
                throw std::invalid_argument("GeneratorSpec: empty or non-finite interval");
    }
};

/// Paired-row infeasibility certificate: row pair_count+t must be the exact
/// negation of row t and b_t + b_{pair_count+t} < 0, so that adding the two
/// inequalities yields 0 <= b_t + b_{pair_count+t} < 0.
///
/// Returns the number of pairs for which the certificate holds.
inline std::size_t count_certified_pairs(const Problem& p, std::size_t pair_count)
{
    if (2 * pair_count != p.rows())
        return 0;
    std::size_t ok = 0;
    for (std::size_t t = 0; t < pair_count; ++t) {
        const auto r0 = p.row(t);
        const auto r1 = p.row(pair_count + t);
        bool negated = true;
        for (std::size_t j = 0; j < p.cols(); ++j)
            if (r0[j] + r1[j] != 0.0) {
                negated = false;
                break;
            }
        if (negated && p.b()[t] + p.b()[pair_count + t] < 0.0)
            ++ok;
    }
    return ok;
}

/// Builds an instance with pair_count rows drawn uniformly from a_range,
/// followed by their negations. Right-hand sides of the negated rows are
/// pushed apart by a gap drawn from gap_range, so every pair is inconsistent.
///
/// Draw order from the engine is fixed: matrix entries row-major, then b,
/// then gaps, then c.
inline Problem generate_infeasible(const GeneratorSpec& spec)
{
    spec.validate();
    const std::size_t m = spec.pair_count;
    const std::size_t n = spec.cols;
    Engine rng(spec.seed);

    Vector a(2 * m * n);
    for (std::size_t t = 0; t < m; ++t) {
        double* r = a.data() + t * n;
        // redraw rows whose squared norm is zero (or underflows to zero)
        do {
            for (std::size_t j = 0; j < n; ++j)
                r[j] = uniform_open(rng, spec.a_range.lo, spec.a_range.hi);
        } while (!(dot({r, n}, {r, n}) > 0.0));
        double* neg = a.data() + (m + t) * n;
        for (std::size_t j = 0; j < n; ++j)
            neg[j] = -r[j];
    }

    Vector b(2 * m);
    for (std::size_t t = 0; t < m; ++t)
        b[t] = uniform_open(rng, spec.b_range.lo, spec.b_range.hi);
    for (std::size_t t = 0; t < m; ++t)
        b[m + t] = -b[t] - uniform_open(rng, spec.gap_range.lo, spec.gap_range.hi);

    Vector c(n);
    for (auto& v : c)
        v = uniform_open(rng, spec.c_range.lo, spec.c_range.hi);

    Problem p(2 * m, n, std::move(a), std::move(b), std::move(c));
    if (spec.gap_range.lo >= 0.0 && count_certified_pairs(p, m) != m)
        throw std::logic_error("generate_infeasible: infeasibility certificate failed");
    return p;
}

namespace detail {

inline constexpr std::string_view problem_magic = "LINSUP-PROBLEM 1";

inline void append_real(std::string& out, double v)
{
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    out.append(buf, static_cast<std::size_t>(len));
}

inline void append_line(std::string& out, std::span<const double> values)
{
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k)
            out.push_back(' ');
        append_real(out, values[k]);
    }
    out.push_back('\n');
}

/// Splits one line into reals, requiring exactly `expected` finite values.
inline Vector parse_reals(std::string_view line, std::size_t expected, std::size_t line_no)
{
    Vector out;
    out.reserve(expected);
    const char* p = line.data();
    const char* end = p + line.size();
    auto fail = [&](const std::string& what) {
        return FormatError("line " + std::to_string(line_no) + ": " + what);
    };
    for (;;) {
        while (p != end && (*p == ' ' || *p == '\t' || *p == '\r'))
            ++p;
        if (p == end)
            break;
        if (*p == '+')
            ++p;
        double v = 0.0;
        const auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc() || (next != end && *next != ' ' && *next != '\t' && *next != '\r'))
            throw fail("malformed real");
        if (!std::isfinite(v))
            throw fail("non-finite value");
        out.push_back(v);
        p = next;
    }
    if (out.size() != expected)
        throw fail("expected " + std::to_string(expected) + " values, found "
                   + std::to_string(out.size()));
    return out;
}

} // namespace detail

/// Serializes to the line-oriented text format; %.17g round-trips doubles.
inline std::string format_problem(const Problem& p)
{
    std::string out;
    out.reserve(p.rows() * p.cols() * 24);
    out.append(detail::problem_magic);
    out.push_back('\n');
    out += "I " + std::to_string(p.rows()) + " J " + std::to_string(p.cols()) + "\n";
    for (std::size_t i = 0; i < p.rows(); ++i)
        detail::append_line(out, p.row(i));
    detail::append_line(out, p.b());
    detail::append_line(out, p.c());
    return out;
}

inline Problem parse_problem(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        if (!std::getline(in, line))
            return false;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        return true;
    };

    if (!next_line() || line != detail::problem_magic)
        throw FormatError("missing or unsupported header (expected '"
                          + std::string(detail::problem_magic) + "')");
    if (!next_line())
        throw FormatError("missing dimension line");

    std::size_t rows = 0;
    std::size_t cols = 0;
    {
        std::istringstream dims(line);
        std::string tag_i, tag_j, extra;
        long long ri = -1, cj = -1;
        if (!(dims >> tag_i >> ri >> tag_j >> cj) || tag_i != "I" || tag_j != "J" || (dims >> extra))
            throw FormatError("line 2: malformed dimension line");
        if (ri < 1 || cj < 1)
            throw FormatError("line 2: dimensions must be positive");
        rows = static_cast<std::size_t>(ri);
        cols = static_cast<std::size_t>(cj);
    }

    std::vector<std::pair<std::size_t, std::string>> data;
    while (next_line())
        if (line.find_first_not_of(" \t") != std::string::npos)
            data.emplace_back(line_no, line);
    if (data.size() != rows + 2)
        throw FormatError("dimension mismatch: header declares I=" + std::to_string(rows)
                          + ", expected " + std::to_string(rows + 2) + " data lines, found "
                          + std::to_string(data.size()));

    Vector a;
    a.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Vector r = detail::parse_reals(data[i].second, cols, data[i].first);
        a.insert(a.end(), r.begin(), r.end());
    }
    Vector b = detail::parse_reals(data[rows].second, rows, data[rows].first);
    Vector c = detail::parse_reals(data[rows + 1].second, cols, data[rows + 1].first);

    try {
        return Problem(rows, cols, std::move(a), std::move(b), std::move(c));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

inline void save_problem(const Problem& p, const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    const std::string text = format_problem(p);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw IoError("write to '" + path + "' failed");
}

inline Problem load_problem(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    return parse_problem(in);
}

} // namespace linsup

#endif // LINSUP_PROBLEM_HPP
