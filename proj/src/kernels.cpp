#include "stsrank/kernels.hpp"

#include "stsrank/error.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include <omp.h>

namespace stsrank::kernels {

namespace {

// ---------------------------------------------------------------- weight-3 scan

struct ColumnTable {
    std::size_t rows;
    int p;
    std::vector<std::uint8_t> cols; // column-major, rows entries per column

    const std::uint8_t* col(std::size_t c) const { return cols.data() + c * rows; }
};

ColumnTable column_table(const FieldMatrix& h)
{
    ColumnTable t{h.rows(), h.prime(), std::vector<std::uint8_t>(h.rows() * h.cols())};
    for (std::size_t c = 0; c < h.cols(); ++c)
        for (std::size_t r = 0; r < h.rows(); ++r)
            t.cols[c * h.rows() + r] = h.at(r, c);
    return t;
}

void scan_first_point(const ColumnTable& t, std::size_t v, std::size_t i, std::vector<Block>& out)
{
    std::vector<std::uint8_t> partial(t.rows);
    const auto* ci = t.col(i);
    for (std::size_t j = i + 1; j < v; ++j) {
        const auto* cj = t.col(j);
        for (std::size_t r = 0; r < t.rows; ++r)
            partial[r] = static_cast<std::uint8_t>((ci[r] + cj[r]) % t.p);
        for (std::size_t k = j + 1; k < v; ++k) {
            const auto* ck = t.col(k);
            bool zero = true;
            for (std::size_t r = 0; r < t.rows && zero; ++r)
                zero = (partial[r] + ck[r]) % t.p == 0;
            if (zero)
                out.push_back({static_cast<Point>(i), static_cast<Point>(j), static_cast<Point>(k)});
        }
    }
}

// ---------------------------------------------------------------- span histograms

/// Words packed 64 coordinates per machine word (binary only).
using Packed = std::vector<std::uint64_t>;

Packed pack(const std::vector<std::uint8_t>& x)
{
    Packed out((x.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i])
            out[i / 64] |= std::uint64_t{1} << (i % 64);
    return out;
}

std::size_t popcount(const Packed& w)
{
    std::size_t s = 0;
    for (auto x : w)
        s += static_cast<std::size_t>(std::popcount(x));
    return s;
}

/// Visits 2^lowBits words starting at `start`, Gray-code stepping through basis[0..lowBits).
void binary_gray_walk(const std::vector<Packed>& basis, unsigned lowBits, Packed word,
                      std::vector<std::uint64_t>& hist)
{
    ++hist[popcount(word)];
    const std::uint64_t total = std::uint64_t{1} << lowBits;
    for (std::uint64_t step = 1; step < total; ++step) {
        const auto flip = static_cast<unsigned>(std::countr_zero(step));
        const auto& b = basis[flip];
        for (std::size_t k = 0; k < word.size(); ++k)
            word[k] ^= b[k];
        ++hist[popcount(word)];
    }
}

std::size_t weight(const std::vector<std::uint8_t>& x)
{
    return static_cast<std::size_t>(std::count_if(x.begin(), x.end(), [](auto e) { return e != 0; }));
}

void add_into(std::vector<std::uint8_t>& word, const std::vector<std::uint8_t>& b, int p, int times = 1)
{
    for (std::size_t k = 0; k < word.size(); ++k)
        word[k] = static_cast<std::uint8_t>((word[k] + times * b[k]) % p);
}

/// Visits p^lowDigits words by a base-p odometer over basis[0..lowDigits).
void odometer_walk(const std::vector<std::vector<std::uint8_t>>& basis, unsigned lowDigits, int p,
                   std::vector<std::uint8_t> word, std::vector<std::uint64_t>& hist)
{
    std::vector<int> digit(lowDigits, 0);
    while (true) {
        ++hist[weight(word)];
        unsigned j = 0;
        // Every digit either wraps (p-1 -> 0) or increments; both add basis[j] once.
        while (j < lowDigits && digit[j] == p - 1) {
            digit[j] = 0;
            add_into(word, basis[j], p);
            ++j;
        }
        if (j == lowDigits)
            break;
        ++digit[j];
        add_into(word, basis[j], p);
    }
}

// ---------------------------------------------------------------- Latin squares

struct LatinCounter {
    unsigned g;
    std::vector<std::uint32_t> rowUsed;
    std::vector<std::uint32_t> colUsed;
    std::uint64_t count = 0;

    explicit LatinCounter(unsigned order) : g(order), rowUsed(order, 0), colUsed(order, 0) {}

    // Fills rows 0..g-2 cell by cell; a (g-1) x g Latin rectangle completes uniquely.
    void fill(unsigned cell)
    {
        const unsigned r = cell / g;
        if (r + 1 >= g) {
            ++count;
            return;
        }
        const unsigned c = cell % g;
        const std::uint32_t free = ~(rowUsed[r] | colUsed[c]) & ((1u << g) - 1);
        for (std::uint32_t bits = free; bits; bits &= bits - 1) {
            const std::uint32_t s = bits & (~bits + 1);
            rowUsed[r] |= s;
            colUsed[c] |= s;
            fill(cell + 1);
            rowUsed[r] &= ~s;
            colUsed[c] &= ~s;
        }
    }
};

} // namespace

std::vector<Block> weight3_scan(const FieldMatrix& h, Exec exec)
{
    const auto table = column_table(h);
    const std::size_t v = h.cols();
    if (exec == Exec::Serial) {
        std::vector<Block> out;
        for (std::size_t i = 0; i < v; ++i)
            scan_first_point(table, v, i, out);
        return out;
    }

    std::vector<std::vector<Block>> perFirst(v);
    const auto vs = static_cast<std::int64_t>(v);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < vs; ++i)
        scan_first_point(table, v, static_cast<std::size_t>(i), perFirst[static_cast<std::size_t>(i)]);

    std::vector<Block> out;
    for (auto& part : perFirst)
        out.insert(out.end(), part.begin(), part.end());
    return out;
}

std::vector<std::uint64_t> span_weight_histogram(const std::vector<std::vector<std::uint8_t>>& basis,
                                                 int p, std::size_t length, Exec exec)
{
    const auto k = static_cast<unsigned>(basis.size());
    std::vector<std::uint64_t> hist(length + 1, 0);

    // The top `split` basis vectors index independent chunks.
    const unsigned split = exec == Exec::Serial ? 0u : std::min(k, p == 2 ? 8u : 5u);
    const unsigned low = k - split;
    std::uint64_t chunks = 1;
    for (unsigned i = 0; i < split; ++i)
        chunks *= static_cast<std::uint64_t>(p);

    auto chunk_start = [&](std::uint64_t c) {
        std::vector<std::uint8_t> word(length, 0);
        for (unsigned i = 0; i < split; ++i) {
            add_into(word, basis[low + i], p, static_cast<int>(c % p));
            c /= p;
        }
        return word;
    };

    std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(length + 1, 0));
    const auto nChunks = static_cast<std::int64_t>(chunks);

    if (p == 2) {
        std::vector<Packed> packed;
        packed.reserve(k);
        for (const auto& b : basis)
            packed.push_back(pack(b));
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::Parallel)
        for (std::int64_t c = 0; c < nChunks; ++c)
            binary_gray_walk(packed, low, pack(chunk_start(static_cast<std::uint64_t>(c))),
                             partial[static_cast<std::size_t>(c)]);
    } else {
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::Parallel)
        for (std::int64_t c = 0; c < nChunks; ++c)
            odometer_walk(basis, low, p, chunk_start(static_cast<std::uint64_t>(c)),
                          partial[static_cast<std::size_t>(c)]);
    }

    for (const auto& part : partial)
        for (std::size_t w = 0; w <= length; ++w)
            hist[w] += part[w];
    return hist;
}

StabilizerScan stabilizer_scan(const TripleSystem& d,
                               const std::function<bool(std::span<const Point>)>& predicate,
                               Exec exec)
{
    const Point v = d.points();
    if (v == 0 || v > 11)
        throw ResourceError("brute-force stabilizer limited to 1 <= v <= 11, got " + std::to_string(v));

    auto scan_branch = [&](Point first) {
        StabilizerScan part;
        std::vector<Point> perm(v);
        perm[0] = first;
        std::vector<Point> rest;
        for (Point x = 0; x < v; ++x)
            if (x != first)
                rest.push_back(x);
        std::vector<Block> image(d.size());
        do {
            std::copy(rest.begin(), rest.end(), perm.begin() + 1);
            for (std::size_t i = 0; i < d.size(); ++i) {
                const auto& b = d.blocks()[i];
                Block m{perm[b[0]], perm[b[1]], perm[b[2]]};
                std::sort(m.begin(), m.end());
                image[i] = m;
            }
            std::sort(image.begin(), image.end());
            const bool fixes = image == d.blocks();
            const bool accepted = predicate(perm);
            part.stabilizerOrder += fixes;
            part.predicateAccepted += accepted;
            part.disagreements += fixes != accepted;
        } while (std::next_permutation(rest.begin(), rest.end()));
        return part;
    };

    std::vector<StabilizerScan> parts(v);
    const auto vs = static_cast<std::int64_t>(v);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::Parallel)
    for (std::int64_t first = 0; first < vs; ++first)
        parts[static_cast<std::size_t>(first)] = scan_branch(static_cast<Point>(first));

    StabilizerScan total;
    for (const auto& p : parts) {
        total.stabilizerOrder += p.stabilizerOrder;
        total.predicateAccepted += p.predicateAccepted;
        total.disagreements += p.disagreements;
    }
    return total;
}

std::uint64_t count_latin_squares(unsigned g, Exec exec)
{
    if (g == 0 || g > 5)
        throw ResourceError("Latin square counting limited to orders 1..5, got " + std::to_string(g));
    if (g == 1)
        return 1;

    // Enumerate first rows explicitly and split work over them.
    std::vector<std::vector<unsigned>> firstRows;
    std::vector<unsigned> row(g);
    std::iota(row.begin(), row.end(), 0u);
    do
        firstRows.push_back(row);
    while (std::next_permutation(row.begin(), row.end()));

    auto count_from = [g](const std::vector<unsigned>& first) {
        LatinCounter counter(g);
        for (unsigned c = 0; c < g; ++c) {
            counter.rowUsed[0] |= 1u << first[c];
            counter.colUsed[c] |= 1u << first[c];
        }
        counter.fill(g);
        return counter.count;
    };

    if (exec == Exec::Serial) {
        std::uint64_t total = 0;
        for (const auto& first : firstRows)
            total += count_from(first);
        return total;
    }

    std::uint64_t total = 0;
    const auto n = static_cast<std::int64_t>(firstRows.size());
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : total)
    for (std::int64_t i = 0; i < n; ++i)
        total += count_from(firstRows[static_cast<std::size_t>(i)]);
    return total;
}

} // namespace stsrank::kernels
