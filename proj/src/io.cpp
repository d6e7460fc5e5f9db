#include "stsrank/io.hpp"

#include "stsrank/error.hpp"

#include <istream>
#include <ostream>
#include <string>

namespace stsrank::io {

namespace {

std::string big(const BigCount& x)
{
    return to_decimal(x);
}

template <class T>
T field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw ParameterError(std::string("JSON object lacks \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("bad JSON value for \"") + key + "\": " + e.what());
    }
}

Json blocks_json(const std::vector<Block>& blocks)
{
    Json out = Json::array();
    for (const auto& b : blocks)
        out.push_back({b[0], b[1], b[2]});
    return out;
}

} // namespace

Json encode(const FieldMatrix& m)
{
    Json data = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (auto x : m.row(r))
            row.push_back(static_cast<int>(x));
        data.push_back(std::move(row));
    }
    return {{"p", m.prime()}, {"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Json encode(const TripleSystem& d)
{
    return {{"v", d.points()}, {"blocks", blocks_json(d.blocks())}};
}

Json encode(const OneFactorization& f)
{
    Json factors = Json::array();
    for (const auto& factor : f.factors) {
        Json edges = Json::array();
        for (const auto& [a, b] : factor)
            edges.push_back({a, b});
        factors.push_back(std::move(edges));
    }
    return {{"m", f.vertexCount}, {"factors", std::move(factors)}};
}

Json encode(const LatinSquare& s)
{
    Json rows = Json::array();
    for (unsigned r = 0; r < s.order; ++r) {
        Json row = Json::array();
        for (unsigned c = 0; c < s.order; ++c)
            row.push_back(static_cast<int>(s.at(r, c)));
        rows.push_back(std::move(row));
    }
    return {{"order", s.order}, {"cells", std::move(rows)}};
}

Json encode(const Recipe& r)
{
    Json out;
    Json lines = Json::array();
    if (const auto* b = std::get_if<BinaryRecipe>(&r)) {
        out["field"] = 2;
        out["interior"] = encode(b->interior);
        Json groups = Json::array();
        for (const auto& g : b->perGroup)
            groups.push_back({{"factorization", encode(g.factorization)}, {"factorOf", g.factorOf}});
        out["perGroup"] = std::move(groups);
        for (const auto& sq : b->perLine)
            lines.push_back(encode(sq));
    } else {
        const auto& t = std::get<TernaryRecipe>(r);
        out["field"] = 3;
        Json groups = Json::array();
        for (const auto& s : t.perGroup)
            groups.push_back(encode(s));
        out["perGroup"] = std::move(groups);
        for (const auto& sq : t.perLine)
            lines.push_back(encode(sq));
    }
    out["perLine"] = std::move(lines);
    return out;
}

Json encode(const GroupPartition& p)
{
    return {{"zeroSet", p.zeroSet}, {"groups", p.groups}, {"groupPoint", p.groupPoint}};
}

Json encode(const Geometry& g)
{
    Json lines = Json::array();
    for (const auto& l : g.lines)
        lines.push_back({l[0], l[1], l[2]});
    Json points = Json::array();
    for (const auto& p : g.points) {
        Json coords = Json::array();
        for (auto c : p)
            coords.push_back(static_cast<int>(c));
        points.push_back(std::move(coords));
    }
    return {{"kind", g.kind == GeometryKind::Projective2 ? "PG" : "AG"},
            {"field", g.kind == GeometryKind::Projective2 ? 2 : 3},
            {"dimension", g.dimension},
            {"points", std::move(points)},
            {"lines", std::move(lines)}};
}

Json encode(const GddReport& r)
{
    Json out{{"groupCount", r.groupCount},
             {"groupSize", r.groupSize},
             {"lambdaSameGroup", r.lambdaSameGroup},
             {"lambdaCrossGroup", r.lambdaCrossGroup}};
    if (r.interiorDesignParams)
        out["interiorDesignParams"] = *r.interiorDesignParams;
    else
        out["interiorDesignParams"] = nullptr;
    out["mixedPerSamePair"] = r.mixedPerSamePair;
    out["transversalPerLine"] = r.transversalPerLine;
    out["interiorBlocks"] = r.interiorBlocks;
    out["mixedBlocks"] = r.mixedBlocks;
    out["transversalBlocks"] = r.transversalBlocks;
    out["passed"] = r.passed;
    return out;
}

Json encode(const DualStructureReport& r)
{
    Json hist = Json::object();
    for (const auto& [w, c] : r.weightHistogram)
        hist[std::to_string(w)] = c;
    return {{"corank", r.corank},
            {"multiplicity", r.multiplicity},
            {"weightHistogram", std::move(hist)},
            {"allOnesMultiples", r.allOnesMultiples},
            {"expectedWeight", r.expectedWeight},
            {"passed", r.passed}};
}

Json encode(const BoundsReport& r)
{
    return {{"lowerRational", to_string(r.lowerRational)},
            {"upperRational", to_string(r.upperRational)},
            {"lowerInt", big(r.lowerInt)},
            {"upperInt", big(r.upperInt)},
            {"s", big(r.distinct)},
            {"autC", big(r.autCode)},
            {"u", big(r.autLower)},
            {"U", big(r.autUpper)}};
}

Json encode(const CountConstant& c)
{
    return {{"kind", to_string(c.kind)},
            {"order", c.order},
            {"value", big(c.value)},
            {"provenance", to_string(c.provenance)},
            {"source", c.source}};
}

Json encode(const IsoClassReport& r)
{
    Json classes = Json::array();
    for (const auto& c : r.classes)
        classes.push_back({{"canonical", encode(c.canonical)},
                           {"multiplicity", c.multiplicity},
                           {"autOrder", big(c.autOrder)},
                           {"stabilizerOrder", big(c.stabilizerOrder)},
                           {"rank", c.rank}});
    Json ranks = Json::array();
    for (const auto& [rank, count] : r.rankHistogram)
        ranks.push_back({{"rank", rank}, {"systems", count}});
    return {{"classCount", r.classes.size()},
            {"classes", std::move(classes)},
            {"totalDistinct", big(r.totalDistinct)},
            {"autC", big(r.autCode)},
            {"massSum", to_string(r.massSum)},
            {"massBalanced", r.massBalanced},
            {"rankHistogram", std::move(ranks)}};
}

Json encode(const CodeSpec& s)
{
    return {{"p", s.prime()}, {"n", s.n()}, {"t", s.t()}, {"length", s.length()}, {"T", s.T()}, {"M", s.M()}};
}

FieldMatrix decode_matrix(const Json& j)
{
    const int p = field<int>(j, "p");
    const auto rows = field<std::size_t>(j, "rows");
    const auto cols = field<std::size_t>(j, "cols");
    const auto data = field<std::vector<std::vector<int>>>(j, "data");
    if (data.size() != rows)
        throw ParameterError("matrix JSON: \"rows\" does not match the data");
    for (const auto& row : data)
        if (row.size() != cols)
            throw ParameterError("matrix JSON: \"cols\" does not match the data");
    return FieldMatrix::from_rows(p, data);
}

TripleSystem decode_design(const Json& j)
{
    const auto v = field<Point>(j, "v");
    const auto raw = field<std::vector<std::vector<Point>>>(j, "blocks");
    std::vector<Block> blocks;
    blocks.reserve(raw.size());
    for (const auto& b : raw) {
        if (b.size() != 3)
            throw ParameterError("design JSON: every block needs three points");
        blocks.push_back({b[0], b[1], b[2]});
    }
    return TripleSystem(v, std::move(blocks));
}

namespace {

LatinSquare decode_square(const Json& j)
{
    LatinSquare s;
    s.order = field<unsigned>(j, "order");
    for (const auto& row : field<std::vector<std::vector<int>>>(j, "cells")) {
        if (row.size() != s.order)
            throw ParameterError("Latin square JSON: ragged rows");
        for (int x : row) {
            if (x < 0 || x > 255)
                throw ParameterError("Latin square JSON: symbol out of range");
            s.cells.push_back(static_cast<std::uint8_t>(x));
        }
    }
    if (s.cells.size() != std::size_t{s.order} * s.order)
        throw ParameterError("Latin square JSON: wrong number of rows");
    return s;
}

OneFactorization decode_factorization(const Json& j)
{
    OneFactorization f;
    f.vertexCount = field<Point>(j, "m");
    for (const auto& factor : field<std::vector<std::vector<std::vector<Point>>>>(j, "factors")) {
        std::vector<Edge> edges;
        for (const auto& e : factor) {
            if (e.size() != 2)
                throw ParameterError("1-factorization JSON: edges need two vertices");
            edges.push_back({e[0], e[1]});
        }
        f.factors.push_back(std::move(edges));
    }
    return f;
}

} // namespace

Recipe decode_recipe(const Json& j)
{
    const int p = field<int>(j, "field");
    std::vector<LatinSquare> lines;
    for (const auto& sq : field<Json>(j, "perLine"))
        lines.push_back(decode_square(sq));
    if (p == 2) {
        BinaryRecipe r;
        r.interior = decode_design(field<Json>(j, "interior"));
        for (const auto& g : field<Json>(j, "perGroup"))
            r.perGroup.push_back({decode_factorization(field<Json>(g, "factorization")),
                                  field<std::vector<std::uint32_t>>(g, "factorOf")});
        r.perLine = std::move(lines);
        return r;
    }
    if (p == 3) {
        TernaryRecipe r;
        for (const auto& s : field<Json>(j, "perGroup"))
            r.perGroup.push_back(decode_design(s));
        r.perLine = std::move(lines);
        return r;
    }
    throw ParameterError("recipe JSON: field must be 2 or 3");
}

void write_jsonl(std::ostream& out, const TripleSystem& d)
{
    out << encode(d).dump() << '\n';
}

std::uint64_t read_designs_jsonl(std::istream& in, const std::function<void(TripleSystem)>& sink)
{
    std::uint64_t count = 0;
    std::string line;
    std::uint64_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParameterError("JSONL line " + std::to_string(lineNo) + ": " + e.what());
        }
        sink(decode_design(j));
        ++count;
    }
    return count;
}

std::vector<TripleSystem> read_designs_jsonl(std::istream& in)
{
    std::vector<TripleSystem> out;
    read_designs_jsonl(in, [&](TripleSystem d) { out.push_back(std::move(d)); });
    return out;
}

} // namespace stsrank::io
