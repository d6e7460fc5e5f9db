#include "stsrank/config.hpp"

#include "stsrank/error.hpp"

#include <fstream>
#include <string>

namespace stsrank {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value)
{
    try {
        std::size_t used = 0;
        const auto parsed = std::stoull(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw ParameterError("config: '" + key + "' expects a nonnegative integer, got '" + value + "'");
    }
}

} // namespace

Limits load_limits(const std::filesystem::path& path, Limits base)
{
    std::ifstream in(path);
    if (!in)
        throw ParameterError("config: cannot open " + path.string());

    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParameterError("config: line " + std::to_string(lineNo) + " is not key=value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));

        if (key == "dual_corank_cap")
            base.dualCorankCap = static_cast<unsigned>(parse_unsigned(key, value));
        else if (key == "oracle_block_cap")
            base.oracleBlockCap = parse_unsigned(key, value);
        else if (key == "canon_v_cap")
            base.canonVertexCap = static_cast<std::uint32_t>(parse_unsigned(key, value));
        else if (key == "weight3_v_cap")
            base.weight3VertexCap = static_cast<std::uint32_t>(parse_unsigned(key, value));
        else if (key == "stream_recipe_cap")
            base.streamRecipeCap = parse_unsigned(key, value);
        else if (key == "long_mode")
            base.longMode = value == "true" || value == "1";
        else
            throw ParameterError("config: unknown key '" + key + "'");
    }
    return base;
}

} // namespace stsrank
