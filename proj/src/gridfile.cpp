#include "ccs/gridfile.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ccs/stable_sum.hpp"

namespace ccs {

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void validate(const GridFile& grid) {
    if (grid.format_version != kGridFormatVersion)
        throw std::runtime_error("grid file: unsupported format version '" +
                                 grid.format_version + "'");
    if (grid.dim < 1 || grid.q != grid.dim + grid.k)
        throw std::runtime_error("grid file: inconsistent header (dim, q, k)");
    StableSum sum;
    for (Eigen::Index i = 0; i < grid.size(); ++i) sum.add(grid.weights[i]);
    if (std::abs(sum.value() - 1.0) > 1e-10)
        throw std::runtime_error("grid file: weights sum to " + fmt17(sum.value()) +
                                 ", expected 1 within 1e-10");
}

void write_csv(std::ostream& out, const GridFile& grid) {
    out << "# " << grid.format_version << "\n";
    out << "# dim=" << grid.dim << " q=" << grid.q << " k=" << grid.k
        << " n=" << grid.size() << "\n";
    for (int j = 0; j < grid.dim; ++j) out << "x" << (j + 1) << ",";
    out << "weight\n";
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        for (int j = 0; j < grid.dim; ++j) out << fmt17(grid.nodes(j, i)) << ",";
        out << fmt17(grid.weights[i]) << "\n";
    }
}

GridFile read_csv(std::istream& in) {
    GridFile grid;
    std::string line;

    if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
        throw std::runtime_error("grid file: missing version line");
    grid.format_version = line.substr(2);

    if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
        throw std::runtime_error("grid file: missing header line");
    Eigen::Index n = -1;
    {
        std::istringstream header(line.substr(2));
        std::string token;
        while (header >> token) {
            const auto eq = token.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = token.substr(0, eq);
            const long long value = std::stoll(token.substr(eq + 1));
            if (key == "dim") grid.dim = static_cast<int>(value);
            else if (key == "q") grid.q = static_cast<int>(value);
            else if (key == "k") grid.k = static_cast<int>(value);
            else if (key == "n") n = static_cast<Eigen::Index>(value);
        }
    }
    if (n < 0) throw std::runtime_error("grid file: header lacks point count");

    if (!std::getline(in, line))  // column names
        throw std::runtime_error("grid file: missing column header");

    grid.nodes.resize(grid.dim, n);
    grid.weights.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            throw std::runtime_error("grid file: fewer rows than declared");
        std::istringstream row(line);
        std::string cell;
        for (int j = 0; j < grid.dim; ++j) {
            if (!std::getline(row, cell, ','))
                throw std::runtime_error("grid file: short row");
            grid.nodes(j, i) = std::stod(cell);
        }
        if (!std::getline(row, cell, ','))
            throw std::runtime_error("grid file: row lacks weight");
        grid.weights[i] = std::stod(cell);
    }
    return grid;
}

void write_json(std::ostream& out, const GridFile& grid) {
    nlohmann::json j;
    j["format"] = grid.format_version;
    j["dim"] = grid.dim;
    j["q"] = grid.q;
    j["k"] = grid.k;
    j["n"] = grid.size();
    nlohmann::json points = nlohmann::json::array();
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        nlohmann::json point;
        nlohmann::json coords = nlohmann::json::array();
        for (int d = 0; d < grid.dim; ++d) coords.push_back(grid.nodes(d, i));
        point["x"] = std::move(coords);
        point["w"] = grid.weights[i];
        points.push_back(std::move(point));
    }
    j["points"] = std::move(points);
    out << j.dump(2) << "\n";
}

GridFile read_json(std::istream& in) {
    const nlohmann::json j = nlohmann::json::parse(in);
    GridFile grid;
    grid.format_version = j.at("format").get<std::string>();
    grid.dim = j.at("dim").get<int>();
    grid.q = j.at("q").get<int>();
    grid.k = j.at("k").get<int>();
    const auto& points = j.at("points");
    const auto n = static_cast<Eigen::Index>(points.size());
    if (j.at("n").get<Eigen::Index>() != n)
        throw std::runtime_error("grid file: declared point count does not match");
    grid.nodes.resize(grid.dim, n);
    grid.weights.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& point = points[static_cast<std::size_t>(i)];
        const auto& coords = point.at("x");
        if (static_cast<int>(coords.size()) != grid.dim)
            throw std::runtime_error("grid file: point dimension mismatch");
        for (int d = 0; d < grid.dim; ++d)
            grid.nodes(d, i) = coords[static_cast<std::size_t>(d)].get<double>();
        grid.weights[i] = point.at("w").get<double>();
    }
    return grid;
}

}  // namespace

GridFile to_grid_file(const CubatureRule& rule) {
    GridFile grid;
    grid.dim = rule.dim;
    grid.q = rule.q;
    grid.k = rule.k();
    grid.nodes = rule.nodes;
    grid.weights = rule.weights;
    return grid;
}

void write_grid(std::ostream& out, const GridFile& grid, GridFormat format) {
    if (format == GridFormat::csv)
        write_csv(out, grid);
    else
        write_json(out, grid);
}

GridFile read_grid(std::istream& in, GridFormat format) {
    GridFile grid = format == GridFormat::csv ? read_csv(in) : read_json(in);
    validate(grid);
    return grid;
}

}  // namespace ccs
