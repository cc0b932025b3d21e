#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>

#include "ccs/smolyak.hpp"

namespace ccs {

inline constexpr const char* kGridFormatVersion = "ccs-grid/1";

// On-disk view of a rule: header metadata plus one (coordinates, weight)
// row per point.  Written values carry 17 significant digits, so a
// write/read round trip reproduces every double bit for bit.
struct GridFile {
    std::string format_version = kGridFormatVersion;
    int dim = 1;
    int q = 1;
    int k = 0;
    Eigen::MatrixXd nodes;    // dim x n, column per point, rows ordered as written
    Eigen::VectorXd weights;  // n

    Eigen::Index size() const { return weights.size(); }
};

enum class GridFormat { csv, json };

GridFile to_grid_file(const CubatureRule& rule);

void write_grid(std::ostream& out, const GridFile& grid, GridFormat format);

// Parses a grid written by write_grid; validates the version string, the
// declared point count, and that the weights sum to 1 within 1e-10.
GridFile read_grid(std::istream& in, GridFormat format);

}  // namespace ccs
