#pragma once

/// @file instance.hpp
/// @brief Symmetric TSP instances with TSPLIB edge-weight semantics.
///
/// Vertices are 0-based in the API. TSPLIB node ids (1-based) are mapped to
/// `id - 1` on parse and back on serialization.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lkgain {

using Vertex = std::int32_t;
using Cost = std::int64_t;

enum class WeightKind { Euc2D, Ceil2D, Geo, Att, Explicit };

std::string_view to_string(WeightKind kind) noexcept;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Immutable vertex set plus an exact integer cost function.
class Instance {
  public:
    /// Coordinate-based instance. Throws DimensionMismatch for fewer than 3 points.
    static Instance from_coords(std::string name, WeightKind kind, std::vector<Point> coords,
                                std::optional<Cost> known_optimum = std::nullopt);

    /// EXPLICIT instance from a full row-major n*n matrix. The matrix must be
    /// symmetric with positive off-diagonal entries.
    static Instance from_matrix(std::string name, std::vector<Cost> matrix,
                                std::optional<Cost> known_optimum = std::nullopt);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] Vertex dimension() const noexcept { return n_; }
    [[nodiscard]] WeightKind weight_kind() const noexcept { return kind_; }
    [[nodiscard]] const std::vector<Point>& coords() const noexcept { return coords_; }
    [[nodiscard]] bool has_coords() const noexcept { return kind_ != WeightKind::Explicit; }
    [[nodiscard]] const std::optional<Cost>& known_optimum() const noexcept { return optimum_; }
    [[nodiscard]] const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    void set_known_optimum(std::optional<Cost> opt) { optimum_ = opt; }

    /// Unchecked cost lookup for hot loops; `i != j` and both in range.
    [[nodiscard]] Cost cost(Vertex i, Vertex j) const noexcept {
        if (kind_ == WeightKind::Explicit) {
            return matrix_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                           static_cast<std::size_t>(j)];
        }
        return coord_cost(i, j);
    }

    /// Checked cost lookup. Throws IndexOutOfRange or SelfLoop.
    [[nodiscard]] Cost edge_cost(Vertex i, Vertex j) const;

  private:
    Instance() = default;

    [[nodiscard]] Cost coord_cost(Vertex i, Vertex j) const noexcept;
    void scan_zero_cost_edges();

    std::string name_;
    Vertex n_ = 0;
    WeightKind kind_ = WeightKind::Euc2D;
    std::vector<Point> coords_;
    std::vector<Cost> matrix_;
    std::optional<Cost> optimum_;
    std::vector<std::string> warnings_;
};

/// Parses the TSPLIB subset: NAME, DIMENSION, EDGE_WEIGHT_TYPE in
/// {EUC_2D, CEIL_2D, GEO, ATT, EXPLICIT}, NODE_COORD_SECTION or an
/// EDGE_WEIGHT_SECTION in FULL_MATRIX, UPPER_ROW, LOWER_ROW, LOWER_DIAG_ROW or
/// UPPER_DIAG_ROW format.
Instance parse_tsplib(std::string_view text);

/// Reads and parses a file. Throws IoFailure if it cannot be opened.
Instance load_tsplib(const std::string& path);

/// Writes an instance back out; EXPLICIT instances as FULL_MATRIX.
std::string to_tsplib(const Instance& inst);

/// Sum of consecutive edge costs plus the closing edge. Throws NotAPermutation.
Cost tour_cost(const Instance& inst, std::span<const Vertex> order);

/// Throws NotAPermutation unless `order` is a permutation of 0..n-1.
void require_permutation(std::span<const Vertex> order, Vertex n);

/// Instance name -> optimal tour cost.
using OptimaRegistry = std::map<std::string, Cost, std::less<>>;

/// "name cost" per line, '#' starts a comment.
OptimaRegistry parse_optima(std::string_view text);
OptimaRegistry load_optima(const std::string& path);

} // namespace lkgain
