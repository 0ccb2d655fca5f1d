#include "lkgain/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "lkgain/error.hpp"

namespace lkgain {

std::string_view to_string(WeightKind kind) noexcept {
    switch (kind) {
    case WeightKind::Euc2D: return "EUC_2D";
    case WeightKind::Ceil2D: return "CEIL_2D";
    case WeightKind::Geo: return "GEO";
    case WeightKind::Att: return "ATT";
    case WeightKind::Explicit: return "EXPLICIT";
    }
    return "?";
}

namespace {

constexpr double kGeoPi = 3.141592;
constexpr double kEarthRadius = 6378.388;

// TSPLIB degree.minute encoding to radians; truncation toward zero as in the
// reference implementations the published optima were computed with.
double geo_radians(double v) {
    const double deg = std::trunc(v);
    const double min = v - deg;
    return kGeoPi * (deg + 5.0 * min / 3.0) / 180.0;
}

Cost geo_distance(const Point& a, const Point& b) {
    const double lat_a = geo_radians(a.x), lon_a = geo_radians(a.y);
    const double lat_b = geo_radians(b.x), lon_b = geo_radians(b.y);
    const double q1 = std::cos(lon_a - lon_b);
    const double q2 = std::cos(lat_a - lat_b);
    const double q3 = std::cos(lat_a + lat_b);
    const double arg = std::clamp(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3), -1.0, 1.0);
    return static_cast<Cost>(kEarthRadius * std::acos(arg) + 1.0);
}

Cost att_distance(const Point& a, const Point& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    const double r = std::sqrt((dx * dx + dy * dy) / 10.0);
    const auto t = static_cast<Cost>(std::lround(r));
    return static_cast<double>(t) < r ? t + 1 : t;
}

} // namespace

Cost Instance::coord_cost(Vertex i, Vertex j) const noexcept {
    const Point& a = coords_[static_cast<std::size_t>(i)];
    const Point& b = coords_[static_cast<std::size_t>(j)];
    switch (kind_) {
    case WeightKind::Euc2D: {
        const double dx = a.x - b.x, dy = a.y - b.y;
        return static_cast<Cost>(std::sqrt(dx * dx + dy * dy) + 0.5);
    }
    case WeightKind::Ceil2D: {
        const double dx = a.x - b.x, dy = a.y - b.y;
        return static_cast<Cost>(std::ceil(std::sqrt(dx * dx + dy * dy)));
    }
    case WeightKind::Geo: return geo_distance(a, b);
    case WeightKind::Att: return att_distance(a, b);
    case WeightKind::Explicit: break;
    }
    return 0;
}

Cost Instance::edge_cost(Vertex i, Vertex j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "edge (" + std::to_string(i) + "," + std::to_string(j) + ") with n=" +
                        std::to_string(n_));
    }
    if (i == j) throw Error(ErrorCode::SelfLoop, "vertex " + std::to_string(i));
    return cost(i, j);
}

void Instance::scan_zero_cost_edges() {
    // GEO costs are >= 1 by construction; the other coordinate metrics are zero
    // only for points closer than 0.5 in x, so a sorted sweep finds them all.
    if (kind_ == WeightKind::Geo || kind_ == WeightKind::Explicit) return;
    std::vector<Vertex> by_x(static_cast<std::size_t>(n_));
    std::iota(by_x.begin(), by_x.end(), 0);
    std::sort(by_x.begin(), by_x.end(), [&](Vertex a, Vertex b) {
        return coords_[static_cast<std::size_t>(a)].x < coords_[static_cast<std::size_t>(b)].x;
    });
    std::size_t zero = 0;
    Vertex ex_i = -1, ex_j = -1;
    for (std::size_t p = 0; p < by_x.size(); ++p) {
        const double x = coords_[static_cast<std::size_t>(by_x[p])].x;
        for (std::size_t q = p + 1; q < by_x.size(); ++q) {
            if (coords_[static_cast<std::size_t>(by_x[q])].x - x >= 0.5) break;
            if (cost(by_x[p], by_x[q]) == 0) {
                if (zero++ == 0) {
                    ex_i = std::min(by_x[p], by_x[q]);
                    ex_j = std::max(by_x[p], by_x[q]);
                }
            }
        }
    }
    if (zero > 0) {
        warnings_.push_back(std::to_string(zero) + " zero-cost edge(s), e.g. (" +
                            std::to_string(ex_i + 1) + "," + std::to_string(ex_j + 1) + ")");
    }
}

Instance Instance::from_coords(std::string name, WeightKind kind, std::vector<Point> coords,
                               std::optional<Cost> known_optimum) {
    if (kind == WeightKind::Explicit) {
        throw Error(ErrorCode::UnsupportedWeightType, "EXPLICIT instances need a matrix");
    }
    if (coords.size() < 3) {
        throw Error(ErrorCode::DimensionMismatch,
                    "need at least 3 vertices, got " + std::to_string(coords.size()));
    }
    Instance inst;
    inst.name_ = std::move(name);
    inst.n_ = static_cast<Vertex>(coords.size());
    inst.kind_ = kind;
    inst.coords_ = std::move(coords);
    inst.optimum_ = known_optimum;
    inst.scan_zero_cost_edges();
    return inst;
}

Instance Instance::from_matrix(std::string name, std::vector<Cost> matrix,
                               std::optional<Cost> known_optimum) {
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(matrix.size()))));
    if (n * n != matrix.size()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
    }
    if (n < 3) {
        throw Error(ErrorCode::DimensionMismatch, "need at least 3 vertices, got " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        matrix[i * n + i] = 0;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (matrix[i * n + j] != matrix[j * n + i]) {
                throw Error(ErrorCode::NonSymmetricMatrix,
                            "c(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") != c(" +
                                std::to_string(j + 1) + "," + std::to_string(i + 1) + ")");
            }
            if (matrix[i * n + j] <= 0) {
                throw Error(ErrorCode::NonPositiveCost,
                            "c(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                ") = " + std::to_string(matrix[i * n + j]));
            }
        }
    }
    Instance inst;
    inst.name_ = std::move(name);
    inst.n_ = static_cast<Vertex>(n);
    inst.kind_ = WeightKind::Explicit;
    inst.matrix_ = std::move(matrix);
    inst.optimum_ = known_optimum;
    return inst;
}

// ---------------------------------------------------------------------------
// TSPLIB parsing

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class T>
bool parse_number(std::string_view tok, T& out) {
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

bool starts_numeric(std::string_view line) {
    const auto t = trim(line);
    if (t.empty()) return false;
    const char c = t.front();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
}

enum class MatrixFormat { Full, UpperRow, LowerRow, UpperDiagRow, LowerDiagRow };

MatrixFormat matrix_format(const std::string& fmt) {
    if (fmt == "FULL_MATRIX") return MatrixFormat::Full;
    if (fmt == "UPPER_ROW") return MatrixFormat::UpperRow;
    if (fmt == "LOWER_ROW") return MatrixFormat::LowerRow;
    if (fmt == "UPPER_DIAG_ROW") return MatrixFormat::UpperDiagRow;
    if (fmt == "LOWER_DIAG_ROW") return MatrixFormat::LowerDiagRow;
    throw Error(ErrorCode::UnsupportedWeightType, "EDGE_WEIGHT_FORMAT " + fmt);
}

std::size_t expected_entries(MatrixFormat f, std::size_t n) {
    switch (f) {
    case MatrixFormat::Full: return n * n;
    case MatrixFormat::UpperRow:
    case MatrixFormat::LowerRow: return n * (n - 1) / 2;
    case MatrixFormat::UpperDiagRow:
    case MatrixFormat::LowerDiagRow: return n * (n + 1) / 2;
    }
    return 0;
}

std::vector<Cost> expand_matrix(MatrixFormat f, std::size_t n, const std::vector<Cost>& w) {
    std::vector<Cost> m(n * n, 0);
    std::size_t k = 0;
    auto set = [&](std::size_t i, std::size_t j) {
        m[i * n + j] = w[k];
        m[j * n + i] = w[k];
        ++k;
    };
    switch (f) {
    case MatrixFormat::Full: return w;
    case MatrixFormat::UpperRow:
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) set(i, j);
        break;
    case MatrixFormat::LowerRow:
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) set(i, j);
        break;
    case MatrixFormat::UpperDiagRow:
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) set(i, j);
        break;
    case MatrixFormat::LowerDiagRow:
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) set(i, j);
        break;
    }
    return m;
}

} // namespace

Instance parse_tsplib(std::string_view text) {
    std::string name = "unnamed";
    std::optional<long long> dimension;
    std::optional<WeightKind> kind;
    std::string format;
    std::vector<std::string_view> coord_lines;
    std::vector<std::string_view> weight_tokens;
    bool saw_coords = false, saw_weights = false;

    enum class Section { Header, Coords, Weights, Skip } section = Section::Header;

    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const auto line = trim(raw);
        if (line.empty()) continue;

        if (section != Section::Header && starts_numeric(line)) {
            if (section == Section::Coords) {
                coord_lines.push_back(line);
            } else if (section == Section::Weights) {
                for (auto tok : split_ws(line)) weight_tokens.push_back(tok);
            }
            continue;
        }

        std::string_view key = line, value;
        if (const auto colon = line.find(':'); colon != std::string_view::npos) {
            key = trim(line.substr(0, colon));
            value = trim(line.substr(colon + 1));
        } else if (const auto sp = line.find_first_of(" \t"); sp != std::string_view::npos) {
            key = trim(line.substr(0, sp));
            value = trim(line.substr(sp + 1));
        }
        const std::string ukey = upper(key);
        section = Section::Header;

        if (ukey == "EOF") break;
        if (ukey == "NAME") {
            name = std::string(value);
        } else if (ukey == "TYPE") {
            const auto t = upper(value);
            if (t != "TSP") throw Error(ErrorCode::UnsupportedWeightType, "problem TYPE " + t);
        } else if (ukey == "DIMENSION") {
            long long d = 0;
            if (!parse_number(value, d)) {
                throw Error(ErrorCode::MalformedHeader,
                            "line " + std::to_string(line_no) + ": bad DIMENSION '" + std::string(value) + "'");
            }
            dimension = d;
        } else if (ukey == "EDGE_WEIGHT_TYPE") {
            const auto t = upper(value);
            if (t == "EUC_2D") kind = WeightKind::Euc2D;
            else if (t == "CEIL_2D") kind = WeightKind::Ceil2D;
            else if (t == "GEO") kind = WeightKind::Geo;
            else if (t == "ATT") kind = WeightKind::Att;
            else if (t == "EXPLICIT") kind = WeightKind::Explicit;
            else throw Error(ErrorCode::UnsupportedWeightType, "EDGE_WEIGHT_TYPE " + t);
        } else if (ukey == "EDGE_WEIGHT_FORMAT") {
            format = upper(value);
        } else if (ukey == "NODE_COORD_SECTION") {
            section = Section::Coords;
            saw_coords = true;
        } else if (ukey == "EDGE_WEIGHT_SECTION") {
            section = Section::Weights;
            saw_weights = true;
        } else if (ukey == "DISPLAY_DATA_SECTION" || ukey == "TOUR_SECTION" ||
                   ukey == "FIXED_EDGES_SECTION") {
            section = Section::Skip;
        } else if (ukey == "COMMENT" || ukey == "DISPLAY_DATA_TYPE" || ukey == "NODE_COORD_TYPE" ||
                   ukey == "CAPACITY") {
            // ignored
        } else {
            throw Error(ErrorCode::MalformedHeader,
                        "line " + std::to_string(line_no) + ": unknown keyword '" + std::string(key) + "'");
        }
    }

    if (!dimension) throw Error(ErrorCode::MalformedHeader, "missing DIMENSION");
    if (!kind) throw Error(ErrorCode::MalformedHeader, "missing EDGE_WEIGHT_TYPE");
    if (*dimension < 3) {
        throw Error(ErrorCode::DimensionMismatch,
                    "DIMENSION " + std::to_string(*dimension) + " is below 3");
    }
    const auto n = static_cast<std::size_t>(*dimension);

    if (*kind == WeightKind::Explicit) {
        if (!saw_weights) throw Error(ErrorCode::MalformedHeader, "missing EDGE_WEIGHT_SECTION");
        if (format.empty()) throw Error(ErrorCode::MalformedHeader, "missing EDGE_WEIGHT_FORMAT");
        const auto fmt = matrix_format(format);
        if (weight_tokens.size() != expected_entries(fmt, n)) {
            throw Error(ErrorCode::DimensionMismatch,
                        format + " with DIMENSION " + std::to_string(n) + " needs " +
                            std::to_string(expected_entries(fmt, n)) + " weights, got " +
                            std::to_string(weight_tokens.size()));
        }
        std::vector<Cost> w;
        w.reserve(weight_tokens.size());
        for (auto tok : weight_tokens) {
            Cost v = 0;
            if (!parse_number(tok, v)) {
                double d = 0.0;
                if (!parse_number(tok, d) || d != std::floor(d)) {
                    throw Error(ErrorCode::MalformedHeader, "non-integer weight '" + std::string(tok) + "'");
                }
                v = static_cast<Cost>(d);
            }
            w.push_back(v);
        }
        return Instance::from_matrix(std::move(name), expand_matrix(fmt, n, w));
    }

    if (!saw_coords) throw Error(ErrorCode::MalformedHeader, "missing NODE_COORD_SECTION");
    if (coord_lines.size() != n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "DIMENSION " + std::to_string(n) + " but " + std::to_string(coord_lines.size()) +
                        " coordinate lines");
    }
    std::vector<Point> coords(n);
    std::vector<bool> seen(n, false);
    for (auto line : coord_lines) {
        const auto toks = split_ws(line);
        long long id = 0;
        Point p;
        if (toks.size() < 3 || !parse_number(toks[0], id) || !parse_number(toks[1], p.x) ||
            !parse_number(toks[2], p.y)) {
            throw Error(ErrorCode::MalformedHeader, "bad coordinate line '" + std::string(line) + "'");
        }
        if (id < 1 || static_cast<std::size_t>(id) > n || seen[static_cast<std::size_t>(id - 1)]) {
            throw Error(ErrorCode::DimensionMismatch, "node id " + std::to_string(id) + " out of range or repeated");
        }
        seen[static_cast<std::size_t>(id - 1)] = true;
        coords[static_cast<std::size_t>(id - 1)] = p;
    }
    return Instance::from_coords(std::move(name), *kind, std::move(coords));
}

Instance load_tsplib(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_tsplib(ss.str());
}

std::string to_tsplib(const Instance& inst) {
    std::ostringstream out;
    const auto n = inst.dimension();
    out << "NAME : " << inst.name() << "\n";
    out << "TYPE : TSP\n";
    out << "DIMENSION : " << n << "\n";
    out << "EDGE_WEIGHT_TYPE : " << to_string(inst.weight_kind()) << "\n";
    if (inst.weight_kind() == WeightKind::Explicit) {
        out << "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n";
        out << "EDGE_WEIGHT_SECTION\n";
        for (Vertex i = 0; i < n; ++i) {
            for (Vertex j = 0; j < n; ++j) {
                if (j > 0) out << ' ';
                out << (i == j ? Cost{0} : inst.cost(i, j));
            }
            out << '\n';
        }
    } else {
        out << "NODE_COORD_SECTION\n";
        char buf[96];
        for (Vertex i = 0; i < n; ++i) {
            const auto& p = inst.coords()[static_cast<std::size_t>(i)];
            std::snprintf(buf, sizeof buf, "%d %.17g %.17g\n", i + 1, p.x, p.y);
            out << buf;
        }
    }
    out << "EOF\n";
    return out.str();
}

void require_permutation(std::span<const Vertex> order, Vertex n) {
    if (order.size() != static_cast<std::size_t>(n)) {
        throw Error(ErrorCode::NotAPermutation,
                    "expected " + std::to_string(n) + " vertices, got " + std::to_string(order.size()));
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (Vertex v : order) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
            throw Error(ErrorCode::NotAPermutation, "vertex " + std::to_string(v) + " out of range or repeated");
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Cost tour_cost(const Instance& inst, std::span<const Vertex> order) {
    require_permutation(order, inst.dimension());
    Cost total = 0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) total += inst.cost(order[i], order[i + 1]);
    return total + inst.cost(order.back(), order.front());
}

OptimaRegistry parse_optima(std::string_view text) {
    OptimaRegistry reg;
    std::size_t pos = 0, line_no = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto toks = split_ws(line);
        if (toks.empty()) continue;
        Cost value = 0;
        if (toks.size() != 2 || !parse_number(toks[1], value) || value <= 0) {
            throw Error(ErrorCode::MalformedHeader,
                        "optima line " + std::to_string(line_no) + ": expected 'name positive-cost'");
        }
        reg.insert_or_assign(std::string(toks[0]), value);
    }
    return reg;
}

OptimaRegistry load_optima(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_optima(ss.str());
}

} // namespace lkgain
