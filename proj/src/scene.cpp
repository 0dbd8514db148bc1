#include "risee/scene.hpp"

#include <cmath>
#include <stdexcept>

namespace risee {

ElementGrid build_ris_grid(std::size_t n_side, double spacing) {
    if (n_side < 1) throw std::invalid_argument("build_ris_grid: n_side must be >= 1");
    if (!(spacing > 0.0)) throw std::invalid_argument("build_ris_grid: spacing must be > 0");

    ElementGrid grid;
    grid.spacing = spacing;
    grid.rows = n_side;
    grid.cols = n_side;
    grid.coordinates.reserve(n_side * n_side);

    const double half = 0.5 * static_cast<double>(n_side - 1);
    for (std::size_t i = 0; i < n_side; ++i) {
        const double z = (static_cast<double>(i) - half) * spacing;
        for (std::size_t j = 0; j < n_side; ++j) {
            const double y = (static_cast<double>(j) - half) * spacing;
            grid.coordinates.push_back({0.0, y, z});
        }
    }
    return grid;
}

ElementGrid build_fbs_array(const Coordinate& center, std::size_t m, double spacing) {
    if (m < 1) throw std::invalid_argument("build_fbs_array: m must be >= 1");
    if (!(spacing > 0.0)) throw std::invalid_argument("build_fbs_array: spacing must be > 0");

    ElementGrid grid;
    grid.spacing = spacing;
    grid.rows = 1;
    grid.cols = m;
    grid.coordinates.reserve(m);

    const double half = 0.5 * static_cast<double>(m - 1);
    for (std::size_t j = 0; j < m; ++j) {
        const double y = center.y + (static_cast<double>(j) - half) * spacing;
        grid.coordinates.push_back({center.x, y, center.z});
    }
    return grid;
}

std::vector<Coordinate> sample_positions(const Region& region, std::size_t count, Rng& rng) {
    if (count < 1) throw std::invalid_argument("sample_positions: count must be >= 1");
    if (region.x.length() < 0.0 || region.y.length() < 0.0 || region.z.length() < 0.0)
        throw std::invalid_argument("sample_positions: empty region");

    std::vector<Coordinate> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Coordinate c;
        c.x = region.x.lo + region.x.length() * rng.uniform();
        c.y = region.y.lo + region.y.length() * rng.uniform();
        c.z = region.z.lo + region.z.length() * rng.uniform();
        out.push_back(c);
    }
    return out;
}

double aperture_length(const ElementGrid& grid) {
    if (grid.coordinates.empty()) throw std::invalid_argument("aperture_length: empty grid");

    double best = 0.0;
    const auto& c = grid.coordinates;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            const double dx = c[i].x - c[j].x;
            const double dy = c[i].y - c[j].y;
            const double dz = c[i].z - c[j].z;
            const double d2 = dx * dx + dy * dy + dz * dz;
            if (d2 > best) best = d2;
        }
    }
    return std::sqrt(best);
}

double fraunhofer_distance(double aperture, double wavelength) {
    if (!(wavelength > 0.0))
        throw std::invalid_argument("fraunhofer_distance: wavelength must be > 0");
    if (aperture < 0.0) throw std::invalid_argument("fraunhofer_distance: aperture must be >= 0");
    return 2.0 * aperture * aperture / wavelength;
}

bool near_field_criterion(double ris_aperture, double wavelength, double r1, double r2) {
    if (!(r1 > 0.0) || !(r2 > 0.0))
        throw std::invalid_argument("near_field_criterion: distances must be > 0");
    const double effective = r1 * r2 / (r1 + r2);
    return fraunhofer_distance(ris_aperture, wavelength) >= effective;
}

} // namespace risee
