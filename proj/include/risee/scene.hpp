#ifndef RISEE_SCENE_HPP
#define RISEE_SCENE_HPP

#include <cstddef>
#include <vector>

#include "risee/rng.hpp"

namespace risee {

struct Coordinate {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Planar or linear lattice of antenna/reflector elements. Ordering is
// row-major over (rows, cols) and every consumer of element indices
// (channel rows, RIS state grids, beamforming vectors) relies on it.
struct ElementGrid {
    std::vector<Coordinate> coordinates;
    double spacing = 0.0;
    std::size_t rows = 0;
    std::size_t cols = 0;

    std::size_t size() const { return coordinates.size(); }
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
};

struct Region {
    Interval x;
    Interval y;
    Interval z;
};

struct Scenario {
    ElementGrid ris;              // sqrt(N) x sqrt(N), plane x = 0, centered at origin
    ElementGrid fbs;              // 1 x M line along y
    std::vector<Coordinate> ues;  // K user positions
    double carrier_frequency = 0.0;  // Hz
    double wavelength = 0.0;         // m

    std::size_t n_ris() const { return ris.size(); }
    std::size_t n_fbs() const { return fbs.size(); }
    std::size_t n_ues() const { return ues.size(); }
};

// Square grid of n_side x n_side elements in the x = 0 plane spanning y and
// z, centered at the origin.
ElementGrid build_ris_grid(std::size_t n_side, double spacing);

// m collinear elements along the y axis, centered at `center`.
ElementGrid build_fbs_array(const Coordinate& center, std::size_t m, double spacing);

// Uniform positions over the region; deterministic for a fixed stream.
std::vector<Coordinate> sample_positions(const Region& region, std::size_t count, Rng& rng);

// Maximum pairwise element distance (the diagonal for a square grid).
double aperture_length(const ElementGrid& grid);

// R_F = 2 D^2 / lambda
double fraunhofer_distance(double aperture, double wavelength);

// true iff 2 D^2 / lambda >= r1 r2 / (r1 + r2)
bool near_field_criterion(double ris_aperture, double wavelength, double r1, double r2);

} // namespace risee

#endif
