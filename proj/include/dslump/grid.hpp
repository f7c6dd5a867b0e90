#ifndef DSLUMP_GRID_HPP
#define DSLUMP_GRID_HPP

#include <cstddef>

namespace dslump {

/// Periodic rectangular grid approximating R^2. Samples are row-major with x
/// fastest: index(ix, iz) = iz*nx + ix. Mode (0,0) carries k = (0,0) and the
/// wavenumber layout is the standard bi-periodic one (negative frequencies in
/// the upper half of each axis).
class SpectralGrid {
  public:
    SpectralGrid() = default;
    SpectralGrid(int nx, int nz, double lx, double lz);

    int nx() const { return nx_; }
    int nz() const { return nz_; }
    double lx() const { return lx_; }
    double lz() const { return lz_; }
    double hx() const { return lx_ / nx_; }
    double hz() const { return lz_ / nz_; }
    double cell() const { return hx() * hz(); }
    double area() const { return lx_ * lz_; }
    std::size_t size() const { return static_cast<std::size_t>(nx_) * nz_; }

    std::size_t index(int ix, int iz) const {
        return static_cast<std::size_t>(iz) * nx_ + ix;
    }

    // signed mode number: 0..n/2-1, then -n/2..-1
    int mode_x(int ix) const { return ix < nx_ / 2 ? ix : ix - nx_; }
    int mode_z(int iz) const { return iz < nz_ / 2 ? iz : iz - nz_; }
    double k1(int ix) const;
    double k2(int iz) const;
    double x(int ix) const;  // periodic coordinate; index 0 at the origin
    double z(int iz) const;

    /// Grid with the same box and doubled point counts (dealiasing partner).
    SpectralGrid refined() const { return {2 * nx_, 2 * nz_, lx_, lz_}; }

    bool operator==(const SpectralGrid& o) const = default;

  private:
    int nx_ = 0, nz_ = 0;
    double lx_ = 0.0, lz_ = 0.0;
};

}  // namespace dslump

#endif
