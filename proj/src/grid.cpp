#include "dslump/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dslump/errors.hpp"

namespace dslump {

namespace {

bool power_of_two(int n) {
    return n > 0 && (n & (n - 1)) == 0;
}

}  // namespace

SpectralGrid::SpectralGrid(int nx, int nz, double lx, double lz)
    : nx_(nx), nz_(nz), lx_(lx), lz_(lz) {
    if (nx < 16 || nz < 16 || !power_of_two(nx) || !power_of_two(nz)) {
        throw DomainError("grid sizes must be powers of two >= 16, got " +
                          std::to_string(nx) + "x" + std::to_string(nz));
    }
    if (!(lx > 0.0) || !(lz > 0.0)) {
        throw DomainError("grid box lengths must be positive");
    }
}

double SpectralGrid::k1(int ix) const {
    return 2.0 * std::numbers::pi / lx_ * mode_x(ix);
}

double SpectralGrid::k2(int iz) const {
    return 2.0 * std::numbers::pi / lz_ * mode_z(iz);
}

double SpectralGrid::x(int ix) const {
    return hx() * mode_x(ix);
}

double SpectralGrid::z(int iz) const {
    return hz() * mode_z(iz);
}

}  // namespace dslump
