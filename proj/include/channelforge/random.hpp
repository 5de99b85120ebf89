#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "channelforge/representations.hpp"

namespace channelforge {

/// Seeded Gaussian source. The uniform stream comes from std::mt19937_64
/// (fully specified by the standard) and is converted with an explicit
/// Box-Muller transform, so a (name, seed) pair identifies the stream
/// exactly across toolchains.
class Rng {
public:
    static constexpr const char* kName = "mt19937_64/box-muller";

    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform();

    /// Standard normal via Box-Muller.
    double gaussian();

    /// Entries are (gaussian + i*gaussian), row-major generation order.
    CMatrix gaussian_matrix(std::size_t rows, std::size_t cols);

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Columns orthonormalized by modified Gram-Schmidt (deterministic);
/// requires rows >= cols.
CMatrix orthonormalize_columns(const CMatrix& g);

/// Haar-like random unitary: orthonormalized square Gaussian matrix.
CMatrix random_unitary(std::size_t dim, Rng& rng);

/// Random CPTP channel as a Stinespring isometry with environment dimension
/// kraus_rank: a (dy*kraus_rank) x dx Gaussian matrix with orthonormalized
/// columns. Requires dy*kraus_rank >= dx and kraus_rank <= dx*dy.
StinespringRep random_cptp(std::size_t dx, std::size_t dy, std::size_t kraus_rank, Rng& rng);

/// Random density matrix G G^dagger / Tr[G G^dagger].
DensityMatrix random_state(std::size_t dim, Rng& rng);

}  // namespace channelforge
