#pragma once

#include "klab/arch.hpp"
#include "klab/assembly.hpp"

namespace klab {
namespace presets {

// Standard archimedean test data used by the command line defaults and the
// verification suites: bump windows keeping det T in [0.30, 1.95], the
// f2-corner pinning t near 1 and away from 0.

inline arch::MatrixTestFn f1() {
    return {arch::Profile1D::bump(1.0, 0.35), arch::Profile1D::bump(0.0, 0.35),
            arch::Profile1D::bump(0.0, 0.35), arch::Profile1D::bump(1.0, 0.35)};
}

inline arch::MatrixTestFn f2() {
    return {arch::Profile1D::bump(-1.0, 0.35), arch::Profile1D::bump(0.0, 0.4),
            arch::Profile1D::bump(1.0, 0.25), arch::Profile1D::bump(1.0, 0.35)};
}

inline arch::Profile1D V() { return arch::Profile1D::bump(1.2, 1.1); }

inline arch::ArchAlpha alpha0() {
    return {Mat2<double>{0.3, -0.2, 0.25, 0.35}, 0.4, -0.3};
}

inline arch::QuadratureSpec quad() { return {}; }

// Coarser per-term quadrature for the geometric-side sweeps.
inline arch::QuadratureSpec quad_geomside() {
    arch::QuadratureSpec q;
    q.base_nodes = 12;
    q.max_nodes = 72;
    q.t_nodes = 12;
    q.d_grid = 96;
    q.fourier_modes = 32;
    return q;
}

} // namespace presets
} // namespace klab
