#pragma once

#include <cstdint>
#include <vector>

#include "klab/arch.hpp"
#include "klab/geometry.hpp"
#include "klab/rat.hpp"

namespace klab {
namespace assembly {

// ---------------------------------------------------------------------------
// Rational points of the quadric b^{-1} det T = t1 t2 with bounded height.
// ---------------------------------------------------------------------------

struct HeightWindow {
    std::int64_t height = 1;
    std::int64_t cmax = 1;
};

// All rationals q != 0 with max(|num|, den) <= h, in lowest terms.
std::vector<Rat> rationals_of_height(std::int64_t h);

// Every (b, T, t1, t2) with all coordinate heights <= h satisfying the
// constraint exactly, deduplicated.
std::vector<QuadricPoint<Rat>> enumerate_w(std::int64_t h);

// The integrality indicator of Theorem-side terms at S = {oo}: g.(b, alpha)
// must have unit first component and integral remaining coordinates.
bool term_indicator(const GroupElem<Rat>& g, const Rat& b, const AlphaPoint<Rat>& alpha);

// ---------------------------------------------------------------------------
// Truncated geometric side.
// ---------------------------------------------------------------------------

struct GeomTerm {
    std::int64_t c = 1;
    Rat b;
    AlphaPoint<Rat> alpha;      // the quadric point's dual data
    std::int64_t height = 1;    // height of (b, alpha)
    bool certified = false;
    bool refused = false;
    std::string refusal_reason;
    cplx value{0.0, 0.0};       // |c| * I(f, g.(b, c alpha))
    double error = 0;
};

struct WindowPartial {
    std::int64_t height = 0, cmax = 0;
    cplx certified_sum{0.0, 0.0};
    double aggregated_error = 0;
    std::int64_t certified = 0, refused = 0;
};

struct GeometricSideSpec {
    arch::MatrixTestFn f1, f2;
    arch::Profile1D V = arch::Profile1D::bump(1.0, 0.9);
    GroupElem<Rat> g = GroupElem<Rat>::identity();
    HeightWindow window;
    arch::QuadratureSpec quad;
    double zeta_norm = 1.0;
    int threads = 2;
    std::int64_t max_rows = 20000; // cap on per-term rows kept in the report
};

struct GeometricSideReport {
    std::vector<GeomTerm> terms;        // indicator-passing terms (capped)
    std::vector<WindowPartial> trace;   // partial sums on nested windows
    cplx certified_sum{0.0, 0.0};
    double aggregated_error = 0;
    std::int64_t n_terms = 0, n_certified = 0, n_refused = 0;
    bool rows_capped = false;
};

// Sum over c <= cmax and indicator-passing quadric points of height <= H of
// |c| I(f, g.(b, c alpha)), with per-term certification and a trace over the
// nested windows (1,1), (2,2), (4,4), ... up to the requested one.
GeometricSideReport geometric_side(const GeometricSideSpec& spec);

// ---------------------------------------------------------------------------
// First-cell structure checks.
// ---------------------------------------------------------------------------

struct Sigma1Report {
    bool relevance_unique = false;  // one y2 per (b, c, y1)
    bool integrand_match = false;   // collapsed one-variable form agrees pointwise
    bool stabilizer_fixes = false;  // n1^{-1} delta n2 = delta exactly
    std::int64_t relevant_count = 0;
    std::int64_t samples = 0;
};

Sigma1Report sigma1_structure_check(const arch::MatrixTestFn& f2, std::int64_t window_height,
                                    int samples, std::uint64_t seed);

} // namespace assembly
} // namespace klab
