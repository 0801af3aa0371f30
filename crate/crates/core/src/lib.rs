//! Exact workbench for monic polynomials over imaginary quadratic orders.
//!
//! The scalar layer (`Z[θ]` with `θ² + k = 0` or `θ² − θ + (1+k)/4 = 0`)
//! is generic over a signed integer type, so the same code runs on `i64`
//! for speed and `BigInt` when coordinates outgrow machine words. On top
//! of it sit polynomials with exact division and height data, two
//! irreducibility engines that must agree, Mahler-measure numerics with
//! exact inequality checks, and counting of additive splittings into
//! irreducible parts over growing coefficient bounds.
//!
//! ```
//! use goldbach_core::{make_ring, parse_poly, BoundSpec, Engine, Poly};
//!
//! let ring = make_ring(2).unwrap();
//! let f: Poly = parse_poly("x^2", ring).unwrap();
//! let tally =
//!     goldbach_core::tally_pairs(&f, &BoundSpec::boxed(1), Engine::Fast, 1 << 20).unwrap();
//! assert_eq!((tally.total, tally.representations), (9, 8));
//! ```

pub mod error;
pub mod goldbach;
pub mod irreducibility;
pub mod mahler;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod scalar;

pub use error::{Error, Result};
pub use goldbach::{
    asymptotic_fit, count_representations, count_representations_with_budget, decompositions,
    fit_log_log, sweep, t_formula_box, tally_pairs, total_pairs, FitSummary, PairTally,
    SweepRecord,
};
pub use irreducibility::{
    count_reducible_fixed_lead, count_reducible_free, is_irreducible, is_irreducible_with_budget,
    linear_roots, Engine, Verdict, DEFAULT_BUDGET,
};
pub use mahler::{
    check_height_bounds, check_landau, check_product_height, mahler_measure,
    mahler_measure_quadrature, mahler_report, run_suites, CheckOutcome, MahlerReport,
    ProductHeightOutcome, Real, SuiteConfig, SuiteOutcome, COMPARISON_SLACK, GENERATOR_ID,
    QUADRATURE_TOL, ROOT_RESIDUAL_TOL,
};
pub use parse::{parse_element, parse_poly};
pub use poly::OkPolynomial;
pub use ring::{make_ring, BoundMode, BoundSpec, Branch, OkElement, RingSpec};
pub use scalar::Coord;

use num_bigint::BigInt;

/// Ring element with machine-word coordinates.
pub type Element = OkElement<i64>;
/// Polynomial with machine-word coordinates.
pub type Poly = OkPolynomial<i64>;
/// Ring element with arbitrary-precision coordinates.
pub type BigElement = OkElement<BigInt>;
/// Polynomial with arbitrary-precision coordinates.
pub type BigPoly = OkPolynomial<BigInt>;
