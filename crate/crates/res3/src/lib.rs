//! Exact-arithmetic toolkit for classifying singular-fibre configurations on
//! rational elliptic surfaces in characteristic three.
//!
//! The library is organised in layers:
//!
//! * [`ff`]: arithmetic in GF(3) and its extensions GF(3^k), k <= 12.
//! * [`upoly`]: univariate polynomials over those fields, with a
//!   characteristic-3-aware squarefree decomposition and full factorization.
//! * [`surface`]: Weierstrass models `y^2 = x^3 + b2*x^2 - b4*x + b6` over
//!   GF(3^k)[t], their discriminants, base transformations, and the degree-12
//!   discriminant normal forms.
//! * [`kodaira`]: Tate's algorithm at any place of the base line (including
//!   infinity) and the fibre-invariant tables.
//! * [`lattice`]: A/D/E root lattices and the E8 embedding oracle backing the
//!   lattice exclusion lemma.
//! * [`witness`]: the machine-readable witness database, its verifier, and
//!   bounded witness searches.
//! * [`census`]: enumeration of the configuration space, the exclusion
//!   engine, and the census/comparison reports.

pub mod census;
pub mod ff;
pub mod kodaira;
pub mod lattice;
pub mod surface;
pub mod upoly;
pub mod witness;
