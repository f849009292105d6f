//! Arithmetic of pure cubic fields and DPF types of the fields `Q(ζ_p, d^(1/p))`.
//!
//! For `p = 3` the pure cubic field `L = Q(∛d)` is computed in full: integral
//! basis, prime ideals, fundamental unit, class group, and the invariants
//! `(U, P, A, R)` of `N = L(ζ₃)`. For `p = 5, 7` only the splitting of
//! primes in `Q(ζ_p)` and the admissible type lattices are available.

pub mod arith;
pub mod ball;
pub mod class_group;
pub mod dpf;
pub mod error;
pub mod field;
pub mod ideal;
pub mod linalg;
pub mod minima;
pub mod polymod;
pub mod primes;
pub mod radicand;
pub mod report;
pub mod splitting;
pub mod units;

pub use class_group::{class_group, ClassGroupResult};
pub use dpf::{
    absolute_dpf_dimension, ambiguous_basis, classify, cube_saturate_units, relative_norm, type_lattice,
    zeta_norm_invariant, CoarseType, CohomologyInvariants, SaturatedUnits, SexticElement,
};
pub use error::{Error, Result};
pub use field::{build_field, CubicField, FieldElement};
pub use ideal::{ideal_mul, ideal_norm, ideal_pow, FracIdeal};
pub use primes::{factor_prime, PrimeIdeal};
pub use radicand::{conjugate_radicand, normalize, Radicand, Species};
pub use report::{classify_record, scan, theorem1_report, ClassificationRecord, ScanEntry, Theorem1Report};
pub use splitting::{conductor_p3, mult_order, split_in_cyclotomic, theorem1_radicands, Conductor, SplittingReport};
pub use units::{fundamental_unit, UnitGroupL};
