//! Groups of squarefree order and Hopf-Galois structures on cyclic field
//! extensions of squarefree degree.
//!
//! - [`numutil`]: factorisation, `φ`, `μ`, `ω`, multiplicative orders, CRT.
//! - [`grouptypes`]: one canonical `G(d, e, k)` per isomorphism type.
//! - [`hgscount`]: structure counts per type and in total, plus the
//!   three- and four-prime tables.
//! - [`holomorph`]: explicit arithmetic in `Hol(G)` and brute-force oracles.
//! - [`sweep`]: run all of the above against each other over many `n`.
//!
//! ```
//! use hgs_core::{breakdown, factor_squarefree};
//!
//! let n = factor_squarefree(1806).unwrap();
//! let bd = breakdown(&n).unwrap();
//! assert_eq!(bd.types.len(), 30);
//! assert_eq!(bd.total_by_formula, 259);
//! ```

pub mod error;
pub mod grouptypes;
pub mod hgscount;
pub mod holomorph;
pub mod numutil;
pub mod par;
pub mod sweep;

pub use error::{Error, Result};
pub use grouptypes::{centre_commutator, enumerate_types, holder_count, types_per_triple, GroupSpec};
pub use hgscount::{
    breakdown, four_prime_table, hgs_per_type, three_prime_table, total_formula, CountBreakdown,
    FormulaTerm, FourPrimeTable, TableRow, ThreePrimeTable, TypeReport,
};
pub use holomorph::{
    brute_force_structure, count_regular_cyclic_fast, count_regular_cyclic_perm, double_sum_t,
    geometric_sum_s, AutElement, GroupElement, HolElement, Holomorph, OracleReport,
};
pub use numutil::{
    crt_combine, euler_phi, factor_squarefree, mobius, omega, ord_mod, triples_of, v_count,
    FactorizationTriple, SquarefreeFactorization,
};
