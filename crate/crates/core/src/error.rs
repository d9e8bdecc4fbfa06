use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("n must be a positive integer, got 0")]
    Zero,

    #[error("{n} is not squarefree: {p}^2 divides it")]
    NotSquarefree { n: u64, p: u64 },

    #[error("{n} exceeds the supported range (max {max})")]
    TooLarge { n: u64, max: u64 },

    #[error("{k} is not a unit modulo {modulus}")]
    NotAUnit { k: u64, modulus: u64 },

    #[error("moduli {m1} and {m2} are not coprime")]
    NonCoprimeModuli { m1: u64, m2: u64 },

    #[error("invalid group parameters (d={d}, e={e}, k={k}): {reason}")]
    InvalidSpec { d: u64, e: u64, k: u64, reason: String },

    #[error("{k} is not invertible modulo {modulus}")]
    NonInvertibleK { k: u64, modulus: u64 },

    #[error("holomorph element has tau-exponent {b}, expected 1")]
    PreconditionB1 { b: u64 },

    #[error("enumeration of {required} elements exceeds the budget of {budget}")]
    BudgetExceeded { required: u64, budget: u64 },

    #[error("internal consistency check failed: {0}")]
    ConsistencyFailure(String),

    #[error("primes must be distinct, ascending primes: {0:?}")]
    NotDistinctPrimes(Vec<u64>),

    #[error("congruence p{j} = 1 (mod p{i}) fails for p{i}={pi}, p{j}={pj}")]
    CongruenceConditionUnmet { i: usize, j: usize, pi: u64, pj: u64 },
}
