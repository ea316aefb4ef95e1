//! Primes, factorization, Jacobi symbols, the two-prime polynomial family
//! and the counting functions built on them.

mod counting;
mod family;
mod jacobi;
mod poly;
mod primes;

pub use counting::{
    avoids_j, count_exceptionals, count_p2_ratio, count_poly, hl_constant, in_p2, landau_normalizer,
    nu_f, ExceptionalCounts, HlConstant, PolyCountMode,
};
pub use family::{family_eval, family_point, family_polys, family_scan, FamilyEntry, FamilyPoint};
pub use jacobi::jacobi;
pub use poly::Poly;
pub use primes::{factorize, for_each_prime, is_prime, is_prime_u128, primes_up_to, Factorization};
