//! Chinese remaindering over arbitrary (not necessarily coprime) moduli.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// `y ≡ residue (mod modulus)` with `modulus >= 2` and `residue < modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Congruence {
    residue: BigUint,
    modulus: BigUint,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("modulus {0} is below 2")]
    ModulusTooSmall(BigUint),
    #[error("residue {residue} is not reduced modulo {modulus}")]
    ResidueOutOfRange { residue: BigUint, modulus: BigUint },
}

impl Congruence {
    pub fn new(
        residue: impl Into<BigUint>,
        modulus: impl Into<BigUint>,
    ) -> Result<Self, CongruenceError> {
        let residue = residue.into();
        let modulus = modulus.into();
        if modulus < BigUint::from(2u32) {
            return Err(CongruenceError::ModulusTooSmall(modulus));
        }
        if residue >= modulus {
            return Err(CongruenceError::ResidueOutOfRange { residue, modulus });
        }
        Ok(Congruence { residue, modulus })
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn holds_for(&self, y: &BigUint) -> bool {
        y % &self.modulus == self.residue
    }
}

/// A finite list of congruences in one unknown.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularSystem {
    constraints: Vec<Congruence>,
}

impl ModularSystem {
    pub fn new(constraints: Vec<Congruence>) -> Self {
        ModularSystem { constraints }
    }

    pub fn constraints(&self) -> &[Congruence] {
        &self.constraints
    }

    pub fn push(&mut self, c: Congruence) {
        self.constraints.push(c);
    }

    pub fn is_satisfied_by(&self, y: &BigUint) -> bool {
        self.constraints.iter().all(|c| c.holds_for(y))
    }
}

/// The full solution set `{ residue + t * modulus : t >= 0 }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrtSolution {
    pub residue: BigUint,
    pub modulus: BigUint,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CrtError {
    /// Constraints `first` and `second` (indices into the system) have no
    /// common solution.
    #[error("constraints {first} and {second} are inconsistent")]
    Inconsistent { first: usize, second: usize },
}

fn merge(
    r1: &BigUint,
    m1: &BigUint,
    r2: &BigUint,
    m2: &BigUint,
) -> Option<(BigUint, BigUint)> {
    let (r1i, m1i, r2i, m2i) = (
        BigInt::from(r1.clone()),
        BigInt::from(m1.clone()),
        BigInt::from(r2.clone()),
        BigInt::from(m2.clone()),
    );
    let egcd = m1i.extended_gcd(&m2i);
    let g = egcd.gcd;
    let diff = &r2i - &r1i;
    if !(&diff % &g).is_zero() {
        return None;
    }
    let m2_over_g = &m2i / &g;
    // egcd.x * m1 ≡ g (mod m2), so x is the inverse of m1/g modulo m2/g.
    let t = ((&diff / &g) * egcd.x).mod_floor(&m2_over_g);
    let lcm = &m1i * &m2_over_g;
    let r = (r1i + m1i * t).mod_floor(&lcm);
    Some((
        r.to_biguint().expect("mod_floor is non-negative"),
        lcm.to_biguint().expect("lcm is positive"),
    ))
}

/// Solve `sys` by pairwise merging. An empty system yields `(0, 1)`.
///
/// A system of congruences is solvable iff every pair is, so on failure a
/// conflicting pair always exists and is reported.
pub fn crt_solve(sys: &ModularSystem) -> Result<CrtSolution, CrtError> {
    let mut residue = BigUint::zero();
    let mut modulus = BigUint::one();
    for (j, c) in sys.constraints.iter().enumerate() {
        match merge(&residue, &modulus, &c.residue, &c.modulus) {
            Some((r, m)) => {
                residue = r;
                modulus = m;
            }
            None => {
                let first = sys.constraints[..j]
                    .iter()
                    .position(|e| merge(&e.residue, &e.modulus, &c.residue, &c.modulus).is_none())
                    .expect("a pairwise conflict exists when the system is inconsistent");
                return Err(CrtError::Inconsistent { first, second: j });
            }
        }
    }
    Ok(CrtSolution { residue, modulus })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(pairs: &[(u64, u64)]) -> ModularSystem {
        ModularSystem::new(
            pairs
                .iter()
                .map(|&(r, m)| Congruence::new(r, m).unwrap())
                .collect(),
        )
    }

    #[test]
    fn three_prime_system() {
        let s = crt_solve(&sys(&[(1, 2), (2, 3), (4, 5)])).unwrap();
        assert_eq!(s.residue, BigUint::from(29u32));
        assert_eq!(s.modulus, BigUint::from(30u32));
    }

    #[test]
    fn conflicting_pair() {
        assert_eq!(
            crt_solve(&sys(&[(0, 2), (1, 2)])),
            Err(CrtError::Inconsistent {
                first: 0,
                second: 1
            })
        );
        assert_eq!(
            crt_solve(&sys(&[(1, 3), (1, 4), (0, 6)])),
            Err(CrtError::Inconsistent {
                first: 0,
                second: 2
            })
        );
    }

    #[test]
    fn single_and_empty() {
        let s = crt_solve(&sys(&[(1, 2)])).unwrap();
        assert_eq!((s.residue, s.modulus), (1u32.into(), 2u32.into()));
        let s = crt_solve(&ModularSystem::default()).unwrap();
        assert_eq!((s.residue, s.modulus), (0u32.into(), 1u32.into()));
    }

    #[test]
    fn non_coprime_merge() {
        let s = crt_solve(&sys(&[(3, 4), (5, 6)])).unwrap();
        assert_eq!((s.residue, s.modulus), (11u32.into(), 12u32.into()));
    }

    #[test]
    fn congruence_validation() {
        assert!(matches!(
            Congruence::new(0u32, 1u32),
            Err(CongruenceError::ModulusTooSmall(_))
        ));
        assert!(matches!(
            Congruence::new(5u32, 5u32),
            Err(CongruenceError::ResidueOutOfRange { .. })
        ));
    }
}
