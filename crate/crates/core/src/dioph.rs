//! Solver for `A n^x + B y = C n^z` in integers with `x >= 0`.
//!
//! Both twisted-conjugacy reductions end in this three-term equation. The
//! search space is infinite, but only the residues of the powers of `n`
//! modulo `|B|` matter, and those form a finite, eventually periodic
//! sequence. [`solve`] walks through the cases:
//!
//! 1. `B = ±1`: always solvable with `x = z = 0`.
//! 2. `C = 0`: `A n^x ≡ 0 (mod B)` (or `A = 0` when `B = 0`).
//! 3. `B = 0`: `A` and `C` must agree after stripping all factors of `n`.
//! 4. otherwise, with `C = C' n^s`: the residue sets `A·N` and `C'·N`
//!    modulo `|B|` must meet, where `N = {n^i mod |B|}`.
//!
//! Every returned solution is checked against the equation before it is
//! handed back.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::nrat::{check_n, pow_n};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiophInstance {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub n: i64,
}

impl DiophInstance {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        n: i64,
    ) -> Result<Self> {
        check_n(n)?;
        Ok(DiophInstance {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            n,
        })
    }

    /// Exact check of `A n^x + B y = C n^z`. Negative `z` is allowed and
    /// compared over the rationals.
    pub fn holds(&self, sol: &DiophSolution) -> bool {
        let Ok(x) = u32::try_from(sol.x) else {
            return false;
        };
        let lhs = &self.a * pow_n(self.n, x) + &self.b * &sol.y;
        if sol.z >= 0 {
            lhs == &self.c * pow_n(self.n, sol.z as u32)
        } else {
            lhs * pow_n(self.n, sol.z.unsigned_abs() as u32) == self.c
        }
    }
}

/// A solution `(x, y, z)` with `x >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DiophSolution {
    pub x: u64,
    #[serde(serialize_with = "ser_big")]
    pub y: BigInt,
    pub z: i64,
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Splits `v = core · n^s` with `n ∤ core`.
pub fn strip_n(v: &BigInt, n: i64) -> Result<(BigInt, u32)> {
    check_n(n)?;
    if v.is_zero() {
        return Err(Error::Precondition("cannot strip powers of n from 0".into()));
    }
    let nb = BigInt::from(n);
    let mut core = v.clone();
    let mut s = 0u32;
    loop {
        let (q, r) = core.div_rem(&nb);
        if !r.is_zero() {
            break;
        }
        core = q;
        s += 1;
    }
    Ok((core, s))
}

/// The powers `n^0, n^1, …` modulo `|B|`, listed until the first repeat.
/// Position `i` in `residues` holds `n^i mod |B|`, so each residue is
/// stored with its least exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerResidues {
    pub modulus: BigInt,
    pub residues: Vec<BigInt>,
}

impl PowerResidues {
    /// Least `i` with `n^i ≡ r (mod |B|)`.
    pub fn index_of(&self, r: &BigInt) -> Option<usize> {
        let r = r.mod_floor(&self.modulus);
        self.residues.iter().position(|x| *x == r)
    }
}

pub fn power_residues(n: i64, b: &BigInt) -> Result<PowerResidues> {
    check_n(n)?;
    if b.is_zero() {
        return Err(Error::Precondition("power residues modulo 0".into()));
    }
    let modulus = b.abs();
    let residues = match modulus.to_u64() {
        Some(m) => residues_u64(n, m).into_iter().map(BigInt::from).collect(),
        None => residues_big(n, &modulus),
    };
    Ok(PowerResidues { modulus, residues })
}

fn residues_u64(n: i64, m: u64) -> Vec<u64> {
    let step = (n as i128).rem_euclid(m as i128) as u128;
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    let mut cur = 1u128 % m as u128;
    while seen.insert(cur as u64, out.len()).is_none() {
        out.push(cur as u64);
        cur = cur * step % m as u128;
    }
    out
}

fn residues_big(n: i64, m: &BigInt) -> Vec<BigInt> {
    let step = BigInt::from(n).mod_floor(m);
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    let mut cur = BigInt::one().mod_floor(m);
    while seen.insert(cur.clone(), out.len()).is_none() {
        out.push(cur.clone());
        cur = (&cur * &step).mod_floor(m);
    }
    out
}

/// Decides whether `A n^x + B y = C n^z` has a solution with `x >= 0` and
/// returns one if so.
///
/// ```
/// use bs1n::dioph::{solve, DiophInstance};
///
/// let sol = solve(&DiophInstance::new(1, 1, 5, 2).unwrap()).unwrap().unwrap();
/// assert_eq!((sol.x, sol.y.to_string(), sol.z), (0, "4".to_string(), 0));
/// assert!(solve(&DiophInstance::new(3, 0, 5, 2).unwrap()).unwrap().is_none());
/// ```
pub fn solve(inst: &DiophInstance) -> Result<Option<DiophSolution>> {
    check_n(inst.n)?;
    let found = solve_unchecked(inst)?;
    if let Some(sol) = &found {
        if !inst.holds(sol) {
            return Err(Error::Internal(format!(
                "solver produced a non-solution {sol:?} for {inst:?}"
            )));
        }
    }
    Ok(found)
}

fn solve_unchecked(inst: &DiophInstance) -> Result<Option<DiophSolution>> {
    let DiophInstance { a, b, c, n } = inst;
    let n = *n;

    // B = ±1: y absorbs everything.
    if b.abs().is_one() {
        return Ok(Some(DiophSolution {
            x: 0,
            y: (c - a) * b,
            z: 0,
        }));
    }

    // C = 0: A n^x + B y = 0 with z free.
    if c.is_zero() {
        if b.is_zero() {
            return Ok(a.is_zero().then(|| DiophSolution {
                x: 0,
                y: BigInt::zero(),
                z: 0,
            }));
        }
        let pr = power_residues(n, b)?;
        let hit = pr
            .residues
            .iter()
            .position(|r| (a * r).mod_floor(&pr.modulus).is_zero());
        return Ok(hit.map(|x| {
            let y = -(a * pow_n(n, x as u32)) / b;
            DiophSolution { x: x as u64, y, z: 0 }
        }));
    }

    // C ≠ 0: C = C' n^s, and every solution has z >= -s.
    let (c_core, s) = strip_n(c, n)?;

    if b.is_zero() {
        // A n^x = C' n^{z+s}
        if a.is_zero() {
            return Ok(None);
        }
        let (a_core, s_a) = strip_n(a, n)?;
        return Ok((a_core == c_core).then(|| DiophSolution {
            x: 0,
            y: BigInt::zero(),
            z: s_a as i64 - s as i64,
        }));
    }

    // A n^x ≡ C' n^z' (mod |B|) with x, z' >= 0.
    let pr = power_residues(n, b)?;
    let mut targets: HashMap<BigInt, usize> = HashMap::new();
    for (j, r) in pr.residues.iter().enumerate() {
        targets
            .entry((&c_core * r).mod_floor(&pr.modulus))
            .or_insert(j);
    }
    for (i, r) in pr.residues.iter().enumerate() {
        if let Some(&j) = targets.get(&(a * r).mod_floor(&pr.modulus)) {
            let y = (&c_core * pow_n(n, j as u32) - a * pow_n(n, i as u32)) / b;
            return Ok(Some(DiophSolution {
                x: i as u64,
                y,
                z: j as i64 - s as i64,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(a: i64, b: i64, c: i64, n: i64) -> DiophInstance {
        DiophInstance::new(a, b, c, n).unwrap()
    }

    fn sol(x: u64, y: i64, z: i64) -> DiophSolution {
        DiophSolution {
            x,
            y: y.into(),
            z,
        }
    }

    #[test]
    fn strip_examples() {
        let s = |v: i64, n| strip_n(&v.into(), n).unwrap();
        assert_eq!(s(12, 2), (3.into(), 2));
        assert_eq!(s(5, 2), (5.into(), 0));
        assert_eq!(s(-18, 3), ((-2).into(), 2));
        assert_eq!(s(-24, -2), (3.into(), 3));
        assert!(strip_n(&0.into(), 2).is_err());
    }

    #[test]
    fn residue_examples() {
        let r = power_residues(2, &7.into()).unwrap();
        assert_eq!(r.residues, vec![1.into(), 2.into(), 4.into()]);
        let r = power_residues(2, &2.into()).unwrap();
        assert_eq!(r.residues, vec![1.into(), 0.into()]);
        assert_eq!(
            power_residues(3, &(-7).into()).unwrap().residues,
            power_residues(3, &7.into()).unwrap().residues
        );
        assert_eq!(r.index_of(&BigInt::from(4)), Some(1));
        // n = -2 mod 5 walks 1, 3, 4, 2
        let r = power_residues(-2, &5.into()).unwrap();
        assert_eq!(r.residues, vec![1.into(), 3.into(), 4.into(), 2.into()]);
    }

    #[test]
    fn big_modulus_matches_small_path() {
        let m = BigInt::from(1_000_003u64);
        let small = power_residues(10, &m).unwrap();
        let big = residues_big(10, &m);
        assert_eq!(small.residues, big);
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve(&inst(1, 1, 5, 2)).unwrap(), Some(sol(0, 4, 0)));
        assert_eq!(solve(&inst(2, 0, 1, 2)).unwrap(), Some(sol(0, 0, 1)));
        assert_eq!(solve(&inst(3, 0, 5, 2)).unwrap(), None);
        assert_eq!(solve(&inst(0, 0, 0, 3)).unwrap(), Some(sol(0, 0, 0)));
    }

    #[test]
    fn solve_edge_cases() {
        // C = 0, B ≠ 0: 3 * 2^x ≡ 0 mod 12 needs x = 2
        assert_eq!(solve(&inst(3, 12, 0, 2)).unwrap(), Some(sol(2, -1, 0)));
        assert_eq!(solve(&inst(3, 7, 0, 2)).unwrap(), None);
        // A = 0 with C ≠ 0, B = 0
        assert_eq!(solve(&inst(0, 0, 4, 2)).unwrap(), None);
        // A = 0, B ≠ 0: B y = C n^z
        let s = solve(&inst(0, 8, 3, 2)).unwrap().unwrap();
        assert!(inst(0, 8, 3, 2).holds(&s));
        // negative z: 2 = 8 * 2^z at z = -2
        assert_eq!(solve(&inst(2, 0, 8, 2)).unwrap(), Some(sol(0, 0, -2)));
        // sign mismatch for negative n
        assert_eq!(solve(&inst(3, 0, -3, -2)).unwrap(), None);
        assert_eq!(solve(&inst(3, 0, -6, -2)).unwrap(), Some(sol(0, 0, -1)));
        assert!(solve(&DiophInstance { a: 1.into(), b: 1.into(), c: 1.into(), n: 1 }).is_err());
    }

    #[test]
    fn holds_with_negative_z() {
        assert!(inst(2, 0, 8, 2).holds(&sol(0, 0, -2)));
        assert!(!inst(2, 0, 8, 2).holds(&sol(0, 0, -1)));
        assert!(!inst(1, 0, 1, 2).holds(&sol(0, 0, -1)));
    }
}
